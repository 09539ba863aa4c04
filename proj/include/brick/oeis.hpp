#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "brick/bigint.hpp"

namespace brick::oeis {

enum class Source { Live, Cache, Fixture };

struct OeisSequence {
    std::string id;  // "A" + 6 digits
    std::vector<Int> terms;
    std::string fetched_at;  // ISO 8601 UTC
    Source source = Source::Cache;
};

struct OeisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotFoundError : OeisError {
    using OeisError::OeisError;
};
struct NetworkError : OeisError {
    using OeisError::OeisError;
};
struct ParseError : OeisError {
    using OeisError::OeisError;
};

bool well_formed_id(const std::string& id);

struct CompareResult {
    bool matched = false;
    std::optional<std::size_t> offset;  // index of computed[0] inside terms
};

// Smallest offset at which `computed` appears as a contiguous run inside
// seq.terms; computed must be non-empty.
CompareResult compare_prefix(const std::vector<Int>& computed, const OeisSequence& seq);

struct ClientOptions {
    std::filesystem::path cache_dir;
    bool offline = false;
    std::string base_url = "https://oeis.org";
    std::chrono::milliseconds min_request_gap{1000};
};

// Reads BRICK_OEIS_CACHE (cache directory), BRICK_OFFLINE (any non-empty
// value other than "0" forbids network) and the BRICK_OEIS_URL test hook.
ClientOptions options_from_env();

class OeisClient {
  public:
    explicit OeisClient(ClientOptions opts);

    // Cache first; on a miss fetches live (unless offline) and writes the
    // cache file through under an exclusive advisory lock. At most one
    // request per second leaves this process.
    OeisSequence get(const std::string& id);

    OeisSequence fetch_live(const std::string& id);
    std::optional<OeisSequence> load_cached(const std::string& id) const;

    const ClientOptions& options() const { return opts_; }

  private:
    ClientOptions opts_;
};

// Loads a committed fixture file (same JSON layout as the cache).
OeisSequence load_fixture(const std::filesystem::path& dir, const std::string& id);

// Serialization helpers shared by the cache, the fixtures and their
// generator. Terms are written as JSON numbers when they fit in 64 bits and
// as decimal strings otherwise; both forms are accepted on read.
std::string to_cache_json(const OeisSequence& seq);
OeisSequence parse_cache_json(const std::string& text, Source source);
void write_cache_file(const std::filesystem::path& dir, const OeisSequence& seq);

}  // namespace brick::oeis

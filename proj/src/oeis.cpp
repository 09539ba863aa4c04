#include "brick/oeis.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cctype>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#ifdef BRICK_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

namespace brick::oeis {

using nlohmann::json;

bool well_formed_id(const std::string& id) {
    if (id.size() != 7 || id[0] != 'A') return false;
    for (std::size_t i = 1; i < id.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
    return true;
}

CompareResult compare_prefix(const std::vector<Int>& computed, const OeisSequence& seq) {
    if (computed.empty()) throw std::invalid_argument("compare_prefix: computed is empty");
    if (computed.size() > seq.terms.size()) return {};
    for (std::size_t off = 0; off + computed.size() <= seq.terms.size(); ++off) {
        bool all = true;
        for (std::size_t i = 0; i < computed.size() && all; ++i)
            all = seq.terms[off + i] == computed[i];
        if (all) return {true, off};
    }
    return {};
}

namespace {

std::string now_iso8601() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", &tm);
    return buf;
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("XDG_CACHE_HOME"); env && *env)
        return std::filesystem::path(env) / "brick" / "oeis";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "brick" / "oeis";
    return std::filesystem::path(".brick-oeis-cache");
}

json term_to_json(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

Int term_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw ParseError("sequence term is neither integer nor decimal string");
}

// Serializes writers across processes; readers stay lock-free.
struct CacheLock {
    int fd = -1;

    explicit CacheLock(const std::filesystem::path& dir) {
        std::filesystem::create_directories(dir);
        fd = ::open((dir / ".lock").c_str(), O_CREAT | O_RDWR, 0644);
        if (fd >= 0) ::flock(fd, LOCK_EX);
    }
    ~CacheLock() {
        if (fd >= 0) {
            ::flock(fd, LOCK_UN);
            ::close(fd);
        }
    }
    CacheLock(const CacheLock&) = delete;
    CacheLock& operator=(const CacheLock&) = delete;
};

}  // namespace

std::string to_cache_json(const OeisSequence& seq) {
    json j;
    j["id"] = seq.id;
    json terms = json::array();
    for (const Int& t : seq.terms) terms.push_back(term_to_json(t));
    j["terms"] = std::move(terms);
    j["fetched_at"] = seq.fetched_at;
    return j.dump(2) + "\n";
}

OeisSequence parse_cache_json(const std::string& text, Source source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed sequence file: ") + e.what());
    }
    if (!j.contains("id") || !j.contains("terms") || !j["terms"].is_array())
        throw ParseError("sequence file lacks id/terms fields");
    OeisSequence out;
    out.id = j["id"].get<std::string>();
    for (const json& t : j["terms"]) out.terms.push_back(term_from_json(t));
    if (out.terms.empty()) throw ParseError("sequence file has no terms");
    out.fetched_at = j.value("fetched_at", "");
    out.source = source;
    return out;
}

void write_cache_file(const std::filesystem::path& dir, const OeisSequence& seq) {
    CacheLock lock(dir);
    const std::filesystem::path tmp = dir / (seq.id + ".json.tmp");
    const std::filesystem::path dst = dir / (seq.id + ".json");
    {
        std::ofstream os(tmp);
        os << to_cache_json(seq);
    }
    std::filesystem::rename(tmp, dst);
}

ClientOptions options_from_env() {
    ClientOptions opts;
    if (const char* dir = std::getenv("BRICK_OEIS_CACHE"); dir && *dir)
        opts.cache_dir = dir;
    else
        opts.cache_dir = default_cache_dir();
    if (const char* off = std::getenv("BRICK_OFFLINE"); off && *off && std::string(off) != "0")
        opts.offline = true;
    if (const char* url = std::getenv("BRICK_OEIS_URL"); url && *url) opts.base_url = url;
    return opts;
}

OeisClient::OeisClient(ClientOptions opts) : opts_(std::move(opts)) {}

std::optional<OeisSequence> OeisClient::load_cached(const std::string& id) const {
    const std::filesystem::path file = opts_.cache_dir / (id + ".json");
    std::ifstream is(file);
    if (!is) return std::nullopt;
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_cache_json(buf.str(), Source::Cache);
}

OeisSequence OeisClient::get(const std::string& id) {
    if (!well_formed_id(id)) throw std::invalid_argument("malformed OEIS id: " + id);
    if (auto cached = load_cached(id)) return *cached;
    if (opts_.offline)
        throw NetworkError("offline mode and no cached copy of " + id + " under " +
                           opts_.cache_dir.string());
    return fetch_live(id);
}

OeisSequence OeisClient::fetch_live(const std::string& id) {
    if (!well_formed_id(id)) throw std::invalid_argument("malformed OEIS id: " + id);

    // Politeness throttle: one in-flight request, spaced >= min_request_gap.
    static std::mutex gate;
    static std::chrono::steady_clock::time_point last_request{};
    std::lock_guard guard(gate);
    const auto now = std::chrono::steady_clock::now();
    if (last_request.time_since_epoch().count() != 0) {
        const auto wait = last_request + opts_.min_request_gap - now;
        if (wait.count() > 0) std::this_thread::sleep_for(wait);
    }
    last_request = std::chrono::steady_clock::now();

    httplib::Client client(opts_.base_url);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(30, 0);
    client.set_follow_location(true);
    const httplib::Result res = client.Get("/search?q=id:" + id + "&fmt=json");
    if (!res)
        throw NetworkError("fetching " + id + " from " + opts_.base_url + " failed (" +
                           httplib::to_string(res.error()) + "); no cached fallback under " +
                           opts_.cache_dir.string());
    if (res->status != 200)
        throw NetworkError("fetching " + id + ": HTTP " + std::to_string(res->status) +
                           "; no cached fallback under " + opts_.cache_dir.string());

    json j;
    try {
        j = json::parse(res->body);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed OEIS response: ") + e.what());
    }
    if (!j.contains("results") || !j["results"].is_array() || j["results"].empty())
        throw NotFoundError("OEIS has no sequence " + id);
    const json& entry = j["results"][0];
    if (!entry.contains("data") || !entry["data"].is_string())
        throw ParseError("OEIS result for " + id + " lacks a data field");

    OeisSequence out;
    out.id = id;
    out.fetched_at = now_iso8601();
    out.source = Source::Live;
    std::stringstream data(entry["data"].get<std::string>());
    std::string tok;
    while (std::getline(data, tok, ','))
        if (!tok.empty()) out.terms.push_back(Int(tok));
    if (out.terms.empty()) throw ParseError("OEIS result for " + id + " has no terms");

    write_cache_file(opts_.cache_dir, out);
    return out;
}

OeisSequence load_fixture(const std::filesystem::path& dir, const std::string& id) {
    const std::filesystem::path file = dir / (id + ".json");
    std::ifstream is(file);
    if (!is) throw NotFoundError("no fixture file " + file.string());
    std::ostringstream buf;
    buf << is.rdbuf();
    OeisSequence out = parse_cache_json(buf.str(), Source::Fixture);
    return out;
}

}  // namespace brick::oeis

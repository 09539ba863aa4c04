#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "brick/bigint.hpp"

namespace brick {

// The two stretcher-bond alignments: for the first kind the origin sits at a
// brick corner, for the second kind at the midpoint of a brick.
enum class Kind : int { First = 1, Second = 2 };

enum class Parity { Even, Odd };

// The three legal moves. Verticals are parity-restricted, see step_allowed.
enum class Step : char { H = 'H', U = 'U', D = 'D' };

const char* to_string(Kind k);
Kind kind_from_int(int t);
char to_char(Step s);
Step step_from_char(char c);

// Problem instance. Paths live in the rectangle [0, l-1] x [0, w-1] with
// x = column, y = row, row 0 at the bottom. l = 1 is the degenerate
// single-column case (w empty paths).
struct LatticeSpec {
    int length;  // l >= 1, number of path columns
    int width;   // w >= 2, number of rows
    Kind kind;

    LatticeSpec(int l, int w, Kind k);

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

struct LatticePoint {
    int x = 0;
    int y = 0;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

// A point is even iff x + y is even (coordinates are non-negative here).
Parity parity_of(LatticePoint p);

// Pointwise step legality at the departure point. H is always allowed.
// First kind: U at even points, D at odd points; the second kind swaps them.
// Bounds are not checked here; callers keep paths inside the rectangle.
bool step_allowed(LatticePoint p, Step s, Kind kind);

// True iff a vertical joint connects (c, j) and (c, j+1). Joints live at
// columns 1..l-1 (never on the left side) and pair rows {j, j+1} with c + j
// even for the first kind, odd for the second. Equivalent to: U legal at
// (c, j) and D legal at (c, j+1). Throws std::out_of_range outside
// 1 <= c <= l-1, 0 <= j <= w-2.
bool joint_exists(int c, int j, const LatticeSpec& spec);

// The unique row reachable from row j by a vertical step at column c, if any.
// The two candidate joints at (c, j-1) and (c, j) have opposite parity, so at
// most one exists.
std::optional<int> joint_partner(int c, int j, const LatticeSpec& spec);

// A concrete path: start row plus step sequence. A legal path has exactly
// l-1 H steps, starts with H (no verticals on the left side), never reverses
// a vertical step, and stays inside the rectangle.
struct BrickPath {
    LatticeSpec spec;
    int start_row = 0;
    std::vector<Step> steps;

    int end_row() const;
    std::string step_string() const;
    // Text record form, e.g. "1:HU->2".
    std::string text() const;

    friend bool operator==(const BrickPath&, const BrickPath&) = default;
};

struct PathValidation {
    bool ok = true;
    int step_index = -1;  // index of the offending step, -1 if structural
    std::string rule;     // violated rule, empty when ok

    explicit operator bool() const { return ok; }
};

// Checks every path invariant and names the first violation.
PathValidation validate_path(const BrickPath& path);

// Thrown by enumerate_paths when the cap is hit; carries what was found so
// far, in order.
struct TruncatedEnumeration : std::runtime_error {
    std::vector<BrickPath> partial;

    TruncatedEnumeration(std::vector<BrickPath> paths, std::uint64_t limit);
};

// Thrown by the brute-force counters when the resource guard is exceeded;
// carries the partial tally.
struct GuardExceeded : std::runtime_error {
    Int partial_count;

    GuardExceeded(const std::string& what, Int partial);
};

inline constexpr std::uint64_t kDefaultBruteForceGuard = 100'000'000;

// Exhaustive DFS over legal step sequences; the oracle every analytic count
// is validated against. Output is lexicographic by (start_row, steps) with
// H < U < D; a vertical step, when present, comes immediately after the H
// entering its column (legality leaves no other placement). For l = 1
// returns the w empty paths. Unlimited runs are partitioned by start row
// across OpenMP threads and merged in canonical order; passing a limit runs
// serially and throws TruncatedEnumeration past the limit.
std::vector<BrickPath> enumerate_paths(const LatticeSpec& spec,
                                       std::optional<std::uint64_t> limit = {});

// DFS count of legal paths without materializing them; exactly the length of
// enumerate_paths output. Throws GuardExceeded once more than `guard` paths
// are seen; it never truncates silently. Start rows are scanned in
// parallel; the serial variant is the reference the parallel one is tested
// against.
Int count_paths_bruteforce(const LatticeSpec& spec,
                           std::uint64_t guard = kDefaultBruteForceGuard);
Int count_paths_bruteforce_serial(const LatticeSpec& spec,
                                  std::uint64_t guard = kDefaultBruteForceGuard);

}  // namespace brick

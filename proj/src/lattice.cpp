#include "brick/lattice.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace brick {

const char* to_string(Kind k) { return k == Kind::First ? "first" : "second"; }

Kind kind_from_int(int t) {
    if (t == 1) return Kind::First;
    if (t == 2) return Kind::Second;
    throw std::invalid_argument("lattice type must be 1 or 2, got " + std::to_string(t));
}

char to_char(Step s) { return static_cast<char>(s); }

Step step_from_char(char c) {
    switch (c) {
        case 'H': return Step::H;
        case 'U': return Step::U;
        case 'D': return Step::D;
    }
    throw std::invalid_argument(std::string("invalid step character '") + c + "'");
}

LatticeSpec::LatticeSpec(int l, int w, Kind k) : length(l), width(w), kind(k) {
    if (l < 1) throw std::invalid_argument("length must be >= 1, got " + std::to_string(l));
    if (w < 2) throw std::invalid_argument("width must be >= 2, got " + std::to_string(w));
}

Parity parity_of(LatticePoint p) {
    return ((p.x + p.y) % 2 + 2) % 2 == 0 ? Parity::Even : Parity::Odd;
}

bool step_allowed(LatticePoint p, Step s, Kind kind) {
    if (s == Step::H) return true;
    const bool even = parity_of(p) == Parity::Even;
    const bool up = s == Step::U;
    // First kind: U at even, D at odd. Second kind: U at odd, D at even.
    return kind == Kind::First ? (up == even) : (up != even);
}

bool joint_exists(int c, int j, const LatticeSpec& spec) {
    if (c < 1 || c > spec.length - 1)
        throw std::out_of_range("joint column " + std::to_string(c) + " outside 1.." +
                                std::to_string(spec.length - 1));
    if (j < 0 || j > spec.width - 2)
        throw std::out_of_range("joint row " + std::to_string(j) + " outside 0.." +
                                std::to_string(spec.width - 2));
    const bool even = (c + j) % 2 == 0;
    return spec.kind == Kind::First ? even : !even;
}

std::optional<int> joint_partner(int c, int j, const LatticeSpec& spec) {
    if (j + 1 <= spec.width - 1 && joint_exists(c, j, spec)) return j + 1;
    if (j - 1 >= 0 && joint_exists(c, j - 1, spec)) return j - 1;
    return std::nullopt;
}

int BrickPath::end_row() const {
    int y = start_row;
    for (Step s : steps) {
        if (s == Step::U) ++y;
        if (s == Step::D) --y;
    }
    return y;
}

std::string BrickPath::step_string() const {
    std::string out;
    out.reserve(steps.size());
    for (Step s : steps) out.push_back(to_char(s));
    return out;
}

std::string BrickPath::text() const {
    return std::to_string(start_row) + ":" + step_string() + "->" + std::to_string(end_row());
}

PathValidation validate_path(const BrickPath& path) {
    const LatticeSpec& spec = path.spec;
    auto fail = [](int idx, std::string rule) {
        return PathValidation{false, idx, std::move(rule)};
    };

    if (path.start_row < 0 || path.start_row > spec.width - 1)
        return fail(-1, "start row outside rectangle");

    LatticePoint p{0, path.start_row};
    bool prev_vertical = false;
    int h_count = 0;
    for (std::size_t i = 0; i < path.steps.size(); ++i) {
        const Step s = path.steps[i];
        const int idx = static_cast<int>(i);
        if (s != Step::H) {
            if (p.x == 0) return fail(idx, "vertical step on left side");
            if (prev_vertical) return fail(idx, "consecutive vertical steps");
            if (!step_allowed(p, s, spec.kind)) return fail(idx, "step parity not allowed");
        }
        p.x += s == Step::H ? 1 : 0;
        p.y += s == Step::U ? 1 : s == Step::D ? -1 : 0;
        if (p.x > spec.length - 1 || p.y < 0 || p.y > spec.width - 1)
            return fail(idx, "point outside rectangle");
        prev_vertical = s != Step::H;
        h_count += s == Step::H ? 1 : 0;
    }
    if (h_count != spec.length - 1) return fail(-1, "wrong number of horizontal steps");
    return {};
}

TruncatedEnumeration::TruncatedEnumeration(std::vector<BrickPath> paths, std::uint64_t limit)
    : std::runtime_error("path enumeration truncated at limit " + std::to_string(limit)),
      partial(std::move(paths)) {}

GuardExceeded::GuardExceeded(const std::string& what, Int partial)
    : std::runtime_error(what), partial_count(std::move(partial)) {}

namespace {

// Shared DFS core. Visits every legal step sequence in lexicographic order
// (H < U < D, shorter string first); `record` returns false to stop early.
template <typename Record>
bool dfs_paths(const LatticeSpec& spec, LatticePoint p, bool can_vertical,
               std::vector<Step>& steps, const Record& record) {
    if (p.x == spec.length - 1) {
        if (!record(steps)) return false;
    } else {
        steps.push_back(Step::H);
        if (!dfs_paths(spec, {p.x + 1, p.y}, true, steps, record)) return false;
        steps.pop_back();
    }
    if (can_vertical) {
        for (Step s : {Step::U, Step::D}) {
            const int ny = p.y + (s == Step::U ? 1 : -1);
            if (ny < 0 || ny > spec.width - 1) continue;
            if (!step_allowed(p, s, spec.kind)) continue;
            steps.push_back(s);
            // A second vertical would either reverse this one or break parity.
            if (!dfs_paths(spec, {p.x, ny}, false, steps, record)) return false;
            steps.pop_back();
        }
    }
    return true;
}

std::vector<BrickPath> enumerate_row(const LatticeSpec& spec, int row) {
    std::vector<BrickPath> out;
    std::vector<Step> steps;
    dfs_paths(spec, {0, row}, false, steps, [&](const std::vector<Step>& s) {
        out.push_back(BrickPath{spec, row, s});
        return true;
    });
    return out;
}

std::uint64_t count_row(const LatticeSpec& spec, int row, const std::atomic<bool>* abort) {
    std::uint64_t n = 0;
    std::vector<Step> steps;
    dfs_paths(spec, {0, row}, false, steps, [&](const std::vector<Step>&) {
        ++n;
        return !(abort && (n % 4096 == 0) && abort->load(std::memory_order_relaxed));
    });
    return n;
}

}  // namespace

std::vector<BrickPath> enumerate_paths(const LatticeSpec& spec,
                                       std::optional<std::uint64_t> limit) {
    if (limit) {
        std::vector<BrickPath> out;
        for (int row = 0; row < spec.width; ++row) {
            bool done = true;
            std::vector<Step> steps;
            done = dfs_paths(spec, {0, row}, false, steps, [&](const std::vector<Step>& s) {
                if (out.size() >= *limit) return false;
                out.push_back(BrickPath{spec, row, s});
                return true;
            });
            if (!done) throw TruncatedEnumeration(std::move(out), *limit);
        }
        return out;
    }

    std::vector<std::vector<BrickPath>> per_row(spec.width);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int row = 0; row < spec.width; ++row) per_row[row] = enumerate_row(spec, row);

    std::vector<BrickPath> out;
    std::size_t total = 0;
    for (const auto& v : per_row) total += v.size();
    out.reserve(total);
    for (auto& v : per_row)
        std::move(v.begin(), v.end(), std::back_inserter(out));
    return out;
}

namespace {

Int count_bruteforce_impl(const LatticeSpec& spec, std::uint64_t guard, bool use_threads) {
    std::atomic<std::uint64_t> total{0};
    std::atomic<bool> abort{false};

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (use_threads)
#else
    (void)use_threads;
#endif
    for (int row = 0; row < spec.width; ++row) {
        const std::uint64_t n = count_row(spec, row, &abort);
        if (total.fetch_add(n, std::memory_order_relaxed) + n > guard)
            abort.store(true, std::memory_order_relaxed);
    }

    if (abort.load() || total.load() > guard)
        throw GuardExceeded("brute-force path count exceeded guard of " + std::to_string(guard),
                            Int(total.load()));
    return Int(total.load());
}

}  // namespace

Int count_paths_bruteforce(const LatticeSpec& spec, std::uint64_t guard) {
    return count_bruteforce_impl(spec, guard, true);
}

Int count_paths_bruteforce_serial(const LatticeSpec& spec, std::uint64_t guard) {
    return count_bruteforce_impl(spec, guard, false);
}

}  // namespace brick

#include "brick/reliability.hpp"

#include <bit>
#include <random>

#include "brick/union_find.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace brick {

HammockNetwork build_network(const LatticeSpec& spec) {
    if (spec.length < 2)
        throw std::invalid_argument("hammock network requires l >= 2 (degenerate otherwise)");
    const int w = spec.width;
    const int l = spec.length;

    // Grid nodes (boundary b, row j) for b = 0..l; merge boundary 0 into S,
    // boundary l into T, and joint-connected row pairs at each interior
    // boundary.
    UnionFind uf((l + 1) * w);
    auto node = [w](int b, int j) { return b * w + j; };
    for (int j = 1; j < w; ++j) {
        uf.unite(node(0, 0), node(0, j));
        uf.unite(node(l, 0), node(l, j));
    }
    for (int c = 1; c <= l - 1; ++c)
        for (int j = 0; j <= w - 2; ++j)
            if (joint_exists(c, j, spec)) uf.unite(node(c, j), node(c, j + 1));

    std::vector<int> class_of((l + 1) * w, -1);
    int next_class = 0;
    for (int b = 0; b <= l; ++b)
        for (int j = 0; j < w; ++j) {
            const int root = uf.find(node(b, j));
            if (class_of[root] < 0) class_of[root] = next_class++;
        }

    HammockNetwork net{spec, 0, 0, 0, 0, {}, {}};
    net.num_relays = w * l;
    net.num_classes = next_class;
    net.source_class = class_of[uf.find(node(0, 0))];
    net.terminus_class = class_of[uf.find(node(l, 0))];
    net.relay_left.resize(net.num_relays);
    net.relay_right.resize(net.num_relays);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < w; ++j) {
            const int r = net.relay_index(i, j);
            net.relay_left[r] = class_of[uf.find(node(i, j))];
            net.relay_right[r] = class_of[uf.find(node(i + 1, j))];
        }
    return net;
}

RelayMask full_mask(const HammockNetwork& net) {
    if (net.num_relays > 64)
        throw std::invalid_argument("relay masks support at most 64 relays");
    return net.num_relays == 64 ? ~RelayMask{0} : (RelayMask{1} << net.num_relays) - 1;
}

namespace {

bool operational_with(UnionFind& uf, const HammockNetwork& net, RelayMask closed) {
    uf.reset(net.num_classes);
    while (closed != 0) {
        const int r = std::countr_zero(closed);
        closed &= closed - 1;
        uf.unite(net.relay_left[r], net.relay_right[r]);
    }
    return uf.connected(net.source_class, net.terminus_class);
}

}  // namespace

bool is_operational(const HammockNetwork& net, RelayMask closed) {
    if (net.num_relays > 64)
        throw std::invalid_argument("relay masks support at most 64 relays");
    UnionFind uf(net.num_classes);
    return operational_with(uf, net, closed);
}

namespace {

NTable ntable_impl(const HammockNetwork& net, int max_state_bits, bool use_threads) {
    const int m = net.num_relays;
    if (max_state_bits > kHardStateGuardBits) max_state_bits = kHardStateGuardBits;
    if (m > max_state_bits)
        throw GuardExceeded("brute-force N-table needs 2^" + std::to_string(m) +
                                " states, above the guard of 2^" + std::to_string(max_state_bits),
                            Int(0));

    const std::uint64_t n_states = std::uint64_t{1} << m;
    std::vector<std::uint64_t> tally(m + 1, 0);

#ifdef _OPENMP
#pragma omp parallel if (use_threads)
    {
        std::vector<std::uint64_t> local(m + 1, 0);
        UnionFind uf(net.num_classes);
#pragma omp for schedule(static)
        for (std::int64_t mask = 0; mask < static_cast<std::int64_t>(n_states); ++mask)
            if (operational_with(uf, net, static_cast<RelayMask>(mask)))
                ++local[std::popcount(static_cast<std::uint64_t>(mask))];
#pragma omp critical
        for (int k = 0; k <= m; ++k) tally[k] += local[k];
    }
#else
    (void)use_threads;
    UnionFind uf(net.num_classes);
    for (std::uint64_t mask = 0; mask < n_states; ++mask)
        if (operational_with(uf, net, mask)) ++tally[std::popcount(mask)];
#endif

    NTable out{m, std::vector<Int>(m + 1)};
    for (int k = 0; k <= m; ++k) out.coeff[k] = tally[k];
    return out;
}

}  // namespace

NTable brute_force_ntable(const HammockNetwork& net, int max_state_bits) {
    return ntable_impl(net, max_state_bits, true);
}

NTable brute_force_ntable_serial(const HammockNetwork& net, int max_state_bits) {
    return ntable_impl(net, max_state_bits, false);
}

PTable n_to_p(const NTable& n) {
    const int m = n.m;
    PTable out{m, std::vector<Int>(m + 1, Int(0))};
    for (int k = 0; k <= m; ++k) {
        Int acc = 0;
        for (int j = 0; j <= k; ++j) {
            const Int term = n.coeff[j] * binomial(m - j, k - j);
            if ((k - j) % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        out.coeff[k] = acc;
    }
    return out;
}

PTable reliability_polynomial(const HammockNetwork& net, int max_state_bits) {
    return n_to_p(brute_force_ntable(net, max_state_bits));
}

EdgeMasks edge_masks(const LatticeSpec& spec) {
    if (spec.length < 2) throw std::invalid_argument("edge masks require l >= 2");
    const int w = spec.width;
    auto participates = [&](int c, int j) {
        return (j <= w - 2 && joint_exists(c, j, spec)) ||
               (j >= 1 && joint_exists(c, j - 1, spec));
    };
    EdgeMasks masks{std::vector<int>(w, 0), std::vector<int>(w, 0)};
    for (int j = 0; j < w; ++j) {
        masks.u1[j] = participates(1, j) ? 1 : 0;
        masks.u2[j] = participates(spec.length - 1, j) ? 1 : 0;
    }
    return masks;
}

Int first_coefficient(const LatticeSpec& spec) {
    if (spec.length < 2) throw std::invalid_argument("reliability coefficients require l >= 2");
    return count_paths(spec);
}

Int second_coefficient(const LatticeSpec& spec) {
    if (spec.length < 2) throw std::invalid_argument("reliability coefficients require l >= 2");
    const EdgeMasks masks = edge_masks(spec);

    // Paths starting in a masked row: push u1 through A_1 .. A_{l-1}.
    CountColumn from_start{std::vector<Int>(masks.u1.begin(), masks.u1.end())};
    for (int c = 1; c <= spec.length - 1; ++c)
        advance_in_place(from_start, column_matrix(spec, c));
    const Int starting = from_start.sum();

    // Paths ending in a masked row: mask the final count column.
    const CountColumn last = column_vector(spec, spec.length - 1);
    Int finishing = 0;
    for (int j = 0; j < spec.width; ++j)
        if (masks.u2[j]) finishing += last.entries[j];

    const Int total = starting + finishing;
    if (total % 2 != 0)
        throw std::logic_error("second coefficient half-sum is odd: edge mask bug");
    return -(total / 2);
}

Int second_coefficient_n(const LatticeSpec& spec) {
    const Int n_l = first_coefficient(spec);
    return (Int(spec.width) * spec.length - spec.length) * n_l + second_coefficient(spec);
}

namespace {

// u M x^T and u M^T x^T for dense bottom-up M with entry [end][start].
Int quad_start_masked(const DenseMatrix& m, const std::vector<int>& x) {
    Int acc = 0;
    for (std::size_t e = 0; e < m.size(); ++e)
        for (std::size_t s = 0; s < m.size(); ++s)
            if (x[s]) acc += m[e][s];
    return acc;
}

Int quad_end_masked(const DenseMatrix& m, const std::vector<int>& x) {
    Int acc = 0;
    for (std::size_t e = 0; e < m.size(); ++e) {
        if (!x[e]) continue;
        for (std::size_t s = 0; s < m.size(); ++s) acc += m[e][s];
    }
    return acc;
}

DenseMatrix dense_multiply(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t n = a.size();
    DenseMatrix out(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Int halve_negate(const Int& total) {
    if (total % 2 != 0)
        throw std::logic_error("specialized second coefficient half-sum is odd");
    return -(total / 2);
}

}  // namespace

Int second_coefficient_specialized(const LatticeSpec& spec) {
    if (spec.length < 2) throw std::invalid_argument("reliability coefficients require l >= 2");
    const int w = spec.width;
    const int l = spec.length;
    const bool first_kind = spec.kind == Kind::First;

    // The transition matrix from the named factors alone: the factor at
    // column c depends only on the parity of c and the kind.
    auto factor = [&](int c) {
        if (w % 2 != 0)
            return named_matrix((c % 2 != 0) == first_kind ? NamedMatrix::MU : NamedMatrix::ML, w);
        return named_matrix((c % 2 != 0) == first_kind ? NamedMatrix::Mminus : NamedMatrix::Mplus,
                            w);
    };
    DenseMatrix m = dense(factor(1));
    for (int c = 2; c <= l - 1; ++c) m = dense_multiply(dense(factor(c)), m);

    std::vector<int> u(w, 1);
    std::vector<int> t(w, 1);
    t.front() = t.back() = 0;

    if (w % 2 != 0) {
        // Odd width: the free edge row is the bottom one for the first kind
        // and the top one for the second (the reflected drawing).
        std::vector<int> v(w, 1);
        v[first_kind ? 0 : w - 1] = 0;
        return -quad_start_masked(m, v);
    }
    if (first_kind && l % 2 == 0) return -quad_start_masked(m, t);     // M- at both ends
    if (!first_kind && l % 2 == 0) return -quad_start_masked(m, u);    // M+ at both ends
    if (first_kind)                                                    // M+ ... M-
        return halve_negate(quad_start_masked(m, t) + quad_end_masked(m, u));
    return halve_negate(quad_start_masked(m, u) + quad_end_masked(m, t));  // M- ... M+
}

ReliabilityCoefficients analytic_coefficients(const LatticeSpec& spec) {
    ReliabilityCoefficients out{spec, spec.width * spec.length, 0, 0, 0, 0, "analytic"};
    out.n_l = first_coefficient(spec);
    out.p_l = out.n_l;
    out.p_l1 = second_coefficient(spec);
    out.n_l1 = Int(out.m - spec.length) * out.n_l + out.p_l1;
    return out;
}

ReliabilityCoefficients bruteforce_coefficients(const HammockNetwork& net, int max_state_bits) {
    const NTable n = brute_force_ntable(net, max_state_bits);
    const PTable p = n_to_p(n);
    const int l = net.spec.length;
    ReliabilityCoefficients out{net.spec, net.num_relays, 0, 0, 0, 0, "bruteforce"};
    out.n_l = n.coeff[l];
    out.n_l1 = n.coeff[l + 1];
    out.p_l = p.coeff[l];
    out.p_l1 = p.coeff[l + 1];
    return out;
}

Rational eval_polynomial(const PTable& table, const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("probability must lie in [0, 1]");
    Rational acc = 0;
    for (int k = table.m; k >= 0; --k) acc = acc * p + Rational(table.coeff[k]);
    return acc;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t kMcBlock = 1 << 14;

std::uint64_t mc_block_tally(const HammockNetwork& net, double p, std::uint64_t seed,
                             std::uint64_t block, std::uint64_t trials_in_block,
                             UnionFind& uf) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(block + 1)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uint64_t ops = 0;
    for (std::uint64_t t = 0; t < trials_in_block; ++t) {
        uf.reset(net.num_classes);
        for (int r = 0; r < net.num_relays; ++r)
            if (unit(rng) < p) uf.unite(net.relay_left[r], net.relay_right[r]);
        if (uf.connected(net.source_class, net.terminus_class)) ++ops;
    }
    return ops;
}

MonteCarloResult mc_impl(const HammockNetwork& net, double p, std::uint64_t trials,
                         std::uint64_t seed, bool use_threads) {
    if (trials < 1) throw std::invalid_argument("monte carlo requires trials >= 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability must lie in [0, 1]");

    const std::uint64_t n_blocks = (trials + kMcBlock - 1) / kMcBlock;
    std::uint64_t operational = 0;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : operational) if (use_threads)
#else
    (void)use_threads;
#endif
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(n_blocks); ++b) {
        UnionFind uf(net.num_classes);
        const std::uint64_t begin = static_cast<std::uint64_t>(b) * kMcBlock;
        const std::uint64_t in_block = std::min<std::uint64_t>(kMcBlock, trials - begin);
        operational += mc_block_tally(net, p, seed, static_cast<std::uint64_t>(b), in_block, uf);
    }

    MonteCarloResult out;
    out.trials = trials;
    out.operational = operational;
    out.estimate = static_cast<double>(operational) / static_cast<double>(trials);
    out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
    return out;
}

}  // namespace

MonteCarloResult monte_carlo_estimate(const HammockNetwork& net, double p, std::uint64_t trials,
                                      std::uint64_t seed) {
    return mc_impl(net, p, trials, seed, true);
}

MonteCarloResult monte_carlo_estimate_serial(const HammockNetwork& net, double p,
                                             std::uint64_t trials, std::uint64_t seed) {
    return mc_impl(net, p, trials, seed, false);
}

}  // namespace brick

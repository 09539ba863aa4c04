#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "brick/reliability.hpp"
#include "brick/sequences.hpp"

using namespace brick;

namespace {

std::vector<Int> ints(std::vector<long> v) { return {v.begin(), v.end()}; }

// Every (w, l, kind) with l >= 2 and w * l <= max_relays.
std::vector<LatticeSpec> small_grid(int max_relays) {
    std::vector<LatticeSpec> out;
    for (Kind kind : {Kind::First, Kind::Second})
        for (int w = 2; 2 * w <= max_relays; ++w)
            for (int l = 2; l * w <= max_relays; ++l) out.emplace_back(l, w, kind);
    return out;
}

}  // namespace

TEST_CASE("network construction merges the joint boundaries") {
    const HammockNetwork plain = build_network(LatticeSpec(2, 2, Kind::First));
    CHECK(plain.num_relays == 4);
    // no interior merges: S, T and two separate mid nodes
    CHECK(plain.num_classes == 4);

    const HammockNetwork fused = build_network(LatticeSpec(2, 2, Kind::Second));
    CHECK(fused.num_classes == 3);  // the two mid nodes collapse

    const HammockNetwork three = build_network(LatticeSpec(2, 3, Kind::First));
    CHECK(three.num_classes == 4);  // rows 1 and 2 fuse at the middle boundary

    CHECK_THROWS_AS(build_network(LatticeSpec(1, 3, Kind::First)), std::invalid_argument);
}

TEST_CASE("operational test") {
    const HammockNetwork net = build_network(LatticeSpec(2, 3, Kind::First));
    const RelayMask closed =
        (RelayMask{1} << net.relay_index(0, 1)) | (RelayMask{1} << net.relay_index(1, 2));
    CHECK(is_operational(net, closed));  // crosses through the fused boundary
    CHECK_FALSE(is_operational(net, 0));
    CHECK(is_operational(net, full_mask(net)));
    // a straight row is a pathset; a bent pair without the joint is not
    CHECK(is_operational(net, (RelayMask{1} << net.relay_index(0, 0)) |
                                  (RelayMask{1} << net.relay_index(1, 0))));
    CHECK_FALSE(is_operational(net, (RelayMask{1} << net.relay_index(0, 0)) |
                                        (RelayMask{1} << net.relay_index(1, 1))));
}

TEST_CASE("exhaustive N tables for the smallest networks") {
    CHECK(brute_force_ntable(build_network(LatticeSpec(2, 2, Kind::First))).coeff ==
          ints({0, 0, 2, 4, 1}));
    CHECK(brute_force_ntable(build_network(LatticeSpec(2, 2, Kind::Second))).coeff ==
          ints({0, 0, 4, 4, 1}));
    const NTable n32 = brute_force_ntable(build_network(LatticeSpec(2, 3, Kind::First)));
    CHECK(n32.coeff[2] == 5);
    CHECK(n32.coeff[0] == 0);
    CHECK(n32.coeff[1] == 0);
    CHECK(n32.coeff[6] == 1);
}

TEST_CASE("N-table invariants on the brute-forced grid") {
    for (const LatticeSpec& spec : small_grid(16)) {
        const HammockNetwork net = build_network(spec);
        const NTable n = brute_force_ntable(net);
        const int l = spec.length, m = net.num_relays;
        for (int k = 0; k < l; ++k) CHECK(n.coeff[k] == 0);
        CHECK(n.coeff[m] == 1);
        for (int k = 0; k <= m; ++k) {
            CHECK(n.coeff[k] >= 0);
            CHECK(n.coeff[k] <= binomial(m, k));
        }
        const PTable p = n_to_p(n);
        for (int k = 0; k < l; ++k) CHECK(p.coeff[k] == 0);
        CHECK(p.coeff[l] > 0);
    }
}

TEST_CASE("guard on the exhaustive scan") {
    const HammockNetwork net = build_network(LatticeSpec(13, 2, Kind::First));  // m = 26
    CHECK_THROWS_AS(brute_force_ntable(net, 24), GuardExceeded);
    const HammockNetwork big = build_network(LatticeSpec(16, 2, Kind::First));  // m = 32
    CHECK_THROWS_AS(brute_force_ntable(big, 99), GuardExceeded);  // hard cap 30 still applies
}

TEST_CASE("parallel and serial N-table scans agree") {
    for (const LatticeSpec& spec :
         {LatticeSpec(5, 3, Kind::First), LatticeSpec(4, 4, Kind::Second)}) {
        const HammockNetwork net = build_network(spec);
        CHECK(brute_force_ntable(net).coeff == brute_force_ntable_serial(net).coeff);
    }
}

TEST_CASE("N-form to P-form") {
    CHECK(n_to_p({2, ints({0, 0, 1})}).coeff == ints({0, 0, 1}));
    CHECK(n_to_p({2, ints({0, 2, 1})}).coeff == ints({0, 2, -1}));
    CHECK(n_to_p({4, ints({0, 0, 2, 4, 1})}).coeff == ints({0, 0, 2, 0, -1}));
}

TEST_CASE("N/P duality: both forms expand to the same polynomial") {
    for (const LatticeSpec& spec : small_grid(14)) {
        const NTable n = brute_force_ntable(build_network(spec));
        const PTable p = n_to_p(n);
        const int m = n.m;
        // expand sum_k N_k p^k (1-p)^(m-k) symbolically
        std::vector<Int> expanded(m + 1, 0);
        for (int k = 0; k <= m; ++k) {
            if (n.coeff[k] == 0) continue;
            for (int i = 0; i + k <= m; ++i) {
                const Int term = n.coeff[k] * binomial(m - k, i);
                if (i % 2 == 0)
                    expanded[k + i] += term;
                else
                    expanded[k + i] -= term;
            }
        }
        CHECK(expanded == p.coeff);
    }
}

TEST_CASE("edge masks") {
    const EdgeMasks m33 = edge_masks(LatticeSpec(3, 3, Kind::First));
    CHECK(m33.u1 == std::vector<int>{0, 1, 1});
    CHECK(m33.u2 == std::vector<int>{1, 1, 0});

    // second kind, even length: a full joint column at both edges
    const EdgeMasks m44 = edge_masks(LatticeSpec(4, 4, Kind::Second));
    CHECK(m44.u1 == std::vector<int>{1, 1, 1, 1});
    CHECK(m44.u2 == std::vector<int>{1, 1, 1, 1});
    // odd length flips the right edge to the interior-pair mask
    const EdgeMasks m34 = edge_masks(LatticeSpec(3, 4, Kind::Second));
    CHECK(m34.u1 == std::vector<int>{1, 1, 1, 1});
    CHECK(m34.u2 == std::vector<int>{0, 1, 1, 0});

    const EdgeMasks m22 = edge_masks(LatticeSpec(2, 2, Kind::First));
    CHECK(m22.u1 == std::vector<int>{0, 0});
    CHECK(m22.u2 == std::vector<int>{0, 0});
}

TEST_CASE("first two coefficients, frozen reference values") {
    CHECK(first_coefficient(LatticeSpec(5, 3, Kind::First)) == 21);
    CHECK(first_coefficient(LatticeSpec(2, 4, Kind::Second)) == 8);
    CHECK(first_coefficient(LatticeSpec(2, 2, Kind::Second)) == 4);

    CHECK(second_coefficient(LatticeSpec(3, 3, Kind::First)) == -6);  // -2 F_4
    CHECK(second_coefficient(LatticeSpec(2, 2, Kind::First)) == 0);
    CHECK(second_coefficient(LatticeSpec(2, 2, Kind::Second)) == -4);
    CHECK(second_coefficient(LatticeSpec(3, 4, Kind::Second)) == -10);
    CHECK(second_coefficient(LatticeSpec(4, 4, Kind::Second)) == -24);

    CHECK(second_coefficient_specialized(LatticeSpec(2, 3, Kind::First)) == -4);  // -2 F_3
    CHECK(second_coefficient_specialized(LatticeSpec(2, 3, Kind::Second)) == -4);
}

TEST_CASE("analytic coefficients match the exhaustive oracle") {
    for (const LatticeSpec& spec : small_grid(20)) {
        const HammockNetwork net = build_network(spec);
        const NTable n = brute_force_ntable(net);
        const PTable p = n_to_p(n);
        const int l = spec.length;
        CHECK(first_coefficient(spec) == n.coeff[l]);
        CHECK(first_coefficient(spec) == p.coeff[l]);
        CHECK(second_coefficient(spec) == p.coeff[l + 1]);
        CHECK(second_coefficient_n(spec) == n.coeff[l + 1]);
    }
}

TEST_CASE("specialized closed forms agree with the mask formula") {
    for (Kind kind : {Kind::First, Kind::Second})
        for (int w = 2; w <= 9; ++w)
            for (int l = 2; l <= 12; ++l) {
                const LatticeSpec spec(l, w, kind);
                CHECK(second_coefficient_specialized(spec) == second_coefficient(spec));
            }
}

TEST_CASE("width-3 link with Fibonacci") {
    for (Kind kind : {Kind::First, Kind::Second})
        for (int l = 2; l <= 100; ++l)
            CHECK(second_coefficient(LatticeSpec(l, 3, kind)) == -2 * fibonacci(l + 1));
}

TEST_CASE("minimal pathsets: exactly the l-subsets, all irredundant") {
    for (const LatticeSpec& spec : small_grid(16)) {
        const HammockNetwork net = build_network(spec);
        const int m = net.num_relays;
        const int l = spec.length;
        Int minimal = 0;
        for (RelayMask mask = 0; mask < (RelayMask{1} << m); ++mask) {
            if (std::popcount(mask) != l) continue;
            if (!is_operational(net, mask)) continue;
            ++minimal;
            // removing any single relay must disconnect S from T
            for (int r = 0; r < m; ++r)
                if (mask & (RelayMask{1} << r))
                    CHECK_FALSE(is_operational(net, mask & ~(RelayMask{1} << r)));
        }
        CHECK(minimal == first_coefficient(spec));
    }
}

TEST_CASE("every operational (l+1)-subset contains an operational l-subset") {
    for (const LatticeSpec& spec : small_grid(16)) {
        const HammockNetwork net = build_network(spec);
        const int m = net.num_relays;
        const int l = spec.length;
        for (RelayMask mask = 0; mask < (RelayMask{1} << m); ++mask) {
            if (std::popcount(mask) != l + 1) continue;
            if (!is_operational(net, mask)) continue;
            bool has_sub = false;
            for (int r = 0; r < m && !has_sub; ++r)
                if (mask & (RelayMask{1} << r))
                    has_sub = is_operational(net, mask & ~(RelayMask{1} << r));
            CHECK(has_sub);
        }
    }
}

TEST_CASE("polynomial evaluation") {
    const PTable series{2, ints({0, 0, 1})};
    CHECK(eval_polynomial(series, 1) == 1);
    CHECK(eval_polynomial(series, 0) == 0);
    const PTable square{4, ints({0, 0, 4, -4, 1})};  // (2p - p^2)^2
    CHECK(eval_polynomial(square, Rational(1, 2)) == Rational(9, 16));
    CHECK_THROWS_AS(eval_polynomial(series, Rational(3, 2)), std::invalid_argument);
}

TEST_CASE("brute-forced polynomials behave like reliabilities") {
    for (const LatticeSpec& spec : small_grid(12)) {
        const PTable p = reliability_polynomial(build_network(spec));
        CHECK(eval_polynomial(p, 0) == 0);
        CHECK(eval_polynomial(p, 1) == 1);
        Rational prev = 0;
        for (int i = 1; i < 100; ++i) {
            const Rational value = eval_polynomial(p, Rational(i, 100));
            CHECK(value > prev);
            prev = value;
        }
    }
}

TEST_CASE("exact polynomial for the fused 2x2 network") {
    const PTable p = reliability_polynomial(build_network(LatticeSpec(2, 2, Kind::Second)));
    CHECK(p.coeff == ints({0, 0, 4, -4, 1}));  // (2p - p^2)^2
}

TEST_CASE("reports") {
    const ReliabilityCoefficients a = analytic_coefficients(LatticeSpec(4, 3, Kind::First));
    CHECK(a.m == 12);
    CHECK(a.p_l == 13);
    CHECK(a.p_l1 == -10);  // -2 F_5
    CHECK(a.n_l1 == (12 - 4) * 13 - 10);
    CHECK(a.method == "analytic");

    const ReliabilityCoefficients b =
        bruteforce_coefficients(build_network(LatticeSpec(4, 3, Kind::First)));
    CHECK(b.n_l == a.n_l);
    CHECK(b.n_l1 == a.n_l1);
    CHECK(b.p_l == a.p_l);
    CHECK(b.p_l1 == a.p_l1);
    CHECK(b.method == "bruteforce");
}

TEST_CASE("monte carlo hits the exact value and reproduces") {
    const LatticeSpec spec(2, 3, Kind::First);
    const HammockNetwork net = build_network(spec);
    const PTable exact = reliability_polynomial(net);

    const MonteCarloResult one = monte_carlo_estimate(net, 1.0, 1000, 42);
    CHECK(one.estimate == 1.0);
    const MonteCarloResult zero = monte_carlo_estimate(net, 0.0, 1000, 42);
    CHECK(zero.estimate == 0.0);

    const MonteCarloResult mc = monte_carlo_estimate(net, 0.5, 1'000'000, 7);
    const double truth =
        static_cast<double>(eval_polynomial(exact, Rational(1, 2)).convert_to<double>());
    CHECK(std::abs(mc.estimate - truth) <= 4 * mc.std_error);

    const MonteCarloResult again = monte_carlo_estimate(net, 0.5, 1'000'000, 7);
    CHECK(mc.operational == again.operational);
    const MonteCarloResult serial = monte_carlo_estimate_serial(net, 0.5, 1'000'000, 7);
    CHECK(mc.operational == serial.operational);
    const MonteCarloResult other_seed = monte_carlo_estimate(net, 0.5, 1'000'000, 8);
    CHECK(mc.operational != other_seed.operational);

    CHECK_THROWS_AS(monte_carlo_estimate(net, 1.5, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(monte_carlo_estimate(net, 0.5, 0, 1), std::invalid_argument);
}

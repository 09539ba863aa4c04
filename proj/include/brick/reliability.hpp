#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brick/bigint.hpp"
#include "brick/lattice.hpp"
#include "brick/transfer.hpp"

namespace brick {

// Two-terminal relay network drawn as a brick wall: w rows of l relays
// between source S (everything at boundary 0) and terminus T (boundary l).
// A joint at interior boundary c fuses the row-j and row-(j+1) nodes, so a
// relay connects the node classes at its two boundaries. Minimal S-T
// pathsets have exactly l relays, one per column, and are in bijection with
// the brick-wall lattice paths of the same spec.
struct HammockNetwork {
    LatticeSpec spec;
    int num_relays = 0;   // m = w * l
    int num_classes = 0;  // node classes after the boundary merges
    int source_class = 0;
    int terminus_class = 0;
    std::vector<int> relay_left;   // per relay, node class at its left boundary
    std::vector<int> relay_right;  // per relay, node class at its right boundary

    int relay_index(int column, int row) const { return column * spec.width + row; }
};

// Requires l >= 2 (for l = 1 the S and T merges collapse onto the same
// relay boundaries).
HammockNetwork build_network(const LatticeSpec& spec);

// Relay subsets as bitmasks, bit relay_index(i, j); only meaningful for
// m <= 64, which covers everything the exact oracle is allowed to scan.
using RelayMask = std::uint64_t;

RelayMask full_mask(const HammockNetwork& net);

// True iff S and T are connected using only closed relays and the permanent
// node merges.
bool is_operational(const HammockNetwork& net, RelayMask closed);

// Coefficients of the N-form sum_k N_k p^k (1-p)^(m-k): N_k counts k-subsets
// whose closure operates the network.
struct NTable {
    int m = 0;
    std::vector<Int> coeff;  // indexed k = 0..m
};

// Coefficients of the expanded P-form sum_k P_k p^k.
struct PTable {
    int m = 0;
    std::vector<Int> coeff;  // indexed k = 0..m
};

inline constexpr int kDefaultStateGuardBits = 24;  // 16.7M subsets
inline constexpr int kHardStateGuardBits = 30;

// Exact N_k for every k by exhausting all 2^m relay subsets; the oracle for
// everything analytic in this module. Throws GuardExceeded when m exceeds
// max_state_bits (hard cap 30). The subset space is split across OpenMP
// threads and per-thread tallies combined; the serial variant is the
// reference the parallel one is tested against.
NTable brute_force_ntable(const HammockNetwork& net,
                          int max_state_bits = kDefaultStateGuardBits);
NTable brute_force_ntable_serial(const HammockNetwork& net,
                                 int max_state_bits = kDefaultStateGuardBits);

// P_k = sum_{j<=k} N_j (-1)^(k-j) C(m-j, k-j).
PTable n_to_p(const NTable& n);

// Full exact reliability polynomial via the brute-force scan (guarded).
PTable reliability_polynomial(const HammockNetwork& net,
                              int max_state_bits = kDefaultStateGuardBits);

// 0/1 row masks for the second-coefficient formulas: u1 keeps exactly the
// start rows participating in a joint at column 1, u2 the end rows
// participating in a joint at column l-1. Rows indexed bottom-up.
struct EdgeMasks {
    std::vector<int> u1;
    std::vector<int> u2;
};

EdgeMasks edge_masks(const LatticeSpec& spec);  // l >= 2

// P_l = N_l = the path count.
Int first_coefficient(const LatticeSpec& spec);

// P_{l+1} = -(paths starting along a half-brick + paths finishing along
// one) / 2, computed by mask propagation in O(l*w). The half-sum is always
// even (masked paths pair up); a remainder signals a mask bug and throws.
Int second_coefficient(const LatticeSpec& spec);

// N_{l+1} = (wl - l) N_l + P_{l+1}.
Int second_coefficient_n(const LatticeSpec& spec);

// The parity-cased closed forms evaluated verbatim on dense named-matrix
// products with the fixed masks v (all-ones minus the free edge row) and t
// (all-ones minus rows 0 and w-1). Kept solely to be asserted equal to
// second_coefficient.
Int second_coefficient_specialized(const LatticeSpec& spec);

// The analytic report: first two non-zero coefficients in both forms.
struct ReliabilityCoefficients {
    LatticeSpec spec;
    int m = 0;
    Int n_l, n_l1, p_l, p_l1;
    std::string method;  // "analytic" or "bruteforce"
};

ReliabilityCoefficients analytic_coefficients(const LatticeSpec& spec);
ReliabilityCoefficients bruteforce_coefficients(const HammockNetwork& net,
                                                int max_state_bits = kDefaultStateGuardBits);

// Exact evaluation of sum_k P_k p^k at a rational p in [0, 1].
Rational eval_polynomial(const PTable& table, const Rational& p);

struct MonteCarloResult {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t operational = 0;
};

// Each relay closes independently with probability p; the estimate is the
// operational fraction, with standard error sqrt(e(1-e)/trials). Trials are
// generated in fixed-size blocks whose RNG streams derive from (seed, block
// index), so the result depends only on (seed, trials) and not on the
// thread count; the serial variant returns the identical tally.
MonteCarloResult monte_carlo_estimate(const HammockNetwork& net, double p,
                                      std::uint64_t trials, std::uint64_t seed);
MonteCarloResult monte_carlo_estimate_serial(const HammockNetwork& net, double p,
                                             std::uint64_t trials, std::uint64_t seed);

}  // namespace brick

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brick/bigint.hpp"
#include "brick/lattice.hpp"

namespace brick {

// F_0 = 0, F_1 = 1, F_n = F_{n-1} + F_{n-2}.
Int fibonacci(std::size_t n);

// The singular 3x3 matrix M_L M_U whose powers carry Fibonacci entries.
// Stored top-down (top row first).
struct FibBlockMatrix {
    std::array<std::array<Int, 3>, 3> m;

    friend bool operator==(const FibBlockMatrix&, const FibBlockMatrix&) = default;
};

FibBlockMatrix fib_block();  // [[1,1,0],[1,1,1],[1,1,1]]

// F^n by repeated multiplication, n >= 1 (throws std::invalid_argument for
// n = 0). The Fibonacci closed form for the entries is the test oracle, not
// the implementation.
FibBlockMatrix fib_block_power(unsigned n);

// The companion product M_U F^n, same contract.
FibBlockMatrix fib_block_power_mu(unsigned n);

// Width-3 closed form: B_{l,3} = F_{l+3}, l >= 1, either kind.
Int closed_form_w3(std::uint64_t l);

// Width-4 closed forms. Second kind: 4*3^k for l = 2k+1, 8*3^(k-1) for
// l = 2k. First kind: 4*3^k for l = 2k+1, 6*3^(k-1) for l = 2k.
Int closed_form_w4(std::uint64_t l, Kind kind);

// Rational generating function as integer coefficient lists, constant term
// first. The denominator must have a nonzero constant term.
struct RationalGF {
    std::vector<Int> numerator;
    std::vector<Int> denominator;
};

// First n_terms power-series coefficients of numerator/denominator via the
// linear recurrence the denominator induces. Exact arithmetic; throws if the
// constant term is zero or any coefficient fails to be an integer.
std::vector<Int> gf_expand(const RationalGF& g, std::size_t n_terms);

RationalGF gf_fibonacci();    // z / (1 - z - z^2)
RationalGF gf_w4(Kind kind);  // (4z + 8z^2) / (1 - 3z^2) resp. (4z + 6z^2) / (1 - 3z^2)

// [count_paths(l, w, kind) for l = 1..l_max], computed with one propagation.
std::vector<Int> sequence_for(int w, Kind kind, int l_max);

// One reference row: the first eight terms, the OEIS id, and the
// position of our l = 1 term inside that sequence (resolved empirically at
// fixture-build time, see the oeis module).
struct Table1Row {
    int width;
    std::optional<Kind> kind;  // nullopt: odd width, both kinds coincide
    std::array<std::uint64_t, 8> terms;
    std::string oeis_id;
    int alignment_offset;

    std::string label() const;  // e.g. "B(l,4) second"
};

// The 13 embedded reference rows.
const std::vector<Table1Row>& table1_reference();

}  // namespace brick

#pragma once

#include <string>
#include <vector>

#include "brick/bigint.hpp"
#include "brick/lattice.hpp"

namespace brick {

// Per-row path counts at one column. Storage is bottom-up (row j = 0 first);
// reversed() flips to the top-down order the matrix dumps use.
struct CountColumn {
    std::vector<Int> entries;

    int size() const { return static_cast<int>(entries.size()); }
    Int sum() const;
    CountColumn reversed() const;

    friend bool operator==(const CountColumn&, const CountColumn&) = default;
};

CountColumn all_ones(int w);

// Sparse form of the w x w 0/1 block matrix: each pair {j, j+1} carries a
// 2x2 all-ones block, every unpaired row keeps a 1 on the diagonal. Pairs
// are disjoint, so the lower rows identify them.
struct TransferMatrix {
    int dim = 0;
    std::vector<int> pair_lo;  // sorted lower rows of the pairs

    friend bool operator==(const TransferMatrix&, const TransferMatrix&) = default;
};

// Dense w x w grid of exact integers, entry [row][col], rows bottom-up.
using DenseMatrix = std::vector<std::vector<Int>>;

// The per-column matrix A_c: pairs exactly the rows joined at column c.
TransferMatrix column_matrix(const LatticeSpec& spec, int c);

// The four named matrices. M_U and M_L require odd w, M- and M+ even w;
// anything else throws std::invalid_argument. In bottom-up rows: M_U pairs
// {1,2},{3,4},... (row 0 free); M_L pairs {0,1},... (row w-1 free); M- pairs
// {1,2},...,{w-3,w-2} (rows 0 and w-1 free); M+ pairs all.
enum class NamedMatrix { MU, ML, Mminus, Mplus };
TransferMatrix named_matrix(NamedMatrix name, int w);

// One propagation step: paired rows j, j+1 both become old[j] + old[j+1],
// unpaired rows are untouched. O(w) big-integer additions; no dense product.
void advance_in_place(CountColumn& col, const TransferMatrix& m);
CountColumn advance(const CountColumn& col, const TransferMatrix& m);

// b_i = A_i ... A_1 b_0: entry j counts paths from the left side to (i, j).
CountColumn column_vector(const LatticeSpec& spec, int i);

// Total path count, the sum of b_{l-1}. Linear in l * w.
Int count_paths(const LatticeSpec& spec);

// Dense product M = A_{l-1} ... A_1; entry [end][start] counts paths from
// (0, start) to (l-1, end). Requires l >= 2.
DenseMatrix transition_matrix(const LatticeSpec& spec);

DenseMatrix dense(const TransferMatrix& m);
// Reverses rows and columns: bottom-up storage <-> top-down display order.
DenseMatrix to_top_down(const DenseMatrix& m);
std::string format_dense(const DenseMatrix& m);

// Evaluates the explicit parity-cased closed forms (dense named matrices,
// rho = floor(r/2) powers) instead of the per-column product. Requires
// l >= 2. Exists solely to be asserted equal to count_paths.
Int power_form_count(const LatticeSpec& spec);

}  // namespace brick

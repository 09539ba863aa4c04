#include "brick/transfer.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace brick {

Int CountColumn::sum() const {
    Int s = 0;
    for (const Int& e : entries) s += e;
    return s;
}

CountColumn CountColumn::reversed() const {
    CountColumn out = *this;
    std::reverse(out.entries.begin(), out.entries.end());
    return out;
}

CountColumn all_ones(int w) { return CountColumn{std::vector<Int>(w, Int(1))}; }

TransferMatrix column_matrix(const LatticeSpec& spec, int c) {
    if (c < 1 || c > spec.length - 1)
        throw std::out_of_range("column " + std::to_string(c) + " outside 1.." +
                                std::to_string(spec.length - 1));
    TransferMatrix m{spec.width, {}};
    for (int j = 0; j + 1 <= spec.width - 1; ++j)
        if (joint_exists(c, j, spec)) m.pair_lo.push_back(j);
    return m;
}

TransferMatrix named_matrix(NamedMatrix name, int w) {
    const bool odd = w % 2 != 0;
    TransferMatrix m{w, {}};
    switch (name) {
        case NamedMatrix::MU:
            if (!odd) throw std::invalid_argument("M_U is defined for odd w");
            for (int j = 1; j + 1 <= w - 1; j += 2) m.pair_lo.push_back(j);
            return m;
        case NamedMatrix::ML:
            if (!odd) throw std::invalid_argument("M_L is defined for odd w");
            for (int j = 0; j + 1 <= w - 2; j += 2) m.pair_lo.push_back(j);
            return m;
        case NamedMatrix::Mminus:
            if (odd) throw std::invalid_argument("M- is defined for even w");
            for (int j = 1; j + 1 <= w - 2; j += 2) m.pair_lo.push_back(j);
            return m;
        case NamedMatrix::Mplus:
            if (odd) throw std::invalid_argument("M+ is defined for even w");
            for (int j = 0; j + 1 <= w - 1; j += 2) m.pair_lo.push_back(j);
            return m;
    }
    throw std::invalid_argument("unknown named matrix");
}

void advance_in_place(CountColumn& col, const TransferMatrix& m) {
    if (col.size() != m.dim)
        throw std::invalid_argument("dimension mismatch: column " + std::to_string(col.size()) +
                                    " vs matrix " + std::to_string(m.dim));
    for (int j : m.pair_lo) {
        Int t = col.entries[j] + col.entries[j + 1];
        col.entries[j] = t;
        col.entries[j + 1] = std::move(t);
    }
}

CountColumn advance(const CountColumn& col, const TransferMatrix& m) {
    CountColumn out = col;
    advance_in_place(out, m);
    return out;
}

CountColumn column_vector(const LatticeSpec& spec, int i) {
    if (i < 0 || i > spec.length - 1)
        throw std::out_of_range("column index " + std::to_string(i) + " outside 0.." +
                                std::to_string(spec.length - 1));
    CountColumn b = all_ones(spec.width);
    for (int c = 1; c <= i; ++c) advance_in_place(b, column_matrix(spec, c));
    return b;
}

Int count_paths(const LatticeSpec& spec) {
    return column_vector(spec, spec.length - 1).sum();
}

DenseMatrix dense(const TransferMatrix& m) {
    DenseMatrix d(m.dim, std::vector<Int>(m.dim, Int(0)));
    std::vector<bool> paired(m.dim, false);
    for (int j : m.pair_lo) {
        d[j][j] = d[j][j + 1] = d[j + 1][j] = d[j + 1][j + 1] = 1;
        paired[j] = paired[j + 1] = true;
    }
    for (int j = 0; j < m.dim; ++j)
        if (!paired[j]) d[j][j] = 1;
    return d;
}

DenseMatrix to_top_down(const DenseMatrix& m) {
    const std::size_t n = m.size();
    DenseMatrix out(n, std::vector<Int>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out[r][c] = m[n - 1 - r][n - 1 - c];
    return out;
}

std::string format_dense(const DenseMatrix& m) {
    std::ostringstream os;
    for (const auto& row : m) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? " " : "") << row[c];
        os << "\n";
    }
    return os.str();
}

namespace {

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t n = a.size();
    DenseMatrix out(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

CountColumn apply_dense(const DenseMatrix& m, const CountColumn& v) {
    const int n = static_cast<int>(m.size());
    CountColumn out{std::vector<Int>(n, Int(0))};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m[i][j] != 0) out.entries[i] += m[i][j] * v.entries[j];
    return out;
}

}  // namespace

DenseMatrix transition_matrix(const LatticeSpec& spec) {
    if (spec.length < 2) throw std::invalid_argument("transition matrix requires l >= 2");
    DenseMatrix m = dense(column_matrix(spec, 1));
    for (int c = 2; c <= spec.length - 1; ++c)
        m = multiply(dense(column_matrix(spec, c)), m);
    return m;
}

Int power_form_count(const LatticeSpec& spec) {
    if (spec.length < 2) throw std::invalid_argument("power forms require l >= 2");
    const int w = spec.width;
    const int l = spec.length;
    CountColumn b = all_ones(w);

    if (w % 2 != 0) {
        // Odd width: b_r = (M_L M_U)^rho b_0, or with a leading M_U when r is
        // odd; rho = floor(r/2). Both kinds count the same; the second kind
        // swaps the roles of M_U and M_L under the row reflection.
        const DenseMatrix first =
            dense(named_matrix(spec.kind == Kind::First ? NamedMatrix::MU : NamedMatrix::ML, w));
        const DenseMatrix second =
            dense(named_matrix(spec.kind == Kind::First ? NamedMatrix::ML : NamedMatrix::MU, w));
        const DenseMatrix core = multiply(second, first);
        const int r = l - 1;
        for (int k = 0; k < r / 2; ++k) b = apply_dense(core, b);
        if (r % 2 != 0) b = apply_dense(first, b);
    } else {
        // Even width, rho = floor((l-1)/2). The first kind starts with M-,
        // the second with M+.
        const DenseMatrix first =
            dense(named_matrix(spec.kind == Kind::First ? NamedMatrix::Mminus : NamedMatrix::Mplus, w));
        const DenseMatrix second =
            dense(named_matrix(spec.kind == Kind::First ? NamedMatrix::Mplus : NamedMatrix::Mminus, w));
        const DenseMatrix core = multiply(second, first);
        const int rho = (l - 1) / 2;
        for (int k = 0; k < rho; ++k) b = apply_dense(core, b);
        if (l % 2 == 0) b = apply_dense(first, b);
    }
    return b.sum();
}

}  // namespace brick

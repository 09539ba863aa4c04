#include "brick/sequences.hpp"

#include "brick/transfer.hpp"

namespace brick {

Int fibonacci(std::size_t n) {
    Int a = 0, b = 1;
    for (std::size_t i = 0; i < n; ++i) {
        a += b;
        std::swap(a, b);
    }
    return a;
}

FibBlockMatrix fib_block() {
    return FibBlockMatrix{{{{1, 1, 0}, {1, 1, 1}, {1, 1, 1}}}};
}

namespace {

FibBlockMatrix multiply(const FibBlockMatrix& a, const FibBlockMatrix& b) {
    FibBlockMatrix out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Int s = 0;
            for (int k = 0; k < 3; ++k) s += a.m[i][k] * b.m[k][j];
            out.m[i][j] = s;
        }
    return out;
}

}  // namespace

FibBlockMatrix fib_block_power(unsigned n) {
    if (n == 0) throw std::invalid_argument("fib_block_power requires n >= 1");
    FibBlockMatrix out = fib_block();
    for (unsigned i = 1; i < n; ++i) out = multiply(out, fib_block());
    return out;
}

FibBlockMatrix fib_block_power_mu(unsigned n) {
    const FibBlockMatrix mu{{{{1, 1, 0}, {1, 1, 0}, {0, 0, 1}}}};
    return multiply(mu, fib_block_power(n));
}

Int closed_form_w3(std::uint64_t l) {
    if (l < 1) throw std::invalid_argument("closed_form_w3 requires l >= 1");
    return fibonacci(static_cast<std::size_t>(l) + 3);
}

namespace {

Int pow3(std::uint64_t k) {
    Int p = 1;
    for (std::uint64_t i = 0; i < k; ++i) p *= 3;
    return p;
}

}  // namespace

Int closed_form_w4(std::uint64_t l, Kind kind) {
    if (l < 1) throw std::invalid_argument("closed_form_w4 requires l >= 1");
    if (l % 2 == 1) return 4 * pow3((l - 1) / 2);  // both kinds for odd l
    const std::uint64_t k = l / 2;
    return (kind == Kind::Second ? 8 : 6) * pow3(k - 1);
}

std::vector<Int> gf_expand(const RationalGF& g, std::size_t n_terms) {
    if (g.denominator.empty() || g.denominator[0] == 0)
        throw std::invalid_argument("gf_expand: denominator constant term is zero");
    const Int& d0 = g.denominator[0];
    std::vector<Int> coeff(n_terms, Int(0));
    for (std::size_t k = 0; k < n_terms; ++k) {
        // d0 * c_k = n_k - sum_{i>=1} d_i * c_{k-i}
        Int acc = k < g.numerator.size() ? g.numerator[k] : Int(0);
        for (std::size_t i = 1; i < g.denominator.size() && i <= k; ++i)
            acc -= g.denominator[i] * coeff[k - i];
        if (acc % d0 != 0)
            throw std::domain_error("gf_expand: non-integer coefficient at index " +
                                    std::to_string(k));
        coeff[k] = acc / d0;
    }
    return coeff;
}

RationalGF gf_fibonacci() { return {{0, 1}, {1, -1, -1}}; }

RationalGF gf_w4(Kind kind) {
    return kind == Kind::Second ? RationalGF{{0, 4, 8}, {1, 0, -3}}
                                : RationalGF{{0, 4, 6}, {1, 0, -3}};
}

std::vector<Int> sequence_for(int w, Kind kind, int l_max) {
    if (w < 2) throw std::invalid_argument("sequence_for requires w >= 2");
    if (l_max < 1) throw std::invalid_argument("sequence_for requires l_max >= 1");
    // The column matrices depend only on the column index, so one propagation
    // to l_max yields every prefix count along the way.
    const LatticeSpec spec(l_max, w, kind);
    std::vector<Int> out;
    out.reserve(l_max);
    CountColumn b = all_ones(w);
    out.push_back(b.sum());
    for (int c = 1; c <= l_max - 1; ++c) {
        advance_in_place(b, column_matrix(spec, c));
        out.push_back(b.sum());
    }
    return out;
}

std::string Table1Row::label() const {
    std::string s = "B(l," + std::to_string(width) + ")";
    if (kind) s += std::string(" ") + to_string(*kind);
    return s;
}

const std::vector<Table1Row>& table1_reference() {
    static const std::vector<Table1Row> rows = {
        {3, std::nullopt, {3, 5, 8, 13, 21, 34, 55, 89}, "A000045", 4},
        {4, Kind::First, {4, 6, 12, 18, 36, 54, 108, 162}, "A068911", 2},
        {4, Kind::Second, {4, 8, 12, 24, 36, 72, 108, 216}, "A153339", 1},
        {5, std::nullopt, {5, 9, 16, 29, 52, 94, 169, 305}, "A090990", 0},
        {6, Kind::First, {6, 10, 20, 34, 68, 116, 232, 396}, "A030436", 0},
        {6, Kind::Second, {6, 12, 20, 40, 68, 136, 232, 464}, "A030435", 0},
        {7, std::nullopt, {7, 13, 24, 45, 84, 158, 296, 557}, "A090992", 0},
        {8, Kind::First, {8, 14, 28, 50, 100, 180, 360, 650}, "A153364", 0},
        {8, Kind::Second, {8, 16, 28, 56, 100, 200, 360, 720}, "A153363", 0},
        {9, std::nullopt, {9, 17, 32, 61, 116, 222, 424, 813}, "A090994", 0},
        {10, Kind::First, {10, 18, 36, 66, 132, 244, 488, 906}, "A153370", 0},
        {10, Kind::Second, {10, 20, 36, 72, 132, 264, 488, 976}, "A153369", 0},
        {11, std::nullopt, {11, 21, 40, 77, 148, 286, 552, 1069}, "A129638", 0},
    };
    return rows;
}

}  // namespace brick

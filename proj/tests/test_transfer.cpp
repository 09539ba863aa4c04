#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brick/transfer.hpp"

using namespace brick;

namespace {

DenseMatrix grid(std::vector<std::vector<int>> rows) {
    DenseMatrix out;
    for (auto& r : rows) out.emplace_back(r.begin(), r.end());
    return out;
}

}  // namespace

TEST_CASE("column matrices reproduce the named ones") {
    const LatticeSpec first3(4, 3, Kind::First);
    CHECK(column_matrix(first3, 1) == named_matrix(NamedMatrix::MU, 3));
    CHECK(column_matrix(first3, 2) == named_matrix(NamedMatrix::ML, 3));
    const LatticeSpec second4(4, 4, Kind::Second);
    CHECK(column_matrix(second4, 1) == named_matrix(NamedMatrix::Mplus, 4));
    CHECK(column_matrix(second4, 2) == named_matrix(NamedMatrix::Mminus, 4));
    CHECK_THROWS_AS(column_matrix(first3, 0), std::out_of_range);
    CHECK_THROWS_AS(column_matrix(first3, 4), std::out_of_range);
}

TEST_CASE("dense top-down forms of the named matrices") {
    CHECK(to_top_down(dense(named_matrix(NamedMatrix::MU, 3))) ==
          grid({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}}));
    CHECK(to_top_down(dense(named_matrix(NamedMatrix::ML, 3))) ==
          grid({{1, 0, 0}, {0, 1, 1}, {0, 1, 1}}));
    CHECK(to_top_down(dense(named_matrix(NamedMatrix::Mplus, 2))) ==
          grid({{1, 1}, {1, 1}}));
    CHECK(to_top_down(dense(named_matrix(NamedMatrix::Mminus, 4))) ==
          grid({{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}}));
    CHECK(to_top_down(dense(named_matrix(NamedMatrix::Mplus, 6))) ==
          grid({{1, 1, 0, 0, 0, 0},
                {1, 1, 0, 0, 0, 0},
                {0, 0, 1, 1, 0, 0},
                {0, 0, 1, 1, 0, 0},
                {0, 0, 0, 0, 1, 1},
                {0, 0, 0, 0, 1, 1}}));
}

TEST_CASE("named matrices reject the wrong width parity") {
    CHECK_THROWS_AS(named_matrix(NamedMatrix::MU, 4), std::invalid_argument);
    CHECK_THROWS_AS(named_matrix(NamedMatrix::ML, 2), std::invalid_argument);
    CHECK_THROWS_AS(named_matrix(NamedMatrix::Mminus, 3), std::invalid_argument);
    CHECK_THROWS_AS(named_matrix(NamedMatrix::Mplus, 5), std::invalid_argument);
}

TEST_CASE("advance applies the sparse pairing") {
    CountColumn b = all_ones(3);
    advance_in_place(b, named_matrix(NamedMatrix::MU, 3));
    CHECK(b.entries == std::vector<Int>{1, 2, 2});
    CHECK(b.reversed().entries == std::vector<Int>{2, 2, 1});

    CountColumn b4 = advance(all_ones(4), named_matrix(NamedMatrix::Mplus, 4));
    CHECK(b4.entries == std::vector<Int>{2, 2, 2, 2});

    const TransferMatrix empty{4, {}};
    CHECK(advance(b4, empty) == b4);

    CHECK_THROWS_AS(advance(all_ones(3), named_matrix(NamedMatrix::Mplus, 4)),
                    std::invalid_argument);
}

TEST_CASE("column vectors") {
    CHECK(column_vector(LatticeSpec(3, 4, Kind::Second), 2).entries ==
          std::vector<Int>{2, 4, 4, 2});
    CHECK(column_vector(LatticeSpec(5, 7, Kind::First), 0) == all_ones(7));
    const CountColumn b2 = column_vector(LatticeSpec(3, 3, Kind::First), 2);
    CHECK(b2.entries == std::vector<Int>{3, 3, 2});
    CHECK(b2.sum() == 8);
    CHECK_THROWS_AS(column_vector(LatticeSpec(3, 3, Kind::First), 3), std::out_of_range);
}

TEST_CASE("count_paths reference values") {
    CHECK(count_paths(LatticeSpec(8, 11, Kind::First)) == 1069);
    CHECK(count_paths(LatticeSpec(8, 11, Kind::Second)) == 1069);
    CHECK(count_paths(LatticeSpec(2, 4, Kind::First)) == 6);
    CHECK(count_paths(LatticeSpec(2, 4, Kind::Second)) == 8);
    CHECK(count_paths(LatticeSpec(1, 9, Kind::First)) == 9);
}

TEST_CASE("transition matrix") {
    CHECK(to_top_down(transition_matrix(LatticeSpec(3, 3, Kind::First))) ==
          grid({{1, 1, 0}, {1, 1, 1}, {1, 1, 1}}));
    CHECK(transition_matrix(LatticeSpec(2, 3, Kind::First)) ==
          dense(named_matrix(NamedMatrix::MU, 3)));

    const DenseMatrix m = transition_matrix(LatticeSpec(3, 4, Kind::Second));
    std::vector<Int> row_sums;
    for (const auto& row : m) {
        Int s = 0;
        for (const Int& v : row) s += v;
        row_sums.push_back(s);
    }
    CHECK(row_sums == std::vector<Int>{2, 4, 4, 2});

    CHECK_THROWS_AS(transition_matrix(LatticeSpec(1, 3, Kind::First)), std::invalid_argument);
}

TEST_CASE("transition matrix total equals the count") {
    for (Kind kind : {Kind::First, Kind::Second})
        for (int w = 2; w <= 7; ++w)
            for (int l = 2; l <= 9; ++l) {
                const LatticeSpec spec(l, w, kind);
                Int total = 0;
                for (const auto& row : transition_matrix(spec))
                    for (const Int& v : row) total += v;
                CHECK(total == count_paths(spec));
            }
}

TEST_CASE("power forms agree with the per-column product") {
    CHECK(power_form_count(LatticeSpec(7, 5, Kind::First)) == 169);
    CHECK(power_form_count(LatticeSpec(4, 6, Kind::Second)) == 40);
    CHECK(power_form_count(LatticeSpec(2, 2, Kind::First)) == 2);
    for (Kind kind : {Kind::First, Kind::Second})
        for (int w = 2; w <= 9; ++w)
            for (int l = 2; l <= 12; ++l) {
                const LatticeSpec spec(l, w, kind);
                CHECK(power_form_count(spec) == count_paths(spec));
            }
}

TEST_CASE("every transfer matrix is symmetric and disjointly paired") {
    for (Kind kind : {Kind::First, Kind::Second})
        for (int w = 2; w <= 8; ++w)
            for (int c = 1; c <= 9; ++c) {
                const TransferMatrix m = column_matrix(LatticeSpec(10, w, kind), c);
                for (std::size_t i = 1; i < m.pair_lo.size(); ++i)
                    CHECK(m.pair_lo[i] >= m.pair_lo[i - 1] + 2);
                const DenseMatrix d = dense(m);
                for (int i = 0; i < w; ++i)
                    for (int j = 0; j < w; ++j) CHECK(d[i][j] == d[j][i]);
            }
}

TEST_CASE("row reversal swaps the kinds at odd width") {
    for (int w = 3; w <= 9; w += 2)
        for (int l = 2; l <= 8; ++l) {
            const DenseMatrix first = transition_matrix(LatticeSpec(l, w, Kind::First));
            const DenseMatrix second = transition_matrix(LatticeSpec(l, w, Kind::Second));
            CHECK(first == to_top_down(second));
        }
}

TEST_CASE("count is non-decreasing in width") {
    for (Kind kind : {Kind::First, Kind::Second})
        for (int l = 1; l <= 10; ++l)
            for (int w = 2; w <= 9; ++w)
                CHECK(count_paths(LatticeSpec(l, w + 1, kind)) >=
                      count_paths(LatticeSpec(l, w, kind)));
}

TEST_CASE("counts agree with the exhaustive oracle") {
    for (Kind kind : {Kind::First, Kind::Second})
        for (int w = 2; w <= 6; ++w)
            for (int l = 1; l <= 8; ++l) {
                const LatticeSpec spec(l, w, kind);
                CHECK(count_paths(spec) == count_paths_bruteforce(spec));
            }
}

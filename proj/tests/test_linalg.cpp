#include <catch2/catch_amalgamated.hpp>

#include "virasoro/linalg.hpp"

#include <random>

using namespace virasoro;

namespace {

Matrix from_rows(std::vector<std::vector<long long>> rows) {
    Matrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m.at(r, c) = GaussianRational(rows[r][c]);
    return m;
}

Matrix random_matrix(std::mt19937& rng, int rows, int cols) {
    std::uniform_int_distribution<long long> d(-4, 4);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = GaussianRational(d(rng));
    return m;
}

}  // namespace

TEST_CASE("rank and rref on known matrices", "[linalg]") {
    Matrix m = from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    CHECK(rank(m) == 2);
    CHECK(rank(Matrix::identity(4)) == 4);
    CHECK(rank(Matrix(3, 3)) == 0);
}

TEST_CASE("kernel basis is exact", "[linalg]") {
    Matrix m = from_rows({{1, 2, 3}, {2, 4, 6}});
    Matrix k = kernel_basis(m);
    REQUIRE(k.cols() == 2);
    CHECK((m * k).is_zero());

    Matrix inj = from_rows({{1, 0}, {0, 1}, {1, 1}});
    CHECK(kernel_basis(inj).cols() == 0);
}

TEST_CASE("solve finds exact solutions and detects inconsistency", "[linalg]") {
    Matrix a = from_rows({{2, 1}, {1, 3}});
    Vec b{GaussianRational(5), GaussianRational(10)};
    auto x = solve(a, b);
    REQUIRE(x.has_value());
    CHECK(mat_vec(a, *x) == b);

    Matrix sing = from_rows({{1, 1}, {1, 1}});
    Vec bad{GaussianRational(0), GaussianRational(1)};
    CHECK_FALSE(solve(sing, bad).has_value());
}

TEST_CASE("solve_columns expresses columns in a basis", "[linalg]") {
    Matrix basis = from_rows({{1, 0}, {1, 1}, {0, 2}});
    Matrix target = from_rows({{2, 1}, {3, 1}, {2, 0}});
    auto x = solve_columns(basis, target);
    REQUIRE(x.has_value());
    CHECK(basis * *x == target);
}

TEST_CASE("random solve consistency", "[linalg][property]") {
    std::mt19937 rng(1234);
    for (int t = 0; t < 50; ++t) {
        Matrix a = random_matrix(rng, 4, 3);
        Matrix xs = random_matrix(rng, 3, 1);
        Vec b = mat_vec(a, xs.column(0));
        auto x = solve(a, b);
        REQUIRE(x.has_value());
        CHECK(mat_vec(a, *x) == b);
        Matrix k = kernel_basis(a);
        CHECK((a * k).is_zero());
        CHECK(rank(a) + k.cols() == a.cols());
    }
}

TEST_CASE("RowSpan tracks rank and membership", "[linalg]") {
    RowSpan span(3);
    CHECK(span.add({GaussianRational(1), GaussianRational(2), GaussianRational(0)}));
    CHECK_FALSE(span.add({GaussianRational(2), GaussianRational(4), GaussianRational(0)}));
    CHECK(span.add({GaussianRational(0), GaussianRational(0), GaussianRational(5)}));
    CHECK(span.rank() == 2);
    CHECK(span.contains({GaussianRational(3), GaussianRational(6), GaussianRational(-1)}));
    CHECK_FALSE(span.contains({GaussianRational(1), GaussianRational(0), GaussianRational(0)}));

    Matrix basis = span.column_basis();
    CHECK(basis.rows() == 3);
    CHECK(basis.cols() == 2);
}

TEST_CASE("RowSpan basis is insertion-order deterministic", "[linalg]") {
    auto build = [] {
        RowSpan s(3);
        s.add({GaussianRational(2), GaussianRational(0), GaussianRational(2)});
        s.add({GaussianRational(1), GaussianRational(1), GaussianRational(0)});
        return s.column_basis();
    };
    CHECK(build() == build());
}

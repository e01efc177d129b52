#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "freeqg/dixon_solver.hpp"
#include "freeqg/error.hpp"
#include "freeqg/exact_matrix.hpp"
#include "freeqg/pairings.hpp"

#include <random>

using namespace freeqg;

namespace {

Matrix<mpz_class> from_rows(const std::vector<std::vector<long>>& rows) {
    Matrix<mpz_class> m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

Matrix<mpz_class> random_matrix(std::size_t n, long range, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dist(-range, range);
    Matrix<mpz_class> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
    return m;
}

} // namespace

TEST_CASE("2x2 inverse by hand") {
    auto inv = bareiss_inverse(from_rows({{9, 3}, {3, 9}}));
    CHECK(inv.determinant == 72);
    CHECK(inv.entry(0, 0) == mpq_class(1, 8));
    CHECK(inv.entry(0, 1) == mpq_class(-1, 24));
    CHECK(inv.entry(1, 1) == mpq_class(1, 8));
}

TEST_CASE("inverse needing a row swap") {
    auto a = from_rows({{0, 1, 2}, {1, 0, 3}, {4, -3, 8}});
    auto inv = bareiss_inverse(a);
    CHECK(inv.determinant == bareiss_determinant(a));
    CHECK(inv.determinant == -2);
    Matrix<mpq_class> w(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) w(i, j) = inv.entry(i, j);
    CHECK(multiply(to_rational(a), w) == Matrix<mpq_class>::identity(3));
}

TEST_CASE("random integer matrices invert exactly") {
    std::mt19937_64 rng(12345);
    for (std::size_t n = 1; n <= 9; ++n) {
        auto a = random_matrix(n, 20, rng);
        if (bareiss_determinant(a) == 0) continue;
        auto inv = bareiss_inverse(a);
        Matrix<mpq_class> w(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) w(i, j) = inv.entry(i, j);
        CHECK(multiply(w, to_rational(a)) == Matrix<mpq_class>::identity(n));
    }
}

TEST_CASE("singular matrices are reported") {
    CHECK_THROWS_AS(bareiss_inverse(from_rows({{1, 2}, {2, 4}})), SingularMatrix);
    CHECK(bareiss_determinant(from_rows({{1, 2}, {2, 4}})) == 0);
    CHECK_THROWS_AS(ldlt_pivots(to_rational(from_rows({{0, 1}, {1, 0}}))), SingularMatrix);
}

TEST_CASE("LDL^T pivots multiply to the determinant") {
    auto g = gram_matrix(8, 3).entries;
    mpq_class prod = 1;
    for (const auto& p : ldlt_pivots(to_rational(g))) prod *= p;
    CHECK(prod == mpq_class(bareiss_determinant(g)));
}

TEST_CASE("Dixon solver agrees with the Bareiss inverse") {
    std::mt19937_64 rng(777);
    for (std::size_t n : {1u, 2u, 5u, 12u, 30u}) {
        auto a = random_matrix(n, 1000, rng);
        if (bareiss_determinant(a) == 0) continue;
        auto inv = bareiss_inverse(a);
        DixonSolver solver(a);
        std::vector<mpz_class> b(n);
        for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<long>(i * 7 % 5) - 2;
        auto x = solver.solve(b);
        for (std::size_t i = 0; i < n; ++i) {
            mpq_class expected = 0;
            for (std::size_t j = 0; j < n; ++j) expected += inv.entry(i, j) * b[j];
            CHECK(x[i] == expected);
        }
    }
}

TEST_CASE("Dixon solver on a Gram matrix") {
    auto g = gram_matrix(10, 4).entries;
    auto inv = bareiss_inverse(g);
    DixonSolver solver(g);
    std::vector<mpz_class> e(g.rows(), 0);
    e[3] = 1;
    auto x = solver.solve(e);
    for (std::size_t i = 0; i < g.rows(); ++i) CHECK(x[i] == inv.entry(i, 3));
}

TEST_CASE("Dixon solver rejects singular and oversized input") {
    CHECK_THROWS_AS(DixonSolver(from_rows({{1, 2}, {2, 4}})), SingularMatrix);
    Matrix<mpz_class> big(1, 1);
    big(0, 0) = mpz_class(1) << 40;
    CHECK_THROWS_AS(DixonSolver{big}, InvalidArgument);
}

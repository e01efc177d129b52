#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "freeqg/error.hpp"
#include "freeqg/ncpoly.hpp"
#include "freeqg/pairings.hpp"
#include "freeqg/poly_parse.hpp"

using namespace freeqg;

namespace {

NCPolynomial x(std::uint32_t i, std::uint32_t j) { return NCPolynomial::letter(Model::orthogonal, i, j); }

mpq_class frac(long a, long b) {
    mpq_class q(a, b);
    q.canonicalize();
    return q;
}

double root_of(const mpq_class& q, int p) { return std::pow(q.get_d(), 1.0 / p); }

const std::vector<std::string> suite = {
    "x[1,1]", "x[1,1] + x[1,2]", "x[1,1]*x[2,2]", "x[1,2]*x[2,1] - 1/2*x[1,1]*x[1,1]", "2*x[1,1] + i*x[2,1]",
};

} // namespace

TEST_CASE("products") {
    auto one = NCPolynomial::unit(Model::orthogonal);
    auto P = x(1, 1) + x(1, 2);
    CHECK(poly_mul(one, P) == P);
    CHECK(poly_mul(P, one) == P);
    auto m = poly_mul(x(1, 1), x(1, 2));
    REQUIRE(m.terms().size() == 1);
    CHECK(m.terms().begin()->first.word == Word{{1, 1}, {1, 2}});
    auto sq = poly_mul(P, P);
    CHECK(sq.terms().size() == 4);
    for (const auto& [mono, c] : sq.terms()) CHECK(c == GaussRational(1));
    CHECK(sq.degree() == 2);
    CHECK(NCPolynomial(Model::orthogonal).degree() == 0);
    CHECK_THROWS_AS(poly_mul(x(1, 1), NCPolynomial::letter(Model::unitary, 1, 1)), InvalidArgument);
}

TEST_CASE("adjoints") {
    CHECK(poly_adjoint(x(1, 1)) == x(1, 1));
    auto P = GaussRational(0, 1) * poly_mul(x(1, 1), x(2, 2));
    auto expected = GaussRational(0, -1) * poly_mul(x(2, 2), x(1, 1));
    CHECK(poly_adjoint(P) == expected);
    auto v = NCPolynomial::letter(Model::unitary, 1, 1);
    CHECK(poly_adjoint(v) == NCPolynomial::letter(Model::unitary, 1, 1, Color::star));
    for (const auto& text : suite) {
        auto Q = parse_polynomial(text);
        CHECK(poly_adjoint(poly_adjoint(Q)) == Q);
    }
    auto U = parse_polynomial("v[1,2]*v*[2,1] + 1/3i*v[1,1]");
    CHECK(poly_adjoint(poly_adjoint(U)) == U);
}

TEST_CASE("zero coefficients are not stored") {
    auto P = x(1, 1) - x(1, 1);
    CHECK(P.is_zero());
    CHECK(parse_polynomial("x[1,1] - x[1,1] + 0").is_zero());
}

TEST_CASE("scaled generators") {
    auto s = scaled_generators(x(1, 1), 5);
    REQUIRE(s.terms().size() == 1);
    CHECK(s.terms().begin()->first.sqrt_n_power == 1);
    CHECK(scaled_generators(x(4, 1), 3).is_zero());
    auto sq = scaled_generators(poly_mul(x(1, 1), x(1, 1)), 7);
    CHECK(sq.terms().begin()->first.sqrt_n_power == 2);
    CHECK(state_eval(scaled_generators(x(1, 1), 4), 4) == GaussRational(0));
}

TEST_CASE("state evaluations") {
    CHECK(state_eval(NCPolynomial::unit(Model::orthogonal), 3) == GaussRational(1));
    CHECK(state_eval(NCPolynomial::unit(Model::semicircular), std::nullopt) == GaussRational(1));
    for (int N = 2; N <= 8; ++N) {
        auto s = scaled_generators(x(1, 1), N);
        CHECK(state_eval(poly_pow(s, 2), N) == GaussRational(1));
        CHECK(state_eval(poly_pow(s, 4), N) == GaussRational(frac(2 * N, N + 1)));
    }
    CHECK_THROWS_AS(state_eval(x(4, 4), 3), InvalidArgument);
}

TEST_CASE("odd powers of sqrt N are rejected") {
    NCPolynomial P(Model::orthogonal);
    P.add_term(Monomial{{{1, 1}, {1, 1}}, 1}, 1);
    CHECK_THROWS_AS(state_eval(P, 4), Error);
}

TEST_CASE("L^p norms") {
    for (int N = 2; N <= 6; ++N) {
        auto s = scaled_generators(x(1, 1), N);
        CHECK(std::fabs(lp_norm(s, 2, N).to_double() - 1) < 1e-15);
        CHECK(std::fabs(lp_norm(s, 4, N).to_double() - std::pow(2.0 * N / (N + 1), 0.25)) < 1e-14);
    }
    auto semi = x(1, 1).with_model(Model::semicircular);
    for (int m = 1; m <= 6; ++m)
        CHECK(std::fabs(lp_norm(semi, 2 * m, std::nullopt).to_double() - root_of(catalan(m), 2 * m)) < 1e-14);
    CHECK(std::fabs(lp_norm(semi, 6, std::nullopt).to_double() - std::pow(5.0, 1.0 / 6)) < 1e-14);
    CHECK_THROWS_AS(lp_norm(semi, 3, std::nullopt), InvalidArgument);
    CHECK_THROWS_AS(lp_norm(semi, 0, std::nullopt), InvalidArgument);
}

TEST_CASE("L^p word-length limits") {
    auto s = scaled_generators(x(1, 1), 3);
    Limits tight{8, 8};
    CHECK_NOTHROW(lp_norm(s, 8, 3, 128, tight));
    try {
        lp_norm(s, 10, 3, 128, tight);
        FAIL("expected a resource error");
    } catch (const ResourceError& e) {
        CHECK(e.k() == 10);
        CHECK(e.table_size() == 42);
    }
}

TEST_CASE("positivity, Holder monotonicity and traciality on the suite") {
    for (const auto& text : suite) {
        auto P = parse_polynomial(text);
        for (int N : {3, 4}) {
            auto s = scaled_generators(P, N);
            const int max_m = P.degree() == 1 ? 6 : 3;
            BigReal previous(0L, 128);
            for (int m = 1; m <= max_m; ++m) {
                CHECK(lp_moment(s, m, N) >= 0);
                BigReal norm = lp_norm(s, 2 * m, N);
                CHECK(norm >= previous);
                previous = norm;
            }
        }
        auto limit = P.with_model(Model::semicircular);
        BigReal previous(0L, 128);
        for (int m = 1; m <= 6; ++m) {
            BigReal norm = lp_norm(limit, 2 * m, std::nullopt);
            CHECK(norm >= previous);
            previous = norm;
        }
    }
}

TEST_CASE("trace property h(ab) = h(ba)") {
    const std::vector<std::string> parts = {"x[1,1]*x[1,2]", "x[1,2] + x[2,2]*x[2,2]*x[1,1]", "x[2,1]*x[1,1]*x[1,2]",
                                            "1/2*x[1,1] - x[2,2]"};
    for (const auto& a_text : parts)
        for (const auto& b_text : parts) {
            auto a = parse_polynomial(a_text), b = parse_polynomial(b_text);
            for (int N : {2, 3, 5}) CHECK(state_eval(poly_mul(a, b), N) == state_eval(poly_mul(b, a), N));
        }
    auto a = parse_polynomial("v[1,1]*v*[1,2]");
    auto b = parse_polynomial("v[2,2]*v*[2,1] + v[1,1]*v*[1,1]");
    CHECK(state_eval(poly_mul(a, b), 3) == state_eval(poly_mul(b, a), 3));
}

TEST_CASE("finite L^p norms approach the free limit") {
    for (const auto& text : suite) {
        auto P = parse_polynomial(text);
        const int p = P.degree() == 1 ? 6 : 4;
        const BigReal limit = lp_norm(P.with_model(Model::semicircular), p, std::nullopt);
        BigReal previous(1000L, 128);
        for (int N : {4, 8, 16}) {
            BigReal gap = abs(lp_norm(scaled_generators(P, N), p, N) - limit);
            CHECK(gap < previous);
            previous = gap;
        }
    }
}

TEST_CASE("polynomial text") {
    auto P = parse_polynomial("x[1,1]*x[1,2] - 1/2*x[2,2]");
    CHECK(P.model() == Model::orthogonal);
    CHECK(P.terms().size() == 2);
    CHECK(P.degree() == 2);
    CHECK(parse_polynomial(P.to_string()) == P);
    CHECK(parse_polynomial("x[1,1]^3") == poly_pow(x(1, 1), 3));
    auto U = parse_polynomial("v*[1,2]*v[2,1] + 3/4i");
    CHECK(U.model() == Model::unitary);
    CHECK(parse_polynomial(U.to_string()) == U);
    CHECK(parse_polynomial("-i*x[1,1]") == GaussRational(0, -1) * x(1, 1));
    CHECK(parse_polynomial("7", Model::unitary).model() == Model::unitary);
    CHECK_THROWS_AS(parse_polynomial("x[1,1]*v[1,1]"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x[1,]"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x[1,1] +"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("y[1,1]"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("1/0*x[1,1]"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x*[1,1]"), ParseError);
}

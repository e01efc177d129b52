#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "freeqg/error.hpp"
#include "freeqg/weingarten.hpp"
#include "oracles.hpp"

#include <random>
#include <thread>

using namespace freeqg;

namespace {

Letter u(std::uint32_t i, std::uint32_t j) { return {i, j, Color::plain}; }
Letter v(std::uint32_t i, std::uint32_t j) { return {i, j, Color::plain}; }
Letter vs(std::uint32_t i, std::uint32_t j) { return {i, j, Color::star}; }

mpq_class frac(long a, long b) {
    mpq_class q(a, b);
    q.canonicalize();
    return q;
}

mpq_class h(const Word& w, int N, Model m = Model::orthogonal) { return haar_moment({w, m}, N); }

Word random_word(std::mt19937_64& rng, int len, int alphabet, bool colored) {
    std::uniform_int_distribution<std::uint32_t> idx(1, static_cast<std::uint32_t>(alphabet));
    std::bernoulli_distribution coin(0.5);
    Word w;
    for (int i = 0; i < len; ++i) w.push_back({idx(rng), idx(rng), colored && coin(rng) ? Color::star : Color::plain});
    return w;
}

} // namespace

TEST_CASE("second and fourth moments of u11") {
    for (int N = 2; N <= 10; ++N) {
        CHECK(h({u(1, 1), u(1, 1)}, N) == mpq_class(1, N));
        CHECK(h({u(1, 1), u(1, 1), u(1, 1), u(1, 1)}, N) == frac(2, N * (N + 1)));
        CHECK(h({v(1, 1), vs(1, 1)}, N, Model::unitary) == mpq_class(1, N));
    }
}

TEST_CASE("k = 4 Weingarten matrix") {
    for (int N = 2; N <= 8; ++N) {
        auto t = weingarten_table(4, N);
        mpq_class d(N * (N * N - 1));
        CHECK(t->wg(0, 0) == frac(N, 1) / d);
        CHECK(t->wg(0, 1) == frac(-1, 1) / d);
        CHECK(t->wg(1, 1) == frac(N, 1) / d);
    }
}

TEST_CASE("vanishing moments") {
    CHECK(h({u(1, 1)}, 3) == 0);
    CHECK(h({u(1, 1), u(1, 1), u(1, 1)}, 4) == 0);
    CHECK(h({u(1, 1), u(1, 2)}, 3) == 0);
    CHECK(h({v(1, 1), v(1, 1)}, 3, Model::unitary) == 0);
    CHECK(h({v(1, 1), v(1, 1), vs(1, 1), v(1, 1)}, 3, Model::unitary) == 0);
    CHECK(h({}, 5) == 1);
}

TEST_CASE("moments agree with the brute-force oracle") {
    std::mt19937_64 rng(2024);
    for (int N = 2; N <= 5; ++N)
        for (int len = 2; len <= 8; len += 2)
            for (int trial = 0; trial < 12; ++trial) {
                auto wo = random_word(rng, len, 2, false);
                CHECK(h(wo, N) == oracle::brute_haar_moment(wo, N, false));
                auto wu = random_word(rng, len, 2, true);
                CHECK(h(wu, N, Model::unitary) == oracle::brute_haar_moment(wu, N, true));
            }
}

TEST_CASE("wg * gram = identity") {
    for (int N = 2; N <= 6; ++N)
        for (int k = 0; k <= 10; k += 2) {
            auto t = weingarten_table(k, N);
            REQUIRE(multiply(t->wg_matrix(), to_rational(t->gram())) == Matrix<mpq_class>::identity(t->size()));
        }
    for (const char* pattern : {"1*", "1*1*", "11**", "1**1*1", "1*1*1*1*"}) {
        auto p = parse_color_pattern(pattern);
        auto t = weingarten_table(static_cast<int>(p.size()), 3, p);
        CHECK(multiply(t->wg_matrix(), to_rational(t->gram())) == Matrix<mpq_class>::identity(t->size()));
    }
}

TEST_CASE("Weingarten matrix is symmetric") {
    auto t = weingarten_table(8, 4);
    CHECK(t->wg_matrix().is_symmetric());
}

TEST_CASE("unitarity contraction") {
    for (int N = 2; N <= 5; ++N)
        for (int len = 2; len <= 6; ++len) {
            const std::size_t count = std::size_t{1} << (2 * len);
            for (std::size_t code = 0; code < count; code += 3) {
                Word w;
                for (int i = 0; i < len; ++i)
                    w.push_back(u(static_cast<std::uint32_t>(1 + ((code >> (2 * i)) & 1)),
                                  static_cast<std::uint32_t>(1 + ((code >> (2 * i + 1)) & 1))));
                GeneratorWord g{w, Model::orthogonal};
                for (std::size_t pos = 0; pos + 1 < w.size(); ++pos)
                    REQUIRE(unitarity_contraction(g, N, pos) == contracted_reference(g, N, pos));
            }
        }
}

TEST_CASE("unitarity contraction in the unitary model") {
    for (int N = 2; N <= 4; ++N) {
        GeneratorWord g{{v(1, 1), vs(1, 2), v(2, 2), vs(2, 1)}, Model::unitary};
        for (std::size_t pos = 0; pos < 3; ++pos)
            CHECK(unitarity_contraction(g, N, pos) == contracted_reference(g, N, pos));
        // Mismatched rows sum to zero.
        GeneratorWord off{{v(1, 1), vs(2, 1)}, Model::unitary};
        CHECK(unitarity_contraction(off, N, 0) == 0);
        GeneratorWord diag{{v(1, 1), vs(1, 1)}, Model::unitary};
        CHECK(unitarity_contraction(diag, N, 0) == 1);
    }
    GeneratorWord same{{v(1, 1), v(1, 1)}, Model::unitary};
    CHECK_THROWS_AS(unitarity_contraction(same, 3, 0), InvalidArgument);
    GeneratorWord shortw{{u(1, 1)}, Model::orthogonal};
    CHECK_THROWS_AS(unitarity_contraction(shortw, 3, 0), InvalidArgument);
}

TEST_CASE("row contraction sum_j u_ja u_jb") {
    // The transposed relation, checked directly by summation.
    for (int N = 2; N <= 5; ++N)
        for (std::uint32_t a = 1; a <= 2; ++a)
            for (std::uint32_t b = 1; b <= 2; ++b) {
                mpq_class sum = 0;
                for (std::uint32_t j = 1; j <= static_cast<std::uint32_t>(N); ++j)
                    sum += h({u(1, 2), u(j, a), u(j, b), u(1, 2)}, N);
                CHECK(sum == (a == b ? h({u(1, 2), u(1, 2)}, N) : mpq_class(0)));
            }
}

TEST_CASE("Haar state is tracial") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        auto w = random_word(rng, 6, 2, false);
        Word rotated(w.begin() + 1, w.end());
        rotated.push_back(w.front());
        CHECK(h(w, 3) == h(rotated, 3));
        auto c = random_word(rng, 6, 2, true);
        Word crot(c.begin() + 2, c.end());
        crot.insert(crot.end(), c.begin(), c.begin() + 2);
        CHECK(h(c, 4, Model::unitary) == h(crot, 4, Model::unitary));
    }
}

TEST_CASE("invalid input") {
    CHECK_THROWS_AS(h({u(4, 1), u(4, 1)}, 3), InvalidArgument);
    CHECK_THROWS_AS(h({u(0, 1), u(0, 1)}, 3), InvalidArgument);
    CHECK_THROWS_AS(h({u(1, 1), u(1, 1)}, 1), InvalidArgument);
    CHECK_THROWS_AS(h({vs(1, 1), v(1, 1)}, 3, Model::orthogonal), InvalidArgument);
    CHECK_THROWS_AS(weingarten_table(3, 3), InvalidArgument);
}

TEST_CASE("resource errors carry k, N and table size") {
    Limits tight{6, 6};
    Word w(8, u(1, 1));
    try {
        haar_moment({w, Model::orthogonal}, 3, tight);
        FAIL("expected a resource error");
    } catch (const ResourceError& e) {
        CHECK(e.k() == 8);
        CHECK(e.dimension() == 3);
        CHECK(e.table_size() == 14);
    }
    CHECK_THROWS_AS(weingarten_table(14, 3), ResourceError);
}

TEST_CASE("solver route matches full tables") {
    Limits solve{4, 10};
    std::mt19937_64 rng(5);
    TableCache cache;
    for (int N : {2, 3, 7})
        for (int len : {6, 8, 10}) {
            auto wo = random_word(rng, len, 2, false);
            CHECK(haar_moment({wo, Model::orthogonal}, N, solve, &cache) == haar_moment({wo, Model::orthogonal}, N));
            auto wu = random_word(rng, len, 2, true);
            CHECK(haar_moment({wu, Model::unitary}, N, solve, &cache) == haar_moment({wu, Model::unitary}, N));
        }
    Word w(8, u(1, 1));
    MomentEvaluator eval(Model::orthogonal, 5, solve, &cache);
    CHECK(eval(w) == h(w, 5));
}

TEST_CASE("MomentEvaluator agrees with haar_moment") {
    std::mt19937_64 rng(11);
    MomentEvaluator eo(Model::orthogonal, 4);
    MomentEvaluator eu(Model::unitary, 4);
    for (int trial = 0; trial < 60; ++trial) {
        auto w = random_word(rng, 2 * (trial % 4), 3, false);
        CHECK(eo(w) == h(w, 4));
        auto c = random_word(rng, 2 * (trial % 4), 3, true);
        CHECK(eu(c) == h(c, 4, Model::unitary));
    }
}

TEST_CASE("concurrent cache requests share one table") {
    TableCache cache;
    std::vector<std::shared_ptr<const WeingartenTable>> got(4);
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < got.size(); ++i)
        threads.emplace_back([&, i] { got[i] = cache.get(8, 5, std::nullopt); });
    for (auto& t : threads) t.join();
    for (const auto& t : got) CHECK(t.get() == got[0].get());
    CHECK(cache.size() == 1);
}

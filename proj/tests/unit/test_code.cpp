#include <doctest.h>

#include <cstdlib>
#include <map>
#include <random>

#include "pwe/code.hpp"

using namespace pwe;

namespace {

BitWord random_info(std::size_t k, std::mt19937_64& rng)
{
    BitWord w(k);
    for (std::size_t i = 0; i < k; ++i)
        if (rng() & 1) w.set(i);
    return w;
}

// Weight distribution by encoding every message through the raw generator.
std::vector<std::uint64_t> brute_force_distribution(const CodeSpec& code)
{
    std::vector<std::uint64_t> counts(code.n() + 1, 0);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << code.k()); ++m) {
        BitWord c(code.n());
        for (std::size_t i = 0; i < code.k(); ++i)
            if ((m >> i) & 1) c ^= code.generator().row(i);
        ++counts[c.weight()];
    }
    return counts;
}

// MacWilliams transform with exact integer Krawtchouk sums.
std::vector<__int128> macwilliams(const std::vector<std::uint64_t>& dual, std::size_t n, std::size_t dual_k)
{
    std::vector<std::vector<__int128>> binom(n + 1, std::vector<__int128>(n + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) {
        binom[i][0] = 1;
        for (std::size_t j = 1; j <= i; ++j) binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
    }
    std::vector<__int128> out(n + 1, 0);
    for (std::size_t w = 0; w <= n; ++w) {
        __int128 s = 0;
        for (std::size_t i = 0; i <= n; ++i) {
            if (dual[i] == 0) continue;
            __int128 k = 0;
            for (std::size_t j = 0; j <= w; ++j) {
                if (j > i || w - j > n - i) continue;
                const __int128 term = binom[i][j] * binom[n - i][w - j];
                k += (j % 2 ? -term : term);
            }
            s += k * static_cast<__int128>(dual[i]);
        }
        out[w] = s >> dual_k;
    }
    return out;
}

}  // namespace

TEST_CASE("cyclic Hamming(7,4) distribution")
{
    const auto code = cyclic_code("h", GF2Poly::from_exponents({0, 1, 3}), 7);
    CHECK(code.k() == 4);
    const auto wd = exact_weight_distribution(code);
    CHECK(wd.counts == brute_force_distribution(code));
    CHECK(wd[0] == 1);
    CHECK(wd[3] == 7);
    CHECK(wd[4] == 7);
    CHECK(wd[7] == 1);
    CHECK(wd.total() == 16);
}

TEST_CASE("cyclic code construction errors and edge cases")
{
    CHECK(cyclic_code("all", GF2Poly::one(), 5).k() == 5);
    CHECK_THROWS_AS(cyclic_code("bad", GF2Poly::from_exponents({0, 1, 2}), 7).k(), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_code("bad", GF2Poly::from_exponents({0, 1, 3}), 8), std::invalid_argument);
    CHECK_THROWS(cyclic_code("bad", GF2Poly::x_pow_n_plus_one(7), 7));
}

TEST_CASE("listed generator polynomials divide x^n + 1")
{
    struct Case {
        std::vector<std::size_t> g;
        std::size_t n;
        std::size_t degree;
    };
    const Case cases[] = {{generators::bch_127_50(), 127, 77},
                          {generators::bch_255_191(), 255, 64},
                          {generators::bch_127_71(), 127, 56},
                          {generators::bch_63_39(), 63, 24}};
    for (const auto& c : cases) {
        const auto g = GF2Poly::from_exponents(c.g);
        CHECK(*g.degree() == c.degree);
        CHECK(poly_divmod(GF2Poly::x_pow_n_plus_one(c.n), g).remainder.is_zero());
    }
}

TEST_CASE("quadratic residue generators")
{
    CHECK(*qr_generator_polynomial(7).degree() == 3);
    CHECK(*qr_generator_polynomial(23).degree() == 11);
    CHECK(*qr_generator_polynomial(47).degree() == 23);
    CHECK(*qr_generator_polynomial(71).degree() == 35);
    CHECK(*qr_generator_polynomial(73).degree() == 36);
    const auto g7 = qr_generator_polynomial(7);
    CHECK((g7 == GF2Poly::from_exponents({0, 1, 3}) || g7 == GF2Poly::from_exponents({0, 2, 3})));
    CHECK_THROWS(qr_generator_polynomial(11));  // 11 is not +-1 mod 8
    CHECK_THROWS(qr_generator_polynomial(15));
}

TEST_CASE("extension by an overall parity bit")
{
    const auto h = cyclic_code("h", GF2Poly::from_exponents({0, 1, 3}), 7);
    const auto e = extend_with_parity("e", h);
    CHECK(e.n() == 8);
    CHECK(e.k() == 4);
    const auto wd = exact_weight_distribution(e);
    CHECK(wd[4] == 14);
    CHECK(wd[8] == 1);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) CHECK(e.encode(random_info(4, rng)).weight() % 2 == 0);

    const auto even = cyclic_code("even", GF2Poly::from_exponents({0, 1}), 6);
    const auto ee = extend_with_parity("ee", even);
    for (std::size_t r = 0; r < ee.k(); ++r) CHECK(!ee.generator().row(r).test(6));
}

TEST_CASE("encoding, information extraction and membership")
{
    std::mt19937_64 rng(2);
    for (const auto& name : {"hamming-7-4", "golay-24-12", "bch-127-50", "bch-130-66"}) {
        const auto code = catalog_code(name);
        CHECK(code->encode(BitWord(code->k())).none());
        for (std::size_t i = 0; i < code->k(); ++i)
            CHECK(code->encode(BitWord::from_positions(code->k(), {i})) == code->systematic().row(i));
        for (int t = 0; t < 50; ++t) {
            const auto a = random_info(code->k(), rng), b = random_info(code->k(), rng);
            CHECK(code->encode(a ^ b) == (code->encode(a) ^ code->encode(b)));
            CHECK(code->extract_info(code->encode(a)) == a);
            CHECK(code->contains(code->encode(a)));
        }
        CHECK(code->contains(BitWord(code->n())));
        for (std::size_t r = 0; r < code->k(); ++r) CHECK(code->contains(code->generator().row(r)));
        CHECK_FALSE(code->contains(BitWord::from_positions(code->n(), {0})));
        CHECK_THROWS_AS(code->encode(BitWord(code->k() + 1)), std::invalid_argument);
        CHECK_THROWS_AS(code->contains(BitWord(code->n() + 1)), std::invalid_argument);
    }
}

TEST_CASE("shortening")
{
    const auto parent = std::make_shared<const CodeSpec>(cyclic_code("h", GF2Poly::from_exponents({0, 1, 3}), 7));
    const auto s = shorten("h-6-3", parent, 1);
    CHECK(s.n() == 6);
    CHECK(s.k() == 3);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto c = s.encode(random_info(3, rng));
        const auto lifted = s.lift_to_parent(c);
        CHECK(parent->contains(lifted));
        CHECK(s.project_from_parent(lifted) == c);
    }
    CHECK_FALSE(s.project_from_parent(BitWord::from_positions(7, {6})).has_value());
    CHECK_THROWS(shorten("x", parent, 4));

    CHECK(catalog_code("bch-130-66")->k() == 66);
    CHECK(catalog_code("bch-103-47")->k() == 47);
    CHECK(catalog_code("bch-111-55")->k() == 55);
    CHECK(catalog_code("bch-130-66")->parent()->removed.size() == 125);
}

TEST_CASE("lifted shortened codewords are parent codewords")
{
    std::mt19937_64 rng(4);
    for (const auto& name : {"bch-130-66", "bch-103-47", "bch-111-55"}) {
        const auto code = catalog_code(name);
        const auto& parent = code->parent()->parent;
        for (int i = 0; i < 1000; ++i) {
            const auto c = code->encode(random_info(code->k(), rng));
            CHECK(parent->contains(code->lift_to_parent(c)));
        }
    }
}

TEST_CASE("exact distributions of catalog codes")
{
    const auto golay = exact_weight_distribution(*catalog_code("golay-24-12"));
    const std::map<std::size_t, std::uint64_t> expected{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}};
    for (std::size_t w = 0; w <= 24; ++w) CHECK(golay[w] == (expected.contains(w) ? expected.at(w) : 0));
    CHECK(golay.counts == brute_force_distribution(*catalog_code("golay-24-12")));

    const auto qr47 = exact_weight_distribution(*catalog_code("qr-47-24"), 15);
    CHECK(qr47[11] == 4324);
    CHECK(qr47[12] == 12972);
    CHECK(qr47[15] == 178365);
    CHECK_FALSE(qr47.complete);
    CHECK(qr47[16] == 0);

    CHECK(exact_weight_distribution(*catalog_code("qr-23-12")).counts ==
          brute_force_distribution(*catalog_code("qr-23-12")));
}

TEST_CASE("catalog codes have no nonzero words below their distance")
{
    for (const auto& name : catalog_names()) {
        const auto code = catalog_code(name);
        if (code->k() > 24) continue;
        const auto wd = exact_weight_distribution(*code);
        CHECK(wd.total() == (std::uint64_t{1} << code->k()));
        REQUIRE(code->d_known());
        for (std::size_t w = 1; w < *code->d_known(); ++w) CHECK(wd[w] == 0);
        CHECK(wd[*code->d_known()] > 0);
    }
}

TEST_CASE("BCH(63,39) minimum distance through the dual code")
{
    const auto code = catalog_code("bch-63-39");
    const CodeSpec dual("bch-63-39-dual", code->parity_check());
    REQUIRE(dual.k() == 24);
    const auto dual_wd = exact_weight_distribution(dual);
    const auto a = macwilliams(dual_wd.counts, 63, 24);
    CHECK(a[0] == 1);
    for (std::size_t w = 1; w < 9; ++w) CHECK(a[w] == 0);
    CHECK(a[9] > 0);
    __int128 total = 0;
    for (auto v : a) total += v;
    CHECK(total == (static_cast<__int128>(1) << 39));
}

TEST_CASE("exhaustive limit and its override")
{
    CHECK_THROWS_AS(exact_weight_distribution(*catalog_code("bch-127-50")), std::invalid_argument);
    ::setenv("PWE_EXHAUSTIVE_K_LIMIT", "3", 1);
    CHECK(exhaustive_k_limit() == 3);
    CHECK_THROWS_AS(exact_weight_distribution(*catalog_code("hamming-7-4")), std::invalid_argument);
    ::unsetenv("PWE_EXHAUSTIVE_K_LIMIT");
    CHECK(exhaustive_k_limit() == 26);
}

TEST_CASE("weight class enumeration")
{
    const auto golay = catalog_code("golay-24-12");
    const auto w8 = enumerate_weight_class(*golay, 8);
    CHECK(w8.size() == 759);
    for (const auto& c : w8) CHECK((c.weight() == 8 && golay->contains(c)));
    CHECK(enumerate_weight_class(*golay, 9).empty());
}

TEST_CASE("catalog lookup")
{
    CHECK(catalog_code("golay-24-12") == catalog_code("golay-24-12"));
    CHECK_THROWS_AS(catalog_code("nonsense"), std::out_of_range);
    CHECK(catalog_code("bch-127-50")->n() == 127);
    CHECK(catalog_code("bch-127-50")->k() == 50);
    CHECK(catalog_code("golay-24-12")->d_known() == 8);
    CHECK(catalog_code("bch-130-66")->n() == 130);
}

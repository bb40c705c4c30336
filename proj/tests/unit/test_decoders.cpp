#include <doctest.h>

#include <cmath>

#include "pwe/channel.hpp"
#include "pwe/code.hpp"
#include "pwe/decoders.hpp"

using namespace pwe;

namespace {

BitWord random_codeword(const CodeSpec& code, Rng& rng)
{
    BitWord info(code.k());
    for (std::size_t i = 0; i < code.k(); ++i)
        if (rng.next() & 1) info.set(i);
    return code.encode(info);
}

// Smallest squared distance over every codeword, from the raw generator.
double brute_force_best(const CodeSpec& code, const SoftVector& r)
{
    double best = INFINITY;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << code.k()); ++m) {
        BitWord c(code.n());
        for (std::size_t i = 0; i < code.k(); ++i)
            if ((m >> i) & 1) c ^= code.generator().row(i);
        double d = 0.0;
        for (std::size_t j = 0; j < code.n(); ++j) {
            const double s = c.test(j) ? -1.0 : 1.0;
            d += (r[j] - s) * (r[j] - s);
        }
        best = std::min(best, d);
    }
    return best;
}

}  // namespace

TEST_CASE("decoder kind parsing")
{
    CHECK(DecoderKind::parse("mld") == DecoderKind::mld());
    CHECK(DecoderKind::parse("osd:3") == DecoderKind::osd(3));
    CHECK(DecoderKind::osd(2).to_string() == "osd:2");
    CHECK_THROWS_AS(DecoderKind::parse("osd"), std::invalid_argument);
    CHECK_THROWS_AS(DecoderKind::parse("osd:-1"), std::invalid_argument);
    CHECK_THROWS_AS(DecoderKind::parse("viterbi"), std::invalid_argument);
}

TEST_CASE("BPSK maps 0 to +1")
{
    const auto s = bpsk_modulate(BitWord::from_positions(3, {1}));
    CHECK(s == SoftVector{1.0, -1.0, 1.0});
    CHECK(squared_distance(BitWord::from_positions(3, {1}), s) == 0.0);
}

TEST_CASE("noiseless input decodes to the sent codeword")
{
    Rng rng(1);
    for (const auto& name : {"hamming-7-4", "golay-24-12", "bch-127-50"}) {
        const auto code = catalog_code(name);
        for (int i = 0; i < 10; ++i) {
            const auto c = random_codeword(*code, rng);
            const auto r = bpsk_modulate(c);
            if (code->k() <= 24) CHECK(mld_decode(*code, r) == c);
            for (std::size_t l = 0; l <= 2; ++l) CHECK(osd_decode(*code, r, l) == c);
        }
    }
}

TEST_CASE("MLD corrects small-magnitude flips on Golay")
{
    const auto golay = catalog_code("golay-24-12");
    Rng rng(2);
    const auto c = random_codeword(*golay, rng);
    auto r = bpsk_modulate(c);
    for (std::size_t j : {2, 9, 17}) r[j] = -r[j];
    CHECK(mld_decode(*golay, r) == c);
}

TEST_CASE("MLD is optimal against brute force")
{
    Rng rng(3);
    for (const auto& name : {"hamming-7-4", "golay-24-12"}) {
        const auto code = catalog_code(name);
        for (int i = 0; i < 200; ++i) {
            const auto r = transmit_awgn(random_codeword(*code, rng), 0.9, rng);
            const auto d = mld_decode(*code, r);
            CHECK(code->contains(d));
            CHECK(squared_distance(d, r) == doctest::Approx(brute_force_best(*code, r)).epsilon(1e-12));
        }
    }
}

TEST_CASE("OSD(k) equals MLD on Hamming and Golay")
{
    Rng rng(4);
    for (const auto& [name, trials] : {std::pair{"hamming-7-4", 1000}, std::pair{"golay-24-12", 100}}) {
        const auto code = catalog_code(name);
        for (int i = 0; i < trials; ++i) {
            const auto r = transmit_awgn(random_codeword(*code, rng), 1.0, rng);
            CHECK(squared_distance(osd_decode(*code, r, code->k()), r) ==
                  doctest::Approx(squared_distance(mld_decode(*code, r), r)).epsilon(1e-12));
        }
    }
}

TEST_CASE("OSD improves with order and never beats MLD")
{
    Rng rng(5);
    const auto golay = catalog_code("golay-24-12");
    for (int i = 0; i < 100; ++i) {
        const auto r = transmit_awgn(random_codeword(*golay, rng), 1.1, rng);
        double prev = INFINITY;
        for (std::size_t l = 0; l <= 4; ++l) {
            const auto d = osd_decode(*golay, r, l);
            CHECK(golay->contains(d));
            const double dist = squared_distance(d, r);
            CHECK(dist <= prev + 1e-12);
            prev = dist;
        }
        CHECK(squared_distance(mld_decode(*golay, r), r) <= prev + 1e-12);
    }
}

TEST_CASE("decoder argument errors")
{
    const auto h = catalog_code("hamming-7-4");
    CHECK_THROWS_AS(osd_decode(*h, SoftVector(7, 1.0), 5), std::invalid_argument);
    CHECK_THROWS_AS(mld_decode(*h, SoftVector(6, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(mld_decode(*catalog_code("bch-127-50"), SoftVector(127, 1.0)), std::invalid_argument);
    DecoderKind bogus{static_cast<DecoderKind::Variant>(7), 0};
    CHECK_THROWS(decode(bogus, *h, SoftVector(7, 1.0)));
}

TEST_CASE("decoding is deterministic and returns length-n words")
{
    Rng rng(6);
    const auto code = catalog_code("bch-127-50");
    const auto r = transmit_awgn(random_codeword(*code, rng), 0.8, rng);
    const auto a = decode(DecoderKind::osd(2), *code, r);
    CHECK(a == decode(DecoderKind::osd(2), *code, r));
    CHECK(a.size() == 127);
    CHECK(code->contains(a));
}

#include <doctest.h>

#include <cmath>

#include "pwe/bounds.hpp"
#include "pwe/channel.hpp"
#include "pwe/code.hpp"
#include "pwe/simulation.hpp"

using namespace pwe;

TEST_CASE("noise deviation from Eb/N0")
{
    CHECK(noise_sigma(0.0, 0.5) == doctest::Approx(1.0));
    CHECK(noise_sigma(0.0, 1.0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(noise_sigma(80.0, 0.5) < 1e-3);
    CHECK_THROWS_AS(noise_sigma(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(noise_sigma(0.0, 1.5), std::invalid_argument);
}

TEST_CASE("channel noise statistics")
{
    Rng rng(1);
    const double sigma = 0.7;
    const auto r = transmit_awgn(BitWord(1'000'000), sigma, rng);
    double mean = 0.0, sq = 0.0;
    for (double v : r) mean += v;
    mean /= static_cast<double>(r.size());
    for (double v : r) sq += (v - mean) * (v - mean);
    CHECK(mean == doctest::Approx(1.0).epsilon(0.005));
    CHECK(std::sqrt(sq / static_cast<double>(r.size() - 1)) == doctest::Approx(sigma).epsilon(0.01));
}

TEST_CASE("noiseless channel has no errors")
{
    SimConfig cfg;
    cfg.sigma_override = 0.0;
    cfg.min_blocks = 100;
    cfg.min_bit_errors = 1;
    cfg.max_blocks = 1000;
    const auto p = simulate_point(*catalog_code("golay-24-12"), DecoderKind::mld(), 0.0, cfg);
    CHECK(p.ber() == 0.0);
    CHECK(p.blocks == 1000);
    CHECK(p.capped);
}

TEST_CASE("stopping rule and counters")
{
    const auto h = catalog_code("hamming-7-4");
    SimConfig cfg;
    cfg.snr_grid_db = {0.0, 3.0, 6.0};
    cfg.seed = 2;
    for (const auto& p : simulate_points(*h, DecoderKind::mld(), cfg)) {
        CHECK((p.capped || (p.blocks >= 5000 && p.bit_errors >= 200)));
        CHECK(p.bit_errors <= p.blocks * 4);
        CHECK(p.ber() <= 1.0);
        CHECK(p.info_bits_per_block == 4);
    }
    SimConfig bad;
    bad.min_blocks = 10;
    bad.max_blocks = 5;
    CHECK_THROWS_AS(simulate_point(*h, DecoderKind::mld(), 1.0, bad), std::invalid_argument);
}

TEST_CASE("simulated curves are deterministic and thread independent")
{
    const auto h = catalog_code("qr-23-12");
    SimConfig cfg;
    cfg.snr_grid_db = {1.0, 2.0};
    cfg.min_blocks = 2000;
    cfg.min_bit_errors = 100;
    cfg.seed = 3;
    cfg.threads = 1;
    const auto a = simulate_points(*h, DecoderKind::mld(), cfg);
    cfg.threads = 3;
    cfg.batch_size = 123;
    const auto b = simulate_points(*h, DecoderKind::mld(), cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].blocks == b[i].blocks);
        CHECK(a[i].bit_errors == b[i].bit_errors);
    }
    SimConfig empty;
    CHECK(simulate_curve(*h, DecoderKind::mld(), empty).points.empty());
}

TEST_CASE("Golay MLD curve: monotone and below the bound")
{
    const auto golay = catalog_code("golay-24-12");
    const WeightMap we{{8, 759}, {12, 2576}, {16, 759}, {24, 1}};
    const RateContext rc(24, 12);
    SimConfig cfg;
    cfg.snr_grid_db = {1.0, 2.0, 3.0, 4.0};
    cfg.seed = 4;
    const auto pts = simulate_points(*golay, DecoderKind::mld(), cfg);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].ebn0_db >= 2.0)
            CHECK(pts[i].ber() <= union_bound_bit(we, rc, pts[i].ebn0_db) + 3.0 * pts[i].standard_error());
        if (i == 0) continue;
        const double se = std::hypot(pts[i].standard_error(), pts[i - 1].standard_error());
        CHECK(pts[i].ber() <= pts[i - 1].ber() + 3.0 * se);
    }
    // Independent brute-force ML decoding gives 4.0e-3 at 3 dB and 6.5e-4 at 4 dB.
    CHECK(pts[2].ber() == doctest::Approx(4.0e-3).epsilon(0.2));
    CHECK(pts[3].ber() == doctest::Approx(6.5e-4).epsilon(0.25));
}

#include <doctest.h>

#include "pwe/code.hpp"
#include "pwe/harvest.hpp"

using namespace pwe;

TEST_CASE("a decoder that always recovers yields nothing")
{
    const auto golay = catalog_code("golay-24-12");
    ImpulseSettings s;
    s.snr_grid_db = {200.0};
    Rng rng(1);
    for (int i = 0; i < 100; ++i) CHECK_FALSE(impulse_trial(*golay, s, rng).has_value());
}

TEST_CASE("impulse trial finds are nonzero codewords")
{
    const auto golay = catalog_code("golay-24-12");
    ImpulseSettings s;
    s.snr_grid_db = {1.0};
    Rng rng(2);
    std::size_t light = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto found = impulse_trial(*golay, s, rng);
        if (!found) continue;
        CHECK_FALSE(found->none());
        CHECK(golay->contains(*found));
        CHECK(found->weight() >= 8);
        light += found->weight() == 8;
    }
    CHECK(light > 0);
}

TEST_CASE("single-impulse sweep and all-zero transmission")
{
    const auto code = catalog_code("qr-47-24");
    ImpulseSettings s;
    s.decoder = DecoderKind::osd(2);
    s.impulse = ImpulseMode::single_impulse_sweep;
    s.transmit = TransmitMode::all_zero;
    s.snr_grid_db = {4.0};
    Rng rng(3);
    int hits = 0;
    for (int i = 0; i < 200; ++i) {
        if (const auto found = impulse_trial(*code, s, rng)) {
            CHECK(code->contains(*found));
            CHECK(found->weight() >= 11);
            ++hits;
        }
    }
    CHECK(hits > 150);
}

TEST_CASE("automorphism expansion")
{
    const auto h = catalog_code("hamming-7-4");
    CHECK(expand_by_automorphisms(*h, BitWord(7)) == std::vector<BitWord>{BitWord(7)});
    const auto w3 = enumerate_weight_class(*h, 3);
    const auto orbit = expand_by_automorphisms(*h, w3.front());
    CHECK(orbit.size() == 7);
    for (const auto& c : orbit) CHECK((c.weight() == 3 && h->contains(c)));
    CHECK_THROWS_AS(expand_by_automorphisms(*h, BitWord::from_positions(7, {0})), std::invalid_argument);

    const auto golay = catalog_code("golay-24-12");
    CHECK(automorphism_group_order(*golay) == 1);
    const auto g8 = enumerate_weight_class(*golay, 8).front();
    CHECK(expand_by_automorphisms(*golay, g8) == std::vector<BitWord>{g8});
}

TEST_CASE("shortened-code expansion stays inside the code")
{
    const auto code = catalog_code("bch-130-66");
    CHECK(automorphism_group_order(*code) == 255);
    Rng rng(4);
    BitWord info(code->k());
    info.set(0);
    info.set(5);
    const auto c = code->encode(info);
    const auto images = expand_by_automorphisms(*code, c);
    CHECK_FALSE(images.empty());
    CHECK(std::find(images.begin(), images.end(), c) != images.end());
    for (const auto& x : images) CHECK((code->contains(x) && x.weight() == c.weight()));
    CHECK_THROWS_AS(apply_automorphism(*code, c, 255), std::out_of_range);
}

TEST_CASE("weight class list validation")
{
    const auto h = catalog_code("hamming-7-4");
    WeightClassList list(h, 3);
    const auto w3 = enumerate_weight_class(*h, 3);
    CHECK(list.insert(w3[0]));
    CHECK_FALSE(list.insert(w3[0]));
    CHECK(list.size() == 1);
    CHECK_THROWS_AS(list.insert(enumerate_weight_class(*h, 4)[0]), std::invalid_argument);
    CHECK_THROWS_AS(list.insert(BitWord::from_positions(7, {0, 1, 2})), std::invalid_argument);
}

TEST_CASE("zero trials give empty lists for the window")
{
    HarvestConfig cfg;
    cfg.trials = 0;
    const auto r = harvest(catalog_code("golay-24-12"), cfg);
    CHECK(r.trials_run == 0);
    REQUIRE(r.window);
    CHECK(r.window->lo == 8);
    CHECK(r.window->hi == 13);
    CHECK(r.lists.size() == 6);
    for (const auto& [w, l] : r.lists) CHECK(l.empty());
}

TEST_CASE("Golay MLD harvest reaches the complete weight-8 class")
{
    const auto golay = catalog_code("golay-24-12");
    HarvestConfig cfg;
    cfg.settings.snr_grid_db = {1.0};
    cfg.trials = 100'000;
    cfg.weight_window = WeightWindow{8, 8};
    cfg.seed = 1;
    const auto r = harvest(golay, cfg);
    const auto members = r.lists.at(8).sorted_members();
    CHECK(members == [&] {
        auto all = enumerate_weight_class(*golay, 8);
        std::sort(all.begin(), all.end());
        return all;
    }());
}

TEST_CASE("harvest is deterministic, thread independent and monotone in trials")
{
    const auto code = catalog_code("qr-23-12");
    HarvestConfig cfg;
    cfg.settings.snr_grid_db = {1.0, 2.0};
    cfg.trials = 3000;
    cfg.seed = 9;
    cfg.threads = 1;
    const auto a = harvest(code, cfg);
    cfg.threads = 4;
    cfg.batch_size = 33;
    const auto b = harvest(code, cfg);
    cfg.trials = 6000;
    const auto longer = harvest(code, cfg);
    cfg.trials = 3000;
    cfg.first_trial = 3000;
    const auto resumed = harvest(code, cfg, a.lists);

    CHECK(a.decoder_errors == b.decoder_errors);
    for (const auto& [w, l] : a.lists) {
        CHECK(b.lists.at(w).sorted_members() == l.sorted_members());
        CHECK(resumed.lists.at(w).sorted_members() == longer.lists.at(w).sorted_members());
        for (const auto& m : l.sorted_members()) CHECK(longer.lists.at(w).contains(m));
    }
}

TEST_CASE("harvest without a known distance uses the lightest find")
{
    GF2Matrix g = catalog_code("qr-23-12")->generator();
    const auto code = std::make_shared<const CodeSpec>("qr23-no-d", g);
    HarvestConfig cfg;
    cfg.settings.snr_grid_db = {1.0};
    cfg.trials = 5000;
    const auto r = harvest(code, cfg);
    REQUIRE(r.window);
    CHECK(r.window->lo == 7);
    CHECK(r.lists.begin()->first == 7);
    CHECK(r.lists.rbegin()->first <= 12);
}

TEST_CASE("target size stops the run early")
{
    HarvestConfig cfg;
    cfg.settings.snr_grid_db = {1.0};
    cfg.trials = 1'000'000;
    cfg.weight_window = WeightWindow{7, 7};
    cfg.target_size = 100;
    const auto r = harvest(catalog_code("qr-23-12"), cfg);
    CHECK(r.trials_run < cfg.trials);
    CHECK(r.lists.at(7).size() >= 100);
}

TEST_CASE("harvest argument errors")
{
    HarvestConfig cfg;
    cfg.weight_window = WeightWindow{5, 4};
    CHECK_THROWS_AS(harvest(catalog_code("golay-24-12"), cfg), std::invalid_argument);
    cfg.weight_window.reset();
    cfg.batch_size = 0;
    CHECK_THROWS_AS(harvest(catalog_code("golay-24-12"), cfg), std::invalid_argument);
    CHECK_THROWS_AS(harvest(nullptr, HarvestConfig{}), std::invalid_argument);
}

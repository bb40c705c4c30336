#include <doctest.h>

#include <cmath>
#include <random>

#include "pwe/bounds.hpp"
#include "pwe/code.hpp"

using namespace pwe;

namespace {

// Composite Simpson integration of the normal density over [x, x + 20].
long double q_by_quadrature(long double x)
{
    constexpr int steps = 200000;
    const long double h = 20.0L / steps;
    const long double c = 1.0L / std::sqrt(2.0L * 3.14159265358979323846264338327950288L);
    auto f = [&](long double z) { return c * std::exp(-z * z / 2.0L); };
    long double s = f(x) + f(x + 20.0L);
    for (int i = 1; i < steps; ++i) s += f(x + i * h) * (i % 2 ? 4.0L : 2.0L);
    return s * h / 3.0L;
}

// Long-double term-by-term evaluation of the union bounds.
long double direct_bound(const WeightMap& m, std::size_t n, std::size_t k, double db, bool bit)
{
    long double s = 0.0L;
    const long double rate = static_cast<long double>(k) / n;
    const long double snr = std::pow(10.0L, db / 10.0L);
    for (const auto& [w, a] : m) {
        const long double x = std::sqrt(2.0L * w * rate * snr);
        const long double q = 0.5L * std::erfc(x / std::sqrt(2.0L));
        s += (bit ? a * w / n : a) * q;
    }
    return s;
}

WeightMap golay_weights() { return {{8, 759}, {12, 2576}, {16, 759}, {24, 1}}; }

}  // namespace

TEST_CASE("Q function")
{
    CHECK(q_function(0.0) == 0.5);
    CHECK(q_function(2.57) >= 0.00505);
    CHECK(q_function(2.57) <= 0.00510);
    for (const double x : {0.3, 1.0, 2.57, 4.0, 6.0, 9.0}) {
        CHECK(q_function(x) == doctest::Approx(static_cast<double>(q_by_quadrature(x))).epsilon(1e-9));
        CHECK(q_function(-x) == doctest::Approx(1.0 - q_function(x)).epsilon(1e-14));
    }
    // High-precision reference values.
    CHECK(q_function(0.5) == doctest::Approx(0.30853753872598689636).epsilon(1e-14));
    CHECK(q_function(10.0) == doctest::Approx(7.619853024160526066e-24).epsilon(1e-12));
    CHECK(q_function(20.0) == doctest::Approx(2.7536241186062336951e-89).epsilon(1e-12));
    CHECK(q_function(37.0) == doctest::Approx(5.7255712225245768227e-300).epsilon(1e-10));
    CHECK(q_function(40.0) >= 0.0);
    double prev = 1.0;
    for (double x = -5.0; x <= 40.0; x += 0.25) {
        CHECK(q_function(x) <= prev);
        prev = q_function(x);
    }
}

TEST_CASE("Q inverse")
{
    for (const double p : {0.4, 0.1, 0.005, 1e-6, 1e-12}) CHECK(q_function(q_inverse(p)) == doctest::Approx(p).epsilon(1e-8));
    CHECK_THROWS_AS(q_inverse(0.0), std::invalid_argument);
    CHECK_THROWS_AS(q_inverse(0.6), std::invalid_argument);
}

TEST_CASE("union bounds")
{
    const RateContext rc(24, 12);
    CHECK(union_bound_word({}, rc, 3.0) == 0.0);
    CHECK(union_bound_bit({}, rc, 3.0) == 0.0);
    CHECK(union_bound_word({{8, 1.0}}, rc, 0.0) == doctest::Approx(q_function(std::sqrt(8.0))));
    for (const double db : {1.0, 2.0, 3.0, 4.0, 5.0, 7.0}) {
        CHECK(union_bound_word(golay_weights(), rc, db) ==
              doctest::Approx(static_cast<double>(direct_bound(golay_weights(), 24, 12, db, false))).epsilon(1e-10));
        CHECK(union_bound_bit(golay_weights(), rc, db) ==
              doctest::Approx(static_cast<double>(direct_bound(golay_weights(), 24, 12, db, true))).epsilon(1e-10));
        CHECK(union_bound_bit(golay_weights(), rc, db) <= union_bound_word(golay_weights(), rc, db));
    }
    CHECK_THROWS_AS(union_bound_word({{0, 1.0}}, rc, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(RateContext(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(RateContext(5, 6), std::invalid_argument);
}

TEST_CASE("bounds are monotone, order independent and grow with terms")
{
    std::mt19937_64 rng(1);
    const RateContext rc(127, 50);
    for (int t = 0; t < 50; ++t) {
        WeightMap m;
        for (int j = 0; j < 6; ++j) m[20 + rng() % 40] = 1.0 + static_cast<double>(rng() % 1000000);
        double prev = INFINITY;
        for (double db = -1.0; db <= 10.0; db += 0.5) {
            const double v = union_bound_bit(m, rc, db);
            CHECK(v <= prev);
            prev = v;
        }
        auto more = m;
        more[80] += 3.0;
        CHECK(union_bound_word(more, rc, 2.0) >= union_bound_word(m, rc, 2.0));
    }
}

TEST_CASE("partial Golay enumerator against the full one")
{
    const RateContext rc(24, 12);
    const WeightMap partial{{8, 759}};
    for (double db = 3.0; db <= 10.0; db += 0.5) {
        const double r = union_bound_bit(partial, rc, db) / union_bound_bit(golay_weights(), rc, db);
        CHECK(r <= 1.0);
        CHECK(r >= 1.0 / 1.1);
    }
}

TEST_CASE("truncated bound with intervals")
{
    const RateContext rc(127, 50);
    PartialWeightEnumerator one{"x", {{27, 40894, 40894, 40894, true}}};
    const auto v = truncated_bound(one, rc, 3.0);
    CHECK(v.value == doctest::Approx(union_bound_bit({{27, 40894}}, rc, 3.0)));
    CHECK(v.lower == v.value);
    CHECK(v.upper == v.value);

    PartialWeightEnumerator four{"x",
                                 {{27, 38394, 35364, 41993, false},
                                  {28, 152978, 140004, 168602, false},
                                  {31, 4269224, 3922283, 4683496, false},
                                  {32, 13496466, 12285596, 14972120, false}}};
    PartialWeightEnumerator two{"x", {four.entries[0], four.entries[1]}};
    for (const double db : {1.0, 3.0, 5.0}) {
        const auto a = truncated_bound(two, rc, db), b = truncated_bound(four, rc, db);
        CHECK(b.value >= a.value);
        CHECK(b.lower <= b.value);
        CHECK(b.value <= b.upper);
    }
    CHECK_THROWS_AS(truncated_bound({"x", {}}, rc, 3.0), std::invalid_argument);
}

TEST_CASE("Sidel'nikov central value")
{
    CHECK(sidelnikov_approx(8, 8, 0) == std::ldexp(1.0, -64));
    CHECK(sidelnikov_approx(8, 8, 17) == sidelnikov_approx(8, 8, 255 - 17));
    CHECK(sidelnikov_approx(8, 8, 17) == doctest::Approx(7201239.836862656).epsilon(1e-14));
    CHECK(sidelnikov_approx(7, 10, 27) == doctest::Approx(2511099.8478631685).epsilon(1e-14));
    CHECK_THROWS(sidelnikov_approx(7, 10, 128));
}

TEST_CASE("SNR grids")
{
    CHECK(parse_snr_grid("1:5:0.5").size() == 9);
    CHECK(parse_snr_grid("1:5:0.5").back() == doctest::Approx(5.0));
    CHECK(parse_snr_grid("2:2:1") == std::vector<double>{2.0});
    CHECK(parse_snr_grid("0:1:0.3").size() == 4);
    CHECK_THROWS_AS(parse_snr_grid("5:1:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_snr_grid("1:5:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_snr_grid("1:5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_snr_grid(""), std::invalid_argument);
    CHECK(parse_snr_list("0,1,2.5") == std::vector<double>{0.0, 1.0, 2.5});
    CHECK_THROWS_AS(parse_snr_list("1,x"), std::invalid_argument);
}

TEST_CASE("curves")
{
    const RateContext rc(24, 12);
    const std::vector<double> one{3.0};
    const auto c1 = curve(golay_weights(), rc, one, CurveKind::bit_bound);
    REQUIRE(c1.points.size() == 1);
    CHECK(c1.points[0].value == union_bound_bit(golay_weights(), rc, 3.0));

    const auto grid = parse_snr_grid("1:8:0.5");
    const auto c = curve(golay_weights(), rc, grid, CurveKind::word_bound);
    for (std::size_t i = 1; i < c.points.size(); ++i) CHECK(c.points[i].value < c.points[i - 1].value);
    CHECK_THROWS_AS(curve(golay_weights(), rc, std::vector<double>{}, CurveKind::bit_bound), std::invalid_argument);
    const std::vector<double> bad{2.0, 1.0};
    CHECK_THROWS_AS(curve(golay_weights(), rc, bad, CurveKind::bit_bound), std::invalid_argument);
    CHECK_THROWS(curve(golay_weights(), rc, grid, CurveKind::simulated_ber));

    PartialWeightEnumerator pwe{"g", {{8, 759, 700, 800, false}}};
    const auto ci = curve(pwe, rc, grid);
    CHECK(ci.kind == CurveKind::truncated_bound);
    for (const auto& p : ci.points) {
        REQUIRE(p.lower);
        CHECK(*p.lower <= p.value);
        CHECK(p.value <= *p.upper);
    }
    CHECK(curve_kind_from_string(to_string(CurveKind::bit_bound)) == CurveKind::bit_bound);
    CHECK_THROWS(curve_kind_from_string("nope"));
}

#include "pwe/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <sstream>

namespace pwe {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            compensation_ += (sum_ - t) + x;
        else
            compensation_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

double pairwise_error(std::size_t w, double rate, double ebn0_linear)
{
    return q_function(std::sqrt(2.0 * static_cast<double>(w) * rate * ebn0_linear));
}

template <typename Weight>
double weighted_bound(const WeightMap& weights, const RateContext& ctx, double ebn0_db,
                      Weight&& weight)
{
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    CompensatedSum acc;
    // std::map iterates in increasing w.
    for (const auto& [w, count] : weights) {
        if (w == 0) throw std::invalid_argument("weight enumerator bound excludes w = 0");
        acc.add(weight(w) * count * pairwise_error(w, ctx.rate(), ebn0));
    }
    return acc.value();
}

void check_grid(std::span<const double> grid)
{
    if (grid.empty()) throw std::invalid_argument("SNR grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("SNR grid must be strictly increasing");
    }
}

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double q_inverse(double p, double tolerance)
{
    if (!(p > 0.0 && p <= 0.5)) throw std::invalid_argument("q_inverse needs p in (0, 0.5]");
    double lo = 0.0;
    double hi = 40.0;
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (q_function(mid) > p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double union_bound_word(const WeightMap& weights, const RateContext& ctx, double ebn0_db)
{
    return weighted_bound(weights, ctx, ebn0_db, [](std::size_t) { return 1.0; });
}

double union_bound_bit(const WeightMap& weights, const RateContext& ctx, double ebn0_db)
{
    const double n = static_cast<double>(ctx.n);
    return weighted_bound(weights, ctx, ebn0_db,
                          [n](std::size_t w) { return static_cast<double>(w) / n; });
}

IntervalValue truncated_bound(const PartialWeightEnumerator& pwe, const RateContext& ctx,
                              double ebn0_db)
{
    if (pwe.entries.empty()) throw std::invalid_argument("truncated bound needs a nonempty enumerator");
    WeightMap mid, lo, hi;
    for (const auto& e : pwe.entries) {
        mid[e.w] = static_cast<double>(e.count_estimate);
        lo[e.w] = static_cast<double>(e.lower);
        hi[e.w] = static_cast<double>(e.upper);
    }
    return {union_bound_bit(mid, ctx, ebn0_db), union_bound_bit(lo, ctx, ebn0_db),
            union_bound_bit(hi, ctx, ebn0_db)};
}

double sidelnikov_approx(unsigned m, unsigned t, std::size_t j)
{
    using boost::multiprecision::cpp_int;
    if (m == 0 || m > 62) throw std::invalid_argument("m out of range");
    const std::size_t n = (std::size_t{1} << m) - 1;
    if (j > n) throw std::invalid_argument("weight exceeds code length");

    const std::size_t jj = std::min(j, n - j);
    cpp_int binom = 1;
    for (std::size_t i = 1; i <= jj; ++i) {
        binom *= n - jj + i;
        binom /= i;
    }
    // Scale down by 2^(m t) before conversion to keep precision for large m t.
    const long exponent = -static_cast<long>(m) * static_cast<long>(t);
    const auto bits = static_cast<long>(boost::multiprecision::msb(binom)) + 1;
    const long keep = std::max(0L, bits - 64);
    const cpp_int top = binom >> keep;
    return std::ldexp(top.convert_to<double>(), static_cast<int>(keep + exponent));
}

std::string to_string(CurveKind kind)
{
    switch (kind) {
        case CurveKind::word_bound: return "word_bound";
        case CurveKind::bit_bound: return "bit_bound";
        case CurveKind::truncated_bound: return "truncated_bound";
        case CurveKind::simulated_ber: return "simulated_ber";
    }
    return "unknown";
}

CurveKind curve_kind_from_string(const std::string& text)
{
    for (auto k : {CurveKind::word_bound, CurveKind::bit_bound, CurveKind::truncated_bound,
                   CurveKind::simulated_ber}) {
        if (to_string(k) == text) return k;
    }
    throw std::invalid_argument("unknown curve kind: " + text);
}

std::vector<double> parse_snr_grid(const std::string& text)
{
    std::istringstream in(text);
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
        throw std::invalid_argument("SNR grid must be LO:HI:STEP, got '" + text + "'");
    if (!(step > 0.0) || hi < lo)
        throw std::invalid_argument("SNR grid '" + text + "' is empty or decreasing");
    std::vector<double> grid;
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
    return grid;
}

std::vector<double> parse_snr_list(const std::string& text)
{
    std::vector<double> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw std::invalid_argument("bad SNR value '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty SNR list");
    return out;
}

BoundCurve curve(const WeightMap& weights, const RateContext& ctx, std::span<const double> grid,
                 CurveKind kind)
{
    check_grid(grid);
    if (kind != CurveKind::word_bound && kind != CurveKind::bit_bound)
        throw std::invalid_argument("weight-map curves are word or bit bounds");
    BoundCurve out{kind, {}};
    for (double snr : grid) {
        const double v = kind == CurveKind::word_bound ? union_bound_word(weights, ctx, snr)
                                                       : union_bound_bit(weights, ctx, snr);
        out.points.push_back({snr, v, std::nullopt, std::nullopt});
    }
    return out;
}

BoundCurve curve(const PartialWeightEnumerator& pwe, const RateContext& ctx,
                 std::span<const double> grid)
{
    check_grid(grid);
    BoundCurve out{CurveKind::truncated_bound, {}};
    for (double snr : grid) {
        const auto v = truncated_bound(pwe, ctx, snr);
        out.points.push_back({snr, v.value, v.lower, v.upper});
    }
    return out;
}

}  // namespace pwe

// Union bounds on ML decoding over BPSK/AWGN from (partial) weight
// enumerators.

#ifndef PWE_BOUNDS_HPP
#define PWE_BOUNDS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwe/partial_enumerator.hpp"

namespace pwe {

/// Weight -> number of codewords. Estimated counts are allowed, hence double.
using WeightMap = std::map<std::size_t, double>;

struct RateContext {
    std::size_t n = 0;
    std::size_t k = 0;

    RateContext(std::size_t n_, std::size_t k_) : n(n_), k(k_)
    {
        if (n == 0 || k == 0 || k > n) throw std::invalid_argument("rate context needs 0 < k <= n");
    }
    double rate() const noexcept { return static_cast<double>(k) / static_cast<double>(n); }
};

/// Gaussian tail probability, 0.5 * erfc(x / sqrt(2)). Results below the
/// smallest double (x beyond ~38.4) flush to zero.
double q_function(double x);

/// Inverse of q_function on (0, 0.5], by bisection.
double q_inverse(double p, double tolerance = 1e-12);

/// sum_w A_w Q(sqrt(2 w R Eb/N0)). Not clamped to 1.
double union_bound_word(const WeightMap& weights, const RateContext& ctx, double ebn0_db);
/// sum_w (w A_w / n) Q(sqrt(2 w R Eb/N0)).
double union_bound_bit(const WeightMap& weights, const RateContext& ctx, double ebn0_db);

struct IntervalValue {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

/// Bit bound restricted to the entries of a partial enumerator, evaluated at
/// the point estimates and at both ends of every count interval.
IntervalValue truncated_bound(const PartialWeightEnumerator& pwe, const RateContext& ctx,
                              double ebn0_db);

/// Central value 2^(-m t) C(n, j), n = 2^m - 1, with an exact binomial.
double sidelnikov_approx(unsigned m, unsigned t, std::size_t j);

enum class CurveKind { word_bound, bit_bound, truncated_bound, simulated_ber };

std::string to_string(CurveKind kind);
CurveKind curve_kind_from_string(const std::string& text);

struct CurvePoint {
    double ebn0_db = 0.0;
    double value = 0.0;
    std::optional<double> lower;
    std::optional<double> upper;
};

struct BoundCurve {
    CurveKind kind = CurveKind::bit_bound;
    std::vector<CurvePoint> points;
};

/// Parses "LO:HI:STEP"; both ends included when STEP divides the range.
/// Throws std::invalid_argument for an empty or decreasing grid.
std::vector<double> parse_snr_grid(const std::string& text);
/// Comma-separated list of values ("0,1,2.5").
std::vector<double> parse_snr_list(const std::string& text);

/// kind must be word_bound or bit_bound.
BoundCurve curve(const WeightMap& weights, const RateContext& ctx, std::span<const double> grid,
                 CurveKind kind);
BoundCurve curve(const PartialWeightEnumerator& pwe, const RateContext& ctx,
                 std::span<const double> grid);

}  // namespace pwe

#endif  // PWE_BOUNDS_HPP

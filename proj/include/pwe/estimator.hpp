// Monte Carlo estimation of weight-class sizes from partial lists.
//
// For a known list L_w of weight-w codewords, the recovery rate
// R = |L_w| / |C_w| is estimated by drawing random weight-w codewords until
// M of them fall inside L_w ("interns"). The draw is repeated q times; the
// mean rate and its sample deviation give a confidence interval on R, and
// |C_w| is bracketed by |L_w| / R_right and |L_w| / R_left.

#ifndef PWE_ESTIMATOR_HPP
#define PWE_ESTIMATOR_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pwe/code.hpp"
#include "pwe/harvest.hpp"
#include "pwe/partial_enumerator.hpp"
#include "pwe/rng.hpp"

namespace pwe {

/// A sampler could not produce a word of the requested weight in budget.
class EstimationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Source of random weight-w codewords.
class WeightSampler {
public:
    virtual ~WeightSampler() = default;
    /// Throws EstimationFailure when no weight-w word can be produced.
    virtual BitWord sample(std::size_t w, Rng& rng) const = 0;
    virtual std::string describe() const = 0;
};

/// Uniform draws from the complete weight classes, enumerated up front.
/// Requires k <= exhaustive_k_limit().
class ExactUniformSampler final : public WeightSampler {
public:
    ExactUniformSampler(CodePtr code, std::span<const std::size_t> weights);

    BitWord sample(std::size_t w, Rng& rng) const override;
    std::string describe() const override { return "exact"; }
    std::size_t class_size(std::size_t w) const;

private:
    CodePtr code_;
    std::unordered_map<std::size_t, std::vector<BitWord>> classes_;
};

/// Draws through impulse trials: run trials until one yields a weight-w
/// word, then apply a uniformly random automorphism. The caller's seed
/// stream must be independent of the one that built the list.
class ImpulseSampler final : public WeightSampler {
public:
    ImpulseSampler(CodePtr code, ImpulseSettings settings, std::uint64_t max_trials_per_draw = 10'000'000);

    BitWord sample(std::size_t w, Rng& rng) const override;
    std::string describe() const override { return "impulse"; }

private:
    CodePtr code_;
    ImpulseSettings settings_;
    std::uint64_t max_trials_;
};

/// Per-repetition rate formula once M interns were seen in i draws.
enum class RateFormula {
    /// (M - 1) / (i - 1): unbiased under inverse (negative binomial) sampling.
    unbiased,
    /// M / i, biased upwards for partial lists.
    ratio,
};

std::string to_string(RateFormula formula);
RateFormula rate_formula_from_string(const std::string& text);

struct RecoveryEstimate {
    std::size_t w = 0;
    std::size_t list_size = 0;
    double r_bar = 0.0;
    double sigma = 0.0;
    std::size_t q = 0;
    double mu = 0.0;
    double beta = 0.0;
    double r_left = 0.0;
    double r_right = 0.0;
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    std::uint64_t count_estimate = 0;
    bool complete = false;
    std::uint64_t total_draws = 0;
};

/// beta with (2/sqrt(2 pi)) int_beta^inf exp(-u^2/2) du = 1 - mu, i.e.
/// Q(beta) = (1 - mu) / 2. Throws std::invalid_argument unless 0.5 < mu < 1.
double beta_from_mu(double mu);

/// Interval arithmetic from summary statistics. R bounds are clamped to
/// (0, 1]; an unbounded upper count saturates at UINT64_MAX.
RecoveryEstimate recovery_estimate_from_stats(std::size_t w, std::size_t list_size, double r_bar,
                                              double sigma, std::size_t q, double beta,
                                              double mu = 0.0);

/// Mean and sample deviation of per-repetition rates, then intervals.
RecoveryEstimate summarize_recovery(std::size_t w, std::size_t list_size,
                                    std::span<const double> rates, double mu);

struct RecoveryRate {
    double rate = 0.0;
    std::uint64_t draws = 0;
};

/// One repetition: draw until M interns. Throws EstimationFailure past
/// max_draws total draws.
RecoveryRate recovery_rate_once(const WeightClassList& list, const WeightSampler& sampler,
                                std::size_t m, Rng& rng,
                                RateFormula formula = RateFormula::unbiased,
                                std::uint64_t max_draws = 100'000'000);

struct EstimatorParams {
    std::size_t m = 10;
    std::size_t q = 100;
    double mu = 0.99;
    RateFormula formula = RateFormula::unbiased;
    unsigned threads = 0;
    std::uint64_t max_draws = 100'000'000;
};

/// q independent repetitions; repetition j draws from
/// derive_seed(seed, stream_estimate + w, j).
RecoveryEstimate estimate_recovery(const WeightClassList& list, const WeightSampler& sampler,
                                   const EstimatorParams& params, std::uint64_t seed);

struct PweEstimate {
    PartialWeightEnumerator pwe;
    std::vector<RecoveryEstimate> estimates;
    /// Weight -> reason, for classes left out of the enumerator.
    std::map<std::size_t, std::string> failures;
};

PweEstimate estimate_pwe(const CodeSpec& code, const HarvestLists& lists,
                         const WeightSampler& sampler, const EstimatorParams& params,
                         std::uint64_t seed);

inline BitWord sample_weight_w(const WeightSampler& sampler, std::size_t w, Rng& rng)
{
    return sampler.sample(w, rng);
}

}  // namespace pwe

#endif  // PWE_ESTIMATOR_HPP

#include "pwe/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pwe/bounds.hpp"
#include "pwe/detail/parallel.hpp"

namespace pwe {

// ---------------------------------------------------------------------------
// Samplers

ExactUniformSampler::ExactUniformSampler(CodePtr code, std::span<const std::size_t> weights)
    : code_(std::move(code))
{
    if (!code_) throw std::invalid_argument("sampler needs a code");
    for (auto w : weights) {
        if (!classes_.contains(w)) classes_.emplace(w, enumerate_weight_class(*code_, w));
    }
}

BitWord ExactUniformSampler::sample(std::size_t w, Rng& rng) const
{
    auto it = classes_.find(w);
    if (it == classes_.end())
        throw EstimationFailure("exact sampler was not prepared for weight " + std::to_string(w));
    if (it->second.empty())
        throw EstimationFailure(code_->name() + " has no codewords of weight " + std::to_string(w));
    return it->second[rng.below(it->second.size())];
}

std::size_t ExactUniformSampler::class_size(std::size_t w) const
{
    auto it = classes_.find(w);
    return it == classes_.end() ? 0 : it->second.size();
}

ImpulseSampler::ImpulseSampler(CodePtr code, ImpulseSettings settings,
                               std::uint64_t max_trials_per_draw)
    : code_(std::move(code)), settings_(std::move(settings)), max_trials_(max_trials_per_draw)
{
    if (!code_) throw std::invalid_argument("sampler needs a code");
    if (max_trials_ == 0) throw std::invalid_argument("sampler trial budget must be positive");
}

BitWord ImpulseSampler::sample(std::size_t w, Rng& rng) const
{
    const std::size_t group = automorphism_group_order(*code_);
    for (std::uint64_t t = 0; t < max_trials_; ++t) {
        auto found = impulse_trial(*code_, settings_, rng);
        if (!found || found->weight() != w) continue;
        // Images leaving a shortened code are rejected and redrawn.
        while (true) {
            if (auto image = apply_automorphism(*code_, *found, rng.below(group)))
                return std::move(*image);
        }
    }
    throw EstimationFailure("impulse sampler found no weight-" + std::to_string(w) + " word in " +
                            std::to_string(max_trials_) + " trials");
}

// ---------------------------------------------------------------------------
// Interval arithmetic

std::string to_string(RateFormula formula)
{
    return formula == RateFormula::unbiased ? "unbiased" : "ratio";
}

RateFormula rate_formula_from_string(const std::string& text)
{
    if (text == "unbiased") return RateFormula::unbiased;
    if (text == "ratio") return RateFormula::ratio;
    throw std::invalid_argument("unknown rate formula '" + text + "' (expected unbiased or ratio)");
}

double beta_from_mu(double mu)
{
    if (!(mu > 0.5 && mu < 1.0)) throw std::invalid_argument("mu must lie in (0.5, 1)");
    return q_inverse((1.0 - mu) / 2.0, 1e-9);
}

RecoveryEstimate recovery_estimate_from_stats(std::size_t w, std::size_t list_size, double r_bar,
                                              double sigma, std::size_t q, double beta, double mu)
{
    if (q == 0) throw std::invalid_argument("q must be positive");
    if (!(r_bar > 0.0 && r_bar <= 1.0)) throw std::invalid_argument("mean recovery rate must lie in (0, 1]");
    if (sigma < 0.0) throw std::invalid_argument("sigma must be non-negative");

    RecoveryEstimate e;
    e.w = w;
    e.list_size = list_size;
    e.r_bar = r_bar;
    e.sigma = sigma;
    e.q = q;
    e.mu = mu;
    e.beta = beta;
    e.complete = sigma == 0.0 && r_bar == 1.0;

    const auto size = static_cast<double>(list_size);
    if (e.complete) {
        e.r_left = e.r_right = 1.0;
        e.lower = e.upper = e.count_estimate = list_size;
        return e;
    }
    const double half = sigma * beta / std::sqrt(static_cast<double>(q));
    e.r_right = std::min(1.0, r_bar + half);
    e.r_left = r_bar - half;
    e.lower = static_cast<std::uint64_t>(std::floor(size / e.r_right));
    if (e.r_left <= 0.0) {
        e.r_left = std::numeric_limits<double>::denorm_min();
        e.upper = std::numeric_limits<std::uint64_t>::max();
    } else {
        const double up = std::ceil(size / e.r_left);
        e.upper = up >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max()
                               : static_cast<std::uint64_t>(up);
    }
    e.count_estimate = static_cast<std::uint64_t>(std::llround(size / r_bar));
    e.count_estimate = std::clamp(e.count_estimate, e.lower, e.upper);
    return e;
}

RecoveryEstimate summarize_recovery(std::size_t w, std::size_t list_size,
                                    std::span<const double> rates, double mu)
{
    const std::size_t q = rates.size();
    if (q < 2) throw std::invalid_argument("at least two repetitions are needed for a deviation");
    double mean = 0.0;
    for (double r : rates) mean += r;
    mean /= static_cast<double>(q);
    double ss = 0.0;
    for (double r : rates) ss += (mean - r) * (mean - r);
    // Equal rates give an exactly zero deviation, so the completeness test
    // is not defeated by rounding in the mean.
    const bool all_equal =
        std::all_of(rates.begin(), rates.end(), [&](double r) { return r == rates[0]; });
    if (all_equal) {
        mean = rates[0];
        ss = 0.0;
    }
    const double sigma = std::sqrt(ss / static_cast<double>(q - 1));
    return recovery_estimate_from_stats(w, list_size, mean, sigma, q, beta_from_mu(mu), mu);
}

// ---------------------------------------------------------------------------
// Estimation

RecoveryRate recovery_rate_once(const WeightClassList& list, const WeightSampler& sampler,
                                std::size_t m, Rng& rng, RateFormula formula,
                                std::uint64_t max_draws)
{
    if (list.empty()) throw std::invalid_argument("recovery rate of an empty list");
    if (m == 0) throw std::invalid_argument("M must be at least 1");
    if (formula == RateFormula::unbiased && m < 2)
        throw std::invalid_argument("the unbiased rate needs M >= 2");

    std::size_t interns = 0;
    std::uint64_t draws = 0;
    while (interns < m) {
        if (draws == max_draws)
            throw EstimationFailure("draw budget exhausted at weight " + std::to_string(list.weight()));
        ++draws;
        if (list.contains(sampler.sample(list.weight(), rng))) ++interns;
    }
    const double rate = formula == RateFormula::ratio
                            ? static_cast<double>(m) / static_cast<double>(draws)
                            : static_cast<double>(m - 1) / static_cast<double>(draws - 1);
    return {rate, draws};
}

RecoveryEstimate estimate_recovery(const WeightClassList& list, const WeightSampler& sampler,
                                   const EstimatorParams& params, std::uint64_t seed)
{
    if (params.q < 2) throw std::invalid_argument("q must be at least 2");
    if (!(params.mu > 0.5 && params.mu < 1.0)) throw std::invalid_argument("mu must lie in (0.5, 1)");

    std::vector<RecoveryRate> reps(params.q);
    detail::parallel_for(params.q, params.threads, [&](std::uint64_t j) {
        Rng rng(derive_seed(seed, stream_estimate + list.weight(), j));
        reps[j] = recovery_rate_once(list, sampler, params.m, rng, params.formula, params.max_draws);
    });

    std::vector<double> rates;
    rates.reserve(reps.size());
    std::uint64_t draws = 0;
    for (const auto& r : reps) {
        rates.push_back(r.rate);
        draws += r.draws;
    }
    auto est = summarize_recovery(list.weight(), list.size(), rates, params.mu);
    est.total_draws = draws;
    return est;
}

PweEstimate estimate_pwe(const CodeSpec& code, const HarvestLists& lists,
                         const WeightSampler& sampler, const EstimatorParams& params,
                         std::uint64_t seed)
{
    PweEstimate out;
    out.pwe.code_name = code.name();
    for (const auto& [w, list] : lists) {
        if (list.empty()) {
            out.failures[w] = "empty list";
            continue;
        }
        try {
            auto est = estimate_recovery(list, sampler, params, seed);
            out.pwe.entries.push_back({w, est.count_estimate, est.lower, est.upper, est.complete});
            out.estimates.push_back(est);
        } catch (const EstimationFailure& e) {
            out.failures[w] = e.what();
        }
    }
    return out;
}

}  // namespace pwe

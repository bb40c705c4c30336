#include "pwe/harvest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pwe/channel.hpp"
#include "pwe/detail/parallel.hpp"

namespace pwe {

// ---------------------------------------------------------------------------
// WeightClassList

WeightClassList::WeightClassList(CodePtr code, std::size_t weight)
    : code_(std::move(code)), weight_(weight)
{
    if (!code_) throw std::invalid_argument("weight class list needs a code");
}

bool WeightClassList::insert(const BitWord& word)
{
    if (word.weight() != weight_)
        throw std::invalid_argument("word of weight " + std::to_string(word.weight()) +
                                    " inserted into the weight-" + std::to_string(weight_) +
                                    " list");
    if (!code_->contains(word))
        throw std::invalid_argument("word is not a codeword of " + code_->name());
    return members_.insert(word).second;
}

std::vector<BitWord> WeightClassList::sorted_members() const
{
    std::vector<BitWord> out(members_.begin(), members_.end());
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Trials

namespace {

BitWord draw_transmitted(const CodeSpec& code, TransmitMode mode, Rng& rng)
{
    if (mode == TransmitMode::all_zero) return BitWord(code.n());
    BitWord info(code.k());
    auto limbs = info.limbs();
    for (std::size_t l = 0; l < limbs.size(); ++l) limbs[l] = rng.next();
    if (code.k() % 64 != 0) limbs.back() &= (std::uint64_t{1} << (code.k() % 64)) - 1;
    return code.encode(info);
}

}  // namespace

std::optional<BitWord> impulse_trial(const CodeSpec& code, const ImpulseSettings& settings,
                                     Rng& rng)
{
    const BitWord sent = draw_transmitted(code, settings.transmit, rng);
    const double sigma =
        settings.snr_grid_db.empty()
            ? 0.0
            : noise_sigma(settings.snr_grid_db[rng.below(settings.snr_grid_db.size())], code.rate());
    SoftVector r = transmit_awgn(sent, sigma, rng);

    BitWord decided;
    if (settings.impulse == ImpulseMode::gaussian_noise) {
        decided = decode(settings.decoder, code, r);
    } else {
        // Push one coordinate towards the opposite symbol with growing
        // amplitude until the decision moves away from the sent word.
        const std::size_t pos = rng.below(code.n());
        const double direction = sent.test(pos) ? 1.0 : -1.0;
        const double base = r[pos];
        const double limit = 2.0 * static_cast<double>(code.n()) + 2.0;
        decided = sent;
        for (double amplitude = 1.0; amplitude <= limit; amplitude *= std::sqrt(2.0)) {
            r[pos] = base + direction * amplitude;
            decided = decode(settings.decoder, code, r);
            if (decided != sent) break;
        }
    }
    if (decided == sent) return std::nullopt;
    return sent ^ decided;
}

// ---------------------------------------------------------------------------
// Automorphisms

std::size_t automorphism_group_order(const CodeSpec& code)
{
    if (code.is_cyclic()) return code.n();
    if (code.parent() && code.parent()->parent->is_cyclic()) return code.parent()->parent->n();
    return 1;
}

std::optional<BitWord> apply_automorphism(const CodeSpec& code, const BitWord& word,
                                          std::size_t index)
{
    if (index >= automorphism_group_order(code))
        throw std::out_of_range("automorphism index out of range");
    if (code.is_cyclic()) return word.rotated(index);
    if (code.parent() && code.parent()->parent->is_cyclic())
        return code.project_from_parent(code.lift_to_parent(word).rotated(index));
    return word;
}

std::vector<BitWord> expand_by_automorphisms(const CodeSpec& code, const BitWord& word)
{
    if (!code.contains(word))
        throw std::invalid_argument("cannot expand a word outside " + code.name());
    std::vector<BitWord> out;
    const std::size_t order = automorphism_group_order(code);
    out.reserve(order);
    for (std::size_t s = 0; s < order; ++s) {
        if (auto image = apply_automorphism(code, word, s)) out.push_back(std::move(*image));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Harvest

HarvestResult harvest(const CodePtr& code, const HarvestConfig& config, HarvestLists existing)
{
    if (!code) throw std::invalid_argument("harvest needs a code");
    if (config.batch_size == 0) throw std::invalid_argument("batch size must be positive");
    if (config.weight_window && (config.weight_window->lo < 1 ||
                                 config.weight_window->hi < config.weight_window->lo))
        throw std::invalid_argument("weight window must satisfy 1 <= lo <= hi");

    HarvestResult result;
    result.lists = std::move(existing);
    result.window = config.weight_window;
    if (!result.window && code->d_known())
        result.window = WeightWindow{*code->d_known(), *code->d_known() + 5};

    // Without a fixed window the lightest weight seen so far anchors it.
    std::optional<std::size_t> lightest;
    for (const auto& [w, list] : result.lists) {
        if (!list.empty()) lightest = lightest ? std::min(*lightest, w) : w;
    }
    auto accepts = [&](std::size_t w) {
        if (result.window) return result.window->contains(w);
        return !lightest || w <= *lightest + 5;
    };
    auto target_reached = [&] {
        if (!config.target_size || !result.window) return false;
        for (std::size_t w = result.window->lo; w <= result.window->hi; ++w) {
            auto it = result.lists.find(w);
            if (it == result.lists.end() || it->second.size() < *config.target_size) return false;
        }
        return true;
    };

    if (result.window) {
        for (std::size_t w = result.window->lo; w <= result.window->hi; ++w)
            result.lists.try_emplace(w, code, w);
    }

    std::vector<std::optional<BitWord>> batch;
    for (std::uint64_t start = 0; start < config.trials; start += config.batch_size) {
        const std::uint64_t count = std::min(config.batch_size, config.trials - start);
        batch.assign(count, std::nullopt);
        detail::parallel_for(count, config.threads, [&](std::uint64_t i) {
            Rng rng(derive_seed(config.seed, stream_harvest, config.first_trial + start + i));
            batch[i] = impulse_trial(*code, config.settings, rng);
        });
        result.trials_run += count;

        for (auto& found : batch) {
            if (!found) continue;
            ++result.decoder_errors;
            const std::size_t w = found->weight();
            if (!accepts(w)) continue;
            if (!result.window) lightest = lightest ? std::min(*lightest, w) : w;
            auto it = result.lists.try_emplace(w, code, w).first;
            for (const auto& image : expand_by_automorphisms(*code, *found)) it->second.insert(image);
        }
        if (target_reached()) break;
    }

    if (!result.window && lightest) {
        result.window = WeightWindow{*lightest, *lightest + 5};
        std::erase_if(result.lists, [&](const auto& entry) { return entry.first > *lightest + 5; });
        for (std::size_t w = result.window->lo; w <= result.window->hi; ++w)
            result.lists.try_emplace(w, code, w);
    }
    return result;
}

}  // namespace pwe

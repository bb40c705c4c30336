// Error-impulse harvesting of low-weight codewords.
//
// A codeword c1 is sent, its BPSK image is perturbed and decoded to c2. When
// the decoder errs, c1 + c2 is a (usually light) nonzero codeword. Finds are
// expanded through the code's cyclic automorphisms and stored per weight.

#ifndef PWE_HARVEST_HPP
#define PWE_HARVEST_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_set>
#include <vector>

#include "pwe/code.hpp"
#include "pwe/decoders.hpp"
#include "pwe/rng.hpp"

namespace pwe {

enum class TransmitMode { all_zero, random_codeword };
enum class ImpulseMode { gaussian_noise, single_impulse_sweep };

/// Everything a single impulse trial needs.
struct ImpulseSettings {
    DecoderKind decoder = DecoderKind::mld();
    /// Eb/N0 values (dB); each trial draws one uniformly.
    std::vector<double> snr_grid_db{0.0, 1.0, 2.0, 3.0};
    TransmitMode transmit = TransmitMode::random_codeword;
    ImpulseMode impulse = ImpulseMode::gaussian_noise;
};

struct WeightWindow {
    std::size_t lo = 1;
    std::size_t hi = 0;
    bool contains(std::size_t w) const noexcept { return w >= lo && w <= hi; }
};

struct HarvestConfig {
    ImpulseSettings settings;
    std::uint64_t trials = 0;
    /// Index of the first trial; a run resumed at the previous end extends it.
    std::uint64_t first_trial = 0;
    /// Defaults to [d, d + 5] with d = d_known, or the lightest weight seen.
    std::optional<WeightWindow> weight_window;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    /// When set, stop after the first batch in which every weight of the
    /// window holds at least this many words.
    std::optional<std::size_t> target_size;
    std::uint64_t batch_size = 1024;
};

/// Deduplicated codewords of one weight. Every insertion is checked for
/// weight and code membership.
class WeightClassList {
public:
    WeightClassList(CodePtr code, std::size_t weight);

    /// Returns false for a duplicate; throws std::invalid_argument for a word
    /// of the wrong weight or outside the code.
    bool insert(const BitWord& word);
    bool contains(const BitWord& word) const { return members_.contains(word); }

    std::size_t weight() const noexcept { return weight_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const CodePtr& code() const noexcept { return code_; }

    /// Members in lexicographic bit order.
    std::vector<BitWord> sorted_members() const;

private:
    CodePtr code_;
    std::size_t weight_;
    std::unordered_set<BitWord, BitWordHash> members_;
};

using HarvestLists = std::map<std::size_t, WeightClassList>;

/// One perturb-and-decode trial; nullopt when the decoder recovers c1.
std::optional<BitWord> impulse_trial(const CodeSpec& code, const ImpulseSettings& settings,
                                     Rng& rng);

/// Images of a codeword under the cyclic automorphisms available for the
/// code, deduplicated and sorted. Shortened codes go through their cyclic
/// parent. Throws std::invalid_argument for a non-member.
std::vector<BitWord> expand_by_automorphisms(const CodeSpec& code, const BitWord& word);

/// Number of distinct automorphism images reachable for a code of this
/// shape (n for cyclic codes, parent n for shortened ones, 1 otherwise).
std::size_t automorphism_group_order(const CodeSpec& code);

/// Image of a codeword under automorphism `index` < automorphism_group_order,
/// or nullopt when that image leaves a shortened code.
std::optional<BitWord> apply_automorphism(const CodeSpec& code, const BitWord& word,
                                          std::size_t index);

struct HarvestResult {
    HarvestLists lists;
    std::uint64_t trials_run = 0;
    std::uint64_t decoder_errors = 0;
    std::optional<WeightWindow> window;
};

/// Runs impulse trials, merging finds into `existing` (which may be empty).
/// Trial t draws from derive_seed(seed, stream_harvest, t), so results are
/// independent of thread count and a longer run extends a shorter one.
/// Every weight of a fixed window gets an entry, possibly empty.
HarvestResult harvest(const CodePtr& code, const HarvestConfig& config,
                      HarvestLists existing = {});

}  // namespace pwe

#endif  // PWE_HARVEST_HPP

// Monte Carlo BER of a decoder over BPSK/AWGN.

#ifndef PWE_SIMULATION_HPP
#define PWE_SIMULATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pwe/bounds.hpp"
#include "pwe/channel.hpp"
#include "pwe/code.hpp"
#include "pwe/decoders.hpp"

namespace pwe {

struct SimConfig {
    /// A point stops once both minimums are met (or at max_blocks).
    std::uint64_t min_bit_errors = 200;
    std::uint64_t min_blocks = 5000;
    std::uint64_t max_blocks = 10'000'000;
    std::vector<double> snr_grid_db;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::uint64_t batch_size = 2048;
    /// Replaces the Eb/N0-derived noise deviation (0 gives a noiseless channel).
    std::optional<double> sigma_override;
};

struct SimPoint {
    double ebn0_db = 0.0;
    std::uint64_t blocks = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t info_bits_per_block = 0;
    /// Stopped by max_blocks before the minimums were met.
    bool capped = false;

    double ber() const noexcept
    {
        return blocks == 0 ? 0.0
                           : static_cast<double>(bit_errors) /
                                 (static_cast<double>(blocks) * static_cast<double>(info_bits_per_block));
    }
    /// Binomial standard error of ber().
    double standard_error() const noexcept;
};

/// Block b of a point draws from derive_seed(seed, stream_simulate + point, b);
/// counts are independent of thread count.
SimPoint simulate_point(const CodeSpec& code, const DecoderKind& decoder, double ebn0_db,
                        const SimConfig& config, std::uint64_t point_index = 0);

/// One SimPoint per grid value, in grid order.
std::vector<SimPoint> simulate_points(const CodeSpec& code, const DecoderKind& decoder,
                                      const SimConfig& config);
BoundCurve simulate_curve(const CodeSpec& code, const DecoderKind& decoder, const SimConfig& config);

}  // namespace pwe

#endif  // PWE_SIMULATION_HPP

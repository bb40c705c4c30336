#include "pwe/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pwe/detail/parallel.hpp"
#include "pwe/rng.hpp"

namespace pwe {

double SimPoint::standard_error() const noexcept
{
    const double trials = static_cast<double>(blocks) * static_cast<double>(info_bits_per_block);
    if (trials == 0.0) return 0.0;
    const double p = ber();
    return std::sqrt(p * (1.0 - p) / trials);
}

namespace {

std::uint64_t block_bit_errors(const CodeSpec& code, const DecoderKind& decoder, double sigma,
                               Rng& rng)
{
    BitWord info(code.k());
    auto limbs = info.limbs();
    for (auto& l : limbs) l = rng.next();
    if (code.k() % 64 != 0) limbs.back() &= (std::uint64_t{1} << (code.k() % 64)) - 1;
    const BitWord sent = code.encode(info);
    const SoftVector r = transmit_awgn(sent, sigma, rng);
    const BitWord decided = decode(decoder, code, r);
    return (code.extract_info(decided) ^ info).weight();
}

}  // namespace

SimPoint simulate_point(const CodeSpec& code, const DecoderKind& decoder, double ebn0_db,
                        const SimConfig& config, std::uint64_t point_index)
{
    if (config.min_bit_errors == 0 || config.min_blocks == 0 || config.batch_size == 0)
        throw std::invalid_argument("simulation counts must be positive");
    if (config.max_blocks < config.min_blocks)
        throw std::invalid_argument("max_blocks must be at least min_blocks");

    const double sigma = config.sigma_override ? *config.sigma_override
                                               : noise_sigma(ebn0_db, code.rate());
    SimPoint point;
    point.ebn0_db = ebn0_db;
    point.info_bits_per_block = code.k();

    std::vector<std::uint64_t> errors;
    for (std::uint64_t start = 0; start < config.max_blocks; start += config.batch_size) {
        const std::uint64_t count = std::min(config.batch_size, config.max_blocks - start);
        errors.assign(count, 0);
        detail::parallel_for(count, config.threads, [&](std::uint64_t i) {
            Rng rng(derive_seed(config.seed, stream_simulate + point_index, start + i));
            errors[i] = block_bit_errors(code, decoder, sigma, rng);
        });
        // Counting in block order makes the stopping block independent of
        // how the batch was scheduled.
        for (auto e : errors) {
            ++point.blocks;
            point.bit_errors += e;
            if (point.blocks >= config.min_blocks && point.bit_errors >= config.min_bit_errors)
                return point;
        }
    }
    point.capped = true;
    return point;
}

std::vector<SimPoint> simulate_points(const CodeSpec& code, const DecoderKind& decoder,
                                      const SimConfig& config)
{
    std::vector<SimPoint> out;
    for (std::size_t i = 0; i < config.snr_grid_db.size(); ++i)
        out.push_back(simulate_point(code, decoder, config.snr_grid_db[i], config, i));
    return out;
}

BoundCurve simulate_curve(const CodeSpec& code, const DecoderKind& decoder, const SimConfig& config)
{
    BoundCurve c{CurveKind::simulated_ber, {}};
    for (const auto& p : simulate_points(code, decoder, config))
        c.points.push_back({p.ebn0_db, p.ber(), std::nullopt, std::nullopt});
    return c;
}

}  // namespace pwe

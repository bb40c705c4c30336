// BPSK over AWGN with unit symbol energy.

#ifndef PWE_CHANNEL_HPP
#define PWE_CHANNEL_HPP

#include <cmath>
#include <stdexcept>

#include "pwe/decoders.hpp"
#include "pwe/rng.hpp"

namespace pwe {

/// Per-dimension noise deviation: sigma^2 = 1 / (2 R Eb/N0).
inline double noise_sigma(double ebn0_db, double rate)
{
    if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("code rate must lie in (0, 1]");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

/// bpsk(codeword) + N(0, sigma^2) per coordinate.
inline SoftVector transmit_awgn(const BitWord& codeword, double sigma, Rng& rng)
{
    SoftVector r = bpsk_modulate(codeword);
    if (sigma > 0.0) {
        for (auto& x : r) x += sigma * rng.gaussian();
    }
    return r;
}

}  // namespace pwe

#endif  // PWE_CHANNEL_HPP

// Soft-decision decoders over BPSK: exhaustive maximum likelihood and
// ordered-statistics decoding of configurable order.
//
// BPSK convention everywhere: bit 0 -> +1, bit 1 -> -1.

#ifndef PWE_DECODERS_HPP
#define PWE_DECODERS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pwe/code.hpp"
#include "pwe/gf2.hpp"

namespace pwe {

/// Received channel symbols, one per code coordinate.
using SoftVector = std::vector<double>;

struct DecoderKind {
    enum class Variant { mld, osd };

    Variant variant = Variant::mld;
    std::size_t order = 0;  ///< OSD reprocessing order, unused for MLD

    static DecoderKind mld() { return {Variant::mld, 0}; }
    static DecoderKind osd(std::size_t order) { return {Variant::osd, order}; }

    /// Accepts "mld" or "osd:<order>". Throws std::invalid_argument otherwise.
    static DecoderKind parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const DecoderKind&, const DecoderKind&) = default;
};

SoftVector bpsk_modulate(const BitWord& codeword);

/// ||r - bpsk(c)||^2
double squared_distance(const BitWord& codeword, std::span<const double> r);

/// Closest codeword in Euclidean distance; ties go to the lexicographically
/// smallest codeword. Requires k <= exhaustive_k_limit().
BitWord mld_decode(const CodeSpec& code, std::span<const double> r);

/// Ordered-statistics decoding. Ties go to the error pattern enumerated
/// first (increasing weight, then lexicographic over most-reliable-basis
/// positions in reliability order).
BitWord osd_decode(const CodeSpec& code, std::span<const double> r, std::size_t order);

BitWord decode(const DecoderKind& kind, const CodeSpec& code, std::span<const double> r);

}  // namespace pwe

#endif  // PWE_DECODERS_HPP

// Binary linear block codes: construction, encoding, membership and
// exhaustive weight distributions.

#ifndef PWE_CODE_HPP
#define PWE_CODE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pwe/gf2.hpp"

namespace pwe {

class CodeSpec;

/// Link from a shortened code back to its cyclic parent.
struct ShortenedFrom {
    std::shared_ptr<const CodeSpec> parent;
    /// Parent coordinates deleted by shortening, sorted ascending.
    std::vector<std::size_t> removed;
};

struct CodeOptions {
    std::optional<GF2Poly> generator_poly;
    bool is_cyclic = false;
    std::optional<std::size_t> d_known;
    std::optional<ShortenedFrom> parent;
};

/// A binary linear [n, k] code. Immutable after construction.
///
/// Besides the generator matrix given at construction, the code keeps a
/// systematic basis in the original coordinates: row i has a 1 at
/// information position i and zeros at every other information position.
class CodeSpec {
public:
    using Options = CodeOptions;

    /// Throws std::invalid_argument when the generator is rank deficient.
    CodeSpec(std::string name, GF2Matrix generator, Options options = {});

    const std::string& name() const noexcept { return name_; }
    std::size_t n() const noexcept { return generator_.cols(); }
    std::size_t k() const noexcept { return generator_.rows(); }
    double rate() const noexcept { return static_cast<double>(k()) / static_cast<double>(n()); }
    std::optional<std::size_t> d_known() const noexcept { return d_known_; }
    bool is_cyclic() const noexcept { return is_cyclic_; }

    const GF2Matrix& generator() const noexcept { return generator_; }
    const std::optional<GF2Poly>& generator_poly() const noexcept { return generator_poly_; }
    const std::optional<ShortenedFrom>& parent() const noexcept { return parent_; }

    const GF2Matrix& systematic() const noexcept { return systematic_; }
    const std::vector<std::size_t>& info_positions() const noexcept { return info_positions_; }
    /// Parity-check matrix in the original coordinates.
    const GF2Matrix& parity_check() const noexcept { return parity_check_; }

    /// Systematic encoding: info bit i lands on info_positions()[i].
    BitWord encode(const BitWord& info) const;
    /// Information bits read back from a codeword's information positions.
    BitWord extract_info(const BitWord& codeword) const;
    bool contains(const BitWord& word) const;

    /// Inserts zeros at the removed coordinates (shortened codes only).
    BitWord lift_to_parent(const BitWord& word) const;
    /// Drops the removed coordinates of a parent word; nullopt when any of
    /// them is nonzero.
    std::optional<BitWord> project_from_parent(const BitWord& parent_word) const;

    CodeSpec renamed(std::string name) const;

private:
    std::string name_;
    GF2Matrix generator_;
    std::optional<GF2Poly> generator_poly_;
    bool is_cyclic_ = false;
    std::optional<std::size_t> d_known_;
    std::optional<ShortenedFrom> parent_;

    GF2Matrix systematic_;
    std::vector<std::size_t> info_positions_;
    GF2Matrix parity_check_;
    std::vector<std::size_t> kept_parent_coordinates_;
};

using CodePtr = std::shared_ptr<const CodeSpec>;

/// A_w indexed by weight, size n + 1.
struct WeightDistribution {
    std::vector<std::uint64_t> counts;
    /// False when enumeration was truncated at a maximum weight.
    bool complete = true;

    std::uint64_t operator[](std::size_t w) const { return w < counts.size() ? counts[w] : 0; }
    std::vector<std::size_t> nonzero_weights() const;
    std::uint64_t total() const;
};

/// Row i of the generator is the coefficient vector of x^i g(x).
/// Throws when g does not divide x^n + 1 or degree(g) >= n.
CodeSpec cyclic_code(std::string name, const GF2Poly& g, std::size_t n);
/// Restricts message degree to k - s and deletes the top s coordinates.
CodeSpec shorten(std::string name, const CodePtr& parent, std::size_t s);
CodeSpec extend_with_parity(std::string name, const CodeSpec& code);

/// Generator polynomial of the binary quadratic-residue code of prime length p.
GF2Poly qr_generator_polynomial(std::size_t p);

/// Exhaustive-enumeration ceiling on k. Reads PWE_EXHAUSTIVE_K_LIMIT when
/// set, otherwise 26.
std::size_t exhaustive_k_limit();

/// Gray-code traversal of all 2^k codewords. Weights above max_weight are
/// not counted. Throws std::invalid_argument when k exceeds the limit.
WeightDistribution exact_weight_distribution(const CodeSpec& code,
                                             std::optional<std::size_t> max_weight = {},
                                             unsigned threads = 0);

/// All codewords of weight w, in Gray-code visiting order.
std::vector<BitWord> enumerate_weight_class(const CodeSpec& code, std::size_t w);

// Catalog ------------------------------------------------------------------

std::vector<std::string> catalog_names();
/// Throws std::out_of_range for an unknown name.
CodePtr catalog_code(const std::string& name);

/// Exponents of the generator polynomials listed with the codes.
namespace generators {
std::vector<std::size_t> bch_127_50();
std::vector<std::size_t> bch_255_191();
std::vector<std::size_t> bch_127_71();
std::vector<std::size_t> bch_63_39();
}  // namespace generators

}  // namespace pwe

#endif  // PWE_CODE_HPP

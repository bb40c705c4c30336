// Bit-packed words, polynomials and matrices over GF(2).
//
// Bit index i of a BitWord is the coefficient of x^i (LSB-first). The same
// convention is used for polynomial coefficients, matrix rows and the hex
// serialization, so no transposition ever happens between modules.

#ifndef PWE_GF2_HPP
#define PWE_GF2_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pwe {

/// Fixed-length bit string packed into 64-bit limbs.
class BitWord {
public:
    using limb_type = std::uint64_t;
    static constexpr std::size_t limb_bits = 64;

    BitWord() = default;
    explicit BitWord(std::size_t length);

    static BitWord from_positions(std::size_t length, std::span<const std::size_t> positions);
    static BitWord from_positions(std::size_t length, std::initializer_list<std::size_t> positions);
    /// Parses the list-file hex form (most significant digit first, bit i of
    /// the value is bit i of the word).
    static BitWord from_hex(std::size_t length, std::string_view hex);

    std::size_t size() const noexcept { return length_; }
    std::size_t limb_count() const noexcept { return limbs_.size(); }

    bool test(std::size_t i) const;
    void set(std::size_t i, bool value = true);
    void flip(std::size_t i);

    std::size_t weight() const noexcept;
    bool none() const noexcept;
    std::vector<std::size_t> support() const;

    /// Cyclic shift: bit i moves to position (i + shift) mod size().
    BitWord rotated(std::size_t shift) const;

    std::string to_hex() const;
    std::size_t hash() const noexcept;

    std::span<const limb_type> limbs() const noexcept { return limbs_; }
    std::span<limb_type> limbs() noexcept { return limbs_; }

    BitWord& operator^=(const BitWord& other);
    BitWord& operator&=(const BitWord& other);

    friend BitWord operator^(BitWord a, const BitWord& b) { return a ^= b; }
    friend BitWord operator&(BitWord a, const BitWord& b) { return a &= b; }
    friend bool operator==(const BitWord& a, const BitWord& b) = default;

    /// Lexicographic bit order: the first differing index decides and the
    /// word holding 0 there is the smaller one. Shorter words sort first.
    friend std::strong_ordering operator<=>(const BitWord& a, const BitWord& b) noexcept;

private:
    void check_same_length(const BitWord& other) const;

    std::size_t length_ = 0;
    std::vector<limb_type> limbs_;
};

struct BitWordHash {
    std::size_t operator()(const BitWord& w) const noexcept { return w.hash(); }
};

/// Polynomial over GF(2). The zero polynomial has no degree.
class GF2Poly {
public:
    GF2Poly() = default;
    explicit GF2Poly(BitWord coefficients);

    static GF2Poly from_exponents(std::span<const std::size_t> exponents);
    static GF2Poly from_exponents(std::initializer_list<std::size_t> exponents);
    static GF2Poly monomial(std::size_t degree);
    static GF2Poly one() { return monomial(0); }
    /// x^n + 1 (equal to x^n - 1 in characteristic two).
    static GF2Poly x_pow_n_plus_one(std::size_t n);

    std::optional<std::size_t> degree() const noexcept { return degree_; }
    bool is_zero() const noexcept { return !degree_.has_value(); }
    bool coefficient(std::size_t i) const noexcept;
    std::vector<std::size_t> exponents() const;
    /// Coefficients as a BitWord of the requested length (must exceed degree).
    BitWord coefficients(std::size_t length) const;

    GF2Poly& operator+=(const GF2Poly& other);
    friend GF2Poly operator+(GF2Poly a, const GF2Poly& b) { return a += b; }
    friend bool operator==(const GF2Poly& a, const GF2Poly& b) = default;

    std::span<const std::uint64_t> limbs() const noexcept { return limbs_; }

private:
    void trim();

    std::vector<std::uint64_t> limbs_;
    std::optional<std::size_t> degree_;
};

struct PolyDivision {
    GF2Poly quotient;
    GF2Poly remainder;
};

GF2Poly poly_mul(const GF2Poly& a, const GF2Poly& b);
PolyDivision poly_divmod(const GF2Poly& a, const GF2Poly& b);
GF2Poly poly_gcd(GF2Poly a, GF2Poly b);

/// Dense GF(2) matrix stored as packed rows.
class GF2Matrix {
public:
    GF2Matrix() = default;
    explicit GF2Matrix(std::size_t ncols) : ncols_(ncols) {}
    GF2Matrix(std::size_t nrows, std::size_t ncols);
    GF2Matrix(std::vector<BitWord> rows, std::size_t ncols);

    static GF2Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return ncols_; }

    const BitWord& row(std::size_t i) const { return rows_.at(i); }
    BitWord& row(std::size_t i) { return rows_.at(i); }
    std::span<const BitWord> row_span() const noexcept { return rows_; }

    bool get(std::size_t r, std::size_t c) const { return rows_.at(r).test(c); }
    void set(std::size_t r, std::size_t c, bool value = true) { rows_.at(r).set(c, value); }

    void append_row(BitWord row);
    GF2Matrix transposed() const;

    /// Returns word * this^T, i.e. the parity of word AND row_i for each row.
    BitWord multiply_transposed(const BitWord& word) const;

    friend bool operator==(const GF2Matrix& a, const GF2Matrix& b) = default;

private:
    std::size_t ncols_ = 0;
    std::vector<BitWord> rows_;
};

struct RowEchelon {
    GF2Matrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
};

/// Reduced row-echelon form. Pivots are taken at the lowest column index
/// possible, always from the lowest-index candidate row.
RowEchelon rref(const GF2Matrix& m);

/// perm[j] is the source column placed at position j.
using ColumnPermutation = std::vector<std::size_t>;

struct SystematicForm {
    GF2Matrix generator;  ///< [I_k | P] in permuted coordinates
    ColumnPermutation permutation;
};

/// Brings a full-rank generator matrix to [I_k | P] by moving pivot columns
/// first. Throws std::invalid_argument on rank deficiency.
SystematicForm systematic_form(const GF2Matrix& g);

/// H = [P^T | I_{n-k}] for G = [I_k | P]. Throws if G is not systematic.
GF2Matrix parity_check_from_generator(const GF2Matrix& g_sys);

/// out[j] = word[perm[j]]
BitWord permute_columns(const BitWord& word, const ColumnPermutation& perm);
/// Undoes permute_columns: out[perm[j]] = word[j]
BitWord unpermute_columns(const BitWord& word, const ColumnPermutation& perm);

}  // namespace pwe

#endif  // PWE_GF2_HPP

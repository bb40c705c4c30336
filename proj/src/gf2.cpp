#include "pwe/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace pwe {

namespace {

constexpr std::size_t limbs_for(std::size_t bits) { return (bits + 63) / 64; }

std::size_t limb_vector_degree(const std::vector<std::uint64_t>& v)
{
    for (std::size_t i = v.size(); i-- > 0;) {
        if (v[i] != 0) return i * 64 + 63 - static_cast<std::size_t>(std::countl_zero(v[i]));
    }
    return 0;
}

// dst ^= src << shift, growing dst as needed.
void xor_shifted(std::vector<std::uint64_t>& dst, std::span<const std::uint64_t> src,
                 std::size_t shift)
{
    const std::size_t limb_shift = shift / 64;
    const std::size_t bit_shift = shift % 64;
    const std::size_t needed = src.size() + limb_shift + 1;
    if (dst.size() < needed) dst.resize(needed, 0);
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i + limb_shift] ^= src[i] << bit_shift;
        if (bit_shift != 0) dst[i + limb_shift + 1] ^= src[i] >> (64 - bit_shift);
    }
}

GF2Poly poly_from_limbs(const std::vector<std::uint64_t>& limbs)
{
    BitWord w(limbs.size() * 64);
    std::copy(limbs.begin(), limbs.end(), w.limbs().begin());
    return GF2Poly(std::move(w));
}

int hex_value(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

// ---------------------------------------------------------------------------
// BitWord

BitWord::BitWord(std::size_t length) : length_(length), limbs_(limbs_for(length), 0) {}

BitWord BitWord::from_positions(std::size_t length, std::span<const std::size_t> positions)
{
    BitWord w(length);
    for (auto p : positions) w.set(p);
    return w;
}

BitWord BitWord::from_positions(std::size_t length, std::initializer_list<std::size_t> positions)
{
    return from_positions(length, std::span<const std::size_t>(positions.begin(), positions.size()));
}

BitWord BitWord::from_hex(std::size_t length, std::string_view hex)
{
    const std::size_t digits = (length + 3) / 4;
    if (hex.size() != digits)
        throw std::invalid_argument("hex word has " + std::to_string(hex.size()) +
                                    " digits, expected " + std::to_string(digits));
    BitWord w(length);
    for (std::size_t d = 0; d < digits; ++d) {
        const int v = hex_value(hex[digits - 1 - d]);
        if (v < 0) throw std::invalid_argument("invalid hex digit in word");
        for (std::size_t b = 0; b < 4; ++b) {
            if (((v >> b) & 1) == 0) continue;
            const std::size_t i = d * 4 + b;
            if (i >= length) throw std::invalid_argument("hex word sets a bit beyond its length");
            w.set(i);
        }
    }
    return w;
}

bool BitWord::test(std::size_t i) const
{
    if (i >= length_) throw std::out_of_range("BitWord index out of range");
    return (limbs_[i / 64] >> (i % 64)) & 1U;
}

void BitWord::set(std::size_t i, bool value)
{
    if (i >= length_) throw std::out_of_range("BitWord index out of range");
    const limb_type mask = limb_type{1} << (i % 64);
    if (value)
        limbs_[i / 64] |= mask;
    else
        limbs_[i / 64] &= ~mask;
}

void BitWord::flip(std::size_t i)
{
    if (i >= length_) throw std::out_of_range("BitWord index out of range");
    limbs_[i / 64] ^= limb_type{1} << (i % 64);
}

std::size_t BitWord::weight() const noexcept
{
    std::size_t w = 0;
    for (auto l : limbs_) w += static_cast<std::size_t>(std::popcount(l));
    return w;
}

bool BitWord::none() const noexcept
{
    return std::all_of(limbs_.begin(), limbs_.end(), [](limb_type l) { return l == 0; });
}

std::vector<std::size_t> BitWord::support() const
{
    std::vector<std::size_t> out;
    for (std::size_t li = 0; li < limbs_.size(); ++li) {
        for (limb_type l = limbs_[li]; l != 0; l &= l - 1)
            out.push_back(li * 64 + static_cast<std::size_t>(std::countr_zero(l)));
    }
    return out;
}

BitWord BitWord::rotated(std::size_t shift) const
{
    BitWord out(length_);
    if (length_ == 0) return out;
    shift %= length_;
    for (std::size_t li = 0; li < limbs_.size(); ++li) {
        for (limb_type l = limbs_[li]; l != 0; l &= l - 1) {
            std::size_t i = li * 64 + static_cast<std::size_t>(std::countr_zero(l)) + shift;
            if (i >= length_) i -= length_;
            out.limbs_[i / 64] |= limb_type{1} << (i % 64);
        }
    }
    return out;
}

std::string BitWord::to_hex() const
{
    static constexpr char digits_table[] = "0123456789abcdef";
    const std::size_t digits = (length_ + 3) / 4;
    std::string out(digits, '0');
    for (std::size_t d = 0; d < digits; ++d) {
        const std::size_t bit = d * 4;
        const unsigned v = static_cast<unsigned>((limbs_[bit / 64] >> (bit % 64)) & 0xF);
        out[digits - 1 - d] = digits_table[v];
    }
    return out;
}

std::size_t BitWord::hash() const noexcept
{
    std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ length_;
    for (auto l : limbs_) {
        h ^= l + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        h *= 0xBF58476D1CE4E5B9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
}

void BitWord::check_same_length(const BitWord& other) const
{
    if (length_ != other.length_) throw std::invalid_argument("BitWord length mismatch");
}

BitWord& BitWord::operator^=(const BitWord& other)
{
    check_same_length(other);
    for (std::size_t i = 0; i < limbs_.size(); ++i) limbs_[i] ^= other.limbs_[i];
    return *this;
}

BitWord& BitWord::operator&=(const BitWord& other)
{
    check_same_length(other);
    for (std::size_t i = 0; i < limbs_.size(); ++i) limbs_[i] &= other.limbs_[i];
    return *this;
}

std::strong_ordering operator<=>(const BitWord& a, const BitWord& b) noexcept
{
    if (a.length_ != b.length_) return a.length_ <=> b.length_;
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        const auto diff = a.limbs_[i] ^ b.limbs_[i];
        if (diff == 0) continue;
        const auto low = diff & (~diff + 1);
        return (a.limbs_[i] & low) ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// GF2Poly

GF2Poly::GF2Poly(BitWord coefficients)
    : limbs_(coefficients.limbs().begin(), coefficients.limbs().end())
{
    trim();
}

GF2Poly GF2Poly::from_exponents(std::span<const std::size_t> exponents)
{
    GF2Poly p;
    for (auto e : exponents) {
        if (p.limbs_.size() <= e / 64) p.limbs_.resize(e / 64 + 1, 0);
        p.limbs_[e / 64] ^= std::uint64_t{1} << (e % 64);
    }
    p.trim();
    return p;
}

GF2Poly GF2Poly::from_exponents(std::initializer_list<std::size_t> exponents)
{
    return from_exponents(std::span<const std::size_t>(exponents.begin(), exponents.size()));
}

GF2Poly GF2Poly::monomial(std::size_t degree) { return from_exponents({degree}); }

GF2Poly GF2Poly::x_pow_n_plus_one(std::size_t n)
{
    if (n == 0) return GF2Poly{};
    return from_exponents({0, n});
}

bool GF2Poly::coefficient(std::size_t i) const noexcept
{
    if (i / 64 >= limbs_.size()) return false;
    return (limbs_[i / 64] >> (i % 64)) & 1U;
}

std::vector<std::size_t> GF2Poly::exponents() const
{
    std::vector<std::size_t> out;
    for (std::size_t li = 0; li < limbs_.size(); ++li) {
        for (auto l = limbs_[li]; l != 0; l &= l - 1)
            out.push_back(li * 64 + static_cast<std::size_t>(std::countr_zero(l)));
    }
    return out;
}

BitWord GF2Poly::coefficients(std::size_t length) const
{
    if (degree_ && *degree_ >= length)
        throw std::invalid_argument("polynomial degree does not fit the requested length");
    BitWord w(length);
    for (auto e : exponents()) w.set(e);
    return w;
}

GF2Poly& GF2Poly::operator+=(const GF2Poly& other)
{
    if (limbs_.size() < other.limbs_.size()) limbs_.resize(other.limbs_.size(), 0);
    for (std::size_t i = 0; i < other.limbs_.size(); ++i) limbs_[i] ^= other.limbs_[i];
    trim();
    return *this;
}

void GF2Poly::trim()
{
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty())
        degree_.reset();
    else
        degree_ = limb_vector_degree(limbs_);
}

GF2Poly poly_mul(const GF2Poly& a, const GF2Poly& b)
{
    if (a.is_zero() || b.is_zero()) return GF2Poly{};
    std::vector<std::uint64_t> acc;
    for (auto e : a.exponents()) xor_shifted(acc, b.limbs(), e);
    return poly_from_limbs(acc);
}

PolyDivision poly_divmod(const GF2Poly& a, const GF2Poly& b)
{
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const std::size_t db = *b.degree();
    std::vector<std::uint64_t> rem(a.limbs().begin(), a.limbs().end());
    std::vector<std::size_t> quotient_exponents;
    while (true) {
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (rem.empty()) break;
        const std::size_t dr = limb_vector_degree(rem);
        if (dr < db) break;
        quotient_exponents.push_back(dr - db);
        xor_shifted(rem, b.limbs(), dr - db);
    }
    return {GF2Poly::from_exponents(quotient_exponents), poly_from_limbs(rem)};
}

GF2Poly poly_gcd(GF2Poly a, GF2Poly b)
{
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
    while (!b.is_zero()) {
        auto r = poly_divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// ---------------------------------------------------------------------------
// GF2Matrix

GF2Matrix::GF2Matrix(std::size_t nrows, std::size_t ncols)
    : ncols_(ncols), rows_(nrows, BitWord(ncols))
{
}

GF2Matrix::GF2Matrix(std::vector<BitWord> rows, std::size_t ncols)
    : ncols_(ncols), rows_(std::move(rows))
{
    for (const auto& r : rows_) {
        if (r.size() != ncols_) throw std::invalid_argument("matrix row length mismatch");
    }
}

GF2Matrix GF2Matrix::identity(std::size_t n)
{
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

void GF2Matrix::append_row(BitWord row)
{
    if (row.size() != ncols_) throw std::invalid_argument("matrix row length mismatch");
    rows_.push_back(std::move(row));
}

GF2Matrix GF2Matrix::transposed() const
{
    GF2Matrix t(ncols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (auto c : rows_[r].support()) t.set(c, r);
    }
    return t;
}

BitWord GF2Matrix::multiply_transposed(const BitWord& word) const
{
    if (word.size() != ncols_) throw std::invalid_argument("vector length does not match columns");
    BitWord out(rows_.size());
    const auto w = word.limbs();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const auto row_limbs = rows_[r].limbs();
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w.size(); ++i) acc ^= w[i] & row_limbs[i];
        if (std::popcount(acc) & 1) out.set(r);
    }
    return out;
}

RowEchelon rref(const GF2Matrix& m)
{
    RowEchelon out{m, 0, {}};
    auto& a = out.reduced;
    const std::size_t nrows = a.rows();
    for (std::size_t col = 0; col < a.cols() && out.rank < nrows; ++col) {
        std::size_t pivot = out.rank;
        while (pivot < nrows && !a.row(pivot).test(col)) ++pivot;
        if (pivot == nrows) continue;
        std::swap(a.row(out.rank), a.row(pivot));
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r != out.rank && a.row(r).test(col)) a.row(r) ^= a.row(out.rank);
        }
        out.pivot_columns.push_back(col);
        ++out.rank;
    }
    return out;
}

SystematicForm systematic_form(const GF2Matrix& g)
{
    auto ech = rref(g);
    if (ech.rank != g.rows()) throw std::invalid_argument("generator matrix is rank deficient");

    ColumnPermutation perm = ech.pivot_columns;
    std::vector<bool> is_pivot(g.cols(), false);
    for (auto c : ech.pivot_columns) is_pivot[c] = true;
    for (std::size_t c = 0; c < g.cols(); ++c) {
        if (!is_pivot[c]) perm.push_back(c);
    }

    GF2Matrix sys(g.cols());
    for (std::size_t r = 0; r < ech.reduced.rows(); ++r)
        sys.append_row(permute_columns(ech.reduced.row(r), perm));
    return {std::move(sys), std::move(perm)};
}

GF2Matrix parity_check_from_generator(const GF2Matrix& g_sys)
{
    const std::size_t k = g_sys.rows();
    const std::size_t n = g_sys.cols();
    if (k > n) throw std::invalid_argument("generator has more rows than columns");
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) {
            if (g_sys.get(r, c) != (r == c))
                throw std::invalid_argument("generator matrix is not in [I | P] form");
        }
    }
    GF2Matrix h(n - k, n);
    for (std::size_t j = 0; j < n - k; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            if (g_sys.get(i, k + j)) h.set(j, i);
        }
        h.set(j, k + j);
    }
    return h;
}

BitWord permute_columns(const BitWord& word, const ColumnPermutation& perm)
{
    if (perm.size() != word.size()) throw std::invalid_argument("permutation length mismatch");
    BitWord out(word.size());
    for (std::size_t j = 0; j < perm.size(); ++j) {
        if (word.test(perm[j])) out.set(j);
    }
    return out;
}

BitWord unpermute_columns(const BitWord& word, const ColumnPermutation& perm)
{
    if (perm.size() != word.size()) throw std::invalid_argument("permutation length mismatch");
    BitWord out(word.size());
    for (std::size_t j = 0; j < perm.size(); ++j) {
        if (word.test(j)) out.set(perm[j]);
    }
    return out;
}

}  // namespace pwe

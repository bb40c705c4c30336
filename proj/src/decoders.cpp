#include "pwe/decoders.hpp"

#include "pwe/detail/gray_walk.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pwe {

namespace {

// Sum of r_i over the support of a packed word, via one 256-entry table per
// byte of the word. Minimizing this sum is the same as minimizing Euclidean
// distance: ||r - s||^2 = ||r||^2 + n - 2 sum(r) + 4 S(c).
class SupportSum {
public:
    explicit SupportSum(std::span<const double> r)
        : chunks_((r.size() + 7) / 8), table_(chunks_ * 256, 0.0)
    {
        for (std::size_t c = 0; c < chunks_; ++c) {
            double* t = table_.data() + c * 256;
            for (unsigned b = 1; b < 256; ++b) {
                const unsigned low = static_cast<unsigned>(std::countr_zero(b));
                const std::size_t i = c * 8 + low;
                t[b] = t[b & (b - 1)] + (i < r.size() ? r[i] : 0.0);
            }
        }
    }

    double operator()(const std::uint64_t* limbs) const noexcept
    {
        double s = 0.0;
        const double* t = table_.data();
        for (std::size_t c = 0; c < chunks_; ++c) {
            const auto byte = static_cast<std::size_t>((limbs[c / 8] >> (8 * (c % 8))) & 0xFF);
            s += t[c * 256 + byte];
        }
        return s;
    }

private:
    std::size_t chunks_;
    std::vector<double> table_;
};

bool limbs_less(const std::uint64_t* a, const std::uint64_t* b, std::size_t nl)
{
    for (std::size_t l = 0; l < nl; ++l) {
        const auto diff = a[l] ^ b[l];
        if (diff == 0) continue;
        const auto low = diff & (~diff + 1);
        return (a[l] & low) == 0;
    }
    return false;
}

void check_length(const CodeSpec& code, std::span<const double> r)
{
    if (r.size() != code.n())
        throw std::invalid_argument("soft vector has length " + std::to_string(r.size()) +
                                    ", code length is " + std::to_string(code.n()));
}

BitWord from_limbs(std::size_t n, std::span<const std::uint64_t> limbs)
{
    BitWord w(n);
    std::copy(limbs.begin(), limbs.end(), w.limbs().begin());
    return w;
}

}  // namespace

DecoderKind DecoderKind::parse(std::string_view text)
{
    if (text == "mld") return mld();
    if (text.starts_with("osd:")) {
        const auto digits = text.substr(4);
        std::size_t order = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty())
            return osd(order);
    }
    throw std::invalid_argument("unknown decoder '" + std::string(text) +
                                "' (expected 'mld' or 'osd:<order>')");
}

std::string DecoderKind::to_string() const
{
    switch (variant) {
        case Variant::mld: return "mld";
        case Variant::osd: return "osd:" + std::to_string(order);
    }
    throw std::invalid_argument("unknown decoder variant");
}

SoftVector bpsk_modulate(const BitWord& codeword)
{
    SoftVector s(codeword.size(), 1.0);
    for (auto i : codeword.support()) s[i] = -1.0;
    return s;
}

double squared_distance(const BitWord& codeword, std::span<const double> r)
{
    if (codeword.size() != r.size()) throw std::invalid_argument("length mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double s = codeword.test(i) ? -1.0 : 1.0;
        d += (r[i] - s) * (r[i] - s);
    }
    return d;
}

BitWord mld_decode(const CodeSpec& code, std::span<const double> r)
{
    check_length(code, r);
    if (code.k() > exhaustive_k_limit())
        throw std::invalid_argument("MLD of " + code.name() + " needs k = " +
                                    std::to_string(code.k()) + " above the exhaustive limit");
    const std::size_t nl = (code.n() + 63) / 64;
    const auto rows = detail::flatten_rows(code.systematic());
    const SupportSum score(r);

    std::vector<std::uint64_t> best(nl, 0);
    double best_score = 0.0;
    bool first = true;
    detail::gray_walk_dispatch(rows, nl, 0, std::uint64_t{1} << code.k(),
                               [&](const std::uint64_t* cw) {
                                   const double s = score(cw);
                                   if (first || s < best_score ||
                                       (s == best_score && limbs_less(cw, best.data(), nl))) {
                                       first = false;
                                       best_score = s;
                                       std::copy(cw, cw + nl, best.begin());
                                   }
                               });
    return from_limbs(code.n(), best);
}

namespace {

struct PatternSearch {
    const std::vector<std::uint64_t>& basis;  // k rows in MRB order
    std::size_t nl;
    std::size_t k;
    const SupportSum& score;
    std::vector<std::uint64_t> best;
    double best_score;

    // Extends the current candidate with `remaining` more rows chosen from
    // indices >= start, in lexicographic order.
    void descend(std::vector<std::uint64_t>& cur, std::size_t start, std::size_t remaining,
                 std::size_t depth)
    {
        auto* level = cur.data() + depth * nl;
        for (std::size_t j = start; j + remaining <= k; ++j) {
            auto* next = level + nl;
            const auto* row = basis.data() + j * nl;
            for (std::size_t l = 0; l < nl; ++l) next[l] = level[l] ^ row[l];
            if (remaining == 1) {
                const double s = score(next);
                if (s < best_score) {
                    best_score = s;
                    std::copy(next, next + nl, best.begin());
                }
            } else {
                descend(cur, j + 1, remaining - 1, depth + 1);
            }
        }
    }
};

}  // namespace

BitWord osd_decode(const CodeSpec& code, std::span<const double> r, std::size_t order)
{
    check_length(code, r);
    const std::size_t n = code.n();
    const std::size_t k = code.k();
    if (order > k)
        throw std::invalid_argument("OSD order " + std::to_string(order) + " exceeds k = " +
                                    std::to_string(k));
    const std::size_t nl = (n + 63) / 64;

    std::vector<std::size_t> by_reliability(n);
    std::iota(by_reliability.begin(), by_reliability.end(), std::size_t{0});
    std::stable_sort(by_reliability.begin(), by_reliability.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(r[a]) > std::abs(r[b]); });

    // Reduce the generator over columns in reliability order; a column that
    // is dependent on earlier ones is skipped, which swaps in the next one.
    auto rows = detail::flatten_rows(code.systematic());
    std::vector<std::size_t> pivots;
    pivots.reserve(k);
    for (std::size_t t = 0; t < n && pivots.size() < k; ++t) {
        const std::size_t col = by_reliability[t];
        const std::size_t limb = col / 64;
        const std::uint64_t mask = std::uint64_t{1} << (col % 64);
        const std::size_t rank = pivots.size();
        std::size_t p = rank;
        while (p < k && (rows[p * nl + limb] & mask) == 0) ++p;
        if (p == k) continue;
        if (p != rank) {
            std::swap_ranges(rows.begin() + static_cast<std::ptrdiff_t>(p * nl),
                             rows.begin() + static_cast<std::ptrdiff_t>((p + 1) * nl),
                             rows.begin() + static_cast<std::ptrdiff_t>(rank * nl));
        }
        const auto* prow = rows.data() + rank * nl;
        for (std::size_t q = 0; q < k; ++q) {
            if (q == rank || (rows[q * nl + limb] & mask) == 0) continue;
            auto* qrow = rows.data() + q * nl;
            for (std::size_t l = 0; l < nl; ++l) qrow[l] ^= prow[l];
        }
        pivots.push_back(col);
    }

    // Hard decisions on the most reliable basis.
    std::vector<std::uint64_t> levels((order + 1) * nl, 0);
    for (std::size_t j = 0; j < k; ++j) {
        if (r[pivots[j]] < 0.0) {
            for (std::size_t l = 0; l < nl; ++l) levels[l] ^= rows[j * nl + l];
        }
    }

    const SupportSum score(r);
    PatternSearch search{rows, nl, k, score,
                         std::vector<std::uint64_t>(levels.begin(), levels.begin() + static_cast<std::ptrdiff_t>(nl)),
                         score(levels.data())};
    for (std::size_t w = 1; w <= order; ++w) search.descend(levels, 0, w, 0);
    return from_limbs(n, search.best);
}

BitWord decode(const DecoderKind& kind, const CodeSpec& code, std::span<const double> r)
{
    switch (kind.variant) {
        case DecoderKind::Variant::mld: return mld_decode(code, r);
        case DecoderKind::Variant::osd: return osd_decode(code, r, kind.order);
    }
    throw std::invalid_argument("unknown decoder variant");
}

}  // namespace pwe

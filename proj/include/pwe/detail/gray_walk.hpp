// Gray-code traversal of a code's span. Internal to the library.

#ifndef PWE_DETAIL_GRAY_WALK_HPP
#define PWE_DETAIL_GRAY_WALK_HPP

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pwe/gf2.hpp"

namespace pwe::detail {

/// Row-major copy of a matrix's limbs.
inline std::vector<std::uint64_t> flatten_rows(const GF2Matrix& m)
{
    const std::size_t limbs = (m.cols() + 63) / 64;
    std::vector<std::uint64_t> flat;
    flat.reserve(m.rows() * limbs);
    for (const auto& r : m.row_span()) flat.insert(flat.end(), r.limbs().begin(), r.limbs().end());
    return flat;
}

// Visits Gray-code indices [begin, end) of the span of `rows`, calling
// visit(const uint64_t*) once per codeword. Step i flips row ctz(i).
// L != 0 fixes the limb count at compile time.
template <std::size_t L, typename Visit>
void gray_walk(const std::vector<std::uint64_t>& rows, std::size_t limbs, std::uint64_t begin,
               std::uint64_t end, Visit&& visit)
{
    const std::size_t nl = L != 0 ? L : limbs;
    std::array<std::uint64_t, L != 0 ? L : 1> fixed{};
    std::vector<std::uint64_t> dynamic(L != 0 ? 0 : nl, 0);
    std::uint64_t* cur = L != 0 ? fixed.data() : dynamic.data();

    const std::uint64_t g0 = begin ^ (begin >> 1);
    for (std::uint64_t bits = g0; bits != 0; bits &= bits - 1) {
        const auto r = static_cast<std::size_t>(std::countr_zero(bits));
        for (std::size_t l = 0; l < nl; ++l) cur[l] ^= rows[r * nl + l];
    }
    if (begin >= end) return;
    visit(static_cast<const std::uint64_t*>(cur));
    for (std::uint64_t i = begin + 1; i < end; ++i) {
        const auto r = static_cast<std::size_t>(std::countr_zero(i));
        const std::uint64_t* row = rows.data() + r * nl;
        for (std::size_t l = 0; l < nl; ++l) cur[l] ^= row[l];
        visit(static_cast<const std::uint64_t*>(cur));
    }
}

template <typename Visit>
void gray_walk_dispatch(const std::vector<std::uint64_t>& rows, std::size_t limbs,
                        std::uint64_t begin, std::uint64_t end, Visit&& visit)
{
    switch (limbs) {
        case 1: gray_walk<1>(rows, limbs, begin, end, visit); break;
        case 2: gray_walk<2>(rows, limbs, begin, end, visit); break;
        case 3: gray_walk<3>(rows, limbs, begin, end, visit); break;
        case 4: gray_walk<4>(rows, limbs, begin, end, visit); break;
        default: gray_walk<0>(rows, limbs, begin, end, visit); break;
    }
}

}  // namespace pwe::detail

#endif  // PWE_DETAIL_GRAY_WALK_HPP

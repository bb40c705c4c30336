// Partial weight enumerator: the first few nonzero weight classes of a
// code, each with a point estimate and a confidence interval.

#ifndef PWE_PARTIAL_ENUMERATOR_HPP
#define PWE_PARTIAL_ENUMERATOR_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pwe {

struct PweEntry {
    std::size_t w = 0;
    std::uint64_t count_estimate = 0;
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    bool complete = false;
};

struct PartialWeightEnumerator {
    std::string code_name;
    /// Strictly increasing in w.
    std::vector<PweEntry> entries;

    /// Number of nonzero weight classes tracked.
    std::size_t radius() const noexcept { return entries.size(); }
};

}  // namespace pwe

#endif  // PWE_PARTIAL_ENUMERATOR_HPP

// Acceptance suite shared by the `validate` command and the ctest target.

#ifndef PWE_VALIDATION_HPP
#define PWE_VALIDATION_HPP

#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace pwe::validation {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    /// Criteria to run; empty runs all of them.
    std::set<int> only;
    unsigned threads = 0;
    /// Per-criterion progress notes.
    bool verbose = false;
};

/// Reference values for criterion 3: (mu, beta).
struct BetaReference {
    double mu;
    double beta;
};
extern const std::vector<BetaReference> beta_reference_table;

/// Runs the selected criteria, printing one PASS/FAIL line per criterion.
std::vector<CriterionResult> run_acceptance(const Options& options, std::ostream& out);

/// Number of criteria in the suite.
int criterion_count();

/// Wall-clock timings of harvest plus estimation for light classes of two
/// codes, printed next to reference run times.
void run_timing_table(const Options& options, std::ostream& out);

}  // namespace pwe::validation

#endif  // PWE_VALIDATION_HPP

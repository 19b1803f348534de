#ifndef FPROC_ENUMERATION_HPP
#define FPROC_ENUMERATION_HPP

#include "fproc/process.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fproc {

/// Default cap on the number of argument tuples a single law check may
/// evaluate. Overridable per call and via FPCHECK_BUDGET in the CLI.
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// A finite, deterministically ordered space of processes over one universe.
/// Memberships are drawn from the grid {0, 1/k, ..., k/k}; grid_k == 1 is the
/// crisp case. total_only excludes every process with a rejection (B != ∅).
struct EnumerationDomain {
    UniversePtr universe;
    int grid_k = 1;
    bool total_only = false;

    bool crisp() const { return grid_k == 1; }

    /// Number of processes: (k+1)^(2n) unrestricted, ((k+1)^2 - 1)^n total-only.
    std::uint64_t size() const;

    /// E.g. "crisp |E|=2 unrestricted" or "grid k=2 |E|=1 total".
    std::string describe() const;
};

/// Yields every process of the domain exactly once, in a fixed order:
/// per-label (delta, gamma) value pairs ordered delta-major ascending, with
/// the first universe label most significant. Throws BudgetExceededError
/// (naming the required count) if the domain is larger than `budget`.
std::vector<FuzzyProcess> enumerate_processes(const EnumerationDomain& domain,
                                              std::uint64_t budget = kDefaultBudget);

} // namespace fproc

#endif // FPROC_ENUMERATION_HPP

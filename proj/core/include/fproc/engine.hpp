#ifndef FPROC_ENGINE_HPP
#define FPROC_ENGINE_HPP

#include "fproc/enumeration.hpp"
#include "fproc/laws.hpp"
#include "fproc/process.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fproc {

enum class WitnessKind { none, label, tester, chain_component };

/// Where a failed check can be replayed: an execution label, a violating
/// tester process, or a (level, component) position in a chain.
struct Witness {
    WitnessKind kind = WitnessKind::none;
    std::string label;
    std::optional<FuzzyProcess> tester;
    int level = -1;
    int component = -1;
};

/// Outcome of one verification procedure. Engine conclusions are drawn at
/// support level, the level at which the underlying equivalences are valid;
/// non-totality of any operand is surfaced as a warning, never silently
/// assumed away. holds == false implies a replayable witness.
struct Verdict {
    std::string check;
    bool holds = false;
    Level level = Level::support;
    std::vector<std::string> warnings;
    Witness witness;
};

/// Relative correctness: q works in p's environment, i.e. -p * q accepts
/// every execution. Equivalent to support_refines(p, q) when both operands
/// are total.
Verdict check_relative_correctness(const FuzzyProcess& p, const FuzzyProcess& q);

/// Testing characterization: every crisp total tester r whose composition
/// with p is robust must stay robust composed with q. The first violating
/// tester is returned as witness. Throws BudgetExceededError when the tester
/// space 3^|E| exceeds the budget.
Verdict check_testing_refinement(const FuzzyProcess& p, const FuzzyProcess& q,
                                 std::uint64_t budget = kDefaultBudget);

struct SolveResult {
    /// Minimal solution r_min = p + (-q) of p [= q * r.
    FuzzyProcess r_min;
    /// Confirms support_refines(p, q * r_min), with totality warnings.
    Verdict verification;
};

/// Solves the design inequality p [= q * r for the unknown r.
SolveResult solve_design_inequality(const FuzzyProcess& p, const FuzzyProcess& q);

/// One component check a_j [= b_j1 * b_j2 * ... of a chain level.
struct ChainComponent {
    std::string name; // for messages; may be empty
    FuzzyProcess target;
    std::vector<FuzzyProcess> replacements;
};

struct ChainStep {
    int level = 0;
    std::vector<ChainComponent> components;
};

/// Componentwise verification of a refinement chain t_0 [= t_1 [= ... [= t_n:
/// each level's components are checked independently; product monotonicity
/// and transitivity then give t_0 [= t_n. Records the first failing
/// (level, component) as witness.
Verdict check_chain(const std::vector<ChainStep>& steps);

struct FactorizationReport {
    Factorization split;
    bool robust_confirmed = false;  // strict robustness of the first factor
    bool chaotic_confirmed = false; // strict chaos of the second factor
    std::vector<std::string> warnings;
};

/// Robust/chaotic split with confirmation of both factor properties and of
/// the reconstruction product.
FactorizationReport factorize(const FuzzyProcess& p);

} // namespace fproc

#endif // FPROC_ENGINE_HPP

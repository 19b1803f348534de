#ifndef FPROC_LAWS_HPP
#define FPROC_LAWS_HPP

#include "fproc/enumeration.hpp"
#include "fproc/process.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fproc {

enum class Level { membership, support };

/// How much restriction a law needs before it holds on everything tested:
/// none at all, totality of every argument, or more than totality (it fails
/// even on total-only domains).
enum class PreconditionClass { unconditional, total_arguments_only, unknown };

const char* to_string(Level level);
const char* to_string(PreconditionClass cls);

/// A named algebraic claim over `arity` process variables, decidable by
/// finite evaluation on any concrete argument tuple. Claims receive the
/// domain universe so arity-0 laws (pure identities) can build processes.
struct Law {
    std::string id;
    int arity;
    Level level;
    std::string description;
    std::function<bool(const UniversePtr&, const std::vector<FuzzyProcess>&)> claim;
};

/// Result of checking one law over the full Cartesian power of one domain.
struct LawReport {
    std::string law_id;
    std::string domain;
    std::uint64_t tuples_checked = 0;
    std::uint64_t violations = 0;
    bool passed = false;
    /// First violating tuples in enumeration order, at most kMaxWitnesses.
    std::vector<std::vector<FuzzyProcess>> counterexamples;
    PreconditionClass precondition_class = PreconditionClass::unknown;

    static constexpr std::size_t kMaxWitnesses = 10;
};

/// Aggregated classification of one law across an envelope of domains.
struct LawClassification {
    std::string law_id;
    Level level = Level::membership;
    int arity = 0;
    PreconditionClass cls = PreconditionClass::unknown;
    std::vector<LawReport> runs;
};

/// Every proposition, corollary and theorem of the algebra as a checkable
/// law, plus the structural identities the operations are built on. The
/// `vacuous_gamma` hook threads a non-default acceptability degree through
/// every product/sum the claims evaluate (exploration only; the registry
/// with the default degree is the one the manifest pins).
std::vector<Law> law_registry(const Membership& vacuous_gamma = Membership::one());

/// Evaluates the claim over domain^arity in enumeration order. When the
/// domain is unrestricted and the law fails, the claim is re-checked on the
/// total-only restriction to decide the precondition class. Throws
/// BudgetExceededError if domain_size^arity exceeds `budget`.
LawReport check_law(const Law& law, const EnumerationDomain& domain,
                    std::uint64_t budget = kDefaultBudget);

/// Runs check_law over unrestricted and total-only domains for |E| in
/// 1..max_universe on the crisp grid and (when grid_k > 1) the fuzzy grid,
/// clamped to the desk-scale envelope, and reports the strongest class that
/// passes everywhere tested.
LawClassification classify_preconditions(const Law& law, int max_universe, int grid_k,
                                         std::uint64_t budget = kDefaultBudget);

/// Envelope geometry: the largest |E| exercised for a law of this arity on
/// grid k, before clamping by max_universe. Keeps every full run at desk
/// scale (under the default budget and well under a minute end to end).
int envelope_max_universe(int grid_k, int arity);

struct ManifestOptions {
    int max_universe = 3;
    int grid_k = 2;
    bool total_only = false;
    std::uint64_t budget = kDefaultBudget;
};

/// The versioned laws manifest: one classification block per registered law,
/// byte-stable across runs. Regenerated by `fpcheck laws` and compared in CI.
std::string generate_laws_manifest(const ManifestOptions& options = {});

} // namespace fproc

#endif // FPROC_LAWS_HPP

#ifndef FPROC_PROCESS_HPP
#define FPROC_PROCESS_HPP

#include "fproc/membership.hpp"
#include "fproc/universe.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fproc {

/// Crisp per-execution view of a process: whether each execution is
/// accessible (delta > 0), acceptable (gamma > 0), both, or rejected.
enum class SupportState {
    rejected,        // x in B
    accessible_only, // x in X \ Y
    acceptable_only, // x in Y \ X
    both,            // x in X ∩ Y
};

class FuzzyProcess;

/// Support-level shadow of a process, one SupportState per execution.
class CrispShadow {
public:
    explicit CrispShadow(const FuzzyProcess& p);

    SupportState state(std::size_t i) const { return states_[i]; }
    const std::vector<SupportState>& states() const { return states_; }

    bool operator==(const CrispShadow&) const = default;

private:
    std::vector<SupportState> states_;
};

/// A fuzzy process: a device/environment contract over a finite execution
/// universe, given by two total membership maps.
///
///   delta(x)  accessibility degree of execution x
///   gamma(x)  acceptability degree of execution x
///
/// Derived sets: X = {x : delta(x) > 0} (accessible), Y = {x : gamma(x) > 0}
/// (acceptable), B = E \ (X ∪ Y) (rejections). A process with B = ∅ is
/// *total*; operations whose guarantees need totality report it rather than
/// assume it. Processes are immutable values; every operation below is a
/// pure function and safe under concurrent readers.
class FuzzyProcess {
public:
    /// Dense constructor: one membership per universe label, in order.
    FuzzyProcess(UniversePtr universe, std::vector<Membership> delta, std::vector<Membership> gamma);

    const UniversePtr& universe() const { return universe_; }
    std::size_t size() const { return delta_.size(); }

    const Membership& delta(std::size_t i) const { return delta_[i]; }
    const Membership& gamma(std::size_t i) const { return gamma_[i]; }
    const std::vector<Membership>& delta() const { return delta_; }
    const std::vector<Membership>& gamma() const { return gamma_; }

    /// Exact pointwise equality of both maps over the same universe.
    bool operator==(const FuzzyProcess& other) const;

private:
    UniversePtr universe_;
    std::vector<Membership> delta_;
    std::vector<Membership> gamma_;
};

/// Named-map constructor. Labels missing from a map default to membership 0;
/// a key that is not a universe label raises ValidationError naming it.
FuzzyProcess make_process(UniversePtr universe, const std::map<std::string, Membership>& delta,
                          const std::map<std::string, Membership>& gamma);

/// The all-ones process (1_E, 1_E): unit of the product and the pivot of the
/// robust/chaotic split.
FuzzyProcess omega(UniversePtr universe);

struct Supports {
    std::vector<std::string> accessible; // X
    std::vector<std::string> acceptable; // Y
    std::vector<std::string> rejections; // B
};

/// X, Y and B of a process, as label lists in universe order.
Supports supports(const FuzzyProcess& p);

/// True iff B = ∅, i.e. every execution is accessible or acceptable.
bool is_total(const FuzzyProcess& p);

/// Membership-level refinement p ⊑ q: delta_p >= delta_q and
/// gamma_p <= gamma_q pointwise. A partial order.
bool fuzzy_refines(const FuzzyProcess& p, const FuzzyProcess& q);

/// Support-level refinement: X_p ⊇ X_q and Y_p ⊆ Y_q. Implied by
/// fuzzy_refines; strictly weaker.
bool support_refines(const FuzzyProcess& p, const FuzzyProcess& q);

/// First label (in universe order) violating the refinement, or nullopt when
/// it holds.
std::optional<std::string> fuzzy_refines_witness(const FuzzyProcess& p, const FuzzyProcess& q);
std::optional<std::string> support_refines_witness(const FuzzyProcess& p, const FuzzyProcess& q);

/// Parallel composition p ⊗ q.
///
///   delta(x) = min(delta_p(x), delta_q(x))
///   gamma(x) = min(gamma_p(x), gamma_q(x))   if x in Y_p ∩ Y_q
///              1                             if x in (~X_p ∩ ~Y_q) ∪ (~Y_p ∩ ~X_q)
///              0                             otherwise
///
/// The vacuous clauses read "the other side can neither reach nor tolerate
/// x, so x is vacuously acceptable"; complements are relative to E.
FuzzyProcess product(const FuzzyProcess& p, const FuzzyProcess& q);

/// Product with a configurable acceptability degree on the vacuous clauses
/// (default 1 above). Exploration hook for the law harness only.
FuzzyProcess product(const FuzzyProcess& p, const FuzzyProcess& q, const Membership& vacuous_gamma);

/// Reflection -p: swaps device and environment roles by exchanging the two
/// maps. An involution.
FuzzyProcess reflect(const FuzzyProcess& p);

/// Sum p ⊕ q: the De Morgan dual of the product under reflection,
/// -( -p ⊗ -q ). Implemented in closed form:
///
///   gamma(x) = min(gamma_p(x), gamma_q(x))
///   delta(x) = min(delta_p(x), delta_q(x))   if x in X_p ∩ X_q
///              1                             if x in (~Y_p ∩ ~X_q) ∪ (~X_p ∩ ~Y_q)
///              0                             otherwise
FuzzyProcess sum(const FuzzyProcess& p, const FuzzyProcess& q);
FuzzyProcess sum(const FuzzyProcess& p, const FuzzyProcess& q, const Membership& vacuous_delta);

/// Least upper bound under fuzzy_refines: delta by min, gamma by max.
FuzzyProcess join(const FuzzyProcess& p, const FuzzyProcess& q);

/// Greatest lower bound under fuzzy_refines: delta by max, gamma by min.
FuzzyProcess meet(const FuzzyProcess& p, const FuzzyProcess& q);

/// Strict robustness: gamma ≡ 1 (accepts every execution outright).
bool is_robust(const FuzzyProcess& p);

/// Strict chaos: delta ≡ 1 (every execution fully accessible).
bool is_chaotic(const FuzzyProcess& p);

/// Support-level variants: Y = E, respectively X = E.
bool is_robust_support(const FuzzyProcess& p);
bool is_chaotic_support(const FuzzyProcess& p);

struct Factorization {
    FuzzyProcess robust_part;  // p ⊔ Ω = (delta_p, 1_E)
    FuzzyProcess chaotic_part; // p ⊓ Ω = (1_E, gamma_p)
    bool input_total;
    /// product(robust_part, chaotic_part) == p. Guaranteed when the input is
    /// total; when it is not, the labels where reconstruction differs are
    /// listed below.
    bool reconstruction_exact;
    std::vector<std::string> mismatched_labels;
};

/// Robust × chaotic split p = (p ⊔ Ω) ⊗ (p ⊓ Ω). Non-totality of the input
/// is flagged in the result, never raised as an error.
Factorization factor(const FuzzyProcess& p);

} // namespace fproc

#endif // FPROC_PROCESS_HPP

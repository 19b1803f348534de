#ifndef FPROC_TEST_SUPPORT_HPP
#define FPROC_TEST_SUPPORT_HPP

#include "fproc/process.hpp"

#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fptest {

using fproc::FuzzyProcess;
using fproc::Membership;
using fproc::UniversePtr;

inline Membership m(const std::string& text) {
    auto v = Membership::parse(text);
    if (!v)
        throw std::runtime_error("bad membership literal in test: " + text);
    return *v;
}

using Entries = std::initializer_list<std::pair<std::string, std::string>>;

inline FuzzyProcess proc(const UniversePtr& universe, Entries delta, Entries gamma) {
    std::map<std::string, Membership> d;
    std::map<std::string, Membership> g;
    for (const auto& [label, value] : delta)
        d.emplace(label, m(value));
    for (const auto& [label, value] : gamma)
        g.emplace(label, m(value));
    return fproc::make_process(universe, d, g);
}

/// Support sets as bit vectors, for oracle-side set algebra.
struct SupportSets {
    std::vector<bool> x;
    std::vector<bool> y;

    bool operator==(const SupportSets&) const = default;
};

inline SupportSets sets_of(const FuzzyProcess& p) {
    SupportSets s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s.x.push_back(!p.delta(i).is_zero());
        s.y.push_back(!p.gamma(i).is_zero());
    }
    return s;
}

/// Set-level oracle for the product supports, computed from the support
/// formulas alone:
///   X = X_p ∩ X_q
///   Y = (Y_p ∩ Y_q) ∪ (~X_p ∩ ~Y_q) ∪ (~Y_p ∩ ~X_q)
/// Deliberately independent of the membership-level implementation.
inline SupportSets product_supports_oracle(const FuzzyProcess& p, const FuzzyProcess& q) {
    const SupportSets a = sets_of(p);
    const SupportSets b = sets_of(q);
    SupportSets out;
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        out.x.push_back(a.x[i] && b.x[i]);
        out.y.push_back((a.y[i] && b.y[i]) || (!a.x[i] && !b.y[i]) || (!a.y[i] && !b.x[i]));
    }
    return out;
}

/// Set-level oracle for support refinement: X_p ⊇ X_q and Y_p ⊆ Y_q.
inline bool support_refines_oracle(const FuzzyProcess& p, const FuzzyProcess& q) {
    const SupportSets a = sets_of(p);
    const SupportSets b = sets_of(q);
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        if (b.x[i] && !a.x[i])
            return false;
        if (a.y[i] && !b.y[i])
            return false;
    }
    return true;
}

} // namespace fptest

#endif // FPROC_TEST_SUPPORT_HPP

#include "fproc/process.hpp"

#include "fproc/errors.hpp"

namespace fproc {

namespace {

void require_same_universe(const FuzzyProcess& p, const FuzzyProcess& q) {
    if (p.universe() != q.universe() && !(*p.universe() == *q.universe()))
        throw UniverseMismatchError("processes are defined over different execution universes");
}

std::vector<Membership> constant_map(std::size_t n, const Membership& value) {
    return std::vector<Membership>(n, value);
}

} // namespace

CrispShadow::CrispShadow(const FuzzyProcess& p) {
    states_.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const bool in_x = !p.delta(i).is_zero();
        const bool in_y = !p.gamma(i).is_zero();
        if (in_x && in_y)
            states_.push_back(SupportState::both);
        else if (in_x)
            states_.push_back(SupportState::accessible_only);
        else if (in_y)
            states_.push_back(SupportState::acceptable_only);
        else
            states_.push_back(SupportState::rejected);
    }
}

FuzzyProcess::FuzzyProcess(UniversePtr universe, std::vector<Membership> delta,
                           std::vector<Membership> gamma)
    : universe_(std::move(universe)), delta_(std::move(delta)), gamma_(std::move(gamma)) {
    if (!universe_)
        throw ValidationError("process requires a universe");
    if (delta_.size() != universe_->size() || gamma_.size() != universe_->size())
        throw ValidationError("membership maps must be total over the universe");
}

bool FuzzyProcess::operator==(const FuzzyProcess& other) const {
    return *universe_ == *other.universe_ && delta_ == other.delta_ && gamma_ == other.gamma_;
}

FuzzyProcess make_process(UniversePtr universe, const std::map<std::string, Membership>& delta,
                          const std::map<std::string, Membership>& gamma) {
    std::vector<Membership> d(universe->size());
    std::vector<Membership> g(universe->size());
    for (const auto* map : {&delta, &gamma}) {
        for (const auto& [label, value] : *map) {
            const auto idx = universe->index_of(label);
            if (!idx)
                throw ValidationError("unknown execution label '" + label + "'");
            (map == &delta ? d : g)[*idx] = value;
        }
    }
    return FuzzyProcess(std::move(universe), std::move(d), std::move(g));
}

FuzzyProcess omega(UniversePtr universe) {
    const std::size_t n = universe->size();
    return FuzzyProcess(std::move(universe), constant_map(n, Membership::one()),
                        constant_map(n, Membership::one()));
}

Supports supports(const FuzzyProcess& p) {
    Supports s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& label = p.universe()->label(i);
        const bool in_x = !p.delta(i).is_zero();
        const bool in_y = !p.gamma(i).is_zero();
        if (in_x)
            s.accessible.push_back(label);
        if (in_y)
            s.acceptable.push_back(label);
        if (!in_x && !in_y)
            s.rejections.push_back(label);
    }
    return s;
}

bool is_total(const FuzzyProcess& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.delta(i).is_zero() && p.gamma(i).is_zero())
            return false;
    return true;
}

bool fuzzy_refines(const FuzzyProcess& p, const FuzzyProcess& q) {
    require_same_universe(p, q);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.delta(i) < q.delta(i) || p.gamma(i) > q.gamma(i))
            return false;
    return true;
}

bool support_refines(const FuzzyProcess& p, const FuzzyProcess& q) {
    require_same_universe(p, q);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!q.delta(i).is_zero() && p.delta(i).is_zero())
            return false; // X_p does not cover X_q
        if (!p.gamma(i).is_zero() && q.gamma(i).is_zero())
            return false; // Y_p escapes Y_q
    }
    return true;
}

std::optional<std::string> fuzzy_refines_witness(const FuzzyProcess& p, const FuzzyProcess& q) {
    require_same_universe(p, q);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.delta(i) < q.delta(i) || p.gamma(i) > q.gamma(i))
            return p.universe()->label(i);
    return std::nullopt;
}

std::optional<std::string> support_refines_witness(const FuzzyProcess& p, const FuzzyProcess& q) {
    require_same_universe(p, q);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!q.delta(i).is_zero() && p.delta(i).is_zero())
            return p.universe()->label(i);
        if (!p.gamma(i).is_zero() && q.gamma(i).is_zero())
            return p.universe()->label(i);
    }
    return std::nullopt;
}

FuzzyProcess product(const FuzzyProcess& p, const FuzzyProcess& q) {
    return product(p, q, Membership::one());
}

FuzzyProcess product(const FuzzyProcess& p, const FuzzyProcess& q, const Membership& vacuous_gamma) {
    require_same_universe(p, q);
    const std::size_t n = p.size();
    std::vector<Membership> delta(n);
    std::vector<Membership> gamma(n);
    for (std::size_t i = 0; i < n; ++i) {
        delta[i] = Membership::min(p.delta(i), q.delta(i));
        const bool xp = !p.delta(i).is_zero();
        const bool xq = !q.delta(i).is_zero();
        const bool yp = !p.gamma(i).is_zero();
        const bool yq = !q.gamma(i).is_zero();
        if (yp && yq)
            gamma[i] = Membership::min(p.gamma(i), q.gamma(i));
        else if ((!xp && !yq) || (!yp && !xq))
            gamma[i] = vacuous_gamma;
        // else gamma stays 0
    }
    return FuzzyProcess(p.universe(), std::move(delta), std::move(gamma));
}

FuzzyProcess reflect(const FuzzyProcess& p) {
    return FuzzyProcess(p.universe(), p.gamma(), p.delta());
}

FuzzyProcess sum(const FuzzyProcess& p, const FuzzyProcess& q) {
    return sum(p, q, Membership::one());
}

FuzzyProcess sum(const FuzzyProcess& p, const FuzzyProcess& q, const Membership& vacuous_delta) {
    require_same_universe(p, q);
    const std::size_t n = p.size();
    std::vector<Membership> delta(n);
    std::vector<Membership> gamma(n);
    for (std::size_t i = 0; i < n; ++i) {
        gamma[i] = Membership::min(p.gamma(i), q.gamma(i));
        const bool xp = !p.delta(i).is_zero();
        const bool xq = !q.delta(i).is_zero();
        const bool yp = !p.gamma(i).is_zero();
        const bool yq = !q.gamma(i).is_zero();
        if (xp && xq)
            delta[i] = Membership::min(p.delta(i), q.delta(i));
        else if ((!yp && !xq) || (!xp && !yq))
            delta[i] = vacuous_delta;
    }
    return FuzzyProcess(p.universe(), std::move(delta), std::move(gamma));
}

FuzzyProcess join(const FuzzyProcess& p, const FuzzyProcess& q) {
    require_same_universe(p, q);
    const std::size_t n = p.size();
    std::vector<Membership> delta(n);
    std::vector<Membership> gamma(n);
    for (std::size_t i = 0; i < n; ++i) {
        delta[i] = Membership::min(p.delta(i), q.delta(i));
        gamma[i] = Membership::max(p.gamma(i), q.gamma(i));
    }
    return FuzzyProcess(p.universe(), std::move(delta), std::move(gamma));
}

FuzzyProcess meet(const FuzzyProcess& p, const FuzzyProcess& q) {
    require_same_universe(p, q);
    const std::size_t n = p.size();
    std::vector<Membership> delta(n);
    std::vector<Membership> gamma(n);
    for (std::size_t i = 0; i < n; ++i) {
        delta[i] = Membership::max(p.delta(i), q.delta(i));
        gamma[i] = Membership::min(p.gamma(i), q.gamma(i));
    }
    return FuzzyProcess(p.universe(), std::move(delta), std::move(gamma));
}

bool is_robust(const FuzzyProcess& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!p.gamma(i).is_one())
            return false;
    return true;
}

bool is_chaotic(const FuzzyProcess& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!p.delta(i).is_one())
            return false;
    return true;
}

bool is_robust_support(const FuzzyProcess& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.gamma(i).is_zero())
            return false;
    return true;
}

bool is_chaotic_support(const FuzzyProcess& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.delta(i).is_zero())
            return false;
    return true;
}

Factorization factor(const FuzzyProcess& p) {
    const FuzzyProcess unit = omega(p.universe());
    FuzzyProcess robust_part = join(p, unit);
    FuzzyProcess chaotic_part = meet(p, unit);
    const FuzzyProcess rebuilt = product(robust_part, chaotic_part);

    std::vector<std::string> mismatched;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (rebuilt.delta(i) != p.delta(i) || rebuilt.gamma(i) != p.gamma(i))
            mismatched.push_back(p.universe()->label(i));

    return Factorization{std::move(robust_part), std::move(chaotic_part), is_total(p),
                         mismatched.empty(), std::move(mismatched)};
}

} // namespace fproc

#include "fproc/enumeration.hpp"

#include "fproc/errors.hpp"

namespace fproc {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    while (exp--) {
        if (base != 0 && r > UINT64_MAX / base)
            return UINT64_MAX;
        r *= base;
    }
    return r;
}

} // namespace

std::uint64_t EnumerationDomain::size() const {
    const std::uint64_t values = static_cast<std::uint64_t>(grid_k) + 1;
    const std::uint64_t per_label = total_only ? values * values - 1 : values * values;
    return saturating_pow(per_label, universe->size());
}

std::string EnumerationDomain::describe() const {
    std::string s = crisp() ? "crisp" : "grid k=" + std::to_string(grid_k);
    s += " |E|=" + std::to_string(universe->size());
    s += total_only ? " total" : " unrestricted";
    return s;
}

std::vector<FuzzyProcess> enumerate_processes(const EnumerationDomain& domain, std::uint64_t budget) {
    const std::uint64_t count = domain.size();
    if (count > budget)
        throw BudgetExceededError("enumeration of " + domain.describe() + " needs " +
                                      std::to_string(count) + " processes, budget is " +
                                      std::to_string(budget),
                                  count, budget);

    // Per-label states: (delta, gamma) value pairs, delta-major ascending.
    const int values = domain.grid_k + 1;
    std::vector<std::pair<Membership, Membership>> states;
    for (int d = 0; d < values; ++d)
        for (int g = 0; g < values; ++g) {
            if (domain.total_only && d == 0 && g == 0)
                continue;
            states.emplace_back(Membership(d, domain.grid_k), Membership(g, domain.grid_k));
        }

    const std::size_t n = domain.universe->size();
    std::vector<FuzzyProcess> out;
    out.reserve(count);
    std::vector<std::size_t> digits(n, 0);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<Membership> delta(n);
        std::vector<Membership> gamma(n);
        for (std::size_t i = 0; i < n; ++i) {
            delta[i] = states[digits[i]].first;
            gamma[i] = states[digits[i]].second;
        }
        out.emplace_back(domain.universe, std::move(delta), std::move(gamma));
        // Odometer with the first label most significant.
        for (std::size_t i = n; i-- > 0;) {
            if (++digits[i] < states.size())
                break;
            digits[i] = 0;
        }
    }
    return out;
}

} // namespace fproc

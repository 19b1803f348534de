#include "fproc/engine.hpp"

#include "fproc/errors.hpp"

#include <algorithm>

namespace fproc {

namespace {

void warn_if_nontotal(Verdict& verdict, const std::string& role, const FuzzyProcess& p) {
    if (!is_total(p))
        verdict.warnings.push_back("non-total operand " + role);
}

} // namespace

Verdict check_relative_correctness(const FuzzyProcess& p, const FuzzyProcess& q) {
    Verdict verdict;
    verdict.check = "relative-correctness";
    verdict.level = Level::support;
    warn_if_nontotal(verdict, "p", p);
    warn_if_nontotal(verdict, "q", q);

    const FuzzyProcess placed = product(reflect(p), q);
    verdict.holds = true;
    for (std::size_t i = 0; i < placed.size(); ++i) {
        if (placed.gamma(i).is_zero()) {
            verdict.holds = false;
            verdict.witness.kind = WitnessKind::label;
            verdict.witness.label = placed.universe()->label(i);
            break;
        }
    }
    return verdict;
}

Verdict check_testing_refinement(const FuzzyProcess& p, const FuzzyProcess& q,
                                 std::uint64_t budget) {
    Verdict verdict;
    verdict.check = "testing-refinement";
    verdict.level = Level::support;
    warn_if_nontotal(verdict, "p", p);
    warn_if_nontotal(verdict, "q", q);

    const auto testers = enumerate_processes(EnumerationDomain{p.universe(), 1, true}, budget);
    verdict.holds = true;
    for (const FuzzyProcess& r : testers) {
        if (is_robust_support(product(r, p)) && !is_robust_support(product(r, q))) {
            verdict.holds = false;
            verdict.witness.kind = WitnessKind::tester;
            verdict.witness.tester = r;
            break;
        }
    }
    return verdict;
}

SolveResult solve_design_inequality(const FuzzyProcess& p, const FuzzyProcess& q) {
    FuzzyProcess r_min = sum(p, reflect(q));

    Verdict verification;
    verification.check = "design-inequality";
    verification.level = Level::support;
    warn_if_nontotal(verification, "p", p);
    warn_if_nontotal(verification, "q", q);
    if (!is_total(r_min))
        verification.warnings.push_back("minimal solution r_min is non-total");

    const auto witness = support_refines_witness(p, product(q, r_min));
    verification.holds = !witness.has_value();
    if (witness) {
        verification.witness.kind = WitnessKind::label;
        verification.witness.label = *witness;
    }
    return SolveResult{std::move(r_min), std::move(verification)};
}

Verdict check_chain(const std::vector<ChainStep>& steps) {
    Verdict verdict;
    verdict.check = "chain";
    verdict.level = Level::support;
    verdict.holds = true;

    auto warn_once = [&verdict](const std::string& message) {
        if (std::find(verdict.warnings.begin(), verdict.warnings.end(), message) ==
            verdict.warnings.end())
            verdict.warnings.push_back(message);
    };

    for (const ChainStep& step : steps) {
        for (std::size_t j = 0; j < step.components.size(); ++j) {
            const ChainComponent& comp = step.components[j];
            if (comp.replacements.empty())
                throw ValidationError("chain component needs at least one replacement");

            const std::string where = comp.name.empty()
                                          ? "component " + std::to_string(step.level) + "." +
                                                std::to_string(j)
                                          : comp.name;
            if (!is_total(comp.target))
                warn_once("non-total operand " + where);
            FuzzyProcess composite = comp.replacements.front();
            if (!is_total(composite))
                warn_once("non-total replacement in " + where);
            for (std::size_t k = 1; k < comp.replacements.size(); ++k) {
                if (!is_total(comp.replacements[k]))
                    warn_once("non-total replacement in " + where);
                composite = product(composite, comp.replacements[k]);
            }

            if (!verdict.holds)
                continue; // keep collecting warnings, first failure already recorded
            if (const auto label = support_refines_witness(comp.target, composite)) {
                verdict.holds = false;
                verdict.witness.kind = WitnessKind::chain_component;
                verdict.witness.level = step.level;
                verdict.witness.component = static_cast<int>(j);
                verdict.witness.label = *label;
            }
        }
    }
    return verdict;
}

FactorizationReport factorize(const FuzzyProcess& p) {
    FactorizationReport report{factor(p), false, false, {}};
    report.robust_confirmed = is_robust(report.split.robust_part);
    report.chaotic_confirmed = is_chaotic(report.split.chaotic_part);
    if (!report.split.input_total)
        report.warnings.push_back("non-total operand p: reconstruction is not guaranteed");
    return report;
}

} // namespace fproc

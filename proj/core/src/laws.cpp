#include "fproc/laws.hpp"

#include "fproc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace fproc {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    while (exp-- > 0) {
        if (base != 0 && r > UINT64_MAX / base)
            return UINT64_MAX;
        r *= base;
    }
    return r;
}

UniversePtr envelope_universe(int n) {
    if (n < 1 || n > 26)
        throw ValidationError("envelope universe size must be in 1..26");
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        labels.push_back(std::string(1, static_cast<char>('a' + i)));
    return make_universe(std::move(labels));
}

/// Crisp total processes: the tester domain of the testing characterization.
std::vector<FuzzyProcess> testers_for(const UniversePtr& universe) {
    return enumerate_processes(EnumerationDomain{universe, 1, true});
}

bool delta_pointwise_ge(const FuzzyProcess& a, const FuzzyProcess& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.delta(i) < b.delta(i))
            return false;
    return true;
}

} // namespace

const char* to_string(Level level) {
    return level == Level::membership ? "membership" : "support";
}

const char* to_string(PreconditionClass cls) {
    switch (cls) {
    case PreconditionClass::unconditional:
        return "unconditional";
    case PreconditionClass::total_arguments_only:
        return "total-arguments-only";
    default:
        return "unknown";
    }
}

std::vector<Law> law_registry(const Membership& vacuous_gamma) {
    const Membership c = vacuous_gamma;
    auto prod = [c](const FuzzyProcess& a, const FuzzyProcess& b) { return product(a, b, c); };
    auto add = [c](const FuzzyProcess& a, const FuzzyProcess& b) { return sum(a, b, c); };

    std::vector<Law> laws;
    auto reg = [&laws](std::string id, int arity, Level level, std::string description, auto claim) {
        laws.push_back(Law{std::move(id), arity, level, std::move(description), std::move(claim)});
    };

    using Args = std::vector<FuzzyProcess>;

    reg("prop1-fuzzy", 3, Level::membership, "p [= q implies p*r [= q*r (membership)",
        [prod](const UniversePtr&, const Args& a) {
            return !fuzzy_refines(a[0], a[1]) || fuzzy_refines(prod(a[0], a[2]), prod(a[1], a[2]));
        });
    reg("prop1-delta", 3, Level::membership, "p [= q implies delta(p*r) >= delta(q*r) pointwise",
        [prod](const UniversePtr&, const Args& a) {
            return !fuzzy_refines(a[0], a[1]) || delta_pointwise_ge(prod(a[0], a[2]), prod(a[1], a[2]));
        });
    reg("prop1-support", 3, Level::support, "p [= q implies p*r [= q*r (support)",
        [prod](const UniversePtr&, const Args& a) {
            return !support_refines(a[0], a[1]) ||
                   support_refines(prod(a[0], a[2]), prod(a[1], a[2]));
        });
    reg("prop1-support-total-r", 3, Level::support,
        "p [= q and r total imply p*r [= q*r (support); only r's totality matters",
        [prod](const UniversePtr&, const Args& a) {
            return !(support_refines(a[0], a[1]) && is_total(a[2])) ||
                   support_refines(prod(a[0], a[2]), prod(a[1], a[2]));
        });

    reg("cor1-fuzzy", 2, Level::membership, "p [= q implies p [= p*q (membership)",
        [prod](const UniversePtr&, const Args& a) {
            return !fuzzy_refines(a[0], a[1]) || fuzzy_refines(a[0], prod(a[0], a[1]));
        });
    reg("cor1-support", 2, Level::support, "p [= q implies p [= p*q (support)",
        [prod](const UniversePtr&, const Args& a) {
            return !support_refines(a[0], a[1]) || support_refines(a[0], prod(a[0], a[1]));
        });

    reg("cor2i-fuzzy", 4, Level::membership,
        "p1 [= q1 and p2 [= q2 imply p1*p2 [= q1*q2 (membership)",
        [prod](const UniversePtr&, const Args& a) {
            return !(fuzzy_refines(a[0], a[2]) && fuzzy_refines(a[1], a[3])) ||
                   fuzzy_refines(prod(a[0], a[1]), prod(a[2], a[3]));
        });
    reg("cor2i-support", 4, Level::support, "p1 [= q1 and p2 [= q2 imply p1*p2 [= q1*q2 (support)",
        [prod](const UniversePtr&, const Args& a) {
            return !(support_refines(a[0], a[2]) && support_refines(a[1], a[3])) ||
                   support_refines(prod(a[0], a[1]), prod(a[2], a[3]));
        });
    reg("cor2ii-fuzzy", 3, Level::membership, "p1 [= q and p2 [= q imply p1*p2 [= q (membership)",
        [prod](const UniversePtr&, const Args& a) {
            return !(fuzzy_refines(a[0], a[2]) && fuzzy_refines(a[1], a[2])) ||
                   fuzzy_refines(prod(a[0], a[1]), a[2]);
        });
    reg("cor2ii-support", 3, Level::support, "p1 [= q and p2 [= q imply p1*p2 [= q (support)",
        [prod](const UniversePtr&, const Args& a) {
            return !(support_refines(a[0], a[2]) && support_refines(a[1], a[2])) ||
                   support_refines(prod(a[0], a[1]), a[2]);
        });

    reg("th1-fuzzy", 2, Level::membership, "p [= q iff -p*q is robust (membership)",
        [prod](const UniversePtr&, const Args& a) {
            return fuzzy_refines(a[0], a[1]) == is_robust(prod(reflect(a[0]), a[1]));
        });
    reg("th1-support", 2, Level::support, "p [= q iff -p*q is robust (support)",
        [prod](const UniversePtr&, const Args& a) {
            return support_refines(a[0], a[1]) == is_robust_support(prod(reflect(a[0]), a[1]));
        });

    reg("th2-support", 2, Level::support,
        "p [= q iff every passing tester of p passes q (crisp total testers)",
        [prod](const UniversePtr& universe, const Args& a) {
            bool all_preserved = true;
            for (const auto& r : testers_for(universe)) {
                if (is_robust_support(prod(r, a[0])) && !is_robust_support(prod(r, a[1]))) {
                    all_preserved = false;
                    break;
                }
            }
            return support_refines(a[0], a[1]) == all_preserved;
        });

    reg("th3-fuzzy", 3, Level::membership, "p [= q*r iff p+(-q) [= r (membership)",
        [prod, add](const UniversePtr&, const Args& a) {
            return fuzzy_refines(a[0], prod(a[1], a[2])) ==
                   fuzzy_refines(add(a[0], reflect(a[1])), a[2]);
        });
    reg("th3-support", 3, Level::support, "p [= q*r iff p+(-q) [= r (support)",
        [prod, add](const UniversePtr&, const Args& a) {
            return support_refines(a[0], prod(a[1], a[2])) ==
                   support_refines(add(a[0], reflect(a[1])), a[2]);
        });

    reg("th4i", 1, Level::membership, "p|OMEGA is robust",
        [](const UniversePtr& u, const Args& a) { return is_robust(join(a[0], omega(u))); });
    reg("th4ii", 1, Level::membership, "p&OMEGA is chaotic",
        [](const UniversePtr& u, const Args& a) { return is_chaotic(meet(a[0], omega(u))); });
    reg("th4iii", 1, Level::membership, "p = (p|OMEGA) * (p&OMEGA) exactly",
        [prod](const UniversePtr& u, const Args& a) {
            const FuzzyProcess unit = omega(u);
            return prod(join(a[0], unit), meet(a[0], unit)) == a[0];
        });

    reg("prop2", 2, Level::membership, "robust processes are closed under *, +, |, & (strict)",
        [prod, add](const UniversePtr&, const Args& a) {
            return !(is_robust(a[0]) && is_robust(a[1])) ||
                   (is_robust(prod(a[0], a[1])) && is_robust(add(a[0], a[1])) &&
                    is_robust(join(a[0], a[1])) && is_robust(meet(a[0], a[1])));
        });
    reg("prop2-support", 2, Level::support, "robust processes are closed under *, +, |, & (support)",
        [prod, add](const UniversePtr&, const Args& a) {
            return !(is_robust_support(a[0]) && is_robust_support(a[1])) ||
                   (is_robust_support(prod(a[0], a[1])) && is_robust_support(add(a[0], a[1])) &&
                    is_robust_support(join(a[0], a[1])) && is_robust_support(meet(a[0], a[1])));
        });

    reg("prop3i", 2, Level::membership, "p [= q iff p|q = q iff p&q = p",
        [](const UniversePtr&, const Args& a) {
            const bool refines = fuzzy_refines(a[0], a[1]);
            const bool join_absorbs = join(a[0], a[1]) == a[1];
            const bool meet_absorbs = meet(a[0], a[1]) == a[0];
            return refines == join_absorbs && join_absorbs == meet_absorbs;
        });
    reg("prop3ii", 3, Level::membership, "& distributes over |",
        [](const UniversePtr&, const Args& a) {
            return meet(a[0], join(a[1], a[2])) == join(meet(a[0], a[1]), meet(a[0], a[2]));
        });
    reg("prop3iii", 3, Level::membership, "| distributes over &",
        [](const UniversePtr&, const Args& a) {
            return join(a[0], meet(a[1], a[2])) == meet(join(a[0], a[1]), join(a[0], a[2]));
        });

    reg("omega-unit", 1, Level::membership, "p*OMEGA = p",
        [prod](const UniversePtr& u, const Args& a) { return prod(a[0], omega(u)) == a[0]; });
    reg("reflect-involution", 1, Level::membership, "-(-p) = p",
        [](const UniversePtr&, const Args& a) { return reflect(reflect(a[0])) == a[0]; });
    reg("sum-demorgan", 2, Level::membership, "p+q = -(-p * -q) (closed form vs dual route)",
        [prod, add](const UniversePtr&, const Args& a) {
            return add(a[0], a[1]) == reflect(prod(reflect(a[0]), reflect(a[1])));
        });
    reg("omega-join-reflect", 0, Level::membership, "OMEGA | -OMEGA = OMEGA",
        [](const UniversePtr& u, const Args&) {
            const FuzzyProcess unit = omega(u);
            return join(unit, reflect(unit)) == unit;
        });

    reg("product-assoc", 3, Level::membership, "(p*q)*r = p*(q*r) (membership)",
        [prod](const UniversePtr&, const Args& a) {
            return prod(prod(a[0], a[1]), a[2]) == prod(a[0], prod(a[1], a[2]));
        });
    reg("product-assoc-support", 3, Level::support, "(p*q)*r = p*(q*r) (support)",
        [prod](const UniversePtr&, const Args& a) {
            return CrispShadow(prod(prod(a[0], a[1]), a[2])) ==
                   CrispShadow(prod(a[0], prod(a[1], a[2])));
        });

    return laws;
}

LawReport check_law(const Law& law, const EnumerationDomain& domain, std::uint64_t budget) {
    LawReport report;
    report.law_id = law.id;
    report.domain = domain.describe();

    const std::vector<FuzzyProcess> procs = enumerate_processes(domain, budget);
    const std::uint64_t tuples = saturating_pow(procs.size(), law.arity);
    if (tuples > budget)
        throw BudgetExceededError("law " + law.id + " over " + domain.describe() + " needs " +
                                      std::to_string(tuples) + " tuples, budget is " +
                                      std::to_string(budget),
                                  tuples, budget);
    report.tuples_checked = tuples;

    std::vector<std::size_t> index(static_cast<std::size_t>(law.arity), 0);
    std::vector<FuzzyProcess> args;
    for (std::uint64_t t = 0; t < tuples; ++t) {
        args.clear();
        for (std::size_t i = 0; i < index.size(); ++i)
            args.push_back(procs[index[i]]);
        if (!law.claim(domain.universe, args)) {
            ++report.violations;
            if (report.counterexamples.size() < LawReport::kMaxWitnesses)
                report.counterexamples.push_back(args);
        }
        for (std::size_t i = index.size(); i-- > 0;) {
            if (++index[i] < procs.size())
                break;
            index[i] = 0;
        }
    }
    report.passed = report.violations == 0;

    if (!domain.total_only) {
        if (report.passed) {
            report.precondition_class = PreconditionClass::unconditional;
        } else {
            EnumerationDomain restricted = domain;
            restricted.total_only = true;
            const LawReport on_totals = check_law(law, restricted, budget);
            report.precondition_class = on_totals.passed ? PreconditionClass::total_arguments_only
                                                         : PreconditionClass::unknown;
        }
    } else {
        report.precondition_class =
            report.passed ? PreconditionClass::total_arguments_only : PreconditionClass::unknown;
    }
    return report;
}

int envelope_max_universe(int grid_k, int arity) {
    if (grid_k <= 1)
        return arity <= 3 ? 3 : 2;
    return arity <= 2 ? 2 : 1;
}

namespace {

LawClassification classify_over(const Law& law, const ManifestOptions& options) {
    LawClassification out;
    out.law_id = law.id;
    out.level = law.level;
    out.arity = law.arity;

    bool all_unrestricted_pass = true;
    bool all_total_pass = true;

    std::vector<int> grids{1};
    if (options.grid_k > 1)
        grids.push_back(options.grid_k);

    for (int k : grids) {
        const int max_n = std::min(options.max_universe, envelope_max_universe(k, law.arity));
        for (int n = 1; n <= max_n; ++n) {
            const UniversePtr universe = envelope_universe(n);
            for (bool total : {false, true}) {
                if (options.total_only && !total)
                    continue;
                const LawReport run =
                    check_law(law, EnumerationDomain{universe, k, total}, options.budget);
                (total ? all_total_pass : all_unrestricted_pass) &= run.passed;
                out.runs.push_back(run);
            }
        }
    }

    if (!options.total_only && all_unrestricted_pass)
        out.cls = PreconditionClass::unconditional;
    else if (all_total_pass)
        out.cls = PreconditionClass::total_arguments_only;
    else
        out.cls = PreconditionClass::unknown;
    return out;
}

} // namespace

LawClassification classify_preconditions(const Law& law, int max_universe, int grid_k,
                                         std::uint64_t budget) {
    ManifestOptions options;
    options.max_universe = max_universe;
    options.grid_k = grid_k;
    options.budget = budget;
    return classify_over(law, options);
}

std::string generate_laws_manifest(const ManifestOptions& options) {
    std::ostringstream out;
    out << "fpcheck laws manifest v1\n";
    out << "envelope max-universe=" << options.max_universe << " grid-k=" << options.grid_k
        << " total-only=" << (options.total_only ? "yes" : "no") << " budget=" << options.budget
        << "\n";
    for (const Law& law : law_registry()) {
        const LawClassification cls = classify_over(law, options);
        out << "law " << law.id << " level=" << to_string(law.level) << " arity=" << law.arity
            << " class=" << to_string(cls.cls) << "\n";
        for (const LawReport& run : cls.runs)
            out << "  run " << run.domain << " tuples=" << run.tuples_checked
                << " violations=" << run.violations << " " << (run.passed ? "pass" : "fail") << "\n";
    }
    return out.str();
}

} // namespace fproc

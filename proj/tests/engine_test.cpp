#include "fproc/engine.hpp"

#include "fproc/enumeration.hpp"
#include "fproc/errors.hpp"
#include "fproc/json_io.hpp"
#include "test_support.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace fproc;
using fptest::proc;

namespace {

const UniversePtr kA = make_universe({"a"});
const UniversePtr kAB = make_universe({"a", "b"});

std::vector<FuzzyProcess> crisp_totals(const UniversePtr& u) {
    return enumerate_processes(EnumerationDomain{u, 1, true});
}

} // namespace

TEST_CASE("relative correctness holds for p against itself, total or not") {
    for (const auto& p : enumerate_processes(EnumerationDomain{kA, 2, false}))
        CHECK(check_relative_correctness(p, p).holds);
}

TEST_CASE("relative correctness agrees with support refinement on totals") {
    for (const auto& u : {kA, kAB})
        for (const auto& p : crisp_totals(u))
            for (const auto& q : crisp_totals(u)) {
                const Verdict v = check_relative_correctness(p, q);
                CHECK(v.holds == support_refines(p, q));
                CHECK(v.warnings.empty());
                if (!v.holds) {
                    CHECK(v.witness.kind == WitnessKind::label);
                    // the witness labels an execution the placed product rejects
                    const auto placed = product(reflect(p), q);
                    const auto idx = u->index_of(v.witness.label);
                    REQUIRE(idx);
                    CHECK(placed.gamma(*idx).is_zero());
                }
            }
}

TEST_CASE("relative correctness flags non-total operands") {
    const auto bottom = proc(kA, {}, {});
    const Verdict v = check_relative_correctness(bottom, omega(kA));
    REQUIRE(v.warnings.size() == 1);
    CHECK(v.warnings[0] == "non-total operand p");
}

TEST_CASE("testing refinement: reflexive, and fails with a concrete tester") {
    const auto q = proc(kA, {{"a", "1"}}, {});
    CHECK(check_testing_refinement(q, q).holds);

    // p = OMEGA, Y_q != E: some passing tester of p must reject q
    const Verdict v = check_testing_refinement(omega(kA), q);
    CHECK(!v.holds);
    REQUIRE(v.witness.kind == WitnessKind::tester);
    const FuzzyProcess& r = *v.witness.tester;
    CHECK(is_robust_support(product(r, omega(kA))));
    CHECK(!is_robust_support(product(r, q)));
}

TEST_CASE("the three refinement checks agree on crisp totals (|E| <= 2)") {
    for (const auto& u : {kA, kAB})
        for (const auto& p : crisp_totals(u))
            for (const auto& q : crisp_totals(u)) {
                const bool expected = support_refines(p, q);
                CHECK(check_relative_correctness(p, q).holds == expected);
                CHECK(check_testing_refinement(p, q).holds == expected);
            }
}

TEST_CASE("testing refinement respects the tester budget") {
    CHECK_THROWS_AS(check_testing_refinement(omega(kAB), omega(kAB), 5), BudgetExceededError);
}

TEST_CASE("design inequality: q = OMEGA yields r_min = p") {
    const auto p = proc(kAB, {{"a", "1"}, {"b", "1/2"}}, {{"a", "1/4"}, {"b", "1"}});
    const auto [r_min, verification] = solve_design_inequality(p, omega(kAB));
    CHECK(r_min == p);
    CHECK(verification.holds);
    CHECK(verification.warnings.empty());
}

TEST_CASE("design inequality: p = q verifies on totals") {
    for (const auto& p : crisp_totals(kAB)) {
        const auto result = solve_design_inequality(p, p);
        CHECK(result.verification.holds);
    }
}

TEST_CASE("design inequality solutions are exactly the refinements of r_min") {
    for (const auto& u : {kA, kAB})
        for (const auto& p : crisp_totals(u))
            for (const auto& q : crisp_totals(u)) {
                const auto r_min = solve_design_inequality(p, q).r_min;
                for (const auto& r : crisp_totals(u))
                    CHECK(support_refines(p, product(q, r)) == support_refines(r_min, r));
            }
}

TEST_CASE("design inequality keeps non-total inputs, warns about them") {
    const auto q = proc(kA, {}, {});
    const auto result = solve_design_inequality(omega(kA), q);
    CHECK(!result.verification.warnings.empty());
}

TEST_CASE("chain: single reflexive step holds") {
    const auto p = proc(kAB, {{"a", "1"}}, {{"b", "1"}});
    const Verdict v = check_chain({ChainStep{0, {ChainComponent{"p", p, {p}}}}});
    CHECK(v.holds);
    CHECK(v.check == "chain");
}

TEST_CASE("chain: decomposition p = p1*p2 with each part refined by q") {
    // support-level: p1 [= q and p2 [= q give p1*p2 [= q
    const auto q = proc(kAB, {{"a", "1"}}, {{"a", "1"}, {"b", "1"}});
    const auto p1 = proc(kAB, {{"a", "1"}, {"b", "1"}}, {{"a", "1"}});
    const auto p2 = proc(kAB, {{"a", "1"}}, {{"b", "1"}});
    const auto p = product(p1, p2);
    REQUIRE(support_refines(p1, q));
    REQUIRE(support_refines(p2, q));

    const std::vector<ChainStep> steps = {
        ChainStep{0, {ChainComponent{"p", p, {p1, p2}}}},
        ChainStep{1, {ChainComponent{"p1", p1, {q}}, ChainComponent{"p2", p2, {q}}}},
    };
    const Verdict v = check_chain(steps);
    CHECK(v.holds);
    // the chain conclusion matches the direct end-to-end check
    CHECK(support_refines(p, q));
}

TEST_CASE("chain: first failing component is identified") {
    const auto good = omega(kA);
    const auto target = proc(kA, {}, {{"a", "1"}});
    const auto replacement = proc(kA, {{"a", "1"}}, {});
    REQUIRE(!support_refines(target, replacement));

    const std::vector<ChainStep> steps = {
        ChainStep{0, {ChainComponent{"", good, {good}}, ChainComponent{"", target, {replacement}}}},
    };
    const Verdict v = check_chain(steps);
    CHECK(!v.holds);
    CHECK(v.witness.kind == WitnessKind::chain_component);
    CHECK(v.witness.level == 0);
    CHECK(v.witness.component == 1);
    CHECK(v.witness.label == "a");
}

TEST_CASE("chain: empty replacement list is a usage error") {
    CHECK_THROWS_AS(check_chain({ChainStep{0, {ChainComponent{"x", omega(kA), {}}}}}),
                    ValidationError);
}

TEST_CASE("factorize confirms both factor properties") {
    const auto p = proc(kAB, {{"a", "1"}, {"b", "1/2"}}, {{"a", "1/4"}, {"b", "1"}});
    const auto report = factorize(p);
    CHECK(report.robust_confirmed);
    CHECK(report.chaotic_confirmed);
    CHECK(report.split.reconstruction_exact);
    CHECK(report.warnings.empty());

    const auto degenerate = factorize(proc(kA, {}, {}));
    CHECK(!degenerate.split.reconstruction_exact);
    CHECK(degenerate.split.mismatched_labels == std::vector<std::string>{"a"});
    CHECK(!degenerate.warnings.empty());

    const auto top = factorize(omega(kA));
    CHECK(top.split.robust_part == omega(kA));
    CHECK(top.split.chaotic_part == omega(kA));
    CHECK(top.split.reconstruction_exact);
}

TEST_CASE("verdicts serialize to the documented JSON shape") {
    const auto q = proc(kA, {{"a", "1"}}, {});
    const Verdict v = check_relative_correctness(omega(kA), q);
    REQUIRE(!v.holds);
    const auto doc = nlohmann::json::parse(to_json(v));
    CHECK(doc["check"] == "relative-correctness");
    CHECK(doc["holds"] == false);
    CHECK(doc["level"] == "support");
    CHECK(doc["warnings"].is_array());
    CHECK(doc["witness"]["label"] == "a");

    const Verdict ok = check_relative_correctness(q, q);
    const auto ok_doc = nlohmann::json::parse(to_json(ok));
    CHECK(ok_doc["holds"] == true);
    CHECK(!ok_doc.contains("witness"));

    const Verdict tester = check_testing_refinement(omega(kA), q);
    const auto tester_doc = nlohmann::json::parse(to_json(tester));
    CHECK(tester_doc["witness"]["tester"]["universe"][0] == "a");
}

TEST_CASE("verdicts replay from serialized inputs") {
    const auto p = proc(kAB, {{"a", "1"}, {"b", "1"}}, {{"a", "1"}});
    const auto q = proc(kAB, {{"a", "1"}}, {});
    const Verdict first = check_relative_correctness(p, q);
    const Verdict second =
        check_relative_correctness(process_from_json(to_json(p)), process_from_json(to_json(q)));
    CHECK(first.holds == second.holds);
    CHECK(first.witness.label == second.witness.label);
    CHECK(first.warnings == second.warnings);
}

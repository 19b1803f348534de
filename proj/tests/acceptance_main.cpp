// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Exercises the library directly and the fpcheck binary end to end.

#include "fproc/dsl.hpp"
#include "fproc/engine.hpp"
#include "fproc/enumeration.hpp"
#include "fproc/json_io.hpp"
#include "fproc/laws.hpp"
#include "fproc/process.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fproc;
namespace fs = std::filesystem;

const std::string kFpcheck = FPCHECK_BIN;
const fs::path kSourceDir = FPCHECK_SOURCE_DIR;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct RunResult {
    int exit_code = -1;
    std::string output;
    double seconds = 0.0;
};

RunResult run_command(const std::string& command) {
    RunResult result;
    const auto start = std::chrono::steady_clock::now();
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (!pipe)
        return result;
    char buffer[4096];
    while (const std::size_t n = fread(buffer, 1, sizeof buffer, pipe))
        result.output.append(buffer, n);
    const int status = pclose(pipe);
    result.seconds = seconds_since(start);
    if (WIFEXITED(status))
        result.exit_code = WEXITSTATUS(status);
    return result;
}

const Law& law(const std::vector<Law>& registry, const std::string& id) {
    const auto it =
        std::find_if(registry.begin(), registry.end(), [&](const Law& l) { return l.id == id; });
    if (it == registry.end())
        throw std::runtime_error("law not registered: " + id);
    return *it;
}

std::vector<fs::path> sorted_files(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".fps")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

FuzzyProcess crisp(const UniversePtr& u, std::initializer_list<int> delta,
                   std::initializer_list<int> gamma) {
    std::vector<Membership> d;
    std::vector<Membership> g;
    for (int v : delta)
        d.push_back(v ? Membership::one() : Membership::zero());
    for (int v : gamma)
        g.push_back(v ? Membership::one() : Membership::zero());
    return FuzzyProcess(u, std::move(d), std::move(g));
}

// --- criteria ---------------------------------------------------------

bool lattice_laws(std::string& detail) {
    const auto registry = law_registry();
    const auto start = std::chrono::steady_clock::now();
    const auto pairs = check_law(law(registry, "prop3i"),
                                 {make_universe({"a", "b"}), 2, false});
    const auto dist_meet = check_law(law(registry, "prop3ii"), {make_universe({"a"}), 2, false});
    const auto dist_join = check_law(law(registry, "prop3iii"), {make_universe({"a"}), 2, false});
    const double elapsed = seconds_since(start);
    detail = std::to_string(pairs.tuples_checked) + " pairs, 2x" +
             std::to_string(dist_meet.tuples_checked) + " triples in " + std::to_string(elapsed) +
             "s";
    return pairs.passed && pairs.tuples_checked == 6561 && dist_meet.passed &&
           dist_meet.tuples_checked == 729 && dist_join.passed &&
           dist_join.tuples_checked == 729 && elapsed < 5.0;
}

bool product_monotonicity(std::string& detail) {
    const auto registry = law_registry();
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::uint64_t total_tuples = 0;
    for (const char* id :
         {"prop1-delta", "prop1-support", "cor1-support", "cor2i-support", "cor2ii-support"}) {
        for (int n = 1; n <= 2; ++n) {
            std::vector<std::string> labels{"a"};
            if (n == 2)
                labels.push_back("b");
            const auto report = check_law(law(registry, id), {make_universe(labels), 1, true});
            ok = ok && report.passed;
            total_tuples += report.tuples_checked;
        }
    }
    const double elapsed = seconds_since(start);
    detail = std::to_string(total_tuples) + " crisp total tuples in " + std::to_string(elapsed) + "s";
    return ok && elapsed < 5.0;
}

bool precondition_discovery(std::string& detail) {
    const auto registry = law_registry();
    const auto u = make_universe({"a"});

    const auto prop1 = check_law(law(registry, "prop1-support"), {u, 1, false});
    const bool prop1_witness =
        !prop1.passed && !prop1.counterexamples.empty() &&
        prop1.counterexamples.front()[0] == crisp(u, {1}, {0}) &&
        prop1.counterexamples.front()[1] == crisp(u, {1}, {1}) &&
        prop1.counterexamples.front()[2] == crisp(u, {0}, {0});

    const auto th4 = check_law(law(registry, "th4iii"), {u, 1, false});
    const bool th4_witness = !th4.passed && !th4.counterexamples.empty() &&
                             !is_total(th4.counterexamples.front()[0]);

    const bool classes =
        classify_preconditions(law(registry, "prop1-support"), 2, 2).cls ==
            PreconditionClass::total_arguments_only &&
        classify_preconditions(law(registry, "th4iii"), 2, 2).cls ==
            PreconditionClass::total_arguments_only;

    detail = "prop1-support witness " + std::string(prop1_witness ? "found" : "MISSING") +
             ", th4iii witness " + std::string(th4_witness ? "found" : "MISSING");
    return prop1_witness && th4_witness && classes;
}

bool correctness_equivalences(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t pairs = 0;
    bool ok = true;
    for (int n = 1; n <= 2; ++n) {
        std::vector<std::string> labels{"a"};
        if (n == 2)
            labels.push_back("b");
        const auto u = make_universe(labels);
        const auto totals = enumerate_processes(EnumerationDomain{u, 1, true});
        for (const auto& p : totals)
            for (const auto& q : totals) {
                ++pairs;
                const bool expected = support_refines(p, q);
                ok = ok && check_relative_correctness(p, q).holds == expected &&
                     check_testing_refinement(p, q).holds == expected;
            }
    }
    const double elapsed = seconds_since(start);
    detail = std::to_string(pairs) + " crisp total pairs in " + std::to_string(elapsed) + "s";
    return ok && pairs == 90 && elapsed < 5.0;
}

bool design_inequality(std::string& detail) {
    const auto registry = law_registry();
    bool ok = true;
    std::uint64_t triples = 0;
    for (int n = 1; n <= 2; ++n) {
        std::vector<std::string> labels{"a"};
        if (n == 2)
            labels.push_back("b");
        const auto u = make_universe(labels);
        const auto report = check_law(law(registry, "th3-support"), {u, 1, true});
        ok = ok && report.passed;
        triples += report.tuples_checked;

        // minimal-solution characterization against the full tester sweep
        const auto totals = enumerate_processes(EnumerationDomain{u, 1, true});
        for (const auto& p : totals)
            for (const auto& q : totals) {
                const auto r_min = solve_design_inequality(p, q).r_min;
                for (const auto& r : totals)
                    ok = ok && support_refines(p, product(q, r)) == support_refines(r_min, r);
            }
    }
    detail = std::to_string(triples) + " crisp total triples plus r_min sweeps";
    return ok && triples == 27 + 729;
}

bool robust_chaotic_split(std::string& detail) {
    const auto registry = law_registry();
    const auto u = make_universe({"a", "b"});
    const auto i = check_law(law(registry, "th4i"), {u, 2, false});
    const auto ii = check_law(law(registry, "th4ii"), {u, 2, false});
    const auto iii = check_law(law(registry, "th4iii"), {u, 2, true});
    detail = std::to_string(i.tuples_checked) + " processes, " +
             std::to_string(iii.tuples_checked) + " total reconstructions";
    return i.passed && i.tuples_checked == 81 && ii.passed && iii.passed &&
           iii.tuples_checked == 64;
}

bool robust_closure(std::string& detail) {
    const auto u = make_universe({"a", "b"});
    const auto procs = enumerate_processes(EnumerationDomain{u, 2, false});
    std::uint64_t robust_pairs = 0;
    bool ok = true;
    for (const auto& p : procs) {
        if (!is_robust(p))
            continue;
        for (const auto& q : procs) {
            if (!is_robust(q))
                continue;
            ++robust_pairs;
            ok = ok && is_robust(product(p, q)) && is_robust(sum(p, q)) &&
                 is_robust(join(p, q)) && is_robust(meet(p, q));
        }
    }
    detail = std::to_string(robust_pairs) + " membership-robust pairs";
    return ok && robust_pairs == 81;
}

bool structural_identities(std::string& detail) {
    const auto registry = law_registry();
    const auto u = make_universe({"a", "b"});
    const auto unit = check_law(law(registry, "omega-unit"), {u, 2, false});
    const auto involution = check_law(law(registry, "reflect-involution"), {u, 2, false});
    const auto demorgan = check_law(law(registry, "sum-demorgan"), {u, 2, false});
    const auto omega_join = check_law(law(registry, "omega-join-reflect"), {u, 2, false});
    detail = "unit/involution on " + std::to_string(unit.tuples_checked) + ", De Morgan on " +
             std::to_string(demorgan.tuples_checked);
    return unit.passed && unit.tuples_checked == 81 && involution.passed && demorgan.passed &&
           demorgan.tuples_checked == 6561 && omega_join.passed;
}

bool parser_corpus(std::string& detail) {
    const auto valid = sorted_files(kSourceDir / "corpus");
    const auto malformed = sorted_files(kSourceDir / "corpus" / "malformed");
    if (valid.size() < 10) {
        detail = "corpus too small: " + std::to_string(valid.size());
        return false;
    }

    bool ok = true;
    double worst = 0.0;
    for (const auto& path : valid) {
        std::ifstream in(path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        const auto parsed = dsl::parse(buffer.str());
        if (!parsed.ok()) {
            detail = path.filename().string() + " failed to parse: " + parsed.error->str();
            return false;
        }
        const std::string canon = dsl::serialize(*parsed.document);
        const auto reparsed = dsl::parse(canon);
        ok = ok && reparsed.ok() && *reparsed.document == *parsed.document &&
             dsl::serialize(*reparsed.document) == canon;

        const auto run = run_command(kFpcheck + " check '" + path.string() + "'");
        worst = std::max(worst, run.seconds);
        if (run.exit_code != 0) {
            detail = path.filename().string() + " exited " + std::to_string(run.exit_code) + ": " +
                     run.output;
            return false;
        }
        ok = ok && run.seconds < 1.0;
    }

    for (const auto& path : malformed) {
        std::ifstream in(path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        const auto parsed = dsl::parse(buffer.str());
        if (parsed.ok() || parsed.error->line < 1 || parsed.error->column < 1) {
            detail = path.filename().string() + " should fail with a position";
            return false;
        }
        const auto run = run_command(kFpcheck + " check '" + path.string() + "'");
        if (run.exit_code != 2) {
            detail = path.filename().string() + " exited " + std::to_string(run.exit_code) +
                     ", want 2";
            return false;
        }
        ok = ok && run.output.find(":" + std::to_string(parsed.error->line) + ":") !=
                       std::string::npos;
    }

    // a failing assertion is exit 1 with a witness, distinct from parse errors
    const fs::path failing = fs::temp_directory_path() / "fpcheck_failing.fps";
    {
        std::ofstream out(failing);
        out << "universe a b\nprocess p\n  delta a=1\nend\nassert total p\n";
    }
    const auto failing_run = run_command(kFpcheck + " check '" + failing.string() + "'");
    if (failing_run.exit_code != 1 || failing_run.output.find("witness label 'b'") ==
                                          std::string::npos) {
        detail = "failing assertion: exit " + std::to_string(failing_run.exit_code) + ", want 1";
        return false;
    }

    detail = std::to_string(valid.size()) + " valid + " + std::to_string(malformed.size()) +
             " malformed files, slowest check " + std::to_string(worst) + "s";
    return ok;
}

bool laws_manifest(std::string& detail) {
    const fs::path manifest = kSourceDir / "laws.manifest";
    const auto run =
        run_command(kFpcheck + " laws --manifest '" + manifest.string() + "'");
    detail = "fpcheck laws in " + std::to_string(run.seconds) + "s";
    if (run.exit_code != 0) {
        detail += " (exit " + std::to_string(run.exit_code) + "): " + run.output;
        return false;
    }

    // a tampered manifest is detected as drift
    std::ifstream in(manifest);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string tampered = buffer.str();
    tampered.replace(tampered.find("unconditional"), 13, "unconditioXal");
    const fs::path copy = fs::temp_directory_path() / "fpcheck_tampered.manifest";
    std::ofstream(copy) << tampered;
    const auto drift = run_command(kFpcheck + " laws --manifest '" + copy.string() + "'");
    if (drift.exit_code != 1 || drift.output.find("drift") == std::string::npos) {
        detail += ", drift not flagged (exit " + std::to_string(drift.exit_code) + ")";
        return false;
    }
    return run.seconds < 60.0;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        std::function<bool(std::string&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "lattice laws on the fuzzy grid", lattice_laws},
        {2, "product monotonicity family on crisp totals", product_monotonicity},
        {3, "precondition discovery with pinned witnesses", precondition_discovery},
        {4, "correctness and testing equivalences", correctness_equivalences},
        {5, "design inequality and minimal solutions", design_inequality},
        {6, "robust/chaotic split", robust_chaotic_split},
        {7, "closure of robust processes", robust_closure},
        {8, "structural identities", structural_identities},
        {9, "parser corpus round-trips and exit codes", parser_corpus},
        {10, "laws manifest reproducibility", laws_manifest},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        std::string detail;
        bool passed = false;
        try {
            passed = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!passed)
            ++failures;
        std::printf("criterion %2d %s  %s%s%s\n", criterion.id, passed ? "PASS" : "FAIL",
                    criterion.name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    }
    if (failures)
        std::printf("%d criterion(s) failed\n", failures);
    else
        std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}

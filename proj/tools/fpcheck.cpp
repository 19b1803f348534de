#include "fproc/dsl.hpp"
#include "fproc/engine.hpp"
#include "fproc/errors.hpp"
#include "fproc/json_io.hpp"
#include "fproc/laws.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using fproc::BudgetExceededError;
using fproc::FuzzyProcess;
using fproc::Verdict;
using ordered_json = nlohmann::ordered_json;
namespace dsl = fproc::dsl;

constexpr int kExitOk = 0;
constexpr int kExitFailures = 1;
constexpr int kExitError = 2;

std::uint64_t budget_from_env() {
    const char* raw = std::getenv("FPCHECK_BUDGET");
    if (!raw || !*raw)
        return fproc::kDefaultBudget;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (!end || *end != '\0' || v == 0)
        throw fproc::ValidationError("FPCHECK_BUDGET must be a positive integer");
    return v;
}

std::optional<std::string> read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return "cannot open file '" + path + "'";
    std::ostringstream buffer;
    buffer << in.rdbuf();
    out = buffer.str();
    return std::nullopt;
}

std::string process_str(const FuzzyProcess& p) {
    std::string d;
    std::string g;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p.delta(i).is_zero())
            d += " " + p.universe()->label(i) + "=" + p.delta(i).str();
        if (!p.gamma(i).is_zero())
            g += " " + p.universe()->label(i) + "=" + p.gamma(i).str();
    }
    if (d.empty())
        d = " -";
    if (g.empty())
        g = " -";
    return "{delta:" + d + " | gamma:" + g + "}";
}

std::string witness_str(const fproc::Witness& w) {
    switch (w.kind) {
    case fproc::WitnessKind::label:
        return "witness label '" + w.label + "'";
    case fproc::WitnessKind::tester:
        return "witness tester " + process_str(*w.tester);
    case fproc::WitnessKind::chain_component:
        return "failing component " + std::to_string(w.level) + "." +
               std::to_string(w.component) + " at label '" + w.label + "'";
    default:
        return "";
    }
}

ordered_json verdict_json(const Verdict& v) {
    return ordered_json::parse(fproc::to_json(v));
}

ordered_json process_json(const FuzzyProcess& p) {
    return ordered_json::parse(fproc::to_json(p));
}

void collect_warnings(std::vector<std::string>& warnings, const dsl::Expr& expr,
                      const FuzzyProcess& value) {
    if (!fproc::is_total(value))
        warnings.push_back("non-total operand " + dsl::expr_str(expr));
}

/// Left-assoc product spine of an expression: the component list of a chain
/// element. Parenthesized groups survive only in non-left positions.
std::vector<const dsl::Expr*> product_spine(const dsl::Expr& e) {
    if (e.kind != dsl::ExprKind::product)
        return {&e};
    std::vector<const dsl::Expr*> spine = product_spine(*e.lhs);
    spine.push_back(e.rhs.get());
    return spine;
}

std::vector<fproc::ChainStep> build_chain_steps(const dsl::Document& doc, const dsl::Query& q) {
    std::vector<fproc::ChainStep> steps;
    for (std::size_t i = 0; i + 1 < q.chain.size(); ++i) {
        const auto targets = product_spine(*q.chain[i]);
        const auto groups = product_spine(*q.chain[i + 1]);
        fproc::ChainStep step;
        step.level = static_cast<int>(i);

        auto component = [&doc](const dsl::Expr& target, const std::vector<const dsl::Expr*>& rs) {
            std::vector<FuzzyProcess> replacements;
            replacements.reserve(rs.size());
            for (const dsl::Expr* r : rs)
                replacements.push_back(dsl::evaluate(doc, *r));
            return fproc::ChainComponent{dsl::expr_str(target), dsl::evaluate(doc, target),
                                         std::move(replacements)};
        };

        if (targets.size() == groups.size()) {
            // componentwise: a_j against the factor list of its group
            for (std::size_t j = 0; j < targets.size(); ++j)
                step.components.push_back(component(*targets[j], product_spine(*groups[j])));
        } else if (groups.size() == 1) {
            // every part against the single right-hand side
            for (const dsl::Expr* t : targets)
                step.components.push_back(component(*t, groups));
        } else {
            // shapes do not line up: check the level as one component
            step.components.push_back(component(*q.chain[i], groups));
        }
        steps.push_back(std::move(step));
    }
    return steps;
}

struct CheckOutcome {
    int assertions = 0;
    int failures = 0;
    ordered_json results = ordered_json::array();
    std::string text;
};

void run_assertion(const dsl::Document& doc, const dsl::Assertion& a, CheckOutcome& out) {
    const FuzzyProcess first = dsl::evaluate(doc, *a.first);
    std::optional<FuzzyProcess> second;
    if (a.second)
        second = dsl::evaluate(doc, *a.second);

    std::vector<std::string> warnings;
    collect_warnings(warnings, *a.first, first);
    if (second)
        collect_warnings(warnings, *a.second, *second);

    bool holds = false;
    std::optional<std::string> witness;
    fproc::Level level = fproc::Level::membership;
    switch (a.kind) {
    case dsl::AssertKind::refines:
        witness = fproc::fuzzy_refines_witness(first, *second);
        holds = !witness;
        break;
    case dsl::AssertKind::support_refines:
        level = fproc::Level::support;
        witness = fproc::support_refines_witness(first, *second);
        holds = !witness;
        break;
    case dsl::AssertKind::equal:
        holds = first == *second;
        if (!holds)
            for (std::size_t i = 0; i < first.size(); ++i)
                if (first.delta(i) != second->delta(i) || first.gamma(i) != second->gamma(i)) {
                    witness = first.universe()->label(i);
                    break;
                }
        break;
    case dsl::AssertKind::robust:
        holds = fproc::is_robust(first);
        if (!holds)
            for (std::size_t i = 0; i < first.size(); ++i)
                if (!first.gamma(i).is_one()) {
                    witness = first.universe()->label(i);
                    break;
                }
        break;
    case dsl::AssertKind::chaotic:
        holds = fproc::is_chaotic(first);
        if (!holds)
            for (std::size_t i = 0; i < first.size(); ++i)
                if (!first.delta(i).is_one()) {
                    witness = first.universe()->label(i);
                    break;
                }
        break;
    case dsl::AssertKind::total:
        holds = fproc::is_total(first);
        if (!holds)
            witness = supports(first).rejections.front();
        break;
    }

    ++out.assertions;
    if (!holds)
        ++out.failures;

    auto operand = [](const dsl::Expr& e) {
        const std::string s = dsl::expr_str(e);
        return e.kind == dsl::ExprKind::name || e.kind == dsl::ExprKind::omega ||
                       e.kind == dsl::ExprKind::reflect
                   ? s
                   : "(" + s + ")";
    };
    std::string header = "assert " + std::string(dsl::to_string(a.kind)) + " " +
                         operand(*a.first) + (a.second ? " " + operand(*a.second) : "");
    out.text += std::string(holds ? "[ok]   " : "[FAIL] ") + "line " + std::to_string(a.line) +
                ": " + header;
    if (witness)
        out.text += "  -- witness label '" + *witness + "'";
    out.text += "\n";
    for (const auto& w : warnings)
        out.text += "       warning: " + w + "\n";

    ordered_json entry;
    entry["line"] = a.line;
    entry["statement"] = header;
    entry["holds"] = holds;
    entry["level"] = fproc::to_string(level);
    entry["warnings"] = warnings;
    if (witness)
        entry["witness"] = ordered_json{{"label", *witness}};
    out.results.push_back(std::move(entry));
}

void run_query(const dsl::Document& doc, const dsl::Query& q, std::uint64_t budget,
               CheckOutcome& out) {
    ordered_json entry;
    entry["line"] = q.line;
    switch (q.kind) {
    case dsl::QueryKind::solve: {
        const FuzzyProcess p = dsl::evaluate(doc, *q.first);
        const FuzzyProcess target = dsl::evaluate(doc, *q.second);
        const auto result = fproc::solve_design_inequality(p, target);
        const std::string header =
            "query solve " + dsl::expr_str(*q.first) + " " + dsl::expr_str(*q.second);
        out.text += "[info] line " + std::to_string(q.line) + ": " + header + "\n";
        out.text += "       r_min = " + process_str(result.r_min) + "\n";
        out.text += std::string("       verification: ") +
                    (result.verification.holds ? "holds" : "FAILS") + " (support level)\n";
        for (const auto& w : result.verification.warnings)
            out.text += "       warning: " + w + "\n";
        entry["statement"] = header;
        entry["r_min"] = process_json(result.r_min);
        entry["verification"] = verdict_json(result.verification);
        break;
    }
    case dsl::QueryKind::factor: {
        const FuzzyProcess p = dsl::evaluate(doc, *q.first);
        const auto report = fproc::factorize(p);
        const std::string header = "query factor " + dsl::expr_str(*q.first);
        out.text += "[info] line " + std::to_string(q.line) + ": " + header + "\n";
        out.text += "       robust  = " + process_str(report.split.robust_part) + "\n";
        out.text += "       chaotic = " + process_str(report.split.chaotic_part) + "\n";
        out.text += std::string("       reconstruction: ") +
                    (report.split.reconstruction_exact ? "exact" : "inexact");
        if (!report.split.reconstruction_exact) {
            out.text += " (differs at";
            for (const auto& l : report.split.mismatched_labels)
                out.text += " '" + l + "'";
            out.text += ")";
        }
        out.text += "\n";
        for (const auto& w : report.warnings)
            out.text += "       warning: " + w + "\n";
        entry["statement"] = header;
        entry["robust"] = process_json(report.split.robust_part);
        entry["chaotic"] = process_json(report.split.chaotic_part);
        entry["robust_confirmed"] = report.robust_confirmed;
        entry["chaotic_confirmed"] = report.chaotic_confirmed;
        entry["reconstruction_exact"] = report.split.reconstruction_exact;
        entry["mismatched_labels"] = report.split.mismatched_labels;
        entry["warnings"] = report.warnings;
        break;
    }
    case dsl::QueryKind::chain: {
        const auto steps = build_chain_steps(doc, q);
        const Verdict verdict = fproc::check_chain(steps);
        std::string header = "query chain " + q.chain_name;
        out.text += "[info] line " + std::to_string(q.line) + ": " + header + ": " +
                    (verdict.holds ? "holds" : "FAILS");
        if (!verdict.holds)
            out.text += "  -- " + witness_str(verdict.witness);
        out.text += "\n";
        for (const auto& w : verdict.warnings)
            out.text += "       warning: " + w + "\n";
        entry["statement"] = header;
        entry["verdict"] = verdict_json(verdict);
        break;
    }
    }
    (void)budget;
    out.results.push_back(std::move(entry));
}

int cmd_check(const std::string& path, bool json_output, std::uint64_t budget) {
    std::string text;
    if (const auto err = read_file(path, text)) {
        std::cerr << *err << "\n";
        return kExitError;
    }
    const dsl::ParseResult parsed = dsl::parse(text);
    if (!parsed.ok()) {
        const dsl::SourceError& e = *parsed.error;
        if (json_output) {
            ordered_json doc;
            doc["file"] = path;
            doc["error"] = ordered_json{{"line", e.line},
                                        {"column", e.column},
                                        {"message", e.message},
                                        {"token", e.token}};
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cerr << path << ":" << e.line << ":" << e.column << ": error: " << e.message;
            if (!e.token.empty())
                std::cerr << " (near '" << e.token << "')";
            std::cerr << "\n";
        }
        return kExitError;
    }

    const dsl::Document& doc = *parsed.document;
    CheckOutcome outcome;
    for (const dsl::Statement& statement : doc.statements) {
        if (const auto* a = std::get_if<dsl::Assertion>(&statement))
            run_assertion(doc, *a, outcome);
        else
            run_query(doc, std::get<dsl::Query>(statement), budget, outcome);
    }

    if (json_output) {
        ordered_json root;
        root["file"] = path;
        root["results"] = outcome.results;
        root["assertions"] = outcome.assertions;
        root["failures"] = outcome.failures;
        std::cout << root.dump(2) << "\n";
    } else {
        std::cout << outcome.text;
        std::cout << "summary: " << outcome.assertions << " assertion"
                  << (outcome.assertions == 1 ? "" : "s") << ", " << outcome.failures << " failed\n";
    }
    return outcome.failures == 0 ? kExitOk : kExitFailures;
}

int cmd_laws(const fproc::ManifestOptions& options, bool write, const std::string& manifest_path) {
    const std::string fresh = fproc::generate_laws_manifest(options);
    if (write) {
        std::ofstream out(manifest_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write manifest '" << manifest_path << "'\n";
            return kExitError;
        }
        out << fresh;
        std::cout << "wrote " << manifest_path << "\n";
        return kExitOk;
    }

    std::string checked_in;
    if (const auto err = read_file(manifest_path, checked_in)) {
        std::cerr << *err << " (run with --write to create it)\n";
        return kExitFailures;
    }
    if (checked_in == fresh) {
        std::cout << "laws manifest matches " << manifest_path << "\n";
        return kExitOk;
    }

    // first differing line, for the CI log
    std::istringstream a(checked_in);
    std::istringstream b(fresh);
    std::string la;
    std::string lb;
    int line = 0;
    while (true) {
        ++line;
        const bool more_a = static_cast<bool>(std::getline(a, la));
        const bool more_b = static_cast<bool>(std::getline(b, lb));
        if (!more_a && !more_b)
            break;
        if (la != lb || more_a != more_b) {
            std::cerr << "laws manifest drift at line " << line << ":\n";
            std::cerr << "  checked-in: " << (more_a ? la : "<eof>") << "\n";
            std::cerr << "  regenerated: " << (more_b ? lb : "<eof>") << "\n";
            break;
        }
        la.clear();
        lb.clear();
    }
    return kExitFailures;
}

std::optional<FuzzyProcess> lookup(const dsl::Document& doc, const std::string& name) {
    if (const FuzzyProcess* p = doc.find_process(name))
        return *p;
    if (const dsl::ExprPtr* e = doc.find_let(name))
        return dsl::evaluate(doc, **e);
    if (name == "OMEGA")
        return fproc::omega(doc.universe);
    return std::nullopt;
}

int with_document(const std::string& path, bool json_output,
                  const std::function<int(const dsl::Document&)>& body) {
    std::string text;
    if (const auto err = read_file(path, text)) {
        std::cerr << *err << "\n";
        return kExitError;
    }
    const dsl::ParseResult parsed = dsl::parse(text);
    if (!parsed.ok()) {
        std::cerr << path << ":" << parsed.error->line << ":" << parsed.error->column
                  << ": error: " << parsed.error->message << "\n";
        return kExitError;
    }
    (void)json_output;
    return body(*parsed.document);
}

int cmd_solve(const std::string& path, const std::string& p_name, const std::string& q_name,
              bool json_output) {
    return with_document(path, json_output, [&](const dsl::Document& doc) {
        const auto p = lookup(doc, p_name);
        const auto q = lookup(doc, q_name);
        if (!p || !q) {
            std::cerr << "no process or binding named '" << (p ? q_name : p_name) << "'\n";
            return kExitError;
        }
        const auto result = fproc::solve_design_inequality(*p, *q);
        if (json_output) {
            ordered_json root;
            root["r_min"] = process_json(result.r_min);
            root["verification"] = verdict_json(result.verification);
            std::cout << root.dump(2) << "\n";
        } else {
            std::cout << "r_min = " << process_str(result.r_min) << "\n";
            std::cout << "verification: " << (result.verification.holds ? "holds" : "FAILS")
                      << " (support level)\n";
            for (const auto& w : result.verification.warnings)
                std::cout << "warning: " << w << "\n";
        }
        return kExitOk;
    });
}

int cmd_factor(const std::string& path, const std::string& p_name, bool json_output) {
    return with_document(path, json_output, [&](const dsl::Document& doc) {
        const auto p = lookup(doc, p_name);
        if (!p) {
            std::cerr << "no process or binding named '" << p_name << "'\n";
            return kExitError;
        }
        const auto report = fproc::factorize(*p);
        if (json_output) {
            ordered_json root;
            root["robust"] = process_json(report.split.robust_part);
            root["chaotic"] = process_json(report.split.chaotic_part);
            root["robust_confirmed"] = report.robust_confirmed;
            root["chaotic_confirmed"] = report.chaotic_confirmed;
            root["reconstruction_exact"] = report.split.reconstruction_exact;
            root["mismatched_labels"] = report.split.mismatched_labels;
            root["warnings"] = report.warnings;
            std::cout << root.dump(2) << "\n";
        } else {
            std::cout << "robust  = " << process_str(report.split.robust_part) << "\n";
            std::cout << "chaotic = " << process_str(report.split.chaotic_part) << "\n";
            std::cout << "reconstruction: "
                      << (report.split.reconstruction_exact ? "exact" : "inexact") << "\n";
            for (const auto& l : report.split.mismatched_labels)
                std::cout << "  differs at '" << l << "'\n";
            for (const auto& w : report.warnings)
                std::cout << "warning: " << w << "\n";
        }
        return kExitOk;
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fpcheck: contract algebra over finite execution universes"};
    app.require_subcommand(1);

    std::string file;
    bool json_output = false;

    CLI::App* check = app.add_subcommand("check", "evaluate the assertions and queries of a file");
    check->add_option("file", file, "input .fps file")->required();
    check->add_flag("--json", json_output, "machine-readable output");

    int max_universe = 3;
    int grid_k = 2;
    bool total_only = false;
    bool write = false;
    std::string manifest_path = "laws.manifest";
    CLI::App* laws = app.add_subcommand("laws", "regenerate or verify the laws manifest");
    laws->add_option("--max-universe", max_universe, "largest |E| to enumerate")
        ->check(CLI::Range(1, 8));
    laws->add_option("--grid", grid_k, "fuzzy grid denominator k")->check(CLI::Range(1, 6));
    laws->add_flag("--total-only", total_only, "restrict every domain to total processes");
    laws->add_flag("--write", write, "overwrite the manifest instead of comparing");
    laws->add_option("--manifest", manifest_path, "manifest file path");

    std::string p_name;
    std::string q_name;
    CLI::App* solve = app.add_subcommand("solve", "minimal solution of p [= q * r");
    solve->add_option("file", file, "input .fps file")->required();
    solve->add_option("--p", p_name, "specification process name")->required();
    solve->add_option("--q", q_name, "known component process name")->required();
    solve->add_flag("--json", json_output, "machine-readable output");

    CLI::App* factor = app.add_subcommand("factor", "robust/chaotic split of a process");
    factor->add_option("file", file, "input .fps file")->required();
    factor->add_option("--p", p_name, "process name")->required();
    factor->add_flag("--json", json_output, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        const std::uint64_t budget = budget_from_env();
        if (check->parsed())
            return cmd_check(file, json_output, budget);
        if (laws->parsed()) {
            fproc::ManifestOptions options;
            options.max_universe = max_universe;
            options.grid_k = grid_k;
            options.total_only = total_only;
            options.budget = budget;
            return cmd_laws(options, write, manifest_path);
        }
        if (solve->parsed())
            return cmd_solve(file, p_name, q_name, json_output);
        if (factor->parsed())
            return cmd_factor(file, p_name, json_output);
    } catch (const BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitError;
    } catch (const fproc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

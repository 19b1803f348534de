#ifndef FPROC_DSL_HPP
#define FPROC_DSL_HPP

#include "fproc/process.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fproc::dsl {

/// Position of the first offending character, 1-based.
struct SourceError {
    int line = 0;
    int column = 0;
    std::string message;
    std::string token; // offending token; empty at end of input

    std::string str() const;
};

enum class ExprKind { name, omega, reflect, product, sum, join, meet };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression AST. `reflect` uses lhs only; binary nodes are left-associative
/// as parsed.
struct Expr {
    ExprKind kind;
    std::string name; // ExprKind::name only
    ExprPtr lhs;
    ExprPtr rhs;
};

bool expr_equal(const Expr& a, const Expr& b);

/// Canonical rendering; parentheses are reinserted exactly where the grammar
/// requires them, so parsing the result reproduces the same tree.
std::string expr_str(const Expr& e);

enum class AssertKind { refines, support_refines, robust, chaotic, total, equal };

const char* to_string(AssertKind kind);

struct Assertion {
    AssertKind kind;
    ExprPtr first;
    ExprPtr second; // null for the unary kinds
    int line = 0;   // source position, ignored by equality
};

enum class QueryKind { solve, factor, chain };

struct Query {
    QueryKind kind;
    ExprPtr first;
    ExprPtr second;            // solve only
    std::string chain_name;    // chain only
    std::vector<ExprPtr> chain; // chain only, at least two entries
    int line = 0;
};

using Statement = std::variant<Assertion, Query>;

struct NamedProcess {
    std::string name;
    FuzzyProcess process;
};

struct NamedExpr {
    std::string name;
    ExprPtr expr;
};

/// A parsed .fps document: one universe, named processes, named expression
/// bindings and the ordered assertions/queries. Immutable after parsing.
struct Document {
    UniversePtr universe;
    std::vector<NamedProcess> processes;
    std::vector<NamedExpr> lets;
    std::vector<Statement> statements;

    const FuzzyProcess* find_process(std::string_view name) const;
    const ExprPtr* find_let(std::string_view name) const;

    /// Structural equality; source positions are not compared.
    bool operator==(const Document& other) const;
};

struct ParseResult {
    std::optional<Document> document;
    std::optional<SourceError> error;

    bool ok() const { return document.has_value(); }
};

/// Line-oriented grammar; '#' starts a comment. Errors never throw: they are
/// returned with a stable 1-based position.
///
///   universe <label> <label> ...
///   process <name>
///     delta <label>=<rat> ...
///     gamma <label>=<rat> ...
///   end
///   let <name> = <expr>
///   assert <kind> <expr> [<expr>]
///   query solve <expr> <expr>
///   query factor <expr>
///   query chain <name>: <expr> => <expr> => ...
///
/// Expressions: names, OMEGA, prefix '-' (reflect), infix '*' (product),
/// '+' (sum), '|' (join), '&' (meet), parentheses. '*' and '+' share one
/// precedence tier, '|' and '&' a lower one; mixing operators inside a tier
/// requires parentheses. <rat> is "n", "n/d" or a finite decimal, converted
/// exactly; values must lie in [0,1].
ParseResult parse(std::string_view text);

/// Canonical form: universe first, processes then lets in definition order,
/// statements last; map entries in universe label order, rationals in lowest
/// terms, zero entries and empty map lines omitted. parse(serialize(d)) == d.
std::string serialize(const Document& doc);

/// Evaluates an expression against the document's definitions. Names were
/// resolved at parse time, so evaluation cannot fail on lookups.
FuzzyProcess evaluate(const Document& doc, const Expr& e);

/// Document JSON export: the process wire format plus assertion/query lists.
std::string document_to_json(const Document& doc);

} // namespace fproc::dsl

#endif // FPROC_DSL_HPP

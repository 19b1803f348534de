#include "fproc/dsl.hpp"

#include "fproc/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace fproc::dsl {

namespace {

const std::set<std::string, std::less<>> kReservedWords = {
    "universe", "process", "delta",  "gamma",   "end",   "let",
    "assert",   "query",   "solve",  "factor",  "chain", "OMEGA",
    "refines",  "support-refines",   "robust",  "chaotic", "total", "equal"};

struct Token {
    enum class Kind { ident, number, symbol };
    Kind kind;
    std::string text;
    int line;
    int column;
};

struct Line {
    int number;
    int end_column; // 1-based column just past the last character
    std::vector<Token> tokens;
};

/// Internal control flow only; parse() converts it to a ParseResult.
struct ParseAbort {
    SourceError error;
};

[[noreturn]] void fail(int line, int column, std::string message, std::string token = "") {
    throw ParseAbort{SourceError{line, column, std::move(message), std::move(token)}};
}

[[noreturn]] void fail_at(const Token& t, std::string message) {
    fail(t.line, t.column, std::move(message), t.text);
}

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Line> lex(std::string_view text) {
    std::vector<Line> lines;
    int line_no = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        if (const auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);

        Line line{line_no, static_cast<int>(raw.size()) + 1, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            const char c = raw[i];
            const int col = static_cast<int>(i) + 1;
            if (c == ' ' || c == '\t' || c == '\r') {
                ++i;
                continue;
            }
            if (ident_start(c)) {
                std::size_t j = i + 1;
                while (j < raw.size() &&
                       (ident_char(raw[j]) ||
                        (raw[j] == '-' && j + 1 < raw.size() && ident_char(raw[j + 1]))))
                    ++j;
                line.tokens.push_back(
                    {Token::Kind::ident, std::string(raw.substr(i, j - i)), line_no, col});
                i = j;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i + 1;
                while (j < raw.size() && std::isdigit(static_cast<unsigned char>(raw[j])))
                    ++j;
                if (j < raw.size() && (raw[j] == '/' || raw[j] == '.')) {
                    ++j;
                    while (j < raw.size() && std::isdigit(static_cast<unsigned char>(raw[j])))
                        ++j;
                }
                line.tokens.push_back(
                    {Token::Kind::number, std::string(raw.substr(i, j - i)), line_no, col});
                i = j;
                continue;
            }
            if (c == '=' && i + 1 < raw.size() && raw[i + 1] == '>') {
                line.tokens.push_back({Token::Kind::symbol, "=>", line_no, col});
                i += 2;
                continue;
            }
            if (std::string_view("=()*+|&-:").find(c) != std::string_view::npos) {
                line.tokens.push_back({Token::Kind::symbol, std::string(1, c), line_no, col});
                ++i;
                continue;
            }
            fail(line_no, col, std::string("unexpected character '") + c + "'", std::string(1, c));
        }
        lines.push_back(std::move(line));
        if (eol == std::string_view::npos)
            break;
        pos = eol + 1;
        ++line_no;
    }
    return lines;
}

/// Cursor over one line's tokens.
class LineCursor {
public:
    explicit LineCursor(const Line& line) : line_(line) {}

    bool done() const { return next_ >= line_.tokens.size(); }
    const Token& peek() const { return line_.tokens[next_]; }
    const Token& take() { return line_.tokens[next_++]; }

    bool peek_symbol(std::string_view s) const {
        return !done() && peek().kind == Token::Kind::symbol && peek().text == s;
    }

    const Token& expect(Token::Kind kind, const std::string& what) {
        if (done())
            fail(line_.number, line_.end_column, "expected " + what);
        if (peek().kind != kind)
            fail_at(peek(), "expected " + what);
        return take();
    }

    void expect_symbol(std::string_view s) {
        if (done())
            fail(line_.number, line_.end_column, "expected '" + std::string(s) + "'");
        if (!peek_symbol(s))
            fail_at(peek(), "expected '" + std::string(s) + "'");
        take();
    }

    void expect_end() {
        if (!done())
            fail_at(peek(), "unexpected token");
    }

    [[noreturn]] void fail_here(const std::string& message) {
        if (done())
            fail(line_.number, line_.end_column, message);
        fail_at(peek(), message);
    }

    int line_number() const { return line_.number; }

private:
    const Line& line_;
    std::size_t next_ = 0;
};

ExprPtr make_name(std::string name) {
    return std::make_shared<Expr>(Expr{ExprKind::name, std::move(name), nullptr, nullptr});
}

ExprPtr make_node(ExprKind kind, ExprPtr lhs, ExprPtr rhs = nullptr) {
    return std::make_shared<Expr>(Expr{kind, "", std::move(lhs), std::move(rhs)});
}

class Parser {
public:
    explicit Parser(std::vector<Line> lines) : lines_(std::move(lines)) {}

    Document run() {
        parse_universe();
        while (const Line* line = next_content_line()) {
            LineCursor cur(*line);
            const Token& head = cur.expect(Token::Kind::ident, "statement keyword");
            if (head.text == "universe")
                fail_at(head, "duplicate universe declaration");
            else if (head.text == "process")
                parse_process(cur, head);
            else if (head.text == "let")
                parse_let(cur);
            else if (head.text == "assert")
                parse_assert(cur);
            else if (head.text == "query")
                parse_query(cur);
            else
                fail_at(head, "unknown statement '" + head.text + "'");
        }
        return std::move(doc_);
    }

private:
    const Line* next_content_line() {
        while (cursor_ < lines_.size() && lines_[cursor_].tokens.empty())
            ++cursor_;
        return cursor_ < lines_.size() ? &lines_[cursor_++] : nullptr;
    }

    void parse_universe() {
        const Line* line = next_content_line();
        if (!line)
            fail(1, 1, "empty document: expected a universe declaration");
        LineCursor cur(*line);
        const Token& head = cur.expect(Token::Kind::ident, "'universe' declaration");
        if (head.text != "universe")
            fail_at(head, "the universe declaration must come first");
        std::vector<std::string> labels;
        while (!cur.done()) {
            const Token& t = cur.expect(Token::Kind::ident, "execution label");
            if (std::find(labels.begin(), labels.end(), t.text) != labels.end())
                fail_at(t, "duplicate execution label '" + t.text + "'");
            labels.push_back(t.text);
        }
        if (labels.empty())
            cur.fail_here("expected at least one execution label");
        doc_.universe = make_universe(std::move(labels));
    }

    void check_fresh_name(const Token& t) {
        if (kReservedWords.count(t.text))
            fail_at(t, "reserved word '" + t.text + "' cannot be used as a name");
        if (doc_.find_process(t.text) || doc_.find_let(t.text))
            fail_at(t, "duplicate name '" + t.text + "'");
    }

    void parse_process(LineCursor& cur, const Token& head) {
        const Token& name = cur.expect(Token::Kind::ident, "process name");
        check_fresh_name(name);
        cur.expect_end();

        std::map<std::string, Membership> delta;
        std::map<std::string, Membership> gamma;
        for (;;) {
            const Line* line = next_content_line();
            if (!line)
                fail_at(head, "unterminated process block '" + name.text + "' (missing 'end')");
            LineCursor body(*line);
            const Token& kw = body.expect(Token::Kind::ident, "'delta', 'gamma' or 'end'");
            if (kw.text == "end") {
                body.expect_end();
                break;
            }
            if (kw.text != "delta" && kw.text != "gamma")
                fail_at(kw, "expected 'delta', 'gamma' or 'end' inside a process block");
            auto& map = kw.text == "delta" ? delta : gamma;
            while (!body.done()) {
                const Token& label = body.expect(Token::Kind::ident, "execution label");
                if (!doc_.universe->index_of(label.text))
                    fail_at(label, "unknown label '" + label.text + "'");
                if (map.count(label.text))
                    fail_at(label, "duplicate " + kw.text + " assignment for '" + label.text + "'");
                body.expect_symbol("=");
                const Token& value = body.expect(Token::Kind::number, "membership value");
                std::string why;
                const auto m = Membership::parse(value.text, &why);
                if (!m)
                    fail_at(value, why);
                map.emplace(label.text, *m);
            }
        }
        doc_.processes.push_back(
            {name.text, make_process(doc_.universe, delta, gamma)});
    }

    void parse_let(LineCursor& cur) {
        const Token& name = cur.expect(Token::Kind::ident, "binding name");
        check_fresh_name(name);
        cur.expect_symbol("=");
        ExprPtr expr = parse_expression(cur);
        cur.expect_end();
        doc_.lets.push_back({name.text, std::move(expr)});
    }

    void parse_assert(LineCursor& cur) {
        const Token& kind_tok = cur.expect(Token::Kind::ident, "assertion kind");
        AssertKind kind;
        bool binary;
        if (kind_tok.text == "refines") {
            kind = AssertKind::refines;
            binary = true;
        } else if (kind_tok.text == "support-refines") {
            kind = AssertKind::support_refines;
            binary = true;
        } else if (kind_tok.text == "equal") {
            kind = AssertKind::equal;
            binary = true;
        } else if (kind_tok.text == "robust") {
            kind = AssertKind::robust;
            binary = false;
        } else if (kind_tok.text == "chaotic") {
            kind = AssertKind::chaotic;
            binary = false;
        } else if (kind_tok.text == "total") {
            kind = AssertKind::total;
            binary = false;
        } else {
            fail_at(kind_tok, "unknown assertion kind '" + kind_tok.text + "'");
        }

        Assertion a;
        a.kind = kind;
        a.line = cur.line_number();
        a.first = parse_expression(cur);
        if (binary)
            a.second = parse_expression(cur);
        cur.expect_end();
        doc_.statements.emplace_back(std::move(a));
    }

    void parse_query(LineCursor& cur) {
        const Token& kind_tok = cur.expect(Token::Kind::ident, "query kind");
        Query q;
        q.line = cur.line_number();
        if (kind_tok.text == "solve") {
            q.kind = QueryKind::solve;
            q.first = parse_expression(cur);
            q.second = parse_expression(cur);
        } else if (kind_tok.text == "factor") {
            q.kind = QueryKind::factor;
            q.first = parse_expression(cur);
        } else if (kind_tok.text == "chain") {
            q.kind = QueryKind::chain;
            const Token& name = cur.expect(Token::Kind::ident, "chain name");
            q.chain_name = name.text;
            cur.expect_symbol(":");
            q.chain.push_back(parse_expression(cur));
            cur.expect_symbol("=>");
            q.chain.push_back(parse_expression(cur));
            while (cur.peek_symbol("=>")) {
                cur.take();
                q.chain.push_back(parse_expression(cur));
            }
        } else {
            fail_at(kind_tok, "unknown query kind '" + kind_tok.text + "'");
        }
        cur.expect_end();
        doc_.statements.emplace_back(std::move(q));
    }

    // Expressions. Two infix tiers, each internally unmixable:
    //   tier 2: '*' '+'   tier 1: '|' '&'
    ExprPtr parse_expression(LineCursor& cur) { return parse_tier(cur, '|', '&', ExprKind::join, ExprKind::meet, /*inner=*/true); }

    ExprPtr parse_tier(LineCursor& cur, char op_a, char op_b, ExprKind kind_a, ExprKind kind_b,
                       bool inner) {
        ExprPtr lhs = inner ? parse_tier(cur, '*', '+', ExprKind::product, ExprKind::sum, false)
                            : parse_unary(cur);
        std::optional<char> seen;
        while (!cur.done() && cur.peek().kind == Token::Kind::symbol &&
               (cur.peek().text[0] == op_a || cur.peek().text[0] == op_b) &&
               cur.peek().text.size() == 1) {
            const Token& op = cur.take();
            const char c = op.text[0];
            if (seen && *seen != c)
                fail_at(op, std::string("ambiguous mix of '") + *seen + "' and '" + c +
                                "' without parentheses");
            seen = c;
            ExprPtr rhs = inner ? parse_tier(cur, '*', '+', ExprKind::product, ExprKind::sum, false)
                                : parse_unary(cur);
            lhs = make_node(c == op_a ? kind_a : kind_b, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    ExprPtr parse_unary(LineCursor& cur) {
        if (cur.peek_symbol("-")) {
            cur.take();
            return make_node(ExprKind::reflect, parse_unary(cur));
        }
        if (cur.done())
            cur.fail_here("expected expression");
        const Token& t = cur.peek();
        if (t.kind == Token::Kind::symbol && t.text == "(") {
            cur.take();
            ExprPtr inner = parse_expression(cur);
            cur.expect_symbol(")");
            return inner;
        }
        if (t.kind == Token::Kind::ident) {
            cur.take();
            if (t.text == "OMEGA")
                return make_node(ExprKind::omega, nullptr);
            if (!doc_.find_process(t.text) && !doc_.find_let(t.text))
                fail_at(t, "unresolved name '" + t.text + "'");
            return make_name(t.text);
        }
        cur.fail_here("expected expression");
    }

    std::vector<Line> lines_;
    std::size_t cursor_ = 0;
    Document doc_;
};

int tier_of(const Expr& e) {
    switch (e.kind) {
    case ExprKind::join:
    case ExprKind::meet:
        return 1;
    case ExprKind::product:
    case ExprKind::sum:
        return 2;
    default:
        return 3;
    }
}

char op_char(ExprKind kind) {
    switch (kind) {
    case ExprKind::product:
        return '*';
    case ExprKind::sum:
        return '+';
    case ExprKind::join:
        return '|';
    default:
        return '&';
    }
}

} // namespace

std::string SourceError::str() const {
    std::string s = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                    message;
    if (!token.empty())
        s += " (near '" + token + "')";
    return s;
}

const char* to_string(AssertKind kind) {
    switch (kind) {
    case AssertKind::refines:
        return "refines";
    case AssertKind::support_refines:
        return "support-refines";
    case AssertKind::robust:
        return "robust";
    case AssertKind::chaotic:
        return "chaotic";
    case AssertKind::total:
        return "total";
    default:
        return "equal";
    }
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.name != b.name)
        return false;
    if (!a.lhs != !b.lhs || !a.rhs != !b.rhs)
        return false;
    if (a.lhs && !expr_equal(*a.lhs, *b.lhs))
        return false;
    if (a.rhs && !expr_equal(*a.rhs, *b.rhs))
        return false;
    return true;
}

std::string expr_str(const Expr& e) {
    switch (e.kind) {
    case ExprKind::name:
        return e.name;
    case ExprKind::omega:
        return "OMEGA";
    case ExprKind::reflect: {
        const std::string inner = expr_str(*e.lhs);
        return tier_of(*e.lhs) < 3 ? "-(" + inner + ")" : "-" + inner;
    }
    default: {
        const int tier = tier_of(e);
        const std::string op(1, op_char(e.kind));
        // Same-operator chains stay flat on the left; everything that would
        // reassociate or remix on reparse gets parentheses.
        const bool left_parens =
            tier_of(*e.lhs) < tier || (tier_of(*e.lhs) == tier && e.lhs->kind != e.kind);
        const bool right_parens = tier_of(*e.rhs) <= tier;
        std::string l = expr_str(*e.lhs);
        std::string r = expr_str(*e.rhs);
        if (left_parens)
            l = "(" + l + ")";
        if (right_parens)
            r = "(" + r + ")";
        return l + " " + op + " " + r;
    }
    }
}

const FuzzyProcess* Document::find_process(std::string_view name) const {
    for (const auto& p : processes)
        if (p.name == name)
            return &p.process;
    return nullptr;
}

const ExprPtr* Document::find_let(std::string_view name) const {
    for (const auto& l : lets)
        if (l.name == name)
            return &l.expr;
    return nullptr;
}

bool Document::operator==(const Document& other) const {
    if (!(*universe == *other.universe) || processes.size() != other.processes.size() ||
        lets.size() != other.lets.size() || statements.size() != other.statements.size())
        return false;
    for (std::size_t i = 0; i < processes.size(); ++i)
        if (processes[i].name != other.processes[i].name ||
            !(processes[i].process == other.processes[i].process))
            return false;
    for (std::size_t i = 0; i < lets.size(); ++i)
        if (lets[i].name != other.lets[i].name || !expr_equal(*lets[i].expr, *other.lets[i].expr))
            return false;
    for (std::size_t i = 0; i < statements.size(); ++i) {
        const Statement& a = statements[i];
        const Statement& b = other.statements[i];
        if (a.index() != b.index())
            return false;
        if (const auto* as = std::get_if<Assertion>(&a)) {
            const auto& bs = std::get<Assertion>(b);
            if (as->kind != bs.kind || !expr_equal(*as->first, *bs.first))
                return false;
            if (!as->second != !bs.second)
                return false;
            if (as->second && !expr_equal(*as->second, *bs.second))
                return false;
        } else {
            const auto& aq = std::get<Query>(a);
            const auto& bq = std::get<Query>(b);
            if (aq.kind != bq.kind || aq.chain_name != bq.chain_name ||
                aq.chain.size() != bq.chain.size())
                return false;
            if (!aq.first != !bq.first || (aq.first && !expr_equal(*aq.first, *bq.first)))
                return false;
            if (!aq.second != !bq.second || (aq.second && !expr_equal(*aq.second, *bq.second)))
                return false;
            for (std::size_t k = 0; k < aq.chain.size(); ++k)
                if (!expr_equal(*aq.chain[k], *bq.chain[k]))
                    return false;
        }
    }
    return true;
}

ParseResult parse(std::string_view text) {
    try {
        Parser parser(lex(text));
        return ParseResult{parser.run(), std::nullopt};
    } catch (const ParseAbort& abort) {
        return ParseResult{std::nullopt, abort.error};
    }
}

namespace {

/// Operands in adjacent-expression positions (assert, query solve) are
/// wrapped when binary, purely for readability of the canonical form.
std::string operand_str(const Expr& e) {
    const std::string s = expr_str(e);
    return tier_of(e) < 3 ? "(" + s + ")" : s;
}

} // namespace

std::string serialize(const Document& doc) {
    std::ostringstream out;
    out << "universe";
    for (const auto& label : doc.universe->labels())
        out << " " << label;
    out << "\n";

    for (const auto& [name, process] : doc.processes) {
        out << "process " << name << "\n";
        for (const bool is_delta : {true, false}) {
            std::string entries;
            for (std::size_t i = 0; i < process.size(); ++i) {
                const Membership& v = is_delta ? process.delta(i) : process.gamma(i);
                if (!v.is_zero())
                    entries += " " + process.universe()->label(i) + "=" + v.str();
            }
            if (!entries.empty())
                out << "  " << (is_delta ? "delta" : "gamma") << entries << "\n";
        }
        out << "end\n";
    }

    for (const auto& [name, expr] : doc.lets)
        out << "let " << name << " = " << expr_str(*expr) << "\n";

    for (const Statement& statement : doc.statements) {
        if (const auto* a = std::get_if<Assertion>(&statement)) {
            out << "assert " << to_string(a->kind) << " " << operand_str(*a->first);
            if (a->second)
                out << " " << operand_str(*a->second);
            out << "\n";
        } else {
            const auto& q = std::get<Query>(statement);
            switch (q.kind) {
            case QueryKind::solve:
                out << "query solve " << operand_str(*q.first) << " " << operand_str(*q.second)
                    << "\n";
                break;
            case QueryKind::factor:
                out << "query factor " << expr_str(*q.first) << "\n";
                break;
            case QueryKind::chain:
                out << "query chain " << q.chain_name << ":";
                for (std::size_t i = 0; i < q.chain.size(); ++i)
                    out << (i == 0 ? " " : " => ") << expr_str(*q.chain[i]);
                out << "\n";
                break;
            }
        }
    }
    return out.str();
}

FuzzyProcess evaluate(const Document& doc, const Expr& e) {
    switch (e.kind) {
    case ExprKind::name:
        if (const FuzzyProcess* p = doc.find_process(e.name))
            return *p;
        return evaluate(doc, **doc.find_let(e.name));
    case ExprKind::omega:
        return omega(doc.universe);
    case ExprKind::reflect:
        return reflect(evaluate(doc, *e.lhs));
    case ExprKind::product:
        return product(evaluate(doc, *e.lhs), evaluate(doc, *e.rhs));
    case ExprKind::sum:
        return sum(evaluate(doc, *e.lhs), evaluate(doc, *e.rhs));
    case ExprKind::join:
        return join(evaluate(doc, *e.lhs), evaluate(doc, *e.rhs));
    default:
        return meet(evaluate(doc, *e.lhs), evaluate(doc, *e.rhs));
    }
}

std::string document_to_json(const Document& doc) {
    using ordered_json = nlohmann::ordered_json;
    ordered_json root;
    root["universe"] = doc.universe->labels();

    ordered_json processes = ordered_json::array();
    for (const auto& [name, process] : doc.processes) {
        ordered_json entry;
        entry["name"] = name;
        for (const bool is_delta : {true, false}) {
            ordered_json map = ordered_json::object();
            for (std::size_t i = 0; i < process.size(); ++i) {
                const Membership& v = is_delta ? process.delta(i) : process.gamma(i);
                if (!v.is_zero())
                    map[process.universe()->label(i)] = v.str();
            }
            entry[is_delta ? "delta" : "gamma"] = std::move(map);
        }
        processes.push_back(std::move(entry));
    }
    root["processes"] = std::move(processes);

    ordered_json lets = ordered_json::array();
    for (const auto& [name, expr] : doc.lets)
        lets.push_back(ordered_json{{"name", name}, {"expr", expr_str(*expr)}});
    root["lets"] = std::move(lets);

    ordered_json statements = ordered_json::array();
    for (const Statement& statement : doc.statements) {
        ordered_json entry;
        if (const auto* a = std::get_if<Assertion>(&statement)) {
            entry["assert"] = to_string(a->kind);
            ordered_json exprs = ordered_json::array();
            exprs.push_back(expr_str(*a->first));
            if (a->second)
                exprs.push_back(expr_str(*a->second));
            entry["exprs"] = std::move(exprs);
        } else {
            const auto& q = std::get<Query>(statement);
            entry["query"] =
                q.kind == QueryKind::solve ? "solve" : q.kind == QueryKind::factor ? "factor" : "chain";
            ordered_json exprs = ordered_json::array();
            if (q.first)
                exprs.push_back(expr_str(*q.first));
            if (q.second)
                exprs.push_back(expr_str(*q.second));
            for (const auto& e : q.chain)
                exprs.push_back(expr_str(*e));
            if (!q.chain_name.empty())
                entry["name"] = q.chain_name;
            entry["exprs"] = std::move(exprs);
        }
        statements.push_back(std::move(entry));
    }
    root["statements"] = std::move(statements);
    return root.dump();
}

} // namespace fproc::dsl

#pragma once

// Line-oriented problem files:
//
//   # comment
//   vertex v1 v2 v3
//   arrow a : v1 -> v2          (optionally "deg -1")
//   relation r1 : v1 -> v3 = a*b - 2 c*d
//   m = 3
//   option max_len = 8
//   potential = eps*a*b         (graded experiments only)
//
// Expressions are sums of terms "[rational ['*']] path", paths being arrow ids
// joined by '*' and composed left to right. A lone "0" is the zero element.

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qpot/errors.hpp"
#include "qpot/ginzburg.hpp"
#include "qpot/path_algebra.hpp"
#include "qpot/quiver.hpp"
#include "qpot/rational.hpp"

namespace qpot {

struct Diagnostic {
    enum class Kind { lexical, reference, type, structural };
    std::size_t line = 0;
    std::size_t column = 0;
    Kind kind = Kind::lexical;
    std::string message;

    std::string to_string() const;
};

inline const char* to_string(Diagnostic::Kind k) {
    switch (k) {
    case Diagnostic::Kind::lexical: return "lexical";
    case Diagnostic::Kind::reference: return "reference";
    case Diagnostic::Kind::type: return "type";
    case Diagnostic::Kind::structural: return "structural";
    }
    return "?";
}

inline std::string Diagnostic::to_string() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + qpot::to_string(kind) + " error: " + message;
}

class ParseError : public Error {
  public:
    explicit ParseError(std::vector<Diagnostic> diagnostics)
        : Error(summary(diagnostics)), diagnostics_(std::move(diagnostics)) {}
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

  private:
    static std::string summary(const std::vector<Diagnostic>& d) {
        std::string s;
        for (const auto& x : d) {
            if (!s.empty()) s += '\n';
            s += x.to_string();
        }
        return s;
    }
    std::vector<Diagnostic> diagnostics_;
};

struct ProblemFile {
    QuiverPtr quiver;
    RelationSequence relations;
    std::optional<int> m;
    std::map<std::string, std::string> options;
    std::optional<Superpotential> potential;

    std::optional<long long> int_option(const std::string& key) const {
        auto it = options.find(key);
        if (it == options.end()) return std::nullopt;
        try {
            std::size_t used = 0;
            const long long v = std::stoll(it->second, &used);
            if (used == it->second.size()) return v;
        } catch (const std::exception&) {
        }
        throw Error("option '" + key + "' is not an integer");
    }
};

namespace dsl {

struct Token {
    enum class Type { word, number, symbol, end };
    Type type = Type::end;
    std::string text;
    std::size_t column = 0; // 1-based
};

inline bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '^' || c == '\'' || c == '.';
}

// Splits one line (comment already removed). Numbers are digit runs with an
// optional "/digits"; words are runs of identifier characters.
inline std::vector<Token> lex(std::string_view line, std::size_t line_no, std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t col = i + 1;
        if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
            out.push_back({Token::Type::symbol, "->", col});
            i += 2;
        } else if (c == ':' || c == '=' || c == '+' || c == '-' || c == '*') {
            out.push_back({Token::Type::symbol, std::string(1, c), col});
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            bool is_word = j < line.size() && word_char(line[j]);
            if (!is_word && j < line.size() && line[j] == '/') {
                std::size_t k = j + 1;
                while (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) ++k;
                if (k == j + 1) {
                    diags.push_back({line_no, j + 1, Diagnostic::Kind::lexical, "expected digits after '/'"});
                    i = k;
                    continue;
                }
                j = k;
            }
            if (is_word) {
                while (j < line.size() && word_char(line[j])) ++j;
                out.push_back({Token::Type::word, std::string(line.substr(i, j - i)), col});
            } else {
                out.push_back({Token::Type::number, std::string(line.substr(i, j - i)), col});
            }
            i = j;
        } else if (word_char(c)) {
            std::size_t j = i;
            while (j < line.size() && word_char(line[j])) ++j;
            out.push_back({Token::Type::word, std::string(line.substr(i, j - i)), col});
            i = j;
        } else {
            diags.push_back({line_no, col, Diagnostic::Kind::lexical, std::string("unexpected character '") + c + "'"});
            ++i;
        }
    }
    out.push_back({Token::Type::end, "", line.size() + 1});
    return out;
}

inline bool is_identifier(const std::string& s) {
    return !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_');
}

// Parsed but unresolved expression: terms of (coefficient, arrow tokens).
struct RawTerm {
    Rational coefficient;
    std::vector<Token> arrows;
    std::size_t column = 0;
};

struct RawExpr {
    std::vector<RawTerm> terms;
    bool explicit_zero = false;
};

class LineParser {
  public:
    LineParser(std::vector<Token> tokens, std::size_t line, std::vector<Diagnostic>& diags) : t_(std::move(tokens)), line_(line), diags_(diags) {}

    const Token& peek() const { return t_[pos_]; }
    Token next() { return t_[pos_ < t_.size() - 1 ? pos_++ : pos_]; }
    bool at_end() const { return peek().type == Token::Type::end; }
    bool accept(std::string_view sym) {
        if (peek().type == Token::Type::symbol && peek().text == sym) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool expect(std::string_view sym) {
        if (accept(sym)) return true;
        error(peek(), "expected '" + std::string(sym) + "'");
        return false;
    }
    std::optional<Token> word(const char* what) {
        if (peek().type == Token::Type::word || peek().type == Token::Type::number) return next();
        error(peek(), std::string("expected ") + what);
        return std::nullopt;
    }
    std::optional<Token> identifier(const char* what) {
        if (peek().type == Token::Type::word && is_identifier(peek().text)) return next();
        error(peek(), std::string("expected ") + what);
        return std::nullopt;
    }
    bool finish() {
        if (at_end()) return true;
        error(peek(), "unexpected '" + peek().text + "'");
        return false;
    }
    void error(const Token& at, std::string msg, Diagnostic::Kind kind = Diagnostic::Kind::lexical) {
        diags_.push_back({line_, at.column, kind, std::move(msg)});
    }

    std::optional<RawExpr> expression() {
        RawExpr e;
        bool first = true;
        while (true) {
            int sign = 1;
            if (accept("-")) {
                sign = -1;
            } else if (!first && !accept("+")) {
                break;
            } else if (first) {
                accept("+");
            }
            first = false;
            RawTerm term;
            term.column = peek().column;
            term.coefficient = sign;
            bool has_number = false;
            if (peek().type == Token::Type::number) {
                const Token num = next();
                try {
                    term.coefficient *= Rational::parse(num.text);
                } catch (const Error&) {
                    error(num, "malformed coefficient '" + num.text + "'", Diagnostic::Kind::type);
                    return std::nullopt;
                }
                has_number = true;
                accept("*");
            }
            if (peek().type == Token::Type::word) {
                if (!is_identifier(peek().text)) {
                    error(peek(), "coefficient '" + peek().text + "' is not a rational number", Diagnostic::Kind::type);
                    return std::nullopt;
                }
                term.arrows.push_back(next());
                while (accept("*")) {
                    auto a = identifier("an arrow id after '*'");
                    if (!a) return std::nullopt;
                    term.arrows.push_back(*a);
                }
            } else if (has_number) {
                if (!term.coefficient.is_zero() || !e.terms.empty() || !at_end()) {
                    error(peek(), "a term needs a path; only a lone 0 may stand alone", Diagnostic::Kind::type);
                    return std::nullopt;
                }
                e.explicit_zero = true;
                return e;
            } else {
                error(peek(), "expected a term");
                return std::nullopt;
            }
            e.terms.push_back(std::move(term));
        }
        return e;
    }

  private:
    std::vector<Token> t_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::vector<Diagnostic>& diags_;
};

struct RawRelation {
    std::size_t line = 0;
    Token label;
    Token source;
    Token target;
    RawExpr body;
};

// Resolves a raw expression over q. Reports unknown arrows and
// non-composable products; returns nullopt if anything failed.
inline std::optional<PathElement> resolve(const QuiverPtr& q, const RawExpr& e, std::size_t line, std::vector<Diagnostic>& diags) {
    PathElement out(q);
    bool ok = true;
    for (const auto& term : e.terms) {
        Path p;
        bool term_ok = true;
        for (const auto& tok : term.arrows) {
            const auto a = q->find_arrow(tok.text);
            if (!a) {
                diags.push_back({line, tok.column, Diagnostic::Kind::reference, "unknown arrow '" + tok.text + "'"});
                term_ok = false;
                continue;
            }
            if (!p.arrows.empty() && q->target(p.arrows.back()) != q->source(*a)) {
                diags.push_back({line, tok.column, Diagnostic::Kind::structural,
                                 "arrow '" + tok.text + "' does not start where '" + q->arrow_id(p.arrows.back()) + "' ends"});
                term_ok = false;
            }
            p.arrows.push_back(static_cast<std::uint32_t>(*a));
        }
        if (!term_ok) {
            ok = false;
            continue;
        }
        p.base = static_cast<std::uint32_t>(q->source(p.arrows.front()));
        out.add_term(p, term.coefficient);
    }
    if (!ok) return std::nullopt;
    return out;
}

} // namespace dsl

inline ProblemFile parse(std::string_view text) {
    using dsl::Token;
    std::vector<Diagnostic> diags;
    std::vector<std::pair<std::size_t, Token>> vertex_tokens;
    struct RawArrow {
        std::size_t line;
        Token id, source, target;
        int degree;
    };
    std::vector<RawArrow> arrows;
    std::vector<dsl::RawRelation> relations;
    std::optional<std::pair<std::size_t, dsl::RawExpr>> potential;
    ProblemFile pf;
    std::map<std::string, std::size_t> option_lines;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const std::size_t before = diags.size();
        auto tokens = dsl::lex(line, line_no, diags);
        if (diags.size() != before) continue;
        if (tokens.front().type == Token::Type::end) continue;
        dsl::LineParser p(std::move(tokens), line_no, diags);
        const Token head = p.next();
        if (head.type != Token::Type::word) {
            p.error(head, "expected a statement keyword");
            continue;
        }
        if (head.text == "vertex") {
            if (p.at_end()) p.error(p.peek(), "expected at least one vertex id");
            while (!p.at_end()) {
                auto v = p.word("a vertex id");
                if (!v) break;
                vertex_tokens.emplace_back(line_no, *v);
            }
        } else if (head.text == "arrow") {
            auto id = p.identifier("an arrow id");
            if (!id || !p.expect(":")) continue;
            auto s = p.word("a source vertex");
            if (!s || !p.expect("->")) continue;
            auto t = p.word("a target vertex");
            if (!t) continue;
            int degree = 0;
            if (p.peek().type == Token::Type::word && p.peek().text == "deg") {
                p.next();
                const bool negative = p.accept("-");
                if (p.peek().type != Token::Type::number || p.peek().text.find('/') != std::string::npos) {
                    p.error(p.peek(), "degree must be an integer", Diagnostic::Kind::type);
                    continue;
                }
                try {
                    degree = std::stoi(p.next().text) * (negative ? -1 : 1);
                } catch (const std::exception&) {
                    p.error(p.peek(), "degree out of range", Diagnostic::Kind::type);
                    continue;
                }
            }
            if (!p.finish()) continue;
            arrows.push_back({line_no, *id, *s, *t, degree});
        } else if (head.text == "relation") {
            auto id = p.word("a relation id");
            if (!id || !p.expect(":")) continue;
            auto s = p.word("a source vertex");
            if (!s || !p.expect("->")) continue;
            auto t = p.word("a target vertex");
            if (!t || !p.expect("=")) continue;
            auto e = p.expression();
            if (!e || !p.finish()) continue;
            relations.push_back({line_no, *id, *s, *t, std::move(*e)});
        } else if (head.text == "m") {
            if (!p.expect("=")) continue;
            const bool negative = p.accept("-");
            if (p.peek().type != Token::Type::number || p.peek().text.find('/') != std::string::npos) {
                p.error(p.peek(), "m must be an integer", Diagnostic::Kind::type);
                continue;
            }
            const Token num = p.next();
            if (!p.finish()) continue;
            if (pf.m) {
                p.error(head, "m is set twice", Diagnostic::Kind::structural);
                continue;
            }
            try {
                pf.m = std::stoi(num.text) * (negative ? -1 : 1);
            } catch (const std::exception&) {
                p.error(num, "m out of range", Diagnostic::Kind::type);
            }
        } else if (head.text == "option") {
            auto key = p.identifier("an option name");
            if (!key || !p.expect("=")) continue;
            std::string value;
            if (p.accept("-")) value = "-";
            auto v = p.word("an option value");
            if (!v || !p.finish()) continue;
            value += v->text;
            if (option_lines.contains(key->text)) {
                p.error(*key, "option '" + key->text + "' is set twice", Diagnostic::Kind::structural);
                continue;
            }
            option_lines[key->text] = line_no;
            pf.options[key->text] = value;
        } else if (head.text == "potential") {
            if (!p.expect("=")) continue;
            auto e = p.expression();
            if (!e || !p.finish()) continue;
            if (potential) {
                p.error(head, "potential is set twice", Diagnostic::Kind::structural);
                continue;
            }
            potential.emplace(line_no, std::move(*e));
        } else {
            p.error(head, "unknown statement '" + head.text + "'");
        }
    }

    // Quiver
    GradedQuiver q;
    std::map<std::string, bool> seen_vertex;
    for (const auto& [line, tok] : vertex_tokens) {
        if (seen_vertex[tok.text]) {
            diags.push_back({line, tok.column, Diagnostic::Kind::structural, "duplicate vertex '" + tok.text + "'"});
            continue;
        }
        seen_vertex[tok.text] = true;
        q.add_vertex(tok.text);
    }
    for (const auto& a : arrows) {
        bool ok = true;
        for (const auto* end : {&a.source, &a.target}) {
            if (!seen_vertex.contains(end->text)) {
                diags.push_back({a.line, end->column, Diagnostic::Kind::reference, "unknown vertex '" + end->text + "'"});
                ok = false;
            }
        }
        if (q.find_arrow(a.id.text)) {
            diags.push_back({a.line, a.id.column, Diagnostic::Kind::structural, "duplicate arrow '" + a.id.text + "'"});
            ok = false;
        }
        if (ok) q.add_arrow(a.id.text, a.source.text, a.target.text, a.degree);
    }
    pf.quiver = share(std::move(q));
    pf.relations = RelationSequence(pf.quiver);

    // Relations
    std::map<std::string, bool> seen_relation;
    for (const auto& r : relations) {
        bool ok = true;
        if (seen_relation[r.label.text]) {
            diags.push_back({r.line, r.label.column, Diagnostic::Kind::structural, "duplicate relation '" + r.label.text + "'"});
            ok = false;
        }
        seen_relation[r.label.text] = true;
        for (const auto* end : {&r.source, &r.target}) {
            if (!pf.quiver->find_vertex(end->text)) {
                diags.push_back({r.line, end->column, Diagnostic::Kind::reference, "unknown vertex '" + end->text + "'"});
                ok = false;
            }
        }
        auto body = dsl::resolve(pf.quiver, r.body, r.line, diags);
        if (!body || !ok) continue;
        for (const auto& term : r.body.terms) {
            for (const auto& tok : term.arrows) {
                if (pf.quiver->degree(pf.quiver->arrow(tok.text)) != 0) {
                    diags.push_back({r.line, tok.column, Diagnostic::Kind::type, "relations may only use degree-0 arrows; '" + tok.text + "' is graded"});
                    ok = false;
                }
            }
        }
        const auto s = *pf.quiver->find_vertex(r.source.text);
        const auto t = *pf.quiver->find_vertex(r.target.text);
        for (const auto& term : r.body.terms) {
            Path p;
            p.base = static_cast<std::uint32_t>(pf.quiver->source(pf.quiver->arrow(term.arrows.front().text)));
            for (const auto& tok : term.arrows) p.arrows.push_back(static_cast<std::uint32_t>(pf.quiver->arrow(tok.text)));
            if (path_source(*pf.quiver, p) != s || path_target(*pf.quiver, p) != t) {
                diags.push_back({r.line, term.column, Diagnostic::Kind::structural,
                                 "term '" + path_to_string(*pf.quiver, p) + "' does not run from " + r.source.text + " to " + r.target.text});
                ok = false;
            }
        }
        if (ok) pf.relations.add(r.label.text, r.source.text, r.target.text, std::move(*body));
    }

    if (potential) {
        const auto& [line, raw] = *potential;
        if (auto x = dsl::resolve(pf.quiver, raw, line, diags)) {
            try {
                pf.potential = cyclic_reduce(*x);
            } catch (const Error& e) {
                diags.push_back({line, 1, Diagnostic::Kind::structural, e.what()});
            }
        }
    }

    if (!diags.empty()) {
        std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return a.line != b.line ? a.line < b.line : a.column < b.column;
        });
        throw ParseError(std::move(diags));
    }
    return pf;
}

// Parses a single expression over an existing quiver.
inline PathElement parse_element(const QuiverPtr& q, std::string_view text) {
    std::vector<Diagnostic> diags;
    auto tokens = dsl::lex(text, 1, diags);
    if (!diags.empty()) throw ParseError(std::move(diags));
    dsl::LineParser p(std::move(tokens), 1, diags);
    auto e = p.expression();
    if (e) p.finish();
    if (!diags.empty()) throw ParseError(std::move(diags));
    auto x = dsl::resolve(q, *e, 1, diags);
    if (!x) throw ParseError(std::move(diags));
    return *x;
}

inline std::string serialize(const ProblemFile& pf) {
    std::ostringstream out;
    const auto& q = *pf.quiver;
    if (q.vertex_count()) {
        out << "vertex";
        for (const auto& v : q.vertices()) out << ' ' << v;
        out << '\n';
    }
    for (const auto& a : q.arrows()) {
        out << "arrow " << a.id << " : " << a.source << " -> " << a.target;
        if (a.degree != 0) out << " deg " << a.degree;
        out << '\n';
    }
    for (std::size_t k = 0; k < pf.relations.size(); ++k) {
        const auto& r = pf.relations[k];
        out << "relation " << (r.label.empty() ? "r" + std::to_string(k + 1) : r.label) << " : " << r.source << " -> " << r.target << " = "
            << r.body.to_string() << '\n';
    }
    if (pf.m) out << "m = " << *pf.m << '\n';
    for (const auto& [k, v] : pf.options) out << "option " << k << " = " << v << '\n';
    if (pf.potential) out << "potential = " << pf.potential->as_element().to_string() << '\n';
    return out.str();
}

} // namespace qpot

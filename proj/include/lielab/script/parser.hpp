#ifndef LIELAB_SCRIPT_PARSER_HPP
#define LIELAB_SCRIPT_PARSER_HPP

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <openssl/evp.h>

#include "../field.hpp"
#include "../theorems.hpp"
#include "ast.hpp"

namespace lielab::script {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { name, basis, integer, symbol, newline, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, column;
};

inline std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::newline: return "end of line";
        case Tok::end: return "end of input";
        default: return "'" + t.text + "'";
    }
}

inline bool is_basis_name(std::string_view s) {
    if (s.size() < 2 || s[0] != 'e') return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

/// Newlines inside (), [] and {} are dropped so blocks may span lines.
inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, depth = 0;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        i += n;
        col += n;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (c == '\n') {
            if (depth == 0) out.push_back({Tok::newline, "\n", line, col});
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        std::size_t start = i, scol = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) advance(1);
            std::string word(text.substr(start, i - start));
            out.push_back({is_basis_name(word) ? Tok::basis : Tok::name, word, line, scol});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) advance(1);
            out.push_back({Tok::integer, std::string(text.substr(start, i - start)), line, scol});
            continue;
        }
        static const std::string symbols = "=*+-/;,()[]{}";
        if (symbols.find(c) == std::string::npos)
            throw ParseError(line, col, {"a name, number or symbol"}, "'" + std::string(1, c) + "'");
        if (c == '(' || c == '[' || c == '{') ++depth;
        if ((c == ')' || c == ']' || c == '}') && depth > 0) --depth;
        out.push_back({Tok::symbol, std::string(1, c), line, scol});
        advance(1);
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

inline std::string sha256_hex(std::string_view text) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

inline const std::set<std::string>& check_kinds() {
    static const std::set<std::string> kinds{"semiprime", "prime",     "snd",    "essential", "weakq",
                                             "qann",      "center",    "iz",     "ikz",       "deg",
                                             "thm",       "starprime", "starsemiprime"};
    return kinds;
}

/// Checks taking a single algebra.
inline bool algebra_check(const std::string& kind) {
    static const std::set<std::string> kinds{"semiprime", "prime", "snd",       "center",
                                             "iz",        "ikz",   "deg",       "starprime",
                                             "starsemiprime"};
    return kinds.count(kind) > 0;
}

// ---------------------------------------------------------------------------
// Parser with declaration checking

class Parser {
   public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    Script parse() {
        Script s;
        while (true) {
            skip_newlines();
            if (peek().kind == Tok::end) break;
            std::size_t line = peek().line;
            s.statements.push_back(statement());
            s.lines.push_back(line);
            if (peek().kind != Tok::end) expect_kind(Tok::newline, "end of line");
        }
        return s;
    }

   private:
    enum class Kind { field, algebra, extension };
    struct Symbol {
        Kind kind;
        std::string field;  ///< field of an algebra or extension
        std::string outer;  ///< ambient algebra of an extension
    };

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::map<std::string, Symbol> symbols_;

    const Token& peek(std::size_t k = 0) const { return tokens_[std::min(pos_ + k, tokens_.size() - 1)]; }
    Token next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw ParseError(peek().line, peek().column, std::move(expected), describe(peek()));
    }
    void skip_newlines() {
        while (peek().kind == Tok::newline) next();
    }
    bool at_symbol(const char* s) const { return peek().kind == Tok::symbol && peek().text == s; }
    bool at_word(const char* s) const { return peek().kind == Tok::name && peek().text == s; }
    void expect_symbol(const char* s) {
        if (!at_symbol(s)) fail({std::string("'") + s + "'"});
        next();
    }
    void expect_word(const char* s) {
        if (!at_word(s)) fail({std::string("'") + s + "'"});
        next();
    }
    Token expect_kind(Tok k, const std::string& what) {
        if (peek().kind != k) fail({what});
        return next();
    }
    std::string word_of(const std::vector<std::string>& choices) {
        if (peek().kind == Tok::name)
            for (const auto& c : choices)
                if (peek().text == c) return next().text;
        std::vector<std::string> quoted;
        for (const auto& c : choices) quoted.push_back("'" + c + "'");
        fail(quoted);
    }
    std::uint64_t integer() {
        auto t = expect_kind(Tok::integer, "an integer");
        if (t.text.size() > 18) throw SemanticError(t.line, t.column, "integer too large");
        return std::stoull(t.text);
    }

    // names --------------------------------------------------------------

    Token new_name() {
        auto t = expect_kind(Tok::name, "a name");
        if (t.text == "center") throw SemanticError(t.line, t.column, "'center' is reserved");
        if (symbols_.count(t.text)) throw Redeclaration(t.line, t.column, t.text);
        return t;
    }
    const Symbol& use(const Token& t, Kind kind, const std::string& role) {
        auto it = symbols_.find(t.text);
        if (it == symbols_.end()) throw UndeclaredName(t.line, t.column, t.text, role);
        if (it->second.kind != kind) throw SemanticError(t.line, t.column, "'" + t.text + "' is not " + role_article(role));
        return it->second;
    }
    static std::string role_article(const std::string& role) {
        return (role[0] == 'a' || role[0] == 'e' ? "an " : "a ") + role;
    }
    Token name_token() {
        if (peek().kind != Tok::name) fail({"a name"});
        return next();
    }

    // scalars ------------------------------------------------------------

    Scalar scalar() {
        bool negative = false;
        if (at_symbol("-")) {
            next();
            negative = true;
        }
        auto num = expect_kind(Tok::integer, "a number");
        std::string text = num.text;
        if (at_symbol("/")) {
            next();
            auto den = expect_kind(Tok::integer, "a denominator");
            if (den.text.find_first_not_of('0') == std::string::npos)
                throw SemanticError(den.line, den.column, "zero denominator");
            text += "/" + den.text;
        }
        auto q = parse_rational(text);
        if (negative) q = -q;
        return RationalField{}.to_string(q);
    }
    static Scalar negate(const Scalar& s) { return RationalField{}.to_string(-parse_rational(s)); }

    std::size_t basis_ref() {
        if (peek().kind == Tok::basis) {
            auto t = next();
            return std::stoull(t.text.substr(1));
        }
        if (at_word("e") && peek(1).kind == Tok::integer) {
            next();
            return integer();
        }
        fail({"a basis element eN"});
    }
    bool at_basis() const { return peek().kind == Tok::basis || (at_word("e") && peek(1).kind == Tok::integer); }

    Term term(bool negative) {
        Scalar c = "1";
        if (!at_basis()) {
            c = scalar();
            if (at_symbol("*")) next();
        }
        auto line = peek().line, col = peek().column;
        auto idx = basis_ref();
        if (idx == 0) throw SemanticError(line, col, "basis elements are numbered from e1");
        return {negative ? negate(c) : c, idx};
    }

    std::vector<Term> lincomb() {
        if (peek().kind == Tok::integer && peek().text.find_first_not_of('0') == std::string::npos &&
            (peek(1).kind == Tok::symbol && peek(1).text == ";")) {
            next();
            return {};
        }
        std::vector<Term> out;
        bool negative = false;
        if (at_symbol("-") && peek(1).kind == Tok::basis) {
            next();
            negative = true;
        }
        out.push_back(term(negative));
        while (at_symbol("+") || at_symbol("-")) {
            negative = next().text == "-";
            out.push_back(term(negative));
        }
        return out;
    }

    Row vector() {
        expect_symbol("(");
        Row r;
        if (!at_symbol(")")) {
            r.push_back(scalar());
            while (at_symbol(",")) {
                next();
                r.push_back(scalar());
            }
        }
        expect_symbol(")");
        return r;
    }

    std::vector<Row> matrix_rows() {
        expect_symbol("[");
        std::vector<Row> rows(1);
        while (!at_symbol("]")) {
            if (at_symbol(";")) {
                next();
                rows.emplace_back();
                continue;
            }
            if (peek().kind != Tok::integer && !at_symbol("-")) fail({"a number", "';'", "']'"});
            rows.back().push_back(scalar());
        }
        next();
        for (const auto& r : rows)
            if (r.size() != rows.front().size())
                throw SemanticError(peek().line, peek().column, "matrix rows have different lengths");
        return rows;
    }

    // statements ---------------------------------------------------------

    Statement statement() {
        auto w = word_of({"field", "algebra", "involution", "extension", "check"});
        if (w == "field") return field_stmt();
        if (w == "algebra") return algebra_stmt();
        if (w == "involution") return involution_stmt();
        if (w == "extension") return extension_stmt();
        return check_stmt();
    }

    FieldStmt field_stmt() {
        auto name = new_name();
        FieldStmt f{name.text, false, 0};
        auto kind = word_of({"Q", "Fp"});
        if (kind == "Q") {
            f.rational = true;
        } else {
            auto t = peek();
            f.p = integer();
            try {
                PrimeField check(f.p);
            } catch (const TorsionError& e) {
                throw TorsionError("line " + std::to_string(t.line) + ", column " + std::to_string(t.column) + ": " +
                                   e.what());
            } catch (const std::invalid_argument& e) {
                throw SemanticError(t.line, t.column, e.what());
            }
        }
        symbols_[f.name] = {Kind::field, {}, {}};
        return f;
    }

    std::string algebra_operand(const std::string& field) {
        auto t = name_token();
        const auto& s = use(t, Kind::algebra, "algebra");
        if (s.field != field)
            throw SemanticError(t.line, t.column, "'" + t.text + "' is over field " + s.field + ", not " + field);
        return t.text;
    }

    AlgebraStmt algebra_stmt() {
        auto name = new_name();
        expect_word("over");
        auto ft = name_token();
        use(ft, Kind::field, "field");
        expect_symbol("=");
        AlgebraExpr e;
        auto op = word_of({"matrix", "ut", "sut", "abelian", "minus", "dsum", "op", "quotient", "der", "sder", "table"});
        static const std::map<std::string, ExprOp> ops{
            {"matrix", ExprOp::matrix}, {"ut", ExprOp::ut},         {"sut", ExprOp::sut},   {"abelian", ExprOp::abelian},
            {"minus", ExprOp::minus},   {"dsum", ExprOp::dsum},     {"op", ExprOp::op},     {"quotient", ExprOp::quotient},
            {"der", ExprOp::der},       {"sder", ExprOp::sder},     {"table", ExprOp::table}};
        e.op = ops.at(op);
        switch (e.op) {
            case ExprOp::matrix:
            case ExprOp::ut:
            case ExprOp::sut:
            case ExprOp::abelian: {
                auto t = peek();
                e.n = integer();
                if (e.n == 0 || e.n > 16) throw SemanticError(t.line, t.column, "size must be between 1 and 16");
                break;
            }
            case ExprOp::minus:
            case ExprOp::op:
            case ExprOp::der:
            case ExprOp::sder: e.args.push_back(algebra_operand(ft.text)); break;
            case ExprOp::dsum:
                e.args.push_back(algebra_operand(ft.text));
                e.args.push_back(algebra_operand(ft.text));
                break;
            case ExprOp::quotient: {
                e.args.push_back(algebra_operand(ft.text));
                if (at_word("center")) {
                    next();
                    e.args.push_back("center");
                } else {
                    auto t = name_token();
                    const auto& s = use(t, Kind::extension, "extension");
                    if (s.outer != e.args[0])
                        throw SemanticError(t.line, t.column, "'" + t.text + "' is not inside " + e.args[0]);
                    e.args.push_back(t.text);
                }
                break;
            }
            case ExprOp::table: table(e); break;
        }
        symbols_[name.text] = {Kind::algebra, ft.text, {}};
        return {name.text, ft.text, std::move(e)};
    }

    void table(AlgebraExpr& e) {
        if (at_word("lie")) {
            next();
            e.kind = TableKind::lie;
        } else if (at_word("assoc")) {
            next();
            e.kind = TableKind::assoc;
        }
        expect_word("dim");
        auto t = peek();
        e.n = integer();
        if (e.n > 64) throw SemanticError(t.line, t.column, "table dimension must be at most 64");
        expect_symbol("{");
        std::set<std::pair<std::size_t, std::size_t>> seen;
        while (!at_symbol("}")) {
            auto pt = peek();
            auto i = basis_ref();
            expect_symbol("*");
            auto j = basis_ref();
            expect_symbol("=");
            auto terms = lincomb();
            expect_symbol(";");
            for (auto idx : {i, j})
                if (idx == 0 || idx > e.n)
                    throw SemanticError(pt.line, pt.column, "basis index out of range 1.." + std::to_string(e.n));
            for (const auto& tm : terms)
                if (tm.index > e.n)
                    throw SemanticError(pt.line, pt.column, "basis index out of range 1.." + std::to_string(e.n));
            if (!seen.insert({i, j}).second)
                throw SemanticError(pt.line, pt.column, "product e" + std::to_string(i) + " * e" + std::to_string(j) +
                                                            " given twice");
            e.products.push_back({i, j, std::move(terms)});
        }
        next();
    }

    InvolutionStmt involution_stmt() {
        expect_word("on");
        auto t = name_token();
        use(t, Kind::algebra, "algebra");
        expect_symbol("=");
        InvolutionStmt s{t.text, InvolutionKind::transpose, {}};
        auto k = word_of({"transpose", "exchange", "matrix"});
        if (k == "exchange") s.kind = InvolutionKind::exchange;
        if (k == "matrix") {
            s.kind = InvolutionKind::matrix;
            s.rows = matrix_rows();
        }
        return s;
    }

    ExtensionStmt extension_stmt() {
        auto name = new_name();
        expect_symbol("=");
        auto q = name_token();
        const auto& sym = use(q, Kind::algebra, "algebra");
        expect_word("contains");
        expect_word("span");
        expect_symbol("[");
        ExtensionStmt s{name.text, q.text, {}};
        while (!at_symbol("]")) {
            s.vectors.push_back(vector());
            if (at_symbol(",") || at_symbol(";")) next();
        }
        next();
        symbols_[name.text] = {Kind::extension, sym.field, q.text};
        return s;
    }

    /// An algebra or an extension; returns the ambient algebra's name.
    std::string space_operand(std::string& out) {
        auto t = name_token();
        auto it = symbols_.find(t.text);
        if (it == symbols_.end()) throw UndeclaredName(t.line, t.column, t.text, "algebra or extension");
        if (it->second.kind == Kind::field) throw SemanticError(t.line, t.column, "'" + t.text + "' is a field");
        out = t.text;
        return it->second.kind == Kind::algebra ? t.text : it->second.outer;
    }

    CheckStmt check_stmt() {
        CheckStmt c;
        auto kt = peek();
        if (kt.kind != Tok::name || !check_kinds().count(kt.text)) {
            std::vector<std::string> kinds;
            for (const auto& k : check_kinds()) kinds.push_back("'" + k + "'");
            fail(kinds);
        }
        c.kind = next().text;
        if (algebra_check(c.kind)) {
            auto t = name_token();
            use(t, Kind::algebra, "algebra");
            c.args.push_back(t.text);
        } else if (c.kind == "essential" || c.kind == "weakq") {
            auto t = name_token();
            use(t, Kind::extension, "extension");
            c.args.push_back(t.text);
        } else if (c.kind == "qann") {
            std::string x, y;
            auto at = peek();
            auto ax = space_operand(x);
            auto ay = space_operand(y);
            if (ax != ay) throw SemanticError(at.line, at.column, "'" + x + "' and '" + y + "' live in different algebras");
            c.args = {x, y};
            auto m = word_of({"enumerate", "member"});
            if (m == "enumerate") {
                c.mode = QAnnMode::enumerate;
            } else {
                c.mode = QAnnMode::member;
                c.vector = vector();
            }
        } else {  // thm
            auto nt = peek();
            if (nt.kind != Tok::name || !parse_theorem_name(nt.text)) {
                std::vector<std::string> names;
                for (const auto& [n, text] : theorem_names()) names.push_back("'" + text + "'");
                fail(names);
            }
            c.theorem = next().text;
            auto t = name_token();
            if (takes_extension(*parse_theorem_name(c.theorem)))
                use(t, Kind::extension, "extension");
            else
                use(t, Kind::algebra, "algebra");
            c.args.push_back(t.text);
        }
        if (at_word("budget")) {
            next();
            auto t = peek();
            c.budget = integer();
            if (*c.budget == 0) throw SemanticError(t.line, t.column, "budget must be positive");
        }
        return c;
    }
};

/// Parses and validates a script; the hash covers the exact text.
inline Script parse_script(std::string_view text) {
    Script s = Parser(text).parse();
    s.source_hash = sha256_hex(text);
    return s;
}

}  // namespace lielab::script

#endif

#ifndef LIELAB_SCRIPT_PRINTER_HPP
#define LIELAB_SCRIPT_PRINTER_HPP

#include <string>
#include <variant>

#include "ast.hpp"

namespace lielab::script {

namespace detail {

inline std::string join(const Row& r, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? sep : "") + r[i];
    return s;
}

inline std::string print_vector(const Row& r) { return "(" + join(r, ", ") + ")"; }

inline std::string print_rows(const std::vector<Row>& rows) {
    std::string s = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) s += (i ? "; " : "") + join(rows[i], " ");
    return s + "]";
}

inline std::string print_term(const Term& t, bool first) {
    bool negative = !t.coeff.empty() && t.coeff[0] == '-';
    std::string mag = negative ? t.coeff.substr(1) : t.coeff;
    std::string body = (mag == "1" ? "" : mag + " ") + "e" + std::to_string(t.index);
    if (first) return (negative ? "-" : "") + body;
    return (negative ? " - " : " + ") + body;
}

inline std::string print_lincomb(const std::vector<Term>& terms) {
    if (terms.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) s += print_term(terms[i], i == 0);
    return s;
}

inline std::string print_product(const Product& p) {
    return "e" + std::to_string(p.left) + " * e" + std::to_string(p.right) + " = " + print_lincomb(p.terms) + ";";
}

inline std::string print_expr(const AlgebraExpr& e, bool multiline) {
    switch (e.op) {
        case ExprOp::matrix: return "matrix " + std::to_string(e.n);
        case ExprOp::ut: return "ut " + std::to_string(e.n);
        case ExprOp::sut: return "sut " + std::to_string(e.n);
        case ExprOp::abelian: return "abelian " + std::to_string(e.n);
        case ExprOp::minus: return "minus " + e.args[0];
        case ExprOp::dsum: return "dsum " + e.args[0] + " " + e.args[1];
        case ExprOp::op: return "op " + e.args[0];
        case ExprOp::quotient: return "quotient " + e.args[0] + " " + e.args[1];
        case ExprOp::der: return "der " + e.args[0];
        case ExprOp::sder: return "sder " + e.args[0];
        case ExprOp::table: {
            std::string s = "table ";
            if (e.kind == TableKind::lie) s += "lie ";
            if (e.kind == TableKind::assoc) s += "assoc ";
            s += "dim " + std::to_string(e.n) + " {";
            if (e.products.empty()) return s + "}";
            for (const auto& p : e.products) s += (multiline ? "\n    " : " ") + print_product(p);
            return s + (multiline ? "\n}" : " }");
        }
    }
    return {};
}

}  // namespace detail

/// Canonical text of one statement; `multiline` spreads table products over lines.
inline std::string print_statement(const Statement& st, bool multiline = false) {
    struct Visitor {
        bool multiline;
        std::string operator()(const FieldStmt& f) const {
            return "field " + f.name + (f.rational ? " Q" : " Fp " + std::to_string(f.p));
        }
        std::string operator()(const AlgebraStmt& a) const {
            return "algebra " + a.name + " over " + a.field + " = " + detail::print_expr(a.expr, multiline);
        }
        std::string operator()(const InvolutionStmt& i) const {
            std::string s = "involution on " + i.algebra + " = ";
            switch (i.kind) {
                case InvolutionKind::transpose: return s + "transpose";
                case InvolutionKind::exchange: return s + "exchange";
                case InvolutionKind::matrix: return s + "matrix " + detail::print_rows(i.rows);
            }
            return s;
        }
        std::string operator()(const ExtensionStmt& e) const {
            std::string s = "extension " + e.name + " = " + e.outer + " contains span [";
            for (std::size_t i = 0; i < e.vectors.size(); ++i) s += (i ? ", " : "") + detail::print_vector(e.vectors[i]);
            return s + "]";
        }
        std::string operator()(const CheckStmt& c) const {
            std::string s = "check " + c.kind;
            if (c.kind == "thm") s += " " + c.theorem;
            for (const auto& a : c.args) s += " " + a;
            if (c.mode == QAnnMode::enumerate) s += " enumerate";
            if (c.mode == QAnnMode::member) s += " member " + detail::print_vector(c.vector);
            if (c.budget) s += " budget " + std::to_string(*c.budget);
            return s;
        }
    };
    return std::visit(Visitor{multiline}, st);
}

/// Canonical script text, one statement per line.
inline std::string print_script(const Script& s) {
    std::string out;
    for (const auto& st : s.statements) out += print_statement(st, true) + "\n";
    return out;
}

}  // namespace lielab::script

#endif

#ifndef LIELAB_SCRIPT_AST_HPP
#define LIELAB_SCRIPT_AST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "../error.hpp"

namespace lielab::script {

/// Exact scalar literal kept in canonical text form ("3", "-1/2").
using Scalar = std::string;
using Row = std::vector<Scalar>;

struct Term {
    Scalar coeff;
    std::size_t index;  ///< 1-based basis index
    bool operator==(const Term&) const = default;
};

/// e_i * e_j = sum of terms; an empty sum is 0.
struct Product {
    std::size_t left, right;
    std::vector<Term> terms;
    bool operator==(const Product&) const = default;
};

enum class ExprOp { matrix, ut, sut, abelian, minus, dsum, op, quotient, der, sder, table };
enum class TableKind { infer, lie, assoc };

struct AlgebraExpr {
    ExprOp op = ExprOp::matrix;
    std::size_t n = 0;              ///< size for presets, dim for tables
    std::vector<std::string> args;  ///< operand names; quotient's second may be "center"
    TableKind kind = TableKind::infer;
    std::vector<Product> products;
    bool operator==(const AlgebraExpr&) const = default;
};

struct FieldStmt {
    std::string name;
    bool rational = false;
    std::uint64_t p = 0;
    bool operator==(const FieldStmt&) const = default;
};

struct AlgebraStmt {
    std::string name, field;
    AlgebraExpr expr;
    bool operator==(const AlgebraStmt&) const = default;
};

enum class InvolutionKind { transpose, exchange, matrix };

struct InvolutionStmt {
    std::string algebra;
    InvolutionKind kind = InvolutionKind::transpose;
    std::vector<Row> rows;
    bool operator==(const InvolutionStmt&) const = default;
};

struct ExtensionStmt {
    std::string name, outer;
    std::vector<Row> vectors;
    bool operator==(const ExtensionStmt&) const = default;
};

enum class QAnnMode { none, enumerate, member };

struct CheckStmt {
    std::string kind;     ///< semiprime, prime, snd, ..., thm
    std::string theorem;  ///< for thm
    std::vector<std::string> args;
    QAnnMode mode = QAnnMode::none;
    Row vector;  ///< for qann member
    std::optional<std::uint64_t> budget;
    bool operator==(const CheckStmt&) const = default;
};

using Statement = std::variant<FieldStmt, AlgebraStmt, InvolutionStmt, ExtensionStmt, CheckStmt>;

struct Script {
    std::vector<Statement> statements;
    std::vector<std::size_t> lines;  ///< source line of each statement
    std::string source_hash;         ///< SHA-256 of the text, hex

    /// Structural equality: positions and hash are ignored.
    bool same_statements(const Script& o) const { return statements == o.statements; }
};

// ---------------------------------------------------------------------------
// Errors raised while reading a script

class ScriptError : public Error {
   public:
    ScriptError(std::string kind, std::size_t line, std::size_t column, const std::string& what)
        : Error(std::move(kind), "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

   private:
    std::size_t line_, column_;
};

class ParseError : public ScriptError {
   public:
    ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected, const std::string& found)
        : ScriptError("ParseError", line, column, message(expected, found)), expected_(std::move(expected)) {}
    const std::vector<std::string>& expected() const noexcept { return expected_; }

   private:
    static std::string message(const std::vector<std::string>& expected, const std::string& found) {
        std::string s = "expected ";
        if (expected.size() > 1) s += "one of ";
        for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? ", " : "") + expected[i];
        return s + "; found " + found;
    }
    std::vector<std::string> expected_;
};

class UndeclaredName : public ScriptError {
   public:
    UndeclaredName(std::size_t line, std::size_t column, const std::string& name, const std::string& role)
        : ScriptError("UndeclaredName", line, column, role + " '" + name + "' is not declared") {}
};

class Redeclaration : public ScriptError {
   public:
    Redeclaration(std::size_t line, std::size_t column, const std::string& name)
        : ScriptError("Redeclaration", line, column, "'" + name + "' is already declared") {}
};

/// A well-formed statement that does not fit its context (wrong kind of name, bad arity, ...).
class SemanticError : public ScriptError {
   public:
    SemanticError(std::size_t line, std::size_t column, const std::string& what)
        : ScriptError("SemanticError", line, column, what) {}
};

}  // namespace lielab::script

#endif

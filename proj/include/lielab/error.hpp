#ifndef LIELAB_ERROR_HPP
#define LIELAB_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lielab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    Error(std::string kind, const std::string& what) : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

   private:
    std::string kind_;
};

/// Characteristic 2 or 3 was requested; the theory needs 1/2 and 1/3.
class TorsionError : public Error {
   public:
    explicit TorsionError(const std::string& what) : Error("TorsionError", what) {}
};

class AmbientMismatch : public Error {
   public:
    explicit AmbientMismatch(const std::string& what) : Error("AmbientMismatch", what) {}
};

/// A law check failed during construction. `witness` holds the offending basis indices.
class LawViolation : public Error {
   public:
    LawViolation(std::string kind, const std::string& what, std::vector<std::size_t> witness)
        : Error(std::move(kind), what), witness_(std::move(witness)) {}
    const std::vector<std::size_t>& witness() const noexcept { return witness_; }

   private:
    std::vector<std::size_t> witness_;
};

class NotAssociative : public LawViolation {
   public:
    NotAssociative(const std::string& what, std::vector<std::size_t> w) : LawViolation("NotAssociative", what, std::move(w)) {}
};

class NotLie : public LawViolation {
   public:
    NotLie(const std::string& what, std::vector<std::size_t> w) : LawViolation("NotLie", what, std::move(w)) {}
};

class NotAnIdeal : public LawViolation {
   public:
    NotAnIdeal(const std::string& what, std::vector<std::size_t> w) : LawViolation("NotAnIdeal", what, std::move(w)) {}
};

class NotAnInvolution : public LawViolation {
   public:
    NotAnInvolution(const std::string& what, std::vector<std::size_t> w)
        : LawViolation("NotAnInvolution", what, std::move(w)) {}
};

class MissingInvolution : public Error {
   public:
    explicit MissingInvolution(const std::string& what) : Error("MissingInvolution", what) {}
};

class BudgetExceeded : public Error {
   public:
    explicit BudgetExceeded(const std::string& what) : Error("BudgetExceeded", what) {}
};

/// An enumeration-bound question was asked over an infinite field.
class Undecided : public Error {
   public:
    explicit Undecided(const std::string& what) : Error("Undecided", what) {}
};

class HypothesisFailed : public Error {
   public:
    HypothesisFailed(std::string which, const std::string& what) : Error("HypothesisFailed", what), which_(std::move(which)) {}
    const std::string& which() const noexcept { return which_; }

   private:
    std::string which_;
};

class NotInQAnn : public Error {
   public:
    explicit NotInQAnn(const std::string& what) : Error("NotInQAnn", what) {}
};

/// Internal consistency failure; always a bug.
class ConsistencyError : public Error {
   public:
    explicit ConsistencyError(const std::string& what) : Error("ConsistencyError", what) {}
};

}  // namespace lielab

#endif

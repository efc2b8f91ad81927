#ifndef LIELAB_VERDICT_HPP
#define LIELAB_VERDICT_HPP

#include <string>
#include <vector>

#include "matrix.hpp"

namespace lielab {

enum class Status { holds, fails, undecided };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::holds: return "holds";
        case Status::fails: return "fails";
        case Status::undecided: return "undecided";
    }
    return "?";
}

/// Outcome of a property check. A `fails` verdict always carries a witness.
template <ExactField F>
struct Verdict {
    Status status = Status::holds;
    std::vector<Vec<F>> witness;
    std::string note;

    static Verdict holds(std::string note = {}) { return {Status::holds, {}, std::move(note)}; }
    static Verdict fails(std::vector<Vec<F>> witness, std::string note) {
        return {Status::fails, std::move(witness), std::move(note)};
    }
    static Verdict undecided(std::string note) { return {Status::undecided, {}, std::move(note)}; }

    bool ok() const { return status == Status::holds; }
    explicit operator bool() const { return ok(); }
};

}  // namespace lielab

#endif

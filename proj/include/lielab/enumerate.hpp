#ifndef LIELAB_ENUMERATE_HPP
#define LIELAB_ENUMERATE_HPP

#include <cstdint>
#include <limits>
#include <string>

#include "linalg.hpp"

namespace lielab {

/// Cap on the number of elements an enumeration may visit.
struct Budget {
    std::uint64_t max_elements = 1'000'000;
};

/// q^n, saturating at UINT64_MAX.
inline std::uint64_t saturating_power(std::uint64_t q, std::size_t n) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / q) return std::numeric_limits<std::uint64_t>::max();
        r *= q;
    }
    return r;
}

/// Number of lines through the origin of F_q^n: (q^n - 1)/(q - 1).
inline std::uint64_t projective_count(std::uint64_t q, std::size_t n) {
    std::uint64_t total = saturating_power(q, n);
    if (total == std::numeric_limits<std::uint64_t>::max()) return total;
    return (total - 1) / (q - 1);
}

inline void require_budget(std::uint64_t needed, const Budget& budget, const std::string& what) {
    if (needed > budget.max_elements)
        throw BudgetExceeded(what + " needs " + std::to_string(needed) + " elements, budget is " +
                             std::to_string(budget.max_elements));
}

/*
 * Visits every vector of F_q^n in counter order (coordinate 0 varies
 * fastest). The visitor returns false to stop early.
 */
template <FiniteField F, class Visitor>
void for_each_vector(const F& f, std::size_t n, const Budget& budget, Visitor&& visit) {
    const std::uint64_t q = f.order();
    require_budget(saturating_power(q, n), budget, "full enumeration of dimension " + std::to_string(n));
    std::vector<std::uint64_t> digits(n, 0);
    Vec<F> v = zero_vector(f, n);
    while (true) {
        if (!visit(static_cast<const Vec<F>&>(v))) return;
        std::size_t i = 0;
        while (i < n) {
            if (++digits[i] < q) {
                v[i] = f.element_at(digits[i]);
                break;
            }
            digits[i] = 0;
            v[i] = f.zero();
            ++i;
        }
        if (i == n) return;
    }
}

/*
 * Visits one representative per line through the origin: the vectors whose
 * last nonzero coordinate equals 1, in increasing counter order.
 */
template <FiniteField F, class Visitor>
void for_each_projective(const F& f, std::size_t n, const Budget& budget, Visitor&& visit) {
    const std::uint64_t q = f.order();
    require_budget(projective_count(q, n), budget, "projective enumeration of dimension " + std::to_string(n));
    for (std::size_t top = 0; top < n; ++top) {
        std::vector<std::uint64_t> digits(top, 0);
        Vec<F> v = zero_vector(f, n);
        v[top] = f.one();
        while (true) {
            if (!visit(static_cast<const Vec<F>&>(v))) return;
            std::size_t i = 0;
            while (i < top) {
                if (++digits[i] < q) {
                    v[i] = f.element_at(digits[i]);
                    break;
                }
                digits[i] = 0;
                v[i] = f.zero();
                ++i;
            }
            if (i == top) break;
        }
    }
}

/// Enumerates every element of a subspace (coefficients in counter order).
template <FiniteField F, class Visitor>
void for_each_in(const Subspace<F>& s, const Budget& budget, Visitor&& visit) {
    for_each_vector(s.field(), s.dim(), budget, [&](const Vec<F>& c) { return visit(s.combine(c)); });
}

template <FiniteField F, class Visitor>
void for_each_projective_in(const Subspace<F>& s, const Budget& budget, Visitor&& visit) {
    for_each_projective(s.field(), s.dim(), budget, [&](const Vec<F>& c) { return visit(s.combine(c)); });
}

}  // namespace lielab

#endif

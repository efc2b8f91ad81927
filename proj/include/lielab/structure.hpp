#ifndef LIELAB_STRUCTURE_HPP
#define LIELAB_STRUCTURE_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "enumerate.hpp"

namespace lielab {

/*
 * Unital associative algebra of operators generated by a set of n x n
 * matrices.  With the multiplication operators of an algebra as generators,
 * orbit(x) is the ideal generated by x.
 */
template <ExactField F>
class OperatorAlgebra {
   public:
    OperatorAlgebra(const F& f, std::size_t n, std::vector<Matrix<F>> generators) : field_(f), n_(n) {
        EchelonBuilder<F> span(f, n * n);
        std::vector<Matrix<F>> frontier;
        auto offer = [&](Matrix<F> m) {
            if (span.add(m.flatten())) {
                basis_.push_back(m);
                frontier.push_back(std::move(m));
            }
        };
        offer(Matrix<F>::identity(f, n));
        for (auto& g : generators) offer(g);
        while (!frontier.empty()) {
            auto current = std::move(frontier);
            frontier.clear();
            for (const auto& b : current)
                for (const auto& g : generators) offer(g * b);
        }
    }

    std::size_t dim() const { return basis_.size(); }
    std::size_t space_dim() const { return n_; }
    /// True when the operators are all of End(F^n): then every nonzero orbit is everything.
    bool is_full() const { return dim() == n_ * n_; }
    const std::vector<Matrix<F>>& basis() const { return basis_; }

    Subspace<F> orbit(const std::vector<Vec<F>>& xs) const {
        EchelonBuilder<F> b(field_, n_);
        for (const auto& x : xs)
            for (const auto& m : basis_) {
                if (b.dim() == n_) break;
                b.add(m.apply(x));
            }
        return b.subspace();
    }
    Subspace<F> orbit(const Vec<F>& x) const { return orbit(std::vector<Vec<F>>{x}); }

   private:
    F field_;
    std::size_t n_;
    std::vector<Matrix<F>> basis_;
};

/// Generators whose invariant subspaces are the ideals (or *-ideals) of A.
template <ExactField F>
std::vector<Matrix<F>> ideal_generators(const Algebra<F>& a, bool star = false) {
    std::vector<Matrix<F>> gens;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a.is_lie()) {
            gens.push_back(a.ad_basis(i));
        } else {
            gens.push_back(a.left_basis(i));
            gens.push_back(a.right_basis(i));
        }
    }
    if (star) {
        if (!a.involution()) throw MissingInvolution("*-ideals need an involution");
        gens.push_back(*a.involution());
    }
    return gens;
}

template <ExactField F>
OperatorAlgebra<F> ideal_operators(const Algebra<F>& a, bool star = false) {
    return OperatorAlgebra<F>(a.field(), a.dim(), ideal_generators(a, star));
}

/*
 * Smallest ideal containing S: [L, I] ⊆ I for Lie algebras, A I + I A ⊆ I
 * for associative ones, and I* = I when `star`.  Computed by span closure
 * to a fixpoint.
 */
template <ExactField F>
Subspace<F> ideal_generated(const Algebra<F>& a, const std::vector<Vec<F>>& s, bool star = false) {
    auto gens = ideal_generators(a, star);
    auto w = Subspace<F>::span(a.field(), a.dim(), s);
    while (true) {
        std::vector<Vec<F>> rows = w.vectors();
        for (std::size_t i = 0; i < w.dim(); ++i)
            for (const auto& g : gens) rows.push_back(g.apply(w.basis_vector(i)));
        auto next = Subspace<F>::span(a.field(), a.dim(), rows);
        if (next.dim() == w.dim()) return w;
        w = std::move(next);
    }
}

/// Ann_X(Y) = {x in X : [x, Y] = 0}.
template <ExactField F>
Subspace<F> annihilator(const Algebra<F>& l, const Subspace<F>& x, const Subspace<F>& y) {
    const F& f = l.field();
    const std::size_t n = l.dim();
    if (x.ambient_dim() != n || y.ambient_dim() != n) throw AmbientMismatch("annihilator: subspaces must live in L");
    if (x.is_zero()) return x;
    Matrix<F> sys(f, n * y.dim(), x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) {
        auto adx = l.ad(x.basis_vector(i));
        for (std::size_t k = 0; k < y.dim(); ++k) {
            auto b = adx.apply(y.basis_vector(k));
            for (std::size_t c = 0; c < n; ++c) sys(k * n + c, i) = b[c];
        }
    }
    auto coeffs = kernel(sys);
    std::vector<Vec<F>> out;
    for (std::size_t i = 0; i < coeffs.dim(); ++i) out.push_back(x.combine(coeffs.basis_vector(i)));
    return Subspace<F>::span(f, n, out);
}

/// Z(L) = Ann_L(L); for an associative algebra this is the associative center.
template <ExactField F>
Subspace<F> center(const Algebra<F>& l) {
    auto full = Subspace<F>::full(l.field(), l.dim());
    return annihilator(l, full, full);
}

template <ExactField F>
struct QAnnMembership {
    bool member = true;
    std::optional<std::size_t> failing_index;  ///< basis index of Y with [x,[x,y]] != 0
    Vec<F> defect;                             ///< that nonzero [x,[x,y]]
};

/// Is x in QAnn(Y), i.e. does (ad x)^2 vanish on Y?
template <ExactField F>
QAnnMembership<F> qann_member(const Algebra<F>& l, const Vec<F>& x, const Subspace<F>& y) {
    auto adx = l.ad(x);
    for (std::size_t k = 0; k < y.dim(); ++k) {
        auto d = adx.apply(adx.apply(y.basis_vector(k)));
        if (!is_zero<F>(l.field(), d)) return {false, k, d};
    }
    return {true, std::nullopt, {}};
}

template <ExactField F>
bool in_qann(const Algebra<F>& l, const Vec<F>& x, const Subspace<F>& y) {
    auto adx = l.ad(x);
    for (std::size_t k = 0; k < y.dim(); ++k)
        if (!is_zero<F>(l.field(), adx.apply(adx.apply(y.basis_vector(k))))) return false;
    return true;
}

/*
 * QAnn_X(Y) as the literal set of elements, in counter order over X's basis
 * coefficients.  Not a subspace in general.
 */
template <ExactField F>
std::vector<Vec<F>> qann_enumerate(const Algebra<F>& l, const Subspace<F>& x, const Subspace<F>& y,
                                   const Budget& budget = {}) {
    if constexpr (!FiniteField<F>) {
        throw Undecided("QAnn enumeration requires a finite field");
    } else {
        std::vector<Vec<F>> out;
        for_each_in(x, budget, [&](const Vec<F>& v) {
            if (in_qann(l, v, y)) out.push_back(v);
            return true;
        });
        return out;
    }
}

/// (ad x)^2 = 0 on all of L.
template <ExactField F>
bool is_absolute_zero_divisor(const Algebra<F>& l, const Vec<F>& x) {
    auto adx = l.ad(x);
    return (adx * adx).is_zero();
}

/// First pair (x, y) of the set with x + y outside it, in set order.
template <ExactField F>
std::optional<std::pair<Vec<F>, Vec<F>>> find_sum_nonclosure(const F& f, const std::vector<Vec<F>>& set) {
    std::set<Vec<F>> members(set.begin(), set.end());
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (!members.count(vec_add(f, set[i], set[j]))) return std::make_pair(set[i], set[j]);
    return std::nullopt;
}

namespace detail {

template <ExactField F>
bool product_vanishes(const Algebra<F>& a, const Subspace<F>& i, const Subspace<F>& j) {
    // [I, J] for Lie algebras, I J for associative ones.
    for (std::size_t p = 0; p < i.dim(); ++p)
        for (std::size_t q = 0; q < j.dim(); ++q)
            if (!is_zero<F>(a.field(), a.product(i.basis_vector(p), j.basis_vector(q)))) return false;
    return true;
}

template <ExactField F>
std::vector<typename F::element> ideal_key(const Subspace<F>& s) {
    auto key = s.basis().data();
    key.push_back(static_cast<typename F::element>(s.dim()));
    return key;
}

/// Distinct principal (*-)ideals idl(x), each with its first generator in projective order.
template <FiniteField F>
std::vector<std::pair<Vec<F>, Subspace<F>>> principal_ideals(const Algebra<F>& a, const OperatorAlgebra<F>& ops,
                                                              const Budget& budget) {
    std::vector<std::pair<Vec<F>, Subspace<F>>> out;
    std::set<std::vector<typename F::element>> seen;
    for_each_projective(a.field(), a.dim(), budget, [&](const Vec<F>& x) {
        auto ideal = ops.orbit(x);
        if (seen.insert(ideal_key(ideal)).second) out.emplace_back(x, std::move(ideal));
        return true;
    });
    return out;
}

inline std::string enumeration_note() { return "universal check needs enumeration over a finite field"; }

}  // namespace detail

/// Strong non-degeneracy: no nonzero x with (ad x)^2 = 0.
template <ExactField F>
Verdict<F> check_snd(const Algebra<F>& l, const Budget& budget = {}) {
    if constexpr (!FiniteField<F>) {
        return Verdict<F>::undecided(detail::enumeration_note());
    } else {
        std::optional<Vec<F>> witness;
        for_each_projective(l.field(), l.dim(), budget, [&](const Vec<F>& x) {
            if (is_absolute_zero_divisor(l, x)) {
                witness = x;
                return false;
            }
            return true;
        });
        if (witness) return Verdict<F>::fails({*witness}, "absolute zero divisor " + l.format(*witness));
        return Verdict<F>::holds("no nonzero absolute zero divisors");
    }
}

/// SND of a subalgebra I in its own right: no nonzero x in I with [x,[x,I]] = 0.
template <ExactField F>
Verdict<F> check_snd_on(const Algebra<F>& l, const Subspace<F>& i, const Budget& budget = {}) {
    if constexpr (!FiniteField<F>) {
        return Verdict<F>::undecided(detail::enumeration_note());
    } else {
        std::optional<Vec<F>> witness;
        for_each_projective_in(i, budget, [&](const Vec<F>& x) {
            if (in_qann(l, x, i)) {
                witness = x;
                return false;
            }
            return true;
        });
        if (witness) return Verdict<F>::fails({*witness}, "absolute zero divisor " + l.format(*witness));
        return Verdict<F>::holds("no nonzero absolute zero divisors");
    }
}

namespace detail {

/*
 * Semiprime / prime style checks reduce to principal ideals: a nonzero
 * ideal with vanishing product contains a principal one with the same
 * property.  When the ideal operators span End(A) the only nonzero ideal is
 * A itself and no enumeration is needed.
 */
template <ExactField F>
Verdict<F> principal_square_check(const Algebra<F>& a, bool star, const Budget& budget, const char* what) {
    auto ops = ideal_operators(a, star);
    auto full = Subspace<F>::full(a.field(), a.dim());
    if (ops.is_full()) {
        if (product_vanishes(a, full, full))
            return Verdict<F>::fails({a.basis_vector(0)}, std::string("the whole algebra has zero product; not ") + what);
        return Verdict<F>::holds("only ideals are 0 and the algebra");
    }
    if constexpr (!FiniteField<F>) {
        return Verdict<F>::undecided(enumeration_note());
    } else {
        for (const auto& [x, ideal] : principal_ideals(a, ops, budget))
            if (product_vanishes(a, ideal, ideal))
                return Verdict<F>::fails({x}, "ideal generated by " + a.format(x) + " has zero product with itself");
        return Verdict<F>::holds();
    }
}

template <ExactField F>
Verdict<F> principal_pair_check(const Algebra<F>& a, bool star, const Budget& budget) {
    auto ops = ideal_operators(a, star);
    auto full = Subspace<F>::full(a.field(), a.dim());
    if (ops.is_full()) {
        if (product_vanishes(a, full, full))
            return Verdict<F>::fails({a.basis_vector(0), a.basis_vector(0)}, "the whole algebra has zero product");
        return Verdict<F>::holds("only ideals are 0 and the algebra");
    }
    if constexpr (!FiniteField<F>) {
        return Verdict<F>::undecided(enumeration_note());
    } else {
        auto ideals = principal_ideals(a, ops, budget);
        for (const auto& [x, i] : ideals)
            for (const auto& [y, j] : ideals)
                if (product_vanishes(a, i, j))
                    return Verdict<F>::fails({x, y}, "ideals generated by " + a.format(x) + " and " + a.format(y) +
                                                         " have zero product");
        return Verdict<F>::holds();
    }
}

}  // namespace detail

/// Lie: [I, I] != 0 for nonzero ideals; associative: I^2 != 0.
template <ExactField F>
Verdict<F> check_semiprime(const Algebra<F>& a, const Budget& budget = {}) {
    return detail::principal_square_check(a, false, budget, "semiprime");
}

/// Lie: [I, J] != 0; associative: I J != 0; for all nonzero ideals I, J.
template <ExactField F>
Verdict<F> check_prime(const Algebra<F>& a, const Budget& budget = {}) {
    return detail::principal_pair_check(a, false, budget);
}

/// Nonzero *-ideals have nonzero pairwise products.
template <ExactField F>
Verdict<F> check_star_prime(const Algebra<F>& a, const Budget& budget = {}) {
    if (!a.involution()) throw MissingInvolution("star_prime needs an involution");
    return detail::principal_pair_check(a, true, budget);
}

template <ExactField F>
Verdict<F> check_star_semiprime(const Algebra<F>& a, const Budget& budget = {}) {
    if (!a.involution()) throw MissingInvolution("star_semiprime needs an involution");
    return detail::principal_square_check(a, true, budget, "*-semiprime");
}

/// I meets every nonzero ideal nontrivially (tested on principal ideals).
template <ExactField F>
Verdict<F> check_essential(const Algebra<F>& a, const Subspace<F>& ideal, const Budget& budget = {}) {
    if (auto w = find_ideal_violation(a, ideal))
        throw NotAnIdeal("essential: subspace is not an ideal", {w->first, w->second});
    auto ops = ideal_operators(a);
    if (ops.is_full()) {
        if (ideal.is_zero()) return Verdict<F>::fails({a.basis_vector(0)}, "zero ideal is not essential");
        return Verdict<F>::holds("only ideals are 0 and the algebra");
    }
    if constexpr (!FiniteField<F>) {
        return Verdict<F>::undecided(detail::enumeration_note());
    } else {
        std::optional<Vec<F>> witness;
        for_each_projective(a.field(), a.dim(), budget, [&](const Vec<F>& x) {
            if (intersect(ops.orbit(x), ideal).is_zero()) {
                witness = x;
                return false;
            }
            return true;
        });
        if (witness)
            return Verdict<F>::fails({*witness}, "ideal generated by " + a.format(*witness) + " misses the ideal");
        return Verdict<F>::holds();
    }
}

/// 0 != [L, q] ⊆ L for every nonzero q in Q.  Decided by linear algebra over any field.
template <ExactField F>
Verdict<F> check_weak_quotient(const Extension<F>& ext) {
    const auto& q = ext.outer;
    const auto& l = ext.inner;
    for (std::size_t j = 0; j < q.dim(); ++j)
        for (std::size_t i = 0; i < l.dim(); ++i)
            if (!l.member(q.bracket(l.basis_vector(i), q.basis_vector(j))))
                return Verdict<F>::fails({q.basis_vector(j), l.basis_vector(i)},
                                         "[L, " + q.label(j) + "] is not contained in L");
    auto ann = annihilator(q, Subspace<F>::full(q.field(), q.dim()), l);
    if (!ann.is_zero())
        return Verdict<F>::fails({ann.basis_vector(0)}, "[L, q] = 0 for q = " + q.format(ann.basis_vector(0)));
    return Verdict<F>::holds("[L, Q] ⊆ L and Ann_Q(L) = 0");
}

/*
 * Largest (*-)ideal of A contained in W: iterate W <- {w in W : g w in W}
 * over the ideal generators until stable.
 */
template <ExactField F>
Subspace<F> largest_ideal_within(const Algebra<F>& a, const Subspace<F>& w, bool star = false) {
    auto gens = ideal_generators(a, star);
    auto current = w;
    while (!current.is_zero()) {
        auto eq = current.equations();
        Matrix<F> sys(a.field(), eq.rows() * gens.size(), current.dim());
        for (std::size_t g = 0; g < gens.size(); ++g) {
            auto block = eq * gens[g] * current.basis().transpose();
            for (std::size_t r = 0; r < block.rows(); ++r)
                for (std::size_t c = 0; c < block.cols(); ++c) sys(g * eq.rows() + r, c) = block(r, c);
        }
        auto coeffs = kernel(sys);
        if (coeffs.dim() == current.dim()) return current;
        std::vector<Vec<F>> out;
        for (std::size_t i = 0; i < coeffs.dim(); ++i) out.push_back(current.combine(coeffs.basis_vector(i)));
        current = Subspace<F>::span(a.field(), a.dim(), out);
    }
    return current;
}

// ---------------------------------------------------------------------------
// Degree of algebraicity over the center

/*
 * deg(x): least d with L_x^d in the span of {c L_x^i : i < d}, where c ranges
 * over the identity and left multiplications by central elements.
 */
template <ExactField F>
std::size_t element_degree(const Algebra<F>& a, const Vec<F>& x, const Subspace<F>& z) {
    const F& f = a.field();
    const std::size_t n = a.dim();
    std::vector<Matrix<F>> scalars{Matrix<F>::identity(f, n)};
    for (std::size_t i = 0; i < z.dim(); ++i) scalars.push_back(a.left_mult(z.basis_vector(i)));
    auto lx = a.left_mult(x);
    EchelonBuilder<F> span(f, n * n);
    Matrix<F> pw = Matrix<F>::identity(f, n);
    for (std::size_t d = 1; d <= n * n + 1; ++d) {
        for (const auto& c : scalars) span.add((c * pw).flatten());
        pw = pw * lx;
        if (span.member(pw.flatten())) return d;
    }
    throw ConsistencyError("degree search did not terminate");
}

/// Unital, one-dimensional center, and the multiplication algebra is all of End(A).
template <ExactField F>
bool is_central_simple(const Algebra<F>& a) {
    if (!a.is_associative() || !a.unit()) return false;
    if (center(a).dim() != 1) return false;
    return ideal_operators(a).is_full();
}

template <ExactField F>
struct DegreeResult {
    std::size_t value = 0;
    bool exact = false;  ///< false: a lower bound (or a value relative to the center only)
    std::optional<Vec<F>> witness;
    std::string note;
};

/*
 * deg(A) = max deg(x).  For central simple A of dimension n^2 the answer is n
 * and the search only looks for a witness.  Otherwise finite fields enumerate
 * every element up to scalars; over Q the basis and seeded random samples give
 * a lower bound.
 */
template <ExactField F>
DegreeResult<F> degree(const Algebra<F>& a, const Budget& budget = {}, std::uint64_t seed = 0) {
    if (!a.is_associative()) throw std::invalid_argument("degree is defined for associative algebras");
    const F& f = a.field();
    auto z = center(a);
    DegreeResult<F> result;

    auto consider = [&](const Vec<F>& x) {
        auto d = element_degree(a, x, z);
        if (d > result.value) {
            result.value = d;
            result.witness = x;
        }
    };
    auto sample = [&](std::size_t target) {
        for (std::size_t i = 0; i < a.dim() && result.value < target; ++i) consider(a.basis_vector(i));
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> coeff(-3, 3);
        for (int t = 0; t < 256 && result.value < target; ++t) {
            Vec<F> x(a.dim());
            for (auto& c : x) c = f.from_int(coeff(rng));
            consider(x);
        }
    };

    if (is_central_simple(a)) {
        auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(a.dim()))));
        if (n * n != a.dim()) throw ConsistencyError("central simple algebra of non-square dimension");
        sample(n);
        if constexpr (FiniteField<F>) {
            if (result.value < n && projective_count(f.order(), a.dim()) <= budget.max_elements)
                for_each_projective(f, a.dim(), budget, [&](const Vec<F>& x) {
                    consider(x);
                    return result.value < n;
                });
        }
        result.value = n;
        result.exact = true;
        result.note = "central simple of dimension " + std::to_string(n * n) + " over its center";
        return result;
    }
    if constexpr (FiniteField<F>) {
        for_each_projective(f, a.dim(), budget, [&](const Vec<F>& x) {
            consider(x);
            return true;
        });
        if (result.value == 0) result.value = 1;
        result.note = "maximum over all elements of the degree over the center; not central simple";
    } else {
        sample(a.dim() + 1);
        result.note = "lower bound from basis and random samples; not central simple";
    }
    return result;
}

}  // namespace lielab

#endif

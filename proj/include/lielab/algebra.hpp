#ifndef LIELAB_ALGEBRA_HPP
#define LIELAB_ALGEBRA_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "linalg.hpp"
#include "verdict.hpp"

namespace lielab {

enum class AlgebraKind { associative, lie };

inline const char* to_string(AlgebraKind k) { return k == AlgebraKind::lie ? "lie" : "associative"; }

enum class Law { associativity, anticommutativity, jacobi, involution, unit };

namespace detail {

/// Basis index tuple that breaks a law, or nothing.
using LawWitness = std::optional<std::vector<std::size_t>>;

template <ExactField F>
struct Table {
    const F& f;
    std::size_t n;
    const std::vector<typename F::element>& t;

    const typename F::element& at(std::size_t i, std::size_t j, std::size_t k) const { return t[(i * n + j) * n + k]; }

    Vec<F> mul(const Vec<F>& x, const Vec<F>& y) const {
        Vec<F> r = zero_vector(f, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (f.is_zero(x[i])) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (f.is_zero(y[j])) continue;
                auto c = f.mul(x[i], y[j]);
                std::span<const typename F::element> row(t.data() + (i * n + j) * n, n);
                axpy<F>(f, c, row, r);
            }
        }
        return r;
    }
    Vec<F> basis_mul(std::size_t i, std::size_t j) const {
        return Vec<F>(t.begin() + static_cast<std::ptrdiff_t>((i * n + j) * n),
                      t.begin() + static_cast<std::ptrdiff_t>((i * n + j + 1) * n));
    }
};

template <ExactField F>
LawWitness find_associativity_violation(const Table<F>& tb) {
    for (std::size_t i = 0; i < tb.n; ++i)
        for (std::size_t j = 0; j < tb.n; ++j) {
            auto ij = tb.basis_mul(i, j);
            for (std::size_t k = 0; k < tb.n; ++k) {
                auto lhs = tb.mul(ij, unit_vector(tb.f, tb.n, k));
                auto rhs = tb.mul(unit_vector(tb.f, tb.n, i), tb.basis_mul(j, k));
                if (!vec_equal(tb.f, lhs, rhs)) return std::vector<std::size_t>{i, j, k};
            }
        }
    return std::nullopt;
}

template <ExactField F>
LawWitness find_anticommutativity_violation(const Table<F>& tb) {
    for (std::size_t i = 0; i < tb.n; ++i)
        for (std::size_t j = i; j < tb.n; ++j) {
            auto s = vec_add(tb.f, tb.basis_mul(i, j), tb.basis_mul(j, i));
            if (!is_zero<F>(tb.f, s)) return std::vector<std::size_t>{i, j};
        }
    return std::nullopt;
}

template <ExactField F>
LawWitness find_jacobi_violation(const Table<F>& tb) {
    const auto e = [&](std::size_t i) { return unit_vector(tb.f, tb.n, i); };
    for (std::size_t i = 0; i < tb.n; ++i)
        for (std::size_t j = 0; j < tb.n; ++j)
            for (std::size_t k = 0; k < tb.n; ++k) {
                auto a = tb.mul(e(i), tb.basis_mul(j, k));
                auto b = tb.mul(e(j), tb.basis_mul(k, i));
                auto c = tb.mul(e(k), tb.basis_mul(i, j));
                if (!is_zero<F>(tb.f, vec_add(tb.f, vec_add(tb.f, a, b), c))) return std::vector<std::size_t>{i, j, k};
            }
    return std::nullopt;
}

template <ExactField F>
LawWitness find_unit_violation(const Table<F>& tb, const Vec<F>& u) {
    for (std::size_t i = 0; i < tb.n; ++i) {
        auto ei = unit_vector(tb.f, tb.n, i);
        if (!vec_equal(tb.f, tb.mul(u, ei), ei) || !vec_equal(tb.f, tb.mul(ei, u), ei))
            return std::vector<std::size_t>{i};
    }
    return std::nullopt;
}

/// Involutive anti-automorphism: s^2 = 1 and s(e_i e_j) = s(e_j) s(e_i).
template <ExactField F>
LawWitness find_involution_violation(const Table<F>& tb, const Matrix<F>& s) {
    if (s.rows() != tb.n || s.cols() != tb.n) throw AmbientMismatch("involution matrix has the wrong size");
    auto sq = s * s;
    for (std::size_t i = 0; i < tb.n; ++i)
        if (!vec_equal(tb.f, sq.column(i), unit_vector(tb.f, tb.n, i))) return std::vector<std::size_t>{i};
    for (std::size_t i = 0; i < tb.n; ++i)
        for (std::size_t j = 0; j < tb.n; ++j) {
            auto lhs = s.apply(tb.basis_mul(i, j));
            auto rhs = tb.mul(s.column(j), s.column(i));
            if (!vec_equal(tb.f, lhs, rhs)) return std::vector<std::size_t>{i, j};
        }
    return std::nullopt;
}

inline std::string tuple_text(const std::vector<std::string>& labels, const std::vector<std::size_t>& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += labels.at(w[i]);
    }
    return s + ")";
}

inline std::vector<std::string> default_labels(std::size_t n, const std::string& stem = "e") {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i + 1));
    return out;
}

}  // namespace detail

/*
 * A finite-dimensional algebra given by structure constants relative to a
 * fixed ordered basis: e_i e_j = sum_k c(i,j,k) e_k.  Values are validated
 * at construction and immutable afterwards.
 *
 * For a Lie algebra the product is the bracket.  For an associative algebra
 * bracket() is the commutator xy - yx, i.e. the Lie structure of A^-.
 */
template <ExactField F>
class Algebra {
   public:
    using element = typename F::element;

    /// Validates the laws of `kind` (plus unit detection for associative tables).
    static Algebra create(F f, std::size_t dim, AlgebraKind kind, std::vector<element> table,
                          std::vector<std::string> labels = {}) {
        if (table.size() != dim * dim * dim) throw AmbientMismatch("structure tensor must have dim^3 entries");
        if (labels.empty()) labels = detail::default_labels(dim);
        if (labels.size() != dim) throw AmbientMismatch("label count must equal the dimension");
        Algebra a(std::move(f), dim, kind, std::move(table), std::move(labels));
        auto tb = a.table();
        if (kind == AlgebraKind::associative) {
            if (auto w = detail::find_associativity_violation(tb))
                throw NotAssociative("associativity fails on " + detail::tuple_text(a.labels_, *w), *w);
            a.unit_ = a.detect_unit();
        } else {
            if (auto w = detail::find_anticommutativity_violation(tb))
                throw NotLie("anticommutativity fails on " + detail::tuple_text(a.labels_, *w), *w);
            if (auto w = detail::find_jacobi_violation(tb))
                throw NotLie("Jacobi identity fails on " + detail::tuple_text(a.labels_, *w), *w);
        }
        a.build_operators();
        return a;
    }

    const F& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    AlgebraKind kind() const { return kind_; }
    bool is_lie() const { return kind_ == AlgebraKind::lie; }
    bool is_associative() const { return kind_ == AlgebraKind::associative; }
    const std::vector<element>& table_data() const { return table_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::optional<Vec<F>>& unit() const { return unit_; }
    const std::optional<Matrix<F>>& involution() const { return involution_; }
    bool has_involution() const { return involution_.has_value(); }

    /// n for the full matrix preset M_n (enables the transpose involution).
    std::optional<std::size_t> matrix_order() const { return matrix_order_; }
    /// Dimension of the first summand when built as a direct sum.
    std::optional<std::size_t> summand_split() const { return split_; }

    const element& structure(std::size_t i, std::size_t j, std::size_t k) const {
        return table_[(i * dim_ + j) * dim_ + k];
    }

    Vec<F> basis_vector(std::size_t i) const { return unit_vector(field_, dim_, i); }
    Vec<F> zero() const { return zero_vector(field_, dim_); }

    Vec<F> product(const Vec<F>& x, const Vec<F>& y) const {
        check(x);
        check(y);
        return table().mul(x, y);
    }

    Vec<F> bracket(const Vec<F>& x, const Vec<F>& y) const {
        if (is_lie()) return product(x, y);
        return vec_sub(field_, product(x, y), product(y, x));
    }

    /// Matrix of y -> [x, y].
    Matrix<F> ad(const Vec<F>& x) const { return combine_ops(ad_basis_, x); }
    /// Matrix of y -> x y.
    Matrix<F> left_mult(const Vec<F>& x) const { return combine_ops(left_basis_, x); }
    /// Matrix of y -> y x.
    Matrix<F> right_mult(const Vec<F>& x) const { return combine_ops(right_basis_, x); }

    const Matrix<F>& ad_basis(std::size_t i) const { return ad_basis_.at(i); }
    const Matrix<F>& left_basis(std::size_t i) const { return left_basis_.at(i); }
    const Matrix<F>& right_basis(std::size_t i) const { return right_basis_.at(i); }

    Vec<F> star(const Vec<F>& x) const {
        if (!involution_) throw MissingInvolution("algebra has no involution");
        return involution_->apply(x);
    }

    bool is_commutative() const {
        for (std::size_t i = 0; i < dim_; ++i)
            if (!ad_basis_[i].is_zero()) return false;
        return true;
    }

    /// Same algebra with a validated involution attached.
    Algebra with_involution(const Matrix<F>& s) const {
        if (!is_associative()) throw NotAnInvolution("involutions are supported on associative algebras only", {});
        if (auto w = detail::find_involution_violation(table(), s))
            throw NotAnInvolution("not an involutive anti-automorphism on " + detail::tuple_text(labels_, *w), *w);
        Algebra a = *this;
        a.involution_ = s;
        return a;
    }

    Algebra without_involution() const {
        Algebra a = *this;
        a.involution_.reset();
        return a;
    }

    Algebra with_labels(std::vector<std::string> labels) const {
        if (labels.size() != dim_) throw AmbientMismatch("label count must equal the dimension");
        Algebra a = *this;
        a.labels_ = std::move(labels);
        return a;
    }

    /// Checks one law; a failure carries the witnessing basis tuple.
    Verdict<F> validate(Law law) const {
        auto tb = table();
        detail::LawWitness w;
        switch (law) {
            case Law::associativity: w = detail::find_associativity_violation(tb); break;
            case Law::anticommutativity: w = detail::find_anticommutativity_violation(tb); break;
            case Law::jacobi: w = detail::find_jacobi_violation(tb); break;
            case Law::involution:
                if (!involution_) throw MissingInvolution("involution law requested on an algebra without involution");
                w = detail::find_involution_violation(tb, *involution_);
                break;
            case Law::unit:
                if (!unit_) return Verdict<F>::fails({}, "no unit element");
                w = detail::find_unit_violation(tb, *unit_);
                break;
        }
        if (!w) return Verdict<F>::holds();
        std::vector<Vec<F>> witness;
        for (auto i : *w) witness.push_back(basis_vector(i));
        return Verdict<F>::fails(std::move(witness), "violated on " + detail::tuple_text(labels_, *w));
    }

    /// Human-readable linear combination, e.g. "e12 + 4*e23".
    std::string format(const Vec<F>& v) const {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (field_.is_zero(v[i])) continue;
            if (!s.empty()) s += " + ";
            if (!field_.equal(v[i], field_.one())) s += field_.to_string(v[i]) + "*";
            s += labels_[i];
        }
        return s.empty() ? "0" : s;
    }

    detail::Table<F> table() const { return {field_, dim_, table_}; }

   private:
    template <ExactField G>
    friend Algebra<G> matrix_algebra(const G&, std::size_t);
    template <ExactField G>
    friend Algebra<G> direct_sum(const Algebra<G>&, const Algebra<G>&);

    Algebra(F f, std::size_t dim, AlgebraKind kind, std::vector<element> table, std::vector<std::string> labels)
        : field_(std::move(f)), dim_(dim), kind_(kind), table_(std::move(table)), labels_(std::move(labels)) {}

    void check(const Vec<F>& x) const {
        if (x.size() != dim_)
            throw AmbientMismatch("vector of length " + std::to_string(x.size()) + " in a " + std::to_string(dim_) +
                                  "-dimensional algebra");
    }

    std::optional<Vec<F>> detect_unit() const {
        // u e_j = e_j and e_j u = e_j, linear in u.
        Matrix<F> sys(field_, 2 * dim_ * dim_, dim_);
        Vec<F> rhs = zero_vector(field_, 2 * dim_ * dim_);
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k) {
                std::size_t r = j * dim_ + k;
                for (std::size_t i = 0; i < dim_; ++i) {
                    sys(r, i) = structure(i, j, k);
                    sys(dim_ * dim_ + r, i) = structure(j, i, k);
                }
                if (j == k) rhs[r] = rhs[dim_ * dim_ + r] = field_.one();
            }
        return solve(sys, rhs);
    }

    void build_operators() {
        ad_basis_.clear();
        left_basis_.clear();
        right_basis_.clear();
        for (std::size_t i = 0; i < dim_; ++i) {
            Matrix<F> l(field_, dim_, dim_), r(field_, dim_, dim_);
            for (std::size_t j = 0; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k) {
                    l(k, j) = structure(i, j, k);
                    r(k, j) = structure(j, i, k);
                }
            ad_basis_.push_back(is_lie() ? l : l - r);
            left_basis_.push_back(std::move(l));
            right_basis_.push_back(std::move(r));
        }
    }

    Matrix<F> combine_ops(const std::vector<Matrix<F>>& ops, const Vec<F>& x) const {
        check(x);
        Matrix<F> m(field_, dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            if (!field_.is_zero(x[i])) m += ops[i].scaled(x[i]);
        return m;
    }

    F field_;
    std::size_t dim_;
    AlgebraKind kind_;
    std::vector<element> table_;
    std::vector<std::string> labels_;
    std::optional<Vec<F>> unit_;
    std::optional<Matrix<F>> involution_;
    std::optional<std::size_t> matrix_order_;
    std::optional<std::size_t> split_;
    std::vector<Matrix<F>> ad_basis_, left_basis_, right_basis_;
};

// ---------------------------------------------------------------------------
// Presets. Matrix-unit bases are ordered row-major.

namespace detail {

inline std::string matrix_unit_label(std::size_t i, std::size_t j, std::size_t n) {
    if (n < 10) return "e" + std::to_string(i + 1) + std::to_string(j + 1);
    return "e" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

/// Subalgebra of M_n spanned by the matrix units e_ij selected by `keep`.
template <ExactField F, class Keep>
Algebra<F> matrix_unit_algebra(const F& f, std::size_t n, Keep keep) {
    std::vector<std::pair<std::size_t, std::size_t>> units;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (keep(i, j)) units.emplace_back(i, j);
    const std::size_t d = units.size();
    if (d == 0) throw std::invalid_argument("preset has dimension zero");
    std::vector<typename F::element> t(d * d * d, f.zero());
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < d; ++a) {
        labels.push_back(matrix_unit_label(units[a].first, units[a].second, n));
        for (std::size_t b = 0; b < d; ++b) {
            if (units[a].second != units[b].first) continue;
            std::pair<std::size_t, std::size_t> target{units[a].first, units[b].second};
            for (std::size_t c = 0; c < d; ++c)
                if (units[c] == target) t[(a * d + b) * d + c] = f.one();
        }
    }
    return Algebra<F>::create(f, d, AlgebraKind::associative, std::move(t), std::move(labels));
}

}  // namespace detail

/// Full matrix algebra M_n(F).
template <ExactField F>
Algebra<F> matrix_algebra(const F& f, std::size_t n) {
    auto a = detail::matrix_unit_algebra(f, n, [](std::size_t, std::size_t) { return true; });
    a.matrix_order_ = n;
    return a;
}

/// Upper triangular n x n matrices.
template <ExactField F>
Algebra<F> upper_triangular(const F& f, std::size_t n) {
    return detail::matrix_unit_algebra(f, n, [](std::size_t i, std::size_t j) { return i <= j; });
}

/// Strictly upper triangular n x n matrices.
template <ExactField F>
Algebra<F> strictly_upper_triangular(const F& f, std::size_t n) {
    return detail::matrix_unit_algebra(f, n, [](std::size_t i, std::size_t j) { return i < j; });
}

/// Zero product on F^n (associative, and also a valid Lie table).
template <ExactField F>
Algebra<F> abelian(const F& f, std::size_t n) {
    return Algebra<F>::create(f, n, AlgebraKind::associative, std::vector<typename F::element>(n * n * n, f.zero()));
}

/// A^- : same space, bracket xy - yx.
template <ExactField F>
Algebra<F> minus(const Algebra<F>& a) {
    if (!a.is_associative()) throw std::invalid_argument("minus requires an associative algebra");
    const F& f = a.field();
    const std::size_t n = a.dim();
    std::vector<typename F::element> t(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) t[(i * n + j) * n + k] = f.sub(a.structure(i, j, k), a.structure(j, i, k));
    return Algebra<F>::create(f, n, AlgebraKind::lie, std::move(t), a.labels());
}

template <ExactField F>
Algebra<F> direct_sum(const Algebra<F>& a, const Algebra<F>& b) {
    if (a.kind() != b.kind()) throw std::invalid_argument("direct sum of algebras of different kinds");
    if (!(a.field() == b.field())) throw AmbientMismatch("direct sum of algebras over different fields");
    const F& f = a.field();
    const std::size_t n = a.dim(), m = b.dim(), d = n + m;
    std::vector<typename F::element> t(d * d * d, f.zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) t[(i * d + j) * d + k] = a.structure(i, j, k);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) t[((n + i) * d + n + j) * d + n + k] = b.structure(i, j, k);
    std::vector<std::string> labels;
    for (const auto& l : a.labels()) labels.push_back(l + "_1");
    for (const auto& l : b.labels()) labels.push_back(l + "_2");
    auto s = Algebra<F>::create(f, d, a.kind(), std::move(t), std::move(labels));
    s.split_ = n;
    if (a.involution() && b.involution()) {
        Matrix<F> inv(f, d, d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv(i, j) = (*a.involution())(i, j);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) inv(n + i, n + j) = (*b.involution())(i, j);
        return s.with_involution(inv);
    }
    return s;
}

/// Opposite algebra: x . y := y x.
template <ExactField F>
Algebra<F> opposite(const Algebra<F>& a) {
    const F& f = a.field();
    const std::size_t n = a.dim();
    std::vector<typename F::element> t(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) t[(i * n + j) * n + k] = a.structure(j, i, k);
    return Algebra<F>::create(f, n, a.kind(), std::move(t), a.labels());
}

// ---------------------------------------------------------------------------
// Subspace-level helpers shared by the structure code.

/// Is S closed under the product (bracket for Lie algebras)?
template <ExactField F>
std::optional<std::pair<std::size_t, std::size_t>> find_unclosed_pair(const Algebra<F>& a, const Subspace<F>& s) {
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = 0; j < s.dim(); ++j)
            if (!s.member(a.product(s.basis_vector(i), s.basis_vector(j)))) return std::make_pair(i, j);
    return std::nullopt;
}

/// Ideal test: [L, I] ⊆ I for Lie algebras, A I + I A ⊆ I for associative ones.
/// Returns (basis index of A, basis index of I) that breaks it.
template <ExactField F>
std::optional<std::pair<std::size_t, std::size_t>> find_ideal_violation(const Algebra<F>& a, const Subspace<F>& ideal) {
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < ideal.dim(); ++j) {
            auto y = ideal.basis_vector(j);
            if (!ideal.member(a.left_basis(i).apply(y))) return std::make_pair(i, j);
            if (!ideal.member(a.right_basis(i).apply(y))) return std::make_pair(i, j);
        }
    return std::nullopt;
}

template <ExactField F>
bool is_ideal(const Algebra<F>& a, const Subspace<F>& s) {
    return !find_ideal_violation(a, s).has_value();
}

template <ExactField F>
bool is_star_invariant(const Algebra<F>& a, const Subspace<F>& s) {
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (!s.member(a.star(s.basis_vector(i)))) return false;
    return true;
}

/// Result of A/I: the algebra on the retained coordinates plus the projection.
template <ExactField F>
struct Quotient {
    Algebra<F> algebra;
    Matrix<F> projection;                 ///< dim(A/I) x dim(A)
    std::vector<std::size_t> retained;    ///< non-pivot coordinates of I, in order

    Vec<F> project(const Vec<F>& v) const { return projection.apply(v); }
    Vec<F> lift(const Vec<F>& w) const {
        Vec<F> v = zero_vector(algebra.field(), projection.cols());
        for (std::size_t i = 0; i < retained.size(); ++i) v[retained[i]] = w[i];
        return v;
    }
};

/*
 * Quotient by an ideal.  The basis of A/I is the classes of the standard
 * vectors at the non-pivot coordinates of I's RREF basis; a vector is
 * projected by clearing its pivot coordinates against I and reading the rest.
 * An involution descends when I is *-invariant.
 */
template <ExactField F>
Quotient<F> quotient(const Algebra<F>& a, const Subspace<F>& ideal) {
    if (ideal.ambient_dim() != a.dim()) throw AmbientMismatch("quotient: ideal lives in a different space");
    if (auto w = find_ideal_violation(a, ideal))
        throw NotAnIdeal("not an ideal: " + a.label(w->first) + " times " + a.format(ideal.basis_vector(w->second)) +
                             " leaves the subspace",
                         {w->first, w->second});
    const F& f = a.field();
    std::vector<bool> pivot(a.dim(), false);
    for (auto p : ideal.pivots()) pivot[p] = true;
    std::vector<std::size_t> retained;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (!pivot[i]) retained.push_back(i);
    const std::size_t d = retained.size();
    if (d == 0) throw std::invalid_argument("quotient by the whole algebra has dimension zero");
    Matrix<F> proj(f, d, a.dim());
    for (std::size_t c = 0; c < a.dim(); ++c) {
        auto r = ideal.reduce(a.basis_vector(c));
        for (std::size_t i = 0; i < d; ++i) proj(i, c) = r[retained[i]];
    }
    std::vector<typename F::element> t(d * d * d);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < d; ++i) {
        labels.push_back(a.label(retained[i]));
        for (std::size_t j = 0; j < d; ++j) {
            auto p = proj.apply(a.product(a.basis_vector(retained[i]), a.basis_vector(retained[j])));
            for (std::size_t k = 0; k < d; ++k) t[(i * d + j) * d + k] = p[k];
        }
    }
    auto q = Algebra<F>::create(f, d, a.kind(), std::move(t), std::move(labels));
    if (a.involution() && is_star_invariant(a, ideal)) {
        Matrix<F> s(f, d, d);
        for (std::size_t j = 0; j < d; ++j) {
            auto img = proj.apply(a.star(a.basis_vector(retained[j])));
            for (std::size_t i = 0; i < d; ++i) s(i, j) = img[i];
        }
        q = q.with_involution(s);
    }
    return {std::move(q), std::move(proj), std::move(retained)};
}

/// The subalgebra S as an algebra in its own right, on S's RREF basis.
template <ExactField F>
Algebra<F> subalgebra(const Algebra<F>& a, const Subspace<F>& s, const std::string& stem = "b") {
    if (s.ambient_dim() != a.dim()) throw AmbientMismatch("subalgebra: subspace lives in a different space");
    if (auto w = find_unclosed_pair(a, s))
        throw LawViolation("NotASubalgebra", "subspace is not closed under the product", {w->first, w->second});
    const F& f = a.field();
    const std::size_t d = s.dim();
    if (d == 0) throw std::invalid_argument("subalgebra of dimension zero");
    std::vector<typename F::element> t(d * d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto c = s.coordinates(a.product(s.basis_vector(i), s.basis_vector(j)));
            for (std::size_t k = 0; k < d; ++k) t[(i * d + j) * d + k] = c[k];
        }
    auto sub = Algebra<F>::create(f, d, a.kind(), std::move(t), detail::default_labels(d, stem));
    if (a.involution() && is_star_invariant(a, s)) {
        Matrix<F> m(f, d, d);
        for (std::size_t j = 0; j < d; ++j) {
            auto c = s.coordinates(a.star(s.basis_vector(j)));
            for (std::size_t i = 0; i < d; ++i) m(i, j) = c[i];
        }
        sub = sub.with_involution(m);
    }
    return sub;
}

// ---------------------------------------------------------------------------
// Involutions

struct TransposeInvolution {};
struct ExchangeInvolution {};
template <ExactField F>
struct MatrixInvolution {
    Matrix<F> matrix;
};

template <ExactField F>
using InvolutionSpec = std::variant<TransposeInvolution, ExchangeInvolution, MatrixInvolution<F>>;

/// Transpose on M_n: e_ij -> e_ji.
template <ExactField F>
Matrix<F> transpose_involution(const Algebra<F>& a) {
    if (!a.matrix_order()) throw NotAnInvolution("transpose is only defined on full matrix presets", {});
    const std::size_t n = *a.matrix_order();
    Matrix<F> s(a.field(), a.dim(), a.dim());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s(j * n + i, i * n + j) = a.field().one();
    return s;
}

/// Exchange on B x B^op: (x, y) -> (y, x).
template <ExactField F>
Matrix<F> exchange_involution(const Algebra<F>& a) {
    if (!a.summand_split() || 2 * *a.summand_split() != a.dim())
        throw NotAnInvolution("exchange requires a direct sum of two summands of equal dimension", {});
    const std::size_t m = *a.summand_split();
    Matrix<F> s(a.field(), a.dim(), a.dim());
    for (std::size_t i = 0; i < m; ++i) {
        s(m + i, i) = a.field().one();
        s(i, m + i) = a.field().one();
    }
    return s;
}

template <ExactField F>
Algebra<F> attach_involution(const Algebra<F>& a, const InvolutionSpec<F>& spec) {
    if (!a.is_associative()) throw NotAnInvolution("involutions are supported on associative algebras only", {});
    Matrix<F> s = std::visit(
        [&](const auto& v) -> Matrix<F> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TransposeInvolution>)
                return transpose_involution(a);
            else if constexpr (std::is_same_v<T, ExchangeInvolution>)
                return exchange_involution(a);
            else
                return v.matrix;
        },
        spec);
    return a.with_involution(s);
}

// ---------------------------------------------------------------------------
// Extensions L ⊆ Q

/// A Lie algebra Q with a distinguished subalgebra L (kept as a subspace of Q).
template <ExactField F>
struct Extension {
    Algebra<F> outer;
    Subspace<F> inner;
};

/// Smallest subspace containing `generators` closed under the product.
template <ExactField F>
Subspace<F> generated_subalgebra(const Algebra<F>& q, const std::vector<Vec<F>>& generators) {
    auto s = Subspace<F>::span(q.field(), q.dim(), generators);
    while (true) {
        std::vector<Vec<F>> rows = s.vectors();
        for (std::size_t i = 0; i < s.dim(); ++i)
            for (std::size_t j = 0; j < s.dim(); ++j) rows.push_back(q.product(s.basis_vector(i), s.basis_vector(j)));
        auto next = Subspace<F>::span(q.field(), q.dim(), rows);
        if (next.dim() == s.dim()) return s;
        s = std::move(next);
    }
}

template <ExactField F>
Extension<F> make_extension(const Algebra<F>& q, const std::vector<Vec<F>>& generators) {
    return {q, generated_subalgebra(q, generators)};
}

/// Wraps an existing subspace; it must already be closed.
template <ExactField F>
Extension<F> extension_from_subspace(const Algebra<F>& q, const Subspace<F>& l) {
    if (auto w = find_unclosed_pair(q, l))
        throw LawViolation("NotASubalgebra", "subspace is not closed under the product", {w->first, w->second});
    return {q, l};
}

}  // namespace lielab

#endif

#ifndef LIELAB_LINALG_HPP
#define LIELAB_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "matrix.hpp"

namespace lielab {

template <ExactField F>
struct RrefResult {
    Matrix<F> reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Pivot: first nonzero entry, scanning columns
/// left to right and rows top to bottom.
template <ExactField F>
RrefResult<F> rref(Matrix<F> m) {
    const F& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && f.is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        auto inv = f.inv(m(r, c));
        for (auto& x : m.row(r)) x = f.mul(x, inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || f.is_zero(m(i, c))) continue;
            auto factor = f.neg(m(i, c));
            axpy<F>(f, factor, m.row(r), m.row(i));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), r, std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).rank;
}

/// A subspace of F^n stored by its canonical RREF basis (no zero rows),
/// so two subspaces are equal iff their basis matrices are identical.
template <ExactField F>
class Subspace {
   public:
    using element = typename F::element;

    /// Row space of `m`.
    static Subspace row_space(const Matrix<F>& m) {
        auto r = rref(m);
        Matrix<F> basis(m.field(), r.rank, m.cols());
        for (std::size_t i = 0; i < r.rank; ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) basis(i, j) = r.reduced(i, j);
        return Subspace(std::move(basis), std::move(r.pivots));
    }

    static Subspace span(const F& f, std::size_t ambient, const std::vector<Vec<F>>& vectors) {
        return row_space(Matrix<F>::from_rows(f, ambient, vectors));
    }

    static Subspace zero(const F& f, std::size_t ambient) { return Subspace(Matrix<F>(f, 0, ambient), {}); }

    static Subspace full(const F& f, std::size_t ambient) {
        std::vector<std::size_t> piv(ambient);
        for (std::size_t i = 0; i < ambient; ++i) piv[i] = i;
        return Subspace(Matrix<F>::identity(f, ambient), std::move(piv));
    }

    const F& field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_dim(); }
    const Matrix<F>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    Vec<F> basis_vector(std::size_t i) const { return basis_.row_vector(i); }
    std::vector<Vec<F>> vectors() const {
        std::vector<Vec<F>> out;
        out.reserve(dim());
        for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_vector(i));
        return out;
    }

    /// v minus its projection along the pivot coordinates; zero iff v is a member.
    Vec<F> reduce(Vec<F> v) const {
        check_ambient(v.size());
        const F& f = field();
        for (std::size_t i = 0; i < dim(); ++i) {
            auto c = v[pivots_[i]];
            if (f.is_zero(c)) continue;
            axpy<F>(f, f.neg(c), basis_.row(i), v);
        }
        return v;
    }

    bool member(const Vec<F>& v) const { return lielab::is_zero<F>(field(), reduce(v)); }

    /// Coordinates of a member in the RREF basis: its entries at the pivot columns.
    Vec<F> coordinates(const Vec<F>& v) const {
        if (!member(v)) throw AmbientMismatch("vector is not a member of the subspace");
        Vec<F> c(dim());
        for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
        return c;
    }

    Vec<F> combine(const Vec<F>& coeffs) const {
        if (coeffs.size() != dim()) throw AmbientMismatch("coefficient count does not match dimension");
        Vec<F> v = zero_vector(field(), ambient_dim());
        for (std::size_t i = 0; i < dim(); ++i) axpy<F>(field(), coeffs[i], basis_.row(i), v);
        return v;
    }

    bool contains(const Subspace& other) const {
        check_ambient(other.ambient_dim());
        for (std::size_t i = 0; i < other.dim(); ++i)
            if (!member(other.basis_vector(i))) return false;
        return true;
    }

    bool operator==(const Subspace& o) const { return pivots_ == o.pivots_ && basis_ == o.basis_; }

    Subspace operator+(const Subspace& o) const {
        check_ambient(o.ambient_dim());
        return row_space(basis_.vstack(o.basis_));
    }

    Subspace with(const Vec<F>& v) const { return row_space(basis_.vstack(Matrix<F>::from_rows(field(), ambient_dim(), {v}))); }

    /// Complement equations: a matrix E with {v : E v = 0} equal to this subspace.
    Matrix<F> equations() const;

    std::string to_string() const {
        std::string s = "span[";
        for (std::size_t i = 0; i < dim(); ++i) {
            if (i) s += ", ";
            s += format_vector<F>(field(), basis_vector(i));
        }
        return s + "]";
    }

   private:
    Subspace(Matrix<F> basis, std::vector<std::size_t> pivots) : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    void check_ambient(std::size_t n) const {
        if (n != ambient_dim())
            throw AmbientMismatch("ambient dimension " + std::to_string(n) + " does not match " +
                                  std::to_string(ambient_dim()));
    }

    Matrix<F> basis_;
    std::vector<std::size_t> pivots_;
};

/// {v : M v = 0}.
template <ExactField F>
Subspace<F> kernel(const Matrix<F>& m) {
    const F& f = m.field();
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<Vec<F>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec<F> v = zero_vector(f, m.cols());
        v[free] = f.one();
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = f.neg(r.reduced(i, free));
        basis.push_back(std::move(v));
    }
    return Subspace<F>::span(f, m.cols(), basis);
}

template <ExactField F>
Matrix<F> Subspace<F>::equations() const {
    // Functionals vanishing on the basis rows: kernel of the basis matrix.
    auto k = kernel(basis_);
    return k.basis();
}

/// S ∩ T via the kernel of [S^T | -T^T].
template <ExactField F>
Subspace<F> intersect(const Subspace<F>& s, const Subspace<F>& t) {
    if (s.ambient_dim() != t.ambient_dim()) throw AmbientMismatch("intersect: ambient dimensions differ");
    const F& f = s.field();
    if (s.is_zero() || t.is_zero()) return Subspace<F>::zero(f, s.ambient_dim());
    Matrix<F> system = s.basis().transpose().hstack(t.basis().transpose().scaled(f.neg(f.one())));
    auto k = kernel(system);
    std::vector<Vec<F>> out;
    for (std::size_t i = 0; i < k.dim(); ++i) {
        auto sol = k.basis_vector(i);
        Vec<F> coeffs(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(s.dim()));
        out.push_back(s.combine(coeffs));
    }
    return Subspace<F>::span(f, s.ambient_dim(), out);
}

template <ExactField F>
Subspace<F> sum(const Subspace<F>& s, const Subspace<F>& t) {
    return s + t;
}

/// Some solution of M x = b, if one exists.
template <ExactField F>
std::optional<Vec<F>> solve(const Matrix<F>& m, const Vec<F>& b) {
    const F& f = m.field();
    if (b.size() != m.rows()) throw AmbientMismatch("solve: right-hand side length mismatch");
    auto aug = m.hstack(Matrix<F>::from_columns(f, m.rows(), {b}));
    auto r = rref(aug);
    if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
    Vec<F> x = zero_vector(f, m.cols());
    for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.reduced(i, m.cols());
    return x;
}

/*
 * Incremental echelon basis.  Each stored row is reduced against the rows
 * before it and has a normalized pivot, so reducing a vector against the
 * rows in insertion order decides membership.
 */
template <ExactField F>
class EchelonBuilder {
   public:
    EchelonBuilder(F f, std::size_t ambient) : field_(std::move(f)), ambient_(ambient) {}

    /// Adds v if it is independent of the stored rows; returns whether it was added.
    bool add(Vec<F> v) {
        reduce_in_place(v);
        std::size_t p = 0;
        while (p < ambient_ && field_.is_zero(v[p])) ++p;
        if (p == ambient_) return false;
        auto inv = field_.inv(v[p]);
        for (auto& x : v) x = field_.mul(x, inv);
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

    bool member(Vec<F> v) const {
        reduce_in_place(v);
        return lielab::is_zero<F>(field_, v);
    }

    std::size_t dim() const { return rows_.size(); }
    const std::vector<Vec<F>>& rows() const { return rows_; }
    Subspace<F> subspace() const { return Subspace<F>::span(field_, ambient_, rows_); }

   private:
    void reduce_in_place(Vec<F>& v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            auto c = v[pivots_[i]];
            if (field_.is_zero(c)) continue;
            axpy<F>(field_, field_.neg(c), rows_[i], v);
        }
    }

    F field_;
    std::size_t ambient_;
    std::vector<Vec<F>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace lielab

#endif

#ifndef LIELAB_DERIVATIONS_HPP
#define LIELAB_DERIVATIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "structure.hpp"

namespace lielab {

enum class DerFlavor { full, sder };

/*
 * Der(A) or SDer(A).  Derivations are dim x dim matrices acting on A's
 * coordinates; `carrier` is the RREF basis of the solution space inside the
 * dim^2-dimensional operator space (row-major flattening), and `lie` holds
 * the commutator structure constants on that basis.
 */
template <ExactField F>
struct DerAlgebra {
    Algebra<F> base;
    Subspace<F> carrier;
    Algebra<F> lie;
    DerFlavor flavor;

    std::size_t dim() const { return carrier.dim(); }

    Matrix<F> op(std::size_t i) const {
        return Matrix<F>::unflatten(base.field(), base.dim(), base.dim(), carrier.basis_vector(i));
    }
    Matrix<F> to_operator(const Vec<F>& coords) const {
        return Matrix<F>::unflatten(base.field(), base.dim(), base.dim(), carrier.combine(coords));
    }
    /// Coordinates of an operator in the carrier basis, if it lies in the carrier.
    std::optional<Vec<F>> coordinates(const Matrix<F>& d) const {
        auto flat = d.flatten();
        if (!carrier.member(flat)) return std::nullopt;
        return carrier.coordinates(flat);
    }
};

namespace detail {

/// Rows expressing D(e_i e_j) - D(e_i) e_j - e_i D(e_j) = 0; unknown D[r][c] at r*n + c.
template <ExactField F>
Matrix<F> leibniz_system(const Algebra<F>& a) {
    const F& f = a.field();
    const std::size_t n = a.dim();
    Matrix<F> sys(f, n * n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t row = (i * n + j) * n + k;
                for (std::size_t c = 0; c < n; ++c) {
                    const auto& t = a.structure(i, j, c);
                    if (!f.is_zero(t)) sys(row, k * n + c) = f.add(sys(row, k * n + c), t);
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const auto& left = a.structure(r, j, k);
                    if (!f.is_zero(left)) sys(row, r * n + i) = f.sub(sys(row, r * n + i), left);
                    const auto& right = a.structure(i, r, k);
                    if (!f.is_zero(right)) sys(row, r * n + j) = f.sub(sys(row, r * n + j), right);
                }
            }
    return sys;
}

/// Rows expressing D S - S D = 0.
template <ExactField F>
Matrix<F> involution_commute_system(const Algebra<F>& a) {
    const F& f = a.field();
    const std::size_t n = a.dim();
    const auto& s = *a.involution();
    Matrix<F> sys(f, n * n, n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t row = r * n + c;
            for (std::size_t m = 0; m < n; ++m) {
                sys(row, r * n + m) = f.add(sys(row, r * n + m), s(m, c));
                sys(row, m * n + c) = f.sub(sys(row, m * n + c), s(r, m));
            }
        }
    return sys;
}

template <ExactField F>
DerAlgebra<F> make_der_algebra(const Algebra<F>& a, const Matrix<F>& system, DerFlavor flavor) {
    const F& f = a.field();
    const std::size_t n = a.dim();
    auto carrier = kernel(system);
    const std::size_t d = carrier.dim();
    std::vector<Matrix<F>> ops;
    for (std::size_t i = 0; i < d; ++i) ops.push_back(Matrix<F>::unflatten(f, n, n, carrier.basis_vector(i)));
    std::vector<typename F::element> table(d * d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto c = commutator(ops[i], ops[j]).flatten();
            if (!carrier.member(c)) throw ConsistencyError("derivations are not closed under the commutator");
            auto coords = carrier.coordinates(c);
            for (std::size_t k = 0; k < d; ++k) table[(i * d + j) * d + k] = coords[k];
        }
    auto lie = Algebra<F>::create(f, d, AlgebraKind::lie, std::move(table), default_labels(d, "d"));
    return {a, std::move(carrier), std::move(lie), flavor};
}

}  // namespace detail

/// Der(A): kernel of the Leibniz system, with the commutator bracket.
template <ExactField F>
DerAlgebra<F> der_algebra(const Algebra<F>& a) {
    return detail::make_der_algebra(a, detail::leibniz_system(a), DerFlavor::full);
}

/// SDer(A): derivations commuting with the involution.
template <ExactField F>
DerAlgebra<F> sder(const Algebra<F>& a) {
    if (!a.involution()) throw MissingInvolution("SDer needs an involution");
    auto sys = detail::leibniz_system(a).vstack(detail::involution_commute_system(a));
    return detail::make_der_algebra(a, sys, DerFlavor::sder);
}

/// Skew elements K = {x : x* = -x} and the center Z_K of the Lie algebra K.
template <ExactField F>
struct SkewPart {
    Subspace<F> skew;
    Subspace<F> center;
};

template <ExactField F>
SkewPart<F> skew_part(const Algebra<F>& a) {
    if (!a.involution()) throw MissingInvolution("skew part needs an involution");
    auto k = kernel(*a.involution() + Matrix<F>::identity(a.field(), a.dim()));
    auto zk = annihilator(a, k, k);
    return {k, zk};
}

/// Image of y -> ad y inside a derivation algebra.
template <ExactField F>
struct AdImage {
    Subspace<F> source;   ///< in A's coordinates
    Matrix<F> map;        ///< dim(D) x dim(source), columns are coordinates of ad(source basis)
    Subspace<F> image;    ///< in D's coordinates
    Subspace<F> kernel;   ///< in A's coordinates; equals Ann_source(A)
};

/// ad restricted to `source` (all of A for Inn(A), K for Inn(K)).
template <ExactField F>
AdImage<F> inner_derivations(const DerAlgebra<F>& d, const Subspace<F>& source) {
    const auto& a = d.base;
    const F& f = a.field();
    Matrix<F> map(f, d.dim(), source.dim());
    for (std::size_t j = 0; j < source.dim(); ++j) {
        auto coords = d.coordinates(a.ad(source.basis_vector(j)));
        if (!coords)
            throw ConsistencyError("ad " + a.format(source.basis_vector(j)) + " is not in the derivation algebra");
        for (std::size_t i = 0; i < d.dim(); ++i) map(i, j) = (*coords)[i];
    }
    auto image = Subspace<F>::row_space(map.transpose());
    auto ker = kernel(map);
    std::vector<Vec<F>> kv;
    for (std::size_t i = 0; i < ker.dim(); ++i) kv.push_back(source.combine(ker.basis_vector(i)));
    return {source, map, std::move(image), Subspace<F>::span(f, a.dim(), kv)};
}

/// Inn(A).
template <ExactField F>
AdImage<F> inner_derivations(const DerAlgebra<F>& d) {
    return inner_derivations(d, Subspace<F>::full(d.base.field(), d.base.dim()));
}

/// Inn(K) = ad(K).
template <ExactField F>
AdImage<F> skew_inner_derivations(const DerAlgebra<F>& d) {
    return inner_derivations(d, skew_part(d.base).skew);
}

enum class RestrictionKind { iz, ikz };

/*
 * I_Z = {D : D(A) ⊆ Z} or I_{K,Z} = {D in SDer : D(K) ⊆ Z}, as a subspace of
 * the derivation algebra's coordinates.  The result is checked to be an ideal.
 */
template <ExactField F>
Subspace<F> restriction_ideal(const DerAlgebra<F>& d, RestrictionKind kind) {
    const auto& a = d.base;
    const F& f = a.field();
    std::vector<Vec<F>> sources;
    if (kind == RestrictionKind::iz) {
        for (std::size_t j = 0; j < a.dim(); ++j) sources.push_back(a.basis_vector(j));
    } else {
        if (d.flavor != DerFlavor::sder) throw std::invalid_argument("I_{K,Z} is defined inside SDer(A)");
        sources = skew_part(a).skew.vectors();
    }
    auto eq = center(a).equations();
    Matrix<F> sys(f, eq.rows() * sources.size(), d.dim());
    for (std::size_t col = 0; col < d.dim(); ++col) {
        auto op = d.op(col);
        for (std::size_t s = 0; s < sources.size(); ++s) {
            auto img = eq.apply(op.apply(sources[s]));
            for (std::size_t r = 0; r < eq.rows(); ++r) sys(s * eq.rows() + r, col) = img[r];
        }
    }
    auto ideal = kernel(sys);
    if (!is_ideal(d.lie, ideal)) throw ConsistencyError("restriction ideal is not an ideal of the derivation algebra");
    return ideal;
}

/// First kind: the involution fixes the center pointwise.
template <ExactField F>
bool involution_is_first_kind(const Algebra<F>& a) {
    auto z = center(a);
    for (std::size_t i = 0; i < z.dim(); ++i)
        if (!vec_equal(a.field(), a.star(z.basis_vector(i)), z.basis_vector(i))) return false;
    return true;
}

}  // namespace lielab

#endif

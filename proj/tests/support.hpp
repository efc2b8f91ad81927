#ifndef LIELAB_TESTS_SUPPORT_HPP
#define LIELAB_TESTS_SUPPORT_HPP

#include <initializer_list>
#include <random>
#include <vector>

#include "lielab/algebra.hpp"
#include "lielab/linalg.hpp"

namespace lielab::testing {

inline const PrimeField F5{5};
inline const PrimeField F7{7};
inline const RationalField QQ{};

template <ExactField F>
Vec<F> vec(const F& f, std::initializer_list<std::int64_t> xs) {
    Vec<F> v;
    for (auto x : xs) v.push_back(f.from_int(x));
    return v;
}

/// Index of the matrix unit e_ij (1-based i, j) in the n x n matrix basis.
inline std::size_t unit(std::size_t n, std::size_t i, std::size_t j) { return (i - 1) * n + (j - 1); }

template <ExactField F>
Vec<F> random_vector(const F& f, std::size_t n, std::mt19937_64& rng, std::int64_t lo = -4, std::int64_t hi = 4) {
    std::uniform_int_distribution<std::int64_t> d(lo, hi);
    Vec<F> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(f.from_int(d(rng)));
    return v;
}

template <ExactField F>
Matrix<F> random_matrix(const F& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix<F> m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        auto v = random_vector(f, c, rng);
        for (std::size_t j = 0; j < c; ++j) m(i, j) = v[j];
    }
    return m;
}

template <ExactField F>
Matrix<F> random_invertible(const F& f, std::size_t n, std::mt19937_64& rng) {
    while (true) {
        auto m = random_matrix(f, n, n, rng);
        if (rank(m) == n) return m;
    }
}

template <ExactField F>
Matrix<F> inverse(const Matrix<F>& m) {
    std::vector<Vec<F>> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(*solve(m, unit_vector(m.field(), m.rows(), j)));
    return Matrix<F>::from_columns(m.field(), m.rows(), cols);
}

/// The same algebra written in the basis given by the columns of P.
template <ExactField F>
Algebra<F> change_basis(const Algebra<F>& a, const Matrix<F>& p) {
    const auto& f = a.field();
    std::size_t n = a.dim();
    auto pinv = inverse(p);
    std::vector<typename F::element> t;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto c = pinv.apply(a.product(p.column(i), p.column(j)));
            t.insert(t.end(), c.begin(), c.end());
        }
    return Algebra<F>::create(f, n, a.kind(), std::move(t));
}

/// Small associative algebras used as seeds for random tables.
template <ExactField F>
std::vector<Algebra<F>> associative_seeds(const F& f) {
    return {matrix_algebra(f, 2), upper_triangular(f, 2), upper_triangular(f, 3), strictly_upper_triangular(f, 3),
            direct_sum(upper_triangular(f, 2), abelian(f, 1)), opposite(upper_triangular(f, 3)),
            strictly_upper_triangular(f, 4)};
}

template <ExactField F>
Algebra<F> random_associative(const F& f, std::mt19937_64& rng) {
    auto seeds = associative_seeds(f);
    const auto& a = seeds[std::uniform_int_distribution<std::size_t>(0, seeds.size() - 1)(rng)];
    return change_basis(a, random_invertible(f, a.dim(), rng));
}

}  // namespace lielab::testing

#endif

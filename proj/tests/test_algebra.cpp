#include <gtest/gtest.h>

#include "support.hpp"

using namespace lielab;
using namespace lielab::testing;

namespace {

using A5 = Algebra<PrimeField>;
using V5 = Vec<PrimeField>;

// ut 3 basis order: e11 e12 e13 e22 e23 e33
constexpr std::size_t t12 = 1, t13 = 2, t23 = 4;

V5 e(const A5& a, std::size_t i) { return a.basis_vector(i); }

}  // namespace

TEST(Presets, MatrixAlgebraHasUnit) {
    auto m2 = matrix_algebra(F5, 2);
    EXPECT_EQ(m2.dim(), 4u);
    EXPECT_TRUE(m2.is_associative());
    ASSERT_TRUE(m2.unit());
    EXPECT_EQ(*m2.unit(), vec(F5, {1, 0, 0, 1}));
    EXPECT_EQ(m2.label(unit(2, 1, 2)), "e12");
    EXPECT_EQ(m2.product(e(m2, unit(2, 1, 2)), e(m2, unit(2, 2, 1))), e(m2, unit(2, 1, 1)));
    EXPECT_TRUE(m2.validate(Law::unit).ok());
}

TEST(Presets, TriangularShapes) {
    EXPECT_EQ(upper_triangular(F5, 3).dim(), 6u);
    EXPECT_EQ(strictly_upper_triangular(F5, 3).dim(), 3u);
    EXPECT_FALSE(strictly_upper_triangular(F5, 3).unit());
    EXPECT_EQ(abelian(F5, 2).dim(), 2u);
    auto t = upper_triangular(F5, 3);
    EXPECT_EQ(t.label(t23), "e23");
}

TEST(Presets, MinusOfUt3) {
    auto l = minus(upper_triangular(F5, 3));
    EXPECT_TRUE(l.is_lie());
    EXPECT_EQ(l.dim(), 6u);
    EXPECT_EQ(l.bracket(e(l, t12), e(l, t23)), e(l, t13));
    EXPECT_EQ(l.bracket(e(l, t23), e(l, t12)), vec_scale(F5, F5.from_int(-1), e(l, t13)));
    EXPECT_TRUE(l.validate(Law::jacobi).ok());
    EXPECT_TRUE(l.validate(Law::anticommutativity).ok());
}

TEST(Presets, ZeroDimensional) {
    auto z = abelian(F5, 0);
    EXPECT_EQ(z.dim(), 0u);
    EXPECT_TRUE(minus(z).validate(Law::jacobi).ok());
}

TEST(Validate, JacobiOnMinusM2) { EXPECT_TRUE(minus(matrix_algebra(F5, 2)).validate(Law::jacobi).ok()); }

TEST(Validate, NonAssociativeTableWitness) {
    // e1 e1 = e2, e2 e1 = e1
    std::vector<PrimeField::element> t(8, 0);
    t[(0 * 2 + 0) * 2 + 1] = 1;
    t[(1 * 2 + 0) * 2 + 0] = 1;
    auto w = detail::find_associativity_violation(detail::Table<PrimeField>{F5, 2, t});
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, (std::vector<std::size_t>{0, 0, 0}));
    try {
        A5::create(F5, 2, AlgebraKind::associative, t);
        FAIL() << "expected NotAssociative";
    } catch (const NotAssociative& err) {
        EXPECT_EQ(err.witness(), (std::vector<std::size_t>{0, 0, 0}));
        EXPECT_EQ(err.kind(), "NotAssociative");
    }
}

TEST(Validate, NotLieTables) {
    std::vector<PrimeField::element> t(8, 0);
    t[(0 * 2 + 1) * 2 + 0] = 1;  // [e1, e2] = e1 but [e2, e1] = 0
    EXPECT_THROW(A5::create(F5, 2, AlgebraKind::lie, t), NotLie);
    std::vector<PrimeField::element> sq(8, 0);
    sq[(0 * 2 + 0) * 2 + 1] = 1;  // [e1, e1] != 0
    EXPECT_THROW(A5::create(F5, 2, AlgebraKind::lie, sq), NotLie);
}

TEST(Validate, AnticommutativityOnMinusUt3) {
    EXPECT_TRUE(minus(upper_triangular(F5, 3)).validate(Law::anticommutativity).ok());
}

TEST(Validate, InvolutionRequiresOne) {
    EXPECT_THROW(matrix_algebra(F5, 2).validate(Law::involution), MissingInvolution);
}

TEST(Constructions, DirectSumAndOpposite) {
    auto s = direct_sum(matrix_algebra(F5, 2), upper_triangular(F5, 2));
    EXPECT_EQ(s.dim(), 7u);
    EXPECT_EQ(s.summand_split(), std::optional<std::size_t>(4));
    ASSERT_TRUE(s.unit());
    EXPECT_EQ(*s.unit(), vec(F5, {1, 0, 0, 1, 1, 0, 1}));
    auto t = upper_triangular(F5, 2);  // e11 e12 e22
    auto o = opposite(t);
    EXPECT_EQ(o.product(e(o, 1), e(o, 0)), e(o, 1));
    EXPECT_TRUE(vec_equal(F5, o.product(e(o, 0), e(o, 1)), o.zero()));
    EXPECT_THROW(direct_sum(matrix_algebra(F5, 2), minus(matrix_algebra(F5, 2))), std::invalid_argument);
    EXPECT_THROW(direct_sum(matrix_algebra(F5, 2), matrix_algebra(F7, 2)), AmbientMismatch);
}

TEST(Constructions, QuotientOfT3ByCenter) {
    auto l = minus(upper_triangular(F5, 3));
    auto z = Subspace<PrimeField>::span(F5, 6, {vec(F5, {1, 0, 0, 1, 0, 1})});
    auto q = quotient(l, z);
    EXPECT_EQ(q.algebra.dim(), 5u);
    EXPECT_TRUE(q.algebra.is_lie());
    // the image of the scalar matrix vanishes
    EXPECT_TRUE(is_zero<PrimeField>(F5, q.project(vec(F5, {1, 0, 0, 1, 0, 1}))));
    // brackets descend: proj [x, y] = [proj x, proj y]
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            EXPECT_EQ(q.project(l.bracket(e(l, i), e(l, j))),
                      q.algebra.bracket(q.project(e(l, i)), q.project(e(l, j))));
}

TEST(Constructions, QuotientByNonIdeal) {
    auto l = minus(upper_triangular(F5, 3));
    auto s = Subspace<PrimeField>::span(F5, 6, {e(l, t12)});
    EXPECT_THROW(quotient(l, s), NotAnIdeal);
}

TEST(Involutions, TransposeOnM3) {
    auto m3 = attach_involution(matrix_algebra(F5, 3), InvolutionSpec<PrimeField>{TransposeInvolution{}});
    EXPECT_TRUE(m3.validate(Law::involution).ok());
    EXPECT_EQ(m3.star(e(m3, unit(3, 1, 2))), e(m3, unit(3, 2, 1)));
}

TEST(Involutions, ExchangeOnBTimesBop) {
    auto m2 = matrix_algebra(F5, 2);
    auto b = attach_involution(direct_sum(m2, opposite(m2)), InvolutionSpec<PrimeField>{ExchangeInvolution{}});
    EXPECT_TRUE(b.validate(Law::involution).ok());
    EXPECT_EQ(b.star(e(b, 1)), e(b, 5));
}

TEST(Involutions, IdentityIsNotAnInvolutionOnM2) {
    auto m2 = matrix_algebra(F5, 2);
    EXPECT_THROW(attach_involution(m2, InvolutionSpec<PrimeField>{MatrixInvolution<PrimeField>{Matrix<PrimeField>::identity(F5, 4)}}),
                 NotAnInvolution);
    EXPECT_THROW(attach_involution(upper_triangular(F5, 2), InvolutionSpec<PrimeField>{TransposeInvolution{}}),
                 NotAnInvolution);
}

TEST(Involutions, IdentityOnCommutativeAlgebraIsFine) {
    auto a = attach_involution(abelian(F5, 2),
                               InvolutionSpec<PrimeField>{MatrixInvolution<PrimeField>{Matrix<PrimeField>::identity(F5, 2)}});
    EXPECT_TRUE(a.has_involution());
}

TEST(Extensions, Sl2InsideGl2) {
    auto gl2 = minus(matrix_algebra(F5, 2));
    auto ext = make_extension(gl2, {vec(F5, {0, 1, 0, 0}), vec(F5, {0, 0, 1, 0}), vec(F5, {1, 0, 0, -1})});
    EXPECT_EQ(ext.inner.dim(), 3u);
    for (const auto& x : ext.inner.vectors()) EXPECT_EQ(F5.add(x[0], x[3]), 0u);
}

TEST(Extensions, EmptyGenerators) {
    auto ext = make_extension(minus(matrix_algebra(F5, 2)), {});
    EXPECT_TRUE(ext.inner.is_zero());
}

TEST(Extensions, GeneratedSubalgebraCloses) {
    auto l = minus(upper_triangular(F5, 3));
    auto ext = make_extension(l, {e(l, t12), e(l, t23)});
    EXPECT_EQ(ext.inner, Subspace<PrimeField>::span(F5, 6, {e(l, t12), e(l, t23), e(l, t13)}));
    EXPECT_THROW(extension_from_subspace(l, Subspace<PrimeField>::span(F5, 6, {e(l, t12), e(l, t23)})), LawViolation);
}

TEST(Operators, AdMatchesBracket) {
    auto l = minus(matrix_algebra(QQ, 2));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = random_vector(QQ, 4, rng), y = random_vector(QQ, 4, rng);
        EXPECT_EQ(l.ad(x).apply(y), l.bracket(x, y));
    }
}

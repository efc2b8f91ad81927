#include <gtest/gtest.h>

#include "lielab/enumerate.hpp"
#include "support.hpp"

using namespace lielab;
using namespace lielab::testing;

TEST(PrimeField, ArithmeticModP) {
    EXPECT_EQ(F5.add(3, 4), 2u);
    EXPECT_EQ(F5.sub(1, 3), 3u);
    EXPECT_EQ(F5.mul(4, 4), 1u);
    EXPECT_EQ(F5.neg(2), 3u);
    EXPECT_EQ(F5.from_int(-1), 4u);
    EXPECT_EQ(F5.from_int(-13), 2u);
    for (std::uint32_t a = 1; a < 7; ++a) EXPECT_EQ(F7.mul(a, F7.inv(a)), 1u);
    EXPECT_THROW(F5.inv(0), std::domain_error);
}

TEST(PrimeField, FromRational) {
    EXPECT_EQ(F5.from_rational(BigRational(1, 2)), 3u);
    EXPECT_EQ(F7.from_rational(BigRational(-3, 4)), F7.mul(F7.from_int(-3), F7.inv(4)));
}

TEST(PrimeField, TorsionGuard) {
    EXPECT_THROW(PrimeField{2}, TorsionError);
    EXPECT_THROW(PrimeField{3}, TorsionError);
    EXPECT_THROW(PrimeField{9}, std::invalid_argument);
    EXPECT_NO_THROW(PrimeField{5});
    EXPECT_NO_THROW(PrimeField{2147483647});
}

TEST(RationalField, ParseAndPrint) {
    EXPECT_EQ(QQ.to_string(parse_rational("-6/4")), "-3/2");
    EXPECT_EQ(QQ.to_string(parse_rational("7")), "7");
    EXPECT_EQ(QQ.mul(parse_rational("2/3"), QQ.inv(parse_rational("2/3"))), QQ.one());
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Rref, IdentityOverF5) {
    auto r = rref(Matrix<PrimeField>::identity(F5, 2));
    EXPECT_EQ(r.reduced, Matrix<PrimeField>::identity(F5, 2));
    EXPECT_EQ(r.rank, 2u);
    EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
}

TEST(Rref, ProportionalRowsOverQ) {
    auto m = Matrix<RationalField>::from_rows(QQ, 2, {vec(QQ, {1, 2}), vec(QQ, {2, 4})});
    auto r = rref(m);
    EXPECT_EQ(r.reduced, Matrix<RationalField>::from_rows(QQ, 2, {vec(QQ, {1, 2}), vec(QQ, {0, 0})}));
    EXPECT_EQ(r.rank, 1u);
    EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
}

TEST(Rref, ProportionalRowsOverF5) {
    auto m = Matrix<PrimeField>::from_rows(F5, 2, {vec(F5, {1, 2}), vec(F5, {2, 4})});
    auto r = rref(m);
    EXPECT_EQ(r.reduced, Matrix<PrimeField>::from_rows(F5, 2, {vec(F5, {1, 2}), vec(F5, {0, 0})}));
    EXPECT_EQ(r.rank, 1u);
}

TEST(Rref, FractionsOverQ) {
    auto m = Matrix<RationalField>::from_rows(QQ, 2, {vec(QQ, {2, 1}), vec(QQ, {1, 3})});
    auto r = rref(m);
    EXPECT_EQ(r.reduced, Matrix<RationalField>::identity(QQ, 2));
    auto x = solve(m, vec(QQ, {1, 0}));
    ASSERT_TRUE(x);
    EXPECT_EQ(QQ.to_string((*x)[0]), "3/5");
    EXPECT_EQ(QQ.to_string((*x)[1]), "-1/5");
}

TEST(Kernel, Examples) {
    EXPECT_TRUE(kernel(Matrix<PrimeField>::identity(F5, 3)).is_zero());
    EXPECT_TRUE(kernel(Matrix<PrimeField>(F5, 3, 3)).is_full());
    auto m = Matrix<PrimeField>::from_rows(F5, 3, {vec(F5, {1, 1, 0}), vec(F5, {0, 0, 1})});
    auto k = kernel(m);
    EXPECT_EQ(k.dim(), 1u);
    EXPECT_EQ(k, Subspace<PrimeField>::span(F5, 3, {vec(F5, {1, 4, 0})}));
}

TEST(Subspace, Operations) {
    auto e = [](std::size_t i) { return unit_vector(F5, 3, i); };
    auto s1 = Subspace<PrimeField>::span(F5, 3, {e(0)});
    auto s2 = Subspace<PrimeField>::span(F5, 3, {e(1)});
    EXPECT_EQ(sum(s1, s2), Subspace<PrimeField>::span(F5, 3, {e(0), e(1)}));
    EXPECT_EQ(sum(s1, s2).dim(), 2u);
    auto a = Subspace<PrimeField>::span(F5, 3, {e(0), e(1)});
    auto b = Subspace<PrimeField>::span(F5, 3, {e(1), e(2)});
    EXPECT_EQ(intersect(a, b), s2);
    EXPECT_TRUE(a.contains(s1));
    EXPECT_FALSE(s1.contains(a));
    auto line = Subspace<PrimeField>::span(F5, 2, {vec(F5, {1, 2})});
    EXPECT_TRUE(line.member(vec(F5, {2, 4})));
    EXPECT_FALSE(line.member(vec(F5, {2, 3})));
}

TEST(Subspace, AmbientMismatch) {
    auto a = Subspace<PrimeField>::full(F5, 2);
    auto b = Subspace<PrimeField>::full(F5, 3);
    EXPECT_THROW(sum(a, b), AmbientMismatch);
    EXPECT_THROW(intersect(a, b), AmbientMismatch);
    EXPECT_THROW(a.member(vec(F5, {1, 2, 3})), AmbientMismatch);
}

TEST(Subspace, CanonicalBasisMakesEqualityStructural) {
    auto a = Subspace<RationalField>::span(QQ, 3, {vec(QQ, {1, 1, 0}), vec(QQ, {0, 1, 1})});
    auto b = Subspace<RationalField>::span(QQ, 3, {vec(QQ, {1, 2, 1}), vec(QQ, {2, 0, -2})});
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.coordinates(vec(QQ, {1, 2, 1})).size(), 2u);
    EXPECT_TRUE(vec_equal(QQ, a.combine(a.coordinates(vec(QQ, {3, 1, -2}))), vec(QQ, {3, 1, -2})));
}

TEST(EchelonBuilder, TracksSpan) {
    EchelonBuilder<PrimeField> b(F7, 3);
    EXPECT_TRUE(b.add(vec(F7, {1, 2, 3})));
    EXPECT_FALSE(b.add(vec(F7, {2, 4, 6})));
    EXPECT_TRUE(b.add(vec(F7, {0, 1, 0})));
    EXPECT_TRUE(b.member(vec(F7, {1, 0, 3})));
    EXPECT_EQ(b.dim(), 2u);
    EXPECT_EQ(b.subspace().dim(), 2u);
}

TEST(Enumerate, CounterOrderAndCounts) {
    std::vector<Vec<PrimeField>> seen;
    for_each_vector(F5, 2, Budget{}, [&](const Vec<PrimeField>& v) {
        seen.push_back(v);
        return true;
    });
    ASSERT_EQ(seen.size(), 25u);
    EXPECT_EQ(seen[1], vec(F5, {1, 0}));
    EXPECT_EQ(seen[5], vec(F5, {0, 1}));
    std::size_t lines = 0;
    for_each_projective(F5, 3, Budget{}, [&](const Vec<PrimeField>& v) {
        ++lines;
        std::size_t last = 2;
        while (v[last] == 0) --last;
        EXPECT_EQ(v[last], 1u);
        return true;
    });
    EXPECT_EQ(lines, projective_count(5, 3));
    EXPECT_EQ(lines, 31u);
}

TEST(Enumerate, BudgetIsEnforced) {
    EXPECT_THROW(for_each_vector(F5, 6, Budget{1000}, [](const auto&) { return true; }), BudgetExceeded);
    EXPECT_EQ(saturating_power(7, 100), std::numeric_limits<std::uint64_t>::max());
}

TEST(Matrix, PowerAndCommutator) {
    Matrix<PrimeField> n(F5, 3, 3);
    n(0, 1) = 1;
    n(1, 2) = 1;
    EXPECT_FALSE(power(n, 2).is_zero());
    EXPECT_TRUE(power(n, 3).is_zero());
    EXPECT_TRUE(commutator(n, n).is_zero());
    EXPECT_EQ(n.transpose().transpose(), n);
}

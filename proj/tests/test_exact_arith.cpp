#include <gtest/gtest.h>

#include <random>

#include "mopr/matrix.hpp"
#include "mopr/poly.hpp"
#include "mopr/rational.hpp"
#include "mopr/roots.hpp"
#include "oracle.hpp"

using namespace mopr;

namespace {

Rat q(const char* s) { return parse_rat(s); }

}  // namespace

TEST(Rational, ParseAndFormat) {
    EXPECT_EQ(q("4/6"), Rat(2, 3));
    EXPECT_EQ(format_rat(q("-10/4")), "-5/2");
    EXPECT_EQ(format_rat(q("7")), "7");
    EXPECT_EQ(q("+3/1"), Rat(3));
    EXPECT_THROW(q("1/0"), ParseError);
    EXPECT_THROW(q("1/"), ParseError);
    EXPECT_THROW(q("a"), ParseError);
    EXPECT_THROW(q(""), ParseError);
    EXPECT_THROW(q("1.5"), ParseError);
}

TEST(Rational, DerivativeOfPower) {
    EXPECT_EQ(derivative_of_power(3, 0, Rat(2)), Rat(8));
    EXPECT_EQ(derivative_of_power(3, 1, Rat(2)), Rat(12));
    EXPECT_EQ(derivative_of_power(3, 3, Rat(7)), Rat(6));
    EXPECT_EQ(derivative_of_power(1, 2, Rat(7)), Rat(0));
    EXPECT_EQ(derivative_of_power(0, 0, Rat(0)), Rat(1));
}

TEST(Poly, Eval) {
    EXPECT_EQ(poly_eval(Poly{-1, 0, 1}, Rat(3), 0), Rat(8));
    EXPECT_EQ(poly_eval(Poly::monomial(1, 2), Rat(5), 1), Rat(10));
    EXPECT_EQ(poly_eval(Poly::monomial(1, 3), Rat(2), 2), Rat(12));
    EXPECT_EQ(poly_eval(Poly{}, Rat(2), 0), Rat(0));
}

TEST(Poly, DegreeSentinel) {
    EXPECT_TRUE(Poly{}.degree().is_minus_infinity());
    EXPECT_TRUE(Poly(std::vector<Rat>{0, 0}).is_zero());
    EXPECT_TRUE(Poly{}.degree().at_most(-1));
    EXPECT_FALSE(Poly{1}.degree().at_most(-1));
    EXPECT_EQ(Poly({1, 2, 3}).degree().value(), 2u);
}

TEST(Poly, ToString) {
    EXPECT_EQ(Poly({q("1/6"), -1, 1}).to_string(), "x^2 - x + 1/6");
    EXPECT_EQ(Poly({6, -3}).to_string(), "-3*x + 6");
    EXPECT_EQ(Poly{}.to_string(), "0");
    EXPECT_EQ(Poly({0, q("-1/2")}).to_string(), "-1/2*x");
}

TEST(Poly, FromRoots) {
    EXPECT_EQ(poly_from_roots(RootList{}), Poly{1});
    EXPECT_EQ(poly_from_roots(RootList{{2, 1}}), Poly({-2, 1}));
    EXPECT_EQ(poly_from_roots(RootList{{-1, 2}}), Poly({1, 2, 1}));
}

TEST(Poly, DivideExact) {
    EXPECT_EQ(divide_exact(Poly{-1, 0, 1}, Poly{-1, 1}), Poly({1, 1}));
    EXPECT_EQ(divide_exact(Poly({q("-5/9"), q("4/9"), 1}), Poly{1, 1}), Poly({q("-5/9"), 1}));
    EXPECT_THROW(divide_exact(Poly{1, 0, 1}, Poly{-1, 1}), NonzeroRemainder);
    EXPECT_THROW(divmod(Poly{1}, Poly{}), std::domain_error);
}

TEST(Roots, LcmAndQuotient) {
    EXPECT_EQ(root_lcm(RootList{{1, 1}}, RootList{{1, 2}}), (RootList{{1, 2}}));
    EXPECT_EQ(root_lcm(RootList{{1, 1}}, RootList{{2, 1}}), (RootList{{1, 1}, {2, 1}}));
    EXPECT_EQ(root_quotient(RootList{{1, 2}, {2, 1}}, RootList{{1, 1}}), (RootList{{1, 1}, {2, 1}}));
    EXPECT_THROW(root_quotient(RootList{{1, 1}}, RootList{{1, 2}}), NegativeMultiplicity);
    EXPECT_THROW(root_quotient(RootList{{1, 1}}, RootList{{3, 1}}), NegativeMultiplicity);
    EXPECT_EQ(root_product(RootList{{1, 1}}, RootList{{1, 1}, {2, 1}}), (RootList{{1, 2}, {2, 1}}));
}

TEST(Roots, ExpandedOrder) {
    RootList r{{3, 2}, {-1, 1}};
    auto e = r.expanded();
    ASSERT_EQ(e.size(), 3u);
    EXPECT_EQ(e[0].value, 3);
    EXPECT_EQ(e[0].order, 0u);
    EXPECT_EQ(e[1].value, 3);
    EXPECT_EQ(e[1].order, 1u);
    EXPECT_EQ(e[2].value, -1);
    EXPECT_EQ(e[2].order, 0u);
    EXPECT_EQ(r.degree(), 3u);
}

TEST(Roots, Invalid) {
    EXPECT_THROW(RootList({{1, 0}}), InvalidRootList);
    EXPECT_THROW(RootList({{1, 1}, {1, 2}}), InvalidRootList);
}

TEST(Roots, VanishingOrderMatchesMultiplicity) {
    RootList r{{q("1/2"), 3}, {-2, 1}, {5, 2}};
    Poly p = poly_from_roots(r);
    for (const auto& root : r.roots()) {
        for (unsigned l = 0; l < root.multiplicity; ++l) EXPECT_EQ(poly_eval(p, root.value, l), 0);
        EXPECT_NE(poly_eval(p, root.value, root.multiplicity), 0);
    }
}

TEST(Det, Examples) {
    EXPECT_EQ(det_rat(Matrix::identity(3)), 1);
    EXPECT_EQ(det_rat(Matrix{{1, q("1/2")}, {q("1/2"), q("1/3")}}), q("1/12"));
    EXPECT_EQ(det_rat(Matrix{{1, 2}, {2, 4}}), 0);
    EXPECT_EQ(det_rat(Matrix{{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(det_rat(Matrix{}), 1);
    EXPECT_THROW(det_rat(Matrix(2, 3)), DimensionMismatch);
}

TEST(Det, BorderedExamples) {
    Poly p{1, 2}, r{0, 0, 3};
    EXPECT_EQ(det_poly_bordered({p, r}, Matrix{{5, 7}}), p * Rat(7) - r * Rat(5));
    EXPECT_EQ(det_poly_bordered({p}, Matrix{}), p);
    EXPECT_EQ(det_poly_bordered({Poly::x(), Poly{1}, Poly{}}, Matrix{{0, 1, 2}, {3, 4, 5}}), Poly({6, -3}));
    EXPECT_THROW(det_poly_bordered({p, r}, Matrix{{1, 2}, {3, 4}}), DimensionMismatch);
}

TEST(Det, AgreesWithLaplaceOnRandomMatrices) {
    std::mt19937 rng(20261016);
    for (std::size_t n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 40; ++trial) {
            Matrix m = oracle::random_matrix(rng, n, n);
            if (trial % 7 == 0 && n > 1)
                for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j) * 3;
            EXPECT_EQ(det_rat(m), oracle::laplace_det(m)) << "n=" << n << " trial=" << trial;
        }
}

TEST(Det, BorderedWithConstantRowEqualsStackedDet) {
    std::mt19937 rng(7);
    for (std::size_t n = 1; n <= 5; ++n) {
        Matrix body = oracle::random_matrix(rng, n - 1, n);
        Matrix full(0, 0);
        std::vector<Poly> first;
        std::vector<Rat> row;
        for (std::size_t j = 0; j < n; ++j) {
            row.push_back(oracle::random_rat(rng));
            first.push_back(Poly::constant(row.back()));
        }
        full.append_row(row);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::vector<Rat> b;
            for (std::size_t j = 0; j < n; ++j) b.push_back(body(i, j));
            full.append_row(b);
        }
        EXPECT_EQ(det_poly_bordered(first, body), Poly::constant(det_rat(full)));
    }
}

TEST(Poly, DivideExactRoundTrip) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Poly qp = oracle::random_poly(rng, trial % 5);
        Poly d = oracle::random_poly(rng, 1 + trial % 3);
        EXPECT_EQ(divide_exact(qp * d, d), qp);
    }
}

TEST(Solve, AgreesWithCramer) {
    std::mt19937 rng(3);
    for (std::size_t n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            Matrix a = oracle::random_matrix(rng, n, n);
            std::vector<Rat> b(n);
            for (auto& v : b) v = oracle::random_rat(rng);
            auto x = solve(a, b);
            if (oracle::laplace_det(a) == 0) {
                EXPECT_FALSE(x.has_value());
                continue;
            }
            ASSERT_TRUE(x.has_value());
            EXPECT_EQ(*x, oracle::cramer(a, b));
        }
}

TEST(Solve, RankAndNullspace) {
    Matrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    EXPECT_EQ(rank(m), 2u);
    auto ns = nullspace(m);
    ASSERT_EQ(ns.size(), 1u);
    for (std::size_t i = 0; i < 3; ++i) {
        Rat s = 0;
        for (std::size_t j = 0; j < 3; ++j) s += m(i, j) * ns[0][j];
        EXPECT_EQ(s, 0);
    }
    EXPECT_EQ(rank(Matrix::identity(4)), 4u);
    EXPECT_TRUE(nullspace(Matrix::identity(2)).empty());
}

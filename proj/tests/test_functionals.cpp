#include <gtest/gtest.h>

#include <thread>

#include "mopr/functional.hpp"

using namespace mopr;

namespace {

Rat q(const char* s) { return parse_rat(s); }

MomentFunctional unit_interval() { return MomentFunctional::lebesgue(0, 1); }

}  // namespace

TEST(Moment, Sources) {
    EXPECT_EQ(moment(unit_interval(), 2), q("1/3"));
    EXPECT_EQ(moment(MomentFunctional::point_masses({{5, 2}}), 2), 50);
    EXPECT_EQ(moment(MomentFunctional::lebesgue(2, 3), 1), q("5/2"));
    EXPECT_EQ(moment(MomentFunctional::scaled(3, unit_interval()), 1), q("3/2"));
    auto e = MomentFunctional::explicit_moments({1, 2, 3});
    EXPECT_EQ(moment(e, 2), 3);
    EXPECT_THROW(moment(e, 3), MomentOutOfRange);
    EXPECT_EQ(e.moment_limit(), std::optional<std::size_t>(3));
    EXPECT_FALSE(unit_interval().moment_limit().has_value());
}

TEST(Apply, Linearity) {
    auto f = unit_interval();
    EXPECT_EQ(apply(f, Poly({q("-1/2"), 1})), 0);
    EXPECT_EQ(apply(f, Poly{}), 0);
    EXPECT_EQ(apply(f, Poly({q("1/6"), -1, 1})), 0);
    Poly p{1, 2, 3}, r{0, -1, 0, 4};
    EXPECT_EQ(apply(f, p * Rat(2) + r * Rat(-5)), 2 * apply(f, p) - 5 * apply(f, r));
}

TEST(RationalPerturb, GeronimusByHand) {
    auto g = rational_perturb(unit_interval(), RootList{}, RootList{{3, 1}}, {0});
    EXPECT_EQ(moment(g, 0), 0);
    EXPECT_EQ(moment(g, 1), 1);
    EXPECT_EQ(moment(g, 2), q("7/2"));
}

TEST(RationalPerturb, MatchingFactorsReproduceBase) {
    auto f = rational_perturb(unit_interval(), RootList{{2, 1}}, RootList{{2, 1}}, {1});
    for (std::size_t k = 0; k < 12; ++k) EXPECT_EQ(moment(f, k), Rat(1) / (k + 1)) << k;
}

TEST(RationalPerturb, DivisionPlusPointMass) {
    // base = (x - 3) * Lebesgue(0,1); dividing by (x - 3) leaves Lebesgue plus c * delta_3.
    std::vector<Rat> m;
    for (unsigned k = 0; k < 20; ++k) m.push_back(Rat(1) / (k + 2) - Rat(3) / (k + 1));
    auto base = MomentFunctional::explicit_moments(m);
    const Rat c = q("2/7");
    auto g = rational_perturb(base, RootList{}, RootList{{3, 1}}, {1 + c});
    for (unsigned k = 0; k < 20; ++k) EXPECT_EQ(moment(g, k), Rat(1) / (k + 1) + c * pow_rat(3, k)) << k;
    EXPECT_THROW(moment(g, 21), MomentOutOfRange);
    EXPECT_EQ(g.moment_limit(), std::optional<std::size_t>(21));
}

TEST(RationalPerturb, Arity) {
    EXPECT_THROW(rational_perturb(unit_interval(), RootList{}, RootList{{3, 1}}, {}), FreeMomentArity);
    EXPECT_THROW(rational_perturb(unit_interval(), RootList{}, RootList{}, {1}), FreeMomentArity);
}

TEST(RationalPerturb, DefiningIdentity) {
    auto base = MomentFunctional::lebesgue(q("-1/2"), 2);
    const RootList phi{{1, 2}, {q("-3/2"), 1}};
    const RootList psi{{4, 1}, {q("5/3"), 2}};
    auto f = rational_perturb(base, phi, psi, {q("1/3"), -2, 7});
    const Poly Phi = poly_from_roots(phi), Psi = poly_from_roots(psi);
    for (std::size_t p = 0; p < 10; ++p) {
        const Poly xp = Poly::monomial(1, p);
        EXPECT_EQ(apply(f, Psi * xp), apply(base, Phi * xp)) << p;
    }
    EXPECT_EQ(moment(f, 0), q("1/3"));
    EXPECT_EQ(moment(f, 2), 7);
}

TEST(RationalPerturb, FreeMomentsDifferByHomogeneousSolution) {
    auto base = unit_interval();
    const RootList psi{{2, 2}};
    auto f1 = rational_perturb(base, RootList{{1, 1}}, psi, {0, 0});
    auto f2 = rational_perturb(base, RootList{{1, 1}}, psi, {5, q("-1/4")});
    const Poly Psi = poly_from_roots(psi);
    for (std::size_t p = 0; p < 8; ++p) {
        const Poly w = Psi * Poly::monomial(1, p);
        EXPECT_EQ(apply(f1, w) - apply(f2, w), 0);
    }
}

TEST(Christoffel, EqualsPerturbationWithoutDenominator) {
    auto base = MomentFunctional::lebesgue(2, 3);
    const RootList phi{{-1, 1}, {q("1/2"), 2}};
    auto c = christoffel_of(base, phi);
    auto r = rational_perturb(base, phi, RootList{}, {});
    for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(moment(c, k), moment(r, k));
    EXPECT_EQ(moment(christoffel_of(unit_interval(), RootList{{-1, 1}}), 3), q("1/5") + q("1/4"));
}

TEST(Uvarov, AddsMasses) {
    EXPECT_EQ(moment(uvarov_of(unit_interval(), {{5, 2}}), 0), 3);
    EXPECT_EQ(moment(uvarov_of(unit_interval(), {}), 4), q("1/5"));
    EXPECT_EQ(moment(uvarov_of(unit_interval(), {{2, 1}, {3, 1}}), 1), q("11/2"));
    EXPECT_THROW(uvarov_of(unit_interval(), {{2, 1}, {2, 3}}), InvalidRootList);
}

TEST(Memo, RecomputationAgrees) {
    auto make = [] {
        return rational_perturb(MomentFunctional::lebesgue(0, 2), RootList{{1, 1}}, RootList{{-3, 1}}, {q("2/5")});
    };
    auto warm = make();
    for (std::size_t k = 0; k < 30; ++k) moment(warm, k);
    auto cold = make();
    EXPECT_EQ(moment(cold, 29), moment(warm, 29));
    EXPECT_EQ(warm.moments(30), cold.moments(30));
}

TEST(Memo, ConcurrentReadersSeeSameValues) {
    auto f = rational_perturb(MomentFunctional::lebesgue(0, 1), RootList{{2, 1}}, RootList{{3, 2}}, {1, 2});
    auto reference = rational_perturb(MomentFunctional::lebesgue(0, 1), RootList{{2, 1}}, RootList{{3, 2}}, {1, 2})
                         .moments(60);
    std::vector<std::vector<Rat>> seen(8);
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < seen.size(); ++t)
        threads.emplace_back([&, t] {
            for (std::size_t k = 0; k < 60; ++k) seen[t].push_back(moment(f, (59 - k) * (t + 1) % 60));
        });
    for (auto& th : threads) th.join();
    for (std::size_t t = 0; t < seen.size(); ++t)
        for (std::size_t k = 0; k < 60; ++k) EXPECT_EQ(seen[t][k], reference[(59 - k) * (t + 1) % 60]);
}

TEST(GeronimusChoice, Defaults) {
    GeronimusChoice z = GeronimusChoice::zeros();
    EXPECT_EQ(z.for_component(3, 2), (std::vector<Rat>{0, 0}));
    GeronimusChoice c{{{1}, {2, 3}}};
    EXPECT_EQ(c.for_component(1, 2), (std::vector<Rat>{2, 3}));
    EXPECT_THROW(c.for_component(0, 2), FreeMomentArity);
    EXPECT_THROW(c.for_component(2, 1), ArityMismatch);
}

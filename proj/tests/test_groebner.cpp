#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace planarmap;
using pm_test::graded_piece_dim;
using pm_test::colon_piece_dim;
using pm_test::elimination_piece_dim;
using pm_test::in_ideal_by_degree;
using pm_test::random_homogeneous_ideal;

TEST(Groebner, LexExample) {
    Field F;
    Ring r(F, 2, MonomialOrder::lex());
    Ideal i(r, {parse_poly("x*y - 1", r), parse_poly("y^2 - 1", r)});
    auto gb = buchberger(i);
    ASSERT_EQ(gb.size(), 2u);
    EXPECT_EQ(gb.gens()[0], parse_poly("y^2 - 1", r));
    EXPECT_EQ(gb.gens()[1], parse_poly("x - y", r));
}

TEST(Groebner, UnitIdeal) {
    Field F;
    Ring r(F, 3);
    auto gb = buchberger(Ideal(r, {parse_poly("x*y - 1", r), parse_poly("x", r)}));
    EXPECT_TRUE(gb.is_unit());
}

TEST(Groebner, SPolynomialsReduceOnRandomIdeals) {
    Field F;
    Rng rng(21);
    for (int t = 0; t < 12; ++t) {
        bool lex = t % 3 == 0;
        Ring r(F, lex ? 3 : 3 + t % 2, lex ? MonomialOrder::lex() : MonomialOrder::degrevlex());
        auto gens = random_homogeneous_ideal(r, rng, 3, 2, 3);
        if (t % 2) gens.push_back(pm_test::random_poly(r, 2, rng));  // inhomogeneous
        auto gb = buchberger(Ideal(r, gens));
        ASSERT_LE(gb.size(), 50u);
        EXPECT_TRUE(all_s_polynomials_reduce(gb));
        EXPECT_TRUE(is_groebner(gb));
        for (auto& g : gens) EXPECT_TRUE(gb.contains(g));
    }
}

TEST(Groebner, CyclicThree) {
    Field F;
    Ring r(F, 3);
    Ideal i(r, {parse_poly("x + y + z", r), parse_poly("x*y + y*z + z*x", r), parse_poly("x*y*z - 1", r)});
    auto gb = buchberger(i);
    EXPECT_TRUE(all_s_polynomials_reduce(gb));
    QuotientRing q(gb);
    EXPECT_EQ(q.dim(), 6u);
}

TEST(Groebner, NormalFormIsLinearAndCongruent) {
    Field F;
    Ring r(F, 4);
    Rng rng(22);
    auto gens = random_homogeneous_ideal(r, rng, 3, 2, 2);
    auto gb = buchberger(Ideal(r, gens));
    for (int t = 0; t < 20; ++t) {
        MPoly a = random_form(r, 3, rng), b = random_form(r, 3, rng);
        Elem s = F.random(rng), u = F.random(rng);
        EXPECT_EQ(gb.normal_form(a.scaled(s) + b.scaled(u)), gb.normal_form(a).scaled(s) + gb.normal_form(b).scaled(u));
        EXPECT_TRUE(in_ideal_by_degree(gens, a - gb.normal_form(a)));
        MPoly nf = gb.normal_form(a);
        for (auto& term : nf.terms())
            for (auto& lm : gb.leading_monomials()) EXPECT_FALSE(divides(lm, term.m));
    }
}

TEST(Groebner, OrdersDescribeTheSameIdeal) {
    Field F;
    Ring r(F, 3);
    Rng rng(23);
    auto gens = random_homogeneous_ideal(r, rng, 3, 2, 3);
    auto lex = buchberger(Ideal(r, gens), MonomialOrder::lex());
    auto drl = buchberger(Ideal(r, gens));
    std::vector<MPoly> back;
    for (auto& g : lex.gens()) back.push_back(g.with_order(MonomialOrder::degrevlex()));
    EXPECT_TRUE(same_ideal(Ideal(r, back), Ideal(r, drl.gens())));
}

TEST(Groebner, BudgetIsEnforced) {
    Field F;
    Ring r(F, 4);
    Rng rng(24);
    auto gens = random_homogeneous_ideal(r, rng, 4, 3, 3);
    try {
        buchberger(Ideal(r, gens), GbBudget{5, 10'000});
        FAIL() << "budget not enforced";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ResourceLimit);
    }
}

TEST(Groebner, IdealQuotientExample) {
    Field F;
    Ring r(F, 3);
    Ideal i(r, {parse_poly("x", r), parse_poly("y^2*z", r)});
    Ideal j(r, {parse_poly("x", r), parse_poly("y", r)});
    Ideal q = ideal_quotient(i, j);
    EXPECT_TRUE(same_ideal(q, Ideal(r, {parse_poly("x", r), parse_poly("y*z", r)})));
}

TEST(Groebner, EliminationMatchesLinearAlgebra) {
    Field F;
    Rng rng(25);
    for (int t = 0; t < 10; ++t) {
        Ring r(F, 4);
        auto gens = random_homogeneous_ideal(r, rng, 3, 1, 2);
        int k = 1 + t % 2;
        Ideal el = eliminate(Ideal(r, gens), k);
        for (auto& g : el.gens) {
            EXPECT_TRUE(in_ideal_by_degree(gens, g));
            for (auto& term : g.terms())
                for (int v = 0; v < k; ++v) EXPECT_EQ(term.m.e[static_cast<std::size_t>(v)], 0);
        }
        Ring small(F, 4 - k);
        std::vector<int> map(4, -1);
        for (int v = k; v < 4; ++v) map[static_cast<std::size_t>(v)] = v - k;
        std::vector<MPoly> sub;
        for (auto& g : el.gens) sub.push_back(g.remap(small, map));
        for (int deg = 1; deg <= 4; ++deg)
            EXPECT_EQ(sub.empty() ? 0u : graded_piece_dim(sub, deg), elimination_piece_dim(gens, k, deg)) << "trial " << t << " degree " << deg;
    }
}

TEST(Groebner, SaturationMatchesLinearAlgebra) {
    Field F;
    Rng rng(26);
    for (int t = 0; t < 10; ++t) {
        Ring r(F, 4);
        MPoly f = random_form(r, 1, rng);
        std::vector<MPoly> gens{f * random_form(r, 1, rng), f * f * random_form(r, 1, rng), random_form(r, 2, rng)};
        Ideal sat = saturate(Ideal(r, gens), f);
        MPoly f6 = f.pow(6);
        for (int deg = 1; deg <= 3; ++deg)
            EXPECT_EQ(graded_piece_dim(sat.gens, deg), colon_piece_dim(gens, f6, deg)) << "trial " << t << " degree " << deg;
    }
}

TEST(Groebner, SaturationByLastVariable) {
    Field F;
    Ring r(F, 3);
    Ideal i(r, {parse_poly("x*z", r), parse_poly("y*z", r)});
    EXPECT_TRUE(same_ideal(saturate(i, MPoly::variable(r, 2)), Ideal(r, {parse_poly("x", r), parse_poly("y", r)})));
    Ideal j(r, {parse_poly("x^2", r)});
    EXPECT_TRUE(buchberger(saturate(j, MPoly::variable(r, 0))).is_unit());
}

TEST(Groebner, IntersectionOfPoints) {
    Field F;
    Ring r(F, 2);
    Ideal a(r, {parse_poly("x", r), parse_poly("y", r)});
    Ideal b(r, {parse_poly("x - 1", r), parse_poly("y - 2", r)});
    Ideal c = intersect(a, b);
    for (auto& g : c.gens) {
        EXPECT_EQ(g.evaluate(std::vector<Elem>{0, 0}), 0u);
        EXPECT_EQ(g.evaluate(std::vector<Elem>{1, 2}), 0u);
    }
    EXPECT_EQ(QuotientRing(buchberger(c)).dim(), 2u);
}

TEST(ZeroDim, SolvesPlantedPoints) {
    Field F;
    Ring r(F, 2);
    Rng rng(27);
    std::vector<std::vector<Elem>> pts{{1, 2}, {5, 7}, {100, 3}, {9, 9}};
    Ideal acc(r, {parse_poly("x - 1", r), parse_poly("y - 2", r)});
    for (std::size_t k = 1; k < pts.size(); ++k) {
        Ideal p(r, {MPoly::variable(r, 0) - MPoly::constant(r, pts[k][0]), MPoly::variable(r, 1) - MPoly::constant(r, pts[k][1])});
        acc = intersect(acc, p);
    }
    auto sol = solve_zero_dim(acc, rng);
    EXPECT_EQ(sol.total_degree, 4u);
    auto got = sol.points;
    std::sort(got.begin(), got.end());
    std::sort(pts.begin(), pts.end());
    EXPECT_EQ(got, pts);
}

TEST(ZeroDim, MultiplicityAndIrrationalPoints) {
    Field F;
    Ring r(F, 2);
    Rng rng(28);
    // double point at the origin plus the two points of x^2 + 1 = 0, y = 1 (irrational)
    Ideal fat(r, {parse_poly("x^2", r), parse_poly("y", r)});
    auto s1 = solve_zero_dim(fat, rng);
    EXPECT_EQ(s1.total_degree, 2u);
    EXPECT_EQ(s1.points.size(), 1u);
    Ideal irr(r, {parse_poly("x^2 + 1", r), parse_poly("y - 1", r)});
    auto s2 = solve_zero_dim(irr, rng);
    EXPECT_EQ(s2.total_degree, 2u);
    EXPECT_TRUE(s2.points.empty());
}

TEST(ZeroDim, ProjectiveBezout) {
    Field F;
    Ring r(F, 3);
    Rng rng(29);
    for (int t = 0; t < 5; ++t) {
        MPoly a = random_form(r, 3, rng), b = random_form(r, 4, rng);
        auto sol = solve_projective(Ideal(r, {a, b}), rng);
        EXPECT_EQ(sol.total_degree, 12u);
        for (auto& p : sol.points) {
            EXPECT_EQ(a.evaluate(p), 0u);
            EXPECT_EQ(b.evaluate(p), 0u);
        }
    }
    EXPECT_TRUE(projective_empty(Ideal(r, {parse_poly("x^2", r), parse_poly("y^3", r), parse_poly("z", r)})));
    EXPECT_FALSE(projective_empty(Ideal(r, {parse_poly("x", r), parse_poly("y", r)})));
}

TEST(ZeroDim, NotZeroDimensional) {
    Field F;
    Ring r(F, 2);
    EXPECT_THROW(QuotientRing(buchberger(Ideal(r, {parse_poly("x*y", r)}))), Error);
}

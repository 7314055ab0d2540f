#include <gtest/gtest.h>

#include "support.hpp"

using namespace planarmap;

namespace {

PlanarMap random_map(const Ring& r, int d, Rng& rng) { return PlanarMap(random_form(r, d, rng), random_form(r, d, rng), random_form(r, d, rng)); }

}  // namespace

TEST(CurveTools, RejectsNonForms) {
    Field F;
    Ring r(F, 3);
    EXPECT_THROW(PlaneCurve(parse_poly("x^2 + y", r)), Error);
    EXPECT_THROW(PlaneCurve(MPoly(r)), Error);
    EXPECT_THROW(PlanarMap(parse_poly("x", r), parse_poly("y^2", r), parse_poly("z", r)), Error);
}

TEST(CurveTools, RamificationDeterminantDegree) {
    Field F;
    Ring r(F, 3);
    Rng rng(31);
    for (int d = 2; d <= 4; ++d) {
        PlanarMap f = random_map(r, d, rng);
        PlaneCurve rc = ramification_det(f);
        EXPECT_EQ(rc.degree(), 3 * (d - 1));
        // value at a point is the Jacobian determinant there
        auto p = pm_test::random_point(F, 3, rng);
        std::vector<std::vector<Elem>> jac(3);
        for (std::size_t i = 0; i < 3; ++i)
            for (int v = 0; v < 3; ++v) jac[i].push_back(f.forms[i].derivative(v).evaluate(p));
        EXPECT_EQ(rc.F.evaluate(p), pm_test::cofactor_det(F, jac));
    }
}

TEST(CurveTools, HessianOfFermatCubic) {
    Field F;
    Ring r(F, 3);
    PlaneCurve h = hessian_curve(PlaneCurve(parse_poly("x^3 + y^3 + z^3", r)));
    EXPECT_TRUE(proportional(h.F, parse_poly("x*y*z", r)));
    EXPECT_THROW(hessian_curve(PlaneCurve(parse_poly("x^3", r))), Error);
}

TEST(CurveTools, ExpectedSingularityCount) {
    for (int d = 2; d <= 6; ++d) EXPECT_EQ(singularity_count_expected(d), 9LL * (d * d - 2) * (d - 1) * (d - 1) / 2);
    EXPECT_EQ(singularity_count_expected(3), 126);
    EXPECT_EQ(singularity_count_expected(4), 567);
}

TEST(CurveTools, SingularLocusOfSmallCurves) {
    Field F;
    Ring r(F, 3);
    Rng rng(32);
    auto nod = singular_radical(PlaneCurve(parse_poly("y^2*z - x^2*z - x^3", r)), rng);
    EXPECT_EQ(nod.point_count, 1u);
    EXPECT_EQ(nod.mult_total, 1u);
    for (auto& g : nod.radical_gens) EXPECT_EQ(g.evaluate(std::vector<Elem>{0, 0, 1}), 0u);
    auto cusp = singular_radical(PlaneCurve(parse_poly("y^2*z - x^3", r)), rng);
    EXPECT_EQ(cusp.point_count, 1u);
    EXPECT_EQ(cusp.mult_total, 2u);
    // four general lines: six nodes
    MPoly lines = MPoly::constant(r, 1);
    for (int k = 0; k < 4; ++k) lines *= random_form(r, 1, rng);
    auto four = singular_radical(PlaneCurve(lines), rng);
    EXPECT_EQ(four.point_count, 6u);
    EXPECT_EQ(four.mult_total, 6u);
    auto smooth = singular_radical(PlaneCurve(parse_poly("x^4 + y^4 + z^4", r)), rng);
    EXPECT_EQ(smooth.point_count, 0u);
}

TEST(CurveTools, Smoothness) {
    Field F;
    Ring r(F, 3);
    EXPECT_TRUE(is_smooth(PlaneCurve(parse_poly("x^3 + y^3 + z^3", r))));
    EXPECT_FALSE(is_smooth(PlaneCurve(parse_poly("y^2*z - x^3", r))));
    EXPECT_FALSE(is_smooth(PlaneCurve(parse_poly("x*y", r))));
}

TEST(CurveTools, PointsOnRandomLinesLieOnTheCurve) {
    Field F;
    Ring r(F, 3);
    Rng rng(33);
    MPoly f = random_form(r, 5, rng);
    std::size_t found = 0;
    for (int t = 0; t < 50; ++t)
        for (auto& p : points_on_random_line(f, rng)) {
            EXPECT_EQ(f.evaluate(p), 0u);
            ++found;
        }
    EXPECT_GT(found, 10u);
}

TEST(CurveTools, InterpolationRecoversCurve) {
    Field F;
    Ring r(F, 3);
    Rng rng(34);
    MPoly f = random_form(r, 4, rng);
    std::vector<std::vector<Elem>> pts;
    while (pts.size() < 30)
        for (auto& p : points_on_random_line(f, rng)) pts.push_back(normalize_point(F, p));
    MPoly g = interpolate_curve(r, pts, 1, 6);
    EXPECT_TRUE(proportional(f, g));
}

TEST(CurveTools, DualOfConicAndCubic) {
    Field F;
    Ring r(F, 3);
    Rng rng(35);
    MPoly conic = parse_poly("x^2 + y^2 - z^2", r);
    EXPECT_TRUE(proportional(dual_curve(PlaneCurve(conic), rng).F, conic));
    EXPECT_TRUE(proportional(dual_curve_by_elimination(PlaneCurve(conic), rng).F, conic));

    PlaneCurve cubic(random_form(r, 3, rng));
    ASSERT_TRUE(is_smooth(cubic));
    PlaneCurve dual = dual_curve(cubic, rng);
    EXPECT_EQ(dual.degree(), 6);
    EXPECT_TRUE(proportional(dual.F, dual_curve_by_elimination(cubic, rng).F));
    auto sing = singular_radical(dual, rng);
    EXPECT_EQ(sing.point_count, 9u);  // nine cusps from the flexes
    EXPECT_EQ(sing.mult_total, 18u);
    EXPECT_TRUE(proportional(dual_curve(dual, rng).F, cubic.F));
}

TEST(CurveTools, NormalizePoint) {
    Field F;
    EXPECT_EQ(normalize_point(F, {2, 4, 2}), (std::vector<Elem>{1, 2, 1}));
    EXPECT_EQ(normalize_point(F, {3, 0, 0}), (std::vector<Elem>{1, 0, 0}));
}

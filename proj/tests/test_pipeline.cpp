#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace planarmap;

TEST(Pipeline, ForwardDegrees) {
    Rng rng(81);
    for (int d = 2; d <= 3; ++d) {
        auto inst = forward_generate(d, rng);
        EXPECT_EQ(inst.f.degree(), d);
        EXPECT_EQ(inst.R.degree(), 3 * (d - 1));
        EXPECT_EQ(inst.B.degree(), 3 * d * (d - 1));
        EXPECT_TRUE(base_point_free(inst.f));
        EXPECT_TRUE(is_smooth(inst.R));
        EXPECT_TRUE(verify_branching(inst.f, inst.B));
        // the image of a ramification point lies on B
        for (int t = 0; t < 5; ++t)
            for (auto& p : points_on_random_line(inst.R.F, rng)) EXPECT_EQ(inst.B.F.evaluate(inst.f(p)), 0u);
    }
    EXPECT_THROW(forward_generate(5, rng), Error);
}

TEST(Pipeline, VerifyRejectsWrongCurve) {
    Rng rng(82);
    auto inst = forward_generate(2, rng);
    PlaneCurve other(random_form(inst.B.ring(), 6, rng));
    EXPECT_FALSE(verify_branching(inst.f, other));
    PlaneCurve low(random_form(inst.B.ring(), 5, rng));
    EXPECT_FALSE(verify_branching(inst.f, low));
}

TEST(Pipeline, BranchingCurveByEliminationAgrees) {
    Rng rng(83);
    auto inst = forward_generate(2, rng);
    auto elim = branching_curve_by_elimination(inst.f, inst.R, rng);
    EXPECT_TRUE(proportional(elim.F, inst.B.F));
}

TEST(Pipeline, PreimageCounts) {
    Rng rng(84);
    auto inst = forward_generate(2, rng);
    const Field& F = inst.B.ring().field;
    auto q = pm_test::random_point(F, 3, rng);
    auto [rat, total] = preimage_count(inst.f, q, rng);
    EXPECT_EQ(total, 4u);
    EXPECT_LE(rat, 4u);
    // a point with a known rational preimage
    auto s = pm_test::random_point(F, 3, rng);
    auto img = inst.f(s);
    auto [rat2, total2] = preimage_count(inst.f, img, rng);
    EXPECT_EQ(total2, 4u);
    EXPECT_GE(rat2, 1u);
}

TEST(Pipeline, ManifestRoundTrip) {
    Rng rng(85);
    auto inst = forward_generate(2, rng);
    Manifest m = map_manifest(inst.f);
    m.set("seed", "85");
    std::stringstream ss;
    write_manifest(ss, m);
    std::stringstream in("# comment\n\n" + ss.str());
    Manifest back = read_manifest(in);
    EXPECT_EQ(back.at("seed"), "85");
    PlanarMap f = map_from_manifest(back);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(f.forms[i], inst.f.forms[i]);
    std::stringstream bad("no equals sign\n");
    EXPECT_THROW(read_manifest(bad), Error);
    EXPECT_THROW(back.at("missing"), Error);
}

TEST(Pipeline, ReconstructDegreeTwo) {
    Rng rng(86);
    auto inst = forward_generate(2, rng);
    auto rep = reconstruct(inst.B, 2, 86);
    ASSERT_TRUE(rep.ok()) << rep.message;
    EXPECT_EQ(rep.get("singular_points"), "9");
    EXPECT_EQ(rep.get("mu_poly_degree"), "3");
    for (auto& f : rep.maps) EXPECT_TRUE(verify_branching(f, inst.B));
}

TEST(Pipeline, ReconstructDegreeThree) {
    Rng rng(87);
    auto inst = forward_generate(3, rng);
    auto rep = reconstruct(inst.B, 3, 87);
    ASSERT_TRUE(rep.ok()) << rep.message;
    EXPECT_EQ(rep.get("singular_points"), "126");
    EXPECT_EQ(rep.get("jacobian_degree"), "168");
    EXPECT_EQ(rep.get("N"), "9");
    EXPECT_EQ(rep.get("quadrics"), "28");
    EXPECT_EQ(rep.get("veronese_quadrics"), "27");
    EXPECT_EQ(rep.get("veronese_cubic_piece"), "165");
    EXPECT_EQ(rep.get("dim_J"), "3");
    ASSERT_EQ(rep.maps.size(), 1u);
    EXPECT_TRUE(verify_branching(rep.maps[0], inst.B));
    EXPECT_EQ(rep.maps[0].degree(), 3);
    std::stringstream out;
    write_report(out, rep);
    EXPECT_NE(out.str().find("status=ok"), std::string::npos);
}

TEST(Pipeline, ReconstructRejectsWrongDegree) {
    Field F;
    Ring r(F, 3);
    Rng rng(88);
    auto rep = reconstruct(PlaneCurve(random_form(r, 7, rng)), 2, 1);
    ASSERT_TRUE(rep.failure.has_value());
    EXPECT_EQ(*rep.failure, ErrorKind::WrongDegree);
    EXPECT_TRUE(rep.maps.empty());
}

TEST(Pipeline, ReconstructRejectsRandomCurve) {
    Field F;
    Ring r(F, 3);
    Rng rng(89);
    auto rep = reconstruct(PlaneCurve(random_form(r, 18, rng)), 3, 1);
    ASSERT_TRUE(rep.failure.has_value());
    EXPECT_EQ(*rep.failure, ErrorKind::WrongSingularityCount);
    EXPECT_EQ(rep.get("singular_points"), "0");
    EXPECT_TRUE(rep.maps.empty());
}

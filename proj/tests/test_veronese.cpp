#include <gtest/gtest.h>

#include "support.hpp"

using namespace planarmap;

TEST(Veronese, ExpectedCounts) {
    EXPECT_EQ(expected_veronese_quadrics(2), 6u);
    EXPECT_EQ(expected_veronese_quadrics(3), 27u);
    EXPECT_EQ(expected_veronese_quadrics(4), 75u);
    EXPECT_EQ(expected_veronese_cubics(3), 165u);
    EXPECT_EQ(binom(16, 2) - binom(10, 2), 75u);
}

TEST(Veronese, StandardSurfaceHilbertFunction) {
    Field F;
    Rng rng(51);
    for (int d = 2; d <= 4; ++d) {
        auto v = standard_veronese(F, d);
        EXPECT_EQ(v.n_ambient, expected_N(d) + 1);
        auto [q2, q3] = veronese_piece_dims(v);
        EXPECT_EQ(q2, expected_veronese_quadrics(d));
        EXPECT_EQ(q3, expected_veronese_cubics(d));
        auto s = pm_test::random_point(F, 3, rng);
        auto p = veronese_point(F, d, s);
        EXPECT_TRUE(on_surface(v, p));
        EXPECT_TRUE(verify_veronese(v, p));
        auto junk = pm_test::random_point(F, v.n_ambient, rng);
        EXPECT_FALSE(on_surface(v, junk));
    }
}

TEST(Veronese, QuadricsVanishOnlyOnTheSurfaceUpToDegree) {
    Field F;
    Rng rng(52);
    // kernel oracle: every quadric vanishes at many Veronese points
    auto v = standard_veronese(F, 3);
    for (int t = 0; t < 30; ++t) {
        auto p = veronese_point(F, 3, pm_test::random_point(F, 3, rng));
        for (auto& q : v.quadrics) EXPECT_EQ(q.evaluate(p), 0u);
    }
}

TEST(Veronese, FromQuadricsInChangedCoordinates) {
    Field F;
    Ring r(F, 3);
    Rng rng(53);
    PlanarMap f0(random_form(r, 4, rng), random_form(r, 4, rng), random_form(r, 4, rng));
    auto mv = pm_test::map_veronese(f0);
    QuadricSpace qs{mv.v.n_ambient, mv.v.quadrics};
    auto v = veronese_from_quadrics(qs, 4);
    EXPECT_EQ(v.dim(), 75u);
    auto s = pm_test::random_point(F, 3, rng);
    auto p = mv.point(s);
    auto img = f0(s);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(p[i], img[i]);
    EXPECT_TRUE(verify_veronese(v, p));

    QuadricSpace short_qs{qs.n_ambient, {qs.quadrics.begin(), qs.quadrics.end() - 1}};
    EXPECT_THROW(veronese_from_quadrics(short_qs, 4), Error);
}

TEST(Veronese, FromSyzygiesOnBranchingCurve) {
    Rng rng(54);
    auto inst = forward_generate(3, rng);
    const Field& F = inst.B.ring().field;
    auto ln = linear_normalization(inst.B, rng, 3);
    auto qs = image_quadrics(ln.curve);
    auto syz = linear_syzygies(qs, F);
    auto v = veronese_from_syzygies(qs, syz, F);
    EXPECT_EQ(v.dim(), 27u);
    auto [q2, q3] = veronese_piece_dims(v);
    EXPECT_EQ(q2, 27u);
    EXPECT_EQ(q3, 165u);
    // contained in the 28 quadrics through the curve
    std::vector<MPoly> both = qs.quadrics;
    both.insert(both.end(), v.quadrics.begin(), v.quadrics.end());
    EXPECT_EQ(pm_test::graded_piece_dim(both, 2), 28u);
    // the 28 quadrics alone have a larger cubic piece deficit: they cut out the curve, not a surface
    VeroneseIdeal all{qs.n_ambient, 3, qs.quadrics};
    EXPECT_GT(veronese_piece_dims(all).second, 165u);
    auto y = find_point(v, rng, 200);
    EXPECT_TRUE(verify_veronese(v, y.coords));
}

TEST(Veronese, SyzygyRouteRejectsWrongInput) {
    Rng rng(55);
    auto inst = forward_generate(2, rng);
    const Field& F = inst.B.ring().field;
    auto ln = linear_normalization(inst.B, rng, 2);
    auto qs = image_quadrics(ln.curve);
    try {
        veronese_from_syzygies(qs, linear_syzygies(qs, F), F);
        FAIL() << "expected NotABranchingCurve";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotABranchingCurve);
    }
}

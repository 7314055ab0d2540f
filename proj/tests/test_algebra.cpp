#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace planarmap;
using pm_test::random_poly;

TEST(Field, ReductionMatchesModulo) {
    Rng rng(1);
    for (std::uint32_t p : {7u, 101u, 32003u, 2147483629u}) {
        Field F(p);
        for (int i = 0; i < 2000; ++i) {
            Elem a = F.random(rng), b = F.random(rng);
            EXPECT_EQ(F.mul(a, b), static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p));
            EXPECT_EQ(F.add(a, b), static_cast<Elem>((static_cast<std::uint64_t>(a) + b) % p));
        }
    }
}

TEST(Field, InverseAndFermat) {
    Field F;
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) {
        Elem a = F.random_nonzero(rng);
        EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
        EXPECT_EQ(F.pow(a, F.p() - 1), 1u);
    }
    EXPECT_EQ(F.from_int(-1), F.p() - 1);
    EXPECT_THROW(F.inv(0), Error);
}

TEST(Field, RejectsComposite) {
    EXPECT_THROW(Field(32004), Error);
    EXPECT_TRUE(Field::is_prime(32003));
    EXPECT_FALSE(Field::is_prime(32001));
}

TEST(UniPoly, RootsOfProductOfLinearFactors) {
    Field F;
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Elem> rs;
        for (int k = 0; k < 6; ++k) rs.push_back(F.random(rng));
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        UniPoly irreducible_quadratic(F, {1, 0, 1});  // x^2 + 1, 32003 = 3 mod 4
        UniPoly f = UniPoly::from_roots(F, rs) * irreducible_quadratic;
        auto got = roots(f);
        std::sort(got.begin(), got.end());
        EXPECT_EQ(got, rs);
    }
}

TEST(UniPoly, GcdAndSquarefree) {
    Field F;
    UniPoly a = UniPoly::from_roots(F, {1, 2, 3, 3});
    UniPoly b = UniPoly::from_roots(F, {3, 4, 2});
    EXPECT_EQ(gcd(a, b), UniPoly::from_roots(F, {2, 3}));
    EXPECT_EQ(squarefree_part(a), UniPoly::from_roots(F, {1, 2, 3}));
    EXPECT_EQ(root_multiplicity(a, 3), 2);
    EXPECT_EQ(root_multiplicity(a, 5), 0);
}

TEST(UniPoly, DivisionIdentity) {
    Field F;
    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        std::vector<Elem> ca(12), cb(5);
        for (auto& x : ca) x = F.random(rng);
        for (auto& x : cb) x = F.random(rng);
        cb.back() = F.random_nonzero(rng);
        UniPoly a(F, ca), b(F, cb);
        auto [q, r] = a.divmod(b);
        EXPECT_EQ(q * b + r, a);
        EXPECT_LT(r.degree(), b.degree());
    }
}

TEST(UniPoly, ResultantIsProductOverRoots) {
    Field F;
    Rng rng(5);
    std::vector<Elem> rs{3, 17, 400};
    UniPoly a = UniPoly::from_roots(F, rs);
    UniPoly b(F, {F.random(rng), F.random(rng), F.random(rng), 1});
    Elem expect = 1;
    for (Elem r : rs) expect = F.mul(expect, b.eval(r));
    EXPECT_EQ(resultant(a, b), expect);
}

TEST(UniPoly, InterpolationReproducesValues) {
    Field F;
    Rng rng(6);
    std::vector<Elem> c(8);
    for (auto& x : c) x = F.random(rng);
    UniPoly f(F, c);
    std::vector<Elem> xs, ys;
    for (Elem x = 10; x < 18; ++x) {
        xs.push_back(x);
        ys.push_back(f.eval(x));
    }
    EXPECT_EQ(interpolate(F, xs, ys), f);
}

TEST(Matrix, NullspaceAndRank) {
    Field F;
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        // rank-deficient product
        Matrix a = Matrix::random(F, 6, 3, rng), b = Matrix::random(F, 3, 9, rng);
        Matrix m(F, 6, 9);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 9; ++j)
                for (std::size_t k = 0; k < 3; ++k) m(i, j) = F.add(m(i, j), F.mul(a(i, k), b(k, j)));
        Matrix ker = m.nullspace();
        EXPECT_EQ(m.rank(), 3u);
        EXPECT_EQ(ker.rows(), 6u);
        for (std::size_t r = 0; r < ker.rows(); ++r) {
            auto v = m.apply(ker.row(r));
            EXPECT_TRUE(std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; }));
        }
    }
}

TEST(Matrix, DeterminantInverseCharpoly) {
    Field F;
    Rng rng(8);
    for (int t = 0; t < 10; ++t) {
        Matrix a = Matrix::random(F, 5, 5, rng);
        std::vector<std::vector<Elem>> rows;
        for (std::size_t i = 0; i < 5; ++i) rows.push_back(a.row_vector(i));
        Elem det = pm_test::cofactor_det(F, rows);
        EXPECT_EQ(a.determinant(), det);
        if (det) {
            Matrix inv = a.inverse();
            for (std::size_t i = 0; i < 5; ++i) {
                auto e = a.apply(inv.col_vector(i));
                for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(e[j], i == j ? 1u : 0u);
            }
        }
        UniPoly cp = a.charpoly();
        EXPECT_EQ(cp.degree(), 5);
        Elem lam = F.random(rng);
        std::vector<std::vector<Elem>> shifted = rows;
        for (std::size_t i = 0; i < 5; ++i) {
            for (auto& x : shifted[i]) x = F.neg(x);
            shifted[i][i] = F.add(shifted[i][i], lam);
        }
        EXPECT_EQ(cp.eval(lam), pm_test::cofactor_det(F, shifted));
    }
}

TEST(Matrix, RowSpaceIntersection) {
    Field F;
    Matrix a = Matrix::from_rows(F, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
    Matrix b = Matrix::from_rows(F, 4, {{0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}});
    EXPECT_EQ(intersect_row_spaces(a, b).rows(), 2u);
    EXPECT_EQ(sum_row_spaces(a, b).rows(), 4u);
}

TEST(MonomialOrder, DegRevLexLexBlock) {
    Field F;
    auto m = [](int a, int b, int c) {
        Monomial x;
        x.e[0] = static_cast<std::uint16_t>(a);
        x.e[1] = static_cast<std::uint16_t>(b);
        x.e[2] = static_cast<std::uint16_t>(c);
        x.deg = static_cast<std::uint32_t>(a + b + c);
        return x;
    };
    Ring drl(F, 3), lex(F, 3, MonomialOrder::lex()), blk(F, 3, MonomialOrder::block_order(1));
    EXPECT_GT(drl.compare(m(0, 3, 0), m(1, 0, 2)), 0);
    EXPECT_LT(lex.compare(m(0, 3, 0), m(1, 0, 2)), 0);
    EXPECT_GT(drl.compare(m(0, 0, 4), m(1, 1, 0)), 0);
    EXPECT_GT(blk.compare(m(1, 0, 0), m(0, 5, 0)), 0);
    EXPECT_GT(blk.compare(m(0, 2, 0), m(0, 1, 1)), 0);
    EXPECT_EQ(drl.compare(m(1, 2, 3), m(1, 2, 3)), 0);
}

TEST(MPoly, RingAxiomsOnRandomInputs) {
    Field F;
    Ring r(F, 3);
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        MPoly a = random_poly(r, 4, rng), b = random_poly(r, 3, rng), c = random_poly(r, 3, rng);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(MPoly, EvaluationIsAHomomorphism) {
    Field F;
    Ring r(F, 4);
    Rng rng(10);
    for (int t = 0; t < 20; ++t) {
        MPoly a = random_poly(r, 3, rng), b = random_poly(r, 3, rng);
        auto p = pm_test::random_point(F, 4, rng);
        EXPECT_EQ((a * b).evaluate(p), F.mul(a.evaluate(p), b.evaluate(p)));
        EXPECT_EQ((a + b).evaluate(p), F.add(a.evaluate(p), b.evaluate(p)));
    }
}

TEST(MPoly, ExactDivisionAndEuler) {
    Field F;
    Ring r(F, 3);
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        MPoly a = random_form(r, 4, rng), b = random_form(r, 3, rng);
        EXPECT_EQ(exact_divide(a * b, b), a);
        EXPECT_FALSE(divides_exactly(b, a + MPoly::constant(r, 1)));
        // x f_x + y f_y + z f_z = deg f * f
        MPoly euler(r);
        for (int v = 0; v < 3; ++v) euler += MPoly::variable(r, v) * a.derivative(v);
        EXPECT_EQ(euler, a.scaled(4));
    }
    EXPECT_THROW(exact_divide(MPoly::variable(r, 0), MPoly::variable(r, 1)), Error);
}

TEST(MPoly, CompositionMatchesEvaluation) {
    Field F;
    Ring r(F, 3);
    Rng rng(12);
    MPoly f = random_form(r, 5, rng);
    std::vector<MPoly> images{random_form(r, 2, rng), random_form(r, 2, rng), random_form(r, 2, rng)};
    MPoly g = f.compose(images);
    EXPECT_EQ(g.total_degree(), 10);
    for (int t = 0; t < 10; ++t) {
        auto p = pm_test::random_point(F, 3, rng);
        std::vector<Elem> q{images[0].evaluate(p), images[1].evaluate(p), images[2].evaluate(p)};
        EXPECT_EQ(g.evaluate(p), f.evaluate(q));
    }
    Matrix m = Matrix::random(F, 3, 3, rng);
    MPoly s = f.substitute_linear(m);
    auto p = pm_test::random_point(F, 3, rng);
    EXPECT_EQ(s.evaluate(p), f.evaluate(m.apply(p)));
}

TEST(MPoly, DeterminantOfPolynomialMatrix) {
    Field F;
    Ring r(F, 3);
    Rng rng(13);
    std::vector<std::vector<MPoly>> m(3);
    for (auto& row : m)
        for (int j = 0; j < 3; ++j) row.push_back(random_form(r, 1, rng));
    MPoly det = determinant(m);
    auto p = pm_test::random_point(F, 3, rng);
    std::vector<std::vector<Elem>> vals(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (auto& e : m[i]) vals[i].push_back(e.evaluate(p));
    EXPECT_EQ(det.evaluate(p), pm_test::cofactor_det(F, vals));
}

TEST(MPoly, HomogenizeSpecialize) {
    Field F;
    Ring r(F, 3);
    MPoly f = parse_poly("x^3 + 2*x*y - 5", r);
    MPoly h = parse_poly("x^3 + 2*x*y*z - 5*z^3", r);
    EXPECT_EQ(f.homogenize(2), h);
    EXPECT_EQ(h.specialize(2, 1), f);
}

TEST(TextIO, RoundTrip) {
    Field F;
    Ring r(F, 3);
    Rng rng(14);
    for (int t = 0; t < 10; ++t) {
        MPoly f = random_poly(r, 6, rng, 40);
        EXPECT_EQ(parse_poly(to_string(f), r), f);
    }
    EXPECT_EQ(to_string(parse_poly("(x - y)^2", r)), "x^2 - 2*x*y + y^2");
    EXPECT_THROW(parse_poly("x + + ", r), Error);
    EXPECT_THROW(parse_poly("x * q", r), Error);
}

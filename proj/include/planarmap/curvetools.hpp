#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <set>
#include <vector>

#include "planarmap/zerodim.hpp"

namespace planarmap {

/// A plane curve given by one homogeneous ternary form.
struct PlaneCurve {
    MPoly F;

    explicit PlaneCurve(MPoly f) : F(std::move(f)) {
        if (F.nvars() != 3) fail(ErrorKind::InvalidArgument, "plane curve needs 3 variables");
        if (F.is_zero() || !F.is_homogeneous()) fail(ErrorKind::InvalidArgument, "plane curve must be a nonzero form");
    }
    int degree() const { return F.total_degree(); }
    const Ring& ring() const { return F.ring(); }
};

/// Three forms of a common degree d in three variables.
struct PlanarMap {
    std::array<MPoly, 3> forms;

    PlanarMap(MPoly a, MPoly b, MPoly c) : forms{std::move(a), std::move(b), std::move(c)} {
        int d = forms[0].total_degree();
        for (auto& f : forms)
            if (f.nvars() != 3 || f.is_zero() || !f.is_homogeneous() || f.total_degree() != d)
                fail(ErrorKind::InvalidArgument, "planar map needs three nonzero forms of equal degree");
    }
    int degree() const { return forms[0].total_degree(); }
    const Ring& ring() const { return forms[0].ring(); }
    std::vector<MPoly> as_vector() const { return {forms[0], forms[1], forms[2]}; }
    std::array<Elem, 3> operator()(std::span<const Elem> x) const {
        return {forms[0].evaluate(x), forms[1].evaluate(x), forms[2].evaluate(x)};
    }
};

/// Gradient of a form.
inline std::array<MPoly, 3> gradient(const MPoly& f) { return {f.derivative(0), f.derivative(1), f.derivative(2)}; }

/// Determinant of the Jacobian matrix of the map.
inline PlaneCurve ramification_det(const PlanarMap& f) {
    std::vector<std::vector<MPoly>> jac;
    for (auto& g : f.forms) jac.push_back({g.derivative(0), g.derivative(1), g.derivative(2)});
    return PlaneCurve(determinant(jac));
}

/// Determinant of the matrix of second partials.
inline PlaneCurve hessian_curve(const PlaneCurve& c) {
    std::vector<std::vector<MPoly>> h(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h[static_cast<std::size_t>(i)].push_back(c.F.derivative(i).derivative(j));
    MPoly det = determinant(h);
    if (det.is_zero()) fail(ErrorKind::NotGeneric, "Hessian vanishes identically");
    return PlaneCurve(det);
}

/// Number of nodes plus cusps of the branching curve of a generic map of degree d.
inline long long singularity_count_expected(int d) {
    if (d < 2) fail(ErrorKind::InvalidArgument, "degree parameter must be at least 2");
    long long dd = d;
    return 9 * (dd * dd - 2) * (dd - 1) * (dd - 1) / 2;
}

/// Uniformly random invertible n x n matrix.
inline Matrix random_invertible(const Field& F, std::size_t n, Rng& rng) {
    for (;;) {
        Matrix m = Matrix::random(F, n, n, rng);
        if (m.determinant() != 0) return m;
    }
}

/// Univariate polynomial in variable v of a polynomial involving no other variable.
inline UniPoly to_unipoly(const MPoly& f, int v) {
    std::vector<Elem> c;
    for (auto& t : f.terms()) {
        if (t.m.deg != t.m.e[static_cast<std::size_t>(v)]) fail(ErrorKind::InvalidArgument, "polynomial is not univariate");
        std::size_t k = t.m.deg;
        if (c.size() <= k) c.resize(k + 1, 0);
        c[k] = t.c;
    }
    return UniPoly(f.field(), std::move(c));
}

/// Embeds a univariate polynomial as a polynomial in variable v of ring r.
inline MPoly from_unipoly(const UniPoly& u, const Ring& r, int v) {
    std::vector<Term> ts;
    for (std::size_t k = 0; k < u.coeffs().size(); ++k)
        if (u[k]) ts.push_back({Monomial::var(v, static_cast<std::uint16_t>(k)), u[k]});
    return MPoly::from_terms(r, std::move(ts));
}

namespace detail {

// True if the forms share a zero on the line z = 0.
inline bool common_zero_at_infinity(const std::vector<MPoly>& forms) {
    const Field& F = forms.front().field();
    bool at_x = true;
    std::array<Elem, 3> ex{1, 0, 0};
    for (auto& f : forms)
        if (f.evaluate(ex) != 0) at_x = false;
    if (at_x) return true;
    UniPoly g(F);
    for (auto& f : forms) g = gcd(g, to_unipoly(f.specialize(2, 0).specialize(1, 1), 0));
    return g.degree() > 0;
}

inline Ring affine_plane(const Field& F) { return Ring(F, 2); }

inline MPoly to_affine(const MPoly& f, const Ring& aff) { return dehomogenize_last(f, aff); }

inline MPoly to_projective(const MPoly& g, const Ring& proj) {
    return g.remap(proj, std::vector<int>{0, 1}).homogenize(2);
}

}  // namespace detail

/// Singular locus of a reduced plane curve and the radical of its ideal.
struct SingularLocusData {
    std::vector<MPoly> radical_gens;  ///< homogeneous, input coordinates
    std::size_t point_count = 0;
    std::size_t mult_total = 0;
    Matrix chart;  ///< T with chart coordinates x' related by x = T x'
    std::shared_ptr<const QuotientRing> radical;  ///< affine radical in chart coordinates, z' = 1

    SingularLocusData(const Field& F) : chart(Matrix::identity(F, 3)) {}
};

/// Radical of the singular locus. In a random chart with no singular point on
/// the line at infinity, the affine Jacobian ideal is zero-dimensional; adding
/// the squarefree parts of the eigenvalue polynomials of x and y gives its radical.
inline SingularLocusData singular_radical(const PlaneCurve& c, Rng& rng, GbBudget budget = {}, int max_charts = 8) {
    const Ring& r = c.ring();
    const Field& F = r.field;
    Ring aff = detail::affine_plane(F);
    for (int attempt = 0; attempt < max_charts; ++attempt) {
        Matrix t = random_invertible(F, 3, rng);
        MPoly fc = c.F.substitute_linear(t);
        auto grad = gradient(fc);
        if (detail::common_zero_at_infinity({fc, grad[0], grad[1], grad[2]})) continue;

        MPoly f = detail::to_affine(fc, aff);
        Ideal jac(aff, {f, f.derivative(0), f.derivative(1)});
        SingularLocusData out(F);
        out.chart = t;
        auto gb = buchberger(jac, MonomialOrder::degrevlex(), budget);
        if (gb.is_unit()) {
            out.radical = std::make_shared<QuotientRing>(std::move(gb));
            return out;
        }
        QuotientRing qj(std::move(gb));
        out.mult_total = qj.dim();
        std::vector<MPoly> gens = qj.basis_ideal().gens();
        for (int v = 0; v < 2; ++v) {
            UniPoly sq = squarefree_part(qj.mult(v).charpoly());
            gens.push_back(from_unipoly(sq, aff, v));
        }
        auto rgb = buchberger(Ideal(aff, gens), MonomialOrder::degrevlex(), budget);
        auto rad = std::make_shared<QuotientRing>(std::move(rgb));
        out.point_count = rad->dim();
        Matrix tinv = t.inverse();
        for (auto& g : rad->basis_ideal().gens()) out.radical_gens.push_back(detail::to_projective(g, r).substitute_linear(tinv));
        out.radical = std::move(rad);
        return out;
    }
    fail(ErrorKind::ChartFailure, "singular point on the chart line after " + std::to_string(max_charts) + " charts");
}

/// True iff the curve has no singular point.
inline bool is_smooth(const PlaneCurve& c, GbBudget budget = {}) {
    auto g = gradient(c.F);
    return projective_empty(Ideal(c.ring(), {c.F, g[0], g[1], g[2]}), budget);
}

/// Normalized projective representative: last nonzero coordinate equal to 1.
inline std::vector<Elem> normalize_point(const Field& F, std::vector<Elem> x) {
    std::size_t k = x.size();
    while (k > 0 && x[k - 1] == 0) --k;
    if (k == 0) return x;
    Elem s = F.inv(x[k - 1]);
    for (auto& v : x) v = F.mul(v, s);
    return x;
}

/// Rational points of a plane curve on one random line, as normalized triples.
inline std::vector<std::vector<Elem>> points_on_random_line(const MPoly& f, Rng& rng) {
    const Field& F = f.field();
    std::vector<Elem> p(3), q(3);
    for (auto& v : p) v = F.random(rng);
    for (auto& v : q) v = F.random(rng);
    int n = f.total_degree();
    std::vector<Elem> ts, vals;
    for (int k = 0; k <= n; ++k) {
        Elem t = static_cast<Elem>(k);
        std::vector<Elem> x(3);
        for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>(i)] = F.add(p[static_cast<std::size_t>(i)], F.mul(t, q[static_cast<std::size_t>(i)]));
        ts.push_back(t);
        vals.push_back(f.evaluate(x));
    }
    UniPoly u = interpolate(F, ts, vals);
    std::vector<std::vector<Elem>> out;
    if (u.is_zero()) return out;  // line inside the curve
    for (Elem t : roots(u)) {
        std::vector<Elem> x(3);
        for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>(i)] = F.add(p[static_cast<std::size_t>(i)], F.mul(t, q[static_cast<std::size_t>(i)]));
        bool zero = std::all_of(x.begin(), x.end(), [](Elem v) { return v == 0; });
        if (!zero) out.push_back(normalize_point(F, x));
    }
    return out;
}

/// Interpolates the unique form of the first degree D in [lo, hi] admitting one
/// through the points; the caller guarantees enough points for uniqueness.
/// Returns a zero polynomial if no degree qualifies.
inline MPoly interpolate_curve(const Ring& r, const std::vector<std::vector<Elem>>& pts, int lo, int hi) {
    const Field& F = r.field;
    for (int d = lo; d <= hi; ++d) {
        auto mons = monomials_of_degree(3, d);
        Matrix a(F, pts.size(), mons.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            std::array<std::vector<Elem>, 3> pw;
            for (int v = 0; v < 3; ++v) {
                pw[static_cast<std::size_t>(v)].assign(static_cast<std::size_t>(d) + 1, 1);
                for (int k = 1; k <= d; ++k)
                    pw[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)] =
                        F.mul(pw[static_cast<std::size_t>(v)][static_cast<std::size_t>(k - 1)], pts[i][static_cast<std::size_t>(v)]);
            }
            for (std::size_t j = 0; j < mons.size(); ++j)
                a(i, j) = F.mul(F.mul(pw[0][mons[j].e[0]], pw[1][mons[j].e[1]]), pw[2][mons[j].e[2]]);
        }
        Matrix ker = a.nullspace();
        if (ker.rows() == 0) continue;
        if (ker.rows() > 1) fail(ErrorKind::NotPrincipal, "interpolated curve of degree " + std::to_string(d) + " is not unique");
        return from_coefficients(r, mons, ker.row(0)).monic();
    }
    return MPoly(r);
}

/// Dual curve: the closure of the image of x -> grad F(x). Degree D forms
/// through more than D n(n-1) distinct image points of smooth points are
/// multiples of the dual, so the first degree with a nonzero kernel is exact.
inline PlaneCurve dual_curve(const PlaneCurve& c, Rng& rng, int max_lines = 100000) {
    const Field& F = c.ring().field;
    int n = c.degree();
    if (n < 2) fail(ErrorKind::InvalidArgument, "dual needs degree at least 2");
    int bound = n * (n - 1);
    auto grad = gradient(c.F);
    std::set<std::vector<Elem>> seen;
    std::vector<std::vector<Elem>> pts;
    int lines = 0;
    auto want = [&](int d) { return static_cast<std::size_t>(d * bound + 1); };
    for (int d = 1; d <= bound; ++d) {
        while (pts.size() < want(d)) {
            if (++lines > max_lines) fail(ErrorKind::PointSearchExhausted, "not enough rational points for the dual");
            for (auto& x : points_on_random_line(c.F, rng)) {
                std::vector<Elem> u{grad[0].evaluate(x), grad[1].evaluate(x), grad[2].evaluate(x)};
                if (std::all_of(u.begin(), u.end(), [](Elem v) { return v == 0; })) continue;
                u = normalize_point(F, u);
                if (seen.insert(u).second) pts.push_back(u);
            }
        }
        MPoly g = interpolate_curve(c.ring(), pts, d, d);
        if (!g.is_zero()) return PlaneCurve(g);
    }
    fail(ErrorKind::NotPrincipal, "no dual form found up to degree " + std::to_string(bound));
}

/// Dual via elimination of the source variables from <F, 2x2 minors of
/// [(u,v,w); grad F]>, saturated by a random source linear form. For smooth
/// curves of small degree.
inline PlaneCurve dual_curve_by_elimination(const PlaneCurve& c, Rng& rng, GbBudget budget = {}) {
    const Field& F = c.ring().field;
    Ring big(F, 6);
    std::vector<int> src{0, 1, 2};
    MPoly f = c.F.remap(big, src);
    std::array<MPoly, 3> g{f.derivative(0), f.derivative(1), f.derivative(2)};
    std::array<MPoly, 3> u{MPoly::variable(big, 3), MPoly::variable(big, 4), MPoly::variable(big, 5)};
    std::vector<MPoly> gens{f};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            gens.push_back(u[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(j)] - u[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(i)]);
    std::vector<Elem> lc{F.random_nonzero(rng), F.random(rng), F.random(rng), 0, 0, 0};
    MPoly l = MPoly::linear(big, lc);
    Ideal sat = saturate(Ideal(big, gens), l, budget);
    Ideal el = eliminate(sat, 3, budget);
    Ring r3(F, 3);
    std::vector<MPoly> out;
    std::vector<int> back{-1, -1, -1, 0, 1, 2};
    for (auto& h : el.gens) out.push_back(h.remap(r3, back));
    if (out.size() != 1) fail(ErrorKind::NotPrincipal, "eliminated ideal has " + std::to_string(out.size()) + " generators");
    return PlaneCurve(out[0].monic());
}

/// True if a and b agree up to a nonzero scalar.
inline bool proportional(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.monic() == b.monic();
}

}  // namespace planarmap

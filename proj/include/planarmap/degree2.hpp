#pragma once

#include <vector>

#include "planarmap/curvetools.hpp"

namespace planarmap {

/// s^3 + t^3 + u^3 + lambda s t u.
inline MPoly hessian_normal_form(const Ring& r, Elem lambda) {
    std::vector<Term> ts{{Monomial::var(0, 3), 1}, {Monomial::var(1, 3), 1}, {Monomial::var(2, 3), 1}};
    if (lambda) ts.push_back({Monomial::var(0) * Monomial::var(1) * Monomial::var(2), lambda});
    return MPoly::from_terms(r, std::move(ts));
}

/// Pencil parameter of the Hessian of the normal form: -(l^3 + 108) / (3 l^2).
inline Elem hessian_pencil_step(const Field& F, Elem lambda) {
    if (lambda == 0) fail(ErrorKind::DivisionByZero, "pencil step at lambda = 0");
    Elem num = F.add(F.pow(lambda, 3), F.from_int(108));
    Elem den = F.mul(F.from_int(3), F.mul(lambda, lambda));
    return F.neg(F.div(num, den));
}

struct HessianPencilSolution {
    PlaneCurve dual_cubic;
    UniPoly mu_poly;
    std::vector<Elem> mu_roots;
    std::vector<PlanarMap> maps;
    std::size_t singular_points = 0;
};

namespace detail {

// Hessian of G = H + mu C with mu as a fourth variable, grouped by the
// monomial in the first three variables.
inline std::vector<std::pair<Monomial, UniPoly>> pencil_hessian_coefficients(const MPoly& h, const MPoly& c) {
    const Field& F = c.field();
    Ring r4(F, 4);
    std::vector<int> map{0, 1, 2};
    MPoly g = h.remap(r4, map) + MPoly::variable(r4, 3) * c.remap(r4, map);
    std::vector<std::vector<MPoly>> m(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[static_cast<std::size_t>(i)].push_back(g.derivative(i).derivative(j));
    MPoly det = determinant(m);
    std::vector<std::pair<Monomial, std::vector<Elem>>> acc;
    for (auto& t : det.terms()) {
        Monomial base = t.m;
        std::size_t k = base.e[3];
        base.deg -= base.e[3];
        base.e[3] = 0;
        auto it = std::find_if(acc.begin(), acc.end(), [&](auto& p) { return p.first == base; });
        if (it == acc.end()) {
            acc.push_back({base, {}});
            it = acc.end() - 1;
        }
        if (it->second.size() <= k) it->second.resize(k + 1, 0);
        it->second[k] = t.c;
    }
    std::vector<std::pair<Monomial, UniPoly>> out;
    for (auto& [m0, v] : acc) out.push_back({m0, UniPoly(F, v)});
    return out;
}

}  // namespace detail

/// The cubic in mu whose roots make H(H(C) + mu C) proportional to C: gcd of
/// all coefficient cross-ratio conditions.
inline UniPoly pencil_mu_poly(const MPoly& c) {
    const Field& F = c.field();
    MPoly h = hessian_curve(PlaneCurve(c)).F;
    auto coeffs = detail::pencil_hessian_coefficients(h, c);
    auto mons = monomials_of_degree(3, 3);
    auto hc = [&](const Monomial& m) {
        for (auto& [m0, u] : coeffs)
            if (m0 == m) return u;
        return UniPoly(F);
    };
    UniPoly g(F);
    for (std::size_t a = 0; a < mons.size(); ++a) {
        Elem ca = c.coeff(mons[a]);
        UniPoly ha = hc(mons[a]);
        if (!ca) g = gcd(g, ha);
        for (std::size_t b = a + 1; b < mons.size(); ++b) {
            Elem cb = c.coeff(mons[b]);
            g = gcd(g, ha.scaled(cb) - hc(mons[b]).scaled(ca));
        }
    }
    return g.monic();
}

/// Solves the Hessian-pencil problem for a sextic with nine cusps. Maps are
/// returned for every rational root; none are returned when no root is rational.
inline HessianPencilSolution hessian_pencil(const PlaneCurve& b, Rng& rng, GbBudget budget = {}) {
    if (b.degree() != 6) fail(ErrorKind::NotNineCuspidalSextic, "curve has degree " + std::to_string(b.degree()));
    auto sing = singular_radical(b, rng, budget);
    if (sing.point_count != 9 || sing.mult_total != 18)
        fail(ErrorKind::NotNineCuspidalSextic, std::to_string(sing.point_count) + " singular points, Jacobian degree " +
                                                   std::to_string(sing.mult_total));
    PlaneCurve dual = dual_curve(b, rng);
    if (dual.degree() != 3 || !is_smooth(dual, budget))
        fail(ErrorKind::DualNotSmoothCubic, "dual has degree " + std::to_string(dual.degree()));
    UniPoly mu = pencil_mu_poly(dual.F);
    if (mu.degree() != 3) fail(ErrorKind::NotGeneric, "mu polynomial has degree " + std::to_string(mu.degree()));
    HessianPencilSolution sol{dual, mu, roots(mu), {}, sing.point_count};
    MPoly h = hessian_curve(dual).F;
    for (Elem m : sol.mu_roots) {
        MPoly g = h + dual.F.scaled(m);
        MPoly hg = hessian_curve(PlaneCurve(g)).F;
        if (!proportional(hg, dual.F)) fail(ErrorKind::NotGeneric, "H(G) is not proportional to the dual cubic");
        if (!is_smooth(PlaneCurve(g), budget)) fail(ErrorKind::NotGeneric, "pencil member is singular");
        auto grad = gradient(g);
        sol.maps.emplace_back(grad[0], grad[1], grad[2]);
    }
    return sol;
}

/// As hessian_pencil, but a polynomial with no rational root is an error.
inline HessianPencilSolution reconstruct_degree2(const PlaneCurve& b, Rng& rng, GbBudget budget = {}) {
    auto sol = hessian_pencil(b, rng, budget);
    if (sol.maps.empty()) {
        std::string coeffs;
        for (std::size_t k = 0; k < sol.mu_poly.coeffs().size(); ++k)
            coeffs += (k ? "," : "") + std::to_string(sol.mu_poly[k]);
        fail(ErrorKind::NoRationalRoot, "mu polynomial (low to high: " + coeffs + ") has no root in the prime field");
    }
    return sol;
}

}  // namespace planarmap

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "planarmap/curvetools.hpp"

namespace planarmap {

/// Linear normalization presented by forms of degree D = deg g + 1 on the
/// plane model; the first three forms are x g, y g, z g.
struct ParamCurve {
    PlaneCurve base;
    MPoly g;
    std::vector<MPoly> forms;

    int N() const { return static_cast<int>(forms.size()) - 1; }
    int D() const { return forms.front().total_degree(); }
};

struct QuadricSpace {
    int n_ambient = 0;
    std::vector<MPoly> quadrics;
    std::size_t dim() const { return quadrics.size(); }
};

/// Tuples (L_1..L_m) of linear forms with sum L_i Q_i = 0. Row s of `coeffs`
/// stores the coefficient of x_k in L_i at column i * n_ambient + k.
struct LinearSyzygySpace {
    int n_ambient = 0;
    std::size_t n_quadrics = 0;
    Matrix coeffs{Field(), 0, 0};
    std::size_t dim() const { return coeffs.rows(); }

    std::vector<MPoly> tuple(std::size_t s, const Ring& r) const {
        std::vector<MPoly> out;
        for (std::size_t i = 0; i < n_quadrics; ++i) {
            std::vector<Elem> c(static_cast<std::size_t>(n_ambient));
            for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeffs(s, i * static_cast<std::size_t>(n_ambient) + k);
            out.push_back(MPoly::linear(r, c));
        }
        return out;
    }
};

namespace detail {

// Coordinates, in q, of every monomial x^a y^b with a + b <= deg times v0.
// Index by position in monomials_of_degree(3, deg): x^a y^b z^c -> x^a y^b.
inline std::vector<std::vector<Elem>> monomial_images(const QuotientRing& q, const std::vector<Elem>& v0, int deg) {
    auto mons = monomials_of_degree(3, deg);
    std::map<std::pair<int, int>, std::vector<Elem>> cache;
    cache[{0, 0}] = v0;
    for (int e = 1; e <= deg; ++e)
        for (int a = e; a >= 0; --a) {
            int b = e - a;
            if (a > 0)
                cache[{a, b}] = q.times_var(0, cache.at({a - 1, b}));
            else
                cache[{a, b}] = q.times_var(1, cache.at({a, b - 1}));
        }
    std::vector<std::vector<Elem>> out;
    for (auto& m : mons) out.push_back(cache.at({m.e[0], m.e[1]}));
    return out;
}

inline Matrix columns_to_matrix(const Field& F, const std::vector<std::vector<Elem>>& cols, std::size_t rows) {
    Matrix m(F, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
}

}  // namespace detail

/// Minimal-degree nonzero graded piece of the singular radical, and a random
/// element of it.
struct AdjointElement {
    MPoly g;
    int degree = 0;
    std::size_t piece_dim = 0;
};

inline AdjointElement adjoint_element(const PlaneCurve& c, const SingularLocusData& sing, Rng& rng) {
    const QuotientRing& q = *sing.radical;
    const Field& F = c.ring().field;
    Ring aff(F, 2);
    std::vector<Elem> one = q.dim() ? q.vec(MPoly::constant(q.ring(), 1)) : std::vector<Elem>{};
    Matrix tinv = sing.chart.inverse();
    for (int d = 0; d < c.degree(); ++d) {
        auto mons = monomials_of_degree(3, d);
        Matrix ker(F, 0, mons.size());
        if (q.dim() == 0) {
            ker = Matrix::identity(F, mons.size());
        } else {
            auto cols = detail::monomial_images(q, one, d);
            ker = detail::columns_to_matrix(F, cols, q.dim()).nullspace();
        }
        if (ker.rows() == 0) continue;
        std::vector<Elem> comb(mons.size(), 0);
        for (std::size_t k = 0; k < ker.rows(); ++k) {
            Elem a = F.random(rng);
            for (std::size_t j = 0; j < mons.size(); ++j) comb[j] = F.add(comb[j], F.mul(a, ker(k, j)));
        }
        if (std::all_of(comb.begin(), comb.end(), [](Elem x) { return x == 0; })) comb = ker.row_vector(0);
        MPoly gc = from_coefficients(c.ring(), mons, comb);
        return {gc.substitute_linear(tinv), d, ker.rows()};
    }
    fail(ErrorKind::NoAdjoint, "no nonzero piece of the singular radical below degree " + std::to_string(c.degree()));
}

/// Degree deg(g)+1 piece of <g, F> : I, where I is the singular radical.
/// Membership in <g, F> is tested in k[x,y]/<g, F> for a chart in which the
/// two curves do not meet at infinity; the conditions h r_j = 0 are imposed
/// one radical generator at a time.
inline std::vector<MPoly> quotient_graded_piece(const PlaneCurve& c, const MPoly& g, const SingularLocusData& sing, Rng& rng,
                                                GbBudget budget = {}, int max_charts = 8) {
    const Ring& r = c.ring();
    const Field& F = r.field;
    Ring aff(F, 2);
    int D = g.total_degree() + 1;
    auto mons = monomials_of_degree(3, D);
    std::size_t expected = static_cast<std::size_t>(g.total_degree()) * static_cast<std::size_t>(c.degree());
    for (int attempt = 0; attempt < max_charts; ++attempt) {
        Matrix t = random_invertible(F, 3, rng);
        MPoly gc = g.substitute_linear(t), fc = c.F.substitute_linear(t);
        auto gb = buchberger(Ideal(aff, {detail::to_affine(gc, aff), detail::to_affine(fc, aff)}), MonomialOrder::degrevlex(), budget);
        if (gb.is_unit()) {
            if (expected != 0) continue;
        }
        std::optional<QuotientRing> a;
        if (!gb.is_unit()) {
            a.emplace(std::move(gb));
            if (a->dim() != expected) continue;
        }
        Matrix h = Matrix::identity(F, mons.size());
        if (a) {
            for (auto& rg : sing.radical_gens) {
                if (h.rows() == 0) break;
                auto v0 = a->vec(detail::to_affine(rg.substitute_linear(t), aff));
                auto cols = detail::monomial_images(*a, v0, D);
                // image of each current basis element
                Matrix img(F, a->dim(), h.rows());
                for (std::size_t k = 0; k < h.rows(); ++k)
                    for (std::size_t j = 0; j < mons.size(); ++j) {
                        Elem x = h(k, j);
                        if (!x) continue;
                        for (std::size_t i = 0; i < a->dim(); ++i)
                            if (cols[j][i]) img(i, k) = F.add(img(i, k), F.mul(x, cols[j][i]));
                    }
                Matrix ker = img.nullspace();
                h = ker * h;
            }
        }
        Matrix tinv = t.inverse();
        std::vector<MPoly> forms;
        for (std::size_t k = 0; k < h.rows(); ++k) forms.push_back(from_coefficients(r, mons, h.row(k)).substitute_linear(tinv));
        // canonical basis in the input coordinates
        Matrix m(F, forms.size(), mons.size());
        for (std::size_t k = 0; k < forms.size(); ++k) {
            auto v = coefficient_vector(forms[k], mons);
            for (std::size_t j = 0; j < mons.size(); ++j) m(k, j) = v[j];
        }
        Matrix rr = m.rref();
        std::vector<MPoly> out;
        for (std::size_t k = 0; k < rr.rows(); ++k) out.push_back(from_coefficients(r, mons, rr.row(k)));
        return out;
    }
    fail(ErrorKind::ChartFailure, "adjoint and curve meet on the chart line in every chart");
}

/// Pipeline expectation N = d(d+3)/2.
inline int expected_N(int d) { return d * (d + 3) / 2; }

/// Extends (x g, y g, z g) by RREF rows of the piece to a basis.
inline ParamCurve build_param_curve(const PlaneCurve& c, const MPoly& g, const std::vector<MPoly>& piece) {
    const Ring& r = c.ring();
    const Field& F = r.field;
    int D = g.total_degree() + 1;
    auto mons = monomials_of_degree(3, D);
    std::vector<MPoly> forms{MPoly::variable(r, 0) * g, MPoly::variable(r, 1) * g, MPoly::variable(r, 2) * g};
    Matrix acc(F, 0, mons.size());
    for (auto& f : forms) acc.append_row(coefficient_vector(f, mons));
    std::size_t rank = acc.rank();
    if (rank != 3) fail(ErrorKind::NotGeneric, "x g, y g, z g are dependent");
    Matrix piece_m(F, 0, mons.size());
    for (auto& p : piece) piece_m.append_row(coefficient_vector(p, mons));
    if (Matrix::vstack(piece_m, acc).rank() != piece_m.rank())
        fail(ErrorKind::NotGeneric, "x g, y g, z g do not lie in the quotient piece");
    for (auto& p : piece) {
        Matrix trial = acc;
        trial.append_row(coefficient_vector(p, mons));
        if (trial.rank() > rank) {
            acc = std::move(trial);
            ++rank;
            forms.push_back(p);
        }
    }
    if (D >= c.degree()) {
        // forms must stay independent modulo F
        std::vector<MPoly> rems;
        for (auto& f : forms) rems.push_back(divide(f, c.F).second);
        auto idx = std::vector<Monomial>{};
        for (auto& rm : rems)
            for (auto& tt : rm.terms())
                if (std::find(idx.begin(), idx.end(), tt.m) == idx.end()) idx.push_back(tt.m);
        Matrix mm(F, rems.size(), idx.size());
        for (std::size_t k = 0; k < rems.size(); ++k) {
            auto v = coefficient_vector(rems[k], idx);
            for (std::size_t j = 0; j < idx.size(); ++j) mm(k, j) = v[j];
        }
        if (mm.rank() != forms.size()) fail(ErrorKind::NotGeneric, "normalization forms are dependent modulo the curve");
    }
    return ParamCurve{c, g, std::move(forms)};
}

struct LinearNormalizationResult {
    ParamCurve curve;
    AdjointElement adjoint;
    std::size_t piece_dim;
};

/// Linear normalization of a nodal/cuspidal curve from precomputed singular data.
/// If d > 0, N must equal d(d+3)/2.
inline LinearNormalizationResult linear_normalization(const PlaneCurve& c, const SingularLocusData& sing, Rng& rng, int d = 0,
                                                      GbBudget budget = {}) {
    AdjointElement adj = adjoint_element(c, sing, rng);
    auto piece = quotient_graded_piece(c, adj.g, sing, rng, budget);
    ParamCurve pc = build_param_curve(c, adj.g, piece);
    if (d > 0 && pc.N() != expected_N(d))
        fail(ErrorKind::DimensionMismatch, "normalization lies in P^" + std::to_string(pc.N()) + ", expected P^" + std::to_string(expected_N(d)));
    return {std::move(pc), adj, piece.size()};
}

inline LinearNormalizationResult linear_normalization(const PlaneCurve& c, Rng& rng, int d = 0, GbBudget budget = {}) {
    auto sing = singular_radical(c, rng, budget);
    return linear_normalization(c, sing, rng, d, budget);
}

/// Ring of the ambient space P^N of a parametrized curve.
inline Ring ambient_ring(const Field& F, int n_ambient) {
    if (n_ambient > kMaxVars) fail(ErrorKind::ResourceLimit, "ambient dimension exceeds the supported variable count");
    return Ring(F, n_ambient);
}

/// Quadrics Q in the ambient variables with Q(forms) = A F.
inline QuadricSpace image_quadrics(const ParamCurve& pc) {
    const Field& F = pc.base.ring().field;
    int n = pc.N() + 1;
    Ring amb = ambient_ring(F, n);
    auto quad_mons = monomials_of_degree(n, 2);
    std::vector<MPoly> rems;
    std::vector<Monomial> idx;
    std::unordered_map<Monomial, std::size_t, MonomialHash> where;
    for (auto& qm : quad_mons) {
        int i = -1, j = -1;
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < qm.e[static_cast<std::size_t>(v)]; ++k) (i < 0 ? i : j) = v;
        MPoly prod = pc.forms[static_cast<std::size_t>(i)] * pc.forms[static_cast<std::size_t>(j)];
        MPoly rem = divide(prod, pc.base.F).second;
        for (auto& t : rem.terms())
            if (where.emplace(t.m, idx.size()).second) idx.push_back(t.m);
        rems.push_back(std::move(rem));
    }
    Matrix m(F, idx.size(), quad_mons.size());
    for (std::size_t c = 0; c < rems.size(); ++c)
        for (auto& t : rems[c].terms()) m(where.at(t.m), c) = t.c;
    Matrix ker = m.nullspace().rref();
    QuadricSpace qs;
    qs.n_ambient = n;
    for (std::size_t k = 0; k < ker.rows(); ++k) qs.quadrics.push_back(from_coefficients(amb, quad_mons, ker.row(k)));
    return qs;
}

/// All linear syzygies among the quadrics, as one nullspace over cubic coefficients.
inline LinearSyzygySpace linear_syzygies(const QuadricSpace& qs, const Field& F) {
    int n = qs.n_ambient;
    auto cubics = monomials_of_degree(n, 3);
    auto where = index_of(cubics);
    std::size_t m = qs.dim();
    Matrix a(F, cubics.size(), m * static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (int k = 0; k < n; ++k) {
            MPoly p = qs.quadrics[i].mul_term(Monomial::var(k), 1);
            for (auto& t : p.terms()) a(where.at(t.m), i * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)) = t.c;
        }
    LinearSyzygySpace out;
    out.n_ambient = n;
    out.n_quadrics = m;
    out.coeffs = a.nullspace();
    return out;
}

}  // namespace planarmap

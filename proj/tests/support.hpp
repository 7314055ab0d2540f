#pragma once

#include <vector>

#include "planarmap/planarmap.hpp"

namespace pm_test {

using namespace planarmap;

// dense random polynomial of total degree <= deg
inline MPoly random_poly(const Ring& r, int deg, Rng& rng, int density_pct = 60) {
    std::vector<Term> ts;
    for (int k = 0; k <= deg; ++k)
        for (auto& m : monomials_of_degree(r.nvars, k))
            if (static_cast<int>(rng() % 100) < density_pct) ts.push_back({m, r.field.random(rng)});
    return MPoly::from_terms(r, std::move(ts));
}

inline std::vector<Elem> random_point(const Field& F, int n, Rng& rng) {
    std::vector<Elem> p(static_cast<std::size_t>(n));
    for (auto& x : p) x = F.random(rng);
    return p;
}

// naive determinant by cofactor expansion
inline Elem cofactor_det(const Field& F, const std::vector<std::vector<Elem>>& a) {
    std::size_t n = a.size();
    if (n == 1) return a[0][0];
    Elem s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Elem>> m;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Elem> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            m.push_back(row);
        }
        Elem t = F.mul(a[0][j], cofactor_det(F, m));
        s = j % 2 ? F.sub(s, t) : F.add(s, t);
    }
    return s;
}

// dimension of the degree-k piece of the ideal spanned by m * g, deg m + deg g = k, g homogeneous
inline std::size_t graded_piece_dim(const std::vector<MPoly>& gens, int k) {
    int n = gens.front().nvars();
    const Field& F = gens.front().field();
    auto mons = monomials_of_degree(n, k);
    auto idx = index_of(mons);
    Matrix m(F, 0, mons.size());
    for (auto& g : gens) {
        int dg = g.total_degree();
        if (dg > k) continue;
        for (auto& t : monomials_of_degree(n, k - dg)) m.append_row(coefficient_vector(g.mul_term(t, 1), mons, idx));
    }
    return m.rank();
}

}  // namespace pm_test

namespace pm_test {

// Veronese surface of degree d in coordinates where the first three ambient
// coordinates are the components of f0 evaluated at s.
struct MapVeronese {
    VeroneseIdeal v;
    Matrix to_monomials{Field(), 0, 0};
    Matrix inv{Field(), 0, 0};

    std::vector<Elem> point(std::span<const Elem> s) const {
        return inv.apply(veronese_point(v.quadrics.front().field(), v.d, s));
    }
};

inline MapVeronese map_veronese(const PlanarMap& f0) {
    const Field& F = f0.ring().field;
    int d = f0.degree();
    auto mons = monomials_of_degree(3, d);
    std::size_t n = mons.size();
    Matrix cols(F, 0, n);  // rows = coefficient vectors of the basis forms
    for (auto& g : f0.forms) cols.append_row(coefficient_vector(g, mons));
    for (std::size_t k = 0; k < n && cols.rows() < n; ++k) {
        std::vector<Elem> e(n, 0);
        e[k] = 1;
        Matrix trial = Matrix::vstack(cols, Matrix(F, 1, n, e));
        if (trial.rank() == trial.rows()) cols = trial;
    }
    MapVeronese out;
    // coords = C * monomials, C the coefficient rows of the basis forms
    out.inv = cols;
    out.to_monomials = cols.inverse();
    auto std_v = standard_veronese(F, d);
    out.v.n_ambient = std_v.n_ambient;
    out.v.d = d;
    for (auto& q : std_v.quadrics) out.v.quadrics.push_back(q.substitute_linear(out.to_monomials));
    return out;
}

// dim {g in S_k : f g in I}, by linear algebra in degree k + deg f
inline std::size_t colon_piece_dim(const std::vector<MPoly>& gens, const MPoly& f, int k) {
    int n = f.nvars();
    int top = k + f.total_degree();
    auto mons = monomials_of_degree(n, top);
    auto idx = index_of(mons);
    Matrix ip(f.field(), 0, mons.size());
    for (auto& g : gens) {
        if (g.total_degree() > top) continue;
        for (auto& t : monomials_of_degree(n, top - g.total_degree())) ip.append_row(coefficient_vector(g.mul_term(t, 1), mons, idx));
    }
    Matrix fp(f.field(), 0, mons.size());
    for (auto& t : monomials_of_degree(n, k)) fp.append_row(coefficient_vector(f.mul_term(t, 1), mons, idx));
    std::size_t ri = ip.rank();
    std::size_t rs = Matrix::vstack(ip, fp).rank();
    return monomials_of_degree(n, k).size() - (rs - ri);
}

// degree-k piece of I ∩ k[x_j..] for homogeneous I: dim(I_k) + dim(sub_k) - dim(I_k + sub_k)
inline std::size_t elimination_piece_dim(const std::vector<MPoly>& gens, int j, int k) {
    int n = gens.front().nvars();
    auto mons = monomials_of_degree(n, k);
    auto idx = index_of(mons);
    Matrix ip(gens.front().field(), 0, mons.size());
    for (auto& g : gens) {
        if (g.total_degree() > k) continue;
        for (auto& t : monomials_of_degree(n, k - g.total_degree())) ip.append_row(coefficient_vector(g.mul_term(t, 1), mons, idx));
    }
    Matrix sub(gens.front().field(), 0, mons.size());
    for (std::size_t c = 0; c < mons.size(); ++c) {
        bool free = true;
        for (int v = 0; v < j; ++v) free = free && mons[c].e[static_cast<std::size_t>(v)] == 0;
        if (!free) continue;
        std::vector<Elem> e(mons.size(), 0);
        e[c] = 1;
        sub.append_row(e);
    }
    return ip.rank() + sub.rank() - Matrix::vstack(ip, sub).rank();
}

inline bool in_ideal_by_degree(const std::vector<MPoly>& gens, const MPoly& f) {
    int k = f.total_degree();
    std::vector<MPoly> all = gens;
    std::size_t base = graded_piece_dim(all, k);
    all.push_back(f);
    return graded_piece_dim(all, k) == base;
}

inline std::vector<MPoly> random_homogeneous_ideal(const Ring& r, Rng& rng, int count, int lo, int hi) {
    std::vector<MPoly> gens;
    for (int i = 0; i < count; ++i) gens.push_back(random_form(r, lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)), rng));
    return gens;
}


}  // namespace pm_test

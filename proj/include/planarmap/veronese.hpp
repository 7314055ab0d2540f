#pragma once

#include <vector>

#include "planarmap/linnorm.hpp"

namespace planarmap {

inline std::size_t binom(long long n, long long k) {
    if (k < 0 || n < k) return 0;
    std::size_t r = 1;
    for (long long i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

/// Quadrics of the Veronese surface V_d in P^N.
struct VeroneseIdeal {
    int n_ambient = 0;
    int d = 0;
    std::vector<MPoly> quadrics;
    std::size_t dim() const { return quadrics.size(); }
};

/// Number of independent quadrics containing V_d.
inline std::size_t expected_veronese_quadrics(int d) {
    int n = expected_N(d) + 1;
    return binom(n + 1, 2) - binom(2 * d + 2, 2);
}

/// Dimension of the degree-3 piece of the ideal of V_d.
inline std::size_t expected_veronese_cubics(int d) {
    int n = expected_N(d) + 1;
    return binom(n + 2, 3) - binom(3 * d + 2, 2);
}

/// Quadrics vanishing on the monomial Veronese embedding, coordinates ordered
/// like monomials_of_degree(3, d).
inline VeroneseIdeal standard_veronese(const Field& F, int d) {
    auto mons = monomials_of_degree(3, d);
    int n = static_cast<int>(mons.size());
    Ring amb = ambient_ring(F, n);
    auto quad = monomials_of_degree(n, 2);
    auto targets = monomials_of_degree(3, 2 * d);
    auto where = index_of(targets);
    Matrix m(F, targets.size(), quad.size());
    for (std::size_t c = 0; c < quad.size(); ++c) {
        Monomial prod;
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < quad[c].e[static_cast<std::size_t>(v)]; ++k) prod = prod * mons[static_cast<std::size_t>(v)];
        m(where.at(prod), c) = 1;
    }
    Matrix ker = m.nullspace().rref();
    VeroneseIdeal v;
    v.n_ambient = n;
    v.d = d;
    for (std::size_t k = 0; k < ker.rows(); ++k) v.quadrics.push_back(from_coefficients(amb, quad, ker.row(k)));
    return v;
}

/// The point nu(s) of the monomial Veronese embedding.
inline std::vector<Elem> veronese_point(const Field& F, int d, std::span<const Elem> s) {
    std::vector<Elem> out;
    for (auto& m : monomials_of_degree(3, d)) {
        Elem x = 1;
        for (int v = 0; v < 3; ++v) x = F.mul(x, F.pow(s[static_cast<std::size_t>(v)], m.e[static_cast<std::size_t>(v)]));
        out.push_back(x);
    }
    return out;
}

/// d = 3: the rows of the scalar matrices S_k in sum_k S_k x_k (the linear
/// syzygy matrix) span the coefficient vectors of the Veronese quadrics.
inline VeroneseIdeal veronese_from_syzygies(const QuadricSpace& qs, const LinearSyzygySpace& syz, const Field& F) {
    const int d = 3;
    std::size_t want_q = 28, want_syz = 105, want_m = expected_veronese_quadrics(d);
    if (qs.dim() != want_q || syz.dim() != want_syz || qs.n_ambient != expected_N(d) + 1)
        fail(ErrorKind::NotABranchingCurve, "quadric space dim " + std::to_string(qs.dim()) + " (want 28), linear syzygies " +
                                                std::to_string(syz.dim()) + " (want 105)");
    std::size_t n = static_cast<std::size_t>(qs.n_ambient), m = qs.dim();
    Matrix stacked(F, syz.dim() * n, m);
    for (std::size_t s = 0; s < syz.dim(); ++s)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < m; ++i) stacked(s * n + k, i) = syz.coeffs(s, i * n + k);
    Matrix rows = stacked.rref();
    if (rows.rows() != want_m)
        fail(ErrorKind::NotABranchingCurve, "syzygy row space has dim " + std::to_string(rows.rows()) + " (want " + std::to_string(want_m) + ")");
    VeroneseIdeal v;
    v.n_ambient = qs.n_ambient;
    v.d = d;
    Ring amb = qs.quadrics.front().ring();
    for (std::size_t r = 0; r < rows.rows(); ++r) {
        MPoly q(amb);
        for (std::size_t i = 0; i < m; ++i)
            if (rows(r, i)) q += qs.quadrics[i].scaled(rows(r, i));
        v.quadrics.push_back(q);
    }
    return v;
}

/// d >= 4: the Veronese ideal is generated by all quadrics through the curve.
inline VeroneseIdeal veronese_from_quadrics(const QuadricSpace& qs, int d) {
    if (d < 4) fail(ErrorKind::InvalidArgument, "quadric route needs d >= 4");
    std::size_t want = expected_veronese_quadrics(d);
    if (qs.dim() != want || qs.n_ambient != expected_N(d) + 1)
        fail(ErrorKind::NotABranchingCurve, "quadric space dim " + std::to_string(qs.dim()) + " (want " + std::to_string(want) + ")");
    VeroneseIdeal v;
    v.n_ambient = qs.n_ambient;
    v.d = d;
    v.quadrics = qs.quadrics;
    return v;
}

/// Jacobian matrix of the quadrics at x, one row per quadric.
inline Matrix quadric_jacobian(const VeroneseIdeal& v, std::span<const Elem> x) {
    const Field& F = v.quadrics.front().field();
    Matrix j(F, v.dim(), static_cast<std::size_t>(v.n_ambient));
    for (std::size_t r = 0; r < v.dim(); ++r)
        for (int k = 0; k < v.n_ambient; ++k) j(r, static_cast<std::size_t>(k)) = v.quadrics[r].derivative(k).evaluate(x);
    return j;
}

inline bool on_surface(const VeroneseIdeal& v, std::span<const Elem> x) {
    return std::all_of(v.quadrics.begin(), v.quadrics.end(), [&](const MPoly& q) { return q.evaluate(x) == 0; });
}

/// Dimension of the degree-2 and degree-3 pieces of the ideal generated by the quadrics.
inline std::pair<std::size_t, std::size_t> veronese_piece_dims(const VeroneseIdeal& v) {
    if (v.quadrics.empty()) return {0, 0};
    const Field& F = v.quadrics.front().field();
    int n = v.n_ambient;
    auto q2 = monomials_of_degree(n, 2);
    auto i2 = index_of(q2);
    Matrix m2(F, 0, q2.size());
    for (auto& q : v.quadrics) m2.append_row(coefficient_vector(q, q2, i2));
    auto q3 = monomials_of_degree(n, 3);
    auto i3 = index_of(q3);
    Matrix m3(F, 0, q3.size());
    for (auto& q : v.quadrics)
        for (int k = 0; k < n; ++k) m3.append_row(coefficient_vector(q.mul_term(Monomial::var(k), 1), q3, i3));
    return {m2.rank(), m3.rank()};
}

/// Degree-2 and degree-3 Hilbert-function checks, plus smoothness at the
/// given surface point (Jacobian rank N - 2).
inline bool verify_veronese(const VeroneseIdeal& v, std::span<const Elem> point) {
    if (v.d < 2 || v.n_ambient != expected_N(v.d) + 1) return false;
    auto [d2, d3] = veronese_piece_dims(v);
    if (d2 != expected_veronese_quadrics(v.d) || d3 != expected_veronese_cubics(v.d)) return false;
    if (!on_surface(v, point)) return false;
    return quadric_jacobian(v, point).rank() == static_cast<std::size_t>(v.n_ambient - 3);
}

}  // namespace planarmap

#pragma once

#include <set>
#include <vector>

#include "planarmap/veronese.hpp"

namespace planarmap {

struct SurfacePoint {
    std::vector<Elem> coords;
};

/// Intersection of V with a random codimension-2 linear space x = A u.
struct SliceResult {
    std::vector<SurfacePoint> points;  ///< rational points, normalized
    std::size_t total_degree = 0;
};

inline SliceResult random_slice(const VeroneseIdeal& v, Rng& rng, GbBudget budget = {}) {
    const Field& F = v.quadrics.front().field();
    int n = v.n_ambient;
    int m = n - 2;
    Ring ur(F, m);
    Matrix a = Matrix::random(F, static_cast<std::size_t>(n), static_cast<std::size_t>(m), rng);
    std::vector<MPoly> images;
    for (int i = 0; i < n; ++i) images.push_back(MPoly::linear(ur, a.row(static_cast<std::size_t>(i))));
    std::vector<MPoly> gens;
    for (auto& q : v.quadrics) gens.push_back(q.compose(images));
    ZeroDimSolution sol = solve_projective(Ideal(ur, gens), rng, budget);
    SliceResult out;
    out.total_degree = sol.total_degree;
    for (auto& u : sol.points) out.points.push_back({normalize_point(F, a.apply(u))});
    return out;
}

inline bool is_smooth_point(const VeroneseIdeal& v, std::span<const Elem> x) {
    return quadric_jacobian(v, x).rank() == static_cast<std::size_t>(v.n_ambient - 3);
}

struct PointSearchStats {
    std::size_t draws = 0;
    std::size_t rational_points = 0;
    std::size_t degree_sum = 0;
    std::size_t draws_with_point = 0;
};

/// Draws random slices until one yields a smooth rational point. Every
/// rational point seen is appended to `pool` when given.
inline SurfacePoint find_point(const VeroneseIdeal& v, Rng& rng, int max_tries, PointSearchStats* stats = nullptr,
                               std::vector<SurfacePoint>* pool = nullptr, GbBudget budget = {}) {
    for (int k = 0; k < max_tries; ++k) {
        SliceResult s = random_slice(v, rng, budget);
        if (stats) {
            ++stats->draws;
            stats->degree_sum += s.total_degree;
            stats->rational_points += s.points.size();
            if (!s.points.empty()) ++stats->draws_with_point;
        }
        std::optional<SurfacePoint> found;
        for (auto& p : s.points) {
            if (!on_surface(v, p.coords) || !is_smooth_point(v, p.coords)) continue;
            if (pool) pool->push_back(p);
            if (!found) found = p;
        }
        if (found) return *found;
    }
    fail(ErrorKind::PointSearchExhausted, "no rational surface point in " + std::to_string(max_tries) + " slices");
}

/// Truncated power series in local parameters s, t: coefficients of s^a t^b
/// for a + b <= order, ordered by total degree, then by decreasing a.
class Series2 {
public:
    explicit Series2(int order) : order_(order), c_(binom(order + 2, 2), 0) {}

    static std::size_t index(int a, int b) {
        int e = a + b;
        return binom(e + 1, 2) + static_cast<std::size_t>(e - a);
    }
    int order() const noexcept { return order_; }
    Elem& at(int a, int b) { return c_[index(a, b)]; }
    Elem at(int a, int b) const { return c_[index(a, b)]; }
    const std::vector<Elem>& coeffs() const noexcept { return c_; }
    std::vector<Elem>& coeffs() noexcept { return c_; }

    Series2 times(const Series2& o, const Field& F) const {
        Series2 r(order_);
        for (int e1 = 0; e1 <= order_; ++e1)
            for (int a1 = 0; a1 <= e1; ++a1) {
                Elem x = at(a1, e1 - a1);
                if (!x) continue;
                for (int e2 = 0; e1 + e2 <= order_; ++e2)
                    for (int a2 = 0; a2 <= e2; ++a2) {
                        Elem y = o.at(a2, e2 - a2);
                        if (!y) continue;
                        Elem& z = r.at(a1 + a2, e1 - a1 + e2 - a2);
                        z = F.add(z, F.mul(x, y));
                    }
            }
        return r;
    }

private:
    int order_;
    std::vector<Elem> c_;
};

/// Local jet of the surface at a point: in the affine chart x_chart = 1,
/// coordinates i1, i2 are y + s and y + t, the rest are power series in (s, t).
struct JetChart {
    Field field;
    SurfacePoint point;
    int chart = -1;
    int i1 = -1, i2 = -1;
    int order = 0;
    std::vector<Series2> series;
};

namespace detail {

// Q(X) truncated, for a quadric given by its terms.
inline Series2 eval_quadric(const MPoly& q, const std::vector<Series2>& x, const Field& F, int order) {
    Series2 out(order);
    for (auto& t : q.terms()) {
        int i = -1, j = -1;
        for (int v = 0; v < q.nvars(); ++v)
            for (int k = 0; k < t.m.e[static_cast<std::size_t>(v)]; ++k) (i < 0 ? i : j) = v;
        Series2 p = x[static_cast<std::size_t>(i)].times(x[static_cast<std::size_t>(j)], F);
        for (std::size_t k = 0; k < p.coeffs().size(); ++k) out.coeffs()[k] = F.add(out.coeffs()[k], F.mul(t.c, p.coeffs()[k]));
    }
    return out;
}

}  // namespace detail

inline JetChart jet_expand(const VeroneseIdeal& v, const SurfacePoint& y, int order) {
    const Field& F = v.quadrics.front().field();
    const int n = v.n_ambient;
    JetChart jc;
    jc.field = F;
    jc.order = order;
    jc.chart = -1;
    for (int i = n - 1; i >= 0; --i)
        if (y.coords[static_cast<std::size_t>(i)]) {
            jc.chart = i;
            break;
        }
    if (jc.chart < 0) fail(ErrorKind::InvalidArgument, "zero vector is not a point");
    std::vector<Elem> p = y.coords;
    Elem sc = F.inv(p[static_cast<std::size_t>(jc.chart)]);
    for (auto& c : p) c = F.mul(c, sc);
    jc.point = {p};
    if (!on_surface(v, p)) fail(ErrorKind::InvalidArgument, "point is not on the surface");
    Matrix jac = quadric_jacobian(v, p);
    if (jac.rank() != static_cast<std::size_t>(n - 3)) fail(ErrorKind::SingularPoint, "quadric Jacobian rank is not N - 2");
    Matrix tangent = jac.nullspace();  // 3 x n, contains p
    std::size_t c = static_cast<std::size_t>(jc.chart);
    for (int a = 0; a < n && jc.i1 < 0; ++a)
        for (int b = a + 1; b < n && jc.i1 < 0; ++b) {
            if (a == jc.chart || b == jc.chart) continue;
            Matrix minor(F, 3, 3);
            for (std::size_t r = 0; r < 3; ++r) {
                minor(r, 0) = tangent(r, c);
                minor(r, 1) = tangent(r, static_cast<std::size_t>(a));
                minor(r, 2) = tangent(r, static_cast<std::size_t>(b));
            }
            if (minor.determinant()) {
                jc.i1 = a;
                jc.i2 = b;
            }
        }
    if (jc.i1 < 0) fail(ErrorKind::SingularPoint, "no local parameters");

    std::vector<std::size_t> unknown;
    for (int k = 0; k < n; ++k)
        if (k != jc.chart && k != jc.i1 && k != jc.i2) unknown.push_back(static_cast<std::size_t>(k));
    // square invertible block of the Jacobian on the unknown columns
    Matrix ju(F, jac.rows(), unknown.size());
    for (std::size_t r = 0; r < jac.rows(); ++r)
        for (std::size_t k = 0; k < unknown.size(); ++k) ju(r, k) = jac(r, unknown[k]);
    Matrix jt = ju.transpose();
    auto rows = jt.rref_in_place();  // pivot columns of ju^T = independent rows of ju
    if (rows.size() != unknown.size()) fail(ErrorKind::SingularPoint, "local parameters are not transversal");
    Matrix sq(F, unknown.size(), unknown.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t k = 0; k < unknown.size(); ++k) sq(r, k) = ju(rows[r], k);
    Matrix sq_inv = sq.inverse();

    jc.series.assign(static_cast<std::size_t>(n), Series2(order));
    for (int k = 0; k < n; ++k) jc.series[static_cast<std::size_t>(k)].at(0, 0) = p[static_cast<std::size_t>(k)];
    if (order >= 1) {
        jc.series[static_cast<std::size_t>(jc.i1)].at(1, 0) = 1;
        jc.series[static_cast<std::size_t>(jc.i2)].at(0, 1) = 1;
    }
    for (int e = 1; e <= order; ++e) {
        std::vector<Series2> vals;
        for (auto& q : v.quadrics) vals.push_back(detail::eval_quadric(q, jc.series, F, order));
        for (int a = e; a >= 0; --a) {
            int b = e - a;
            std::vector<Elem> rhs(rows.size());
            for (std::size_t r = 0; r < rows.size(); ++r) rhs[r] = F.neg(vals[rows[r]].at(a, b));
            auto sol = sq_inv.apply(rhs);
            for (std::size_t k = 0; k < unknown.size(); ++k) jc.series[unknown[k]].at(a, b) = sol[k];
        }
    }
    for (auto& q : v.quadrics) {
        Series2 s = detail::eval_quadric(q, jc.series, F, order);
        if (std::any_of(s.coeffs().begin(), s.coeffs().end(), [](Elem x) { return x != 0; }))
            fail(ErrorKind::SingularPoint, "jet does not satisfy the quadrics");
    }
    return jc;
}

/// Linear forms vanishing to order at least k along the jet, as rows.
inline Matrix osculating_space(const JetChart& jc, int k) {
    if (k < 1 || k > jc.order) fail(ErrorKind::InvalidArgument, "osculation order out of range");
    const std::size_t n = jc.series.size();
    Matrix a(jc.field, binom(k + 1, 2), n);
    for (int e = 0; e < k; ++e)
        for (int s = e; s >= 0; --s) {
            std::size_t r = Series2::index(s, e - s);
            for (std::size_t i = 0; i < n; ++i) a(r, i) = jc.series[i].at(s, e - s);
        }
    return a.nullspace().rref();
}

/// J = (O_{y1,d} ∩ O_{y2,d-1}) + (O_{y1,d-1} ∩ O_{y2,d}) and the dimensions
/// along the way.
struct ProjectionSystem {
    Matrix forms{Field(), 0, 0};  ///< 3 rows when successful
    std::size_t osc1_d = 0, osc1_dm1 = 0, osc2_d = 0, osc2_dm1 = 0;
    std::size_t first = 0, second = 0, meet = 0;
};

inline ProjectionSystem projection_system(const VeroneseIdeal& v, const SurfacePoint& y1, const SurfacePoint& y2) {
    int d = v.d;
    JetChart j1 = jet_expand(v, y1, d), j2 = jet_expand(v, y2, d);
    Matrix a_d = osculating_space(j1, d), a_dm1 = osculating_space(j1, d - 1);
    Matrix b_d = osculating_space(j2, d), b_dm1 = osculating_space(j2, d - 1);
    Matrix s1 = intersect_row_spaces(a_d, b_dm1), s2 = intersect_row_spaces(a_dm1, b_d);
    Matrix jsum = sum_row_spaces(s1, s2);
    ProjectionSystem ps;
    ps.osc1_d = a_d.rows();
    ps.osc1_dm1 = a_dm1.rows();
    ps.osc2_d = b_d.rows();
    ps.osc2_dm1 = b_dm1.rows();
    ps.first = s1.rows();
    ps.second = s2.rows();
    ps.meet = s1.rows() && s2.rows() ? intersect_row_spaces(s1, s2).rows() : 0;
    ps.forms = jsum;
    if (jsum.rows() != 3) fail(ErrorKind::DegenerateConfiguration, "dim J = " + std::to_string(jsum.rows()));
    return ps;
}

/// Degree-d triple (F0, F1, F2) in the coordinates of pi with
/// F_i(pi v) v_j = F_j(pi v) v_i on every sample; the kernel must be a line.
inline PlanarMap interpolate_map(const Matrix& pi, const std::vector<SurfacePoint>& samples, int d) {
    const Field& F = pi.field();
    Ring r(F, 3);
    auto mons = monomials_of_degree(3, d);
    std::size_t m = mons.size();
    Matrix a(F, 0, 3 * m);
    std::set<std::vector<Elem>> seen;
    for (auto& s : samples) {
        auto q = pi.apply(s.coords);
        if (std::all_of(q.begin(), q.end(), [](Elem x) { return x == 0; })) continue;
        q = normalize_point(F, q);
        if (!seen.insert(q).second) continue;
        std::vector<Elem> mv(m);
        for (std::size_t k = 0; k < m; ++k) {
            Elem x = 1;
            for (int v = 0; v < 3; ++v) x = F.mul(x, F.pow(q[static_cast<std::size_t>(v)], mons[k].e[static_cast<std::size_t>(v)]));
            mv[k] = x;
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                std::vector<Elem> row(3 * m, 0);
                Elem vj = s.coords[static_cast<std::size_t>(j)], vi = s.coords[static_cast<std::size_t>(i)];
                for (std::size_t k = 0; k < m; ++k) {
                    row[static_cast<std::size_t>(i) * m + k] = F.mul(mv[k], vj);
                    row[static_cast<std::size_t>(j) * m + k] = F.neg(F.mul(mv[k], vi));
                }
                a.append_row(row);
            }
    }
    Matrix ker = a.nullspace();
    if (ker.rows() != 1) fail(ErrorKind::InterpolationDefect, "interpolation kernel has dim " + std::to_string(ker.rows()));
    auto row = ker.row(0);
    std::array<MPoly, 3> f{MPoly(r), MPoly(r), MPoly(r)};
    for (std::size_t i = 0; i < 3; ++i) f[i] = from_coefficients(r, mons, row.subspan(i * m, m));
    for (auto& x : f)
        if (x.is_zero()) fail(ErrorKind::InterpolationDefect, "interpolated component vanishes");
    return PlanarMap(f[0], f[1], f[2]);
}

/// Residual check of the cross-product conditions on held-out samples.
inline bool map_fits_samples(const PlanarMap& f, const Matrix& pi, const std::vector<SurfacePoint>& samples) {
    const Field& F = pi.field();
    for (auto& s : samples) {
        auto q = pi.apply(s.coords);
        auto val = f(q);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (F.sub(F.mul(val[static_cast<std::size_t>(i)], s.coords[static_cast<std::size_t>(j)]),
                          F.mul(val[static_cast<std::size_t>(j)], s.coords[static_cast<std::size_t>(i)])) != 0)
                    return false;
    }
    return true;
}

}  // namespace planarmap

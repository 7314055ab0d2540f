#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

#include "planarmap/groebner.hpp"
#include "planarmap/matrix.hpp"

namespace planarmap {

/// k[x]/I for a zero-dimensional I, with the standard monomials of a reduced
/// basis as vector-space basis (ascending in the basis order).
class QuotientRing {
public:
    explicit QuotientRing(GroebnerBasis gb) : gb_(std::move(gb)) {
        const Ring& r = gb_.ring();
        if (gb_.is_unit()) return;
        auto lms = gb_.leading_monomials();
        for (int v = 0; v < r.nvars; ++v) {
            bool pure = std::any_of(lms.begin(), lms.end(), [&](const Monomial& m) {
                return m.deg == m.e[static_cast<std::size_t>(v)] && m.deg > 0;
            });
            if (!pure) fail(ErrorKind::NotZeroDimensional, "no pure power of variable " + std::to_string(v) + " among leading terms");
        }
        auto standard = [&](const Monomial& m) {
            return std::none_of(lms.begin(), lms.end(), [&](const Monomial& l) { return divides(l, m); });
        };
        std::unordered_map<Monomial, char, MonomialHash> seen;
        std::deque<Monomial> queue{Monomial{}};
        seen[Monomial{}] = 1;
        while (!queue.empty()) {
            Monomial m = queue.front();
            queue.pop_front();
            basis_.push_back(m);
            for (int v = 0; v < r.nvars; ++v) {
                Monomial n = m * Monomial::var(v);
                if (seen.count(n) || !standard(n)) continue;
                seen[n] = 1;
                queue.push_back(n);
            }
        }
        std::sort(basis_.begin(), basis_.end(), [&](const Monomial& a, const Monomial& b) { return r.compare(a, b) < 0; });
        index_ = index_of(basis_);
    }

    const GroebnerBasis& basis_ideal() const noexcept { return gb_; }
    const Ring& ring() const noexcept { return gb_.ring(); }
    const Field& field() const noexcept { return gb_.ring().field; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Monomial>& basis() const noexcept { return basis_; }

    /// Coordinates of NF(f).
    std::vector<Elem> vec(const MPoly& f) const {
        std::vector<Elem> v(dim(), 0);
        MPoly nf = gb_.normal_form(f);
        for (auto& t : nf.terms()) v[index_.at(t.m)] = t.c;
        return v;
    }

    MPoly poly(std::span<const Elem> v) const { return from_coefficients(ring(), basis_, v); }

    /// Matrix of multiplication by x_v: column j holds the coordinates of x_v * b_j.
    const Matrix& mult(int v) const {
        if (mult_.empty()) mult_.resize(static_cast<std::size_t>(ring().nvars));
        auto& slot = mult_[static_cast<std::size_t>(v)];
        if (!slot) {
            Matrix m(field(), dim(), dim());
            for (std::size_t j = 0; j < dim(); ++j) {
                Monomial n = basis_[j] * Monomial::var(v);
                auto it = index_.find(n);
                if (it != index_.end()) {
                    m(it->second, j) = 1;
                    continue;
                }
                const auto& col = border(n);
                for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
            }
            slot = std::move(m);
        }
        return *slot;
    }

    /// Matrix of multiplication by an arbitrary element f.
    Matrix mult_by(const MPoly& f) const {
        // Horner over terms through the commuting variable matrices.
        const Field& F = field();
        Matrix acc(F, dim(), dim());
        for (auto& t : f.terms()) {
            Matrix term = Matrix::identity(F, dim());
            for (int v = 0; v < ring().nvars; ++v)
                for (int k = 0; k < t.m.e[static_cast<std::size_t>(v)]; ++k) term = mult(v) * term;
            for (std::size_t i = 0; i < dim(); ++i)
                for (std::size_t j = 0; j < dim(); ++j) acc(i, j) = F.add(acc(i, j), F.mul(t.c, term(i, j)));
        }
        return acc;
    }

    /// Multiplies the element with coordinates v by x_var without forming the
    /// dense matrix: most basis monomials map to basis monomials.
    std::vector<Elem> times_var(int var, std::span<const Elem> v) const {
        const Field& F = field();
        if (sparse_.empty()) sparse_.resize(static_cast<std::size_t>(ring().nvars));
        auto& cols = sparse_[static_cast<std::size_t>(var)];
        if (cols.empty() && dim() > 0) {
            for (std::size_t j = 0; j < dim(); ++j) {
                Monomial n = basis_[j] * Monomial::var(var);
                auto it = index_.find(n);
                if (it != index_.end())
                    cols.push_back({it->second, nullptr});
                else
                    cols.push_back({0, &border(n)});
            }
        }
        std::vector<Elem> out(dim(), 0);
        for (std::size_t j = 0; j < dim(); ++j) {
            Elem a = v[j];
            if (!a) continue;
            const auto& c = cols[j];
            if (!c.col) {
                out[c.unit] = F.add(out[c.unit], a);
                continue;
            }
            const auto& col = *c.col;
            for (std::size_t i = 0; i < dim(); ++i)
                if (col[i]) out[i] = F.add(out[i], F.mul(a, col[i]));
        }
        return out;
    }

private:
    const std::vector<Elem>& border(const Monomial& n) const {
        auto it = border_.find(n);
        if (it != border_.end()) return it->second;
        return border_.emplace(n, vec(MPoly::monomial(ring(), n, 1))).first->second;
    }

    GroebnerBasis gb_;
    std::vector<Monomial> basis_;
    std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
    mutable std::vector<std::optional<Matrix>> mult_;
    struct SparseCol {
        std::size_t unit;
        const std::vector<Elem>* col;
    };
    mutable std::unordered_map<Monomial, std::vector<Elem>, MonomialHash> border_;
    mutable std::vector<std::vector<SparseCol>> sparse_;
};

struct ZeroDimSolution {
    std::vector<std::vector<Elem>> points;
    std::size_t total_degree = 0;
};

namespace detail {

inline Matrix shifted(const Matrix& m, Elem lambda) {
    Matrix r = m;
    const Field& F = m.field();
    for (std::size_t i = 0; i < m.rows(); ++i) r(i, i) = F.sub(r(i, i), lambda);
    return r;
}

inline bool is_zero_matrix(const Matrix& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](Elem x) { return x == 0; });
}

// Matrix of the restriction of m to the invariant subspace spanned by the rows of w (RREF).
inline Matrix restrict_to(const Matrix& m, const Matrix& w, const std::vector<std::size_t>& piv) {
    std::size_t k = w.rows();
    Matrix a(m.field(), k, k);
    for (std::size_t c = 0; c < k; ++c) {
        auto image = m.apply(w.row(c));
        for (std::size_t r = 0; r < k; ++r) a(r, c) = image[piv[r]];
    }
    return a;
}

inline Matrix matrix_power(const Matrix& m, std::size_t e) {
    Matrix r = Matrix::identity(m.field(), m.rows());
    Matrix b = m;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

}  // namespace detail

/// Rational points of an affine zero-dimensional ideal. The characteristic
/// polynomial of a random linear form on the quotient ring gives candidate
/// values; each rational root's generalized eigenspace must be a single point,
/// else the form is redrawn.
inline ZeroDimSolution solve_zero_dim(const QuotientRing& q, Rng& rng, int max_shears = 8) {
    ZeroDimSolution sol;
    sol.total_degree = q.dim();
    if (q.dim() == 0) return sol;
    const Field& F = q.field();
    const int n = q.ring().nvars;
    std::vector<const Matrix*> mx;
    for (int v = 0; v < n; ++v) mx.push_back(&q.mult(v));

    for (int attempt = 0; attempt < max_shears; ++attempt) {
        std::vector<Elem> c(static_cast<std::size_t>(n));
        for (auto& x : c) x = F.random(rng);
        if (attempt == 0 && n == 1) c[0] = 1;
        Matrix ml(F, q.dim(), q.dim());
        for (int v = 0; v < n; ++v) {
            const Matrix& m = *mx[static_cast<std::size_t>(v)];
            for (std::size_t i = 0; i < q.dim(); ++i)
                for (std::size_t j = 0; j < q.dim(); ++j) ml(i, j) = F.add(ml(i, j), F.mul(c[static_cast<std::size_t>(v)], m(i, j)));
        }
        UniPoly chi = ml.charpoly();
        std::vector<std::vector<Elem>> pts;
        bool ok = true;
        for (Elem lambda : roots(chi)) {
            std::size_t mult = 0;
            UniPoly rest = chi;
            UniPoly lin(F, {F.neg(lambda), 1});
            while (rest.degree() > 0 && rest.eval(lambda) == 0) {
                rest = rest / lin;
                ++mult;
            }
            Matrix w = detail::matrix_power(detail::shifted(ml, lambda), mult).nullspace();
            auto piv = w.rref_in_place();
            if (w.rows() != mult) {
                ok = false;
                break;
            }
            std::vector<Elem> pt(static_cast<std::size_t>(n));
            for (int v = 0; v < n && ok; ++v) {
                Matrix a = detail::restrict_to(*mx[static_cast<std::size_t>(v)], w, piv);
                Elem tr = 0;
                for (std::size_t i = 0; i < mult; ++i) tr = F.add(tr, a(i, i));
                Elem cv = F.div(tr, F.from_int(static_cast<long long>(mult)));
                if (!detail::is_zero_matrix(detail::matrix_power(detail::shifted(a, cv), mult))) ok = false;
                pt[static_cast<std::size_t>(v)] = cv;
            }
            if (!ok) break;
            for (auto& g : q.basis_ideal().gens())
                if (g.evaluate(pt) != 0) ok = false;
            if (!ok) break;
            pts.push_back(std::move(pt));
        }
        if (ok) {
            std::sort(pts.begin(), pts.end());
            sol.points = std::move(pts);
            return sol;
        }
    }
    fail(ErrorKind::ShapeFailure, "random linear form failed to separate solutions after " + std::to_string(max_shears) + " tries");
}

inline ZeroDimSolution solve_zero_dim(const Ideal& ideal, Rng& rng, GbBudget budget = {}) {
    auto gb = buchberger(ideal, MonomialOrder::degrevlex(), budget);
    if (gb.is_unit()) return {};
    return solve_zero_dim(QuotientRing(std::move(gb)), rng);
}

/// True if a homogeneous ideal has no projective zeros: its basis contains a
/// pure power of every variable (or is the unit ideal).
inline bool projective_empty(const Ideal& ideal, GbBudget budget = {}) {
    auto gb = buchberger(ideal, MonomialOrder::degrevlex(), budget);
    if (gb.is_unit()) return true;
    auto lms = gb.leading_monomials();
    for (int v = 0; v < ideal.ring.nvars; ++v) {
        bool pure = std::any_of(lms.begin(), lms.end(),
                                [&](const Monomial& m) { return m.deg > 0 && m.deg == m.e[static_cast<std::size_t>(v)]; });
        if (!pure) return false;
    }
    return true;
}

/// Restricts a polynomial to the chart x_{n-1} = 1, in n-1 variables.
inline MPoly dehomogenize_last(const MPoly& f, const Ring& affine) {
    int n = f.nvars();
    MPoly s = f.specialize(n - 1, 1);
    std::vector<int> map(static_cast<std::size_t>(n), -1);
    for (int i = 0; i + 1 < n; ++i) map[static_cast<std::size_t>(i)] = i;
    return s.remap(affine, map);
}

/// Projective rational points of a homogeneous ideal with finitely many zeros.
/// A random change of coordinates puts no zero on the hyperplane x_{n-1} = 0;
/// points are normalized so that the last nonzero coordinate is 1.
inline ZeroDimSolution solve_projective(const Ideal& ideal, Rng& rng, GbBudget budget = {}, int max_charts = 8) {
    const Ring& r = ideal.ring;
    const Field& F = r.field;
    const int n = r.nvars;
    Ring affine(F, n - 1);
    for (int attempt = 0; attempt < max_charts; ++attempt) {
        Matrix t = Matrix::random(F, static_cast<std::size_t>(n), static_cast<std::size_t>(n), rng);
        if (t.determinant() == 0) continue;
        std::vector<MPoly> moved;
        for (auto& g : ideal.gens) moved.push_back(g.substitute_linear(t));
        auto at_infinity = moved;
        at_infinity.push_back(MPoly::variable(r, n - 1));
        if (!projective_empty(Ideal(r, at_infinity), budget)) continue;
        std::vector<MPoly> aff;
        for (auto& g : moved) aff.push_back(dehomogenize_last(g, affine));
        ZeroDimSolution local = solve_zero_dim(Ideal(affine, aff), rng, budget);
        ZeroDimSolution out;
        out.total_degree = local.total_degree;
        for (auto& p : local.points) {
            std::vector<Elem> xp(p);
            xp.push_back(1);
            auto x = t.apply(xp);
            std::size_t k = x.size();
            while (k > 0 && x[k - 1] == 0) --k;
            Elem s = F.inv(x[k - 1]);
            for (auto& c : x) c = F.mul(c, s);
            out.points.push_back(std::move(x));
        }
        std::sort(out.points.begin(), out.points.end());
        return out;
    }
    fail(ErrorKind::ChartFailure, "every random chart had zeros at infinity");
}

}  // namespace planarmap

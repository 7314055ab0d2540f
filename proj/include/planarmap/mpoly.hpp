#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "planarmap/field.hpp"
#include "planarmap/matrix.hpp"
#include "planarmap/monomial.hpp"

namespace planarmap {

/// Coefficient field, variable count and active monomial order.
struct Ring {
    Field field;
    int nvars = 0;
    MonomialOrder order = MonomialOrder::degrevlex();

    Ring(Field f, int n, MonomialOrder o = MonomialOrder::degrevlex()) : field(f), nvars(n), order(o) {
        if (n < 0 || n > kMaxVars) fail(ErrorKind::InvalidArgument, "variable count out of range: " + std::to_string(n));
    }
    Ring with_order(MonomialOrder o) const { return Ring(field, nvars, o); }
    int compare(const Monomial& a, const Monomial& b) const noexcept { return order.compare(a, b, nvars); }
    friend bool operator==(const Ring& a, const Ring& b) noexcept {
        return a.field == b.field && a.nvars == b.nvars && a.order == b.order;
    }
};

struct Term {
    Monomial m;
    Elem c;
};

/// Sparse multivariate polynomial; terms are kept strictly decreasing in the
/// ring's monomial order with nonzero coefficients.
class MPoly {
public:
    explicit MPoly(Ring r) : ring_(r) {}

    static MPoly constant(Ring r, Elem c) {
        MPoly p(r);
        if (c) p.t_.push_back({Monomial{}, c});
        return p;
    }
    static MPoly variable(Ring r, int i) {
        if (i < 0 || i >= r.nvars) fail(ErrorKind::InvalidArgument, "variable index out of range");
        MPoly p(r);
        p.t_.push_back({Monomial::var(i), 1});
        return p;
    }
    static MPoly monomial(Ring r, const Monomial& m, Elem c = 1) {
        MPoly p(r);
        if (c) p.t_.push_back({m, c});
        return p;
    }
    /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
    static MPoly from_terms(Ring r, std::vector<Term> terms) {
        MPoly p(r);
        std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return r.compare(a.m, b.m) > 0; });
        for (auto& t : terms) {
            if (!p.t_.empty() && p.t_.back().m == t.m)
                p.t_.back().c = r.field.add(p.t_.back().c, t.c);
            else
                p.t_.push_back(t);
            if (p.t_.back().c == 0) p.t_.pop_back();
        }
        return p;
    }
    /// Linear form sum coeffs[i] x_i.
    static MPoly linear(Ring r, std::span<const Elem> coeffs) {
        std::vector<Term> ts;
        for (int i = 0; i < r.nvars && i < static_cast<int>(coeffs.size()); ++i)
            if (coeffs[static_cast<std::size_t>(i)]) ts.push_back({Monomial::var(i), coeffs[static_cast<std::size_t>(i)]});
        return from_terms(r, std::move(ts));
    }

    const Ring& ring() const noexcept { return ring_; }
    const Field& field() const noexcept { return ring_.field; }
    int nvars() const noexcept { return ring_.nvars; }
    const std::vector<Term>& terms() const noexcept { return t_; }
    std::size_t size() const noexcept { return t_.size(); }
    bool is_zero() const noexcept { return t_.empty(); }
    const Term& lead() const { return t_.front(); }
    const Monomial& lead_monomial() const { return t_.front().m; }
    Elem lead_coeff() const { return t_.front().c; }

    /// Maximum total degree of a term, -1 for zero.
    int total_degree() const noexcept {
        int d = -1;
        for (auto& t : t_) d = std::max(d, static_cast<int>(t.m.deg));
        return d;
    }
    bool is_homogeneous() const noexcept {
        if (!homog_cache_) {
            bool h = true;
            for (auto& t : t_)
                if (t.m.deg != t_.front().m.deg) {
                    h = false;
                    break;
                }
            homog_cache_ = h;
        }
        return *homog_cache_;
    }
    bool is_constant() const noexcept { return t_.empty() || (t_.size() == 1 && t_[0].m.deg == 0); }

    Elem coeff(const Monomial& m) const noexcept {
        auto it = std::lower_bound(t_.begin(), t_.end(), m,
                                   [&](const Term& t, const Monomial& x) { return ring_.compare(t.m, x) > 0; });
        return (it != t_.end() && it->m == m) ? it->c : 0;
    }

    /// Same polynomial re-sorted under another order.
    MPoly with_order(MonomialOrder o) const {
        if (o == ring_.order) return *this;
        return from_terms(ring_.with_order(o), t_);
    }
    /// Reinterprets the polynomial in a ring with the same field and at least as
    /// many variables, mapping variable i to var_map[i].
    MPoly remap(Ring target, std::span<const int> var_map) const {
        std::vector<Term> ts;
        ts.reserve(t_.size());
        for (auto& t : t_) {
            Monomial m;
            for (int i = 0; i < nvars(); ++i) {
                if (!t.m.e[i]) continue;
                int j = var_map[static_cast<std::size_t>(i)];
                if (j < 0 || j >= target.nvars) fail(ErrorKind::InvalidArgument, "remap drops a used variable");
                m.e[j] = static_cast<std::uint16_t>(m.e[j] + t.m.e[i]);
            }
            m.deg = t.m.deg;
            ts.push_back({m, t.c});
        }
        return from_terms(target, std::move(ts));
    }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& t : r.t_) t.c = field().neg(t.c);
        return r;
    }
    MPoly scaled(Elem a) const {
        MPoly r(ring_);
        if (!a) return r;
        r.t_ = t_;
        for (auto& t : r.t_) t.c = field().mul(t.c, a);
        return r;
    }
    MPoly monic() const { return is_zero() ? *this : scaled(field().inv(lead_coeff())); }
    MPoly mul_term(const Monomial& m, Elem c) const {
        MPoly r(ring_);
        if (!c) return r;
        r.t_.reserve(t_.size());
        for (auto& t : t_) r.t_.push_back({t.m * m, field().mul(t.c, c)});
        return r;
    }

    /// this + c * m * g, by a single merge pass.
    MPoly axpy(Elem c, const Monomial& m, const MPoly& g) const {
        check_ring(g);
        MPoly r(ring_);
        if (!c) return *this;
        const Field& f = field();
        r.t_.reserve(t_.size() + g.t_.size());
        std::size_t i = 0, j = 0;
        while (i < t_.size() || j < g.t_.size()) {
            if (j == g.t_.size()) {
                r.t_.push_back(t_[i++]);
                continue;
            }
            Monomial gm = g.t_[j].m * m;
            int cmp = i == t_.size() ? -1 : ring_.compare(t_[i].m, gm);
            if (cmp > 0) {
                r.t_.push_back(t_[i++]);
            } else if (cmp < 0) {
                r.t_.push_back({gm, f.mul(c, g.t_[j++].c)});
            } else {
                Elem v = f.add(t_[i].c, f.mul(c, g.t_[j].c));
                if (v) r.t_.push_back({gm, v});
                ++i;
                ++j;
            }
        }
        return r;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) { return a.axpy(1, Monomial{}, b); }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a.axpy(a.field().neg(1), Monomial{}, b); }
    MPoly& operator+=(const MPoly& b) { return *this = *this + b; }
    MPoly& operator-=(const MPoly& b) { return *this = *this - b; }

    friend MPoly operator*(const MPoly& a, const MPoly& b) { return multiply(a, b); }
    MPoly& operator*=(const MPoly& b) { return *this = *this * b; }

    friend bool operator==(const MPoly& a, const MPoly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (std::size_t i = 0; i < a.t_.size(); ++i)
            if (!(a.t_[i].m == b.t_[i].m) || a.t_[i].c != b.t_[i].c) return false;
        return true;
    }

    MPoly pow(unsigned e) const {
        MPoly r = constant(ring_, 1), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    MPoly derivative(int v) const {
        std::vector<Term> ts;
        for (auto& t : t_) {
            auto k = t.m.e[static_cast<std::size_t>(v)];
            if (!k) continue;
            Elem c = field().mul(t.c, field().from_int(k));
            if (!c) continue;
            Monomial m = t.m;
            --m.e[static_cast<std::size_t>(v)];
            --m.deg;
            ts.push_back({m, c});
        }
        // Differentiation can reorder terms under non-degree orders.
        return from_terms(ring_, std::move(ts));
    }

    Elem evaluate(std::span<const Elem> point) const {
        if (static_cast<int>(point.size()) < nvars()) fail(ErrorKind::InvalidArgument, "evaluation point too short");
        const Field& f = field();
        // Power tables per variable.
        std::vector<std::vector<Elem>> pw(static_cast<std::size_t>(nvars()));
        std::uint64_t acc = 0;
        for (auto& t : t_) {
            Elem v = t.c;
            for (int i = 0; i < nvars() && v; ++i) {
                auto k = t.m.e[static_cast<std::size_t>(i)];
                if (!k) continue;
                auto& table = pw[static_cast<std::size_t>(i)];
                if (table.empty()) table.push_back(1);
                while (table.size() <= k) table.push_back(f.mul(table.back(), point[static_cast<std::size_t>(i)]));
                v = f.mul(v, table[k]);
            }
            acc += v;
            if (acc >= (1ull << 62)) acc = f.reduce(acc);
        }
        return f.reduce(acc);
    }

    /// Replaces variable v by the constant a.
    MPoly specialize(int v, Elem a) const {
        const Field& f = field();
        std::vector<Elem> table{1};
        std::vector<Term> ts;
        ts.reserve(t_.size());
        for (auto& t : t_) {
            auto k = t.m.e[static_cast<std::size_t>(v)];
            while (table.size() <= k) table.push_back(f.mul(table.back(), a));
            Elem c = f.mul(t.c, table[k]);
            if (!c) continue;
            Monomial m = t.m;
            m.e[static_cast<std::size_t>(v)] = 0;
            m.deg -= k;
            ts.push_back({m, c});
        }
        return from_terms(ring_, std::move(ts));
    }

    /// Homogenizes with respect to variable v, which must not occur.
    MPoly homogenize(int v) const {
        int d = total_degree();
        std::vector<Term> ts;
        ts.reserve(t_.size());
        for (auto& t : t_) {
            if (t.m.e[static_cast<std::size_t>(v)]) fail(ErrorKind::InvalidArgument, "homogenizing variable occurs");
            Monomial m = t.m;
            auto add = static_cast<std::uint16_t>(d - static_cast<int>(m.deg));
            m.e[static_cast<std::size_t>(v)] = add;
            m.deg += add;
            ts.push_back({m, t.c});
        }
        return from_terms(ring_, std::move(ts));
    }

    /// Polynomial composition x_i -> images[i]; the result lives in the images' ring.
    MPoly compose(const std::vector<MPoly>& images) const;

    /// Linear substitution x_i -> sum_j M(i, j) x_j. M must be invertible.
    MPoly substitute_linear(const Matrix& m) const {
        if (m.rows() != static_cast<std::size_t>(nvars()) || m.cols() != static_cast<std::size_t>(nvars()))
            fail(ErrorKind::InvalidArgument, "substitution matrix has wrong shape");
        if (m.determinant() == 0) fail(ErrorKind::SingularSubstitution, "substitution matrix is singular");
        std::vector<MPoly> images;
        for (int i = 0; i < nvars(); ++i) images.push_back(linear(ring_, m.row(static_cast<std::size_t>(i))));
        return compose(images);
    }

    /// All terms but the leading one.
    MPoly tail() const {
        MPoly r(ring_);
        if (!t_.empty()) r.t_.assign(t_.begin() + 1, t_.end());
        return r;
    }

    /// Homogeneous part of the given degree.
    MPoly homogeneous_part(int d) const {
        MPoly r(ring_);
        for (auto& t : t_)
            if (static_cast<int>(t.m.deg) == d) r.t_.push_back(t);
        return r;
    }

private:
    void check_ring(const MPoly& o) const {
        if (!(o.ring_ == ring_)) fail(ErrorKind::InvalidArgument, "polynomials live in different rings");
    }

    static MPoly multiply(const MPoly& a, const MPoly& b);

    Ring ring_;
    std::vector<Term> t_;
    mutable std::optional<bool> homog_cache_;

};

namespace detail {

// Product via pairwise merges of shifted copies; good when one factor is short.
inline MPoly multiply_by_merging(const MPoly& big, const MPoly& small) {
    MPoly acc(big.ring());
    for (auto& t : small.terms()) acc = acc.axpy(t.c, t.m, big);
    return acc;
}

}  // namespace detail

inline MPoly MPoly::multiply(const MPoly& a, const MPoly& b) {
    a.check_ring(b);
    if (a.is_zero() || b.is_zero()) return MPoly(a.ring_);
    const MPoly& big = a.size() >= b.size() ? a : b;
    const MPoly& small = a.size() >= b.size() ? b : a;
    if (small.size() <= 24) return detail::multiply_by_merging(big, small);

    const int n = a.nvars();
    const Field& f = a.field();
    // Dense accumulation over the exponent box when it is small enough. A
    // homogeneous product is determined by all but its last exponent.
    bool homog = a.is_homogeneous() && b.is_homogeneous();
    int idx_vars = homog && n > 0 ? n - 1 : n;
    std::vector<std::size_t> extent(static_cast<std::size_t>(n), 1), stride(static_cast<std::size_t>(n), 0);
    std::size_t box = 1;
    bool dense_ok = true;
    for (int i = 0; i < idx_vars; ++i) {
        std::size_t ma = 0, mb = 0;
        for (auto& t : a.t_) ma = std::max<std::size_t>(ma, t.m.e[i]);
        for (auto& t : b.t_) mb = std::max<std::size_t>(mb, t.m.e[i]);
        extent[static_cast<std::size_t>(i)] = ma + mb + 1;
        stride[static_cast<std::size_t>(i)] = box;
        box *= ma + mb + 1;
        if (box > (1u << 23)) {
            dense_ok = false;
            break;
        }
    }
    std::vector<Term> out;
    if (dense_ok) {
        std::vector<std::uint64_t> acc(box, 0);
        std::vector<std::uint32_t> touched;
        std::vector<char> seen(box, 0);
        std::vector<std::size_t> bidx(b.size());
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::size_t k = 0;
            for (int i = 0; i < idx_vars; ++i) k += b.t_[j].m.e[i] * stride[static_cast<std::size_t>(i)];
            bidx[j] = k;
        }
        for (auto& ta : a.t_) {
            std::size_t ka = 0;
            for (int i = 0; i < idx_vars; ++i) ka += ta.m.e[i] * stride[static_cast<std::size_t>(i)];
            std::uint64_t ca = ta.c;
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::size_t k = ka + bidx[j];
                if (!seen[k]) {
                    seen[k] = 1;
                    touched.push_back(static_cast<std::uint32_t>(k));
                }
                std::uint64_t v = acc[k] + ca * b.t_[j].c;
                acc[k] = v >= (1ull << 62) ? f.reduce(v) : v;
            }
        }
        std::uint32_t deg = a.t_.front().m.deg + b.t_.front().m.deg;
        out.reserve(touched.size());
        for (auto k : touched) {
            Elem c = f.reduce(acc[k]);
            if (!c) continue;
            Monomial m;
            std::size_t rest = k;
            std::uint32_t partial = 0;
            for (int i = 0; i < idx_vars; ++i) {
                m.e[i] = static_cast<std::uint16_t>(rest % extent[static_cast<std::size_t>(i)]);
                rest /= extent[static_cast<std::size_t>(i)];
                partial += m.e[i];
            }
            if (idx_vars < n) m.e[n - 1] = static_cast<std::uint16_t>(deg - partial);
            m.deg = idx_vars < n ? deg : partial;
            out.push_back({m, c});
        }
    } else {
        std::unordered_map<Monomial, std::uint64_t, MonomialHash> acc;
        for (auto& ta : a.t_)
            for (auto& tb : b.t_) {
                auto& v = acc[ta.m * tb.m];
                v = f.reduce(v + static_cast<std::uint64_t>(ta.c) * tb.c);
            }
        out.reserve(acc.size());
        for (auto& [m, v] : acc)
            if (v) out.push_back({m, static_cast<Elem>(v)});
    }
    std::sort(out.begin(), out.end(), [&](const Term& x, const Term& y) { return a.ring_.compare(x.m, y.m) > 0; });
    MPoly r(a.ring_);
    r.t_ = std::move(out);
    return r;
}

inline MPoly MPoly::compose(const std::vector<MPoly>& images) const {
    if (static_cast<int>(images.size()) < nvars()) fail(ErrorKind::InvalidArgument, "compose needs one image per variable");
    Ring target = images.empty() ? ring_ : images.front().ring();
    if (is_zero()) return MPoly(target);
    // Horner scheme, recursing on variables: f = sum_k x_v^k f_k(x_{v+1}, ...).
    struct Rec {
        const std::vector<MPoly>& img;
        Ring target;
        int n;
        MPoly run(std::vector<Term>& ts, int v) const {
            if (ts.empty()) return MPoly(target);
            if (v == n) {
                Elem c = 0;
                for (auto& t : ts) c = target.field.add(c, t.c);
                return MPoly::constant(target, c);
            }
            std::stable_sort(ts.begin(), ts.end(), [&](const Term& a, const Term& b) { return a.m.e[v] > b.m.e[v]; });
            MPoly acc(target);
            int cur = ts.front().m.e[v];
            std::size_t i = 0;
            while (true) {
                std::size_t j = i;
                std::vector<Term> group;
                while (j < ts.size() && ts[j].m.e[v] == cur) group.push_back(ts[j++]);
                if (!group.empty()) acc += run(group, v + 1);
                i = j;
                if (cur == 0) break;
                acc = acc * img[static_cast<std::size_t>(v)];
                --cur;
            }
            return acc;
        }
    };
    std::vector<Term> ts = t_;
    return Rec{images, target, nvars()}.run(ts, 0);
}

/// Multivariate division by a single divisor: f = q g + r with no term of r
/// divisible by LM(g).
inline std::pair<MPoly, MPoly> divide(const MPoly& f, const MPoly& g) {
    if (g.is_zero()) fail(ErrorKind::DivisionByZero, "division by the zero polynomial");
    const Field& F = f.field();
    Elem li = F.inv(g.lead_coeff());
    std::vector<Term> q, r;
    MPoly p = f;
    // Work on the remaining part term by term from the top.
    while (!p.is_zero()) {
        const Term lt = p.lead();
        if (divides(g.lead_monomial(), lt.m)) {
            Monomial m = quotient(lt.m, g.lead_monomial());
            Elem c = F.mul(lt.c, li);
            q.push_back({m, c});
            p = p.axpy(F.neg(c), m, g);
        } else {
            r.push_back(lt);
            p = p.tail();
        }
    }
    return {MPoly::from_terms(f.ring(), std::move(q)), MPoly::from_terms(f.ring(), std::move(r))};
}

/// q with q g = f; throws InexactDivision otherwise.
inline MPoly exact_divide(const MPoly& f, const MPoly& g) {
    if (g.is_zero()) fail(ErrorKind::DivisionByZero, "division by the zero polynomial");
    const Field& F = f.field();
    Elem li = F.inv(g.lead_coeff());
    std::vector<Term> q;
    MPoly p = f;
    while (!p.is_zero()) {
        const Term lt = p.lead();
        if (!divides(g.lead_monomial(), lt.m)) fail(ErrorKind::InexactDivision, "nonzero remainder");
        Monomial m = quotient(lt.m, g.lead_monomial());
        Elem c = F.mul(lt.c, li);
        q.push_back({m, c});
        p = p.axpy(F.neg(c), m, g);
    }
    return MPoly::from_terms(f.ring(), std::move(q));
}

inline bool divides_exactly(const MPoly& g, const MPoly& f) {
    try {
        (void)exact_divide(f, g);
        return true;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InexactDivision) return false;
        throw;
    }
}

/// Determinant of a small square matrix of polynomials (cofactor expansion).
inline MPoly determinant(const std::vector<std::vector<MPoly>>& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const Ring& r = m[0][0].ring();
    MPoly det(r);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<MPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<MPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        MPoly term = m[0][j] * determinant(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

/// Monomials of degree exactly d in n variables, listed in decreasing
/// DegRevLex order.
inline std::vector<Monomial> monomials_of_degree(int n, int d) {
    std::vector<Monomial> out;
    if (n == 0) {
        if (d == 0) out.push_back(Monomial{});
        return out;
    }
    Monomial m;
    std::function<void(int, int)> rec = [&](int v, int left) {
        if (v == n - 1) {
            m.e[v] = static_cast<std::uint16_t>(left);
            m.deg = static_cast<std::uint32_t>(d);
            out.push_back(m);
            return;
        }
        for (int k = left; k >= 0; --k) {
            m.e[v] = static_cast<std::uint16_t>(k);
            rec(v + 1, left - k);
        }
        m.e[v] = 0;
    };
    rec(0, d);
    MonomialOrder o = MonomialOrder::degrevlex();
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return o.compare(a, b, n) > 0; });
    return out;
}

/// Random homogeneous form of degree d with uniform coefficients.
template <class R>
MPoly random_form(Ring r, int d, R& rng) {
    std::vector<Term> ts;
    for (auto& m : monomials_of_degree(r.nvars, d)) ts.push_back({m, r.field.random(rng)});
    return MPoly::from_terms(r, std::move(ts));
}

/// Coefficient vector of a homogeneous form against a monomial list.
inline std::vector<Elem> coefficient_vector(const MPoly& f, const std::vector<Monomial>& basis,
                                            const std::unordered_map<Monomial, std::size_t, MonomialHash>& index) {
    std::vector<Elem> v(basis.size(), 0);
    for (auto& t : f.terms()) {
        auto it = index.find(t.m);
        if (it == index.end()) fail(ErrorKind::InvalidArgument, "term outside the monomial basis");
        v[it->second] = t.c;
    }
    return v;
}

inline std::unordered_map<Monomial, std::size_t, MonomialHash> index_of(const std::vector<Monomial>& basis) {
    std::unordered_map<Monomial, std::size_t, MonomialHash> idx;
    idx.reserve(basis.size() * 2);
    for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
    return idx;
}

inline std::vector<Elem> coefficient_vector(const MPoly& f, const std::vector<Monomial>& basis) {
    return coefficient_vector(f, basis, index_of(basis));
}

inline MPoly from_coefficients(const Ring& r, const std::vector<Monomial>& basis, std::span<const Elem> coeffs) {
    std::vector<Term> ts;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (coeffs[i]) ts.push_back({basis[i], coeffs[i]});
    return MPoly::from_terms(r, std::move(ts));
}

}  // namespace planarmap

#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "planarmap/field.hpp"

namespace planarmap {

/// Dense univariate polynomial over a prime field, lowest degree first.
/// The coefficient vector never carries trailing zeros.
class UniPoly {
public:
    explicit UniPoly(Field f) : field_(f) {}
    UniPoly(Field f, std::vector<Elem> coeffs) : field_(f), c_(std::move(coeffs)) { trim(); }

    static UniPoly constant(Field f, Elem a) { return UniPoly(f, {a}); }
    static UniPoly x(Field f) { return UniPoly(f, {0, 1}); }
    /// Monic polynomial with the given roots.
    static UniPoly from_roots(Field f, const std::vector<Elem>& roots) {
        UniPoly r = constant(f, 1);
        for (Elem a : roots) r = r * UniPoly(f, {f.neg(a), 1});
        return r;
    }

    const Field& field() const noexcept { return field_; }
    const std::vector<Elem>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    /// Degree, -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    Elem operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    Elem lead() const noexcept { return c_.empty() ? 0 : c_.back(); }

    Elem eval(Elem a) const noexcept {
        Elem r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = field_.add(field_.mul(r, a), c_[i]);
        return r;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        Elem li = field_.inv(lead());
        std::vector<Elem> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = field_.mul(c_[i], li);
        return UniPoly(field_, std::move(out));
    }

    UniPoly derivative() const {
        std::vector<Elem> out;
        for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(field_.mul(c_[i], field_.from_int(static_cast<long long>(i))));
        return UniPoly(field_, std::move(out));
    }

    UniPoly scaled(Elem a) const {
        std::vector<Elem> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = field_.mul(c_[i], a);
        return UniPoly(field_, std::move(out));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Elem> out(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.field_.add(a[i], b[i]);
        return UniPoly(a.field_, std::move(out));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<Elem> out(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.field_.sub(a[i], b[i]);
        return UniPoly(a.field_, std::move(out));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly(a.field_);
        const Field& f = a.field_;
        std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (!a.c_[i]) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                acc[i + j] += static_cast<std::uint64_t>(a.c_[i]) * b.c_[j];
                if (acc[i + j] >= (1ull << 62)) acc[i + j] = f.reduce(acc[i + j]);
            }
        }
        std::vector<Elem> out(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) out[i] = f.reduce(acc[i]);
        return UniPoly(f, std::move(out));
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    /// Euclidean division; returns (quotient, remainder).
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) fail(ErrorKind::DivisionByZero, "univariate division by zero");
        if (degree() < d.degree()) return {UniPoly(field_), *this};
        const Field& f = field_;
        std::vector<Elem> r = c_;
        std::vector<Elem> q(c_.size() - d.c_.size() + 1, 0);
        Elem li = f.inv(d.lead());
        std::size_t dd = d.c_.size() - 1;
        for (std::size_t i = r.size(); i-- > dd;) {
            if (!r[i]) continue;
            Elem c = f.mul(r[i], li);
            q[i - dd] = c;
            for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] = f.sub(r[i - dd + j], f.mul(c, d.c_[j]));
        }
        return {UniPoly(f, std::move(q)), UniPoly(f, std::move(r))};
    }
    UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }
    UniPoly operator/(const UniPoly& d) const { return divmod(d).first; }

    /// this^e mod m by repeated squaring.
    UniPoly powmod(std::uint64_t e, const UniPoly& m) const {
        UniPoly result = constant(field_, 1) % m;
        UniPoly base = *this % m;
        while (e) {
            if (e & 1) result = (result * base) % m;
            e >>= 1;
            if (e) base = (base * base) % m;
        }
        return result;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    Field field_;
    std::vector<Elem> c_;
};

/// Monic gcd (zero if both inputs are zero).
inline UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Squarefree part f / gcd(f, f'), monic. Requires deg f < p.
inline UniPoly squarefree_part(const UniPoly& f) {
    if (f.is_zero()) fail(ErrorKind::InvalidArgument, "squarefree part of zero");
    if (static_cast<std::uint64_t>(f.degree()) >= f.field().p())
        fail(ErrorKind::DegreeTooLarge, "degree " + std::to_string(f.degree()) + " >= characteristic");
    if (f.degree() <= 0) return UniPoly::constant(f.field(), 1);
    UniPoly g = gcd(f, f.derivative());
    return (f / g).monic();
}

namespace detail {

// Splits a squarefree product of distinct linear factors into its roots.
inline void split_linear(const UniPoly& f, std::vector<Elem>& out, std::uint64_t& shift) {
    const Field& F = f.field();
    if (f.degree() <= 0) return;
    if (f.degree() == 1) {
        UniPoly m = f.monic();
        out.push_back(F.neg(m[0]));
        return;
    }
    // Cantor-Zassenhaus with deterministic shifts: gcd(f, (x+a)^((p-1)/2) - 1).
    for (;;) {
        Elem a = static_cast<Elem>(shift++ % F.p());
        UniPoly base(F, {a, 1});
        UniPoly h = base.powmod((F.p() - 1) / 2, f) - UniPoly::constant(F, 1);
        UniPoly g = gcd(f, h);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            split_linear(g, out, shift);
            split_linear(f / g, out, shift);
            return;
        }
    }
}

}  // namespace detail

/// Roots of f in F_p, sorted ascending. Uses gcd(f, x^p - x) then equal-degree
/// splitting; tiny fields are scanned exhaustively.
inline std::vector<Elem> roots(const UniPoly& f) {
    if (f.is_zero()) fail(ErrorKind::InvalidArgument, "roots of the zero polynomial");
    const Field& F = f.field();
    std::vector<Elem> out;
    if (f.degree() <= 0) return out;
    if (F.p() <= 64) {
        for (Elem a = 0; a < F.p(); ++a)
            if (f.eval(a) == 0) out.push_back(a);
        return out;
    }
    UniPoly fm = f.monic();
    UniPoly xp = UniPoly::x(F).powmod(F.p(), fm);
    UniPoly g = gcd(fm, xp - UniPoly::x(F));
    std::uint64_t shift = 1;
    detail::split_linear(g, out, shift);
    std::sort(out.begin(), out.end());
    return out;
}

/// Resultant via the Euclidean algorithm.
inline Elem resultant(UniPoly a, UniPoly b) {
    const Field& F = a.field();
    if (a.is_zero() || b.is_zero()) return 0;
    Elem res = 1;
    while (b.degree() > 0) {
        int da = a.degree(), db = b.degree();
        UniPoly r = a % b;
        if (r.is_zero()) return 0;
        // res(a,b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
        if ((da & 1) && (db & 1)) res = F.neg(res);
        res = F.mul(res, F.pow(b.lead(), static_cast<std::uint64_t>(da - r.degree())));
        a = std::move(b);
        b = std::move(r);
    }
    // b is a nonzero constant
    return F.mul(res, F.pow(b.lead(), static_cast<std::uint64_t>(a.degree())));
}

/// Discriminant: (-1)^{n(n-1)/2} res(f, f') / lc(f).
inline Elem discriminant(const UniPoly& f) {
    const Field& F = f.field();
    int n = f.degree();
    Elem r = F.div(resultant(f, f.derivative()), f.lead());
    if ((n * (n - 1) / 2) & 1) r = F.neg(r);
    return r;
}

/// Newton interpolation through (xs[i], ys[i]); the xs must be distinct.
inline UniPoly interpolate(const Field& F, const std::vector<Elem>& xs, const std::vector<Elem>& ys) {
    std::size_t n = xs.size();
    std::vector<Elem> c(ys);
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i)
            c[i] = F.div(F.sub(c[i], c[i - 1]), F.sub(xs[i], xs[i - k]));
    UniPoly r(F);
    for (std::size_t i = n; i-- > 0;) r = r * UniPoly(F, {F.neg(xs[i]), 1}) + UniPoly::constant(F, c[i]);
    return r;
}

/// Multiplicity of a as a root of f (f nonzero).
inline int root_multiplicity(UniPoly f, Elem a) {
    const Field& F = f.field();
    UniPoly lin(F, {F.neg(a), 1});
    int m = 0;
    while (f.degree() > 0 && f.eval(a) == 0) {
        f = f / lin;
        ++m;
    }
    return m;
}

}  // namespace planarmap

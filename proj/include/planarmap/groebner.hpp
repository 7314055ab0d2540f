#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "planarmap/mpoly.hpp"

namespace planarmap {

/// Limits on a single Buchberger run. Exceeding either raises ResourceLimit.
struct GbBudget {
    std::size_t max_pairs = 2'000'000;
    int max_degree = 10'000;
};

struct Ideal {
    Ring ring;
    std::vector<MPoly> gens;

    Ideal(Ring r, std::vector<MPoly> g = {}) : ring(r), gens(std::move(g)) {
        for (auto& f : gens)
            if (!(f.ring() == ring)) f = f.with_order(ring.order);
        std::erase_if(gens, [](const MPoly& f) { return f.is_zero(); });
    }
};

namespace detail {

// Full reduction of f by the given divisors. Terms under reduction are stored
// ascending so the current lead term sits at the back.
inline MPoly reduce_by(const MPoly& f, const std::vector<const MPoly*>& divisors, int* sugar = nullptr,
                       const std::vector<int>* divisor_sugar = nullptr) {
    const Ring& ring = f.ring();
    const Field& F = ring.field;
    std::vector<Term> w(f.terms().rbegin(), f.terms().rend());
    std::vector<Term> scratch, rem;
    while (!w.empty()) {
        const Term lt = w.back();
        const MPoly* g = nullptr;
        std::size_t gi = 0;
        for (std::size_t k = 0; k < divisors.size(); ++k)
            if (divides(divisors[k]->lead_monomial(), lt.m)) {
                g = divisors[k];
                gi = k;
                break;
            }
        w.pop_back();
        if (!g) {
            rem.push_back(lt);
            continue;
        }
        Monomial m = quotient(lt.m, g->lead_monomial());
        Elem c = F.neg(F.div(lt.c, g->lead_coeff()));
        if (sugar && divisor_sugar) *sugar = std::max(*sugar, static_cast<int>(m.deg) + (*divisor_sugar)[gi]);
        // merge w (ascending) with c*m*tail(g), walking g from its smallest term
        const auto& gt = g->terms();
        scratch.clear();
        scratch.reserve(w.size() + gt.size());
        std::size_t i = 0;
        std::size_t j = gt.size();
        while (i < w.size() || j > 1) {
            if (j == 1) {
                scratch.push_back(w[i++]);
                continue;
            }
            Monomial gm = gt[j - 1].m * m;
            int cmp = i == w.size() ? 1 : ring.compare(w[i].m, gm);
            if (cmp < 0) {
                scratch.push_back(w[i++]);
            } else if (cmp > 0) {
                scratch.push_back({gm, F.mul(c, gt[j - 1].c)});
                --j;
            } else {
                Elem v = F.add(w[i].c, F.mul(c, gt[j - 1].c));
                if (v) scratch.push_back({gm, v});
                ++i;
                --j;
            }
        }
        w.swap(scratch);
    }
    MPoly out(ring);
    if (rem.empty()) return out;
    return MPoly::from_terms(ring, std::move(rem));
}

}  // namespace detail

/// Gröbner basis of an ideal under the ring's monomial order.
class GroebnerBasis {
public:
    GroebnerBasis(Ring r, std::vector<MPoly> gens, bool reduced) : ring_(r), gens_(std::move(gens)), reduced_(reduced) {
        for (auto& g : gens_) ptrs_.push_back(&g);
    }
    GroebnerBasis(const GroebnerBasis& o) : GroebnerBasis(o.ring_, o.gens_, o.reduced_) {}
    GroebnerBasis& operator=(const GroebnerBasis& o) {
        if (this != &o) {
            ring_ = o.ring_;
            gens_ = o.gens_;
            reduced_ = o.reduced_;
            ptrs_.clear();
            for (auto& g : gens_) ptrs_.push_back(&g);
        }
        return *this;
    }
    GroebnerBasis(GroebnerBasis&& o) noexcept : GroebnerBasis(o.ring_, std::move(o.gens_), o.reduced_) {}
    GroebnerBasis& operator=(GroebnerBasis&& o) noexcept {
        ring_ = o.ring_;
        gens_ = std::move(o.gens_);
        reduced_ = o.reduced_;
        ptrs_.clear();
        for (auto& g : gens_) ptrs_.push_back(&g);
        return *this;
    }

    const Ring& ring() const noexcept { return ring_; }
    const std::vector<MPoly>& gens() const noexcept { return gens_; }
    bool reduced() const noexcept { return reduced_; }
    std::size_t size() const noexcept { return gens_.size(); }
    bool is_unit() const noexcept { return gens_.size() == 1 && gens_[0].is_constant() && !gens_[0].is_zero(); }

    MPoly normal_form(const MPoly& f) const {
        if (!(f.ring() == ring_)) return detail::reduce_by(f.with_order(ring_.order), ptrs_);
        return detail::reduce_by(f, ptrs_);
    }
    bool contains(const MPoly& f) const { return normal_form(f).is_zero(); }

    std::vector<Monomial> leading_monomials() const {
        std::vector<Monomial> out;
        for (auto& g : gens_) out.push_back(g.lead_monomial());
        return out;
    }

    Ideal ideal() const { return Ideal(ring_, gens_); }

private:
    Ring ring_;
    std::vector<MPoly> gens_;
    bool reduced_;
    std::vector<const MPoly*> ptrs_;
};

inline MPoly normal_form(const MPoly& f, const GroebnerBasis& gb) { return gb.normal_form(f); }

inline MPoly s_polynomial(const MPoly& f, const MPoly& g) {
    const Field& F = f.field();
    Monomial l = lcm(f.lead_monomial(), g.lead_monomial());
    MPoly a = f.mul_term(quotient(l, f.lead_monomial()), F.inv(f.lead_coeff()));
    return a.axpy(F.neg(F.inv(g.lead_coeff())), quotient(l, g.lead_monomial()), g);
}

namespace detail {

class Buchberger {
public:
    Buchberger(Ring r, GbBudget budget) : ring_(r), budget_(budget) {}

    GroebnerBasis run(const std::vector<MPoly>& input) {
        for (auto& f0 : input) {
            MPoly f = f0.ring() == ring_ ? f0 : f0.with_order(ring_.order);
            if (f.is_zero()) continue;
            int s = f.total_degree();
            MPoly h = reduce_active(f, &s);
            if (h.is_zero()) continue;
            insert(h.monic(), s);
            if (store_[static_cast<std::size_t>(basis_.back())].f.is_constant()) return unit();
        }
        std::size_t processed = 0;
        while (!pairs_.empty()) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < pairs_.size(); ++k)
                if (pair_less(pairs_[k], pairs_[best])) best = k;
            Pair pr = pairs_[best];
            pairs_[best] = pairs_.back();
            pairs_.pop_back();
            if (++processed > budget_.max_pairs)
                fail(ErrorKind::ResourceLimit, "Gröbner pair budget exceeded (" + std::to_string(budget_.max_pairs) + ")");
            if (pr.sugar > budget_.max_degree)
                fail(ErrorKind::ResourceLimit, "Gröbner degree budget exceeded (" + std::to_string(budget_.max_degree) + ")");
            const auto& fi = store_[static_cast<std::size_t>(pr.i)];
            const auto& fj = store_[static_cast<std::size_t>(pr.j)];
            MPoly s = s_polynomial(fi.f, fj.f);
            int sug = pr.sugar;
            MPoly h = reduce_active(s, &sug);
            if (h.is_zero()) continue;
            insert(h.monic(), sug);
            if (store_[static_cast<std::size_t>(basis_.back())].f.is_constant()) return unit();
        }
        return finish();
    }

private:
    struct Entry {
        MPoly f;
        int sugar;
    };
    struct Pair {
        int i, j;
        Monomial lcm;
        int sugar;
    };

    bool pair_less(const Pair& a, const Pair& b) const {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        int c = ring_.compare(a.lcm, b.lcm);
        if (c) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }

    const Monomial& lm(int k) const { return store_[static_cast<std::size_t>(k)].f.lead_monomial(); }

    MPoly reduce_active(const MPoly& f, int* sugar) {
        std::vector<const MPoly*> div;
        std::vector<int> sug;
        for (int k : basis_) {
            div.push_back(&store_[static_cast<std::size_t>(k)].f);
            sug.push_back(store_[static_cast<std::size_t>(k)].sugar);
        }
        return reduce_by(f, div, sugar, &sug);
    }

    Pair make_pair(int i, int h, int sugar_h) const {
        Monomial l = lcm(lm(i), lm(h));
        int si = store_[static_cast<std::size_t>(i)].sugar + static_cast<int>(l.deg - lm(i).deg);
        int sh = sugar_h + static_cast<int>(l.deg - lm(h).deg);
        return {i, h, l, std::max(si, sh)};
    }

    // Gebauer-Möller update with the new element h.
    void insert(MPoly f, int sugar) {
        int h = static_cast<int>(store_.size());
        store_.push_back({std::move(f), sugar});
        const Monomial& lh = lm(h);

        std::vector<Pair> c;
        for (int g : basis_) c.push_back(make_pair(g, h, sugar));
        std::vector<Pair> d;
        for (std::size_t a = 0; a < c.size(); ++a) {
            const Pair& p = c[a];
            bool keep = coprime(lm(p.i), lh);
            if (!keep) {
                keep = true;
                for (std::size_t b = a + 1; b < c.size() && keep; ++b)
                    if (divides(c[b].lcm, p.lcm)) keep = false;
                for (std::size_t b = 0; b < d.size() && keep; ++b)
                    if (divides(d[b].lcm, p.lcm)) keep = false;
            }
            if (keep) d.push_back(p);
        }
        std::vector<Pair> e;
        for (auto& p : d)
            if (!coprime(lm(p.i), lh)) e.push_back(p);

        std::vector<Pair> kept;
        for (auto& p : pairs_) {
            bool drop = divides(lh, p.lcm) && !(lcm(lm(p.i), lh) == p.lcm) && !(lcm(lm(p.j), lh) == p.lcm);
            if (!drop) kept.push_back(p);
        }
        for (auto& p : e) kept.push_back(p);
        pairs_.swap(kept);

        std::vector<int> nb;
        for (int g : basis_)
            if (!divides(lh, lm(g))) nb.push_back(g);
        nb.push_back(h);
        basis_.swap(nb);
    }

    GroebnerBasis unit() const { return GroebnerBasis(ring_, {MPoly::constant(ring_, 1)}, true); }

    GroebnerBasis finish() const {
        // basis_ is already minimal; interreduce tails.
        std::vector<MPoly> g;
        for (int k : basis_) g.push_back(store_[static_cast<std::size_t>(k)].f);
        std::sort(g.begin(), g.end(),
                  [&](const MPoly& a, const MPoly& b) { return ring_.compare(a.lead_monomial(), b.lead_monomial()) < 0; });
        for (std::size_t i = 0; i < g.size(); ++i) {
            std::vector<const MPoly*> others;
            for (std::size_t j = 0; j < g.size(); ++j)
                if (j != i) others.push_back(&g[j]);
            MPoly tail = reduce_by(g[i].tail(), others);
            g[i] = MPoly::monomial(ring_, g[i].lead_monomial(), 1) + tail;
        }
        return GroebnerBasis(ring_, std::move(g), true);
    }

    Ring ring_;
    GbBudget budget_;
    std::vector<Entry> store_;
    std::vector<int> basis_;
    std::vector<Pair> pairs_;
};

}  // namespace detail

/// Reduced Gröbner basis under `order`, Buchberger with Gebauer-Möller pair
/// elimination and sugar selection.
inline GroebnerBasis buchberger(const Ideal& ideal, MonomialOrder order, GbBudget budget = {}) {
    Ring r = ideal.ring.with_order(order);
    if (ideal.gens.empty()) return GroebnerBasis(r, {}, true);
    return detail::Buchberger(r, budget).run(ideal.gens);
}

inline GroebnerBasis buchberger(const Ideal& ideal, GbBudget budget = {}) {
    return buchberger(ideal, ideal.ring.order, budget);
}

/// Checks Buchberger's criterion: every S-polynomial reduces to zero.
inline bool is_groebner(const GroebnerBasis& gb) {
    const auto& g = gb.gens();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (coprime(g[i].lead_monomial(), g[j].lead_monomial())) continue;
            if (!gb.normal_form(s_polynomial(g[i], g[j])).is_zero()) return false;
        }
    return true;
}

/// Stricter check: all pairs including coprime ones.
inline bool all_s_polynomials_reduce(const GroebnerBasis& gb) {
    const auto& g = gb.gens();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (!gb.normal_form(s_polynomial(g[i], g[j])).is_zero()) return false;
    return true;
}

/// Generators of I ∩ k[x_k, ..., x_{n-1}], in the input ring.
inline Ideal eliminate(const Ideal& ideal, int k, GbBudget budget = {}) {
    if (k == 0) {
        auto gb = buchberger(ideal, budget);
        return Ideal(ideal.ring, gb.gens());
    }
    auto gb = buchberger(ideal, MonomialOrder::block_order(k), budget);
    std::vector<MPoly> keep;
    for (auto& g : gb.gens()) {
        bool free = true;
        for (auto& t : g.terms()) {
            for (int v = 0; v < k && free; ++v)
                if (t.m.e[static_cast<std::size_t>(v)]) free = false;
            if (!free) break;
        }
        if (free) keep.push_back(g.with_order(ideal.ring.order));
    }
    return Ideal(ideal.ring, std::move(keep));
}

namespace detail {

// Ring with one extra leading variable; old variable i becomes i+1.
inline std::pair<Ring, std::vector<int>> with_leading_variable(const Ring& r) {
    Ring big(r.field, r.nvars + 1, MonomialOrder::degrevlex());
    std::vector<int> map(static_cast<std::size_t>(r.nvars));
    for (int i = 0; i < r.nvars; ++i) map[static_cast<std::size_t>(i)] = i + 1;
    return {big, map};
}

inline MPoly drop_leading_variable(const MPoly& f, const Ring& small) {
    std::vector<int> map(static_cast<std::size_t>(f.nvars()), -1);
    for (int i = 1; i < f.nvars(); ++i) map[static_cast<std::size_t>(i)] = i - 1;
    return f.remap(small, map);
}

inline bool is_last_variable(const MPoly& f) {
    int n = f.nvars();
    return f.size() == 1 && f.lead_coeff() == 1 && f.lead_monomial().deg == 1 && f.lead_monomial().e[static_cast<std::size_t>(n - 1)] == 1;
}

}  // namespace detail

/// I : f^∞. Uses ⟨I, t f - 1⟩ elimination; when f is the last variable, the
/// ring order is DegRevLex and I is homogeneous, divides it out of the basis.
inline Ideal saturate(const Ideal& ideal, const MPoly& f, GbBudget budget = {}) {
    if (f.is_zero()) fail(ErrorKind::InvalidArgument, "saturation by zero");
    const Ring& r = ideal.ring;
    bool homogeneous = std::all_of(ideal.gens.begin(), ideal.gens.end(), [](const MPoly& g) { return g.is_homogeneous(); });
    if (r.order.kind == MonomialOrder::Kind::DegRevLex && detail::is_last_variable(f) && homogeneous) {
        auto gb = buchberger(ideal, budget);
        std::vector<MPoly> out;
        int v = r.nvars - 1;
        for (auto& g : gb.gens()) {
            std::uint16_t k = std::numeric_limits<std::uint16_t>::max();
            for (auto& t : g.terms()) k = std::min(k, t.m.e[static_cast<std::size_t>(v)]);
            out.push_back(exact_divide(g, MPoly::monomial(r, Monomial::var(v, k), 1)));
        }
        auto gb2 = buchberger(Ideal(r, out), budget);
        return Ideal(r, gb2.gens());
    }
    auto [big, map] = detail::with_leading_variable(r);
    std::vector<MPoly> gens;
    for (auto& g : ideal.gens) gens.push_back(g.remap(big, map));
    MPoly fb = f.remap(big, map);
    gens.push_back(MPoly::variable(big, 0) * fb - MPoly::constant(big, 1));
    Ideal el = eliminate(Ideal(big, gens), 1, budget);
    std::vector<MPoly> out;
    for (auto& g : el.gens) out.push_back(detail::drop_leading_variable(g, r));
    return Ideal(r, out);
}

/// I ∩ J via t I + (1 - t) J.
inline Ideal intersect(const Ideal& a, const Ideal& b, GbBudget budget = {}) {
    const Ring& r = a.ring;
    auto [big, map] = detail::with_leading_variable(r);
    MPoly t = MPoly::variable(big, 0);
    MPoly one_minus_t = MPoly::constant(big, 1) - t;
    std::vector<MPoly> gens;
    for (auto& g : a.gens) gens.push_back(t * g.remap(big, map));
    for (auto& g : b.gens) gens.push_back(one_minus_t * g.remap(big, map));
    Ideal el = eliminate(Ideal(big, gens), 1, budget);
    std::vector<MPoly> out;
    for (auto& g : el.gens) out.push_back(detail::drop_leading_variable(g, r));
    return Ideal(r, out);
}

/// I : J = ∩_k (I : h_k), with I : h = (I ∩ ⟨h⟩) / h.
inline Ideal ideal_quotient(const Ideal& i, const Ideal& j, GbBudget budget = {}) {
    const Ring& r = i.ring;
    std::vector<Ideal> parts;
    for (auto& h : j.gens) {
        if (h.is_constant()) {
            parts.push_back(Ideal(r, buchberger(i, budget).gens()));
            continue;
        }
        Ideal inter = intersect(i, Ideal(r, {h}), budget);
        std::vector<MPoly> q;
        for (auto& g : inter.gens) q.push_back(exact_divide(g, h));
        parts.push_back(Ideal(r, q));
    }
    if (parts.empty()) return Ideal(r, {MPoly::constant(r, 1)});
    Ideal acc = parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k) acc = intersect(acc, parts[k], budget);
    return Ideal(r, buchberger(acc, budget).gens());
}

/// True if the two ideals have the same reduced Gröbner basis.
inline bool same_ideal(const Ideal& a, const Ideal& b, GbBudget budget = {}) {
    auto ga = buchberger(a, MonomialOrder::degrevlex(), budget);
    auto gb = buchberger(b, MonomialOrder::degrevlex(), budget);
    if (ga.size() != gb.size()) return false;
    for (std::size_t k = 0; k < ga.size(); ++k)
        if (!(ga.gens()[k] == gb.gens()[k])) return false;
    return true;
}

}  // namespace planarmap

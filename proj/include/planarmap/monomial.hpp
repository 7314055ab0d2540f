#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "planarmap/error.hpp"

namespace planarmap {

constexpr int kMaxVars = 16;

/// Exponent vector with cached total degree. Entries past the ring's variable
/// count are always zero, so equality and hashing ignore the ring.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};
    std::uint32_t deg = 0;

    static Monomial var(int i, std::uint16_t power = 1) {
        Monomial m;
        m.e[static_cast<std::size_t>(i)] = power;
        m.deg = power;
        return m;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept { return a.deg == b.deg && a.e == b.e; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) noexcept {
        Monomial m;
        for (int i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
        m.deg = a.deg + b.deg;
        return m;
    }

    /// a | b
    friend bool divides(const Monomial& a, const Monomial& b) noexcept {
        if (a.deg > b.deg) return false;
        for (int i = 0; i < kMaxVars; ++i)
            if (a.e[i] > b.e[i]) return false;
        return true;
    }

    /// b / a, requires a | b.
    friend Monomial quotient(const Monomial& b, const Monomial& a) noexcept {
        Monomial m;
        for (int i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint16_t>(b.e[i] - a.e[i]);
        m.deg = b.deg - a.deg;
        return m;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) noexcept {
        Monomial m;
        for (int i = 0; i < kMaxVars; ++i) {
            m.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
            m.deg += m.e[i];
        }
        return m;
    }

    friend bool coprime(const Monomial& a, const Monomial& b) noexcept {
        for (int i = 0; i < kMaxVars; ++i)
            if (a.e[i] && b.e[i]) return false;
        return true;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : m.e) h = (h ^ x) * 1099511628211ull;
        return static_cast<std::size_t>(h);
    }
};

/// DegRevLex, Lex, or Block(k): the first k variables form a DegRevLex block
/// that dominates a DegRevLex block on the remaining ones.
struct MonomialOrder {
    enum class Kind { DegRevLex, Lex, Block };
    Kind kind = Kind::DegRevLex;
    int block = 0;

    static MonomialOrder degrevlex() { return {Kind::DegRevLex, 0}; }
    static MonomialOrder lex() { return {Kind::Lex, 0}; }
    static MonomialOrder block_order(int k) { return {Kind::Block, k}; }

    /// True if the order refines total degree, so reductions never raise degree.
    bool degree_compatible() const noexcept { return kind == Kind::DegRevLex; }

    friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) noexcept {
        return a.kind == b.kind && (a.kind != Kind::Block || a.block == b.block);
    }

    /// Three-way comparison: positive if a > b.
    int compare(const Monomial& a, const Monomial& b, int nvars) const noexcept {
        switch (kind) {
            case Kind::DegRevLex: return grevlex(a, b, 0, nvars, a.deg, b.deg);
            case Kind::Lex:
                for (int i = 0; i < nvars; ++i)
                    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
                return 0;
            case Kind::Block: {
                std::uint32_t da = 0, db = 0;
                for (int i = 0; i < block; ++i) {
                    da += a.e[i];
                    db += b.e[i];
                }
                if (int c = grevlex(a, b, 0, block, da, db)) return c;
                return grevlex(a, b, block, nvars, a.deg - da, b.deg - db);
            }
        }
        return 0;
    }

private:
    static int grevlex(const Monomial& a, const Monomial& b, int lo, int hi, std::uint32_t da,
                       std::uint32_t db) noexcept {
        if (da != db) return da > db ? 1 : -1;
        for (int i = hi - 1; i >= lo; --i)
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        return 0;
    }
};

}  // namespace planarmap

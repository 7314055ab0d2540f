#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "planarmap/error.hpp"

namespace planarmap {

using Elem = std::uint32_t;

/// Prime field Z/p with word-sized residues. p must be an odd prime >= 5 and
/// below 2^31 so that sums of two residues never overflow 32 bits.
class Field {
public:
    static constexpr std::uint32_t kDefaultPrime = 32003;

    explicit Field(std::uint32_t p = kDefaultPrime) : p_(p) {
        if (p < 5 || p >= (1u << 31) || !is_prime(p))
            fail(ErrorKind::InvalidArgument, "field modulus must be a prime in [5, 2^31): " + std::to_string(p));
        // floor(2^64 / p), used by Barrett reduction of 64-bit products.
        barrett_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / p);
    }

    std::uint32_t p() const noexcept { return p_; }

    Elem reduce(std::uint64_t x) const noexcept {
        std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
        std::uint64_t r = x - q * p_;
        return static_cast<Elem>(r >= p_ ? r - p_ : r);
    }

    Elem from_int(long long v) const noexcept {
        long long r = v % static_cast<long long>(p_);
        return static_cast<Elem>(r < 0 ? r + p_ : r);
    }

    /// Symmetric representative in (-p/2, p/2], used for printing.
    long long to_signed(Elem a) const noexcept {
        return a > p_ / 2 ? static_cast<long long>(a) - p_ : static_cast<long long>(a);
    }

    Elem add(Elem a, Elem b) const noexcept {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const noexcept { return reduce(static_cast<std::uint64_t>(a) * b); }

    Elem pow(Elem a, std::uint64_t e) const noexcept {
        Elem r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    Elem inv(Elem a) const {
        if (a % p_ == 0) fail(ErrorKind::DivisionByZero, "inverse of zero");
        // extended Euclid
        long long t = 0, nt = 1, r = p_, nr = a;
        while (nr) {
            long long q = r / nr;
            t -= q * nt;
            std::swap(t, nt);
            r -= q * nr;
            std::swap(r, nr);
        }
        return static_cast<Elem>(t < 0 ? t + p_ : t);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    template <class Rng>
    Elem random(Rng& rng) const {
        return std::uniform_int_distribution<std::uint32_t>(0, p_ - 1)(rng);
    }
    template <class Rng>
    Elem random_nonzero(Rng& rng) const {
        return std::uniform_int_distribution<std::uint32_t>(1, p_ - 1)(rng);
    }

    friend bool operator==(const Field& a, const Field& b) noexcept { return a.p_ == b.p_; }

    static bool is_prime(std::uint32_t n) noexcept {
        if (n < 2) return false;
        for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    std::uint32_t p_;
    std::uint64_t barrett_ = 0;
};

/// All randomized routines draw from this engine, seeded explicitly.
using Rng = std::mt19937_64;

}  // namespace planarmap

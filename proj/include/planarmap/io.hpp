#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "planarmap/mpoly.hpp"

namespace planarmap {

/// Default variable names: x, y, z, w for up to four variables, otherwise x0, x1, ...
inline std::vector<std::string> default_names(int n) {
    static const char* small[] = {"x", "y", "z", "w"};
    if (n <= 4) return {small, small + n};
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

/// Prints terms like `3*x^2*y - z^3`, coefficients in symmetric range.
inline std::string to_string(const MPoly& f, const std::vector<std::string>& names) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : f.terms()) {
        long long c = f.field().to_signed(t.c);
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool need_star = false;
        if (c != 1 || t.m.deg == 0) {
            os << c;
            need_star = true;
        }
        for (int i = 0; i < f.nvars(); ++i) {
            auto k = t.m.e[static_cast<std::size_t>(i)];
            if (!k) continue;
            if (need_star) os << '*';
            os << names[static_cast<std::size_t>(i)];
            if (k > 1) os << '^' << k;
            need_star = true;
        }
    }
    return os.str();
}

inline std::string to_string(const MPoly& f) { return to_string(f, default_names(f.nvars())); }

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view s, const Ring& r, const std::vector<std::string>& names)
        : s_(s), ring_(r), names_(names) {}

    MPoly parse() {
        MPoly acc = sum();
        skip();
        if (pos_ != s_.size()) error("unexpected character");
        return acc;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void error(const std::string& msg) const {
        fail(ErrorKind::ParseError, msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    MPoly sum() {
        MPoly acc(ring_);
        bool first = true;
        for (;;) {
            skip();
            Elem sign = 1;
            if (peek('+')) {
                ++pos_;
            } else if (peek('-')) {
                ++pos_;
                sign = ring_.field.neg(1);
            } else if (!first) {
                break;
            }
            acc = acc + product().scaled(sign);
            first = false;
            skip();
            if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
        }
        return acc;
    }

    MPoly product() {
        MPoly acc = power();
        for (;;) {
            skip();
            if (peek('*')) {
                ++pos_;
                acc = acc * power();
            } else if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' ||
                                            std::isdigit(static_cast<unsigned char>(s_[pos_])))) {
                acc = acc * power();  // implicit multiplication
            } else {
                break;
            }
        }
        return acc;
    }

    MPoly power() {
        MPoly base = atom();
        if (peek('^')) {
            ++pos_;
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) error("expected exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
        }
        return base;
    }

    MPoly atom() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MPoly inner = sum();
            if (!peek(')')) error("expected ')'");
            ++pos_;
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return -power();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            // Reduce arbitrarily long integers digit by digit.
            std::uint64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                v = (v * 10 + static_cast<unsigned>(s_[pos_] - '0')) % ring_.field.p();
                ++pos_;
            }
            return MPoly::constant(ring_, static_cast<Elem>(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            for (std::size_t i = 0; i < names_.size(); ++i)
                if (names_[i] == name) return MPoly::variable(ring_, static_cast<int>(i));
            error("unknown variable '" + name + "'");
        }
        error("unexpected character");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    Ring ring_;
    const std::vector<std::string>& names_;
};

}  // namespace detail

/// Parses the polynomial text grammar: integer coefficients reduced mod p,
/// named variables, `+ - * ^` and parentheses, whitespace-insensitive.
inline MPoly parse_poly(std::string_view text, const Ring& r, const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != r.nvars) fail(ErrorKind::InvalidArgument, "name count != variable count");
    return detail::PolyParser(text, r, names).parse();
}

inline MPoly parse_poly(std::string_view text, const Ring& r) { return parse_poly(text, r, default_names(r.nvars)); }

}  // namespace planarmap

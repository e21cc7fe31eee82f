// Exact rational arithmetic on 128-bit integers.
//
// Every quantity that flows through here (sumset cardinalities, rho values,
// elimination pivots over +-1 systems) stays far below 2^60 in reduced form,
// so cross-multiplication in __int128 never overflows.
#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "thincirc/util.hpp"

namespace thincirc {

struct Rational {
    int128 num = 0;
    int128 den = 1;  // invariant: den > 0, gcd(|num|, den) == 1

    Rational() = default;
    Rational(int128 n, int128 d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        int128 g = gcd128(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    static int128 gcd128(int128 a, int128 b) {
        while (b != 0) {
            int128 t = a % b;
            a = b;
            b = t;
        }
        return a < 0 ? -a : a;
    }

    bool is_integer() const { return den == 1; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return to_string_int128(num);
        return to_string_int128(num) + "/" + to_string_int128(den);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
        return {a.num * b.den, a.den * b.num};
    }
    Rational operator-() const {
        Rational r;
        r.num = -num;
        r.den = den;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int128 lhs = a.num * b.den;
        int128 rhs = b.num * a.den;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
};

}  // namespace thincirc

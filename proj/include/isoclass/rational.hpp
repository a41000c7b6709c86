#pragma once

// Minimal exact rational arithmetic on 64-bit integers. The invariant
// formulas used throughout are Diophantine filters, so values are always
// kept exact and integrality is asserted, never rounded.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "isoclass/group.hpp"

namespace isoclass {

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw Error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool is_integer() const { return den == 1; }

    long long as_integer() const {
        if (!is_integer()) throw Error("rational " + to_string() + " is not an integer");
        return num;
    }

    std::string to_string() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw Error("rational division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }
    Rational operator-() const { return Rational(-num, den); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
};

}  // namespace isoclass

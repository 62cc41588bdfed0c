#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sodehelm {

// Exact rational number on 64-bit integers. All operations are
// overflow-checked (via 128-bit intermediates) and throw std::overflow_error
// rather than silently wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) {
        if (den_ == 0) throw std::domain_error("rational: zero denominator");
        normalize();
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return Rational(checked_neg(num_), den_, already_normalized{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return from_i128(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational: division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Integer power; throws on overflow. Exponent magnitude is capped by the
    // caller (expression simplifier) before reaching here.
    Rational pow(long long e) const {
        if (e == 0) return Rational(1);
        Rational base = *this;
        if (e < 0) {
            if (num_ == 0) throw std::domain_error("rational: 0 to negative power");
            base = Rational(1) / base;
            e = -e;
        }
        Rational acc(1);
        while (e > 0) {
            if (e & 1) acc *= base;
            base = (e >>= 1) > 0 ? base * base : base;
        }
        return acc;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    struct already_normalized {};
    Rational(long long n, long long d, already_normalized) : num_(n), den_(d) {}

    static __int128 i128(long long v) { return static_cast<__int128>(v); }

    static long long checked_neg(long long v) {
        if (v == INT64_MIN) throw std::overflow_error("rational: overflow");
        return -v;
    }

    static Rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational: overflow");
        return Rational(static_cast<long long>(n), static_cast<long long>(d), already_normalized{});
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (num_ == INT64_MIN || den_ == INT64_MIN) throw std::overflow_error("rational: overflow");
        if (den_ < 0) { num_ = checked_neg(num_); den_ = checked_neg(den_); }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (den_ == 0) den_ = 1;
    }

    long long num_;
    long long den_;
};

}  // namespace sodehelm

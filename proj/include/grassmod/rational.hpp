#pragma once

#include <string>

#include "grassmod/bigint.hpp"

namespace grassmod {

/// Always-reduced fraction over BigInt. Denominator is kept positive, the
/// sign lives in the numerator, gcd(num, den) = 1. No floating point anywhere.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}  // NOLINT
    Rational(int v) : num_(v), den_(1) {}        // NOLINT
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT

    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static Rational from_string(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rational(BigInt::from_string(s));
        return Rational(BigInt::from_string(s.substr(0, slash)),
                        BigInt::from_string(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_) < 0;
    }

    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.is_zero() || b.is_zero()) return Rational();
        // cross-reduce before multiplying to keep intermediates small
        BigInt g1 = BigInt::gcd(a.num_, b.den_);
        BigInt g2 = BigInt::gcd(b.num_, a.den_);
        Rational r;
        r.num_ = (a.num_ / g1) * (b.num_ / g2);
        r.den_ = (a.den_ / g2) * (b.den_ / g1);
        return r;
    }

    friend Rational operator/(const Rational& a, const Rational& b) {
        require(!b.is_zero(), Errc::InternalError, "rational division by zero");
        Rational inv;
        inv.num_ = b.den_;
        inv.den_ = b.num_;
        if (inv.den_.negative()) {
            inv.num_ = -inv.num_;
            inv.den_ = -inv.den_;
        }
        return a * inv;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    /// "n" for integers, "n/d" otherwise; exact decimal strings, never floats.
    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    BigInt num_, den_;

    void normalize() {
        require(!den_.is_zero(), Errc::InternalError, "zero denominator");
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        if (den_.negative()) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

}  // namespace grassmod

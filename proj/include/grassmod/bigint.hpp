#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grassmod/errors.hpp"

namespace grassmod {

/// Signed arbitrary-precision integer. 32-bit limbs, little-endian, canonical
/// form (no high zero limb, zero is the empty magnitude with positive sign).
/// Schoolbook arithmetic throughout: operand sizes in this project stay small
/// (determinants of ~10x10 integer matrices, row reductions of incidence
/// matrices), so asymptotics do not matter but exactness does.
class BigInt {
public:
    BigInt() = default;

    template <std::integral T>
    BigInt(T v) {  // NOLINT: implicit, mirrors integer literals
        if constexpr (std::is_signed_v<T>) {
            if (v < 0) {
                neg_ = true;
                // two's complement negate is safe for the minimum value
                assign_u64(~static_cast<unsigned long long>(static_cast<long long>(v)) + 1ull);
                return;
            }
        }
        assign_u64(static_cast<unsigned long long>(v));
    }

    static BigInt from_u64(std::uint64_t u) {
        BigInt r;
        r.assign_u64(u);
        return r;
    }

    static BigInt from_string(std::string_view s) {
        BigInt r;
        bool neg = false;
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            neg = s[i] == '-';
            ++i;
        }
        require(i < s.size(), Errc::BadParams, "empty integer literal");
        for (; i < s.size(); ++i) {
            char c = s[i];
            require(c >= '0' && c <= '9', Errc::BadParams, "bad digit in integer literal");
            r.mul_small_inplace(10);
            r.add_small_inplace(std::uint32_t(c - '0'));
        }
        r.neg_ = neg && !r.is_zero();
        return r;
    }

    bool is_zero() const { return mag_.empty(); }
    bool is_one() const { return !neg_ && mag_.size() == 1 && mag_[0] == 1; }
    int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }
    bool negative() const { return neg_; }

    bool fits_int64() const {
        if (mag_.size() > 2) return false;
        std::uint64_t u = to_u64_abs();
        if (neg_) return u <= 0x8000000000000000ull;
        return u <= 0x7FFFFFFFFFFFFFFFull;
    }

    long long to_int64() const {
        require(fits_int64(), Errc::InternalError, "BigInt does not fit int64");
        std::uint64_t u = to_u64_abs();
        return neg_ ? -static_cast<long long>(u - 1) - 1 : static_cast<long long>(u);
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.neg_ == b.neg_ && a.mag_ == b.mag_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    static int cmp(const BigInt& a, const BigInt& b) {
        if (a.neg_ != b.neg_) return a.neg_ ? -1 : 1;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.neg_ ? -c : c;
    }

    BigInt operator-() const {
        BigInt r = *this;
        if (!r.is_zero()) r.neg_ = !r.neg_;
        return r;
    }

    BigInt abs() const {
        BigInt r = *this;
        r.neg_ = false;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.neg_ == b.neg_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.neg_ = a.neg_ && !r.mag_.empty();
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.mag_ = sub_mag(a.mag_, b.mag_);
                r.neg_ = a.neg_;
            } else {
                r.mag_ = sub_mag(b.mag_, a.mag_);
                r.neg_ = b.neg_;
            }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.is_zero() || b.is_zero()) return BigInt();
        BigInt r;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (std::size_t i = 0; i < a.mag_.size(); ++i) {
            std::uint64_t carry = 0;
            std::uint64_t ai = a.mag_[i];
            for (std::size_t j = 0; j < b.mag_.size(); ++j) {
                std::uint64_t cur = std::uint64_t(r.mag_[i + j]) + ai * b.mag_[j] + carry;
                r.mag_[i + j] = std::uint32_t(cur);
                carry = cur >> 32;
            }
            std::size_t k = i + b.mag_.size();
            while (carry) {
                std::uint64_t cur = std::uint64_t(r.mag_[k]) + carry;
                r.mag_[k] = std::uint32_t(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.neg_ = (a.neg_ != b.neg_) && !r.mag_.empty();
        return r;
    }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    /// Quotient/remainder with C++ truncation semantics:
    /// q = trunc(a/b), r = a - q*b (so sign(r) = sign(a)).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        require(!b.is_zero(), Errc::InternalError, "division by zero");
        int c = cmp_mag(a.mag_, b.mag_);
        if (c < 0) {
            q = BigInt();
            r = a;
            return;
        }
        divmod_mag(a.mag_, b.mag_, q.mag_, r.mag_);
        q.trim();
        r.trim();
        q.neg_ = (a.neg_ != b.neg_) && !q.mag_.empty();
        r.neg_ = a.neg_ && !r.mag_.empty();
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }

    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.neg_ = false;
        b.neg_ = false;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    static BigInt pow(BigInt base, std::uint64_t exp) {
        BigInt r(1);
        while (exp) {
            if (exp & 1) r *= base;
            base *= base;
            exp >>= 1;
        }
        return r;
    }

    /// If |*this| == p^m for some m >= 0, returns m. (|1| == p^0.)
    std::optional<std::uint32_t> abs_power_of(std::uint32_t p) const {
        if (is_zero()) return std::nullopt;
        BigInt v = abs();
        BigInt bp = from_u64(p);
        std::uint32_t m = 0;
        while (!v.is_one()) {
            BigInt q, r;
            divmod(v, bp, q, r);
            if (!r.is_zero()) return std::nullopt;
            v = std::move(q);
            ++m;
        }
        return m;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<std::uint32_t> tmp = mag_;
        std::string digits;
        while (!tmp.empty()) {
            // divide magnitude by 10^9, emit remainder
            std::uint64_t rem = 0;
            for (std::size_t i = tmp.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | tmp[i];
                tmp[i] = std::uint32_t(cur / 1000000000ull);
                rem = cur % 1000000000ull;
            }
            while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
            for (int d = 0; d < 9; ++d) {
                digits.push_back(char('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        if (neg_) digits.push_back('-');
        std::reverse(digits.begin(), digits.end());
        return digits;
    }

private:
    bool neg_ = false;
    std::vector<std::uint32_t> mag_;  // little-endian

    void assign_u64(std::uint64_t u) {
        mag_.clear();
        while (u) {
            mag_.push_back(std::uint32_t(u));
            u >>= 32;
        }
    }

    std::uint64_t to_u64_abs() const {
        std::uint64_t u = 0;
        if (mag_.size() > 1) u = std::uint64_t(mag_[1]) << 32;
        if (!mag_.empty()) u |= mag_[0];
        return u;
    }

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) neg_ = false;
    }

    void mul_small_inplace(std::uint32_t m) {
        std::uint64_t carry = 0;
        for (auto& limb : mag_) {
            std::uint64_t cur = std::uint64_t(limb) * m + carry;
            limb = std::uint32_t(cur);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(std::uint32_t(carry));
    }

    void add_small_inplace(std::uint32_t a) {
        std::uint64_t carry = a;
        for (auto& limb : mag_) {
            if (!carry) return;
            std::uint64_t cur = std::uint64_t(limb) + carry;
            limb = std::uint32_t(cur);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(std::uint32_t(carry));
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<std::uint32_t> r = big;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < small.size(); ++i) {
            std::uint64_t cur = std::uint64_t(r[i]) + small[i] + carry;
            r[i] = std::uint32_t(cur);
            carry = cur >> 32;
        }
        for (std::size_t i = small.size(); carry && i < r.size(); ++i) {
            std::uint64_t cur = std::uint64_t(r[i]) + carry;
            r[i] = std::uint32_t(cur);
            carry = cur >> 32;
        }
        if (carry) r.push_back(std::uint32_t(carry));
        return r;
    }

    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r = a;
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::int64_t cur = std::int64_t(r[i]) - b[i] - borrow;
            borrow = cur < 0;
            if (cur < 0) cur += (std::int64_t(1) << 32);
            r[i] = std::uint32_t(cur);
        }
        for (std::size_t i = b.size(); borrow && i < r.size(); ++i) {
            std::int64_t cur = std::int64_t(r[i]) - borrow;
            borrow = cur < 0;
            if (cur < 0) cur += (std::int64_t(1) << 32);
            r[i] = std::uint32_t(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // Knuth algorithm D on normalized limbs; |a| >= |b| > 0.
    static void divmod_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                           std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
        if (b.size() == 1) {
            q.assign(a.size(), 0);
            std::uint64_t rem = 0;
            for (std::size_t i = a.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | a[i];
                q[i] = std::uint32_t(cur / b[0]);
                rem = cur % b[0];
            }
            r.clear();
            if (rem) r.push_back(std::uint32_t(rem));
            return;
        }

        int shift = 0;
        std::uint32_t top = b.back();
        while (!(top & 0x80000000u)) {
            top <<= 1;
            ++shift;
        }
        std::vector<std::uint32_t> u = shl_mag(a, shift);
        std::vector<std::uint32_t> v = shl_mag(b, shift);
        std::size_t n = v.size(), m = u.size() - n;
        u.push_back(0);  // u has m+n+1 limbs
        q.assign(m + 1, 0);

        for (std::size_t j = m + 1; j-- > 0;) {
            std::uint64_t num = (std::uint64_t(u[j + n]) << 32) | u[j + n - 1];
            std::uint64_t qhat = num / v[n - 1];
            std::uint64_t rhat = num % v[n - 1];
            while (qhat >= (std::uint64_t(1) << 32) ||
                   qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
                --qhat;
                rhat += v[n - 1];
                if (rhat >= (std::uint64_t(1) << 32)) break;
            }
            // multiply-subtract
            std::int64_t borrow = 0;
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t prod = qhat * v[i] + carry;
                carry = prod >> 32;
                std::int64_t cur = std::int64_t(u[i + j]) - std::int64_t(std::uint32_t(prod)) - borrow;
                borrow = cur < 0;
                if (cur < 0) cur += (std::int64_t(1) << 32);
                u[i + j] = std::uint32_t(cur);
            }
            std::int64_t cur = std::int64_t(u[j + n]) - std::int64_t(carry) - borrow;
            bool neg = cur < 0;
            if (cur < 0) cur += (std::int64_t(1) << 32);
            u[j + n] = std::uint32_t(cur);

            if (neg) {  // qhat was one too large: add back
                --qhat;
                std::uint64_t c2 = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint64_t s = std::uint64_t(u[i + j]) + v[i] + c2;
                    u[i + j] = std::uint32_t(s);
                    c2 = s >> 32;
                }
                u[j + n] = std::uint32_t(std::uint64_t(u[j + n]) + c2);
            }
            q[j] = std::uint32_t(qhat);
        }

        u.resize(n);
        r = shr_mag(u, shift);
        while (!q.empty() && q.back() == 0) q.pop_back();
        while (!r.empty() && r.back() == 0) r.pop_back();
    }

    static std::vector<std::uint32_t> shl_mag(const std::vector<std::uint32_t>& a, int s) {
        if (s == 0) return a;
        std::vector<std::uint32_t> r(a.size() + 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            r[i] |= a[i] << s;
            r[i + 1] = std::uint32_t(std::uint64_t(a[i]) >> (32 - s));
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static std::vector<std::uint32_t> shr_mag(const std::vector<std::uint32_t>& a, int s) {
        if (s == 0) {
            auto r = a;
            while (!r.empty() && r.back() == 0) r.pop_back();
            return r;
        }
        std::vector<std::uint32_t> r(a.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            r[i] = a[i] >> s;
            if (i + 1 < a.size()) r[i] |= std::uint32_t(std::uint64_t(a[i + 1]) << (32 - s));
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

}  // namespace grassmod

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "grassmod/errors.hpp"
#include "grassmod/rational.hpp"

namespace grassmod {

enum class FieldKind { Prime, Extension, Rational };

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Finite fields F_{p^e}
//
// Elements are integer codes 0..q-1 encoding the coefficient vector of the
// residue polynomial: code = c_0 + c_1*p + ... + c_{e-1}*p^{e-1}.
//
// The canonical total order on elements (used everywhere an ordering of field
// elements matters: Grassmannian tables, modulus selection, embeddings) is the
// lexicographic order on the coefficient vector (c_0, c_1, ..., c_{e-1}),
// constant term first. order_key() ranks elements in that order. For prime
// fields it is the natural order 0, 1, ..., p-1.
// ---------------------------------------------------------------------------
class FiniteField {
public:
    using value_type = std::uint32_t;

    static FiniteField make(std::uint32_t p, std::uint32_t e) {
        require(is_prime_u32(p), Errc::NonPrimeModulus, "p = " + std::to_string(p) + " is not prime");
        require(e >= 1, Errc::BadParams, "extension degree must be >= 1");
        FiniteField f;
        f.p_ = p;
        f.e_ = e;
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            q *= p;
            require(q <= (1u << 20), Errc::TooLarge, "field size exceeds 2^20");
        }
        f.q_ = std::uint32_t(q);
        if (e == 1) {
            f.modulus_ = {0, 1};  // x - 0 placeholder; unused for prime fields
            f.modulus_[0] = 0;
        } else {
            f.modulus_ = least_irreducible(p, e);
        }
        f.build_tables();
        return f;
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint32_t q() const { return q_; }
    std::uint32_t characteristic() const { return p_; }
    bool is_prime_field() const { return e_ == 1; }

    /// Modulus coefficients c_0..c_e (constant term first, monic, length e+1).
    const std::vector<std::uint32_t>& modulus_poly() const { return modulus_; }

    std::string label() const { return "F" + std::to_string(q_); }

    value_type zero() const { return 0; }
    value_type one() const { return 1 % q_; }

    bool is_zero(value_type a) const { return a == 0; }

    value_type from_int(long long v) const {
        long long m = v % p_;
        if (m < 0) m += p_;
        return value_type(m);  // integers land in the prime subfield
    }

    value_type add(value_type a, value_type b) const {
        if (e_ == 1) {
            std::uint32_t s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        return add_[std::size_t(a) * q_ + b];
    }

    value_type neg(value_type a) const { return neg_[a]; }

    value_type sub(value_type a, value_type b) const { return add(a, neg(b)); }

    value_type mul(value_type a, value_type b) const {
        if (e_ == 1) return value_type((std::uint64_t(a) * b) % p_);
        return mul_[std::size_t(a) * q_ + b];
    }

    value_type inv(value_type a) const {
        require(a != 0, Errc::InternalError, "inverse of zero");
        return inv_[a];
    }

    value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

    /// Rank of an element in the canonical order (see class comment).
    std::uint32_t order_key(value_type a) const { return key_[a]; }

    /// Elements listed in canonical order.
    const std::vector<value_type>& elements_in_order() const { return ordered_; }

    /// A fixed generator of the multiplicative group (least in canonical
    /// order among generators). Undefined for F_2 where the group is trivial.
    value_type multiplicative_generator() const { return gen_; }

    value_type power(value_type a, std::uint32_t exp) const {
        value_type acc = one();
        while (exp) {
            if (exp & 1) acc = mul(acc, a);
            a = mul(a, a);
            exp >>= 1;
        }
        return acc;
    }

    std::uint32_t element_order(value_type a) const {
        require(a != 0, Errc::InternalError, "order of zero");
        std::uint32_t n = 1;
        value_type x = a;
        while (x != one()) {
            x = mul(x, a);
            ++n;
        }
        return n;
    }

    std::vector<std::uint32_t> coeffs_of(value_type a) const {
        std::vector<std::uint32_t> c(e_);
        for (std::uint32_t i = 0; i < e_; ++i) {
            c[i] = a % p_;
            a /= p_;
        }
        return c;
    }

    value_type from_coeffs(const std::vector<std::uint32_t>& c) const {
        value_type a = 0;
        for (std::size_t i = c.size(); i-- > 0;) a = value_type(a * p_ + (c[i] % p_));
        return a;
    }

    /// Images of this field's elements inside a larger field with the same
    /// characteristic and e | sup.e. The embedding sends the residue class of
    /// x to the least (canonical order) root of this modulus in sup, so it is
    /// deterministic. Identity when the fields coincide.
    std::vector<value_type> embedding_into(const FiniteField& sup) const;

    // --- internal polynomial helpers (coefficients mod p, lowest degree first)

    static std::vector<std::uint32_t> poly_mul_mod(const std::vector<std::uint32_t>& a,
                                                   const std::vector<std::uint32_t>& b,
                                                   const std::vector<std::uint32_t>& mod,
                                                   std::uint32_t p) {
        std::vector<std::uint32_t> prod(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                prod[i + j] = std::uint32_t((prod[i + j] + std::uint64_t(a[i]) * b[j]) % p);
        poly_reduce(prod, mod, p);
        return prod;
    }

    // in-place reduction by a monic modulus
    static void poly_reduce(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& mod,
                            std::uint32_t p) {
        std::size_t e = mod.size() - 1;
        for (std::size_t i = a.size(); i-- > e;) {
            std::uint32_t c = a[i];
            if (c == 0) continue;
            a[i] = 0;
            for (std::size_t j = 0; j < e; ++j) {
                std::uint64_t sub = (std::uint64_t(c) * mod[j]) % p;
                a[i - e + j] = std::uint32_t((a[i - e + j] + p - sub) % p);
            }
        }
        a.resize(e);
    }

    /// Irreducibility over F_p by trial division against every monic
    /// polynomial of degree 1..deg/2.
    static bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
        std::size_t deg = poly.size() - 1;
        if (deg == 0) return false;
        if (poly[0] == 0) return deg == 1;  // divisible by x
        for (std::size_t d = 1; 2 * d <= deg; ++d) {
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < d; ++i) count *= p;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                std::vector<std::uint32_t> div(d + 1);
                std::uint64_t t = idx;
                for (std::size_t i = 0; i < d; ++i) {
                    div[i] = std::uint32_t(t % p);
                    t /= p;
                }
                div[d] = 1;
                if (poly_divides(div, poly, p)) return false;
            }
        }
        return true;
    }

private:
    std::uint32_t p_ = 0, e_ = 0, q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<value_type> mul_, inv_, neg_, ordered_;
    std::vector<std::uint32_t> add_, key_;
    value_type gen_ = 0;

    static bool poly_divides(const std::vector<std::uint32_t>& d,
                             const std::vector<std::uint32_t>& a, std::uint32_t p) {
        std::vector<std::uint32_t> r = a;
        std::size_t dd = d.size() - 1;
        for (std::size_t i = r.size(); i-- > dd;) {
            std::uint32_t c = r[i];
            if (c == 0) continue;
            r[i] = 0;
            for (std::size_t j = 0; j < dd; ++j) {
                std::uint64_t sub = (std::uint64_t(c) * d[j]) % p;
                r[i - dd + j] = std::uint32_t((r[i - dd + j] + p - sub) % p);
            }
        }
        for (auto c : r)
            if (c) return false;
        return true;
    }

    /// Lexicographically least monic irreducible of degree e over F_p, where
    /// coefficient vectors (c_0, ..., c_{e-1}) compare constant term first.
    static std::vector<std::uint32_t> least_irreducible(std::uint32_t p, std::uint32_t e) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < e; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            // idx enumerates (c_0, ..., c_{e-1}) in lex order, c_0 varying slowest
            std::vector<std::uint32_t> poly(e + 1);
            std::uint64_t t = idx;
            for (std::size_t i = e; i-- > 0;) {
                poly[i] = std::uint32_t(t % p);
                t /= p;
            }
            poly[e] = 1;
            if (is_irreducible(poly, p)) return poly;
        }
        fail(Errc::NoIrreducibleFound, "no monic irreducible of degree " + std::to_string(e));
    }

    void build_tables() {
        key_.resize(q_);
        ordered_.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            // rank in lex-on-(c_0..c_{e-1}) order: c_0 most significant
            auto c = coeffs_of(a);
            std::uint32_t k = 0;
            for (std::uint32_t i = 0; i < e_; ++i) k = k * p_ + c[i];
            key_[a] = k;
            ordered_[k] = a;
        }
        neg_.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            auto c = coeffs_of(a);
            for (auto& x : c) x = (p_ - x) % p_;
            neg_[a] = from_coeffs(c);
        }
        if (e_ > 1) {
            require(std::uint64_t(q_) * q_ <= (1u << 22), Errc::TooLarge,
                    "extension field too large for table arithmetic");
            add_.resize(std::size_t(q_) * q_);
            mul_.resize(std::size_t(q_) * q_);
            for (std::uint32_t a = 0; a < q_; ++a) {
                auto ca = coeffs_of(a);
                for (std::uint32_t b = 0; b < q_; ++b) {
                    auto cb = coeffs_of(b);
                    std::vector<std::uint32_t> s(e_);
                    for (std::uint32_t i = 0; i < e_; ++i) s[i] = (ca[i] + cb[i]) % p_;
                    add_[std::size_t(a) * q_ + b] = from_coeffs(s);
                    auto m = poly_mul_mod(ca, cb, modulus_, p_);
                    mul_[std::size_t(a) * q_ + b] = from_coeffs(m);
                }
            }
        }
        inv_.assign(q_, 0);
        if (e_ == 1) {
            // linear recurrence inv[a] = -(p/a) * inv[p mod a]
            if (q_ > 1) inv_[1] = 1;
            for (std::uint32_t a = 2; a < q_; ++a)
                inv_[a] = std::uint32_t(
                    (std::uint64_t(p_ - p_ / a) * inv_[p_ % a]) % p_);
        } else {
            for (std::uint32_t a = 1; a < q_; ++a) {
                if (inv_[a]) continue;
                for (std::uint32_t b = 1; b < q_; ++b) {
                    if (mul(a, b) == one()) {
                        inv_[a] = b;
                        inv_[b] = a;
                        break;
                    }
                }
                require(inv_[a] != 0, Errc::InternalError, "element without inverse");
            }
        }
        // least generator in canonical order, tested against the prime
        // factorization of the group order
        if (q_ > 2) {
            std::vector<std::uint32_t> factors;
            std::uint32_t m = q_ - 1;
            for (std::uint32_t f = 2; std::uint64_t(f) * f <= m; ++f) {
                if (m % f) continue;
                factors.push_back(f);
                while (m % f == 0) m /= f;
            }
            if (m > 1) factors.push_back(m);
            for (std::uint32_t k = 0; k < q_; ++k) {
                value_type a = ordered_[k];
                if (a == 0) continue;
                bool generates = true;
                for (auto f : factors) {
                    if (power(a, (q_ - 1) / f) == one()) {
                        generates = false;
                        break;
                    }
                }
                if (generates) {
                    gen_ = a;
                    break;
                }
            }
        } else {
            gen_ = 1;
        }
    }
};

inline std::vector<FiniteField::value_type> FiniteField::embedding_into(const FiniteField& sup) const {
    require(sup.p_ == p_ && sup.e_ % e_ == 0, Errc::PreconditionViolated,
            "no subfield embedding " + label() + " -> " + sup.label());
    std::vector<value_type> img(q_);
    if (sup.q_ == q_) {
        for (std::uint32_t a = 0; a < q_; ++a) img[a] = a;
        return img;
    }
    // root of our modulus inside sup, least in sup's canonical order
    value_type root = 0;
    bool found = false;
    for (std::uint32_t k = 0; k < sup.q_ && !found; ++k) {
        value_type x = sup.ordered_[k];
        value_type acc = sup.zero();
        value_type pw = sup.one();
        for (std::size_t i = 0; i < modulus_.size(); ++i) {
            acc = sup.add(acc, sup.mul(sup.from_int(modulus_[i]), pw));
            pw = sup.mul(pw, x);
        }
        if (sup.is_zero(acc)) {
            root = x;
            found = true;
        }
    }
    require(found, Errc::InternalError, "modulus has no root in extension");
    for (std::uint32_t a = 0; a < q_; ++a) {
        auto c = coeffs_of(a);
        value_type acc = sup.zero();
        value_type pw = sup.one();
        for (std::uint32_t i = 0; i < e_; ++i) {
            acc = sup.add(acc, sup.mul(sup.from_int(c[i]), pw));
            pw = sup.mul(pw, root);
        }
        img[a] = acc;
    }
    return img;
}

// ---------------------------------------------------------------------------
// Rationals as a field object, so generic linear algebra can be instantiated
// over Q with the same interface as over F_q.
// ---------------------------------------------------------------------------
class RationalField {
public:
    using value_type = Rational;

    value_type zero() const { return Rational(0); }
    value_type one() const { return Rational(1); }
    bool is_zero(const value_type& a) const { return a.is_zero(); }
    value_type from_int(long long v) const { return Rational(v); }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type div(const value_type& a, const value_type& b) const { return a / b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const { return one() / a; }
    std::uint32_t characteristic() const { return 0; }
    std::string label() const { return "Q"; }
};

// ---------------------------------------------------------------------------
// Interning: one immutable instance per (p, e), shareable across threads.
// Subspaces and index tables hold pointers into this registry.
// ---------------------------------------------------------------------------
inline const FiniteField& finite_field(std::uint32_t p, std::uint32_t e = 1) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<FiniteField>> reg;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, e);
    auto it = reg.find(key);
    if (it == reg.end()) {
        it = reg.emplace(key, std::make_unique<FiniteField>(FiniteField::make(p, e))).first;
    }
    return *it->second;
}

/// Field of order q = p^e given q; q must be a prime power.
inline const FiniteField& finite_field_of_order(std::uint32_t q) {
    require(q >= 2, Errc::BadParams, "field order must be >= 2");
    std::uint32_t p = 2;
    while (q % p != 0) {
        ++p;
        require(p <= q, Errc::BadParams, "not a prime power");
    }
    std::uint32_t e = 0, t = q;
    while (t > 1) {
        require(t % p == 0, Errc::BadParams, std::to_string(q) + " is not a prime power");
        t /= p;
        ++e;
    }
    return finite_field(p, e);
}

inline const RationalField& rational_field() {
    static const RationalField f;
    return f;
}

/// Runtime field descriptor used at dispatch boundaries (CLI, reports).
struct FieldCtx {
    FieldKind kind;
    const FiniteField* fin = nullptr;  // null iff kind == Rational

    std::string label() const { return kind == FieldKind::Rational ? "Q" : fin->label(); }
};

inline FieldCtx make_field(FieldKind kind, std::uint32_t p = 0, std::uint32_t e = 1) {
    if (kind == FieldKind::Rational) return FieldCtx{FieldKind::Rational, nullptr};
    require(e >= 1, Errc::BadParams, "extension degree must be >= 1");
    if (kind == FieldKind::Prime)
        require(e == 1, Errc::BadParams, "prime field has degree 1");
    return FieldCtx{kind, &finite_field(p, e)};
}

}  // namespace grassmod

#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "grassmod/gmodule.hpp"

namespace grassmod {

// ---------------------------------------------------------------------------
// Alternating binomial subsums D_s(N) and the (p-1)x(p-1) matrix they fill.
// ---------------------------------------------------------------------------

inline BigInt binomial(std::uint32_t n, std::uint32_t k) {
    if (k > n) return BigInt(0);
    BigInt r(1);
    for (std::uint32_t i = 0; i < k; ++i) {
        r *= BigInt(std::int64_t(n - i));
        r = r / BigInt(std::int64_t(i + 1));
    }
    return r;
}

/// D_s(N) = sum over m ≡ s (mod p), 0 <= m <= N of (-1)^m C(N, m).
inline BigInt d_coefficient(std::uint32_t p, std::uint32_t s, std::uint32_t N) {
    require(is_prime_u32(p), Errc::NonPrimeModulus, "p must be prime");
    require(s < p, Errc::BadParams, "residue class out of range");
    require(N >= 1, Errc::BadParams, "N must be >= 1");
    BigInt acc(0);
    for (std::uint32_t m = s; m <= N; m += p) {
        BigInt term = binomial(N, m);
        acc = (m % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

struct DeltaResult {
    BigInt det;
    bool is_pm_power_of_p = false;
    std::uint32_t m = 0;  // |det| = p^m when the flag is set
};

/// Determinant of the matrix with rows N..N+p-2 and columns s = 1..p-1 of
/// D_s(row); exact, with the power-of-p test applied to |det|.
inline DeltaResult delta_check(std::uint32_t p, std::uint32_t N) {
    require(is_prime_u32(p), Errc::NonPrimeModulus, "p must be prime");
    require(N >= 1, Errc::BadParams, "N must be >= 1");
    std::size_t d = p - 1;
    IMat m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m.at(i, j) = d_coefficient(p, std::uint32_t(j + 1), N + std::uint32_t(i));
    DeltaResult res;
    res.det = bareiss_determinant(std::move(m));
    if (auto pow = res.det.abs_power_of(p)) {
        res.is_pm_power_of_p = true;
        res.m = *pow;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Rank-one perturbations 1 - lambda*t*w of the identity: at most one bad t,
// with the closed-form inverse checked at every good t.
// ---------------------------------------------------------------------------
struct RankOneSweep {
    std::uint32_t count_noninvertible = 0;
    bool inverses_verified = true;
};

inline RankOneSweep rank_one_invertibility(const FiniteField& F, std::uint32_t n,
                                           const std::vector<std::uint32_t>& lam,
                                           const std::vector<std::uint32_t>& w) {
    require(lam.size() == n && w.size() == n, Errc::BadParams, "functional/vector length");
    RankOneSweep out;
    std::uint32_t mu = 0;  // lam(w)
    for (std::uint32_t i = 0; i < n; ++i) mu = F.add(mu, F.mul(lam[i], w[i]));

    for (std::uint32_t t = 0; t < F.q(); ++t) {
        Mat<FiniteField> M(F, n, n);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j) {
                std::uint32_t v = F.mul(F.mul(lam[i], t), w[j]);
                M.at(i, j) = F.sub(i == j ? F.one() : F.zero(), v);
            }
        bool invertible = is_invertible(M);
        if (!invertible) ++out.count_noninvertible;

        std::uint32_t mut = F.mul(mu, t);
        if (mut != F.one()) {
            // 1 + lambda*t*(1 - mu t)^{-1} w must be a two-sided inverse
            std::uint32_t scale = F.mul(t, F.inv(F.sub(F.one(), mut)));
            Mat<FiniteField> Ninv(F, n, n);
            for (std::uint32_t i = 0; i < n; ++i)
                for (std::uint32_t j = 0; j < n; ++j) {
                    std::uint32_t v = F.mul(F.mul(lam[i], scale), w[j]);
                    Ninv.at(i, j) = F.add(i == j ? F.one() : F.zero(), v);
                }
            if (!(M * Ninv == Mat<FiniteField>::identity(F, n)) || !invertible)
                out.inverses_verified = false;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Signed subset sums gamma_m over a fixed pencil of subspaces U + F(e0 + t e1)
// and the transvection recursion that grows them.
// ---------------------------------------------------------------------------
struct GammaSpec {
    const FiniteField* F = nullptr;
    std::uint32_t n = 0, r = 0;
    Subspace U;                       // dim r-1
    std::vector<std::uint32_t> e0, e1;  // independent modulo U
    std::vector<std::uint32_t> ts;      // nonzero scalars t_1, t_2, ...

    void validate() const {
        require(F != nullptr && r >= 1 && n >= r + 1, Errc::SpecInvalid, "need 1 <= r < n");
        require(U.r == r - 1 && U.n == n && U.F == F, Errc::SpecInvalid, "U must have dimension r-1");
        require(e0.size() == n && e1.size() == n, Errc::SpecInvalid, "vector length mismatch");
        Mat<FiniteField> stack(*F, U.r + 2, n);
        for (std::uint32_t i = 0; i < U.r; ++i)
            for (std::uint32_t j = 0; j < n; ++j) stack.at(i, j) = U.at(i, j);
        for (std::uint32_t j = 0; j < n; ++j) {
            stack.at(U.r, j) = e0[j];
            stack.at(U.r + 1, j) = e1[j];
        }
        require(rank(stack) == std::size_t(r) + 1, Errc::SpecInvalid,
                "e0, e1 must be independent modulo U");
        for (auto t : ts) require(t != 0, Errc::SpecInvalid, "scalars must be nonzero");
    }

    /// U + F*(e0 + t*e1) as a canonical subspace.
    Subspace member(std::uint32_t t) const {
        Mat<FiniteField> rows(*F, U.r + 1, n);
        for (std::uint32_t i = 0; i < U.r; ++i)
            for (std::uint32_t j = 0; j < n; ++j) rows.at(i, j) = U.at(i, j);
        for (std::uint32_t j = 0; j < n; ++j)
            rows.at(U.r, j) = F->add(e0[j], F->mul(t, e1[j]));
        return canonicalize(*F, n, rows);
    }
};

inline constexpr std::uint32_t kGammaSubsetCap = 20;

/// gamma_m = sum over subsets I of {1..m} of (-1)^|I| [U + F(e0 + (sum_{i in I} t_i) e1)],
/// by direct subset enumeration; colliding subset sums merge in K.
template <FieldLike F2>
ModuleVector<F2> gamma(const F2& K, const GammaSpec& spec, std::uint32_t m,
                       const Config& cfg = default_config()) {
    spec.validate();
    require(m <= spec.ts.size(), Errc::SpecInvalid, "m exceeds the scalar sequence");
    require(m <= kGammaSubsetCap, Errc::TooLarge, "subset enumeration cap exceeded");

    const auto& gi = grassmann_index(*spec.F, spec.n, spec.r, cfg);
    ModuleVector<F2> out(K, gi);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        std::uint32_t sum = 0;
        for (std::uint32_t i = 0; i < m; ++i)
            if (mask & (std::uint64_t(1) << i)) sum = spec.F->add(sum, spec.ts[i]);
        std::size_t idx = gi.index_of(spec.member(sum));
        bool odd = __builtin_popcountll(mask) & 1;
        out.coeffs[idx] = odd ? K.sub(out.coeffs[idx], K.one()) : K.add(out.coeffs[idx], K.one());
    }
    return out;
}

/// The canonical transvection fixing U + F*e1 pointwise with e0 -> e0 + t*e1.
inline GroupElement gamma_transvection(const GammaSpec& spec, std::uint32_t t) {
    const FiniteField& F = *spec.F;
    std::uint32_t n = spec.n;
    // basis: U rows, e1, e0, then a deterministic completion
    Mat<FiniteField> base(F, spec.U.r + 2, n);
    for (std::uint32_t i = 0; i < spec.U.r; ++i)
        for (std::uint32_t j = 0; j < n; ++j) base.at(i, j) = spec.U.at(i, j);
    for (std::uint32_t j = 0; j < n; ++j) {
        base.at(spec.U.r, j) = spec.e1[j];
        base.at(spec.U.r + 1, j) = spec.e0[j];
    }
    auto full = detail::complement_rows(F, n, base, canonicalize(F, n, Mat<FiniteField>::identity(F, n)));
    Mat<FiniteField> C(F, n, n);
    for (std::uint32_t i = 0; i < spec.U.r + 2; ++i)
        for (std::uint32_t j = 0; j < n; ++j) C.at(i, j) = base.at(i, j);
    for (std::size_t k = 0; k < full.size(); ++k)
        for (std::uint32_t j = 0; j < n; ++j) C.at(spec.U.r + 2 + k, j) = full[k][j];

    Mat<FiniteField> Cp = C;
    for (std::uint32_t j = 0; j < n; ++j)
        Cp.at(spec.U.r + 1, j) = F.add(spec.e0[j], F.mul(t, spec.e1[j]));
    return GroupElement::make(inverse(C) * Cp);
}

/// gamma_{m+1} == gamma_m * ([1] - [xi]) for the canonical transvection (or a
/// caller-supplied group element, for negative controls).
template <FieldLike F2>
bool gamma_recursion_check(const F2& K, const GammaSpec& spec, std::uint32_t m,
                           const GroupElement* xi_override = nullptr,
                           const Config& cfg = default_config()) {
    spec.validate();
    require(m + 1 <= spec.ts.size(), Errc::SpecInvalid, "need t_{m+1} in the sequence");
    GroupElement xi = xi_override ? *xi_override : gamma_transvection(spec, spec.ts[m]);
    auto id = GroupElement::make(Mat<FiniteField>::identity(*spec.F, spec.n));
    auto one_minus_xi =
        GroupAlgebraElement<F2>::make(K, {{K.one(), id}, {K.neg(K.one()), xi}});
    auto lhs = gamma(K, spec, m + 1, cfg);
    auto rhs = apply_algebra(gamma(K, spec, m, cfg), one_minus_xi);
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// The annihilator element Xi built from rank-one corrections 1 + xi_I.
// ---------------------------------------------------------------------------
template <FieldLike F2>
struct XiInput {
    const F2* K = nullptr;
    const FiniteField* Fq = nullptr;
    std::uint32_t n = 0, r = 0;
    std::vector<Subspace> L;                   // L[0], L[1], ..., L[N]
    std::vector<typename F2::value_type> a;    // a_0 .. a_N
};

enum class XiStatus { Ok, NoUncoveredVector, NoGoodScaling };

template <FieldLike F2>
struct XiBuildResult {
    XiStatus status = XiStatus::Ok;
    GroupAlgebraElement<F2> xi;
    std::vector<std::uint32_t> v, w;
    std::vector<std::vector<std::uint32_t>> lams;  // functionals lam_1..lam_N
    bool annihilated = false;
    bool image_support_ok = false;
    ModuleVector<F2> xi_L0;
};

namespace detail {

/// All vectors of a subspace, by ascending coefficient odometer.
inline std::vector<std::vector<std::uint32_t>> subspace_vectors(const Subspace& S) {
    const FiniteField& F = *S.F;
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> coef(S.r, 0);
    for (;;) {
        std::vector<std::uint32_t> v(S.n, 0);
        for (std::uint32_t i = 0; i < S.r; ++i) {
            if (coef[i] == 0) continue;
            for (std::uint32_t j = 0; j < S.n; ++j)
                v[j] = F.add(v[j], F.mul(coef[i], S.at(i, j)));
        }
        out.push_back(std::move(v));
        std::size_t k = 0;
        while (k < coef.size()) {
            if (++coef[k] < F.q()) break;
            coef[k] = 0;
            ++k;
        }
        if (k == coef.size()) break;
        if (coef.empty()) break;
    }
    return out;
}

}  // namespace detail

template <FieldLike F2>
XiBuildResult<F2> xi_build(const XiInput<F2>& in, const Config& cfg = default_config()) {
    using V = typename F2::value_type;
    const F2& K = *in.K;
    const FiniteField& F = *in.Fq;
    std::size_t N = in.L.size() - 1;
    require(in.L.size() >= 2 && in.a.size() == in.L.size(), Errc::SpecInvalid,
            "need L_0..L_N with matching coefficients");
    require(N <= kGammaSubsetCap, Errc::TooLarge, "too many subspaces");
    for (const auto& Ls : in.L)
        require(Ls.F == &F && Ls.n == in.n && Ls.r == in.r, Errc::SpecInvalid,
                "all subspaces must share dimension and ambient");
    for (std::size_t i = 0; i < in.L.size(); ++i)
        for (std::size_t j = i + 1; j < in.L.size(); ++j)
            require(!(in.L[i] == in.L[j]), Errc::SpecInvalid, "subspaces must be distinct");

    XiBuildResult<F2> out;

    // v in L_0 away from every other L_i
    std::vector<std::uint32_t> v;
    for (const auto& cand : detail::subspace_vectors(in.L[0])) {
        bool zero = std::all_of(cand.begin(), cand.end(), [](std::uint32_t x) { return x == 0; });
        if (zero) continue;
        bool covered = false;
        for (std::size_t i = 1; i <= N && !covered; ++i) covered = in.L[i].contains(cand);
        if (!covered) {
            v = cand;
            break;
        }
    }
    if (v.empty()) {
        out.status = XiStatus::NoUncoveredVector;
        return out;
    }
    out.v = v;

    // functionals vanishing on L_i but not on v
    for (std::size_t i = 1; i <= N; ++i) {
        auto ann = kernel_basis(in.L[i].as_matrix());  // rows: functionals killing L_i
        std::vector<std::uint32_t> lam;
        for (std::size_t t = 0; t < ann.rows; ++t) {
            std::uint32_t val = 0;
            for (std::uint32_t j = 0; j < in.n; ++j) val = F.add(val, F.mul(ann.at(t, j), v[j]));
            if (val != 0) {
                lam.assign(in.n, 0);
                for (std::uint32_t j = 0; j < in.n; ++j) lam[j] = ann.at(t, j);
                break;
            }
        }
        require(!lam.empty(), Errc::InternalError, "no functional separates v from L_i");
        out.lams.push_back(std::move(lam));
    }

    // w not in L_0 making every 1 + xi_I invertible: det(1 + lam_I . w) = 1 + lam_I(w)
    auto lam_of = [&](std::uint64_t mask, const std::vector<std::uint32_t>& x) {
        std::uint32_t val = 0;
        for (std::size_t i = 0; i < N; ++i) {
            if (!(mask & (std::uint64_t(1) << i))) continue;
            for (std::uint32_t j = 0; j < in.n; ++j)
                val = F.add(val, F.mul(out.lams[i][j], x[j]));
        }
        return val;
    };

    std::vector<std::uint32_t> w(in.n, 0);
    bool found_w = false;
    std::vector<std::uint32_t> cand(in.n, 0);
    for (;;) {
        std::size_t k = 0;
        while (k < cand.size()) {
            if (++cand[k] < F.q()) break;
            cand[k] = 0;
            ++k;
        }
        if (k == cand.size()) break;
        if (in.L[0].contains(cand)) continue;
        bool ok = true;
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << N) && ok; ++mask)
            ok = F.add(F.one(), lam_of(mask, cand)) != 0;
        if (ok) {
            w = cand;
            found_w = true;
            break;
        }
    }
    if (!found_w) {
        out.status = XiStatus::NoGoodScaling;
        return out;
    }
    out.w = w;

    // Xi = sum over subsets of (-1)^|I| [1 + xi_I]
    std::vector<std::pair<V, GroupElement>> terms;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << N); ++mask) {
        Mat<FiniteField> M(F, in.n, in.n);
        for (std::uint32_t i = 0; i < in.n; ++i) {
            std::uint32_t lam_i = 0;
            for (std::size_t t = 0; t < N; ++t)
                if (mask & (std::uint64_t(1) << t)) lam_i = F.add(lam_i, out.lams[t][i]);
            for (std::uint32_t j = 0; j < in.n; ++j)
                M.at(i, j) = F.add(i == j ? F.one() : F.zero(), F.mul(lam_i, w[j]));
        }
        bool odd = __builtin_popcountll(mask) & 1;
        terms.emplace_back(odd ? K.neg(K.one()) : K.one(), GroupElement::make(std::move(M)));
    }
    out.xi = GroupAlgebraElement<F2>::make(K, std::move(terms));

    const auto& gi = grassmann_index(F, in.n, in.r, cfg);
    out.annihilated = true;
    for (std::size_t i = 1; i <= N; ++i) {
        auto e = ModuleVector<F2>::unit(K, gi, gi.index_of(in.L[i]));
        if (!apply_algebra(e, out.xi).is_zero()) out.annihilated = false;
    }

    out.xi_L0 = apply_algebra(ModuleVector<F2>::unit(K, gi, gi.index_of(in.L[0])), out.xi);

    // the displayed image form: L_0 (1 + xi_I) = (L_0 ∩ ker lam_I) + F(v + lam_I(v) w),
    // checked exactly wherever lam_I(v) != 0; supports must agree either way
    std::set<std::size_t> actual_support, predicted_support;
    for (std::size_t idx = 0; idx < gi.size(); ++idx)
        if (!K.is_zero(out.xi_L0.coeffs[idx])) actual_support.insert(idx);
    bool formulas_ok = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << N); ++mask) {
        // actual image subspace of L_0 under 1 + xi_I
        Mat<FiniteField> img(F, in.r, in.n);
        for (std::uint32_t row = 0; row < in.r; ++row) {
            std::vector<std::uint32_t> x(in.n);
            for (std::uint32_t j = 0; j < in.n; ++j) x[j] = in.L[0].at(row, j);
            std::uint32_t lx = lam_of(mask, x);
            for (std::uint32_t j = 0; j < in.n; ++j)
                img.at(row, j) = F.add(x[j], F.mul(lx, w[j]));
        }
        auto actual = canonicalize(F, in.n, img);
        predicted_support.insert(gi.index_of(actual));

        std::uint32_t lv = lam_of(mask, v);
        if (lv == 0) continue;  // degenerate for the displayed formula
        // L_0 ∩ ker lam_I: coefficient rows x with lam_I(x * B) = 0
        Mat<FiniteField> cvec(F, 1, in.r);
        for (std::uint32_t row = 0; row < in.r; ++row) {
            std::vector<std::uint32_t> x(in.n);
            for (std::uint32_t j = 0; j < in.n; ++j) x[j] = in.L[0].at(row, j);
            cvec.at(0, row) = lam_of(mask, x);
        }
        auto coef_kernel = kernel_basis(cvec);  // (r-1) x r
        Mat<FiniteField> formula(F, coef_kernel.rows + 1, in.n);
        for (std::size_t t = 0; t < coef_kernel.rows; ++t)
            for (std::uint32_t row = 0; row < in.r; ++row) {
                auto c = coef_kernel.at(t, row);
                if (F.is_zero(c)) continue;
                for (std::uint32_t j = 0; j < in.n; ++j)
                    formula.at(t, j) = F.add(formula.at(t, j), F.mul(c, in.L[0].at(row, j)));
            }
        for (std::uint32_t j = 0; j < in.n; ++j)
            formula.at(coef_kernel.rows, j) = F.add(v[j], F.mul(lv, w[j]));
        if (!(canonicalize(F, in.n, formula) == actual)) formulas_ok = false;
    }
    out.image_support_ok = formulas_ok &&
                           std::includes(predicted_support.begin(), predicted_support.end(),
                                         actual_support.begin(), actual_support.end());
    return out;
}

/// For r = 1: mapping v -> eps_0 and w -> eps_1 turns Xi(alpha) into
/// a_0 * gamma_N((lam_i(v))_i). Verified exactly.
template <FieldLike F2>
bool xi_r1_reduction_check(const XiInput<F2>& in, const XiBuildResult<F2>& built,
                           const Config& cfg = default_config()) {
    const F2& K = *in.K;
    const FiniteField& F = *in.Fq;
    require(in.r == 1, Errc::PreconditionViolated, "reduction applies to the line case");
    require(built.status == XiStatus::Ok, Errc::PreconditionViolated, "needs a successful build");
    std::size_t N = in.L.size() - 1;

    // g: v -> eps_0, w -> eps_1 via the inverse of the completed basis (v, w, ...)
    Mat<FiniteField> base(F, 2, in.n);
    for (std::uint32_t j = 0; j < in.n; ++j) {
        base.at(0, j) = built.v[j];
        base.at(1, j) = built.w[j];
    }
    auto tail = detail::complement_rows(F, in.n, base,
                                        canonicalize(F, in.n, Mat<FiniteField>::identity(F, in.n)));
    Mat<FiniteField> C(F, in.n, in.n);
    for (std::uint32_t j = 0; j < in.n; ++j) {
        C.at(0, j) = built.v[j];
        C.at(1, j) = built.w[j];
    }
    for (std::size_t k = 0; k < tail.size(); ++k)
        for (std::uint32_t j = 0; j < in.n; ++j) C.at(2 + k, j) = tail[k][j];
    auto g = GroupElement::make(inverse(C));

    GammaSpec spec;
    spec.F = &F;
    spec.n = in.n;
    spec.r = 1;
    spec.U = zero_subspace(F, in.n);
    spec.e0.assign(in.n, 0);
    spec.e1.assign(in.n, 0);
    spec.e0[0] = F.one();
    spec.e1[1] = F.one();
    for (std::size_t i = 0; i < N; ++i) {
        std::uint32_t t = 0;
        for (std::uint32_t j = 0; j < in.n; ++j)
            t = F.add(t, F.mul(built.lams[i][j], built.v[j]));
        spec.ts.push_back(t);
    }

    const auto& gi = grassmann_index(F, in.n, 1, cfg);
    ModuleVector<F2> alpha(K, gi);
    for (std::size_t i = 0; i < in.L.size(); ++i)
        alpha.add_at(gi.index_of(in.L[i]), in.a[i]);

    auto lhs = apply_group(apply_algebra(alpha, built.xi), g);
    auto rhs = gamma(K, spec, std::uint32_t(N), cfg).scaled(in.a[0]);
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// The group algebra of the translation group of the affine line acting on
// K[P(V)], dim V = 2: beta^{p-1} alpha = a_1^p ([x_1] - [O]).
// ---------------------------------------------------------------------------

/// Group element fixing `fixed_rows` pointwise and sending mover -> mover + delta.
inline GroupElement translation_element(const FiniteField& F, const Mat<FiniteField>& fixed_rows,
                                        const std::vector<std::uint32_t>& mover,
                                        const std::vector<std::uint32_t>& delta) {
    std::uint32_t n = std::uint32_t(fixed_rows.cols);
    Mat<FiniteField> C(F, fixed_rows.rows + 1, n);
    Mat<FiniteField> Cp(F, fixed_rows.rows + 1, n);
    for (std::size_t i = 0; i < fixed_rows.rows; ++i)
        for (std::uint32_t j = 0; j < n; ++j) Cp.at(i, j) = C.at(i, j) = fixed_rows.at(i, j);
    for (std::uint32_t j = 0; j < n; ++j) {
        C.at(fixed_rows.rows, j) = mover[j];
        Cp.at(fixed_rows.rows, j) = F.add(mover[j], delta[j]);
    }
    return GroupElement::make(inverse(C) * Cp);
}

template <FieldLike F2>
bool beta_power_identity(const F2& K, const FiniteField& Fq,
                         const std::vector<std::size_t>& points,
                         const std::vector<typename F2::value_type>& a, std::size_t origin,
                         const Config& cfg = default_config()) {
    using V = typename F2::value_type;
    static_assert(!std::is_same_v<F2, RationalField>, "needs positive characteristic");
    const auto& KF = static_cast<const FiniteField&>(K);
    std::uint32_t p = Fq.characteristic();
    require(KF.characteristic() == p, Errc::PreconditionViolated,
            "coefficients must live in the same characteristic");
    require(points.size() == a.size() && !points.empty(), Errc::PreconditionViolated,
            "points and coefficients must align");
    const auto& gi = grassmann_index(Fq, 2, 1, cfg);
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            require(points[i] != points[j], Errc::PreconditionViolated, "points must be distinct");
    require(origin != points[0], Errc::PreconditionViolated, "origin must differ from x_1");
    {
        V s = K.zero();
        for (const auto& c : a) s = K.add(s, c);
        require(K.is_zero(s), Errc::PreconditionViolated, "coefficients must sum to zero");
    }

    // coordinates: x_1 at infinity, origin at 0; point with lift t*vinf + v0
    // has affine coordinate t
    const auto& vinf_row = gi.table[points[0]];
    const auto& v0_row = gi.table[origin];
    Mat<FiniteField> C(Fq, 2, 2);
    for (std::uint32_t j = 0; j < 2; ++j) {
        C.at(0, j) = vinf_row.at(0, j);
        C.at(1, j) = v0_row.at(0, j);
    }
    auto Cinv = inverse(C);
    auto coord_of = [&](std::size_t idx) -> std::uint32_t {
        // solve lift = alpha*vinf + beta*v0, return alpha/beta
        Mat<FiniteField> lift(Fq, 1, 2);
        lift.at(0, 0) = gi.table[idx].at(0, 0);
        lift.at(0, 1) = gi.table[idx].at(0, 1);
        auto sol = lift * Cinv;
        require(!Fq.is_zero(sol.at(0, 1)), Errc::InternalError, "point at infinity");
        return Fq.div(sol.at(0, 0), sol.at(0, 1));
    };

    // beta in the group algebra K[F_q], then beta^{p-1} by convolution
    std::vector<V> beta(Fq.q(), K.zero());
    for (std::size_t i = 1; i < points.size(); ++i)
        beta[coord_of(points[i])] = K.add(beta[coord_of(points[i])], a[i]);
    std::vector<V> power(Fq.q(), K.zero());
    power[0] = K.one();
    for (std::uint32_t rep = 0; rep + 1 < p; ++rep) {
        std::vector<V> next(Fq.q(), K.zero());
        for (std::uint32_t s = 0; s < Fq.q(); ++s) {
            if (K.is_zero(power[s])) continue;
            for (std::uint32_t t = 0; t < Fq.q(); ++t) {
                if (K.is_zero(beta[t])) continue;
                std::uint32_t u = Fq.add(s, t);
                next[u] = K.add(next[u], K.mul(power[s], beta[t]));
            }
        }
        power = std::move(next);
    }

    // act on alpha through the translations t: v0 -> v0 + t*vinf
    std::vector<std::pair<V, GroupElement>> terms;
    Mat<FiniteField> fixed(Fq, 1, 2);
    fixed.at(0, 0) = vinf_row.at(0, 0);
    fixed.at(0, 1) = vinf_row.at(0, 1);
    std::vector<std::uint32_t> mover{v0_row.at(0, 0), v0_row.at(0, 1)};
    for (std::uint32_t t = 0; t < Fq.q(); ++t) {
        if (K.is_zero(power[t])) continue;
        std::vector<std::uint32_t> delta{Fq.mul(t, fixed.at(0, 0)), Fq.mul(t, fixed.at(0, 1))};
        terms.emplace_back(power[t], translation_element(Fq, fixed, mover, delta));
    }
    auto beta_pw = GroupAlgebraElement<F2>::make(K, std::move(terms));

    ModuleVector<F2> alpha(K, gi);
    for (std::size_t i = 0; i < points.size(); ++i) alpha.add_at(points[i], a[i]);
    auto lhs = apply_algebra(alpha, beta_pw);

    V a1p = K.one();
    for (std::uint32_t i = 0; i < p; ++i) a1p = K.mul(a1p, a[0]);
    ModuleVector<F2> rhs(K, gi);
    rhs.add_at(points[0], a1p);
    rhs.add_at(origin, K.neg(a1p));
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Summing the translation group of the affine space complementary to a
// hyperplane H: the affine part becomes a multiple of the off-H orbit sum and
// the H part is scaled by q^{dim P(V)}.
// ---------------------------------------------------------------------------
template <FieldLike F2>
bool translation_sum_identity(const F2& K, const FiniteField& Fq, std::uint32_t dimV,
                              const Subspace& H, const ModuleVector<F2>& alpha,
                              const Config& cfg = default_config()) {
    using V = typename F2::value_type;
    require(H.F == &Fq && H.n == dimV && H.r == dimV - 1, Errc::PreconditionViolated,
            "H must be a hyperplane of the ambient space");
    const auto& gi = grassmann_index(Fq, dimV, 1, cfg);
    require(alpha.index == &gi, Errc::PreconditionViolated, "alpha over the wrong module");

    // pick a vector off H to translate
    std::vector<std::uint32_t> mover(dimV, 0);
    {
        bool found = false;
        std::vector<std::uint32_t> cand(dimV, 0);
        while (!found) {
            std::size_t k = 0;
            while (k < cand.size()) {
                if (++cand[k] < Fq.q()) break;
                cand[k] = 0;
                ++k;
            }
            require(k != cand.size(), Errc::InternalError, "no vector off the hyperplane");
            if (!H.contains(cand)) {
                mover = cand;
                found = true;
            }
        }
    }

    auto H_rows = H.as_matrix();
    std::vector<std::pair<V, GroupElement>> terms;
    for (const auto& u : detail::subspace_vectors(H)) {
        terms.emplace_back(K.one(), translation_element(Fq, H_rows, mover, u));
    }
    auto total = GroupAlgebraElement<F2>::make(K, std::move(terms));
    auto lhs = apply_algebra(alpha, total);

    // right side from the statement
    V off_sum = K.zero();
    for (std::size_t i = 0; i < gi.size(); ++i) {
        std::vector<std::uint32_t> lift(dimV);
        for (std::uint32_t j = 0; j < dimV; ++j) lift[j] = gi.table[i].at(0, j);
        if (!H.contains(lift)) off_sum = K.add(off_sum, alpha.coeffs[i]);
    }
    BigInt qpow = BigInt::pow(BigInt(std::int64_t(Fq.q())), dimV - 1);
    V qd = value_from_bigint(K, qpow);
    ModuleVector<F2> rhs(K, gi);
    for (std::size_t i = 0; i < gi.size(); ++i) {
        std::vector<std::uint32_t> lift(dimV);
        for (std::uint32_t j = 0; j < dimV; ++j) lift[j] = gi.table[i].at(0, j);
        if (H.contains(lift)) {
            rhs.coeffs[i] = K.mul(qd, alpha.coeffs[i]);
        } else {
            rhs.coeffs[i] = off_sum;
        }
    }
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// The (q-1)-th power map into the symmetric algebra: [x] -> lift(x)^{q-1}.
// Restricted to the degree-zero submodule; a kernel vector is a concrete
// non-simplicity witness when dim V > 2.
// ---------------------------------------------------------------------------
struct SymPowerResult {
    Mat<FiniteField> matrix;  // codomain (monomials) x domain (degree-zero basis)
    std::size_t domain_dim = 0, codomain_dim = 0;
    bool injective = false;
    std::vector<std::uint32_t> kernel_coords;  // over the degree-zero basis, empty if injective
};

inline SymPowerResult sym_power_factor(const FiniteField& K, const FiniteField& Fq,
                                       std::uint32_t dimV, const Config& cfg = default_config()) {
    require(K.characteristic() == Fq.characteristic() && K.e() % Fq.e() == 0,
            Errc::PreconditionViolated, "coefficients must extend the base field");
    require(dimV >= 2, Errc::BadParams, "need dim V >= 2");
    std::uint32_t q = Fq.q(), deg = q - 1;
    auto emb = Fq.embedding_into(K);

    // monomial exponents with |m| = q - 1, lexicographic
    std::vector<std::vector<std::uint32_t>> monomials;
    std::vector<std::uint32_t> expo(dimV, 0);
    std::function<void(std::uint32_t, std::uint32_t)> emit = [&](std::uint32_t pos,
                                                                 std::uint32_t left) {
        if (pos + 1 == dimV) {
            expo[pos] = left;
            monomials.push_back(expo);
            return;
        }
        for (std::uint32_t take = 0; take <= left; ++take) {
            expo[pos] = take;
            emit(pos + 1, left - take);
        }
    };
    emit(0, deg);

    const auto& gi = grassmann_index(Fq, dimV, 1, cfg);
    std::size_t N = gi.size();

    // full map on K[P(V)], then restricted to the degree-zero basis e_i - e_{N-1}
    Mat<FiniteField> full(K, monomials.size(), N);
    for (std::size_t c = 0; c < N; ++c) {
        for (std::size_t rmono = 0; rmono < monomials.size(); ++rmono) {
            const auto& m = monomials[rmono];
            BigInt multi = binomial(deg, m[0]);
            {
                std::uint32_t used = m[0];
                for (std::uint32_t i = 1; i < dimV; ++i) {
                    multi = multi * binomial(deg - used, m[i]);
                    used += m[i];
                }
            }
            std::uint32_t entry = value_from_bigint(K, multi);
            for (std::uint32_t i = 0; i < dimV && entry != 0; ++i) {
                std::uint32_t x = emb[gi.table[c].at(0, i)];
                for (std::uint32_t t = 0; t < m[i]; ++t) entry = K.mul(entry, x);
            }
            full.at(rmono, c) = entry;
        }
    }

    SymPowerResult res;
    res.codomain_dim = monomials.size();
    res.domain_dim = N - 1;
    res.matrix = Mat<FiniteField>(K, monomials.size(), N - 1);
    for (std::size_t rmono = 0; rmono < monomials.size(); ++rmono)
        for (std::size_t c = 0; c + 1 < N; ++c)
            res.matrix.at(rmono, c) = K.sub(full.at(rmono, c), full.at(rmono, N - 1));

    auto ker = kernel_basis(res.matrix);
    res.injective = ker.rows == 0;
    if (!res.injective) {
        res.kernel_coords.resize(N - 1);
        for (std::size_t c = 0; c + 1 < N; ++c) res.kernel_coords[c] = ker.at(0, c);
    }
    return res;
}

/// Kernel witness as an element of the degree-zero submodule of K[P(V)].
inline ModuleVector<FiniteField> sym_power_kernel_vector(const FiniteField& K,
                                                         const FiniteField& Fq, std::uint32_t dimV,
                                                         const SymPowerResult& res,
                                                         const Config& cfg = default_config()) {
    require(!res.injective, Errc::PreconditionViolated, "map is injective");
    const auto& gi = grassmann_index(Fq, dimV, 1, cfg);
    std::size_t N = gi.size();
    ModuleVector<FiniteField> v(K, gi);
    for (std::size_t c = 0; c + 1 < N; ++c) {
        auto coef = res.kernel_coords[c];
        if (K.is_zero(coef)) continue;
        v.coeffs[c] = K.add(v.coeffs[c], coef);
        v.coeffs[N - 1] = K.sub(v.coeffs[N - 1], coef);
    }
    return v;
}

}  // namespace grassmod

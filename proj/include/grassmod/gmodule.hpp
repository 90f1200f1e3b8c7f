#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grassmod/incidence.hpp"
#include "grassmod/rng.hpp"

namespace grassmod {

template <FieldLike F>
typename F::value_type value_from_bigint(const F& K, const BigInt& b) {
    if constexpr (std::is_same_v<F, RationalField>) {
        return Rational(b);
    } else {
        BigInt m = b % BigInt(K.characteristic());
        long long v = m.to_int64();
        return K.from_int(v);
    }
}

// ---------------------------------------------------------------------------
// ModuleVector: an element of K[Gr(r, F_q^n)] as a dense coefficient vector
// over the canonical enumeration.
// ---------------------------------------------------------------------------
template <FieldLike F>
struct ModuleVector {
    using V = typename F::value_type;

    const F* K = nullptr;
    const GrassmannIndex* index = nullptr;
    std::vector<V> coeffs;

    ModuleVector() = default;
    ModuleVector(const F& k, const GrassmannIndex& gi)
        : K(&k), index(&gi), coeffs(gi.size(), k.zero()) {}

    static ModuleVector unit(const F& k, const GrassmannIndex& gi, std::size_t i) {
        ModuleVector v(k, gi);
        v.coeffs[i] = k.one();
        return v;
    }

    bool is_zero() const {
        for (const auto& c : coeffs)
            if (!K->is_zero(c)) return false;
        return true;
    }

    std::size_t support_size() const {
        std::size_t n = 0;
        for (const auto& c : coeffs)
            if (!K->is_zero(c)) ++n;
        return n;
    }

    void add_at(std::size_t i, const V& v) { coeffs[i] = K->add(coeffs[i], v); }

    friend ModuleVector operator+(const ModuleVector& a, const ModuleVector& b) {
        require(a.index == b.index, Errc::AmbientMismatch, "module vectors over different indices");
        ModuleVector r = a;
        for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = a.K->add(a.coeffs[i], b.coeffs[i]);
        return r;
    }

    friend ModuleVector operator-(const ModuleVector& a, const ModuleVector& b) {
        require(a.index == b.index, Errc::AmbientMismatch, "module vectors over different indices");
        ModuleVector r = a;
        for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = a.K->sub(a.coeffs[i], b.coeffs[i]);
        return r;
    }

    ModuleVector scaled(const V& c) const {
        ModuleVector r = *this;
        for (auto& x : r.coeffs) x = K->mul(x, c);
        return r;
    }

    friend bool operator==(const ModuleVector& a, const ModuleVector& b) {
        return a.index == b.index && a.coeffs == b.coeffs;
    }
};

/// Sum of coefficients; the kernel is the degree-zero submodule.
template <FieldLike F>
typename F::value_type augmentation(const ModuleVector<F>& v) {
    auto s = v.K->zero();
    for (const auto& c : v.coeffs) s = v.K->add(s, c);
    return s;
}

/// The nondegenerate symmetric form with the subspace classes orthonormal.
template <FieldLike F>
typename F::value_type pairing(const ModuleVector<F>& u, const ModuleVector<F>& v) {
    require(u.index == v.index, Errc::ShapeMismatch, "pairing over different modules");
    auto s = u.K->zero();
    for (std::size_t i = 0; i < u.coeffs.size(); ++i)
        s = u.K->add(s, u.K->mul(u.coeffs[i], v.coeffs[i]));
    return s;
}

template <FieldLike F>
ModuleVector<F> apply_permutation(const ModuleVector<F>& v, std::span<const std::uint32_t> perm) {
    ModuleVector<F> out(*v.K, *v.index);
    for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
        if (!v.K->is_zero(v.coeffs[i])) out.coeffs[perm[i]] = v.coeffs[i];
    }
    return out;
}

/// Right action: coefficients ride along L -> L*g.
template <FieldLike F>
ModuleVector<F> apply_group(const ModuleVector<F>& v, const GroupElement& g) {
    require(v.index->F == g.mat.field && v.index->n == g.n(), Errc::AmbientMismatch,
            "group element over wrong ambient");
    auto perm = action_permutation(*v.index, g);
    return apply_permutation(v, perm);
}

// ---------------------------------------------------------------------------
// Group algebra elements: finite formal K-combinations of invertible matrices,
// kept canonical (terms sorted, distinct, nonzero).
// ---------------------------------------------------------------------------
template <FieldLike F>
struct GroupAlgebraElement {
    using V = typename F::value_type;

    const F* K = nullptr;
    std::vector<std::pair<V, GroupElement>> terms;

    static GroupAlgebraElement make(const F& k, std::vector<std::pair<V, GroupElement>> raw) {
        GroupAlgebraElement x;
        x.K = &k;
        std::sort(raw.begin(), raw.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });
        for (auto& [c, g] : raw) {
            if (!x.terms.empty() && x.terms.back().second == g) {
                x.terms.back().first = k.add(x.terms.back().first, c);
            } else {
                x.terms.emplace_back(std::move(c), std::move(g));
            }
        }
        std::erase_if(x.terms, [&](const auto& t) { return k.is_zero(t.first); });
        return x;
    }

    std::size_t size() const { return terms.size(); }
};

template <FieldLike F>
ModuleVector<F> apply_algebra(const ModuleVector<F>& v, const GroupAlgebraElement<F>& x) {
    ModuleVector<F> out(*v.K, *v.index);
    for (const auto& [c, g] : x.terms) {
        auto perm = action_permutation(*v.index, g);
        for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
            if (!v.K->is_zero(v.coeffs[i]))
                out.coeffs[perm[i]] = v.K->add(out.coeffs[perm[i]], v.K->mul(c, v.coeffs[i]));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Incremental row space in reduced echelon form. insert() keeps all rows
// mutually reduced with unit pivots, so basis_matrix() is the canonical RREF
// of the accumulated span at any moment.
// ---------------------------------------------------------------------------
template <FieldLike F>
class RowSpace {
public:
    using V = typename F::value_type;

    RowSpace(const F& k, std::size_t width) : K_(&k), width_(width) {}

    std::size_t dim() const { return rows_.size(); }
    std::size_t width() const { return width_; }

    void reduce(std::vector<V>& v) const {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const V& c = v[pivots_[k]];
            if (K_->is_zero(c)) continue;
            V factor = c;  // pivots are 1
            v[pivots_[k]] = K_->zero();
            const auto& row = rows_[k];
            for (std::size_t j = pivots_[k] + 1; j < width_; ++j) {
                if (!K_->is_zero(row[j])) v[j] = K_->sub(v[j], K_->mul(factor, row[j]));
            }
        }
    }

    bool contains(std::vector<V> v) const {
        reduce(v);
        for (const auto& x : v)
            if (!K_->is_zero(x)) return false;
        return true;
    }

    /// Adds v to the span. Returns the stored reduced row, or nullopt if v was
    /// already in the span.
    std::optional<std::vector<V>> insert(std::vector<V> v) {
        require(v.size() == width_, Errc::ShapeMismatch, "row width mismatch");
        reduce(v);
        std::size_t piv = width_;
        for (std::size_t j = 0; j < width_; ++j) {
            if (!K_->is_zero(v[j])) {
                piv = j;
                break;
            }
        }
        if (piv == width_) return std::nullopt;
        if (!(v[piv] == K_->one())) {
            V inv = K_->inv(v[piv]);
            for (std::size_t j = piv; j < width_; ++j)
                if (!K_->is_zero(v[j])) v[j] = K_->mul(v[j], inv);
        }
        // clear the new pivot column in existing rows
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            V c = rows_[k][piv];
            if (K_->is_zero(c)) continue;
            rows_[k][piv] = K_->zero();
            for (std::size_t j = piv + 1; j < width_; ++j)
                if (!K_->is_zero(v[j])) rows_[k][j] = K_->sub(rows_[k][j], K_->mul(c, v[j]));
        }
        std::size_t pos = std::size_t(std::lower_bound(pivots_.begin(), pivots_.end(), piv) -
                                      pivots_.begin());
        pivots_.insert(pivots_.begin() + std::ptrdiff_t(pos), piv);
        rows_.insert(rows_.begin() + std::ptrdiff_t(pos), v);
        return v;
    }

    Mat<F> basis_matrix() const {
        Mat<F> m(*K_, rows_.size(), width_);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t j = 0; j < width_; ++j) m.at(i, j) = rows_[i][j];
        return m;
    }

private:
    const F* K_;
    std::size_t width_;
    std::vector<std::vector<V>> rows_;
    std::vector<std::size_t> pivots_;
};

// ---------------------------------------------------------------------------
// Submodule: a G-stable subspace of K[Gr], basis rows in RREF.
// ---------------------------------------------------------------------------
template <FieldLike F>
struct Submodule {
    using V = typename F::value_type;

    const F* K = nullptr;
    const GrassmannIndex* index = nullptr;
    Mat<F> basis;

    std::size_t dim() const { return basis.rows; }

    static Submodule full(const F& k, const GrassmannIndex& gi) {
        Submodule s;
        s.K = &k;
        s.index = &gi;
        s.basis = Mat<F>::identity(k, gi.size());
        return s;
    }

    static Submodule from_rows(const F& k, const GrassmannIndex& gi, const Mat<F>& rows) {
        Submodule s;
        s.K = &k;
        s.index = &gi;
        s.basis = rref(rows).mat;
        // drop zero rows
        std::size_t nz = 0;
        for (std::size_t i = 0; i < s.basis.rows; ++i) {
            bool zero = true;
            for (std::size_t j = 0; j < s.basis.cols; ++j)
                if (!k.is_zero(s.basis.at(i, j))) {
                    zero = false;
                    break;
                }
            if (!zero) ++nz;
        }
        if (nz != s.basis.rows) {
            Mat<F> trimmed(k, nz, s.basis.cols);
            for (std::size_t i = 0; i < nz; ++i)
                for (std::size_t j = 0; j < s.basis.cols; ++j) trimmed.at(i, j) = s.basis.at(i, j);
            s.basis = std::move(trimmed);
        }
        return s;
    }

    ModuleVector<F> row_vector(std::size_t i) const {
        ModuleVector<F> v(*K, *index);
        for (std::size_t j = 0; j < basis.cols; ++j) v.coeffs[j] = basis.at(i, j);
        return v;
    }

    bool contains(const ModuleVector<F>& v) const {
        // basis rows are RREF with unit pivots, so one reduction pass suffices
        std::vector<V> w = v.coeffs;
        for (std::size_t i = 0; i < basis.rows; ++i) {
            std::size_t piv = 0;
            while (piv < basis.cols && K->is_zero(basis.at(i, piv))) ++piv;
            if (piv == basis.cols) continue;
            const V c = w[piv];
            if (K->is_zero(c)) continue;
            for (std::size_t j = piv; j < basis.cols; ++j)
                if (!K->is_zero(basis.at(i, j))) w[j] = K->sub(w[j], K->mul(c, basis.at(i, j)));
        }
        for (const auto& x : w)
            if (!K->is_zero(x)) return false;
        return true;
    }

    /// Re-verify stability: every basis row image under every generator stays
    /// inside the row space.
    bool verify_closed(std::span<const GroupElement> gens) const {
        RowSpace<F> rs(*K, basis.cols);
        for (std::size_t i = 0; i < basis.rows; ++i) {
            std::vector<V> row(basis.a.begin() + std::ptrdiff_t(i * basis.cols),
                               basis.a.begin() + std::ptrdiff_t((i + 1) * basis.cols));
            rs.insert(std::move(row));
        }
        for (const auto& g : gens) {
            auto perm = action_permutation(*index, g);
            for (std::size_t i = 0; i < basis.rows; ++i) {
                std::vector<V> img(basis.cols, K->zero());
                for (std::size_t j = 0; j < basis.cols; ++j)
                    if (!K->is_zero(basis.at(i, j))) img[perm[j]] = basis.at(i, j);
                if (!rs.contains(std::move(img))) return false;
            }
        }
        return true;
    }
};

/// Smallest G-stable subspace containing the seeds: worklist closure over the
/// generator permutations with incremental reduction. The permutation variant
/// lets bulk callers (exhaustive certification loops) pay for the generator
/// action once.
template <FieldLike F>
Submodule<F> spin_with_permutations(std::span<const ModuleVector<F>> seeds,
                                    const std::vector<std::vector<std::uint32_t>>& perms,
                                    const Config& cfg = default_config()) {
    require(!seeds.empty(), Errc::BadParams, "spin needs at least one seed");
    const F& K = *seeds[0].K;
    const GrassmannIndex& gi = *seeds[0].index;

    RowSpace<F> acc(K, gi.size());
    std::deque<std::vector<typename F::value_type>> work;
    for (const auto& s : seeds) {
        require(s.index == &gi && s.K == &K, Errc::AmbientMismatch, "seeds over different modules");
        if (auto row = acc.insert(s.coeffs)) work.push_back(std::move(*row));
    }
    while (!work.empty()) {
        auto v = std::move(work.front());
        work.pop_front();
        for (const auto& perm : perms) {
            std::vector<typename F::value_type> img(v.size(), K.zero());
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!K.is_zero(v[i])) img[perm[i]] = v[i];
            if (auto row = acc.insert(std::move(img))) {
                require(acc.dim() <= cfg.max_spin_dim, Errc::TooLarge, "spin dimension cap exceeded");
                work.push_back(std::move(*row));
            }
        }
    }

    Submodule<F> out;
    out.K = &K;
    out.index = &gi;
    out.basis = acc.basis_matrix();
    return out;
}

template <FieldLike F>
std::vector<std::vector<std::uint32_t>> action_permutations(const GrassmannIndex& gi,
                                                            std::span<const GroupElement> gens) {
    std::vector<std::vector<std::uint32_t>> perms;
    perms.reserve(gens.size());
    for (const auto& g : gens) perms.push_back(action_permutation(gi, g));
    return perms;
}

template <FieldLike F>
Submodule<F> spin(std::span<const ModuleVector<F>> seeds, std::span<const GroupElement> gens,
                  const Config& cfg = default_config()) {
    require(!seeds.empty(), Errc::BadParams, "spin needs at least one seed");
    auto perms = action_permutations<F>(*seeds[0].index, gens);
    return spin_with_permutations(seeds, perms, cfg);
}

template <FieldLike F>
Submodule<F> spin_one(const ModuleVector<F>& seed, std::span<const GroupElement> gens,
                      const Config& cfg = default_config()) {
    return spin(std::span<const ModuleVector<F>>(&seed, 1), gens, cfg);
}

template <FieldLike F>
Submodule<F> spin_one_with_permutations(const ModuleVector<F>& seed,
                                        const std::vector<std::vector<std::uint32_t>>& perms,
                                        const Config& cfg = default_config()) {
    return spin_with_permutations(std::span<const ModuleVector<F>>(&seed, 1), perms, cfg);
}

/// RREF basis of the augmentation kernel (rows e_i - e_{N-1}).
template <FieldLike F>
Submodule<F> augmentation_kernel(const F& K, const GrassmannIndex& gi) {
    std::size_t N = gi.size();
    Submodule<F> s;
    s.K = &K;
    s.index = &gi;
    s.basis = Mat<F>(K, N - 1, N);
    for (std::size_t i = 0; i + 1 < N; ++i) {
        s.basis.at(i, i) = K.one();
        s.basis.at(i, N - 1) = K.neg(K.one());
    }
    return s;
}

// ---------------------------------------------------------------------------
// Hom spaces between permutation modules. An equivariant matrix X must
// satisfy X[g.i, g.j] = X[i, j] for every generator g, so the solution space
// of the equivariance system is spanned by the indicator matrices of the
// orbits of G on target x source pairs; its dimension is the orbit count.
// ---------------------------------------------------------------------------
struct HomSpace {
    std::size_t rows = 0, cols = 0;  // |Gr(r1)|, |Gr(r0)|
    std::size_t dim = 0;             // number of pair orbits
    std::vector<std::int32_t> orbit_of;  // rows*cols, orbit id per pair
    bool orbits_match_meet_classes = false;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> indicator(std::size_t k) const {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> coo;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (orbit_of[i * cols + j] == std::int32_t(k)) coo.emplace_back(i, j);
        return coo;
    }
};

inline HomSpace hom_space(const FiniteField& F, std::uint32_t n, std::uint32_t r0, std::uint32_t r1,
                          const Config& cfg = default_config()) {
    const auto& src = grassmann_index(F, n, r0, cfg);
    const auto& tgt = grassmann_index(F, n, r1, cfg);
    auto gens = gl_generators(F, n);

    std::vector<std::vector<std::uint32_t>> src_perm, tgt_perm;
    for (const auto& g : gens) {
        src_perm.push_back(action_permutation(src, g));
        tgt_perm.push_back(action_permutation(tgt, g));
    }

    HomSpace hs;
    hs.rows = tgt.size();
    hs.cols = src.size();
    hs.orbit_of.assign(hs.rows * hs.cols, -1);
    std::int32_t next = 0;
    std::vector<std::size_t> stack;
    for (std::size_t seed = 0; seed < hs.orbit_of.size(); ++seed) {
        if (hs.orbit_of[seed] != -1) continue;
        hs.orbit_of[seed] = next;
        stack.push_back(seed);
        while (!stack.empty()) {
            std::size_t cur = stack.back();
            stack.pop_back();
            std::size_t i = cur / hs.cols, j = cur % hs.cols;
            for (std::size_t g = 0; g < gens.size(); ++g) {
                std::size_t to = std::size_t(tgt_perm[g][i]) * hs.cols + src_perm[g][j];
                if (hs.orbit_of[to] == -1) {
                    hs.orbit_of[to] = next;
                    stack.push_back(to);
                }
            }
        }
        ++next;
    }
    hs.dim = std::size_t(next);

    // independent geometric cross-check: orbits <-> meet-dimension classes
    std::map<std::int32_t, std::uint32_t> orbit_s;
    std::map<std::uint32_t, std::int32_t> s_orbit;
    bool ok = true;
    for (std::size_t i = 0; i < hs.rows && ok; ++i) {
        for (std::size_t j = 0; j < hs.cols && ok; ++j) {
            std::uint32_t s = intersection_dim(tgt.table[i], src.table[j]);
            std::int32_t o = hs.orbit_of[i * hs.cols + j];
            auto it = orbit_s.find(o);
            if (it == orbit_s.end())
                orbit_s[o] = s;
            else if (it->second != s)
                ok = false;
            auto jt = s_orbit.find(s);
            if (jt == s_orbit.end())
                s_orbit[s] = o;
            else if (jt->second != o)
                ok = false;
        }
    }
    hs.orbits_match_meet_classes = ok;
    return hs;
}

struct EndAlgebraResult {
    std::size_t dim = 0;
    bool commutative = false;
};

/// Dimension of the commuting algebra of the module plus a direct
/// commutativity check of every pair of incidence basis operators.
inline EndAlgebraResult end_algebra(const FiniteField& F, std::uint32_t n, std::uint32_t r,
                                    const Config& cfg = default_config()) {
    EndAlgebraResult res;
    res.dim = hom_space(F, n, r, r, cfg).dim;
    std::uint32_t sigma = sigma_lower_bound(n, r, r);
    std::vector<IncidenceOperator> family;
    for (std::uint32_t s = sigma; s <= r; ++s) family.push_back(build_eta(F, n, r, r, s, cfg));
    res.commutative = true;
    for (std::size_t a = 0; a < family.size() && res.commutative; ++a)
        for (std::size_t b = a + 1; b < family.size() && res.commutative; ++b)
            res.commutative = compose_counts(family[a], family[b]) == compose_counts(family[b], family[a]);
    return res;
}

// ---------------------------------------------------------------------------
// Semisimple decomposition as common eigenspaces of the commuting incidence
// family. Eigenvalues are located on the regular representation of the
// family's span (structure constants are exact intersection counts), then
// eigenspaces are split off by exact kernel computations.
// ---------------------------------------------------------------------------
template <FieldLike F>
struct Decomposition {
    std::vector<Submodule<F>> summands;
    // eigenvalue of eta_s on each summand, family listed by ascending s
    std::vector<std::uint32_t> family_s;
    std::vector<std::vector<typename F::value_type>> eigen_tuples;
};

namespace detail {

// characteristic polynomial of a small integer matrix, exact; coefficients
// returned lowest-degree-first, monic
inline std::vector<BigInt> charpoly_int(const std::vector<std::int64_t>& m, std::size_t d) {
    // Faddeev-LeVerrier: all divisions are exact
    std::vector<std::vector<BigInt>> M(d, std::vector<BigInt>(d, BigInt(0)));  // current power acc
    std::vector<std::vector<BigInt>> A(d, std::vector<BigInt>(d, BigInt(0)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) A[i][j] = BigInt(m[i * d + j]);
    std::vector<BigInt> coeff(d + 1, BigInt(0));
    coeff[d] = BigInt(1);
    // M_0 = 0, c_d = 1; iterate M_k = A*M_{k-1} + c_{d-k+1} I, c_{d-k} = -tr(A*M_k)/k
    for (std::size_t k = 1; k <= d; ++k) {
        // M = A*M + coeff[d-k+1] * I
        std::vector<std::vector<BigInt>> AM(d, std::vector<BigInt>(d, BigInt(0)));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t j = 0; j < d; ++j) AM[i][j] += A[i][l] * M[l][j];
        for (std::size_t i = 0; i < d; ++i) AM[i][i] += coeff[d - k + 1];
        M = std::move(AM);
        // trace of A*M
        BigInt tr(0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t l = 0; l < d; ++l) tr += A[i][l] * M[l][i];
        coeff[d - k] = -(tr / BigInt(std::int64_t(k)));
    }
    return coeff;
}

inline BigInt eval_poly(const std::vector<BigInt>& coeff, const BigInt& x) {
    BigInt acc(0);
    for (std::size_t i = coeff.size(); i-- > 0;) acc = acc * x + coeff[i];
    return acc;
}

}  // namespace detail

template <FieldLike F>
Decomposition<F> decompose_semisimple(const F& K, const FiniteField& Fq, std::uint32_t n,
                                      std::uint32_t r, const Config& cfg = default_config()) {
    using V = typename F::value_type;
    std::uint64_t q = Fq.q();

    // hypothesis: q^m - q nonzero in K for 2 <= m <= n+1
    for (std::uint32_t m = 2; m <= n + 1; ++m) {
        BigInt diff = BigInt::pow(BigInt(std::int64_t(q)), m) - BigInt(std::int64_t(q));
        if (K.is_zero(value_from_bigint(K, diff)))
            fail(Errc::HypothesisViolated,
                 "q^" + std::to_string(m) + " = q in " + K.label());
    }

    const auto& gi = grassmann_index(Fq, n, r, cfg);
    std::size_t N = gi.size();
    require(N <= cfg.max_spin_dim, Errc::TooLarge, "module dimension exceeds cap");

    std::uint32_t sigma = sigma_lower_bound(n, r, r);
    std::vector<IncidenceOperator> family;
    std::vector<std::uint32_t> family_s;
    for (std::uint32_t s = sigma; s <= r; ++s) {
        family.push_back(build_eta(Fq, n, r, r, s, cfg));
        family_s.push_back(s);
    }
    std::size_t d = family.size();

    // structure constants via one representative pair per meet class
    std::vector<std::size_t> rep(d, N * N);
    for (std::size_t i = 0; i < N && std::count(rep.begin(), rep.end(), N * N) > 0; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            std::uint32_t s = intersection_dim(gi.table[i], gi.table[j]);
            if (s >= sigma && rep[s - sigma] == N * N) rep[s - sigma] = i * N + j;
        }

    // regular representation M_s[u][t] with eta_s * eta_t = sum_u p^u_st eta_u
    std::vector<std::vector<std::int64_t>> regrep(d, std::vector<std::int64_t>(d * d, 0));
    for (std::size_t s = 0; s < d; ++s) {
        for (std::size_t t = 0; t < d; ++t) {
            auto prod = compose_counts(family[s], family[t]);
            for (std::size_t u = 0; u < d; ++u) regrep[s][u * d + t] = prod[rep[u]];
        }
    }

    // candidate eigenvalues of eta_s = roots of the regular representation's
    // characteristic polynomial (same root set as the minimal polynomial)
    std::vector<std::vector<V>> roots(d);
    std::vector<std::vector<BigInt>> charpolys(d);
    for (std::size_t s = 0; s < d; ++s) {
        charpolys[s] = detail::charpoly_int(regrep[s], d);
        if constexpr (std::is_same_v<F, RationalField>) {
            // integer roots only; bound by Gershgorin row sums of the regular rep
            std::int64_t bound = 0;
            for (std::size_t u = 0; u < d; ++u) {
                std::int64_t row = 0;
                for (std::size_t t = 0; t < d; ++t) row += std::abs(regrep[s][u * d + t]);
                bound = std::max(bound, row);
            }
            for (std::int64_t lam = -bound; lam <= bound; ++lam) {
                if (detail::eval_poly(charpolys[s], BigInt(lam)).is_zero())
                    roots[s].push_back(Rational(BigInt(lam)));
            }
        } else {
            require(K.characteristic() > 0, Errc::InternalError, "finite field expected");
            // scan the whole field, canonical element order
            std::vector<V> coeff;
            for (const auto& c : charpolys[s]) coeff.push_back(value_from_bigint(K, c));
            const auto& KF = static_cast<const FiniteField&>(K);
            for (std::uint32_t key = 0; key < KF.q(); ++key) {
                V x = KF.elements_in_order()[key];
                V acc = K.zero();
                for (std::size_t i = coeff.size(); i-- > 0;) acc = K.add(K.mul(acc, x), coeff[i]);
                if (K.is_zero(acc)) roots[s].push_back(x);
            }
        }
    }

    struct Space {
        Mat<F> basis;
        std::vector<V> tuple;
    };
    std::vector<Space> spaces;
    spaces.push_back(Space{Mat<F>::identity(K, N), {}});

    for (std::size_t s = 0; s < d; ++s) {
        const auto& eta = family[s];
        std::vector<Space> next;
        for (auto& sp : spaces) {
            std::size_t k = sp.basis.rows;
            // image rows: row_i * eta^T, i.e. (eta * row_i^T)^T column-summed
            Mat<F> image(K, k, N);
            for (std::size_t i = 0; i < k; ++i) {
                for (auto [rr, cc] : eta.coo) {
                    const V& v = sp.basis.at(i, cc);
                    if (!K.is_zero(v)) image.at(i, rr) = K.add(image.at(i, rr), v);
                }
            }
            std::size_t claimed = 0;
            for (const V& lam : roots[s]) {
                // solve x * (image - lam*basis) = 0 for coefficient rows x
                Mat<F> W(K, k, N);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < N; ++j)
                        W.at(i, j) = K.sub(image.at(i, j), K.mul(lam, sp.basis.at(i, j)));
                auto xs = kernel_basis(W.transpose());
                if (xs.rows == 0) continue;
                Mat<F> sub = xs * sp.basis;
                Space child;
                child.basis = rref(sub).mat;
                child.tuple = sp.tuple;
                child.tuple.push_back(lam);
                claimed += xs.rows;
                next.push_back(std::move(child));
            }
            if (claimed != k)
                fail(Errc::NotDiagonalizable,
                     "incidence operator not diagonalizable over " + K.label());
        }
        spaces = std::move(next);
    }

    std::size_t expected = std::size_t(std::min(r, n - r)) + 1;
    if (spaces.size() != expected)
        fail(Errc::NotDiagonalizable, "summand count " + std::to_string(spaces.size()) +
                                          " does not match " + std::to_string(expected));
    std::size_t total = 0;
    for (const auto& sp : spaces) total += sp.basis.rows;
    require(total == N, Errc::InternalError, "summand dimensions do not fill the module");

    Decomposition<F> out;
    out.family_s = family_s;
    for (auto& sp : spaces) {
        Submodule<F> sub;
        sub.K = &K;
        sub.index = &gi;
        sub.basis = std::move(sp.basis);
        out.summands.push_back(std::move(sub));
        out.eigen_tuples.push_back(std::move(sp.tuple));
    }
    return out;
}

/// Exact certificate that two distinct summands of a decomposition admit no
/// nonzero equivariant map. A map S_i -> S_j extends by zero to an
/// equivariant endomorphism of the whole module (the other summands give an
/// invariant complement, witnessed by the stacked bases being invertible);
/// the endomorphism algebra has dimension equal to the incidence family size
/// (pair-orbit count) and acts on each summand by the scalar eigen-tuple, so
/// distinct tuples force the map to vanish. Every input to that argument is
/// re-verified here exactly.
template <FieldLike F>
bool summands_pairwise_hom_zero(const F& K, const FiniteField& Fq, std::uint32_t n, std::uint32_t r,
                                const Decomposition<F>& dec, const Config& cfg = default_config()) {
    const auto& gi = grassmann_index(Fq, n, r, cfg);
    std::size_t N = gi.size();

    // (1) End dimension equals the family size
    auto hs = hom_space(Fq, n, r, r, cfg);
    if (hs.dim != dec.family_s.size() || !hs.orbits_match_meet_classes) return false;

    // (2) eigen-property of every summand, exactly
    for (std::size_t s = 0; s < dec.family_s.size(); ++s) {
        auto eta = build_eta(Fq, n, r, r, dec.family_s[s], cfg);
        for (std::size_t i = 0; i < dec.summands.size(); ++i) {
            const auto& B = dec.summands[i].basis;
            const auto& lam = dec.eigen_tuples[i][s];
            Mat<F> image(K, B.rows, N);
            for (std::size_t row = 0; row < B.rows; ++row)
                for (auto [rr, cc] : eta.coo) {
                    const auto& v = B.at(row, cc);
                    if (!K.is_zero(v)) image.at(row, rr) = K.add(image.at(row, rr), v);
                }
            for (std::size_t row = 0; row < B.rows; ++row)
                for (std::size_t col = 0; col < N; ++col)
                    if (!(image.at(row, col) == K.mul(lam, B.at(row, col)))) return false;
        }
    }

    // (3) tuples pairwise distinct
    for (std::size_t i = 0; i < dec.eigen_tuples.size(); ++i)
        for (std::size_t j = i + 1; j < dec.eigen_tuples.size(); ++j)
            if (dec.eigen_tuples[i] == dec.eigen_tuples[j]) return false;

    // (4) the summands are complementary: stacked bases invertible
    Mat<F> stacked(K, 0, N);
    {
        std::size_t total = 0;
        for (const auto& s : dec.summands) total += s.basis.rows;
        if (total != N) return false;
        stacked = Mat<F>(K, N, N);
        std::size_t row = 0;
        for (const auto& s : dec.summands)
            for (std::size_t i = 0; i < s.basis.rows; ++i, ++row)
                for (std::size_t j = 0; j < N; ++j) stacked.at(row, j) = s.basis.at(i, j);
    }
    return rank(stacked) == N;
}

/// Solve {X : X P_i(g) = P_j(g) X for all generators} directly, for the
/// restrictions of the action to two summands. Feasible only for small
/// unknown counts; used as an independent double-check of the certificate
/// route on the pairs where it is affordable.
template <FieldLike F>
std::size_t hom_dim_between_summands_direct(const Submodule<F>& Si, const Submodule<F>& Sj,
                                            std::span<const GroupElement> gens) {
    const F& K = *Si.K;
    std::size_t ki = Si.dim(), kj = Sj.dim();
    require(Si.index == Sj.index, Errc::AmbientMismatch, "summands over different modules");

    // restriction matrices: row_vectors * perm = (restricted coeffs) * basis
    auto restrict_action = [&](const Submodule<F>& S, const std::vector<std::uint32_t>& perm) {
        std::size_t k = S.dim();
        std::size_t N = S.basis.cols;
        Mat<F> img(K, k, N);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < N; ++j)
                if (!K.is_zero(S.basis.at(i, j))) img.at(i, perm[j]) = S.basis.at(i, j);
        // express img rows in S's RREF basis by reading pivot columns
        auto rr = rref(S.basis);
        Mat<F> coords(K, k, k);
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<typename F::value_type> row(N);
            for (std::size_t j = 0; j < N; ++j) row[j] = img.at(i, j);
            for (std::size_t t = 0; t < k; ++t) {
                auto c = row[rr.pivots[t]];
                coords.at(i, t) = c;
                if (K.is_zero(c)) continue;
                for (std::size_t j = 0; j < N; ++j)
                    row[j] = K.sub(row[j], K.mul(c, S.basis.at(t, j)));
            }
            for (std::size_t j = 0; j < N; ++j)
                require(K.is_zero(row[j]), Errc::InternalError, "summand not invariant");
        }
        return coords;
    };

    // A map phi given by X (ki x kj) on row coordinates, v = x*B_i |-> x*X*B_j,
    // is equivariant iff Ri(g)*X = X*Rj(g) for every generator.
    std::size_t unknowns = ki * kj;
    std::vector<typename F::value_type> rows;
    std::size_t n_rows = 0;
    for (const auto& g : gens) {
        auto perm = action_permutation(*Si.index, g);
        auto Ri = restrict_action(Si, perm);
        auto Rj = restrict_action(Sj, perm);
        for (std::size_t a = 0; a < ki; ++a) {
            for (std::size_t b = 0; b < kj; ++b) {
                std::vector<typename F::value_type> row(unknowns, K.zero());
                // (Ri X)[a,b] = sum_c Ri[a,c] X[c,b]; (X Rj)[a,b] = sum_c X[a,c] Rj[c,b]
                for (std::size_t c = 0; c < ki; ++c)
                    row[c * kj + b] = K.add(row[c * kj + b], Ri.at(a, c));
                for (std::size_t c = 0; c < kj; ++c)
                    row[a * kj + c] = K.sub(row[a * kj + c], Rj.at(c, b));
                rows.insert(rows.end(), row.begin(), row.end());
                ++n_rows;
            }
        }
    }
    Mat<F> sys(K, n_rows, unknowns);
    sys.a = std::move(rows);
    return unknowns - rank(sys);
}

// ---------------------------------------------------------------------------
// Simplicity certification by spinning probe vectors.
// ---------------------------------------------------------------------------
enum class SimplicityVerdict { CertifiedSimple, NotSimple, Inconclusive };

template <FieldLike F>
struct SimplicityResult {
    SimplicityVerdict verdict = SimplicityVerdict::Inconclusive;
    std::optional<ModuleVector<F>> witness;  // generates a proper nonzero submodule
    std::string confidence;                  // "exhaustive" or "sampled"
    std::uint64_t probes = 0;
};

enum class SimplicityMode { Exhaustive, Sampled };

template <FieldLike F>
SimplicityResult<F> is_simple(const Submodule<F>& S, std::span<const GroupElement> gens,
                              SimplicityMode mode,
                              std::span<const ModuleVector<F>> extra_probes = {},
                              const Config& cfg = default_config(), std::uint64_t seed = 0) {
    using V = typename F::value_type;
    const F& K = *S.K;
    require(S.dim() > 0, Errc::EmptyModule, "simplicity of the zero module is undefined");

    SimplicityResult<F> res;
    auto perms = action_permutations<F>(*S.index, gens);
    auto test_vector = [&](const std::vector<V>& coeffs) -> bool {
        // coeffs are coordinates in S's basis
        ModuleVector<F> v(K, *S.index);
        for (std::size_t i = 0; i < S.dim(); ++i) {
            if (K.is_zero(coeffs[i])) continue;
            for (std::size_t j = 0; j < S.basis.cols; ++j)
                v.coeffs[j] = K.add(v.coeffs[j], K.mul(coeffs[i], S.basis.at(i, j)));
        }
        if (v.is_zero()) return true;
        ++res.probes;
        auto sub = spin_one_with_permutations(v, perms, cfg);
        require(sub.dim() <= S.dim(), Errc::InternalError, "probe escaped the submodule");
        if (sub.dim() < S.dim()) {
            res.verdict = SimplicityVerdict::NotSimple;
            res.witness = std::move(v);
            return false;
        }
        return true;
    };

    if (mode == SimplicityMode::Exhaustive) {
        if constexpr (std::is_same_v<F, RationalField>) {
            fail(Errc::PreconditionViolated, "exhaustive certification needs a finite field");
        } else {
            const auto& KF = static_cast<const FiniteField&>(K);
            std::uint64_t states = 1;
            for (std::size_t i = 0; i < S.dim(); ++i) {
                states *= KF.q();
                require(states <= cfg.max_exhaustive_states, Errc::TooLarge,
                        "state space too large for exhaustive certification");
            }
            // one representative per projective class: first nonzero coord = 1
            // (spinning is invariant under scaling)
            std::vector<V> coeffs(S.dim(), K.zero());
            std::size_t dim = S.dim();
            for (std::size_t lead = 0; lead < dim; ++lead) {
                std::vector<std::uint32_t> tail(dim - lead - 1, 0);
                for (;;) {
                    std::fill(coeffs.begin(), coeffs.end(), K.zero());
                    coeffs[lead] = K.one();
                    for (std::size_t t = 0; t < tail.size(); ++t) coeffs[lead + 1 + t] = tail[t];
                    if (!test_vector(coeffs)) return res;
                    std::size_t k = 0;
                    while (k < tail.size()) {
                        if (++tail[k] < KF.q()) break;
                        tail[k] = 0;
                        ++k;
                    }
                    if (k == tail.size()) break;
                    if (tail.empty()) break;
                }
            }
            res.verdict = SimplicityVerdict::CertifiedSimple;
            res.confidence = "exhaustive";
            return res;
        }
    }

    // sampled mode: basis vectors, pairwise differences, callers' probes,
    // then seeded pseudorandom combinations
    std::vector<V> coeffs(S.dim(), K.zero());
    for (std::size_t i = 0; i < S.dim(); ++i) {
        std::fill(coeffs.begin(), coeffs.end(), K.zero());
        coeffs[i] = K.one();
        if (!test_vector(coeffs)) return res;
    }
    for (std::size_t i = 0; i < S.dim(); ++i) {
        for (std::size_t j = i + 1; j < S.dim(); ++j) {
            std::fill(coeffs.begin(), coeffs.end(), K.zero());
            coeffs[i] = K.one();
            coeffs[j] = K.neg(K.one());
            if (!test_vector(coeffs)) return res;
        }
    }
    for (const auto& p : extra_probes) {
        require(S.contains(p), Errc::PreconditionViolated, "probe outside the submodule");
        if (p.is_zero()) continue;
        ++res.probes;
        auto sub = spin_one_with_permutations(p, perms, cfg);
        if (sub.dim() < S.dim()) {
            res.verdict = SimplicityVerdict::NotSimple;
            res.witness = p;
            return res;
        }
    }
    SplitMix64 rng(seed ^ 0x51312E5EEDull);
    const std::size_t random_probes = 24;
    for (std::size_t t = 0; t < random_probes; ++t) {
        for (auto& c : coeffs) {
            if constexpr (std::is_same_v<F, RationalField>) {
                c = Rational(BigInt(std::int64_t(rng.below(19)) - 9));
            } else {
                const auto& KF = static_cast<const FiniteField&>(K);
                c = V(rng.below(KF.q()));
            }
        }
        if (!test_vector(coeffs)) return res;
    }
    res.verdict = SimplicityVerdict::Inconclusive;
    res.confidence = "sampled";
    return res;
}

// ---------------------------------------------------------------------------
// Socle structure of K[P(V)] for finite V, char K = ell.
// ---------------------------------------------------------------------------
template <FieldLike F>
struct SocleReport {
    bool ell_divides_points = false;
    // branch A (ell | |P(V)|): the all-ones line is the unique minimal submodule
    bool line_is_submodule = false;
    bool all_probes_contain_line = false;
    bool exhaustive = false;
    // branch B: K[P(V)] = kernel ⊕ line with both simple
    bool splits_directly = false;
    SimplicityVerdict kernel_simplicity = SimplicityVerdict::Inconclusive;
    std::string kernel_confidence;
    std::uint64_t probes = 0;
    bool matches_prediction = false;
};

template <FieldLike F>
SocleReport<F> socle_structure(const F& K, const FiniteField& Fq, std::uint32_t dimV,
                               const Config& cfg = default_config(), std::uint64_t seed = 0) {
    using V = typename F::value_type;
    static_assert(!std::is_same_v<F, RationalField>, "socle analysis is for positive characteristic");
    const auto& KF = static_cast<const FiniteField&>(K);
    std::uint32_t ell = KF.characteristic();
    require(dimV >= 2, Errc::BadParams, "need dim V >= 2");
    require(dimV - 1 == 1 || ell != Fq.characteristic(), Errc::HypothesisViolated,
            "projective dimension > 1 with matching characteristics");

    const auto& gi = grassmann_index(Fq, dimV, 1, cfg);
    std::size_t N = gi.size();
    auto gens = gl_generators(Fq, dimV);

    SocleReport<F> rep;
    rep.ell_divides_points = (N % ell) == 0;
    auto perms = action_permutations<F>(gi, std::span<const GroupElement>(gens));

    ModuleVector<F> ones(K, gi);
    for (auto& c : ones.coeffs) c = K.one();
    auto line = spin_one_with_permutations(ones, perms, cfg);
    rep.line_is_submodule = line.dim() == 1;

    if (!rep.ell_divides_points) {
        // K[P(V)] = ker(augmentation) ⊕ K*ones, both expected simple
        auto ker = augmentation_kernel(K, gi);
        rep.splits_directly = !K.is_zero(augmentation(ones));  // ones not in the kernel
        std::uint64_t states = 1;
        bool exhaustive_ok = true;
        for (std::size_t i = 0; i < ker.dim() && exhaustive_ok; ++i) {
            states *= KF.q();
            if (states > cfg.max_exhaustive_states) exhaustive_ok = false;
        }
        auto simp = is_simple<F>(ker, gens,
                                 exhaustive_ok ? SimplicityMode::Exhaustive : SimplicityMode::Sampled,
                                 {}, cfg, seed);
        rep.exhaustive = exhaustive_ok;
        rep.kernel_simplicity = simp.verdict;
        rep.kernel_confidence = simp.confidence;
        rep.probes = simp.probes;
        rep.matches_prediction = rep.line_is_submodule && rep.splits_directly &&
                                 simp.verdict != SimplicityVerdict::NotSimple;
        return rep;
    }

    // ell | N: every nonzero submodule must contain the all-ones line.
    require(rep.line_is_submodule, Errc::InternalError, "all-ones line not stable");
    ModuleVector<F> line_vec = ones;

    auto contains_line = [&](const ModuleVector<F>& v) -> bool {
        if (v.is_zero()) return true;
        ++rep.probes;
        auto sub = spin_one_with_permutations(v, perms, cfg);
        return sub.contains(line_vec);
    };

    bool ok = true;
    std::uint64_t states = 1;
    bool exhaustive_ok = true;
    for (std::size_t i = 0; i < N && exhaustive_ok; ++i) {
        states *= KF.q();
        if (states > cfg.max_exhaustive_states) exhaustive_ok = false;
    }
    rep.exhaustive = exhaustive_ok;
    if (exhaustive_ok) {
        // all nonzero vectors up to scaling
        ModuleVector<F> v(K, gi);
        for (std::size_t lead = 0; lead < N && ok; ++lead) {
            std::vector<std::uint32_t> tail(N - lead - 1, 0);
            for (;;) {
                std::fill(v.coeffs.begin(), v.coeffs.end(), K.zero());
                v.coeffs[lead] = K.one();
                for (std::size_t t = 0; t < tail.size(); ++t) v.coeffs[lead + 1 + t] = V(tail[t]);
                if (!contains_line(v)) {
                    ok = false;
                    break;
                }
                std::size_t k = 0;
                while (k < tail.size()) {
                    if (++tail[k] < KF.q()) break;
                    tail[k] = 0;
                    ++k;
                }
                if (k == tail.size() || tail.empty()) break;
            }
        }
    } else {
        // spanning probe set: points, differences, ones, seeded randoms
        ModuleVector<F> v(K, gi);
        for (std::size_t i = 0; i < N && ok; ++i) ok = contains_line(ModuleVector<F>::unit(K, gi, i));
        for (std::size_t i = 0; i < N && ok; ++i)
            for (std::size_t j = i + 1; j < N && ok; ++j) {
                std::fill(v.coeffs.begin(), v.coeffs.end(), K.zero());
                v.coeffs[i] = K.one();
                v.coeffs[j] = K.neg(K.one());
                ok = contains_line(v);
            }
        SplitMix64 rng(seed ^ 0x50C1Eull);
        for (int t = 0; t < 64 && ok; ++t) {
            for (auto& c : v.coeffs) c = V(rng.below(KF.q()));
            ok = contains_line(v);
        }
    }
    rep.all_probes_contain_line = ok;
    rep.matches_prediction = ok;
    return rep;
}

}  // namespace grassmod

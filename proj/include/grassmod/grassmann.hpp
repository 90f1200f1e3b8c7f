#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_set>
#include <vector>

#include "grassmod/config.hpp"
#include "grassmod/matrix.hpp"

namespace grassmod {

// ---------------------------------------------------------------------------
// Subspace: an r-dimensional subspace of F_q^n held as its unique RREF basis.
// Two Subspace values are equal iff their byte representations are equal.
// ---------------------------------------------------------------------------
struct Subspace {
    const FiniteField* F = nullptr;
    std::uint32_t n = 0, r = 0;
    std::vector<std::uint32_t> basis;  // r*n element codes, row-major, RREF

    std::uint32_t at(std::uint32_t i, std::uint32_t j) const { return basis[i * n + j]; }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.F == b.F && a.n == b.n && a.r == b.r && a.basis == b.basis;
    }

    Mat<FiniteField> as_matrix() const {
        Mat<FiniteField> m(*F, r, n);
        for (std::size_t k = 0; k < basis.size(); ++k) m.a[k] = basis[k];
        return m;
    }

    /// true if v (an n-vector of codes) lies in the subspace
    bool contains(std::span<const std::uint32_t> v) const {
        std::vector<std::uint32_t> w(v.begin(), v.end());
        for (std::uint32_t i = 0; i < r; ++i) {
            // the RREF pivot of row i is its first nonzero
            std::uint32_t c = 0;
            while (c < n && at(i, c) == 0) ++c;
            if (c == n) continue;
            std::uint32_t coef = w[c];
            if (coef == 0) continue;
            for (std::uint32_t j = c; j < n; ++j) w[j] = F->sub(w[j], F->mul(coef, at(i, j)));
        }
        for (auto x : w)
            if (x) return false;
        return true;
    }
};

/// Order subspaces by the canonical element order on flattened basis entries.
inline bool subspace_lex_less(const Subspace& a, const Subspace& b) {
    for (std::size_t k = 0; k < std::min(a.basis.size(), b.basis.size()); ++k) {
        std::uint32_t ka = a.F->order_key(a.basis[k]), kb = b.F->order_key(b.basis[k]);
        if (ka != kb) return ka < kb;
    }
    return a.basis.size() < b.basis.size();
}

/// Row space of an arbitrary spanning set, in canonical form.
inline Subspace canonicalize(const FiniteField& F, std::uint32_t n, const Mat<FiniteField>& rows) {
    require(rows.cols == n, Errc::ShapeMismatch, "spanning rows have wrong width");
    auto rr = rref(rows);
    Subspace s;
    s.F = &F;
    s.n = n;
    s.r = std::uint32_t(rr.rank);
    s.basis.resize(std::size_t(s.r) * n);
    for (std::uint32_t i = 0; i < s.r; ++i)
        for (std::uint32_t j = 0; j < n; ++j) s.basis[i * n + j] = rr.mat.at(i, j);
    return s;
}

inline Subspace zero_subspace(const FiniteField& F, std::uint32_t n) {
    Subspace s;
    s.F = &F;
    s.n = n;
    s.r = 0;
    return s;
}

// ---------------------------------------------------------------------------
// GrassmannIndex: the complete table of Gr(r, F_q^n) in canonical order plus
// the inverse lookup. Immutable once built; interned per (p, e, n, r).
// ---------------------------------------------------------------------------
struct GrassmannIndex {
    const FiniteField* F = nullptr;
    std::uint32_t n = 0, r = 0;
    std::vector<Subspace> table;  // sorted by subspace_lex_less

    std::size_t size() const { return table.size(); }

    std::size_t index_of(const Subspace& s) const {
        auto it = std::lower_bound(table.begin(), table.end(), s, subspace_lex_less);
        require(it != table.end() && *it == s, Errc::InternalError, "subspace not in table");
        return std::size_t(it - table.begin());
    }
};

inline BigInt gaussian_binomial(std::uint32_t q, std::uint32_t n, std::uint32_t r) {
    if (r > n) return BigInt(0);
    BigInt num(1), den(1);
    for (std::uint32_t i = 0; i < r; ++i) {
        num *= BigInt::pow(BigInt(q), n - i) - BigInt(1);
        den *= BigInt::pow(BigInt(q), i + 1) - BigInt(1);
    }
    return num / den;
}

/// Complete canonical enumeration of Gr(r, F_q^n). Generates one RREF matrix
/// per (pivot column set, free entry assignment), so every subspace appears
/// exactly once; the final sort fixes the public order.
inline GrassmannIndex enumerate_grassmannian(const FiniteField& F, std::uint32_t n, std::uint32_t r,
                                             const Config& cfg = default_config()) {
    require(r <= n, Errc::BadParams, "r must be at most n");
    require(n <= cfg.max_ambient, Errc::TooLarge,
            "ambient dimension " + std::to_string(n) + " exceeds cap " + std::to_string(cfg.max_ambient));
    BigInt count = gaussian_binomial(F.q(), n, r);
    require(count <= BigInt::from_u64(cfg.max_grassmannian), Errc::TooLarge,
            "Grassmannian size " + count.to_string() + " exceeds cap");

    GrassmannIndex gi;
    gi.F = &F;
    gi.n = n;
    gi.r = r;

    if (r == 0) {
        gi.table.push_back(zero_subspace(F, n));
        return gi;
    }

    // iterate pivot column subsets c_0 < c_1 < ... < c_{r-1}
    std::vector<std::uint32_t> piv(r);
    for (std::uint32_t i = 0; i < r; ++i) piv[i] = i;
    for (;;) {
        // free positions: (i, j) with j > piv[i], j not a pivot column
        std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;
        std::vector<bool> is_piv(n, false);
        for (auto c : piv) is_piv[c] = true;
        for (std::uint32_t i = 0; i < r; ++i)
            for (std::uint32_t j = piv[i] + 1; j < n; ++j)
                if (!is_piv[j]) free_pos.emplace_back(i, j);

        std::vector<std::uint32_t> assign(free_pos.size(), 0);
        for (;;) {
            Subspace s;
            s.F = &F;
            s.n = n;
            s.r = r;
            s.basis.assign(std::size_t(r) * n, 0);
            for (std::uint32_t i = 0; i < r; ++i) s.basis[i * n + piv[i]] = F.one();
            for (std::size_t k = 0; k < free_pos.size(); ++k)
                s.basis[free_pos[k].first * n + free_pos[k].second] = assign[k];
            gi.table.push_back(std::move(s));

            // odometer over free entries
            std::size_t k = 0;
            while (k < assign.size()) {
                if (++assign[k] < F.q()) break;
                assign[k] = 0;
                ++k;
            }
            if (k == assign.size()) break;
        }

        // next pivot subset
        std::size_t i = r;
        while (i-- > 0) {
            if (piv[i] + (r - i) <= n - 1) {
                ++piv[i];
                for (std::size_t j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
                break;
            }
            if (i == 0) {
                i = std::size_t(-1);
                break;
            }
        }
        if (i == std::size_t(-1)) break;
    }

    std::sort(gi.table.begin(), gi.table.end(), subspace_lex_less);
    require(BigInt::from_u64(gi.table.size()) == count, Errc::InternalError,
            "enumeration count mismatch vs Gaussian binomial");
    for (std::size_t i = 1; i < gi.table.size(); ++i)
        require(!(gi.table[i - 1] == gi.table[i]), Errc::InternalError, "duplicate subspace");
    return gi;
}

/// Interned shared enumeration (the tables are immutable and reused a lot).
inline const GrassmannIndex& grassmann_index(const FiniteField& F, std::uint32_t n, std::uint32_t r,
                                             const Config& cfg = default_config()) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>,
                    std::unique_ptr<GrassmannIndex>>
        reg;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(F.p(), F.e(), n, r);
    auto it = reg.find(key);
    if (it == reg.end())
        it = reg.emplace(key, std::make_unique<GrassmannIndex>(enumerate_grassmannian(F, n, r, cfg))).first;
    return *it->second;
}

// ---------------------------------------------------------------------------
// GL_n(F_q) elements and the right action L -> row space of (basis * g)
// ---------------------------------------------------------------------------
struct GroupElement {
    Mat<FiniteField> mat;  // n x n, invertible

    static GroupElement make(Mat<FiniteField> m) {
        require(m.rows == m.cols, Errc::NonSquare, "group element must be square");
        require(is_invertible(m), Errc::PreconditionViolated, "matrix is singular");
        return GroupElement{std::move(m)};
    }

    std::uint32_t n() const { return std::uint32_t(mat.rows); }

    GroupElement inverse_element() const { return GroupElement{grassmod::inverse(mat)}; }

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
        return GroupElement{a.mat * b.mat};
    }

    friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.mat == b.mat; }

    /// total order for canonical sorting of group algebra terms
    friend bool operator<(const GroupElement& a, const GroupElement& b) {
        const FiniteField& f = *a.mat.field;
        for (std::size_t k = 0; k < std::min(a.mat.a.size(), b.mat.a.size()); ++k) {
            std::uint32_t ka = f.order_key(a.mat.a[k]), kb = f.order_key(b.mat.a[k]);
            if (ka != kb) return ka < kb;
        }
        return a.mat.a.size() < b.mat.a.size();
    }
};

inline Subspace act(const GroupElement& g, const Subspace& L) {
    require(L.F == g.mat.field && L.n == g.n(), Errc::AmbientMismatch, "act: ambient mismatch");
    return canonicalize(*L.F, L.n, L.as_matrix() * g.mat);
}

/// Standard generating set: one diagonal diag(alpha,1,...,1) for a fixed
/// multiplicative generator alpha (omitted when q = 2) plus all elementary
/// transvections 1 + E_ij, i != j.
inline std::vector<GroupElement> gl_generators(const FiniteField& F, std::uint32_t n) {
    require(n >= 1, Errc::BadParams, "n must be >= 1");
    std::vector<GroupElement> gens;
    if (F.q() > 2) {
        auto d = Mat<FiniteField>::identity(F, n);
        d.at(0, 0) = F.multiplicative_generator();
        gens.push_back(GroupElement{std::move(d)});
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            if (i == j) continue;
            auto t = Mat<FiniteField>::identity(F, n);
            t.at(i, j) = F.one();
            gens.push_back(GroupElement{std::move(t)});
        }
    }
    return gens;
}

/// Size of the closure of `gens` under multiplication (= the generated group,
/// by finiteness). Used to certify generating sets; capped to keep it sane.
inline std::size_t group_closure_size(const FiniteField& F, std::uint32_t n,
                                      std::span<const GroupElement> gens,
                                      std::size_t cap = 10000000) {
    auto key_of = [&](const Mat<FiniteField>& m) {
        std::string k;
        k.reserve(m.a.size() * 2);
        for (auto c : m.a) {
            k.push_back(char(c & 0xFF));
            k.push_back(char((c >> 8) & 0xFF));
        }
        return k;
    };
    std::unordered_set<std::string> seen;
    std::vector<Mat<FiniteField>> queue;
    auto id = Mat<FiniteField>::identity(F, n);
    seen.insert(key_of(id));
    queue.push_back(id);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto cur = queue[head];
        for (const auto& g : gens) {
            auto next = cur * g.mat;
            auto k = key_of(next);
            if (seen.insert(k).second) {
                require(seen.size() <= cap, Errc::TooLarge, "group closure exceeds cap");
                queue.push_back(std::move(next));
            }
        }
    }
    return seen.size();
}

// ---------------------------------------------------------------------------
// Orbit invariants of subspace pairs and the hyperplane-step chain between
// two subspaces of the same dimension.
// ---------------------------------------------------------------------------
struct PairInvariant {
    std::uint32_t s;   // dim(L ∩ L')
    std::uint32_t c;   // dim L / (L ∩ L')
    std::uint32_t cp;  // dim L' / (L ∩ L')

    friend bool operator==(const PairInvariant&, const PairInvariant&) = default;
};

inline std::uint32_t intersection_dim(const Subspace& a, const Subspace& b) {
    require(a.F == b.F && a.n == b.n, Errc::AmbientMismatch, "intersection: ambient mismatch");
    if (a.r == 0 || b.r == 0) return 0;
    std::size_t rk = rank(Mat<FiniteField>::vstack(a.as_matrix(), b.as_matrix()));
    return a.r + b.r - std::uint32_t(rk);
}

inline PairInvariant pair_orbit_invariant(const Subspace& a, const Subspace& b) {
    std::uint32_t s = intersection_dim(a, b);
    return PairInvariant{s, a.r - s, b.r - s};
}

namespace detail {

/// Rows of `inside` that extend `base` to a basis of base + inside, taken
/// greedily in row order (deterministic pivot-order completion).
inline std::vector<std::vector<std::uint32_t>> complement_rows(const FiniteField& F, std::uint32_t n,
                                                               const Mat<FiniteField>& base,
                                                               const Subspace& inside) {
    std::vector<std::vector<std::uint32_t>> out;
    Mat<FiniteField> cur = base;
    std::size_t cur_rank = rank(cur);
    for (std::uint32_t i = 0; i < inside.r; ++i) {
        Mat<FiniteField> row(F, 1, n);
        for (std::uint32_t j = 0; j < n; ++j) row.at(0, j) = inside.at(i, j);
        auto cand = Mat<FiniteField>::vstack(cur, row);
        if (rank(cand) > cur_rank) {
            out.push_back(std::vector<std::uint32_t>(row.a.begin(), row.a.end()));
            cur = std::move(cand);
            ++cur_rank;
        }
    }
    return out;
}

}  // namespace detail

/// Chain L0 = C_0, C_1, ..., C_c = L1 with every consecutive pair adjacent
/// (invariant (r-1,1,1)), built from fixed flags: C_i is spanned by the
/// intersection, the first c-i completion rows of L0 and the first i of L1.
inline std::vector<Subspace> chain_between(const Subspace& L0, const Subspace& L1) {
    require(L0.F == L1.F && L0.n == L1.n, Errc::AmbientMismatch, "chain: ambient mismatch");
    require(L0.r == L1.r, Errc::DimensionMismatch, "chain endpoints must have equal dimension");
    const FiniteField& F = *L0.F;
    std::uint32_t n = L0.n;

    std::uint32_t s = intersection_dim(L0, L1);
    std::uint32_t c = L0.r - s;
    if (c == 0) return {L0};

    // basis of the intersection: each left-kernel row (y|z) of the stacked
    // bases satisfies y*A = -z*B, i.e. y*A runs over rowspace(A) ∩ rowspace(B)
    Mat<FiniteField> meet(F, s, n);
    {
        auto stack = Mat<FiniteField>::vstack(L0.as_matrix(), L1.as_matrix());
        auto ker = kernel_basis(stack.transpose());
        require(ker.rows == s, Errc::InternalError, "meet rank");
        Mat<FiniteField> combos(F, ker.rows, n);
        for (std::size_t t = 0; t < ker.rows; ++t)
            for (std::uint32_t i = 0; i < L0.r; ++i) {
                auto coef = ker.at(t, i);
                if (F.is_zero(coef)) continue;
                for (std::uint32_t j = 0; j < n; ++j)
                    combos.at(t, j) = F.add(combos.at(t, j), F.mul(coef, L0.at(i, j)));
            }
        auto canon = canonicalize(F, n, combos);
        require(canon.r == s, Errc::InternalError, "intersection dimension mismatch");
        meet = canon.as_matrix();
    }

    auto a_rows = detail::complement_rows(F, n, meet, L0);  // c rows completing L0
    auto b_rows = detail::complement_rows(F, n, meet, L1);  // c rows completing L1
    require(a_rows.size() == c && b_rows.size() == c, Errc::InternalError, "flag completion");

    std::vector<Subspace> chain;
    for (std::uint32_t i = 0; i <= c; ++i) {
        Mat<FiniteField> span(F, s + c, n);
        for (std::uint32_t k = 0; k < s; ++k)
            for (std::uint32_t j = 0; j < n; ++j) span.at(k, j) = meet.at(k, j);
        std::uint32_t row = s;
        for (std::uint32_t k = 0; k < c - i; ++k, ++row)
            for (std::uint32_t j = 0; j < n; ++j) span.at(row, j) = a_rows[k][j];
        for (std::uint32_t k = 0; k < i; ++k, ++row)
            for (std::uint32_t j = 0; j < n; ++j) span.at(row, j) = b_rows[k][j];
        auto sub = canonicalize(F, n, span);
        require(sub.r == L0.r, Errc::InternalError, "chain member has wrong dimension");
        chain.push_back(std::move(sub));
    }
    require(chain.front() == L0 && chain.back() == L1, Errc::InternalError, "chain endpoints");
    return chain;
}

/// Permutation i -> index(table[i] * g) induced on an enumeration.
inline std::vector<std::uint32_t> action_permutation(const GrassmannIndex& gi, const GroupElement& g) {
    std::vector<std::uint32_t> perm(gi.size());
    for (std::size_t i = 0; i < gi.size(); ++i) perm[i] = std::uint32_t(gi.index_of(act(g, gi.table[i])));
    return perm;
}

}  // namespace grassmod

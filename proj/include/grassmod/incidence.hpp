#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "grassmod/cache.hpp"
#include "grassmod/grassmann.hpp"

namespace grassmod {

/// The smallest admissible meet dimension for a map Gr(r0) -> Gr(r1) in F_q^n.
inline std::uint32_t sigma_lower_bound(std::uint32_t n, std::uint32_t r0, std::uint32_t r1) {
    return r0 + r1 > n ? r0 + r1 - n : 0;
}

// ---------------------------------------------------------------------------
// IncidenceOperator: the 0/1 matrix with entry (L', L) = 1 iff dim(L∩L') = s,
// rows indexed by Gr(r1) (target), columns by Gr(r0) (source). Stored
// field-agnostically as sorted coordinate pairs; one cache file serves every
// coefficient field.
// ---------------------------------------------------------------------------
struct IncidenceOperator {
    const FiniteField* F = nullptr;
    std::uint32_t n = 0, r0 = 0, r1 = 0, s = 0;
    std::size_t rows = 0, cols = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> coo;  // sorted (row, col)

    const GrassmannIndex& source(const Config& cfg = default_config()) const {
        return grassmann_index(*F, n, r0, cfg);
    }
    const GrassmannIndex& target(const Config& cfg = default_config()) const {
        return grassmann_index(*F, n, r1, cfg);
    }

    /// CSR-style row pointers, built on demand.
    std::vector<std::size_t> row_offsets() const {
        std::vector<std::size_t> off(rows + 1, 0);
        for (auto [r, c] : coo) ++off[r + 1];
        for (std::size_t i = 0; i < rows; ++i) off[i + 1] += off[i];
        return off;
    }

    std::vector<std::size_t> column_sums() const {
        std::vector<std::size_t> sums(cols, 0);
        for (auto [r, c] : coo) ++sums[c];
        return sums;
    }

    /// Dense image over a coefficient field (every stored 1 becomes K's one).
    template <FieldLike F2>
    Mat<F2> to_dense(const F2& K) const {
        Mat<F2> m(K, rows, cols);
        for (auto [r, c] : coo) m.at(r, c) = K.one();
        return m;
    }

    /// y = eta * v for a column coefficient vector over K.
    template <FieldLike F2>
    std::vector<typename F2::value_type> apply(const F2& K,
                                               const std::vector<typename F2::value_type>& v) const {
        require(v.size() == cols, Errc::ShapeMismatch, "operator/vector size mismatch");
        std::vector<typename F2::value_type> out(rows, K.zero());
        for (auto [r, c] : coo) {
            if (!K.is_zero(v[c])) out[r] = K.add(out[r], v[c]);
        }
        return out;
    }
};

inline IncidenceOperator build_eta(const FiniteField& F, std::uint32_t n, std::uint32_t r0,
                                   std::uint32_t r1, std::uint32_t s,
                                   const Config& cfg = default_config()) {
    require(r0 <= n && r1 <= n, Errc::BadParams, "subspace dimensions exceed ambient");
    std::uint32_t sigma = sigma_lower_bound(n, r0, r1);
    require(s >= sigma && s <= std::min(r0, r1), Errc::EmptyOrbit,
            "no subspace pairs with meet dimension " + std::to_string(s));

    IncidenceOperator op;
    op.F = &F;
    op.n = n;
    op.r0 = r0;
    op.r1 = r1;
    op.s = s;

    cache::CacheKey key{cache::kKindIncidence, F.p(), F.e(), n, r0, r1, s};
    const auto& src = grassmann_index(F, n, r0, cfg);
    const auto& tgt = grassmann_index(F, n, r1, cfg);
    op.rows = tgt.size();
    op.cols = src.size();

    if (auto hit = cache::get(cfg.cache_dir, key)) {
        if (hit->rows == op.rows && hit->cols == op.cols) {
            op.coo = std::move(hit->coo);
            return op;
        }
    }

    for (std::uint32_t c = 0; c < op.cols; ++c) {
        for (std::uint32_t r = 0; r < op.rows; ++r) {
            if (intersection_dim(src.table[c], tgt.table[r]) == s) op.coo.emplace_back(r, c);
        }
    }
    std::sort(op.coo.begin(), op.coo.end());

    if (!cfg.cache_dir.empty()) {
        cache::CachePayload payload;
        payload.rows = std::uint32_t(op.rows);
        payload.cols = std::uint32_t(op.cols);
        payload.coo = op.coo;
        cache::put(cfg.cache_dir, key, payload);
    }
    return op;
}

/// Matrix product a∘b of chainable operators, entries as exact counts.
/// Counts fit comfortably in int64 at the enforced caps.
inline std::vector<std::int64_t> compose_counts(const IncidenceOperator& a, const IncidenceOperator& b) {
    require(a.F == b.F && a.n == b.n, Errc::AmbientMismatch, "compose: ambient mismatch");
    require(a.r0 == b.r1, Errc::ShapeMismatch, "compose: inner Grassmannians differ");
    std::vector<std::int64_t> out(a.rows * b.cols, 0);
    auto b_rows = b.row_offsets();
    for (auto [ar, ac] : a.coo) {
        for (std::size_t k = b_rows[ac]; k < b_rows[ac + 1]; ++k) {
            out[std::size_t(ar) * b.cols + b.coo[k].second] += 1;
        }
    }
    return out;
}

/// Composition with the intersection counts reduced into K.
template <FieldLike F2>
Mat<F2> compose(const F2& K, const IncidenceOperator& a, const IncidenceOperator& b) {
    auto counts = compose_counts(a, b);
    Mat<F2> m(K, a.rows, b.cols);
    for (std::size_t i = 0; i < counts.size(); ++i) m.a[i] = K.from_int(counts[i]);
    return m;
}

/// transpose(eta_s^{r,r'}) == eta_s^{r',r}, as 0/1 matrices.
inline bool duality_check(const FiniteField& F, std::uint32_t n, std::uint32_t r, std::uint32_t rp,
                          std::uint32_t s, const Config& cfg = default_config()) {
    auto fwd = build_eta(F, n, r, rp, s, cfg);
    auto bwd = build_eta(F, n, rp, r, s, cfg);
    if (fwd.rows != bwd.cols || fwd.cols != bwd.rows) return false;
    auto flipped = fwd.coo;
    for (auto& [r_, c_] : flipped) std::swap(r_, c_);
    std::sort(flipped.begin(), flipped.end());
    return flipped == bwd.coo;
}

}  // namespace grassmod

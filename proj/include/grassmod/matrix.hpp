#pragma once

#include <vector>

#include "grassmod/field.hpp"

namespace grassmod {

template <class F>
concept FieldLike = requires(const F f, typename F::value_type a) {
    { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.zero() } -> std::convertible_to<typename F::value_type>;
    { f.one() } -> std::convertible_to<typename F::value_type>;
};

/// Dense row-major matrix over a field object. Values, not references: every
/// operation returns a fresh matrix and inputs are never mutated, so matrices
/// can be shared freely between threads.
template <FieldLike F>
struct Mat {
    using value_type = typename F::value_type;

    const F* field = nullptr;
    std::size_t rows = 0, cols = 0;
    std::vector<value_type> a;

    Mat() = default;
    Mat(const F& f, std::size_t r, std::size_t c) : field(&f), rows(r), cols(c), a(r * c, f.zero()) {}

    value_type& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const value_type& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(const F& f, std::size_t n) {
        Mat m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    Mat transpose() const {
        Mat t(*field, cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        require(x.cols == y.rows, Errc::ShapeMismatch, "matrix product shape");
        const F& f = *x.field;
        Mat r(f, x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i) {
            for (std::size_t k = 0; k < x.cols; ++k) {
                const value_type& v = x.at(i, k);
                if (f.is_zero(v)) continue;
                for (std::size_t j = 0; j < y.cols; ++j) {
                    r.at(i, j) = f.add(r.at(i, j), f.mul(v, y.at(k, j)));
                }
            }
        }
        return r;
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    /// Rows of x on top of rows of y.
    static Mat vstack(const Mat& x, const Mat& y) {
        require(x.cols == y.cols, Errc::ShapeMismatch, "vstack widths differ");
        Mat r(*x.field, x.rows + y.rows, x.cols);
        std::copy(x.a.begin(), x.a.end(), r.a.begin());
        std::copy(y.a.begin(), y.a.end(), r.a.begin() + std::ptrdiff_t(x.a.size()));
        return r;
    }
};

namespace detail {

// Clearing denominators and dividing by the content keeps rational
// elimination from snowballing; for finite fields normalization is a no-op.
inline void make_row_primitive(const RationalField&, std::vector<Rational>& row,
                               std::size_t begin, std::size_t end) {
    BigInt l(1), g(0);
    for (std::size_t j = begin; j < end; ++j) {
        if (row[j].is_zero()) continue;
        BigInt d = row[j].den();
        BigInt gg = BigInt::gcd(l, d);
        l = (l / gg) * d;
    }
    if (l.is_one()) {
        for (std::size_t j = begin; j < end; ++j)
            if (!row[j].is_zero()) g = BigInt::gcd(g, row[j].num());
    } else {
        Rational scale{l};
        for (std::size_t j = begin; j < end; ++j) {
            if (row[j].is_zero()) continue;
            row[j] *= scale;
            g = BigInt::gcd(g, row[j].num());
        }
    }
    if (!g.is_zero() && !g.is_one()) {
        Rational s(BigInt(1), g);
        for (std::size_t j = begin; j < end; ++j)
            if (!row[j].is_zero()) row[j] *= s;
    }
}

template <class F>
inline void make_row_primitive(const F&, std::vector<typename F::value_type>&, std::size_t,
                               std::size_t) {}

}  // namespace detail

template <FieldLike F>
struct RrefResult {
    Mat<F> mat;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Unique reduced row-echelon form. Pivot selection is the first nonzero
/// entry scanning top-to-bottom within the leftmost unfinished column; no
/// heuristics, so the result and the elimination path are deterministic.
template <FieldLike F>
RrefResult<F> rref(const Mat<F>& input) {
    const F& f = *input.field;
    using V = typename F::value_type;

    std::size_t n = input.rows, m = input.cols;
    std::vector<std::vector<V>> row(n);
    for (std::size_t i = 0; i < n; ++i)
        row[i].assign(input.a.begin() + std::ptrdiff_t(i * m), input.a.begin() + std::ptrdiff_t((i + 1) * m));

    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < n; ++c) {
        std::size_t sel = n;
        for (std::size_t i = r; i < n; ++i) {
            if (!f.is_zero(row[i][c])) {
                sel = i;
                break;
            }
        }
        if (sel == n) continue;
        std::swap(row[r], row[sel]);
        // eliminate below, keeping rows primitive over Q
        for (std::size_t i = r + 1; i < n; ++i) {
            if (f.is_zero(row[i][c])) continue;
            V factor = f.div(row[i][c], row[r][c]);
            row[i][c] = f.zero();
            for (std::size_t j = c + 1; j < m; ++j) {
                if (!f.is_zero(row[r][j]))
                    row[i][j] = f.sub(row[i][j], f.mul(factor, row[r][j]));
            }
            detail::make_row_primitive(f, row[i], c + 1, m);
        }
        pivots.push_back(c);
        ++r;
    }

    // back-substitute and normalize pivots to 1
    for (std::size_t k = pivots.size(); k-- > 0;) {
        std::size_t c = pivots[k];
        V piv = row[k][c];
        if (!(piv == f.one())) {
            V pinv = f.inv(piv);
            for (std::size_t j = c; j < m; ++j)
                if (!f.is_zero(row[k][j])) row[k][j] = f.mul(row[k][j], pinv);
        }
        for (std::size_t i = 0; i < k; ++i) {
            V v = row[i][c];
            if (f.is_zero(v)) continue;
            row[i][c] = f.zero();
            for (std::size_t j = c + 1; j < m; ++j)
                if (!f.is_zero(row[k][j])) row[i][j] = f.sub(row[i][j], f.mul(v, row[k][j]));
        }
    }

    RrefResult<F> out;
    out.mat = Mat<F>(f, n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) out.mat.at(i, j) = row[i][j];
    out.rank = pivots.size();
    out.pivots = std::move(pivots);
    return out;
}

template <FieldLike F>
std::size_t rank(const Mat<F>& m) {
    return rref(m).rank;
}

/// Basis of the right null space {x : m x^T = 0}, rows in RREF.
template <FieldLike F>
Mat<F> kernel_basis(const Mat<F>& m) {
    const F& f = *m.field;
    auto rr = rref(m);
    std::size_t n = m.cols, r = rr.rank;

    std::vector<bool> is_pivot(n, false);
    for (auto c : rr.pivots) is_pivot[c] = true;

    Mat<F> ker(f, n - r, n);
    std::size_t k = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        ker.at(k, c) = f.one();
        for (std::size_t i = 0; i < r; ++i) {
            ker.at(k, rr.pivots[i]) = f.neg(rr.mat.at(i, c));
        }
        ++k;
    }
    return rref(ker).mat;  // canonical basis
}

template <FieldLike F>
bool is_invertible(const Mat<F>& m) {
    return m.rows == m.cols && rank(m) == m.rows;
}

template <FieldLike F>
Mat<F> inverse(const Mat<F>& m) {
    require(m.rows == m.cols, Errc::NonSquare, "inverse of non-square matrix");
    const F& f = *m.field;
    std::size_t n = m.rows;
    Mat<F> aug(f, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = f.one();
    }
    auto rr = rref(aug);
    require(rr.rank == n && rr.pivots[n - 1] == n - 1, Errc::InternalError, "singular matrix");
    Mat<F> inv(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rr.mat.at(i, n + j);
    return inv;
}

// ---------------------------------------------------------------------------
// Exact integer determinant (fraction-free Bareiss elimination)
// ---------------------------------------------------------------------------

struct IMat {
    std::size_t n = 0;
    std::vector<BigInt> a;

    IMat() = default;
    explicit IMat(std::size_t n_) : n(n_), a(n_ * n_, BigInt(0)) {}
    BigInt& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const BigInt& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

inline BigInt bareiss_determinant(IMat m) {
    std::size_t n = m.n;
    if (n == 0) return BigInt(1);
    BigInt prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            std::size_t swap_row = n;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (!m.at(i, k).is_zero()) {
                    swap_row = i;
                    break;
                }
            }
            if (swap_row == n) return BigInt(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev;  // division is exact (Sylvester identity)
            }
            m.at(i, k) = BigInt(0);
        }
        prev = m.at(k, k);
    }
    BigInt det = m.at(n - 1, n - 1);
    return sign < 0 ? -det : det;
}

/// Exact determinant of a rational matrix whose entries are integers.
inline BigInt integer_determinant(const Mat<RationalField>& m) {
    require(m.rows == m.cols, Errc::NonSquare, "determinant of non-square matrix");
    IMat im(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            const Rational& v = m.at(i, j);
            require(v.is_integer(), Errc::PreconditionViolated, "entry is not an integer");
            im.at(i, j) = v.num();
        }
    }
    return bareiss_determinant(std::move(im));
}

}  // namespace grassmod

#include <doctest.h>

#include "grassmod/matrix.hpp"
#include "grassmod/rng.hpp"

using namespace grassmod;

namespace {

template <class F>
Mat<F> from_rows(const F& f, std::vector<std::vector<long long>> rows) {
    Mat<F> m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = f.from_int(rows[i][j]);
    return m;
}

// independent oracle: recursive cofactor expansion
BigInt cofactor_det(const std::vector<std::vector<long long>>& m) {
    std::size_t n = m.size();
    if (n == 0) return BigInt(1);
    if (n == 1) return BigInt(m[0][0]);
    BigInt det(0);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<long long>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<long long> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        BigInt term = BigInt(m[0][j]) * cofactor_det(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

}  // namespace

TEST_CASE("rref on the named examples") {
    const auto& F2 = finite_field(2);
    auto id3 = Mat<FiniteField>::identity(F2, 3);
    auto r = rref(id3);
    CHECK(r.mat == id3);
    CHECK(r.rank == 3);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2});

    auto dup = from_rows(F2, {{1, 1}, {1, 1}});
    auto r2 = rref(dup);
    CHECK(r2.rank == 1);
    CHECK(r2.pivots == std::vector<std::size_t>{0});
    CHECK(r2.mat == from_rows(F2, {{1, 1}, {0, 0}}));

    const auto& F3 = finite_field(3);
    auto m3 = from_rows(F3, {{0, 1, 1}, {1, 0, 1}});
    auto r3 = rref(m3);
    CHECK(r3.rank == 2);
    CHECK(r3.mat == from_rows(F3, {{1, 0, 1}, {0, 1, 1}}));
}

TEST_CASE("rref is idempotent and rank equals transpose rank") {
    SplitMix64 rng(21);
    const auto& F2 = finite_field(2);
    const auto& F5 = finite_field(5);
    const auto& F4 = finite_field(2, 2);
    const RationalField& Q = rational_field();

    auto check_field = [&](const auto& f) {
        for (int t = 0; t < 200; ++t) {
            std::size_t n = 1 + rng.below(5), m = 1 + rng.below(5);
            Mat<std::decay_t<decltype(f)>> a(f, n, m);
            for (auto& x : a.a) x = f.from_int((long long)(rng.next() % 19) - 9);
            auto r = rref(a);
            CHECK(rref(r.mat).mat == r.mat);
            CHECK(r.rank == rank(a.transpose()));
            auto ker = kernel_basis(a);
            CHECK(ker.rows + r.rank == a.cols);
            // m * ker^T = 0
            if (ker.rows > 0) {
                auto prod = a * ker.transpose();
                for (auto& x : prod.a) CHECK(f.is_zero(x));
            }
        }
    };
    check_field(F2);
    check_field(F5);
    check_field(F4);
    check_field(Q);
}

TEST_CASE("kernel examples") {
    const auto& F2 = finite_field(2);
    auto zero23 = Mat<FiniteField>(F2, 2, 3);
    CHECK(kernel_basis(zero23) == Mat<FiniteField>::identity(F2, 3));
    CHECK(kernel_basis(Mat<FiniteField>::identity(F2, 3)).rows == 0);
    auto parity = from_rows(F2, {{1, 1}});
    CHECK(kernel_basis(parity) == from_rows(F2, {{1, 1}}));
}

TEST_CASE("integer determinant: examples and cofactor oracle") {
    const RationalField& Q = rational_field();
    auto one = from_rows(Q, {{7}});
    CHECK(integer_determinant(one).to_string() == "7");
    auto two = from_rows(Q, {{1, 2}, {3, 4}});
    CHECK(integer_determinant(two).to_string() == "-2");

    Mat<RationalField> bad(Q, 2, 3);
    CHECK_THROWS_AS(integer_determinant(bad), Error);

    SplitMix64 rng(22);
    for (int t = 0; t < 120; ++t) {
        std::vector<std::vector<long long>> m(4, std::vector<long long>(4));
        for (auto& row : m)
            for (auto& x : row) x = (long long)(rng.next() % 19) - 9;
        CHECK(integer_determinant(from_rows(Q, m)) == cofactor_det(m));
    }
}

TEST_CASE("matrix inverse over exact fields") {
    SplitMix64 rng(23);
    const auto& F7 = finite_field(7);
    for (int t = 0; t < 50; ++t) {
        Mat<FiniteField> m(F7, 3, 3);
        do {
            for (auto& x : m.a) x = F7.from_int((long long)rng.below(7));
        } while (!is_invertible(m));
        CHECK(m * inverse(m) == Mat<FiniteField>::identity(F7, 3));
    }
    const RationalField& Q = rational_field();
    auto m = from_rows(Q, {{2, 1}, {7, 4}});
    CHECK(inverse(m) * m == Mat<RationalField>::identity(Q, 2));
}

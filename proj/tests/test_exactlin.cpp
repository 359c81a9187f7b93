#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "currents/exactlin.hpp"

using namespace currents;

namespace {

// Independent dense Gaussian elimination oracle for ranks.
int dense_rank_oracle(std::vector<std::vector<Rational>> a) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = -1;
        for (int r = rank; r < rows; ++r)
            if (!is_zero(a[r][c])) { p = r; break; }
        if (p < 0) continue;
        std::swap(a[rank], a[p]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || is_zero(a[r][c])) continue;
            Rational f = a[r][c] / a[rank][c];
            for (int j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

SparseQ from_dense(const std::vector<std::vector<Rational>>& a, int cols) {
    SparseQ m(static_cast<int>(a.size()), cols);
    for (int r = 0; r < static_cast<int>(a.size()); ++r)
        for (int c = 0; c < cols; ++c) m.add(r, c, a[r][c]);
    return m;
}

} // namespace

TEST_CASE("rank of trivial matrices") {
    CHECK(rank_exact(SparseQ(0, 0)) == 0);

    SparseQ id2(2, 2);
    id2.add(0, 0, 1);
    id2.add(1, 1, 1);
    CHECK(rank_exact(id2) == 2);
}

TEST_CASE("rank of ad(e) on sl2 in the basis {e, h, f}") {
    // ad(e): e -> 0, h -> -2e, f -> h.
    SparseQ m(3, 3);
    m.add(0, 1, -2);
    m.add(1, 2, 1);
    CHECK(rank_exact(m) == 2);
    CHECK(static_cast<int>(kernel_basis_exact(m).size()) == 1);
}

TEST_CASE("kernel of the zero 2x3 matrix") {
    auto k = kernel_basis_exact(SparseQ(2, 3));
    CHECK(static_cast<int>(k.size()) == 3);
}

TEST_CASE("entries cancel and duplicate adds accumulate") {
    SparseQ m(1, 1);
    m.add(0, 0, Rational(1, 2));
    m.add(0, 0, Rational(1, 2));
    m.add(0, 0, -1);
    CHECK(m.nonzeros() == 0);
    CHECK(rank_exact(m) == 0);
}

TEST_CASE("random matrices agree with a dense elimination oracle") {
    std::mt19937 rng(20260815);
    std::uniform_int_distribution<int> val(-3, 3), dim(1, 8);
    for (int trial = 0; trial < 60; ++trial) {
        int rows = dim(rng), cols = dim(rng);
        std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols, Rational(0)));
        for (auto& row : a)
            for (auto& x : row)
                if (val(rng) > 0) x = Rational(val(rng), 1 + std::abs(val(rng)));
        SparseQ m = from_dense(a, cols);

        int r = rank_exact(m);
        CHECK(r == dense_rank_oracle(a));
        CHECK(r == rank_exact(m.transpose()));

        auto kernel = kernel_basis_exact(m);
        CHECK(r + static_cast<int>(kernel.size()) == cols);
        for (const auto& x : kernel) {
            auto y = m.apply(x);
            for (const auto& v : y) CHECK(is_zero(v));
        }
    }
}

TEST_CASE("numeric kernel dimension tracks the exact one on rational input") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> val(-2, 2), dim(1, 7);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = dim(rng), cols = dim(rng);
        SparseQ m(rows, cols);
        SparseC c(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int j = 0; j < cols; ++j) {
                int v = val(rng);
                m.add(r, j, v);
                c.add(r, j, Cplx(v, 0.0));
            }
        int exact_null = cols - rank_exact(m);
        CHECK(numeric_kernel_dim(c, 1e-9) == exact_null);
    }
}

TEST_CASE("numeric kernel rejects non-finite entries") {
    SparseC m(1, 1);
    m.add(0, 0, Cplx(std::nan(""), 0.0));
    CHECK_THROWS_AS(numeric_kernel_dim(m, 1e-9), NonFiniteEntry);
}

TEST_CASE("restriction to subspace columns") {
    // d = [[0,1],[0,0]] restricted to span{(1,0)} is zero, to span{(0,1)} is not.
    SparseQ d(2, 2);
    d.add(0, 1, 1);
    CHECK(rank_exact(d.apply_to_columns({{Rational(1), Rational(0)}})) == 0);
    CHECK(rank_exact(d.apply_to_columns({{Rational(0), Rational(1)}})) == 1);
}

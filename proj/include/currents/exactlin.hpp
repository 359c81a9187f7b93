#pragma once
#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "currents/errors.hpp"
#include "currents/rational.hpp"

namespace currents {

// Row-major sparse matrix. Rows hold (col, value) pairs sorted by column;
// explicit zeros are never stored.
template <class T>
class SparseMatrix {
  public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : nrows_(rows), ncols_(cols), rows_(rows) {}

    int rows() const { return nrows_; }
    int cols() const { return ncols_; }

    // Accumulates into the (r, c) slot and drops the entry if it cancels.
    void add(int r, int c, const T& v) {
        if (is_zero(v)) return;
        auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
            [](const std::pair<int, T>& e, int col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            it->second += v;
            if (is_zero(it->second)) row.erase(it);
        } else {
            row.insert(it, {c, v});
        }
    }

    const std::vector<std::pair<int, T>>& row(int r) const { return rows_[r]; }

    long long nonzeros() const {
        long long n = 0;
        for (const auto& r : rows_) n += static_cast<long long>(r.size());
        return n;
    }

    SparseMatrix<T> transpose() const {
        SparseMatrix<T> t(ncols_, nrows_);
        for (int r = 0; r < nrows_; ++r)
            for (const auto& [c, v] : rows_[r]) t.rows_[c].push_back({r, v});
        return t;
    }

    // Vertical stack: [this; other].
    SparseMatrix<T> vstack(const SparseMatrix<T>& other) const {
        SparseMatrix<T> s(nrows_ + other.nrows_, ncols_);
        s.rows_ = rows_;
        s.rows_.insert(s.rows_.end(), other.rows_.begin(), other.rows_.end());
        return s;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        std::vector<T> y(nrows_, T(0));
        for (int r = 0; r < nrows_; ++r)
            for (const auto& [c, v] : rows_[r]) y[r] += v * x[c];
        return y;
    }

    // A * B where B is given by dense columns; result has one column per
    // basis vector.  Used to restrict an operator to a subspace.
    SparseMatrix<T> apply_to_columns(const std::vector<std::vector<T>>& basis) const {
        SparseMatrix<T> out(nrows_, static_cast<int>(basis.size()));
        for (int j = 0; j < static_cast<int>(basis.size()); ++j) {
            for (int r = 0; r < nrows_; ++r) {
                T acc(0);
                for (const auto& [c, v] : rows_[r]) acc += v * basis[j][c];
                if (!is_zero(acc)) out.add(r, j, acc);
            }
        }
        return out;
    }

  private:
    int nrows_ = 0, ncols_ = 0;
    std::vector<std::vector<std::pair<int, T>>> rows_;
};

using SparseQ = SparseMatrix<Rational>;
using SparseC = SparseMatrix<Cplx>;

// Exact rank over the rationals: sparse Gaussian elimination with
// Markowitz-style pivot selection (least fill-in first).
int rank_exact(const SparseQ& m);

// Exact kernel basis; each vector has length m.cols().
std::vector<std::vector<Rational>> kernel_basis_exact(const SparseQ& m);

// Dimension of the numeric kernel: the number of singular values at or below
// tol times the largest singular value (tol itself when all vanish).
// Throws NonFiniteEntry on NaN or infinite input.
int numeric_kernel_dim(const SparseC& m, double tol);

Eigen::MatrixXcd to_dense(const SparseC& m);
Eigen::MatrixXcd to_dense_numeric(const SparseQ& m);

} // namespace currents

#include "currents/exactlin.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace currents {

namespace {

using Row = std::vector<std::pair<int, Rational>>;

// row_i -= f * row_p, both sorted by column; returns the merged row.
Row row_axpy(const Row& ri, const Row& rp, const Rational& f) {
    Row out;
    out.reserve(ri.size() + rp.size());
    size_t a = 0, b = 0;
    while (a < ri.size() || b < rp.size()) {
        if (b == rp.size() || (a < ri.size() && ri[a].first < rp[b].first)) {
            out.push_back(ri[a++]);
        } else if (a == ri.size() || rp[b].first < ri[a].first) {
            Rational v = -f * rp[b].second;
            if (!is_zero(v)) out.push_back({rp[b].first, v});
            ++b;
        } else {
            Rational v = ri[a].second - f * rp[b].second;
            if (!is_zero(v)) out.push_back({ri[a].first, v});
            ++a, ++b;
        }
    }
    return out;
}

struct Echelon {
    // Pivot rows in elimination order together with their pivot columns.
    std::vector<Row> rows;
    std::vector<int> pivot_cols;
};

// Forward elimination with Markowitz-style pivoting: each step picks the
// entry minimising (row_nnz - 1) * (col_nnz - 1) among active rows.
Echelon eliminate(const SparseQ& m) {
    std::vector<Row> rows;
    rows.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));

    std::vector<long long> col_count(m.cols(), 0);
    std::vector<char> active(rows.size(), 1);
    for (const auto& r : rows)
        for (const auto& [c, v] : r) ++col_count[c];

    Echelon ech;
    for (;;) {
        long long best = -1;
        int pr = -1, pc = -1;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (!active[i] || rows[i].empty()) continue;
            long long rn = static_cast<long long>(rows[i].size()) - 1;
            for (const auto& [c, v] : rows[i]) {
                long long score = rn * (col_count[c] - 1);
                if (best < 0 || score < best) {
                    best = score;
                    pr = static_cast<int>(i);
                    pc = c;
                }
            }
            if (best == 0) break; // cannot do better
        }
        if (pr < 0) break;

        const Row piv = rows[pr];
        Rational pv(0);
        for (const auto& [c, v] : piv)
            if (c == pc) pv = v;

        active[pr] = 0;
        for (const auto& [c, v] : piv) --col_count[c];

        for (size_t i = 0; i < rows.size(); ++i) {
            if (!active[i]) continue;
            Rational f(0);
            for (const auto& [c, v] : rows[i])
                if (c == pc) { f = v; break; }
            if (is_zero(f)) continue;
            f /= pv;
            for (const auto& [c, v] : rows[i]) --col_count[c];
            rows[i] = row_axpy(rows[i], piv, f);
            for (const auto& [c, v] : rows[i]) ++col_count[c];
        }

        ech.rows.push_back(piv);
        ech.pivot_cols.push_back(pc);
    }
    return ech;
}

} // namespace

int rank_exact(const SparseQ& m) {
    return static_cast<int>(eliminate(m).pivot_cols.size());
}

std::vector<std::vector<Rational>> kernel_basis_exact(const SparseQ& m) {
    Echelon ech = eliminate(m);
    std::vector<char> is_pivot(m.cols(), 0);
    for (int c : ech.pivot_cols) is_pivot[c] = 1;

    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> x(m.cols(), Rational(0));
        x[f] = 1;
        // Pivot row k only involves its own pivot column, later pivot
        // columns and free columns, so back-substitute in reverse order.
        for (int k = static_cast<int>(ech.rows.size()) - 1; k >= 0; --k) {
            int pc = ech.pivot_cols[k];
            Rational acc(0), pv(0);
            for (const auto& [c, v] : ech.rows[k]) {
                if (c == pc) pv = v;
                else acc += v * x[c];
            }
            x[pc] = -acc / pv;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

Eigen::MatrixXcd to_dense(const SparseC& m) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) d(r, c) = v;
    return d;
}

Eigen::MatrixXcd to_dense_numeric(const SparseQ& m) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) d(r, c) = Cplx(to_double(v), 0.0);
    return d;
}

int numeric_kernel_dim(const SparseC& m, double tol) {
    if (m.cols() == 0) return 0;
    if (m.rows() == 0) return m.cols();
    for (int r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r))
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NonFiniteEntry("numeric_kernel_dim: non-finite entry at row " +
                                     std::to_string(r) + ", col " + std::to_string(c));
    Eigen::MatrixXcd d = to_dense(m);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(d);
    const auto& s = svd.singularValues();
    double smax = s.size() > 0 ? s(0) : 0.0;
    double thr = tol * (smax > 0.0 ? smax : 1.0);
    int dim = 0;
    int nsv = static_cast<int>(s.size());
    for (int i = 0; i < nsv; ++i)
        if (s(i) <= thr) ++dim;
    dim += m.cols() - nsv; // columns beyond min(rows, cols) are always null
    return dim;
}

} // namespace currents

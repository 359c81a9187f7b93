#include "currents/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace currents {

namespace {

using QMat = std::vector<std::vector<Rational>>;

QMat zero_mat(int n) { return QMat(n, std::vector<Rational>(n, Rational(0))); }

QMat unit_mat(int n, int i, int j) {
    QMat m = zero_mat(n);
    m[i][j] = 1;
    return m;
}

QMat commutator(const QMat& a, const QMat& b) {
    int n = static_cast<int>(a.size());
    QMat c = zero_mat(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (is_zero(a[i][k]) && is_zero(b[i][k])) continue;
            for (int j = 0; j < n; ++j) {
                c[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
            }
        }
    return c;
}

Rational coeff_of(const BasisVec<Rational>& v, int idx) {
    for (const auto& [c, k] : v)
        if (c == idx) return k;
    return Rational(0);
}

// Expands a (traceless, for sl) matrix in the chosen basis.
BasisVec<Rational> expand(const LieAlgebraData& alg, const QMat& m) {
    BasisVec<Rational> out;
    int n = alg.n;
    if (alg.family == Family::gl) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!is_zero(m[i][j])) out.push_back({i * n + j, m[i][j]});
        return out;
    }
    // sl: off-diagonal entries map to E_ij directly; the diagonal expands in
    // H_k = E_kk - E_{k+1,k+1} via partial sums.
    for (int a = 0; a < alg.dim; ++a) {
        bool is_cartan = std::find(alg.cartan.begin(), alg.cartan.end(), a) != alg.cartan.end();
        if (is_cartan) continue;
        // locate the single nonzero entry of the basis matrix
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!is_zero(alg.rep[a][i][j]) && i != j && !is_zero(m[i][j]))
                    out.push_back({a, m[i][j]});
    }
    Rational partial(0);
    for (int k = 0; k < n - 1; ++k) {
        partial += m[k][k];
        if (!is_zero(partial)) out.push_back({alg.cartan[k], partial});
    }
    std::sort(out.begin(), out.end());
    return out;
}

int weight_under(const QMat& h, const QMat& x) {
    QMat c = commutator(h, x);
    int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!is_zero(x[i][j])) {
                Rational lam = c[i][j] / x[i][j];
                return static_cast<int>(lam.get_num().get_si());
            }
    return 0;
}

} // namespace

std::string LieAlgebraData::name() const {
    return (family == Family::sl ? "sl" : "gl") + std::to_string(n);
}

LieAlgebraData build_algebra(Family family, int n) {
    if (n < 2)
        throw UnsupportedAlgebra("algebra rank must satisfy n >= 2, got n = " +
                                 std::to_string(n));
    LieAlgebraData alg;
    alg.family = family;
    alg.n = n;

    if (family == Family::gl) {
        alg.dim = n * n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                alg.labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
                alg.rep.push_back(unit_mat(n, i, j));
                if (i == j) alg.cartan.push_back(i * n + j);
                if (j == i + 1) alg.simple_raising.push_back(i * n + j);
                if (i == j + 1) alg.simple_lowering.push_back(i * n + j);
            }
        for (int m = 0; m < n; ++m) alg.exponents.push_back(m);
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                alg.labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
                alg.rep.push_back(unit_mat(n, i, j));
                if (j == i + 1)
                    alg.simple_raising.push_back(static_cast<int>(alg.rep.size()) - 1);
            }
        for (int k = 0; k < n - 1; ++k) {
            alg.labels.push_back("H" + std::to_string(k + 1));
            QMat h = zero_mat(n);
            h[k][k] = 1;
            h[k + 1][k + 1] = -1;
            alg.rep.push_back(h);
            alg.cartan.push_back(static_cast<int>(alg.rep.size()) - 1);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                alg.labels.push_back("E" + std::to_string(j + 1) + std::to_string(i + 1));
                alg.rep.push_back(unit_mat(n, j, i));
                if (j == i + 1)
                    alg.simple_lowering.push_back(static_cast<int>(alg.rep.size()) - 1);
            }
        alg.dim = static_cast<int>(alg.rep.size());
        for (int m = 1; m < n; ++m) alg.exponents.push_back(m);
    }

    alg.bracket.assign(alg.dim, std::vector<BasisVec<Rational>>(alg.dim));
    for (int a = 0; a < alg.dim; ++a)
        for (int b = 0; b < alg.dim; ++b)
            alg.bracket[a][b] = expand(alg, commutator(alg.rep[a], alg.rep[b]));

    alg.coadjoint.assign(alg.dim, std::vector<BasisVec<Rational>>(alg.dim));
    for (int a = 0; a < alg.dim; ++a)
        for (int b = 0; b < alg.dim; ++b) {
            BasisVec<Rational> v;
            for (int c = 0; c < alg.dim; ++c) {
                Rational k = coeff_of(alg.bracket[a][c], b);
                if (!is_zero(k)) v.push_back({c, -k});
            }
            alg.coadjoint[a][b] = v;
        }

    alg.killing.assign(alg.dim, std::vector<Rational>(alg.dim, Rational(0)));
    for (int a = 0; a < alg.dim; ++a)
        for (int b = 0; b < alg.dim; ++b) {
            Rational acc(0);
            for (int d = 0; d < alg.dim; ++d)
                for (const auto& [c, k] : alg.bracket[a][d])
                    acc += coeff_of(alg.bracket[b][c], d) * k;
            alg.killing[a][b] = acc;
        }

    for (int a = 0; a < alg.dim; ++a) {
        std::vector<int> w;
        for (int i = 0; i < n - 1; ++i) {
            QMat h = zero_mat(n);
            h[i][i] = 1;
            h[i + 1][i + 1] = -1;
            w.push_back(weight_under(h, alg.rep[a]));
        }
        alg.ad_weight.push_back(w);
    }
    return alg;
}

LieAlgebraData build_algebra(const std::string& name) {
    size_t pos = 0;
    while (pos < name.size() && !std::isdigit(static_cast<unsigned char>(name[pos]))) ++pos;
    std::string fam = name.substr(0, pos);
    if (pos == name.size() || (fam != "sl" && fam != "gl"))
        throw UnsupportedAlgebra("unknown algebra '" + name + "' (expected slN or glN)");
    int n = std::stoi(name.substr(pos));
    return build_algebra(fam == "sl" ? Family::sl : Family::gl, n);
}

CompactBasis compact_basis(const LieAlgebraData& alg) {
    const int n = alg.n;
    CompactBasis cb;
    const Cplx I(0.0, 1.0);
    const double offnorm = 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
            x(i, j) = offnorm;
            x(j, i) = offnorm;
            cb.xi.push_back(x);
            Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
            y(i, j) = I * offnorm;
            y(j, i) = -I * offnorm;
            cb.xi.push_back(y);
        }
    for (int k = 1; k < n; ++k) {
        Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
        double c = 1.0 / std::sqrt(2.0 * n * k * (k + 1.0));
        for (int j = 0; j < k; ++j) d(j, j) = c;
        d(k, k) = -k * c;
        cb.xi.push_back(d);
    }
    if (alg.family == Family::gl) {
        Eigen::MatrixXcd z = Eigen::MatrixXcd::Identity(n, n) / std::sqrt(static_cast<double>(n));
        cb.center_index = static_cast<int>(cb.xi.size());
        cb.xi.push_back(z);
    }
    cb.dim = static_cast<int>(cb.xi.size());

    // B-pairing used for expansion: 2n tr(xy) on traceless, tr(xy) on center.
    auto pair_with = [&](const Eigen::MatrixXcd& m, int c) -> Cplx {
        double scale = (c == cb.center_index) ? 1.0 : 2.0 * n;
        return scale * (m * cb.xi[c]).trace();
    };

    cb.bracket.assign(cb.dim, std::vector<BasisVec<Cplx>>(cb.dim));
    for (int a = 0; a < cb.dim; ++a)
        for (int b = 0; b < cb.dim; ++b) {
            Eigen::MatrixXcd m = cb.xi[a] * cb.xi[b] - cb.xi[b] * cb.xi[a];
            BasisVec<Cplx> v;
            for (int c = 0; c < cb.dim; ++c) {
                Cplx g = pair_with(m, c);
                if (std::abs(g) > 1e-14) v.push_back({c, g});
            }
            cb.bracket[a][b] = v;
        }
    return cb;
}

namespace {

template <class T>
void fill_symmetric_form(SymmetricForm<T>& form, int dim, int k,
                         const std::function<T(const std::vector<int>&)>& sym_trace) {
    std::vector<int> idx(k, 0);
    for (;;) {
        T v = sym_trace(idx);
        if (!is_zero(v)) form.coeff[idx] = v;
        int p = k - 1;
        while (p >= 0 && idx[p] == dim - 1) --p;
        if (p < 0) break;
        int nv = idx[p] + 1;
        for (int q = p; q < k; ++q) idx[q] = nv;
    }
}

} // namespace

SymmetricForm<Rational> invariant_form(const LieAlgebraData& alg, int k) {
    if (std::find(alg.exponents.begin(), alg.exponents.end(), k - 1) == alg.exponents.end())
        throw NotAnExponent("degree " + std::to_string(k) + " is not exponent+1 for " + alg.name());
    SymmetricForm<Rational> form;
    form.degree = k;
    std::function<Rational(const std::vector<int>&)> sym = [&](const std::vector<int>& idx) {
        std::vector<int> pos(k);
        std::iota(pos.begin(), pos.end(), 0);
        Rational acc(0);
        do {
            QMat m = alg.rep[idx[pos[0]]];
            for (int q = 1; q < k; ++q) {
                const QMat& x = alg.rep[idx[pos[q]]];
                QMat nm = zero_mat(alg.n);
                for (int i = 0; i < alg.n; ++i)
                    for (int l = 0; l < alg.n; ++l) {
                        if (is_zero(m[i][l])) continue;
                        for (int j = 0; j < alg.n; ++j) nm[i][j] += m[i][l] * x[l][j];
                    }
                m = nm;
            }
            for (int i = 0; i < alg.n; ++i) acc += m[i][i];
        } while (std::next_permutation(pos.begin(), pos.end()));
        return acc;
    };
    fill_symmetric_form(form, alg.dim, k, sym);
    return form;
}

SymmetricForm<Cplx> invariant_form_compact(const LieAlgebraData& alg, const CompactBasis& cb,
                                           int k) {
    if (std::find(alg.exponents.begin(), alg.exponents.end(), k - 1) == alg.exponents.end())
        throw NotAnExponent("degree " + std::to_string(k) + " is not exponent+1 for " + alg.name());
    SymmetricForm<Cplx> form;
    form.degree = k;
    std::function<Cplx(const std::vector<int>&)> sym = [&](const std::vector<int>& idx) {
        std::vector<int> pos(k);
        std::iota(pos.begin(), pos.end(), 0);
        Cplx acc(0.0);
        do {
            Eigen::MatrixXcd m = cb.xi[idx[pos[0]]];
            for (int q = 1; q < k; ++q) m = m * cb.xi[idx[pos[q]]];
            acc += m.trace();
        } while (std::next_permutation(pos.begin(), pos.end()));
        return std::abs(acc) > 1e-14 ? acc : Cplx(0.0);
    };
    fill_symmetric_form(form, cb.dim, k, sym);
    return form;
}

} // namespace currents

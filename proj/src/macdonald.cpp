#include "currents/macdonald.hpp"

#include <algorithm>
#include <functional>
#include <type_traits>
#include <stdexcept>

namespace currents {

namespace {

bool same_bounds(const Bounds& x, const Bounds& y) {
    return x.max_d == y.max_d && x.max_p == y.max_p && x.max_w == y.max_w;
}

// Ordered compositions of `total` into `slots` parts >= 0.
void compositions(int total, int slots, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& emit) {
    if (static_cast<int>(cur.size()) == slots) {
        if (total == 0) emit(cur);
        return;
    }
    if (static_cast<int>(cur.size()) == slots - 1) {
        cur.push_back(total);
        emit(cur);
        cur.pop_back();
        return;
    }
    for (int v = 0; v <= total; ++v) {
        cur.push_back(v);
        compositions(total - v, slots, cur, emit);
        cur.pop_back();
    }
}

template <class T>
void accumulate(std::map<Monomial, T>& out, const Monomial& m, const std::type_identity_t<T>& v) {
    auto it = out.find(m);
    if (it == out.end()) {
        if (!is_zero(v)) out.emplace(m, v);
        return;
    }
    it->second += v;
    if (is_zero(it->second)) out.erase(it);
}

// sum over depth compositions and all orderings of the form's index tuples
// of  phi(a_0..a_{deg-1}) sigma^{a_0}(-k_0) ... sigma^{a_{deg-1}}(-k_{deg-1}).
template <class T>
std::map<Monomial, T> build_even_cocycle(const SymmetricForm<T>& phi, int degree, int k) {
    std::map<Monomial, T> out;
    std::vector<int> cur;
    compositions(k, degree, cur, [&](const std::vector<int>& ks) {
        for (const auto& [key, val] : phi.coeff) {
            std::vector<int> idx = key;
            do {
                std::vector<GenIndex> word;
                word.reserve(degree);
                for (int i = 0; i < degree; ++i) word.push_back(sigma(idx[i], ks[i]));
                auto [mono, sgn] = normalize(word);
                if (sgn == 0) continue;
                accumulate(out, mono, T(sgn) * val);
            } while (std::next_permutation(idx.begin(), idx.end()));
        }
    });
    return out;
}

// Slot zero becomes an odd generator of depth j >= 1 with weight j; the
// remaining slots stay even and absorb the rest of the depth.
template <class T>
std::map<Monomial, T> build_odd_cocycle(const SymmetricForm<T>& phi, int degree, int k) {
    if (k < 1) throw std::invalid_argument("odd cocycle needs weight >= 1");
    std::map<Monomial, T> out;
    for (int j = 1; j <= k; ++j) {
        std::vector<int> cur;
        compositions(k - j, degree - 1, cur, [&](const std::vector<int>& ks) {
            for (const auto& [key, val] : phi.coeff) {
                std::vector<int> idx = key;
                do {
                    std::vector<GenIndex> word{psi(idx[0], j)};
                    for (int i = 1; i < degree; ++i) word.push_back(sigma(idx[i], ks[i - 1]));
                    auto [mono, sgn] = normalize(word);
                    if (sgn == 0) continue;
                    accumulate(out, mono, T(sgn * j) * val);
                } while (std::next_permutation(idx.begin(), idx.end()));
            }
        });
    }
    return out;
}

// Graded product of two term maps with the odd reordering sign.
std::map<Monomial, Cplx> mul_terms(const std::map<Monomial, Cplx>& x,
                                   const std::map<Monomial, Cplx>& y) {
    std::map<Monomial, Cplx> out;
    for (const auto& [mx, cx] : x)
        for (const auto& [my, cy] : y) {
            auto r = mult_monomial(mx, my);
            if (!r) continue;
            accumulate(out, r->first, cx * cy * Cplx(r->second));
        }
    return out;
}

} // namespace

long long GradedSeries::at(int d, int p, int w) const {
    auto it = coeff.find({d, p, w});
    return it == coeff.end() ? 0 : it->second;
}

void GradedSeries::add(int d, int p, int w, long long v) {
    if (v == 0 || d > bounds.max_d || p > bounds.max_p || w > bounds.max_w) return;
    auto it = coeff.find({d, p, w});
    if (it == coeff.end()) {
        coeff.emplace(std::make_tuple(d, p, w), v);
        return;
    }
    it->second += v;
    if (it->second == 0) coeff.erase(it);
}

GradedSeries GradedSeries::operator*(const GradedSeries& rhs) const {
    if (!same_bounds(bounds, rhs.bounds))
        throw BoundsMismatch("series product requires identical bounds");
    GradedSeries out{bounds, {}};
    for (const auto& [kx, vx] : coeff)
        for (const auto& [ky, vy] : rhs.coeff)
            out.add(std::get<0>(kx) + std::get<0>(ky), std::get<1>(kx) + std::get<1>(ky),
                    std::get<2>(kx) + std::get<2>(ky), vx * vy);
    return out;
}

GradedSeries unit_series(const Bounds& b) {
    GradedSeries s{b, {}};
    s.add(0, 0, 0, 1);
    return s;
}

GradedSeries binomial_factor(const Bounds& b, int dd, int dp, int dw, long long sign) {
    GradedSeries s = unit_series(b);
    s.add(dd, dp, dw, sign);
    return s;
}

GradedSeries geometric_factor(const Bounds& b, int dd, int dp, int dw) {
    if (dd == 0 && dp == 0 && dw == 0)
        throw std::invalid_argument("geometric factor needs a nonconstant term");
    GradedSeries s{b, {}};
    for (int j = 0; j * dd <= b.max_d && j * dp <= b.max_p && j * dw <= b.max_w; ++j)
        s.add(j * dd, j * dp, j * dw, 1);
    return s;
}

GradedSeries predicted_truncated_series(const LieAlgebraData& alg, int n, const Bounds& b) {
    if (n < 1) throw std::invalid_argument("truncation order must be >= 1");
    GradedSeries s = unit_series(b);
    for (int m : alg.exponents) {
        s = s * binomial_factor(b, 2 * m + 1, 0, 0);
        for (int j = 1; j < n; ++j) s = s * binomial_factor(b, 2 * m + 1, 0, m * n + j);
    }
    return s;
}

GradedSeries predicted_super_series(const LieAlgebraData& alg, const Bounds& b) {
    GradedSeries s = unit_series(b);
    for (int m : alg.exponents) {
        for (int k = 0; k <= b.max_w; ++k) s = s * geometric_factor(b, 0, m + 1, k);
        for (int k = 1; k <= b.max_w; ++k) s = s * binomial_factor(b, 1, m, k);
    }
    return s;
}

GradedSeries predicted_iwahori_series(const LieAlgebraData& alg, const Bounds& b) {
    GradedSeries s = predicted_super_series(alg, b);
    // Swap the zero-mode invariant polynomials for the Cartan polynomials.
    for (int m : alg.exponents) s = s * binomial_factor(b, 0, m + 1, 0, -1);
    for (size_t i = 0; i < alg.exponents.size(); ++i) s = s * geometric_factor(b, 0, 1, 0);
    return s;
}

GradedSeries corrupt_prediction(GradedSeries s) {
    s.add(0, 0, 0, 1);
    return s;
}

std::vector<SeriesDiff> compare_series(const std::vector<BlockResult>& table,
                                       const Bounds& table_bounds,
                                       const GradedSeries& predicted) {
    if (!same_bounds(table_bounds, predicted.bounds))
        throw BoundsMismatch("table and prediction cover different boxes");
    std::vector<SeriesDiff> diffs;
    for (const auto& r : table) {
        long long want = predicted.at(r.d, r.p, r.w);
        if (r.dim != want) diffs.push_back({r.d, r.p, r.w, r.dim, want});
    }
    return diffs;
}

std::vector<Rational> Cochain::to_vector(const Block& blk) const {
    std::vector<Rational> v(blk.dim(), Rational(0));
    for (const auto& [mono, c] : terms) v[blk.index_of(mono)] = c;
    return v;
}

Cochain s_cocycle(const LieAlgebraData& alg, int degree, int k) {
    Cochain c;
    c.d = 0;
    c.p = degree;
    c.w = k;
    c.terms = build_even_cocycle(invariant_form(alg, degree), degree, k);
    return c;
}

Cochain e_cocycle(const LieAlgebraData& alg, int degree, int k) {
    Cochain c;
    c.d = 1;
    c.p = degree - 1;
    c.w = k;
    c.terms = build_odd_cocycle(invariant_form(alg, degree), degree, k);
    return c;
}

std::map<Monomial, Cplx> s_cocycle_numeric(const LieAlgebraData& alg, const CompactBasis& cb,
                                           int degree, int k) {
    return build_even_cocycle(invariant_form_compact(alg, cb, degree), degree, k);
}

std::map<Monomial, Cplx> e_cocycle_numeric(const LieAlgebraData& alg, const CompactBasis& cb,
                                           int degree, int k) {
    return build_odd_cocycle(invariant_form_compact(alg, cb, degree), degree, k);
}

std::map<Monomial, Rational> apply_word_op(const WordOp<Rational>& op,
                                           const std::map<Monomial, Rational>& terms) {
    std::map<Monomial, Rational> out;
    TermList<Rational> image;
    for (const auto& [mono, c] : terms) {
        image.clear();
        op(mono, image);
        for (const auto& [m2, c2] : image) accumulate(out, m2, c * c2);
    }
    return out;
}

std::map<Monomial, Rational> dbar_image_exact(const LieAlgebraData& alg, const Cochain& c) {
    Universe uni = super_relative_universe(alg);
    return apply_word_op(ce_word_op(uni), c.terms);
}

std::vector<SpanDefect> verify_generators_span(HodgeContext& ctx, const Bounds& bounds,
                                               double tol) {
    struct GenSpec {
        int dd, dp, dw;
        bool odd;
        std::map<Monomial, Cplx> terms;
    };
    std::vector<GenSpec> gens;
    for (int m : ctx.alg->exponents) {
        int deg = m + 1;
        if (deg <= bounds.max_p)
            for (int k = 0; k <= bounds.max_w; ++k)
                gens.push_back({0, deg, k, false, s_cocycle_numeric(*ctx.alg, ctx.cb, deg, k)});
        if (bounds.max_d >= 1 && deg - 1 <= bounds.max_p)
            for (int k = 1; k <= bounds.max_w; ++k)
                gens.push_back({1, deg - 1, k, true, e_cocycle_numeric(*ctx.alg, ctx.cb, deg, k)});
    }

    std::vector<SpanDefect> defects;
    for (int p = 0; p <= bounds.max_p; ++p)
        for (int w = 0; w <= bounds.max_w; ++w)
            for (int d = 0; d <= bounds.max_d; ++d) {
                const Block& blk = ctx.block(d, p, w);
                if (blk.dim() == 0) continue;

                std::vector<Eigen::VectorXcd> cols;
                std::map<Monomial, Cplx> one{{Monomial{}, Cplx(1.0)}};
                std::function<void(size_t, int, int, int, const std::map<Monomial, Cplx>&)> dfs =
                    [&](size_t i, int rd, int rp, int rw, const std::map<Monomial, Cplx>& acc) {
                        if (rd == 0 && rp == 0 && rw == 0) {
                            if (acc.empty()) return;
                            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(blk.dim());
                            for (const auto& [mono, c] : acc) v(blk.index_of(mono)) += c;
                            cols.push_back(v);
                            return;
                        }
                        if (i == gens.size()) return;
                        dfs(i + 1, rd, rp, rw, acc);
                        const GenSpec& g = gens[i];
                        std::map<Monomial, Cplx> cur = acc;
                        int nd = rd, np = rp, nw = rw;
                        while (nd >= g.dd && np >= g.dp && nw >= g.dw) {
                            nd -= g.dd;
                            np -= g.dp;
                            nw -= g.dw;
                            cur = mul_terms(cur, g.terms);
                            if (cur.empty()) break;
                            dfs(i + 1, nd, np, nw, cur);
                            if (g.odd) break; // odd generators square to zero
                        }
                    };
                dfs(0, d, p, w, one);

                HarmonicBasis h = harmonic_basis(ctx, d, p, w, tol);
                int rank = 0;
                if (!cols.empty()) {
                    Eigen::MatrixXcd prod(blk.dim(), static_cast<int>(cols.size()));
                    for (int j = 0; j < prod.cols(); ++j) prod.col(j) = cols[j];
                    Eigen::VectorXd scale = metric_diagonal(blk).cwiseSqrt();
                    Eigen::MatrixXcd scaled = scale.cast<Cplx>().asDiagonal() * prod;
                    rank = static_cast<int>(prod.cols() - dense_kernel(scaled, tol).cols());
                }
                if (rank != h.vectors.cols())
                    defects.push_back({d, p, w, h.vectors.cols(), rank});
            }
    return defects;
}

Delta1Report delta1_cokernel(int m, int n, int max_k) {
    if (m < 0 || n < 0 || max_k < 0) throw std::invalid_argument("delta1 needs m, n, max_k >= 0");
    Delta1Report rep;
    rep.m = m;
    rep.n = n;
    rep.max_k = max_k;
    int rows = std::max(0, n + max_k); // target basis z^j dz, j = 0..n+max_k-1
    rep.matrix = SparseQ(rows, max_k + 1);
    for (int k = 0; k <= max_k; ++k) {
        long long c = static_cast<long long>(m) * n + n + k;
        int j = n + k - 1;
        if (j >= 0 && c != 0) rep.matrix.add(j, k, Rational(static_cast<long>(c)));
    }
    rep.kernel_dim = static_cast<int>(kernel_basis_exact(rep.matrix).size());
    int r = rank_exact(rep.matrix);
    for (int j = 0; j < rows; ++j) {
        SparseQ aug(rows, max_k + 2);
        for (int i = 0; i < rows; ++i)
            for (const auto& [ccol, val] : rep.matrix.row(i)) aug.add(i, ccol, val);
        aug.add(j, max_k + 1, Rational(1));
        if (rank_exact(aug) > r) rep.cokernel_weights.push_back(m * n + j + 1);
    }
    return rep;
}

std::vector<SeriesDiff> iwahori_series_check(const LieAlgebraData& alg, const Bounds& bounds,
                                             int threads) {
    auto table = iwahori_cohomology_table(alg, bounds, threads);
    return compare_series(table, bounds, predicted_iwahori_series(alg, bounds));
}

} // namespace currents

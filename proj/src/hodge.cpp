#include "currents/hodge.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "currents/errors.hpp"

namespace currents {

Eigen::VectorXd metric_diagonal(const Block& blk) {
    Eigen::VectorXd g(blk.dim());
    for (int i = 0; i < blk.dim(); ++i) {
        const Monomial& m = blk.basis[i];
        double v = 1.0;
        for (const auto& ps : m.psis) {
            if (ps.depth == 0) throw std::logic_error("metric undefined on depth-0 odd generators");
            v /= ps.depth;
        }
        size_t j = 0;
        while (j < m.sigmas.size()) {
            size_t k = j;
            while (k < m.sigmas.size() && m.sigmas[k] == m.sigmas[j]) ++k;
            for (size_t r = 2; r <= k - j; ++r) v *= static_cast<double>(r);
            j = k;
        }
        g(i) = v;
    }
    return g;
}

HodgeContext::HodgeContext(const LieAlgebraData& a)
    : alg(&a),
      cb(compact_basis(a)),
      uni(super_relative_universe(a)),
      uni_rel(relabeled_universe(a)),
      ops(compact_ops(cb, uni)),
      ops_rel(compact_ops(cb, uni_rel)),
      cache(uni),
      cache_rel(uni_rel) {
    if (a.family != Family::sl)
        throw UnsupportedAlgebra("metric operators need the Killing normalization; use sl(n)");
}

const Block& HodgeContext::block(int d, int p, int w) { return cache.get(d, p, w); }

namespace {

Eigen::MatrixXcd rule_matrix(const Block& src, const Block& tgt, const GenRule<Cplx>& rule,
                             bool odd) {
    WordOp<Cplx> op = [&rule, odd](const Monomial& m, TermList<Cplx>& out) {
        apply_derivation<Cplx>(m, rule, odd, out);
    };
    return dense_operator(src, tgt, op);
}

GenRule<Cplx> combine(GenRule<Cplx> f, GenRule<Cplx> g) {
    return [f = std::move(f), g = std::move(g)](const GenIndex& x,
                                                std::vector<std::pair<GenIndex, Cplx>>& out) {
        f(x, out);
        g(x, out);
    };
}

// Wedge by psi^a(-m), and its metric adjoint: contraction scaled by 1/m.
Eigen::MatrixXcd wedge_matrix(const Block& src, const Block& tgt, int a, int m) {
    WordOp<Cplx> op = [a, m](const Monomial& mono, TermList<Cplx>& out) {
        if (auto r = mult_gen(mono, psi(a, m)))
            out.push_back({r->first, Cplx(static_cast<double>(r->second), 0.0)});
    };
    return dense_operator(src, tgt, op);
}

Eigen::MatrixXcd contraction_matrix(const Block& src, const Block& tgt, int a, int m) {
    WordOp<Cplx> op = [a, m](const Monomial& mono, TermList<Cplx>& out) {
        if (auto r = contract_psi(mono, psi(a, m)))
            out.push_back({r->first, Cplx(static_cast<double>(r->second) / m, 0.0)});
    };
    return dense_operator(src, tgt, op);
}

Eigen::MatrixXcd dscale(const Eigen::VectorXd& s, const Eigen::MatrixXcd& m) {
    return s.cast<Cplx>().asDiagonal() * m;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Eigen::MatrixXcd vstack_dense(const std::vector<Eigen::MatrixXcd>& parts, int cols) {
    int rows = 0;
    for (const auto& p : parts) rows += static_cast<int>(p.rows());
    Eigen::MatrixXcd big(rows, cols);
    int at = 0;
    for (const auto& p : parts) {
        big.middleRows(at, p.rows()) = p;
        at += static_cast<int>(p.rows());
    }
    return big;
}

} // namespace

Eigen::MatrixXcd dense_kernel(const Eigen::MatrixXcd& m, double tol) {
    if (m.cols() == 0) return Eigen::MatrixXcd(0, 0);
    if (m.rows() == 0) return Eigen::MatrixXcd::Identity(m.cols(), m.cols());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    Eigen::VectorXd sv = svd.singularValues();
    double thr = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
    int k = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) <= thr)
            ++k;
        else if (sv(i) < 100 * thr)
            throw ToleranceAmbiguity("singular value " + std::to_string(sv(i)) +
                                     " within two decades of kernel threshold " +
                                     std::to_string(thr));
    }
    int extra = static_cast<int>(m.cols()) - static_cast<int>(sv.size());
    return svd.matrixV().rightCols(k + std::max(0, extra));
}

Eigen::MatrixXcd dbar_matrix(HodgeContext& ctx, int d, int p, int w) {
    return dense_operator(ctx.cache.get(d, p, w), ctx.cache.get(d + 1, p, w), ctx.ops.dbar());
}

Eigen::MatrixXcd dbar_star_matrix(HodgeContext& ctx, int d, int p, int w) {
    const Block& src = ctx.cache.get(d, p, w);
    if (d == 0) return Eigen::MatrixXcd::Zero(0, src.dim());
    return dense_operator(src, ctx.cache.get(d - 1, p, w), ctx.ops.dbar_star());
}

Eigen::MatrixXcd laplacian_matrix(HodgeContext& ctx, int d, int p, int w) {
    Eigen::MatrixXcd acc = dbar_star_matrix(ctx, d + 1, p, w) * dbar_matrix(ctx, d, p, w);
    if (d > 0) acc += dbar_matrix(ctx, d - 1, p, w) * dbar_star_matrix(ctx, d, p, w);
    return acc;
}

Eigen::MatrixXcd current_laplacian_matrix(HodgeContext& ctx, int d, int p, int w) {
    const Block& blk = ctx.cache.get(d, p, w);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(blk.dim(), blk.dim());
    for (int m = 1; m <= w; ++m) {
        const Block& mid = ctx.cache.get(d, p, w - m);
        if (mid.dim() == 0) continue;
        for (int a = 0; a < ctx.cb.dim; ++a) {
            Eigen::MatrixXcd down = rule_matrix(
                blk, mid, combine(ctx.ops.r_rule(a, m), ctx.ops.ad_star_rule(a, -m)), false);
            Eigen::MatrixXcd up = rule_matrix(
                mid, blk, combine(ctx.ops.r_rule(a, -m), ctx.ops.ad_rule(a, -m)), false);
            acc += (1.0 / m) * (up * down);
        }
    }
    return acc;
}

Eigen::MatrixXcd d_term_matrix(HodgeContext& ctx, int d, int p, int w) {
    const Block& blk = ctx.cache.get(d, p, w);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(blk.dim(), blk.dim());
    if (d == 0) return acc;
    for (int m = 1; m <= w; ++m) {
        const Block& mid = ctx.cache.get(d - 1, p + 1, w - m);
        if (mid.dim() == 0) continue;
        for (int a = 0; a < ctx.cb.dim; ++a) {
            Eigen::MatrixXcd down = rule_matrix(blk, mid, ctx.ops.d_star_rule(a, -m), true);
            Eigen::MatrixXcd up = rule_matrix(mid, blk, ctx.ops.d_rule(a, -m), true);
            acc += up * down;
        }
    }
    return acc;
}

Eigen::MatrixXcd k_term_matrix(HodgeContext& ctx, int d, int p, int w) {
    const Block& blk = ctx.cache.get(d, p, w);
    const int dim = ctx.cb.dim;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(blk.dim(), blk.dim());
    if (d == 0 || blk.dim() == 0) return acc;

    std::vector<Eigen::MatrixXcd> zero(dim);
    for (int c = 0; c < dim; ++c) zero[c] = dense_operator(blk, blk, ctx.ops.zero_mode(c));

    for (int m = 1; m <= w; ++m) {
        const Block& mid = ctx.cache.get(d - 1, p, w - m);
        if (mid.dim() == 0) continue;
        std::vector<Eigen::MatrixXcd> wedge(dim), cut(dim);
        for (int a = 0; a < dim; ++a) {
            wedge[a] = wedge_matrix(mid, blk, a, m);
            cut[a] = contraction_matrix(blk, mid, a, m);
        }
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
                if (ctx.cb.bracket[a][b].empty()) continue;
                Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(blk.dim(), blk.dim());
                for (const auto& [c, v] : ctx.cb.bracket[a][b]) z += v * zero[c];
                acc += z * (wedge[a] * cut[b]);
            }
    }
    return acc;
}

Eigen::MatrixXcd t_term_apply(HodgeContext& ctx, int d, int p, int w,
                              const Eigen::MatrixXcd& cols) {
    const Block& blk = ctx.cache.get(d, p, w);
    const int dim = ctx.cb.dim;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(blk.dim(), cols.cols());
    if (d == 0 || blk.dim() == 0) return acc;

    const Block& top = ctx.cache.get(d - 1, p, w);
    for (int n = 1; n <= w; ++n) {
        const Block& after_cut = ctx.cache.get(d - 1, p, w - n);
        if (after_cut.dim() == 0) continue;
        for (int b = 0; b < dim; ++b) {
            Eigen::MatrixXcd x = contraction_matrix(blk, after_cut, b, n) * cols;
            if (max_abs(x) == 0.0) continue;
            Eigen::MatrixXcd raised = rule_matrix(after_cut, top, ctx.ops.r_rule(b, -n), false) * x;
            for (int m = 1; m <= w; ++m) {
                const Block& mid = ctx.cache.get(d - 1, p, w - m);
                if (mid.dim() == 0) continue;
                const Block* low =
                    w - n - m >= 0 ? &ctx.cache.get(d - 1, p, w - n - m) : nullptr;
                for (int a = 0; a < dim; ++a) {
                    // [R_a(m), R_b(-n)] x
                    Eigen::MatrixXcd y = rule_matrix(top, mid, ctx.ops.r_rule(a, m), false) * raised;
                    if (low && low->dim() > 0)
                        y -= rule_matrix(*low, mid, ctx.ops.r_rule(b, -n), false) *
                             (rule_matrix(after_cut, *low, ctx.ops.r_rule(a, m), false) * x);
                    // - R_{[a,b]}(m-n) x
                    for (const auto& [c, v] : ctx.cb.bracket[a][b])
                        y -= v * (rule_matrix(after_cut, mid, ctx.ops.r_rule(c, m - n), false) * x);
                    if (max_abs(y) == 0.0) continue;
                    acc += wedge_matrix(mid, blk, a, m) * y;
                }
            }
        }
    }
    return acc;
}

Eigen::MatrixXcd t_term_matrix(HodgeContext& ctx, int d, int p, int w) {
    const Block& blk = ctx.cache.get(d, p, w);
    return t_term_apply(ctx, d, p, w, Eigen::MatrixXcd::Identity(blk.dim(), blk.dim()));
}

Eigen::MatrixXcd invariant_columns(HodgeContext& ctx, int d, int p, int w, double tol) {
    const Block& blk = ctx.cache.get(d, p, w);
    if (blk.dim() == 0) return Eigen::MatrixXcd(0, 0);
    Eigen::VectorXd s = metric_diagonal(blk).cwiseSqrt();
    Eigen::VectorXd sinv = s.cwiseInverse();
    std::vector<Eigen::MatrixXcd> parts;
    parts.reserve(ctx.cb.dim);
    for (int a = 0; a < ctx.cb.dim; ++a)
        parts.push_back(dscale(s, dense_operator(blk, blk, ctx.ops.zero_mode(a))) *
                        sinv.cast<Cplx>().asDiagonal());
    Eigen::MatrixXcd ker = dense_kernel(vstack_dense(parts, blk.dim()), tol);
    return dscale(sinv, ker);
}

namespace {

// A* = G_src^{-1} A^H G_tgt for A : src -> tgt; returns the max deviation of
// the implemented adjoint from that formula.
double adjoint_deviation(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& a_star,
                         const Eigen::VectorXd& g_src, const Eigen::VectorXd& g_tgt) {
    if (a.size() == 0 && a_star.size() == 0) return 0.0;
    Eigen::MatrixXcd expect =
        dscale(g_src.cwiseInverse(), a.adjoint() * g_tgt.cast<Cplx>().asDiagonal());
    return max_abs(a_star - expect);
}

} // namespace

double verify_adjointness(HodgeContext& ctx, int d, int p, int w) {
    const Block& blk = ctx.cache.get(d, p, w);
    if (blk.dim() == 0) return 0.0;
    Eigen::VectorXd g = metric_diagonal(blk);
    double dev = 0.0;

    for (int m = 1; m <= w; ++m) {
        const Block& even_tgt = ctx.cache.get(d, p, w - m);
        if (even_tgt.dim() > 0) {
            Eigen::VectorXd gt = metric_diagonal(even_tgt);
            dev = std::max(dev, adjoint_deviation(
                                    rule_matrix(blk, even_tgt, ctx.ops.r_rule(0, m), false),
                                    rule_matrix(even_tgt, blk, ctx.ops.r_rule(0, -m), false), g, gt));
            dev = std::max(dev, adjoint_deviation(
                                    rule_matrix(blk, even_tgt, ctx.ops.ad_rule(1 % ctx.cb.dim, m), false),
                                    rule_matrix(even_tgt, blk, ctx.ops.ad_star_rule(1 % ctx.cb.dim, m), false),
                                    g, gt));
        }
        if (d > 0) {
            const Block& odd_tgt = ctx.cache.get(d - 1, p + 1, w - m);
            if (odd_tgt.dim() > 0) {
                Eigen::VectorXd gt = metric_diagonal(odd_tgt);
                dev = std::max(dev, adjoint_deviation(
                                        rule_matrix(odd_tgt, blk, ctx.ops.d_rule(0, -m), true),
                                        rule_matrix(blk, odd_tgt, ctx.ops.d_star_rule(0, -m), true),
                                        gt, g));
            }
            const Block& cut_tgt = ctx.cache.get(d - 1, p, w - m);
            if (cut_tgt.dim() > 0) {
                Eigen::VectorXd gt = metric_diagonal(cut_tgt);
                dev = std::max(dev, adjoint_deviation(wedge_matrix(cut_tgt, blk, 0, m),
                                                      contraction_matrix(blk, cut_tgt, 0, m), gt, g));
            }
        }
    }

    const Block& up = ctx.cache.get(d + 1, p, w);
    if (up.dim() > 0) {
        Eigen::VectorXd gu = metric_diagonal(up);
        dev = std::max(dev, adjoint_deviation(dbar_matrix(ctx, d, p, w),
                                              dbar_star_matrix(ctx, d + 1, p, w), g, gu));
    }
    return dev;
}

double verify_laplacian_split(HodgeContext& ctx, int d, int p, int w) {
    Eigen::MatrixXcd lhs = laplacian_matrix(ctx, d, p, w);
    Eigen::MatrixXcd rhs = current_laplacian_matrix(ctx, d, p, w) + d_term_matrix(ctx, d, p, w) +
                           k_term_matrix(ctx, d, p, w);
    return max_abs(lhs - rhs);
}

NakanoReport verify_nakano(HodgeContext& ctx, int d, int p, int w) {
    NakanoReport rep;
    const Block& blk = ctx.cache.get(d, p, w);
    if (blk.dim() == 0) return rep;
    Eigen::MatrixXcd v = invariant_columns(ctx, d, p, w);
    if (v.cols() == 0) return rep;
    Eigen::MatrixXcd lhs = laplacian_matrix(ctx, d, p, w) * v -
                           current_laplacian_matrix(ctx, d, p, w) * v -
                           t_term_apply(ctx, d, p, w, v) - static_cast<double>(d) * v;
    rep.invariant_identity = max_abs(lhs);
    rep.k_on_invariants = max_abs(k_term_matrix(ctx, d, p, w) * v);
    return rep;
}

double verify_t_decomposition(HodgeContext& ctx, int d, int p, int w) {
    const Block& blk = ctx.cache.get(d, p, w);
    if (blk.dim() == 0) return 0.0;
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(blk.dim(), blk.dim());
    return max_abs(t_term_apply(ctx, d, p, w, id) + static_cast<double>(d) * id -
                   d_term_matrix(ctx, d, p, w));
}

LinearGermCoefficients linear_germ_coefficients(HodgeContext& ctx, int n) {
    LinearGermCoefficients out;
    out.n = n;
    double h = 0.0;
    for (int m = 1; m < n; ++m) h += 1.0 / m;
    out.expected_laplacian = h;
    out.expected_current = h - 1.0 + 1.0 / n;
    out.expected_d = 1.0;
    out.expected_k = -1.0 / n;

    const Block& blk = ctx.cache.get(1, 0, n);
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(blk.dim(), blk.dim());
    auto record = [&](const Eigen::MatrixXcd& m, double expect, double& coef) {
        coef = m.diagonal().real().mean();
        out.max_deviation = std::max(out.max_deviation, max_abs(m - expect * id));
    };
    record(laplacian_matrix(ctx, 1, 0, n), out.expected_laplacian, out.laplacian);
    record(current_laplacian_matrix(ctx, 1, 0, n), out.expected_current, out.current);
    record(d_term_matrix(ctx, 1, 0, n), out.expected_d, out.d_term);
    record(k_term_matrix(ctx, 1, 0, n), out.expected_k, out.k_term);
    return out;
}

HarmonicBasis harmonic_basis(HodgeContext& ctx, int d, int p, int w, double tol) {
    const Block& blk = ctx.cache.get(d, p, w);
    HarmonicBasis hb{d, p, w, Eigen::MatrixXcd(blk.dim(), 0)};
    if (blk.dim() == 0) return hb;
    Eigen::MatrixXcd v = invariant_columns(ctx, d, p, w);
    if (v.cols() == 0) return hb;

    Eigen::VectorXd s = metric_diagonal(blk).cwiseSqrt();
    Eigen::MatrixXcd vh = dscale(s, v); // orthonormal columns
    Eigen::MatrixXcd lh = dscale(s, laplacian_matrix(ctx, d, p, w)) *
                          s.cwiseInverse().cast<Cplx>().asDiagonal();
    Eigen::MatrixXcd m = vh.adjoint() * lh * vh;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((m + m.adjoint()) / 2.0);
    Eigen::VectorXd ev = es.eigenvalues();

    double thr = tol * std::max(1.0, ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0);
    int k = 0;
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) <= thr)
            ++k;
        else if (ev(i) < 100 * thr)
            throw ToleranceAmbiguity("Laplacian eigenvalue " + std::to_string(ev(i)) +
                                     " within two decades of kernel threshold " +
                                     std::to_string(thr));
    }
    hb.vectors = v * es.eigenvectors().leftCols(k);
    return hb;
}

HarmonicBasis harmonic_basis_joint(HodgeContext& ctx, int d, int p, int w, double tol) {
    const Block& blk = ctx.cache.get(d, p, w);
    HarmonicBasis hb{d, p, w, Eigen::MatrixXcd(blk.dim(), 0)};
    if (blk.dim() == 0) return hb;

    const int wrel = w - d; // every original odd factor carries depth >= 1
    const Block& rel = ctx.cache_rel.get(d, p, wrel);
    if (rel.dim() != blk.dim()) throw std::logic_error("relabel is not a bijection on the block");

    std::vector<Eigen::MatrixXcd> parts;
    for (int a = 0; a < ctx.cb.dim; ++a)
        parts.push_back(dense_operator(rel, rel, ctx.ops_rel.zero_mode(a)));
    if (d > 0)
        for (int m = 1; m <= wrel + 1; ++m) {
            const Block& tgt = ctx.cache_rel.get(d - 1, p + 1, wrel + 1 - m);
            if (tgt.dim() == 0) continue;
            for (int a = 0; a < ctx.cb.dim; ++a)
                parts.push_back(rule_matrix(rel, tgt, ctx.ops_rel.d_star_relabeled_rule(a, m), true));
        }
    for (int m = 1; m <= wrel; ++m) {
        const Block& tgt = ctx.cache_rel.get(d, p, wrel - m);
        if (tgt.dim() == 0) continue;
        for (int a = 0; a < ctx.cb.dim; ++a)
            parts.push_back(rule_matrix(
                rel, tgt,
                combine(ctx.ops_rel.r_rule(a, m), ctx.ops_rel.ad_star_relabeled_rule(a, m)),
                false));
    }

    Eigen::MatrixXcd ker = dense_kernel(vstack_dense(parts, rel.dim()), tol);

    // back to original labels: coefficients pick up the product of odd depths
    Eigen::MatrixXcd h(blk.dim(), ker.cols());
    for (int i = 0; i < blk.dim(); ++i) {
        double f = 1.0;
        for (const auto& ps : blk.basis[i].psis) f *= ps.depth;
        h.row(i) = f * ker.row(rel.index_of(shift_psi_depths(blk.basis[i], -1)));
    }

    Eigen::VectorXd s = metric_diagonal(blk).cwiseSqrt();
    Eigen::MatrixXcd hh = dscale(s, h);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(hh);
    Eigen::MatrixXcd q =
        qr.householderQ() * Eigen::MatrixXcd::Identity(blk.dim(), h.cols());
    hb.vectors = dscale(s.cwiseInverse(), q);
    return hb;
}

double subspace_distance(HodgeContext& ctx, const HarmonicBasis& x, const HarmonicBasis& y) {
    if (std::tuple{x.d, x.p, x.w} != std::tuple{y.d, y.p, y.w})
        throw BoundsMismatch("harmonic bases live on different blocks");
    const Block& blk = ctx.cache.get(x.d, x.p, x.w);
    if (blk.dim() == 0) return 0.0;
    Eigen::VectorXd s = metric_diagonal(blk).cwiseSqrt();
    Eigen::MatrixXcd u1 = dscale(s, x.vectors);
    Eigen::MatrixXcd u2 = dscale(s, y.vectors);
    Eigen::MatrixXcd diff = u1 * u1.adjoint() - u2 * u2.adjoint();
    if (diff.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(diff);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double verify_harmonic_subalgebra(HodgeContext& ctx, std::tuple<int, int, int> a,
                                  std::tuple<int, int, int> b, double tol) {
    auto [da, pa, wa] = a;
    auto [db, pb, wb] = b;
    HarmonicBasis ha = harmonic_basis(ctx, da, pa, wa, tol);
    HarmonicBasis hb = harmonic_basis(ctx, db, pb, wb, tol);
    HarmonicBasis hab = harmonic_basis(ctx, da + db, pa + pb, wa + wb, tol);
    const Block& blk_a = ctx.cache.get(da, pa, wa);
    const Block& blk_b = ctx.cache.get(db, pb, wb);
    const Block& blk_ab = ctx.cache.get(da + db, pa + pb, wa + wb);

    Eigen::VectorXd s = metric_diagonal(blk_ab).cwiseSqrt();
    Eigen::MatrixXcd u = dscale(s, hab.vectors);

    double dev = 0.0;
    for (int i = 0; i < ha.vectors.cols(); ++i)
        for (int j = 0; j < hb.vectors.cols(); ++j) {
            Eigen::VectorXcd z = Eigen::VectorXcd::Zero(blk_ab.dim());
            for (int mu = 0; mu < blk_a.dim(); ++mu) {
                if (ha.vectors(mu, i) == Cplx(0, 0)) continue;
                for (int nu = 0; nu < blk_b.dim(); ++nu) {
                    if (hb.vectors(nu, j) == Cplx(0, 0)) continue;
                    if (auto r = mult_monomial(blk_a.basis[mu], blk_b.basis[nu]))
                        z(blk_ab.index_of(r->first)) +=
                            ha.vectors(mu, i) * hb.vectors(nu, j) * Cplx(r->second, 0.0);
                }
            }
            Eigen::VectorXcd zh = dscale(s, z);
            double norm = zh.norm();
            if (norm < 1e-12) continue;
            Eigen::VectorXcd res = zh - u * (u.adjoint() * zh);
            dev = std::max(dev, res.norm() / norm);
        }
    return dev;
}

} // namespace currents

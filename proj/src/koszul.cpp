#include "currents/koszul.hpp"

#include <memory>

#include "currents/parallel.hpp"

namespace currents {

WordOp<Rational> ce_word_op(const Universe& uni) {
    const LieAlgebraData* alg = uni.alg;
    // pair table: for each target direction g, all (a, b, c_ab^g)
    auto pairs =
        std::make_shared<std::vector<std::vector<std::tuple<int, int, Rational>>>>(alg->dim);
    for (int a = 0; a < alg->dim; ++a)
        for (int b = 0; b < alg->dim; ++b)
            for (const auto& [g, c] : alg->bracket[a][b]) (*pairs)[g].push_back({a, b, c});

    Universe u = uni;
    return [alg, pairs, u](const Monomial& mono, TermList<Rational>& out) {
        std::vector<GenIndex> word(mono.psis);
        word.insert(word.end(), mono.sigmas.begin(), mono.sigmas.end());
        const int dcount = mono.d();

        auto emit = [&](size_t i, const GenIndex& g1, const GenIndex& g2, const Rational& coef) {
            std::vector<GenIndex> img;
            img.reserve(word.size() + 1);
            img.insert(img.end(), word.begin(), word.begin() + i);
            img.push_back(g1);
            img.push_back(g2);
            img.insert(img.end(), word.begin() + i + 1, word.end());
            auto [nm, sgn] = normalize(img);
            if (sgn == 0) return;
            out.push_back({nm, sgn > 0 ? coef : -coef});
        };

        for (size_t i = 0; i < word.size(); ++i) {
            const GenIndex& g = word[i];
            int odd_before = static_cast<int>(std::min<size_t>(i, dcount));
            int pre = odd_before % 2 == 0 ? 1 : -1;
            if (g.kind == GenKind::Psi) {
                for (const auto& [a, b, c] : (*pairs)[g.a])
                    for (int m = 0; m <= g.depth; ++m) {
                        int n = g.depth - m;
                        if (!u.psi_allowed(a, m) || !u.psi_allowed(b, n)) continue;
                        emit(i, psi(a, m), psi(b, n), Rational(-pre) * c / 2);
                    }
            } else {
                for (int m = 0; m <= g.depth; ++m) {
                    int nd = g.depth - m;
                    for (int a = 0; a < alg->dim; ++a) {
                        if (!u.psi_allowed(a, m)) continue;
                        for (const auto& [c2, k] : alg->coadjoint[a][g.a]) {
                            if (!u.sigma_allowed(c2, nd)) continue;
                            emit(i, psi(a, m), sigma(c2, nd), Rational(pre) * k);
                        }
                    }
                }
            }
        }
    };
}

SparseQ ce_matrix(BlockCache& cache, int d, int p, int w, bool weight_zero_only) {
    const Block& src = cache.get(d, p, w, weight_zero_only);
    const Block& tgt = cache.get(d + 1, p, w, weight_zero_only);
    return operator_matrix<Rational>(src, tgt, ce_word_op(cache.universe()));
}

// ---- compact-basis operators ----

CompactOps compact_ops(const CompactBasis& cb, const Universe& uni) {
    return CompactOps{&cb, uni};
}

GenRule<Cplx> CompactOps::ad_rule(int a, int m) const {
    const CompactBasis* c = cb;
    Universe u = uni;
    return [c, u, a, m](const GenIndex& g, std::vector<std::pair<GenIndex, Cplx>>& out) {
        if (g.kind != GenKind::Psi) return;
        int nd = g.depth - m;
        for (const auto& [idx, v] : c->bracket[a][g.a])
            if (u.psi_allowed(idx, nd)) out.push_back({psi(idx, nd), v});
    };
}

GenRule<Cplx> CompactOps::r_rule(int a, int m) const {
    const CompactBasis* c = cb;
    Universe u = uni;
    return [c, u, a, m](const GenIndex& g, std::vector<std::pair<GenIndex, Cplx>>& out) {
        if (g.kind != GenKind::Sigma) return;
        int nd = g.depth - m;
        for (const auto& [idx, v] : c->bracket[a][g.a])
            if (u.sigma_allowed(idx, nd)) out.push_back({sigma(idx, nd), v});
    };
}

GenRule<Cplx> CompactOps::ad_star_rule(int a, int m) const {
    const CompactBasis* c = cb;
    Universe u = uni;
    return [c, u, a, m](const GenIndex& g, std::vector<std::pair<GenIndex, Cplx>>& out) {
        if (g.kind != GenKind::Psi) return;
        if (g.depth == 0) throw std::logic_error("metric adjoint undefined on depth-0 psi");
        int nd = g.depth + m;
        if (nd < 1) return; // vanishing condition of the adjoint
        Cplx scale(static_cast<double>(nd) / g.depth, 0.0);
        for (const auto& [idx, v] : c->bracket[a][g.a])
            if (u.psi_allowed(idx, nd)) out.push_back({psi(idx, nd), scale * v});
    };
}

GenRule<Cplx> CompactOps::d_rule(int a, int m) const {
    const CompactBasis* c = cb;
    Universe u = uni;
    return [c, u, a, m](const GenIndex& g, std::vector<std::pair<GenIndex, Cplx>>& out) {
        if (g.kind != GenKind::Sigma) return;
        int nd = g.depth - m;
        if (nd < 1) return;
        for (const auto& [idx, v] : c->bracket[a][g.a])
            if (u.psi_allowed(idx, nd)) out.push_back({psi(idx, nd), v});
    };
}

GenRule<Cplx> CompactOps::d_star_rule(int a, int m) const {
    const CompactBasis* c = cb;
    Universe u = uni;
    return [c, u, a, m](const GenIndex& g, std::vector<std::pair<GenIndex, Cplx>>& out) {
        if (g.kind != GenKind::Psi) return;
        if (g.depth == 0) throw std::logic_error("metric adjoint undefined on depth-0 psi");
        int nd = g.depth + m;
        if (nd < 0) return;
        Cplx scale(1.0 / g.depth, 0.0);
        for (const auto& [idx, v] : c->bracket[a][g.a])
            if (u.sigma_allowed(idx, nd)) out.push_back({sigma(idx, nd), scale * v});
    };
}

GenRule<Cplx> CompactOps::ad_star_relabeled_rule(int a, int m) const {
    const CompactBasis* c = cb;
    Universe u = uni;
    return [c, u, a, m](const GenIndex& g, std::vector<std::pair<GenIndex, Cplx>>& out) {
        if (g.kind != GenKind::Psi) return;
        int nd = g.depth - m;
        for (const auto& [idx, v] : c->bracket[a][g.a])
            if (u.psi_allowed(idx, nd)) out.push_back({psi(idx, nd), v});
    };
}

GenRule<Cplx> CompactOps::d_star_relabeled_rule(int a, int m) const {
    const CompactBasis* c = cb;
    Universe u = uni;
    return [c, u, a, m](const GenIndex& g, std::vector<std::pair<GenIndex, Cplx>>& out) {
        if (g.kind != GenKind::Psi) return;
        int nd = g.depth + 1 - m;
        for (const auto& [idx, v] : c->bracket[a][g.a])
            if (u.sigma_allowed(idx, nd)) out.push_back({sigma(idx, nd), v});
    };
}

WordOp<Cplx> CompactOps::zero_mode(int a) const {
    const CompactBasis* c = cb;
    GenRule<Cplx> rule = [c, a](const GenIndex& g, std::vector<std::pair<GenIndex, Cplx>>& out) {
        for (const auto& [idx, v] : c->bracket[a][g.a]) out.push_back({{g.kind, idx, g.depth}, v});
    };
    return [rule](const Monomial& m, TermList<Cplx>& out) {
        apply_derivation<Cplx>(m, rule, /*odd=*/false, out);
    };
}

WordOp<Cplx> CompactOps::dbar() const {
    CompactOps self = *this;
    return [self](const Monomial& mono, TermList<Cplx>& out) {
        const int wsrc = mono.weight();
        TermList<Cplx> tmp;
        for (int a = 0; a < self.cb->dim; ++a)
            for (int m = 1; m <= wsrc; ++m) {
                auto adr = self.ad_rule(a, m);
                auto rr = self.r_rule(a, m);
                GenRule<Cplx> combined = [&adr, &rr](const GenIndex& g,
                                                     std::vector<std::pair<GenIndex, Cplx>>& img) {
                    size_t base = img.size();
                    if (g.kind == GenKind::Psi) {
                        adr(g, img);
                        for (size_t i = base; i < img.size(); ++i) img[i].second *= 0.5;
                    } else {
                        rr(g, img);
                    }
                };
                tmp.clear();
                apply_derivation<Cplx>(mono, combined, /*odd=*/false, tmp);
                for (const auto& [t, c] : tmp)
                    if (auto r = mult_gen(t, psi(a, m)))
                        out.push_back({r->first, c * Cplx(r->second, 0.0)});
            }
    };
}

WordOp<Cplx> CompactOps::dbar_star() const {
    CompactOps self = *this;
    return [self](const Monomial& mono, TermList<Cplx>& out) {
        TermList<Cplx> tmp;
        for (const GenIndex& g : mono.psis) {
            auto cut = contract_psi(mono, g);
            if (!cut) continue;
            Cplx coef(static_cast<double>(cut->second) / g.depth, 0.0);
            tmp.clear();
            apply_derivation<Cplx>(cut->first, self.r_rule(g.a, -g.depth), false, tmp);
            for (const auto& [t, c] : tmp) out.push_back({t, coef * c});
            tmp.clear();
            apply_derivation<Cplx>(cut->first, self.ad_star_rule(g.a, g.depth), false, tmp);
            for (const auto& [t, c] : tmp) out.push_back({t, 0.5 * coef * c});
        }
    };
}

Eigen::MatrixXcd dense_operator(const Block& src, const Block& tgt, const WordOp<Cplx>& op) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(tgt.dim(), src.dim());
    TermList<Cplx> terms;
    for (int j = 0; j < src.dim(); ++j) {
        terms.clear();
        op(src.basis[j], terms);
        for (const auto& [t, c] : terms) m(tgt.index_of(t), j) += c;
    }
    return m;
}

// ---- tables ----

namespace {

SparseC cast_numeric(const SparseQ& m) {
    SparseC out(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) out.add(r, c, Cplx(to_double(v), 0.0));
    return out;
}

int effective_rank(const SparseQ& m, TableBackend backend, double tol) {
    if (backend == TableBackend::exact) return rank_exact(m);
    return m.cols() - numeric_kernel_dim(cast_numeric(m), tol);
}

} // namespace

std::vector<BlockResult> cohomology_table(const Universe& uni, const Bounds& bounds,
                                          bool invariants, bool weight_zero_only, int threads,
                                          TableBackend backend, double tol) {
    const int max_p = uni.has_sigmas() ? bounds.max_p : 0;
    std::vector<std::pair<int, int>> items;
    for (int p = 0; p <= max_p; ++p)
        for (int w = 0; w <= bounds.max_w; ++w) items.push_back({p, w});

    std::vector<std::vector<BlockResult>> per_item(items.size());
    parallel_for(items.size(), threads, [&](size_t i) {
        auto [p, w] = items[i];
        BlockCache cache(uni);
        std::vector<int> dims(bounds.max_d + 1), ranks(bounds.max_d + 1);
        for (int d = 0; d <= bounds.max_d; ++d) {
            const Block& blk = cache.get(d, p, w, weight_zero_only);
            SparseQ m = ce_matrix(cache, d, p, w, weight_zero_only);
            if (invariants) {
                auto basis = invariant_subspace(blk);
                dims[d] = static_cast<int>(basis.size());
                ranks[d] = effective_rank(m.apply_to_columns(basis), backend, tol);
            } else {
                dims[d] = blk.dim();
                ranks[d] = effective_rank(m, backend, tol);
            }
        }
        for (int d = 0; d <= bounds.max_d; ++d) {
            long long h = dims[d] - ranks[d] - (d > 0 ? ranks[d - 1] : 0);
            per_item[i].push_back({d, p, w, h});
        }
    });

    std::vector<BlockResult> out;
    for (const auto& v : per_item) out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<BlockResult> truncated_cohomology_table(const LieAlgebraData& alg, int n, int max_w,
                                                    int threads, bool full_blocks,
                                                    TableBackend backend, double tol) {
    Universe uni = truncated_universe(alg, n);
    int full_w = alg.dim * n * (n - 1) / 2;
    Bounds b{alg.dim * n, 0, max_w < 0 ? full_w : max_w};
    return cohomology_table(uni, b, /*invariants=*/false, /*weight_zero_only=*/!full_blocks,
                            threads, backend, tol);
}

std::vector<BlockResult> super_cohomology_table(const LieAlgebraData& alg, const Bounds& bounds,
                                                int threads) {
    Universe uni = super_relative_universe(alg);
    return cohomology_table(uni, bounds, /*invariants=*/true, /*weight_zero_only=*/false, threads);
}

std::vector<BlockResult> iwahori_cohomology_table(const LieAlgebraData& alg, const Bounds& bounds,
                                                  int threads) {
    Universe uni = iwahori_universe(alg);
    return cohomology_table(uni, bounds, /*invariants=*/true, /*weight_zero_only=*/false, threads);
}

} // namespace currents

#include "currents/gradedbasis.hpp"

#include <algorithm>

namespace currents {

std::string Monomial::str(const LieAlgebraData& alg) const {
    std::string s;
    for (const auto& g : psis)
        s += "psi[" + alg.labels[g.a] + "](-" + std::to_string(g.depth) + ") ";
    for (const auto& g : sigmas)
        s += "sig[" + alg.labels[g.a] + "](-" + std::to_string(g.depth) + ") ";
    if (!s.empty()) s.pop_back();
    return s.empty() ? "1" : s;
}

std::pair<Monomial, int> normalize(const std::vector<GenIndex>& word) {
    Monomial m;
    for (const auto& g : word)
        (g.kind == GenKind::Psi ? m.psis : m.sigmas).push_back(g);

    // Insertion sort of the odd factors, counting transpositions.
    int swaps = 0;
    for (size_t i = 1; i < m.psis.size(); ++i) {
        GenIndex g = m.psis[i];
        size_t j = i;
        while (j > 0 && g < m.psis[j - 1]) {
            m.psis[j] = m.psis[j - 1];
            --j;
            ++swaps;
        }
        m.psis[j] = g;
    }
    for (size_t i = 1; i < m.psis.size(); ++i)
        if (m.psis[i] == m.psis[i - 1]) return {Monomial{}, 0};

    std::sort(m.sigmas.begin(), m.sigmas.end());
    return {std::move(m), swaps % 2 == 0 ? 1 : -1};
}

bool Universe::psi_allowed(int a, int depth) const {
    if (a < 0 || a >= alg->dim || depth < 0) return false;
    switch (kind) {
        case Kind::super_relative: return depth >= 1;
        case Kind::super_absolute:
        case Kind::relabeled: return true;
        case Kind::truncated: return depth < n_trunc;
        case Kind::iwahori: return depth >= 1 || a == alg->simple_raising[0];
    }
    return false;
}

bool Universe::sigma_allowed(int a, int depth) const {
    if (a < 0 || a >= alg->dim || depth < 0) return false;
    switch (kind) {
        case Kind::super_relative:
        case Kind::super_absolute:
        case Kind::relabeled: return true;
        case Kind::truncated: return false;
        case Kind::iwahori:
            return depth >= 1 || a == alg->simple_raising[0] || a == alg->cartan[0];
    }
    return false;
}

std::vector<int> Universe::invariance_generators() const {
    if (kind == Kind::iwahori) return alg->cartan;
    std::vector<int> gens = alg->simple_raising;
    gens.insert(gens.end(), alg->simple_lowering.begin(), alg->simple_lowering.end());
    return gens;
}

Universe super_relative_universe(const LieAlgebraData& alg) {
    return {Universe::Kind::super_relative, &alg, 0};
}
Universe super_absolute_universe(const LieAlgebraData& alg) {
    return {Universe::Kind::super_absolute, &alg, 0};
}
Universe relabeled_universe(const LieAlgebraData& alg) {
    return {Universe::Kind::relabeled, &alg, 0};
}
Universe truncated_universe(const LieAlgebraData& alg, int n) {
    if (n < 0) throw UnsupportedAlgebra("truncation order must be >= 0");
    return {Universe::Kind::truncated, &alg, n};
}
Universe iwahori_universe(const LieAlgebraData& alg) {
    if (alg.family != Family::sl || alg.n != 2)
        throw UnsupportedAlgebra("the iwahori universe is implemented for sl2 only");
    return {Universe::Kind::iwahori, &alg, 0};
}

namespace {

std::vector<GenIndex> allowed_gens(const Universe& uni, GenKind kind, int max_depth) {
    std::vector<GenIndex> gens;
    for (int dep = 0; dep <= max_depth; ++dep)
        for (int a = 0; a < uni.alg->dim; ++a) {
            bool ok = kind == GenKind::Psi ? uni.psi_allowed(a, dep) : uni.sigma_allowed(a, dep);
            if (ok) gens.push_back({kind, a, dep});
        }
    return gens;
}

bool weight_is_zero(const LieAlgebraData& alg, const Monomial& m) {
    std::vector<int> acc(alg.n - 1, 0);
    for (const auto& g : m.psis)
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += alg.ad_weight[g.a][i];
    for (const auto& g : m.sigmas)
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += alg.ad_weight[g.a][i];
    for (int v : acc)
        if (v != 0) return false;
    return true;
}

} // namespace

Block enumerate_block(const Universe& uni, int d, int p, int w, bool weight_zero_only) {
    Block blk;
    blk.uni = uni;
    blk.d = d;
    blk.p = p;
    blk.w = w;
    blk.weight_zero_only = weight_zero_only;
    if (d < 0 || p < 0 || w < 0) return blk;

    const auto psis = allowed_gens(uni, GenKind::Psi, w);
    const auto sigmas = allowed_gens(uni, GenKind::Sigma, w);

    Monomial cur;
    std::function<void(size_t, int, int)> pick_sigmas = [&](size_t pos, int left, int wleft) {
        if (left == 0) {
            if (wleft != 0) return;
            if (weight_zero_only && !weight_is_zero(*uni.alg, cur)) return;
            blk.index.emplace(cur, static_cast<int>(blk.basis.size()));
            blk.basis.push_back(cur);
            return;
        }
        for (size_t i = pos; i < sigmas.size(); ++i) {
            if (sigmas[i].depth > wleft) continue;
            cur.sigmas.push_back(sigmas[i]);
            pick_sigmas(i, left - 1, wleft - sigmas[i].depth); // repeats allowed
            cur.sigmas.pop_back();
        }
    };
    std::function<void(size_t, int, int)> pick_psis = [&](size_t pos, int left, int wleft) {
        if (left == 0) {
            pick_sigmas(0, p, wleft);
            return;
        }
        for (size_t i = pos; i < psis.size(); ++i) {
            if (psis[i].depth > wleft) continue;
            cur.psis.push_back(psis[i]);
            pick_psis(i + 1, left - 1, wleft - psis[i].depth);
            cur.psis.pop_back();
        }
    };
    if (!uni.has_sigmas() && p > 0) return blk;
    pick_psis(0, d, w);
    return blk;
}

const Block& BlockCache::get(int d, int p, int w, bool weight_zero_only) {
    std::scoped_lock lock(mu_);
    auto key = std::make_tuple(d, p, w, weight_zero_only);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        auto blk = std::make_unique<Block>(enumerate_block(uni_, d, p, w, weight_zero_only));
        it = cache_.emplace(key, std::move(blk)).first;
    }
    return *it->second;
}

std::optional<std::pair<Monomial, int>> mult_gen(const Monomial& m, const GenIndex& g) {
    Monomial out = m;
    if (g.kind == GenKind::Psi) {
        auto it = std::lower_bound(out.psis.begin(), out.psis.end(), g);
        if (it != out.psis.end() && *it == g) return std::nullopt;
        int pos = static_cast<int>(it - out.psis.begin());
        out.psis.insert(it, g);
        return std::make_pair(std::move(out), pos % 2 == 0 ? 1 : -1);
    }
    auto it = std::upper_bound(out.sigmas.begin(), out.sigmas.end(), g);
    out.sigmas.insert(it, g);
    return std::make_pair(std::move(out), 1);
}

std::optional<std::pair<Monomial, int>> contract_psi(const Monomial& m, const GenIndex& g) {
    auto it = std::lower_bound(m.psis.begin(), m.psis.end(), g);
    if (it == m.psis.end() || !(*it == g)) return std::nullopt;
    int pos = static_cast<int>(it - m.psis.begin());
    Monomial out = m;
    out.psis.erase(out.psis.begin() + pos);
    return std::make_pair(std::move(out), pos % 2 == 0 ? 1 : -1);
}

std::optional<std::pair<Monomial, int>> mult_monomial(const Monomial& x, const Monomial& y) {
    std::vector<GenIndex> word;
    word.reserve(x.psis.size() + y.psis.size() + x.sigmas.size() + y.sigmas.size());
    word.insert(word.end(), x.psis.begin(), x.psis.end());
    word.insert(word.end(), y.psis.begin(), y.psis.end());
    word.insert(word.end(), x.sigmas.begin(), x.sigmas.end());
    word.insert(word.end(), y.sigmas.begin(), y.sigmas.end());
    auto [mono, sgn] = normalize(word);
    if (sgn == 0) return std::nullopt;
    return std::make_pair(std::move(mono), sgn);
}

WordOp<Rational> zero_mode_action(const LieAlgebraData& alg, int alpha) {
    GenRule<Rational> rule = [&alg, alpha](const GenIndex& g,
                                           std::vector<std::pair<GenIndex, Rational>>& out) {
        for (const auto& [c, k] : alg.coadjoint[alpha][g.a])
            out.push_back({GenIndex{g.kind, c, g.depth}, k});
    };
    return [rule](const Monomial& m, TermList<Rational>& out) {
        apply_derivation<Rational>(m, rule, /*odd=*/false, out);
    };
}

std::vector<std::vector<Rational>> invariant_subspace(const Block& blk) {
    SparseQ stacked(0, blk.dim());
    for (int alpha : blk.uni.invariance_generators()) {
        auto m = operator_matrix<Rational>(blk, blk, zero_mode_action(*blk.uni.alg, alpha));
        stacked = stacked.vstack(m);
    }
    return kernel_basis_exact(stacked);
}

Monomial shift_psi_depths(const Monomial& m, int delta) {
    Monomial out = m;
    for (auto& g : out.psis) g.depth += delta;
    return out;
}

} // namespace currents

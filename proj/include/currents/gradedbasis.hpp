#pragma once
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "currents/exactlin.hpp"
#include "currents/liealg.hpp"

namespace currents {

// One odd (psi) or even (sigma) generator: the dual of z^depth x_a, graded by
// depth in z.  Odd generators have depth >= 1 in the original labels; after
// the relabel that shifts odd depths down by one, depth >= 0 is allowed.
enum class GenKind : int { Psi = 0, Sigma = 1 };

struct GenIndex {
    GenKind kind;
    int a;     // algebra basis index
    int depth; // z-grading, >= 0

    friend bool operator==(const GenIndex&, const GenIndex&) = default;
    friend bool operator<(const GenIndex& x, const GenIndex& y) {
        return std::tie(x.kind, x.depth, x.a) < std::tie(y.kind, y.depth, y.a);
    }
};

inline GenIndex psi(int a, int depth) { return {GenKind::Psi, a, depth}; }
inline GenIndex sigma(int a, int depth) { return {GenKind::Sigma, a, depth}; }

// Canonical monomial: strictly increasing odd factors, weakly increasing even
// factors (repeats stored explicitly).
struct Monomial {
    std::vector<GenIndex> psis;
    std::vector<GenIndex> sigmas;

    int d() const { return static_cast<int>(psis.size()); }
    int p() const { return static_cast<int>(sigmas.size()); }
    int weight() const {
        int w = 0;
        for (const auto& g : psis) w += g.depth;
        for (const auto& g : sigmas) w += g.depth;
        return w;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend bool operator<(const Monomial& x, const Monomial& y) {
        return std::tie(x.psis, x.sigmas) < std::tie(y.psis, y.sigmas);
    }

    std::string str(const LieAlgebraData& alg) const;
};

// Sorts a word of generators into canonical form.  The returned sign is the
// parity of the permutation applied to the odd factors (even factors commute
// with everything); a repeated odd factor collapses the word to zero and the
// sign is reported as 0.
std::pair<Monomial, int> normalize(const std::vector<GenIndex>& word);

// Which (a, depth) pairs may appear.  super_relative: odd depth >= 1, even
// depth >= 0, all of the algebra.  super_absolute / relabeled: both >= 0.
// truncated(n): odd only, depth 0..n-1.  iwahori (sl2): odd depth 0 only for
// the raising direction, even depth 0 only for raising + Cartan, depth >= 1
// unrestricted.
struct Universe {
    enum class Kind { super_relative, super_absolute, relabeled, truncated, iwahori };

    Kind kind = Kind::super_relative;
    const LieAlgebraData* alg = nullptr;
    int n_trunc = 0; // truncated only

    bool psi_allowed(int a, int depth) const;
    bool sigma_allowed(int a, int depth) const;
    bool has_sigmas() const { return kind != Kind::truncated; }

    // Algebra directions whose zero-mode action cuts out the invariants.
    std::vector<int> invariance_generators() const;

    int id() const { return static_cast<int>(kind) * 64 + n_trunc; }
};

Universe super_relative_universe(const LieAlgebraData& alg);
Universe super_absolute_universe(const LieAlgebraData& alg);
Universe relabeled_universe(const LieAlgebraData& alg);
Universe truncated_universe(const LieAlgebraData& alg, int n);
Universe iwahori_universe(const LieAlgebraData& alg);

struct Block {
    Universe uni;
    int d = 0, p = 0, w = 0;
    bool weight_zero_only = false; // restricted to Cartan-weight zero
    std::vector<Monomial> basis;
    std::map<Monomial, int> index;

    int dim() const { return static_cast<int>(basis.size()); }
    int index_of(const Monomial& m) const {
        auto it = index.find(m);
        if (it == index.end())
            throw std::logic_error("monomial escapes its target block (grading bug)");
        return it->second;
    }
};

// Enumerates the (d, p, w) block in a fixed deterministic order.  With
// weight_zero_only set, keeps only monomials of total Cartan weight zero;
// the differential preserves Cartan weight, and cohomology is supported at
// weight zero, so tables may be computed on this subcomplex.
Block enumerate_block(const Universe& uni, int d, int p, int w, bool weight_zero_only = false);

// Thread-safe write-once cache of enumerated blocks.
class BlockCache {
  public:
    explicit BlockCache(const Universe& uni) : uni_(uni) {}
    const Block& get(int d, int p, int w, bool weight_zero_only = false);
    const Universe& universe() const { return uni_; }

  private:
    Universe uni_;
    std::map<std::tuple<int, int, int, bool>, std::unique_ptr<Block>> cache_;
    std::mutex mu_;
};

// ---- word-level operator engine ----

template <class T>
using TermList = std::vector<std::pair<Monomial, T>>;

// A generator rule maps one generator to a linear combination of generators.
template <class T>
using GenRule = std::function<void(const GenIndex&, std::vector<std::pair<GenIndex, T>>&)>;

// A word operator maps a canonical monomial to a combination of canonical
// monomials, appending to `out`.
template <class T>
using WordOp = std::function<void(const Monomial&, TermList<T>&)>;

// Left multiplication by a generator; sign is the usual odd reordering sign.
std::optional<std::pair<Monomial, int>> mult_gen(const Monomial& m, const GenIndex& g);

// Odd contraction against an odd generator (derivation with scalar value 1
// on g); position signs included.
std::optional<std::pair<Monomial, int>> contract_psi(const Monomial& m, const GenIndex& g);

// Product of two canonical monomials with the odd reordering sign; nullopt
// when an odd generator repeats.
std::optional<std::pair<Monomial, int>> mult_monomial(const Monomial& x, const Monomial& y);

// Extends a generator rule to the monomial as a derivation.  For odd rules
// the usual sign (-1)^(number of odd factors to the left) is applied; the
// canonical word order is "all odd factors, then all even factors".
template <class T>
void apply_derivation(const Monomial& m, const GenRule<T>& rule, bool odd, TermList<T>& out) {
    std::vector<std::pair<GenIndex, T>> images;
    std::vector<GenIndex> word(m.psis);
    word.insert(word.end(), m.sigmas.begin(), m.sigmas.end());
    for (size_t i = 0; i < word.size(); ++i) {
        images.clear();
        rule(word[i], images);
        if (images.empty()) continue;
        int pre = 1;
        if (odd) {
            size_t odd_before = std::min(i, m.psis.size());
            pre = (odd_before % 2 == 0) ? 1 : -1;
        }
        for (const auto& [g, c] : images) {
            std::vector<GenIndex> img = word;
            img[i] = g;
            auto [mono, sgn] = normalize(img);
            if (sgn == 0) continue;
            out.push_back({mono, T(pre * sgn) * c});
        }
    }
}

// Builds the matrix of a word operator between two enumerated blocks.
template <class T>
SparseMatrix<T> operator_matrix(const Block& src, const Block& tgt, const WordOp<T>& op) {
    SparseMatrix<T> m(tgt.dim(), src.dim());
    TermList<T> terms;
    for (int j = 0; j < src.dim(); ++j) {
        terms.clear();
        op(src.basis[j], terms);
        for (const auto& [mono, c] : terms) m.add(tgt.index_of(mono), j, c);
    }
    return m;
}

// Exact basis of the subspace killed by the zero modes of the universe's
// invariance generators (for reductive algebras this is the full space of
// invariant cochains).
std::vector<std::vector<Rational>> invariant_subspace(const Block& blk);

// Zero-mode coadjoint action of basis direction `alpha` extended as an even
// derivation; block-preserving.
WordOp<Rational> zero_mode_action(const LieAlgebraData& alg, int alpha);

// Shifts every odd generator's depth by delta (relabel helper).
Monomial shift_psi_depths(const Monomial& m, int delta);

} // namespace currents

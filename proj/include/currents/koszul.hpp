#pragma once
#include <Eigen/Dense>

#include "currents/gradedbasis.hpp"

namespace currents {

struct Bounds {
    int max_d = 0;
    int max_p = 0;
    int max_w = 0;
};

// ---- exact path: Chevalley-Eilenberg differential in the rational basis ----

// Odd derivation with generator values
//   d Psi^g(-w)   = -1/2 sum c_ab^g Psi^a(-m) Psi^b(-n)   over m+n = w,
//   d Sigma^b(-n) = sum Psi^a(-m) * (coadjoint a-action on Sigma^b at m),
// all terms cut to the universe.  Squares to zero on every block.
WordOp<Rational> ce_word_op(const Universe& uni);

// Matrix of the differential from block (d, p, w) to (d+1, p, w).
SparseQ ce_matrix(BlockCache& cache, int d, int p, int w, bool weight_zero_only = false);

// ---- numeric path: literal metric-basis operators, compact basis ----

// Generator-level operators in the orthonormal compact basis with original
// depth labels (odd depth >= 1).  Signed mode index m: images shift depth by
// -m for the plain operators and +m for the starred ones.
struct CompactOps {
    const CompactBasis* cb = nullptr;
    Universe uni;

    GenRule<Cplx> ad_rule(int a, int m) const;      // even: psi -> psi
    GenRule<Cplx> r_rule(int a, int m) const;       // even: sigma -> sigma
    GenRule<Cplx> ad_star_rule(int a, int m) const; // even, adjoint of ad(a, m)
    GenRule<Cplx> d_rule(int a, int m) const;       // odd: sigma -> psi
    GenRule<Cplx> d_star_rule(int a, int m) const;  // odd, adjoint: psi -> sigma

    // Relabeled forms acting on depth-shifted odd labels (depth >= 0):
    // ad(a,-m)* becomes a plain shift, d(a,-m)* drops the 1/n weights.
    GenRule<Cplx> ad_star_relabeled_rule(int a, int m) const;
    GenRule<Cplx> d_star_relabeled_rule(int a, int m) const;

    // R_a(0) + ad_a(0): the zero-mode action, an even derivation.
    WordOp<Cplx> zero_mode(int a) const;

    // dbar = sum_{a, m>=1} psi^a(-m) (R_a(m) + 1/2 ad_a(m)), degree +1.
    WordOp<Cplx> dbar() const;

    // dbar* = sum_{a, m>=1} (1/m) contraction(psi^a(-m)) followed by
    // R_a(-m) + 1/2 ad_a(m)*, degree -1.
    WordOp<Cplx> dbar_star() const;
};

CompactOps compact_ops(const CompactBasis& cb, const Universe& uni);

Eigen::MatrixXcd dense_operator(const Block& src, const Block& tgt, const WordOp<Cplx>& op);

// ---- cohomology tables ----

struct BlockResult {
    int d = 0, p = 0, w = 0;
    long long dim = 0;
};

enum class TableBackend { exact, numeric };

// Bigraded cohomology dimensions over the given universe for all
// 0 <= d <= max_d, 0 <= p <= max_p, 0 <= w <= max_w, ordered by (p, w, d).
// With `invariants` the differential is restricted to the exact invariant
// subcomplex first (relative cohomology of the reductive pair); otherwise the
// absolute complex is used.  weight_zero_only computes on the Cartan-weight
// zero subcomplex, which carries all of the cohomology.
std::vector<BlockResult> cohomology_table(const Universe& uni, const Bounds& bounds,
                                          bool invariants, bool weight_zero_only,
                                          int threads = 1,
                                          TableBackend backend = TableBackend::exact,
                                          double tol = 1e-9);

std::vector<BlockResult> truncated_cohomology_table(const LieAlgebraData& alg, int n,
                                                    int max_w = -1, int threads = 1,
                                                    bool full_blocks = false,
                                                    TableBackend backend = TableBackend::exact,
                                                    double tol = 1e-9);

std::vector<BlockResult> super_cohomology_table(const LieAlgebraData& alg, const Bounds& bounds,
                                                int threads = 1);

std::vector<BlockResult> iwahori_cohomology_table(const LieAlgebraData& alg, const Bounds& bounds,
                                                  int threads = 1);

} // namespace currents

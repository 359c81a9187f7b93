#pragma once
#include "currents/koszul.hpp"

namespace currents {

// Diagonal of the hermitian metric on a block in original labels: each odd
// factor of depth n contributes 1/n, repeated even factors contribute the
// factorial of their multiplicity.  Throws on depth-0 odd generators, whose
// norm is undefined.
Eigen::VectorXd metric_diagonal(const Block& blk);

// Shared state for the metric-side verification: compact basis, operator
// rules in both labelings, and block caches.  Only semi-simple algebras are
// supported; the operator normalizations assume the Killing form.
struct HodgeContext {
    explicit HodgeContext(const LieAlgebraData& a);
    HodgeContext(const HodgeContext&) = delete;
    HodgeContext& operator=(const HodgeContext&) = delete;

    const LieAlgebraData* alg;
    CompactBasis cb;
    Universe uni;     // original labels, odd depth >= 1
    Universe uni_rel; // relabeled, odd depth >= 0
    CompactOps ops;
    CompactOps ops_rel;
    BlockCache cache;
    BlockCache cache_rel;

    const Block& block(int d, int p, int w);
};

// ---- dense operators per block ----

// Degree-shifting differential and its metric adjoint.
Eigen::MatrixXcd dbar_matrix(HodgeContext& ctx, int d, int p, int w);      // -> (d+1, p, w)
Eigen::MatrixXcd dbar_star_matrix(HodgeContext& ctx, int d, int p, int w); // -> (d-1, p, w)

// Block-preserving second-order operators: the full Laplacian (dbar dbar* +
// dbar* dbar), the current Laplacian built from the current action and its
// adjoint, the symmetric-to-exterior transfer D, the zero-mode correction K,
// and the Nakano commutator term T.
Eigen::MatrixXcd laplacian_matrix(HodgeContext& ctx, int d, int p, int w);
Eigen::MatrixXcd current_laplacian_matrix(HodgeContext& ctx, int d, int p, int w);
Eigen::MatrixXcd d_term_matrix(HodgeContext& ctx, int d, int p, int w);
Eigen::MatrixXcd k_term_matrix(HodgeContext& ctx, int d, int p, int w);
Eigen::MatrixXcd t_term_matrix(HodgeContext& ctx, int d, int p, int w);

// T applied to given columns without materializing the full matrix.
Eigen::MatrixXcd t_term_apply(HodgeContext& ctx, int d, int p, int w,
                              const Eigen::MatrixXcd& cols);

// Metric-orthonormal basis of the zero-mode invariants, natural coordinates.
Eigen::MatrixXcd invariant_columns(HodgeContext& ctx, int d, int p, int w, double tol = 1e-9);

// ---- verification ----

// Max deviation of the implemented adjoints from the metric adjoints, over
// the current/adjoint pairs, the odd transfer pair, wedge/contraction, and
// the differential pair, on the given block.
double verify_adjointness(HodgeContext& ctx, int d, int p, int w);

// || laplacian - (current + D + K) ||_max over the full block.
double verify_laplacian_split(HodgeContext& ctx, int d, int p, int w);

struct NakanoReport {
    double invariant_identity = 0; // ||(laplacian - current - T - deg) V||_max
    double k_on_invariants = 0;    // ||K V||_max
};
// Nakano decomposition on the invariant subspace.
NakanoReport verify_nakano(HodgeContext& ctx, int d, int p, int w);

// || T + deg - D ||_max over the full block.
double verify_t_decomposition(HodgeContext& ctx, int d, int p, int w);

// Closed-form coefficients on the single-odd-generator block (1, 0, n): all
// four operators act there as multiples of the identity.
struct LinearGermCoefficients {
    int n = 0;
    double laplacian = 0, current = 0, d_term = 0, k_term = 0; // computed
    double expected_laplacian = 0, expected_current = 0;       // harmonic sums
    double expected_d = 1, expected_k = 0;
    double max_deviation = 0; // from the expected multiple of the identity
};
LinearGermCoefficients linear_germ_coefficients(HodgeContext& ctx, int n);

// ---- harmonic spaces ----

struct HarmonicBasis {
    int d = 0, p = 0, w = 0;
    Eigen::MatrixXcd vectors; // metric-orthonormal columns, natural coordinates
};

// Kernel of the Laplacian restricted to the invariant subspace.  Throws
// ToleranceAmbiguity when eigenvalues cluster at the threshold.
HarmonicBasis harmonic_basis(HodgeContext& ctx, int d, int p, int w, double tol = 1e-7);

// Joint kernel of the annihilation-side derivations in relabeled
// coordinates, transformed back to original labels.
HarmonicBasis harmonic_basis_joint(HodgeContext& ctx, int d, int p, int w, double tol = 1e-7);

// Operator-norm distance between the metric-orthogonal projections onto the
// two spaces (must live on the same block).
double subspace_distance(HodgeContext& ctx, const HarmonicBasis& x, const HarmonicBasis& y);

// Max relative residual of products of harmonic vectors from blocks A and B
// against the harmonic subspace of the product block.
double verify_harmonic_subalgebra(HodgeContext& ctx, std::tuple<int, int, int> a,
                                  std::tuple<int, int, int> b, double tol = 1e-7);

// Kernel columns of a dense matrix at relative threshold tol; throws
// ToleranceAmbiguity when singular values cluster at the cut.
Eigen::MatrixXcd dense_kernel(const Eigen::MatrixXcd& m, double tol);

} // namespace currents

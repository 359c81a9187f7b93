#pragma once
#include <map>
#include <tuple>
#include <vector>

#include "currents/hodge.hpp"
#include "currents/koszul.hpp"

namespace currents {

// Triple-graded dimension series truncated to a box of bounds: t tracks the
// cohomological degree d, u the s-degree p, q the z-weight w.
struct GradedSeries {
    Bounds bounds;
    std::map<std::tuple<int, int, int>, long long> coeff; // (d, p, w) -> value

    long long at(int d, int p, int w) const;
    void add(int d, int p, int w, long long v); // silently drops terms outside bounds
    GradedSeries operator*(const GradedSeries& rhs) const;
};

GradedSeries unit_series(const Bounds& b);
// (1 + sign * t^dd u^dp q^dw)
GradedSeries binomial_factor(const Bounds& b, int dd, int dp, int dw, long long sign = 1);
// (1 - t^dd u^dp q^dw)^{-1}, expanded within bounds
GradedSeries geometric_factor(const Bounds& b, int dd, int dp, int dw);

// Predicted cohomology of the truncated current algebra: one exterior
// generator of degree 2m+1 at weight 0 and one at each weight mn+1..mn+n-1,
// per exponent m.
GradedSeries predicted_truncated_series(const LieAlgebraData& alg, int n, const Bounds& b);

// Predicted cohomology of the super current algebra relative to the zero
// modes: free graded-commutative on even generators u^{m+1} q^k (k >= 0) and
// odd generators t u^m q^k (k >= 1), per exponent m.
GradedSeries predicted_super_series(const LieAlgebraData& alg, const Bounds& b);

// Tensor-factorized prediction for the super-Iwahori pair: the super series
// with the zero-mode polynomial factor replaced by the Cartan polynomials.
GradedSeries predicted_iwahori_series(const LieAlgebraData& alg, const Bounds& b);

// Bumps one coefficient so that exactly one comparison must fail (negative
// control for the verification pipeline).
GradedSeries corrupt_prediction(GradedSeries s);

struct SeriesDiff {
    int d = 0, p = 0, w = 0;
    long long computed = 0, predicted = 0;
};

// All blocks where the computed table and the predicted series disagree;
// empty means the prediction is verified at this truncation.  Throws
// BoundsMismatch unless the table grid and the series share bounds.
std::vector<SeriesDiff> compare_series(const std::vector<BlockResult>& table,
                                       const Bounds& table_bounds, const GradedSeries& predicted);

// ---- explicit cocycles ----

// Homogeneous cochain in Chevalley labels, as a monomial-coefficient map.
struct Cochain {
    int d = 0, p = 0, w = 0;
    std::map<Monomial, Rational> terms;

    std::vector<Rational> to_vector(const Block& blk) const;
};

// Invariant cocycles attached to the symmetrized-trace form of the given
// degree: the even cocycle collects all depth compositions of k over the
// form's slots; the odd variant replaces slot zero by an odd generator of
// depth j, weighted by j.
Cochain s_cocycle(const LieAlgebraData& alg, int degree, int k);
Cochain e_cocycle(const LieAlgebraData& alg, int degree, int k); // k >= 1

// The same cocycles over the orthonormal compact basis.
std::map<Monomial, Cplx> s_cocycle_numeric(const LieAlgebraData& alg, const CompactBasis& cb,
                                           int degree, int k);
std::map<Monomial, Cplx> e_cocycle_numeric(const LieAlgebraData& alg, const CompactBasis& cb,
                                           int degree, int k);

// Applies an exact word operator to a term map and prunes cancellations.
std::map<Monomial, Rational> apply_word_op(const WordOp<Rational>& op,
                                           const std::map<Monomial, Rational>& terms);

// Exact differential image of the cochain in the relative universe; an empty
// map certifies closedness.
std::map<Monomial, Rational> dbar_image_exact(const LieAlgebraData& alg, const Cochain& c);

struct SpanDefect {
    int d = 0, p = 0, w = 0;
    long long harmonic_dim = 0;
    int product_rank = 0;
};

// Checks, per block within bounds, that products of the numeric cocycles
// span the harmonic subspace; returns the blocks where they do not.
std::vector<SpanDefect> verify_generators_span(HodgeContext& ctx, const Bounds& bounds,
                                               double tol = 1e-7);

// ---- spectral-sequence edge differential ----

// The first-page differential on the polynomial germ z^k s(ds)^m for the
// truncation order n: z^k maps to (mn + n + k) z^{n+k-1} dz.
struct Delta1Report {
    int m = 0, n = 0, max_k = 0;
    SparseQ matrix; // rows z^j dz (j = 0..n+max_k-1), columns z^k (k = 0..max_k)
    int kernel_dim = 0;
    std::vector<int> cokernel_weights; // total weights mn + j + 1 of unhit rows
};
Delta1Report delta1_cokernel(int m, int n, int max_k);

// ---- Iwahori factorization ----

// Computes the cohomology table of the Borel-type pair directly and compares
// it with the tensor-factorized prediction.
std::vector<SeriesDiff> iwahori_series_check(const LieAlgebraData& alg, const Bounds& bounds,
                                             int threads = 1);

} // namespace currents

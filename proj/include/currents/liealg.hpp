#pragma once
#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "currents/errors.hpp"
#include "currents/rational.hpp"

namespace currents {

enum class Family { sl, gl };

// Sparse list of basis coefficients: sum of coeff * x_index.
template <class T>
using BasisVec = std::vector<std::pair<int, T>>;

// Rational structure data for sl(n) or gl(n) in an elementary-matrix basis
// (off-diagonal E_ij plus Cartan directions, integer structure constants).
struct LieAlgebraData {
    Family family;
    int n = 0;    // matrix size
    int dim = 0;
    std::vector<std::string> labels;

    // bracket[a][b] expands [x_a, x_b] in the basis.
    std::vector<std::vector<BasisVec<Rational>>> bracket;

    // coadjoint[a][b] expands the coadjoint action of x_a on the dual
    // functional of x_b:  x_a . l^b = sum coeff * l^c  with
    // coeff = -(coefficient of x_b in [x_a, x_c]).
    std::vector<std::vector<BasisVec<Rational>>> coadjoint;

    std::vector<std::vector<Rational>> killing; // tr(ad x_a ad x_b)

    std::vector<int> cartan;          // Cartan basis indices
    std::vector<int> simple_raising;  // E_{i,i+1}
    std::vector<int> simple_lowering; // E_{i+1,i}
    std::vector<int> exponents;

    // Integer weights of basis vectors under the simple coroots; all-zero
    // exactly on Cartan directions.  Used to split complexes by weight.
    std::vector<std::vector<int>> ad_weight;

    // Defining n x n representation of each basis vector, exact entries.
    std::vector<std::vector<std::vector<Rational>>> rep;

    std::string name() const;
};

LieAlgebraData build_algebra(Family family, int n);
// Accepts names like "sl2", "gl3".
LieAlgebraData build_algebra(const std::string& name);

// Hermitian basis orthonormal for the block form
//   B(x, y) = 2n tr(xy) on traceless matrices,  tr(xy) on the gl center.
// On sl(n) this is the Killing form, so structure constants are purely
// imaginary and totally antisymmetric.
struct CompactBasis {
    int dim = 0;
    std::vector<Eigen::MatrixXcd> xi;
    // bracket[a][b] expands [xi_a, xi_b]; coefficients are B-pairings.
    std::vector<std::vector<BasisVec<Cplx>>> bracket;
    int center_index = -1; // gl only, otherwise -1
};

CompactBasis compact_basis(const LieAlgebraData& alg);

// Fully symmetric tensor keyed by weakly increasing index tuples.
template <class T>
struct SymmetricForm {
    int degree = 0;
    std::map<std::vector<int>, T> coeff;

    T at(std::vector<int> idx) const {
        std::sort(idx.begin(), idx.end());
        auto it = coeff.find(idx);
        return it == coeff.end() ? T(0) : it->second;
    }
};

// Symmetrised trace form of degree k in the defining representation;
// requires k-1 to be an exponent of the algebra.
SymmetricForm<Rational> invariant_form(const LieAlgebraData& alg, int k);
SymmetricForm<Cplx> invariant_form_compact(const LieAlgebraData& alg,
                                           const CompactBasis& cb, int k);

} // namespace currents

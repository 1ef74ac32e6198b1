#pragma once

#include <Eigen/Dense>
#include <vector>

#include "witnesskit/operator.hpp"

namespace witnesskit {

// Hermitian operator basis for one N-dimensional system, orthonormal in the
// Hilbert-Schmidt inner product. ops[0] = I/sqrt(N); the rest are traceless,
// ordered as the generalized Gell-Mann matrices (symmetric and antisymmetric
// pair operators interleaved, diagonal operators after each new level), so
// that N = 2 yields sigma_x/sqrt(2), sigma_y/sqrt(2), sigma_z/sqrt(2).
struct GeneratorBasis {
  int dim = 0;
  std::vector<Eigen::MatrixXcd> ops;
};

GeneratorBasis generator_basis(int dim);

// Coordinates of a single-system Hermitian operator:
// op = f0 * I + sum_{i>=1} f[i-1] * G_i. f0 is the coefficient of the bare
// identity, i.e. Tr(op)/N.
struct BlochVector {
  double f0 = 0.0;
  Eigen::VectorXd f;
};

BlochVector bloch(const Eigen::MatrixXcd& op, const GeneratorBasis& basis);

// Real coefficient matrix of a bipartite Hermitian operator in the product
// generator basis: op = sum_{kl} lambda(k, l) G_k (x) G_l.
struct CoefficientMatrix {
  std::vector<int> dims;
  Eigen::MatrixXd lambda;

  // Block with both indices >= 1 (traceless part on both sides).
  Eigen::MatrixXd reduced() const;
};

CoefficientMatrix expand(const Operator& op);
Operator recompose(const CoefficientMatrix& coeffs);

}  // namespace witnesskit

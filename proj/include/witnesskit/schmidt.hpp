#pragma once

#include <Eigen/Dense>
#include <vector>

#include "witnesskit/operator.hpp"

namespace witnesskit {

// Schmidt decomposition of a bipartite pure state:
// psi = sum_i coeffs[i] a_i (x) b_i with coeffs descending and nonnegative,
// and {a_i}, {b_i} orthonormal.
struct SchmidtForm {
  Eigen::VectorXd coeffs;      // length min(dA, dB)
  Eigen::MatrixXcd a_vectors;  // dA x dA unitary; columns beyond the Schmidt
  Eigen::MatrixXcd b_vectors;  // rank complete the local bases
  int rank = 0;                // coefficients above rank_tol relative to the largest

  Eigen::VectorXcd reassemble() const;
};

// dims = {dA, dB}. psi must be normalized to 1e-12. rank_tol is relative.
SchmidtForm schmidt(const Eigen::VectorXcd& psi, const std::vector<int>& dims,
                    double rank_tol = 1e-10);

}  // namespace witnesskit

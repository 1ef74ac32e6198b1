#include "witnesskit/schmidt.hpp"

#include <cmath>

#include "witnesskit/errors.hpp"

namespace witnesskit {

Eigen::VectorXcd SchmidtForm::reassemble() const {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(a_vectors.rows() * b_vectors.rows());
  for (int k = 0; k < coeffs.size(); ++k)
    psi += coeffs(k) * kron_vec(a_vectors.col(k), b_vectors.col(k));
  return psi;
}

SchmidtForm schmidt(const Eigen::VectorXcd& psi, const std::vector<int>& dims, double rank_tol) {
  if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1)
    throw DomainError("bad_dims", "schmidt needs two positive dimensions");
  int dA = dims[0], dB = dims[1];
  if (psi.size() != static_cast<long>(dA) * dB)
    throw DomainError("bad_dims", "state vector size does not match dimensions");
  if (std::abs(psi.norm() - 1.0) > 1e-12)
    throw DomainError("not_normalized", "state vector is not normalized");

  Eigen::MatrixXcd m(dA, dB);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dB; ++j) m(i, j) = psi(i * dB + j);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  int k = std::min(dA, dB);
  SchmidtForm out;
  out.coeffs = svd.singularValues().head(k);
  out.a_vectors = svd.matrixU();
  out.b_vectors = svd.matrixV().conjugate();
  out.rank = 0;
  double top = out.coeffs.size() > 0 ? out.coeffs(0) : 0.0;
  for (int i = 0; i < out.coeffs.size(); ++i)
    if (top > 0.0 && out.coeffs(i) > rank_tol * top) ++out.rank;
  return out;
}

}  // namespace witnesskit

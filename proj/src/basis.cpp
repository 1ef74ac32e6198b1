#include "witnesskit/basis.hpp"

#include <cmath>

#include "witnesskit/errors.hpp"

namespace witnesskit {

GeneratorBasis generator_basis(int dim) {
  if (dim < 2) throw DomainError("bad_dims", "generator basis needs dimension >= 2");
  GeneratorBasis basis;
  basis.dim = dim;
  basis.ops.reserve(static_cast<std::size_t>(dim) * dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  basis.ops.push_back(Eigen::MatrixXcd::Identity(dim, dim) / std::sqrt(double(dim)));
  for (int k = 1; k < dim; ++k) {
    for (int j = 0; j < k; ++j) {
      Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(dim, dim);
      q(j, k) = inv_sqrt2;
      q(k, j) = inv_sqrt2;
      basis.ops.push_back(q);
      Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(dim, dim);
      r(j, k) = cd_t(0.0, -inv_sqrt2);
      r(k, j) = cd_t(0.0, inv_sqrt2);
      basis.ops.push_back(r);
    }
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    double norm = 1.0 / std::sqrt(double(k) * (k + 1));
    for (int m = 0; m < k; ++m) h(m, m) = norm;
    h(k, k) = -double(k) * norm;
    basis.ops.push_back(h);
  }
  return basis;
}

BlochVector bloch(const Eigen::MatrixXcd& op, const GeneratorBasis& basis) {
  if (op.rows() != basis.dim || op.cols() != basis.dim)
    throw DomainError("bad_dims", "operator does not match basis dimension");
  if ((op - op.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("not_hermitian", "bloch coordinates need a Hermitian operator");
  BlochVector v;
  v.f0 = op.trace().real() / basis.dim;
  v.f.resize(basis.dim * basis.dim - 1);
  for (int i = 1; i < basis.dim * basis.dim; ++i)
    v.f(i - 1) = hs_inner(basis.ops[static_cast<std::size_t>(i)], op).real();
  return v;
}

Eigen::MatrixXd CoefficientMatrix::reduced() const {
  return lambda.block(1, 1, lambda.rows() - 1, lambda.cols() - 1);
}

CoefficientMatrix expand(const Operator& op) {
  if (op.parties() != 2) throw DomainError("bad_dims", "expand needs a bipartite operator");
  if (!op.is_hermitian(1e-12))
    throw DomainError("not_hermitian", "expand needs a Hermitian operator");
  GeneratorBasis ga = generator_basis(op.dims[0]);
  GeneratorBasis gb = generator_basis(op.dims[1]);
  int na = op.dims[0] * op.dims[0], nb = op.dims[1] * op.dims[1];
  CoefficientMatrix out;
  out.dims = op.dims;
  out.lambda.resize(na, nb);
  int dB = op.dims[1];
  // lambda(k, l) = Tr((G_k (x) G_l) op), computed blockwise to stay O(n^4)
  // over basis pairs instead of building every Kronecker product.
  for (int k = 0; k < na; ++k) {
    const Eigen::MatrixXcd& gk = ga.ops[static_cast<std::size_t>(k)];
    Eigen::MatrixXcd contracted = Eigen::MatrixXcd::Zero(dB, dB);
    for (int i = 0; i < op.dims[0]; ++i)
      for (int j = 0; j < op.dims[0]; ++j)
        if (gk(j, i) != cd_t(0.0, 0.0))
          contracted += gk(j, i) * op.mat.block(i * dB, j * dB, dB, dB);
    for (int l = 0; l < nb; ++l)
      out.lambda(k, l) = (gb.ops[static_cast<std::size_t>(l)] * contracted).trace().real();
  }
  return out;
}

Operator recompose(const CoefficientMatrix& coeffs) {
  if (coeffs.dims.size() != 2) throw DomainError("bad_dims", "coefficient matrix must be bipartite");
  GeneratorBasis ga = generator_basis(coeffs.dims[0]);
  GeneratorBasis gb = generator_basis(coeffs.dims[1]);
  int n = coeffs.dims[0] * coeffs.dims[1];
  int dB = coeffs.dims[1];
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < coeffs.lambda.rows(); ++k) {
    const Eigen::MatrixXcd& gk = ga.ops[static_cast<std::size_t>(k)];
    Eigen::MatrixXcd slice = Eigen::MatrixXcd::Zero(dB, dB);
    for (int l = 0; l < coeffs.lambda.cols(); ++l)
      if (coeffs.lambda(k, l) != 0.0) slice += coeffs.lambda(k, l) * gb.ops[static_cast<std::size_t>(l)];
    for (int i = 0; i < coeffs.dims[0]; ++i)
      for (int j = 0; j < coeffs.dims[0]; ++j)
        if (gk(i, j) != cd_t(0.0, 0.0)) m.block(i * dB, j * dB, dB, dB) += gk(i, j) * slice;
  }
  return make_operator(coeffs.dims, std::move(m));
}

}  // namespace witnesskit

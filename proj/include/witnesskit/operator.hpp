#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace witnesskit {

using cd_t = std::complex<double>;

// Linear operator on a tensor product of finite-dimensional subsystems.
// dims lists the local dimensions left to right; party 0 is the leftmost
// factor (Alice by convention).
struct Operator {
  std::vector<int> dims;
  Eigen::MatrixXcd mat;

  int total_dim() const;
  int parties() const { return static_cast<int>(dims.size()); }
  bool is_hermitian(double tol = 1e-12) const;
};

// Validates that mat is square and its size equals the product of dims.
Operator make_operator(std::vector<int> dims, Eigen::MatrixXcd mat);

Operator identity_op(const std::vector<int>& dims);

// Kronecker products. Rejects results with total dimension above 4096.
Operator tensor(const Operator& a, const Operator& b);
Operator tensor(const std::vector<Operator>& factors);

// Transposition of one tensor factor in the computational basis.
Operator partial_transpose(const Operator& op, int party);

// Traces out the given party, returning an operator on the remaining ones.
Operator partial_trace(const Operator& op, int party);

// Hilbert-Schmidt inner product Tr(a b^dagger) and the induced norm.
cd_t hs_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
double hs_norm(const Eigen::MatrixXcd& a);
cd_t hs_inner(const Operator& a, const Operator& b);
double hs_norm(const Operator& a);

// Numerical rank: singular values above rel_tol times the largest one.
int matrix_rank(const Eigen::MatrixXcd& m, double rel_tol = 1e-10);

Eigen::VectorXcd basis_ket(int i, int n);
Eigen::VectorXcd kron_vec(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);
Eigen::MatrixXcd projector(const Eigen::VectorXcd& v);

// Orthonormal basis of the null space of a Hermitian matrix; eigenvalues
// with |lambda| <= tol * max(1, |lambda|_max) count as zero.
Eigen::MatrixXcd hermitian_kernel(const Eigen::MatrixXcd& m, double tol = 1e-10);

}  // namespace witnesskit

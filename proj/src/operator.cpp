#include "witnesskit/operator.hpp"

#include <numeric>

#include "witnesskit/errors.hpp"

namespace witnesskit {

namespace {
constexpr int kMaxTotalDim = 4096;

int checked_product(const std::vector<int>& dims) {
  if (dims.empty()) throw DomainError("bad_dims", "operator needs at least one subsystem");
  long long p = 1;
  for (int d : dims) {
    if (d < 1) throw DomainError("bad_dims", "subsystem dimensions must be positive");
    p *= d;
    if (p > kMaxTotalDim)
      throw DomainError("dim_overflow", "total dimension exceeds " + std::to_string(kMaxTotalDim));
  }
  return static_cast<int>(p);
}
}  // namespace

int Operator::total_dim() const {
  long long p = 1;
  for (int d : dims) p *= d;
  return static_cast<int>(p);
}

bool Operator::is_hermitian(double tol) const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator make_operator(std::vector<int> dims, Eigen::MatrixXcd mat) {
  int n = checked_product(dims);
  if (mat.rows() != n || mat.cols() != n)
    throw DomainError("bad_dims", "matrix size does not match subsystem dimensions");
  return Operator{std::move(dims), std::move(mat)};
}

Operator identity_op(const std::vector<int>& dims) {
  int n = checked_product(dims);
  return Operator{dims, Eigen::MatrixXcd::Identity(n, n)};
}

Operator tensor(const Operator& a, const Operator& b) {
  std::vector<int> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  checked_product(dims);
  int na = a.total_dim(), nb = b.total_dim();
  Eigen::MatrixXcd out(na * nb, na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a.mat(i, j) * b.mat;
  return Operator{std::move(dims), std::move(out)};
}

Operator tensor(const std::vector<Operator>& factors) {
  if (factors.empty()) throw DomainError("bad_dims", "tensor of zero factors");
  Operator acc = factors[0];
  for (std::size_t k = 1; k < factors.size(); ++k) acc = tensor(acc, factors[k]);
  return acc;
}

Operator partial_transpose(const Operator& op, int party) {
  int np = op.parties();
  if (party < 0 || party >= np) throw DomainError("bad_party", "party index out of range");
  int left = 1, right = 1;
  for (int k = 0; k < party; ++k) left *= op.dims[k];
  for (int k = party + 1; k < np; ++k) right *= op.dims[k];
  int d = op.dims[party];
  Eigen::MatrixXcd out(op.mat.rows(), op.mat.cols());
  // Index layout: row = (l * d + i) * right + r. Transposing the chosen party
  // swaps i between row and column while leaving l, r blocks in place.
  for (int lr = 0; lr < left; ++lr)
    for (int lc = 0; lc < left; ++lc)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          out.block((lr * d + j) * right, (lc * d + i) * right, right, right) =
              op.mat.block((lr * d + i) * right, (lc * d + j) * right, right, right);
  return Operator{op.dims, std::move(out)};
}

Operator partial_trace(const Operator& op, int party) {
  int np = op.parties();
  if (np < 2) throw DomainError("bad_party", "partial trace needs at least two parties");
  if (party < 0 || party >= np) throw DomainError("bad_party", "party index out of range");
  int left = 1, right = 1;
  for (int k = 0; k < party; ++k) left *= op.dims[k];
  for (int k = party + 1; k < np; ++k) right *= op.dims[k];
  int d = op.dims[party];
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(left * right, left * right);
  for (int lr = 0; lr < left; ++lr)
    for (int lc = 0; lc < left; ++lc)
      for (int i = 0; i < d; ++i)
        out.block(lr * right, lc * right, right, right) +=
            op.mat.block((lr * d + i) * right, (lc * d + i) * right, right, right);
  std::vector<int> dims;
  for (int k = 0; k < np; ++k)
    if (k != party) dims.push_back(op.dims[k]);
  return Operator{std::move(dims), std::move(out)};
}

cd_t hs_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a * b.adjoint()).trace();
}

double hs_norm(const Eigen::MatrixXcd& a) { return a.norm(); }

cd_t hs_inner(const Operator& a, const Operator& b) { return hs_inner(a.mat, b.mat); }

double hs_norm(const Operator& a) { return hs_norm(a.mat); }

int matrix_rank(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

Eigen::VectorXcd basis_ket(int i, int n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  v(i) = 1.0;
  return v;
}

Eigen::VectorXcd kron_vec(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Eigen::MatrixXcd projector(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

Eigen::MatrixXcd hermitian_kernel(const Eigen::MatrixXcd& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<int> idx;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) <= tol * scale) idx.push_back(i);
  Eigen::MatrixXcd out(m.rows(), static_cast<int>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<int>(k)) = es.eigenvectors().col(idx[k]);
  return out;
}

}  // namespace witnesskit

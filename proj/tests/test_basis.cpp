#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "witnesskit/basis.hpp"
#include "witnesskit/operator.hpp"
#include "witnesskit/witness.hpp"

using namespace witnesskit;
using Eigen::MatrixXcd;
using namespace std::complex_literals;

namespace {

MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cd_t(g(rng), g(rng));
  return 0.5 * (m + m.adjoint().eval());
}

}  // namespace

TEST_CASE("qubit generators are the normalized Pauli matrices") {
  GeneratorBasis b = generator_basis(2);
  REQUIRE(b.ops.size() == 4);
  double r = 1.0 / std::sqrt(2.0);
  MatrixXcd x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -1i, 1i, 0;
  z << 1, 0, 0, -1;
  CHECK((b.ops[0] - r * MatrixXcd::Identity(2, 2)).norm() < 1e-15);
  CHECK((b.ops[1] - r * x).norm() < 1e-15);
  CHECK((b.ops[2] - r * y).norm() < 1e-15);
  CHECK((b.ops[3] - r * z).norm() < 1e-15);
}

TEST_CASE("generator bases are hermitian, orthonormal and traceless") {
  for (int dim : {2, 3, 4, 5}) {
    GeneratorBasis b = generator_basis(dim);
    REQUIRE(static_cast<int>(b.ops.size()) == dim * dim);
    for (std::size_t i = 0; i < b.ops.size(); ++i) {
      CHECK((b.ops[i] - b.ops[i].adjoint().eval()).norm() < 1e-14);
      if (i > 0) CHECK(std::abs(b.ops[i].trace()) < 1e-14);
      for (std::size_t j = i; j < b.ops.size(); ++j) {
        double expected = i == j ? 1.0 : 0.0;
        CHECK(std::abs(hs_inner(b.ops[i], b.ops[j]) - expected) < 1e-13);
      }
    }
  }
}

TEST_CASE("bloch coordinates recompose the operator") {
  std::mt19937_64 rng(3);
  for (int dim : {2, 3, 4}) {
    GeneratorBasis b = generator_basis(dim);
    MatrixXcd op = random_hermitian(dim, rng);
    BlochVector v = bloch(op, b);
    CHECK(v.f0 == doctest::Approx(op.trace().real() / dim).epsilon(1e-12));
    MatrixXcd back = v.f0 * MatrixXcd::Identity(dim, dim);
    for (int i = 1; i < dim * dim; ++i) back += v.f(i - 1) * b.ops[i];
    CHECK((back - op).norm() < 1e-12);
  }
}

TEST_CASE("expand and recompose roundtrip") {
  std::mt19937_64 rng(5);
  for (auto dims : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {3, 3}, {2, 4}}) {
    int n = dims[0] * dims[1];
    Operator op = make_operator(dims, random_hermitian(n, rng));
    CoefficientMatrix cm = expand(op);
    REQUIRE(cm.lambda.rows() == dims[0] * dims[0]);
    REQUIRE(cm.lambda.cols() == dims[1] * dims[1]);
    CHECK((recompose(cm).mat - op.mat).norm() < 1e-12);
    CHECK(cm.reduced().rows() == dims[0] * dims[0] - 1);
    CHECK(cm.reduced().cols() == dims[1] * dims[1] - 1);
  }
}

TEST_CASE("reference witness expands to a diagonal coefficient matrix") {
  Operator w0 = make_operator({2, 2}, w0_matrix());
  CoefficientMatrix cm = expand(w0);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(1, 1) = -0.5;
  expected(2, 2) = -0.5;
  expected(3, 3) = 0.5;
  CHECK((cm.lambda - expected).norm() < 1e-13);
  CHECK(matrix_rank(cm.lambda.cast<cd_t>()) == 4);
  CHECK(matrix_rank(cm.reduced().cast<cd_t>()) == 3);
}

TEST_CASE("coefficient matrix of a pure state has rank equal to squared Schmidt rank") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int n : {2, 3, 4}) {
    for (int l = 1; l <= n; ++l) {
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n * n);
      Eigen::VectorXd s = Eigen::VectorXd::Zero(l);
      for (int i = 0; i < l; ++i) s(i) = std::abs(g(rng)) + 0.1;
      s.normalize();
      for (int i = 0; i < l; ++i) psi(i * n + i) = s(i);
      Operator proj = make_operator({n, n}, projector(psi));
      CHECK(matrix_rank(expand(proj).lambda.cast<cd_t>()) == l * l);
    }
  }
}

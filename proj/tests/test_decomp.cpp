#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <set>

#include "witnesskit/basis.hpp"
#include "witnesskit/decomp.hpp"
#include "witnesskit/errors.hpp"
#include "witnesskit/operator.hpp"
#include "witnesskit/schmidt.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/witness.hpp"

using namespace witnesskit;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

VectorXcd random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cd_t(g(rng), g(rng));
  return v.normalized();
}

MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cd_t(g(rng), g(rng));
  return Eigen::HouseholderQR<MatrixXcd>(m).householderQ();
}

}  // namespace

TEST_CASE("setting realization is row major over joint outcomes") {
  Setting s;
  s.bases = {MatrixXcd::Identity(2, 2), MatrixXcd::Identity(3, 3)};
  s.coeffs = Eigen::VectorXd::LinSpaced(6, 0.0, 5.0);
  Operator op = s.realize();
  REQUIRE(op.dims == std::vector<int>{2, 3});
  Eigen::VectorXd diag(6);
  diag << 0, 1, 2, 3, 4, 5;
  CHECK((op.mat - diag.asDiagonal().toDenseMatrix().cast<cd_t>()).norm() < 1e-15);
  CHECK(s.orthonormal());

  Setting bad = s;
  bad.bases[0](0, 0) = 2.0;
  CHECK_FALSE(bad.orthonormal());
}

TEST_CASE("three settings for the reference witness") {
  LocalDecomposition d = two_qubit_three_settings(bell_ket(BellKind::phi_minus));
  CHECK((d.target.mat - w0_matrix()).norm() < 1e-14);
  CHECK(verify(d) < 1e-12);
  CHECK(count_settings(d) == 3);
  CHECK(static_cast<int>(d.settings.size()) == 3);
  for (const auto& s : d.settings) CHECK(s.orthonormal());
  CHECK(settings_lower_bound(d.target) == 3);
}

TEST_CASE("three settings for random two qubit states") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    VectorXcd psi = random_state(4, rng);
    LocalDecomposition d = two_qubit_three_settings(psi);
    Operator expected = partial_transpose(make_operator({2, 2}, projector(psi)), 1);
    CHECK((d.target.mat - expected.mat).norm() < 1e-13);
    CHECK(verify(d) < 1e-12);
    CHECK(count_settings(d) == 3);
  }
}

TEST_CASE("product states prune to one setting") {
  VectorXcd psi = kron_vec(basis_ket(0, 2), basis_ket(1, 2));
  LocalDecomposition d = two_qubit_three_settings(psi);
  CHECK(verify(d) < 1e-12);
  CHECK(count_settings(d) == 1);
}

TEST_CASE("five product projectors") {
  VectorXcd psi = bell_ket(BellKind::phi_minus);
  ProductVectorDecomposition d = onp_five_projectors(psi);
  REQUIRE(d.terms.size() == 5);
  CHECK(verify(d) < 1e-12);
  CHECK(onp_alice_settings_count(d) == 4);
  for (const auto& t : d.terms) {
    CHECK(t.vectors[0].norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.vectors[1].norm() == doctest::Approx(1.0).epsilon(1e-12));
  }

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    ProductVectorDecomposition r = onp_five_projectors(random_state(4, rng));
    CHECK(verify(r) < 1e-12);
  }

  CHECK_THROWS_AS(onp_five_projectors(kron_vec(basis_ket(0, 2), basis_ket(0, 2))), DomainError);
}

TEST_CASE("round robin pairings") {
  CHECK_THROWS_AS(round_robin_pairing(1), DomainError);

  for (int l : {2, 3, 4, 5, 6, 7}) {
    auto rounds = round_robin_pairing(l);
    int expected_rounds = l % 2 == 0 ? l - 1 : l;
    CHECK(static_cast<int>(rounds.size()) == expected_rounds);
    std::set<std::pair<int, int>> seen;
    for (const auto& round : rounds) {
      std::set<int> used;
      for (auto [i, j] : round) {
        CHECK(i < j);
        CHECK(seen.insert({i, j}).second);  // every pair exactly once
        CHECK(used.insert(i).second);       // no index twice per round
        CHECK(used.insert(j).second);
      }
      if (l % 2 == 0) CHECK(static_cast<int>(used.size()) == l);
    }
    CHECK(static_cast<int>(seen.size()) == l * (l - 1) / 2);
  }
}

TEST_CASE("pure state decomposition setting counts") {
  std::mt19937_64 rng(29);
  auto run = [&](const std::vector<int>& dims, int expected) {
    // draw until the Schmidt rank is full
    for (;;) {
      VectorXcd psi = random_state(dims[0] * dims[1], rng);
      SchmidtForm sf = schmidt(psi, dims);
      if (sf.rank != std::min(dims[0], dims[1])) continue;
      LocalDecomposition d = theorem1_ons(psi, dims);
      CHECK((d.target.mat - projector(psi)).norm() < 1e-13);
      CHECK(verify(d) < 1e-10);
      CHECK(count_settings(d) == expected);
      for (const auto& s : d.settings) CHECK(s.orthonormal());
      return;
    }
  };
  run({2, 2}, 3);   // l=2: 2l-1
  run({3, 3}, 6);   // l=3: 2l
  run({4, 4}, 7);   // l=4: 2l-1
  run({5, 5}, 10);  // l=5: 2l
  run({2, 3}, 3);
  run({3, 4}, 6);

  VectorXcd product = kron_vec(basis_ket(1, 3), basis_ket(2, 3));
  LocalDecomposition d = theorem1_ons(product, {3, 3});
  CHECK(verify(d) < 1e-12);
  CHECK(count_settings(d) == 1);  // l=1
}

TEST_CASE("lower bound on the number of settings") {
  CHECK(settings_lower_bound(make_operator({2, 2}, w0_matrix())) == 3);
  CHECK(settings_lower_bound(bell_ket(BellKind::psi_plus), {2, 2}) == 3);

  std::mt19937_64 rng(31);
  for (int n : {2, 3, 4}) {
    for (;;) {
      VectorXcd psi = random_state(n * n, rng);
      if (schmidt(psi, {n, n}).rank != n) continue;
      CHECK(settings_lower_bound(psi, {n, n}) == n + 1);
      break;
    }
  }
}

TEST_CASE("single settings have reduced coefficient rank below the local dimension") {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> g;
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 10; ++trial) {
      Setting s;
      s.bases = {random_unitary(n, rng), random_unitary(n, rng)};
      s.coeffs.resize(n * n);
      for (int i = 0; i < n * n; ++i) s.coeffs(i) = g(rng);
      CoefficientMatrix cm = expand(s.realize());
      CHECK(matrix_rank(cm.reduced().cast<cd_t>()) <= n - 1);
    }
  }
}

TEST_CASE("three qubit witness decompositions") {
  LocalDecomposition ghz = ghz_decomposition();
  CHECK((ghz.target.mat - ghz_witness().op.mat).norm() < 1e-14);
  CHECK(verify(ghz) < 1e-12);
  CHECK(count_settings(ghz) == 5);

  LocalDecomposition w1 = w1_decomposition();
  CHECK((w1.target.mat - w_witness_1().op.mat).norm() < 1e-14);
  CHECK(verify(w1) < 1e-12);
  CHECK(count_settings(w1) == 7);

  LocalDecomposition w2 = w2_decomposition();
  CHECK((w2.target.mat - w_witness_2().op.mat).norm() < 1e-14);
  CHECK(verify(w2) < 1e-12);
  CHECK(count_settings(w2) == 5);

  for (const auto* d : {&ghz, &w1, &w2})
    for (const auto& s : d->settings) CHECK(s.orthonormal());
}

TEST_CASE("tiles witness setting variants") {
  MatrixXcd wbar = MatrixXcd::Zero(9, 9);
  for (const auto& v : upb_vectors()) wbar += projector(v);

  LocalDecomposition plain = upb_witness_settings(UpbVariant::kernel_only);
  CHECK((plain.target.mat - wbar).norm() < 1e-14);
  CHECK(verify(plain) < 1e-12);
  CHECK(count_settings(plain) == 5);

  double eps = 0.01;
  LocalDecomposition full = upb_witness_settings(UpbVariant::full, eps);
  CHECK((full.target.mat - (wbar - eps * MatrixXcd::Identity(9, 9))).norm() < 1e-14);
  CHECK(verify(full) < 1e-12);
  CHECK(count_settings(full) == 6);

  double eps_primed = 0.02;
  LocalDecomposition onp = upb_witness_settings(UpbVariant::onp, eps_primed);
  CHECK((onp.target.mat - (wbar - eps_primed * upb_identity_like().mat)).norm() < 1e-14);
  CHECK(verify(onp) < 1e-12);
  CHECK(count_settings(onp) == 5);

  for (const auto* d : {&plain, &full, &onp})
    for (const auto& s : d->settings) CHECK(s.orthonormal());
}

TEST_CASE("identity like operator from the nine tiles vectors") {
  Operator ident = upb_identity_like();
  CHECK(ident.mat.trace().real() == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(ident.mat.isApprox(ident.mat.adjoint(), 1e-13));
  CHECK(matrix_rank(ident.mat) == 9);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(ident.mat, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("partial transpose of a decomposition") {
  std::mt19937_64 rng(41);
  VectorXcd psi = random_state(9, rng);
  LocalDecomposition d = theorem1_ons(psi, {3, 3});
  LocalDecomposition pt = partial_transpose_decomposition(d, 1);
  CHECK((pt.target.mat - partial_transpose(d.target, 1).mat).norm() < 1e-13);
  CHECK(verify(pt) < 1e-10);
  CHECK(count_settings(pt) == count_settings(d));
  CHECK_THROWS_AS(partial_transpose_decomposition(d, 2), DomainError);
}

TEST_CASE("operator basis decomposition") {
  TensorDecomposition w0 = operator_basis_decomposition(make_operator({2, 2}, w0_matrix()));
  CHECK(verify(w0) < 1e-12);
  int nonzero = 0;
  for (const auto& t : w0.terms)
    if (hs_norm(t.factors[1]) > 1e-12) ++nonzero;
  CHECK(nonzero == 4);

  std::mt19937_64 rng(43);
  std::normal_distribution<double> g;
  MatrixXcd m(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m(i, j) = cd_t(g(rng), g(rng));
  m = 0.5 * (m + m.adjoint().eval());
  TensorDecomposition generic = operator_basis_decomposition(make_operator({2, 4}, m));
  CHECK(verify(generic) < 1e-11);
  CHECK(generic.terms.size() == 4);  // one per Alice generator
}

TEST_CASE("setting count ignores pruned and duplicated settings") {
  LocalDecomposition d = two_qubit_three_settings(bell_ket(BellKind::phi_minus));

  // an all-zero extra setting must not count
  Setting zero = d.settings[0];
  zero.coeffs.setZero();
  LocalDecomposition padded = d;
  padded.settings.push_back(zero);
  CHECK(count_settings(padded) == 3);

  // repeating a setting with relabeled outcomes must not count either
  Setting relabeled = d.settings[1];
  relabeled.bases[0].col(0).swap(relabeled.bases[0].col(1));
  Eigen::VectorXd c = relabeled.coeffs;
  std::swap(c(0), c(2));  // row swap on alice outcomes
  std::swap(c(1), c(3));
  relabeled.coeffs = c;
  LocalDecomposition doubled = d;
  doubled.settings.push_back(relabeled);
  CHECK(count_settings(doubled) == 3);
}

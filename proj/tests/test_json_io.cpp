#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>
#include <string>

#include "witnesskit/decomp.hpp"
#include "witnesskit/errors.hpp"
#include "witnesskit/json_io.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/witness.hpp"

using namespace witnesskit;
using nlohmann::json;

TEST_CASE("matrix roundtrip is exact") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = cd_t(g(rng), g(rng));

  json j = matrix_to_json(m);
  Eigen::MatrixXcd back = matrix_from_json(j);
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  CHECK((back - m).norm() == 0.0);

  // through a string as well: serialization must not lose precision
  Eigen::MatrixXcd reparsed = matrix_from_json(json::parse(j.dump()));
  CHECK((reparsed - m).norm() == 0.0);
}

TEST_CASE("vector roundtrip is exact") {
  Eigen::VectorXcd v = bell_ket(BellKind::psi_minus);
  Eigen::VectorXcd back = vector_from_json(vector_to_json(v));
  CHECK((back - v).norm() == 0.0);
}

TEST_CASE("decomposition roundtrip") {
  LocalDecomposition d = two_qubit_three_settings(bell_ket(BellKind::phi_minus));
  json j = decomposition_to_json(d);
  LocalDecomposition back = decomposition_from_json(json::parse(j.dump()));

  REQUIRE(back.settings.size() == d.settings.size());
  for (std::size_t i = 0; i < d.settings.size(); ++i) {
    CHECK((back.settings[i].coeffs - d.settings[i].coeffs).norm() == 0.0);
    for (std::size_t p = 0; p < d.settings[i].bases.size(); ++p)
      CHECK((back.settings[i].bases[p] - d.settings[i].bases[p]).norm() == 0.0);
  }
  CHECK(back.target.dims == d.target.dims);
  CHECK((back.target.mat - d.target.mat).norm() < 1e-14);
  CHECK(verify(back) < 1e-12);
}

TEST_CASE("three party decomposition roundtrip") {
  LocalDecomposition d = ghz_decomposition();
  LocalDecomposition back = decomposition_from_json(decomposition_to_json(d));
  CHECK(back.target.dims == std::vector<int>{2, 2, 2});
  CHECK(verify(back) < 1e-12);
  CHECK(count_settings(back) == 5);
}

TEST_CASE("tensor decomposition roundtrip") {
  TensorDecomposition d = operator_basis_decomposition(make_operator({2, 2}, w0_matrix()));
  TensorDecomposition back = tensor_decomposition_from_json(tensor_decomposition_to_json(d));
  REQUIRE(back.terms.size() == d.terms.size());
  CHECK(verify(back) < 1e-12);
  for (std::size_t i = 0; i < d.terms.size(); ++i) {
    CHECK(back.terms[i].coeff == d.terms[i].coeff);
    CHECK((back.terms[i].factors[0] - d.terms[i].factors[0]).norm() == 0.0);
  }
}

TEST_CASE("csv doubles roundtrip through text") {
  for (double x : {0.1, -1.0 / 3.0, 1e-17, 123456.789, 0.0, 15.0 / 17.0}) {
    CHECK(std::stod(csv_double(x)) == x);
  }
  CHECK(csv_double(0.5) == "0.5");
}

TEST_CASE("fnv1a64 known vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("hello world") == 0x779a65e7023cd2e7ULL);
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("malformed json is rejected") {
  json j = json::object();
  CHECK_THROWS_AS(decomposition_from_json(j), DomainError);
  CHECK_THROWS_AS(matrix_from_json(json::array({1, 2, 3})), DomainError);
}

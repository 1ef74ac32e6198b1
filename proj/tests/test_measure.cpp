#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "witnesskit/decomp.hpp"
#include "witnesskit/errors.hpp"
#include "witnesskit/measure.hpp"
#include "witnesskit/rng.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/witness.hpp"

using namespace witnesskit;

TEST_CASE("setting simulation produces a valid multinomial draw") {
  DensityMatrix rho = noisy_bell_state(0.8);
  LocalDecomposition d = two_qubit_three_settings(bell_ket(BellKind::phi_minus));

  std::mt19937_64 rng = substream(1, 0);
  ShotRecord rec = simulate_setting(rho, d.settings[0], 5000, rng);
  CHECK(rec.shots == 5000);
  REQUIRE(rec.counts.size() == 4);
  CHECK(std::accumulate(rec.counts.begin(), rec.counts.end(), 0L) == 5000);

  std::mt19937_64 r1 = substream(1, 0), r2 = substream(1, 0);
  ShotRecord a = simulate_setting(rho, d.settings[0], 5000, r1);
  ShotRecord b = simulate_setting(rho, d.settings[0], 5000, r2);
  CHECK(a.counts == b.counts);

  CHECK_THROWS_AS(simulate_setting(rho, d.settings[0], -1, rng), DomainError);
}

TEST_CASE("witness estimation converges to the trace value") {
  DensityMatrix rho = noisy_bell_state(0.9);
  LocalDecomposition d = two_qubit_three_settings(bell_ket(BellKind::phi_minus));
  double truth = hs_inner(d.target.mat, rho.op.mat).real();

  std::mt19937_64 rng = substream(2, 0);
  Estimate est = estimate_witness(rho, d, 200000, rng);
  CHECK(est.settings_used == 3);
  CHECK(est.shots_per_setting == 200000);
  CHECK(est.std_error > 0.0);
  CHECK(std::abs(est.value - truth) < 6.0 * est.std_error);
  CHECK(est.std_error < 5e-3);
}

TEST_CASE("estimation is deterministic for a fixed seed") {
  DensityMatrix rho = noisy_bell_state(0.6);
  LocalDecomposition d = two_qubit_three_settings(bell_ket(BellKind::phi_minus));
  std::mt19937_64 r1 = substream(77, 0), r2 = substream(77, 0);
  Estimate a = estimate_witness(rho, d, 10000, r1);
  Estimate b = estimate_witness(rho, d, 10000, r2);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("standard error matches the analytic multinomial variance") {
  // single diagonal setting on a known diagonal state: variance is exact
  DensityMatrix rho = noisy_bell_state(0.0);  // maximally mixed
  Setting s;
  s.bases = {Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(2, 2)};
  s.coeffs.resize(4);
  s.coeffs << 1.0, -1.0, -1.0, 1.0;
  LocalDecomposition d;
  d.settings = {s};
  d.target = s.realize();

  // E c = 0, E c^2 = 1, so var = 1/shots exactly; the plug-in estimate
  // fluctuates around that
  long shots = 100000;
  std::mt19937_64 rng = substream(3, 0);
  Estimate est = estimate_witness(rho, d, shots, rng);
  CHECK(est.std_error == doctest::Approx(std::sqrt(1.0 / shots)).epsilon(0.05));
}

TEST_CASE("unbiasedness over repetitions") {
  DensityMatrix rho = noisy_bell_state(0.7);
  LocalDecomposition d = two_qubit_three_settings(bell_ket(BellKind::phi_minus));
  double truth = hs_inner(d.target.mat, rho.op.mat).real();

  int reps = 60;
  long shots = 2000;
  std::mt19937_64 rng = substream(4, 0);
  double sum = 0.0, se = 0.0;
  for (int i = 0; i < reps; ++i) {
    Estimate est = estimate_witness(rho, d, shots, rng);
    sum += est.value;
    se = est.std_error;
  }
  double mean = sum / reps;
  CHECK(std::abs(mean - truth) < 5.0 * se / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("estimation rejects bad input") {
  DensityMatrix rho = noisy_bell_state(0.5);
  LocalDecomposition d = two_qubit_three_settings(bell_ket(BellKind::phi_minus));
  std::mt19937_64 rng = substream(5, 0);
  try {
    estimate_witness(rho, d, 0, rng);
    FAIL("expected zero_shots");
  } catch (const DomainError& e) {
    CHECK(e.code() == "zero_shots");
  }
  DensityMatrix wrong = upb_state();
  CHECK_THROWS_AS(estimate_witness(wrong, d, 100, rng), DomainError);
}

TEST_CASE("shot records are returned on request") {
  DensityMatrix rho = noisy_bell_state(0.5);
  LocalDecomposition d = two_qubit_three_settings(bell_ket(BellKind::phi_minus));
  std::mt19937_64 rng = substream(8, 0);
  std::vector<ShotRecord> records;
  Estimate est = estimate_witness(rho, d, 3000, rng, &records);
  REQUIRE(records.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(records[static_cast<std::size_t>(i)].setting_index == i);
    CHECK(std::accumulate(records[static_cast<std::size_t>(i)].counts.begin(),
                          records[static_cast<std::size_t>(i)].counts.end(), 0L) == 3000);
  }
  // estimate recomputes from the records exactly
  double value = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i)
    for (long k = 0; k < d.settings[i].coeffs.size(); ++k)
      value += d.settings[i].coeffs(k) *
               (static_cast<double>(records[i].counts[static_cast<std::size_t>(k)]) / 3000.0);
  CHECK(value == doctest::Approx(est.value).epsilon(1e-14));
}

TEST_CASE("independent decompositions of the same witness agree") {
  // reference witness written over the computational, x and y product bases
  auto basis = [](char which) {
    Eigen::MatrixXcd b(2, 2);
    const cd_t i(0.0, 1.0);
    double r = 1.0 / std::sqrt(2.0);
    switch (which) {
      case 'x': b << r, r, r, -r; break;
      case 'y': b << r, r, r * i, -r * i; break;
      default: b.setIdentity();
    }
    return b;
  };
  auto parity_setting = [&](char which, double diag_extra, double sign) {
    Setting s;
    s.bases = {basis(which), basis(which)};
    s.coeffs.resize(4);
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 4 / 2; ++l)
        s.coeffs(2 * k + l) = 0.25 * (diag_extra + sign * ((k + l) % 2 == 0 ? 1.0 : -1.0));
    return s;
  };
  LocalDecomposition pauli;
  pauli.settings = {parity_setting('z', 1.0, 1.0), parity_setting('x', 0.0, -1.0),
                    parity_setting('y', 0.0, -1.0)};
  pauli.target = make_operator({2, 2}, w0_matrix());
  REQUIRE(verify(pauli) < 1e-13);

  LocalDecomposition schmidt_based = two_qubit_three_settings(bell_ket(BellKind::phi_minus));
  DensityMatrix rho = noisy_bell_state(0.8);
  double truth = hs_inner(pauli.target.mat, rho.op.mat).real();

  std::mt19937_64 r1 = substream(9, 0), r2 = substream(9, 1);
  Estimate a = estimate_witness(rho, pauli, 50000, r1);
  Estimate b = estimate_witness(rho, schmidt_based, 50000, r2);
  CHECK(std::abs(a.value - truth) < 5.0 * a.std_error);
  CHECK(std::abs(b.value - truth) < 5.0 * b.std_error);
  CHECK(std::abs(a.value - b.value) < 5.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("works on the nine dimensional tiles witness") {
  DensityMatrix rho = upb_state();
  LocalDecomposition d = upb_witness_settings(UpbVariant::full, 0.02);
  double truth = hs_inner(d.target.mat, rho.op.mat).real();
  CHECK(truth == doctest::Approx(-0.02).epsilon(1e-10));

  std::mt19937_64 rng = substream(6, 0);
  Estimate est = estimate_witness(rho, d, 400000, rng);
  CHECK(std::abs(est.value - truth) < 6.0 * est.std_error);
}

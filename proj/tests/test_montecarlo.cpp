#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "witnesskit/errors.hpp"
#include "witnesskit/montecarlo.hpp"
#include "witnesskit/witness.hpp"

#include "oracles.hpp"

using namespace witnesskit;

TEST_CASE("plane parameter") {
  CHECK(plane_parameter(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(plane_parameter(0.25) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(plane_parameter(0.1) == doctest::Approx(oracles::plane_q(0.1)).epsilon(1e-15));
}

TEST_CASE("ball volumes match the section radii") {
  for (double alpha : {0.0, 0.002, 0.005, 0.01}) {
    double q = plane_parameter(alpha);
    for (double p : {0.1, 0.4, 0.8}) {
      BallVolumes v = ball_volumes(q, p, 0.2);
      CHECK(v.r2_xp == doctest::Approx(oracles::r2_separable(q)).epsilon(1e-13));
      CHECK(v.r2_bp == doctest::Approx(oracles::r2_known_p(q, p, 0.2)).epsilon(1e-13));
      if (v.r2_bp > 0.0 && v.r2_xp > 0.0) {
        CHECK(v.vol_xp / v.vol_bp ==
              doctest::Approx(std::pow(v.r2_xp / v.r2_bp, 7)).epsilon(1e-10));
      }
    }
  }
  // far plane: no intersection, zero volume
  BallVolumes empty = ball_volumes(plane_parameter(0.0), 0.9, 0.01);
  CHECK(empty.vol_bp == 0.0);
}

TEST_CASE("analytical bound frozen values") {
  CHECK(analytical_bound(0.005, 0.1) == doctest::Approx(0.9014698446928086).epsilon(1e-12));
  CHECK(analytical_bound(0.05, 0.25) == doctest::Approx(0.7545580628404196).epsilon(1e-12));
  CHECK(analytical_bound(0.0, 0.1) > 0.99);
  for (double d : {0.05, 0.1, 0.25}) CHECK(analytical_bound(tau_threshold(d), d) < 1e-10);
}

TEST_CASE("analytical bound agrees with the volume ratio oracle") {
  for (double d : {0.05, 0.1, 0.15, 0.25, 0.288}) {
    double tau = tau_threshold(d);
    for (int k = 0; k < 20; ++k) {
      double alpha = tau * k / 20.0;
      CHECK(std::abs(analytical_bound(alpha, d) - oracles::error_bound(alpha, d)) < 1e-6);
    }
  }
}

TEST_CASE("analytical bound domain") {
  CHECK_THROWS_AS(analytical_bound(0.002, 0.05), DomainError);  // above tau(0.05)
  CHECK_THROWS_AS(analytical_bound(-0.001, 0.1), DomainError);
  CHECK_THROWS_AS(analytical_bound(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(analytical_bound(0.0, 0.3), DomainError);
  try {
    analytical_bound(0.002, 0.05);
    FAIL("expected out_of_domain");
  } catch (const DomainError& e) {
    CHECK(e.code() == "out_of_domain");
  }
}

TEST_CASE("error curve structure and determinism") {
  ErrorCurveOptions opts;
  opts.samples = 4000;
  opts.seed = 123;

  ErrorCurve curve = error_curve(0.1, opts);
  CHECK(curve.d == 0.1);
  CHECK(curve.tau == doctest::Approx(tau_threshold(0.1)));
  CHECK(curve.n_samples == 4000);
  REQUIRE(static_cast<int>(curve.bins.size()) == opts.alpha_bins);
  for (int b = 0; b < opts.alpha_bins; ++b) {
    const ErrorCurveBin& bin = curve.bins[static_cast<std::size_t>(b)];
    CHECK(bin.alpha == doctest::Approx((b + 0.5) * curve.tau / opts.alpha_bins).epsilon(1e-12));
    CHECK(bin.e_bound == doctest::Approx(analytical_bound(bin.alpha, 0.1)).epsilon(1e-12));
    if (bin.e_minus) {
      CHECK(*bin.e_minus >= 0.0);
      CHECK(*bin.e_minus <= 1.0);
      CHECK(bin.n > 0);
    }
  }

  ErrorCurve again = error_curve(0.1, opts);
  opts.exec = Exec::serial;
  ErrorCurve serial = error_curve(0.1, opts);
  for (std::size_t i = 0; i < curve.bins.size(); ++i) {
    CHECK(curve.bins[i].e_minus == again.bins[i].e_minus);
    CHECK(curve.bins[i].e_minus == serial.bins[i].e_minus);
    CHECK(curve.bins[i].sigma == serial.bins[i].sigma);
    CHECK(curve.bins[i].n == serial.bins[i].n);
  }

  CHECK_THROWS_AS(error_curve(0.5, opts), DomainError);
  opts.samples = 0;
  CHECK_THROWS_AS(error_curve(0.1, opts), DomainError);
}

TEST_CASE("false separable rate") {
  ErrorCurveOptions opts;
  opts.samples = 4000;
  opts.seed = 5;

  FalseRate zero = false_separable_rate(0.0, opts);
  CHECK(zero.rate == 0.0);

  FalseRate fr = false_separable_rate(0.2, opts);
  CHECK(fr.rate >= 0.0);
  CHECK(fr.rate <= 1.0);
  CHECK(fr.p_at_max >= 0.0);
  CHECK(fr.p_at_max <= 1.0);

  opts.exec = Exec::serial;
  FalseRate serial = false_separable_rate(0.2, opts);
  CHECK(fr.rate == serial.rate);
  CHECK(fr.sigma == serial.sigma);
  CHECK(fr.p_at_max == serial.p_at_max);
  CHECK(fr.n == serial.n);
}

TEST_CASE("soundness scan on a reduced draw count") {
  SoundnessOptions opts;
  opts.draws = 30000;
  opts.seed = 99;
  SoundnessReport r = soundness_scan(opts);
  CHECK(r.draws == 30000);
  CHECK(r.tau_violations == 0);
  CHECK(r.theta_violations == 0);
  CHECK(r.negative_violations == 0);
  CHECK(r.mean_radius_sq == doctest::Approx(15.0 / 17.0).epsilon(0.02));

  opts.exec = Exec::serial;
  SoundnessReport s = soundness_scan(opts);
  CHECK(s.borderline == r.borderline);
  CHECK(s.mean_radius_sq == r.mean_radius_sq);
}

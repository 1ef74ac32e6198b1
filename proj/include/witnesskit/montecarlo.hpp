#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "witnesskit/parallel.hpp"

namespace witnesskit {

// Plane of constant witness value: q = 1/3 - (4/3) alpha.
double plane_parameter(double alpha);

// Squared radii and 14-dimensional volumes of the two disks cut out of the
// noise ball by the plane of constant witness value: the best-product plane
// section (radius depends on p) and the crossing-plane section. Negative
// radicands clamp to zero volume.
struct BallVolumes {
  double r2_bp = 0.0;
  double r2_xp = 0.0;
  double vol_bp = 0.0;
  double vol_xp = 0.0;
};

BallVolumes ball_volumes(double q, double p, double d);

// Closed-form upper bound on the probability of wrongly calling an entangled
// state separable at witness value alpha, maximized over the mixing weight.
// Defined for alpha in [0, tau(d)] and d in (0, 1/sqrt(12)].
double analytical_bound(double alpha, double d);

struct ErrorCurveOptions {
  long samples = 50000;
  int p_grid = 101;     // uniform grid over [0, 1]
  int alpha_bins = 50;  // uniform bins over [0, tau(d))
  std::uint64_t seed = 20250818;
  Exec exec = Exec::parallel;
};

struct ErrorCurveBin {
  double alpha = 0.0;             // bin center
  std::optional<double> e_minus;  // empty when no (p, bin) cell held enough samples
  double e_bound = 0.0;           // analytical bound at the center
  double sigma = 0.0;             // add-two binomial standard error at the achieving cell
  long n = 0;                     // samples at the achieving (p, bin) cell
};

struct ErrorCurve {
  double d = 0.0;
  double tau = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<ErrorCurveBin> bins;
};

// Empirical error curve: one fixed sample of the unit 15-ball, rescaled into
// the noise ball for every p on the grid; within each witness-value bin the
// NPT fraction is maximized over p.
ErrorCurve error_curve(double d, const ErrorCurveOptions& opts = {});

struct FalseRate {
  double d = 0.0;
  double rate = 0.0;   // sup over well-populated p cells of P(NPT | Tr >= 0)
  double sigma = 0.0;  // add-two binomial standard error at the achieving p
  double p_at_max = 0.0;
  long n = 0;          // conditioning count at the achieving p
  long n_samples = 0;
  std::uint64_t seed = 0;
};

// Probability of the naive call "witness nonnegative, hence separable" being
// wrong, maximized over p.
FalseRate false_separable_rate(double d, const ErrorCurveOptions& opts = {});

struct SoundnessOptions {
  long draws = 1000000;
  std::uint64_t seed = 20250818;
  Exec exec = Exec::parallel;
};

struct SoundnessReport {
  long draws = 0;
  long tau_violations = 0;       // Tr >= tau(d) but NPT
  long theta_violations = 0;     // Tr >= theta(p, d) but NPT
  long negative_violations = 0;  // Tr < 0 but PPT
  long borderline = 0;           // within 1e-9 of a threshold, not judged
  double mean_radius_sq = 0.0;   // should approach 15/17 for a uniform ball
};

// Randomized soundness audit of the certification thresholds: draws random
// (p, d, noise) triples and checks every verdict against the PPT oracle.
SoundnessReport soundness_scan(const SoundnessOptions& opts = {});

}  // namespace witnesskit

#include "witnesskit/montecarlo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "witnesskit/basis.hpp"
#include "witnesskit/errors.hpp"
#include "witnesskit/operator.hpp"
#include "witnesskit/rng.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/witness.hpp"

namespace witnesskit {

double plane_parameter(double alpha) { return 1.0 / 3.0 - 4.0 / 3.0 * alpha; }

namespace {

constexpr int kBallDim = 15;

// Volume of a 14-ball of squared radius r2, the dimension of the section of
// the noise ball cut by a plane of constant witness value.
double disk_volume(double r2) {
  static const double kPi7Over7Fact = std::pow(std::numbers::pi, 7) / 5040.0;
  if (r2 <= 0.0) return 0.0;
  double r14 = 1.0;
  for (int i = 0; i < 7; ++i) r14 *= r2;
  return kPi7Over7Fact * r14;
}

struct SamplerTables {
  Eigen::VectorXd w;                    // Tr(W0 G_k), k = 1..15
  std::vector<Eigen::Matrix4cd> g_pt;   // partially transposed generators
  Eigen::Matrix4cd bell_pt;             // (|psi+><psi+|)^{T_B}
  Eigen::Matrix4cd quarter_identity;
};

const SamplerTables& tables() {
  static const SamplerTables t = [] {
    SamplerTables out;
    GeneratorBasis g = generator_basis(4);
    Eigen::MatrixXcd w0 = w0_matrix();
    out.w = Eigen::VectorXd(kBallDim);
    out.g_pt.resize(kBallDim);
    for (int k = 0; k < kBallDim; ++k) {
      const Eigen::MatrixXcd& gk = g.ops[static_cast<std::size_t>(k) + 1];
      out.w(k) = hs_inner(w0, gk).real();
      out.g_pt[static_cast<std::size_t>(k)] =
          partial_transpose(make_operator({2, 2}, gk), 1).mat;
    }
    out.bell_pt = partial_transpose(make_operator({2, 2}, projector(bell_ket(BellKind::psi_plus))), 1).mat;
    out.quarter_identity = 0.25 * Eigen::Matrix4cd::Identity();
    return out;
  }();
  return t;
}

// Uniform point in the unit ball of R^15.
Eigen::VectorXd ball_point(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(kBallDim);
  for (int i = 0; i < kBallDim; ++i) x(i) = gauss(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double radius = std::pow(unit(rng), 1.0 / kBallDim);
  return x * (radius / x.norm());
}

struct BallSample {
  double wx = 0.0;        // w . x
  double r2 = 0.0;        // |x|^2
  Eigen::Matrix4cd d_pt;  // sum_k x_k G_k^{T_B}
};

std::vector<BallSample> draw_samples(long n, std::uint64_t seed, Exec exec) {
  const SamplerTables& t = tables();
  std::vector<BallSample> samples(static_cast<std::size_t>(n));
  parallel_for(n, exec, [&](std::int64_t i) {
    std::mt19937_64 rng = substream(seed, static_cast<std::uint64_t>(i));
    Eigen::VectorXd x = ball_point(rng);
    BallSample& s = samples[static_cast<std::size_t>(i)];
    s.wx = t.w.dot(x);
    s.r2 = x.squaredNorm();
    s.d_pt.setZero();
    for (int k = 0; k < kBallDim; ++k) s.d_pt += x(k) * t.g_pt[static_cast<std::size_t>(k)];
  });
  return samples;
}

double witness_value(double p, double d, double wx) {
  return -0.5 * p + (1.0 - p) * (0.25 + d * wx);
}

// Smallest eigenvalue of the partial transpose of p |psi+><psi+| + (1-p) sigma.
double pt_min_eigenvalue(double p, double d, const Eigen::Matrix4cd& d_pt) {
  const SamplerTables& t = tables();
  Eigen::Matrix4cd m = p * t.bell_pt + (1.0 - p) * (t.quarter_identity + d * d_pt);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

constexpr double kNptTol = 1e-10;

// A (p, bin) cell needs this many samples before its NPT fraction is a
// usable estimate; the sup over p would otherwise be dominated by cells
// holding one or two draws.
constexpr long kMinCellCount = 20;
constexpr long kMinRateCount = 100;

// Add-two binomial standard error. Unlike the raw plug-in estimate it stays
// positive when every draw (or none) in the cell is NPT, so 3-sigma bands
// keep their coverage at the boundary.
double binomial_sigma(long k, long n) {
  double e = static_cast<double>(k + 1) / static_cast<double>(n + 2);
  return std::sqrt(e * (1.0 - e) / static_cast<double>(n + 2));
}

void check_curve_options(const ErrorCurveOptions& opts) {
  if (opts.samples < 1 || opts.p_grid < 2 || opts.alpha_bins < 1)
    throw DomainError("bad_argument", "monte carlo grid sizes must be positive");
}

}  // namespace

BallVolumes ball_volumes(double q, double p, double d) {
  BallVolumes v;
  v.r2_bp = (1.0 - p) * (1.0 - p) * d * d - 0.75 * (p - q) * (p - q);
  v.r2_xp = 1.0 / 12.0 - 0.75 * q * q;
  v.vol_bp = disk_volume(v.r2_bp);
  v.vol_xp = disk_volume(v.r2_xp);
  return v;
}

double analytical_bound(double alpha, double d) {
  if (d <= 0.0 || d > noise_ball_radius_max() + 1e-15)
    throw DomainError("out_of_domain", "noise radius outside (0, 1/sqrt(12)]");
  double tau = tau_threshold(d);
  if (alpha < 0.0 || alpha > tau)
    throw DomainError("out_of_domain", "witness value outside [0, tau(d)]");
  double ratio = alpha * (0.5 - alpha) * (3.0 - 4.0 * d * d) /
                 (d * d * (1.0 + 2.0 * alpha) * (1.0 + 2.0 * alpha));
  double r7 = 1.0;
  for (int i = 0; i < 7; ++i) r7 *= ratio;
  return 1.0 - r7;
}

ErrorCurve error_curve(double d, const ErrorCurveOptions& opts) {
  check_curve_options(opts);
  if (d < 0.0 || d > noise_ball_radius_max() + 1e-15)
    throw DomainError("out_of_domain", "noise radius outside [0, 1/sqrt(12)]");
  double tau = tau_threshold(d);
  int np = opts.p_grid, nb = opts.alpha_bins;

  std::vector<BallSample> samples = draw_samples(opts.samples, opts.seed, opts.exec);

  // Per (p, bin): how many samples landed there and how many of them are NPT.
  std::vector<long> n_cell(static_cast<std::size_t>(np) * nb, 0);
  std::vector<long> k_cell(static_cast<std::size_t>(np) * nb, 0);
  parallel_for(np, opts.exec, [&](std::int64_t ip) {
    double p = static_cast<double>(ip) / (np - 1);
    long* n_row = &n_cell[static_cast<std::size_t>(ip) * nb];
    long* k_row = &k_cell[static_cast<std::size_t>(ip) * nb];
    for (const BallSample& s : samples) {
      double tr = witness_value(p, d, s.wx);
      if (tr < 0.0 || tr >= tau) continue;
      int bin = std::min(nb - 1, static_cast<int>(tr / tau * nb));
      ++n_row[bin];
      if (pt_min_eigenvalue(p, d, s.d_pt) < -kNptTol) ++k_row[bin];
    }
  });

  ErrorCurve curve;
  curve.d = d;
  curve.tau = tau;
  curve.n_samples = opts.samples;
  curve.seed = opts.seed;
  curve.bins.resize(static_cast<std::size_t>(nb));
  for (int b = 0; b < nb; ++b) {
    ErrorCurveBin& out = curve.bins[static_cast<std::size_t>(b)];
    out.alpha = (b + 0.5) * tau / nb;
    out.e_bound = analytical_bound(out.alpha, d);
    for (int ip = 0; ip < np; ++ip) {
      long n = n_cell[static_cast<std::size_t>(ip) * nb + b];
      if (n < kMinCellCount) continue;
      long k = k_cell[static_cast<std::size_t>(ip) * nb + b];
      double e = static_cast<double>(k) / static_cast<double>(n);
      if (!out.e_minus.has_value() || e > *out.e_minus) {
        out.e_minus = e;
        out.n = n;
        out.sigma = binomial_sigma(k, n);
      }
    }
  }
  return curve;
}

FalseRate false_separable_rate(double d, const ErrorCurveOptions& opts) {
  check_curve_options(opts);
  if (d < 0.0 || d > noise_ball_radius_max() + 1e-15)
    throw DomainError("out_of_domain", "noise radius outside [0, 1/sqrt(12)]");
  int np = opts.p_grid;

  std::vector<BallSample> samples = draw_samples(opts.samples, opts.seed, opts.exec);

  std::vector<long> n_nonneg(static_cast<std::size_t>(np), 0);
  std::vector<long> k_npt(static_cast<std::size_t>(np), 0);
  parallel_for(np, opts.exec, [&](std::int64_t ip) {
    double p = static_cast<double>(ip) / (np - 1);
    long n = 0, k = 0;
    for (const BallSample& s : samples) {
      if (witness_value(p, d, s.wx) < 0.0) continue;
      ++n;
      if (pt_min_eigenvalue(p, d, s.d_pt) < -kNptTol) ++k;
    }
    n_nonneg[static_cast<std::size_t>(ip)] = n;
    k_npt[static_cast<std::size_t>(ip)] = k;
  });

  FalseRate out;
  out.d = d;
  out.n_samples = opts.samples;
  out.seed = opts.seed;
  // Take the sup over p cells with enough conditioning mass. If no cell
  // qualifies, fall back to the best-populated one rather than inventing a
  // zero; sigma stays honest about the small count either way.
  long threshold = std::min(kMinRateCount, *std::max_element(n_nonneg.begin(), n_nonneg.end()));
  bool found = false;
  for (int ip = 0; ip < np; ++ip) {
    long n = n_nonneg[static_cast<std::size_t>(ip)];
    if (n < threshold || n == 0) continue;
    double rate = static_cast<double>(k_npt[static_cast<std::size_t>(ip)]) / n;
    if (!found || rate > out.rate) {
      found = true;
      out.rate = rate;
      out.p_at_max = static_cast<double>(ip) / (np - 1);
      out.n = n;
      out.sigma = binomial_sigma(k_npt[static_cast<std::size_t>(ip)], n);
    }
  }
  return out;
}

SoundnessReport soundness_scan(const SoundnessOptions& opts) {
  if (opts.draws < 1) throw DomainError("bad_argument", "soundness scan needs at least one draw");
  const double d_max = noise_ball_radius_max();
  constexpr double kMargin = 1e-9;
  constexpr int kChunks = 512;

  struct ChunkTally {
    long tau_bad = 0, theta_bad = 0, neg_bad = 0, border = 0;
    double r2_sum = 0.0;
  };
  std::vector<ChunkTally> tallies(kChunks);

  parallel_for(kChunks, opts.exec, [&](std::int64_t c) {
    long lo = opts.draws * c / kChunks;
    long hi = opts.draws * (c + 1) / kChunks;
    ChunkTally& t = tallies[static_cast<std::size_t>(c)];
    const SamplerTables& tab = tables();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (long i = lo; i < hi; ++i) {
      std::mt19937_64 rng = substream(opts.seed, static_cast<std::uint64_t>(i));
      double p = 1.0 - unit(rng);  // (0, 1], keeps theta defined
      double d = unit(rng) * d_max;
      Eigen::VectorXd x = ball_point(rng);
      t.r2_sum += x.squaredNorm();

      double wx = tab.w.dot(x);
      Eigen::Matrix4cd d_pt = Eigen::Matrix4cd::Zero();
      for (int k = 0; k < kBallDim; ++k) d_pt += x(k) * tab.g_pt[static_cast<std::size_t>(k)];

      double tr = witness_value(p, d, wx);
      double lam = pt_min_eigenvalue(p, d, d_pt);
      bool npt = lam < -kNptTol;

      double tau = tau_threshold(d);
      double theta = theta_threshold(p, d);
      if (std::abs(tr - tau) <= kMargin || std::abs(tr - theta) <= kMargin || std::abs(tr) <= kMargin)
        ++t.border;
      if (tr >= tau + kMargin && npt) ++t.tau_bad;
      if (tr >= theta + kMargin && npt) ++t.theta_bad;
      if (tr <= -kMargin && !npt) ++t.neg_bad;
    }
  });

  SoundnessReport report;
  report.draws = opts.draws;
  double r2 = 0.0;
  for (const ChunkTally& t : tallies) {
    report.tau_violations += t.tau_bad;
    report.theta_violations += t.theta_bad;
    report.negative_violations += t.neg_bad;
    report.borderline += t.border;
    r2 += t.r2_sum;
  }
  report.mean_radius_sq = r2 / static_cast<double>(opts.draws);
  return report;
}

}  // namespace witnesskit

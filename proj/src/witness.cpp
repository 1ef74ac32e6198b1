#include "witnesskit/witness.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "witnesskit/errors.hpp"
#include "witnesskit/rng.hpp"

namespace witnesskit {

namespace {

constexpr double kTiny = 1e-14;

Eigen::VectorXcd phase_canonical(Eigen::VectorXcd v, double significance = 1e-9) {
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > significance) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

// Strict lexicographic order on (re, im) pairs, used only to break exact
// eigenvalue degeneracies deterministically.
bool lex_greater(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() > b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() > b(i).imag();
  }
  return false;
}

}  // namespace

Eigen::MatrixXcd w0_matrix() {
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(4, 4);
  w(0, 0) = 0.5;
  w(3, 3) = 0.5;
  w(1, 2) = -0.5;
  w(2, 1) = -0.5;
  return w;
}

Witness npt_witness(const DensityMatrix& rho) {
  if (rho.op.parties() != 2) throw DomainError("bad_dims", "npt witness needs a bipartite state");
  Operator pt = partial_transpose(rho.op, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt.mat);
  double lmin = es.eigenvalues()(0);
  if (lmin >= -1e-10)
    throw DomainError("ppt_input", "state is PPT; no NPT witness exists");
  Eigen::VectorXcd phi = phase_canonical(es.eigenvectors().col(0));
  for (int i = 1; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) - lmin > 1e-12) break;
    Eigen::VectorXcd cand = phase_canonical(es.eigenvectors().col(i));
    if (lex_greater(cand, phi)) phi = cand;
  }
  Operator w = partial_transpose(make_operator(rho.op.dims, projector(phi)), 1);
  std::ostringstream prov;
  prov << "partial transpose of projector onto most negative eigenvector (eigenvalue " << lmin
       << ") of rho^T_B";
  return Witness{std::move(w), WitnessKind::npt, prov.str(), 0.0};
}

Witness ghz_witness() {
  Eigen::MatrixXcd m = 0.75 * Eigen::MatrixXcd::Identity(8, 8) - projector(ghz_ket());
  return Witness{make_operator({2, 2, 2}, std::move(m)), WitnessKind::ghz,
                 "(3/4) 1 - GHZ projector", 0.0};
}

Witness w_witness_1() {
  Eigen::MatrixXcd m = (2.0 / 3.0) * Eigen::MatrixXcd::Identity(8, 8) - projector(w_ket());
  return Witness{make_operator({2, 2, 2}, std::move(m)), WitnessKind::w1,
                 "(2/3) 1 - W projector", 0.0};
}

Witness w_witness_2() {
  Eigen::MatrixXcd m = 0.5 * Eigen::MatrixXcd::Identity(8, 8) - projector(ghz_ket());
  return Witness{make_operator({2, 2, 2}, std::move(m)), WitnessKind::w2,
                 "(1/2) 1 - GHZ projector", 0.0};
}

namespace {

struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  Eigen::VectorXcd e, f;
  bool ok = false;
};

// One seesaw restart. With a denominator the half-steps solve the
// generalized problem M x = lambda I x; I restricted to a product slice can
// lose definiteness for unlucky iterates, in which case the restart aborts.
RestartOutcome seesaw_restart(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd* denom, int dA,
                              int dB, const SeesawOptions& opts, std::mt19937_64& rng) {
  RestartOutcome out;
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd f(dB);
  for (int j = 0; j < dB; ++j) f(j) = cd_t(gauss(rng), gauss(rng));
  f.normalize();
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dA);
  double value = std::numeric_limits<double>::infinity();

  auto contract_f = [&](const Eigen::MatrixXcd& op) {
    Eigen::MatrixXcd r(dA, dA);
    for (int a = 0; a < dA; ++a)
      for (int b = 0; b < dA; ++b)
        r(a, b) = (f.adjoint() * op.block(a * dB, b * dB, dB, dB) * f).value();
    return r;
  };
  auto contract_e = [&](const Eigen::MatrixXcd& op) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(dB, dB);
    for (int a = 0; a < dA; ++a)
      for (int b = 0; b < dA; ++b) r += std::conj(e(a)) * e(b) * op.block(a * dB, b * dB, dB, dB);
    return r;
  };

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double next;
    if (denom == nullptr) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ese(contract_f(m));
      e = ese.eigenvectors().col(0);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esf(contract_e(m));
      f = esf.eigenvectors().col(0);
      next = esf.eigenvalues()(0);
    } else {
      Eigen::MatrixXcd ifm = contract_f(*denom);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> chk(ifm, Eigen::EigenvaluesOnly);
      if (chk.eigenvalues().minCoeff() < 1e-12) return out;
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> gse(contract_f(m), ifm);
      e = gse.eigenvectors().col(0);
      e.normalize();
      Eigen::MatrixXcd iem = contract_e(*denom);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> chk2(iem, Eigen::EigenvaluesOnly);
      if (chk2.eigenvalues().minCoeff() < 1e-12) return out;
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> gsf(contract_e(m), iem);
      f = gsf.eigenvectors().col(0);
      f.normalize();
      next = gsf.eigenvalues()(0);
    }
    if (std::abs(next - value) < opts.conv_tol) {
      value = next;
      break;
    }
    value = next;
  }
  out.value = value;
  out.e = phase_canonical(e);
  out.f = phase_canonical(f);
  out.ok = std::isfinite(value);
  return out;
}

EpsilonResult run_seesaw(const Operator& wbar, const Operator* denom, const SeesawOptions& opts) {
  if (wbar.parties() != 2) throw DomainError("bad_dims", "optimizer needs a bipartite operator");
  if (!wbar.is_hermitian(1e-10)) throw DomainError("not_hermitian", "optimizer input must be Hermitian");
  int dA = wbar.dims[0], dB = wbar.dims[1];
  const Eigen::MatrixXcd* dmat = denom != nullptr ? &denom->mat : nullptr;

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(opts.restarts));
  parallel_for(opts.restarts, opts.exec, [&](std::int64_t r) {
    std::mt19937_64 rng = substream(opts.seed, static_cast<std::uint64_t>(r));
    outcomes[static_cast<std::size_t>(r)] = seesaw_restart(wbar.mat, dmat, dA, dB, opts, rng);
  });

  EpsilonResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& o : outcomes) {
    if (!o.ok) {
      ++best.failed_restarts;
      continue;
    }
    if (o.value < best.value) {
      best.value = o.value;
      best.e = o.e;
      best.f = o.f;
    }
  }
  if (!std::isfinite(best.value))
    throw DomainError("optimizer_failure", "no seesaw restart converged");
  best.negative_product_found = denom == nullptr && best.value < -1e-9;
  return best;
}

}  // namespace

EpsilonResult optimize_epsilon(const Operator& wbar, const SeesawOptions& opts) {
  return run_seesaw(wbar, nullptr, opts);
}

EpsilonResult optimize_epsilon(const Operator& wbar, const Operator& denom,
                               const SeesawOptions& opts) {
  if (denom.dims != wbar.dims) throw DomainError("bad_dims", "denominator dimensions must match");
  return run_seesaw(wbar, &denom, opts);
}

Witness edge_witness(const DensityMatrix& delta, const EdgeWitnessOptions& opts) {
  if (delta.op.parties() != 2) throw DomainError("bad_dims", "edge witness needs a bipartite state");
  if (!is_ppt(delta, opts.pt_party))
    throw DomainError("bad_argument", "edge witness construction expects a PPT state");
  int n = delta.op.total_dim();

  Eigen::MatrixXcd kernel = hermitian_kernel(delta.op.mat);
  if (kernel.cols() == 0) throw DomainError("trivial_kernel", "state has full rank, kernel is trivial");
  Eigen::MatrixXcd p = kernel * kernel.adjoint();

  Eigen::MatrixXcd wbar_mat;
  std::ostringstream prov;
  if (delta.family == StateFamily::upb) {
    // Here Q^{T} coincides with P, so the sum is skipped.
    wbar_mat = p;
    prov << "kernel projector (dim " << kernel.cols() << ")";
  } else {
    Operator pt = partial_transpose(delta.op, opts.pt_party);
    Eigen::MatrixXcd kernel_t = hermitian_kernel(pt.mat);
    if (kernel_t.cols() == 0)
      throw DomainError("trivial_kernel", "partially transposed state has trivial kernel");
    Operator q = make_operator(delta.op.dims, kernel_t * kernel_t.adjoint());
    wbar_mat = p + partial_transpose(q, opts.pt_party).mat;
    prov << "P (dim " << kernel.cols() << ") + Q^T (dim " << kernel_t.cols() << ")";
  }
  Operator wbar = make_operator(delta.op.dims, std::move(wbar_mat));

  double eps = 0.0;
  Eigen::MatrixXcd shift = Eigen::MatrixXcd::Identity(n, n);
  switch (opts.mode) {
    case EpsilonMode::given:
      if (opts.epsilon <= 0.0) throw DomainError("bad_argument", "epsilon must be positive");
      eps = opts.epsilon;
      prov << ", epsilon given";
      break;
    case EpsilonMode::optimize: {
      EpsilonResult r = optimize_epsilon(wbar, opts.seesaw);
      if (r.value <= kTiny)
        throw DomainError("optimizer_failure",
                          "optimized epsilon is not positive; state is not an edge state "
                          "or the optimizer failed");
      eps = r.value;
      prov << ", epsilon optimized";
      break;
    }
    case EpsilonMode::optimize_primed: {
      if (!opts.denominator.has_value())
        throw DomainError("bad_argument", "primed optimization needs a denominator operator");
      EpsilonResult r = optimize_epsilon(wbar, *opts.denominator, opts.seesaw);
      if (r.value <= kTiny)
        throw DomainError("optimizer_failure",
                          "optimized epsilon' is not positive; state is not an edge state "
                          "or the optimizer failed");
      eps = r.value;
      shift = opts.denominator->mat;
      prov << ", epsilon' optimized against supplied denominator";
      break;
    }
  }

  Operator w = make_operator(delta.op.dims, wbar.mat - eps * shift);
  prov << " = " << eps;
  return Witness{std::move(w), WitnessKind::edge, prov.str(), eps};
}

double tau_threshold(double d) {
  if (d < 0.0 || d > noise_ball_radius_max() + 1e-15)
    throw DomainError("bad_argument", "noise radius d must lie in [0, 1/sqrt(12)]");
  double radicand = (1.0 / 12.0 - d * d) * (0.75 - d * d);
  return 0.25 - d * d - std::sqrt(std::max(radicand, 0.0));
}

double theta_threshold(double p, double d) {
  if (p <= 0.0 || p > 1.0) throw DomainError("bad_argument", "p must lie in (0, 1]");
  if (d < 0.0 || d > noise_ball_radius_max() + 1e-15)
    throw DomainError("bad_argument", "noise radius d must lie in [0, 1/sqrt(12)]");
  return 0.25 - 1.0 / (24.0 * p) - 3.0 * p / 8.0 + (1.0 - p) * (1.0 - p) * d * d / (2.0 * p);
}

namespace {

Verdict classify_with_threshold(const Witness& w, double alpha, double threshold) {
  if (hs_norm(Eigen::MatrixXcd(w.op.mat - w0_matrix())) > 1e-10)
    throw DomainError("threshold_scope",
                      "separability thresholds apply only to the reference witness W0");
  Verdict v;
  v.value = alpha;
  v.threshold_used = threshold;
  if (alpha < 0.0)
    v.classification = Classification::entangled;
  else if (alpha >= threshold)
    v.classification = Classification::separable_certified;
  else
    v.classification = Classification::inconclusive;
  return v;
}

}  // namespace

Verdict classify(const Witness& w, double alpha, double d) {
  return classify_with_threshold(w, alpha, tau_threshold(d));
}

Verdict classify(const Witness& w, double alpha, const NoiseBallSpec& knowledge) {
  return classify_with_threshold(w, alpha, theta_threshold(knowledge.p, knowledge.d));
}

}  // namespace witnesskit

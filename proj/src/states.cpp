#include "witnesskit/states.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "witnesskit/basis.hpp"
#include "witnesskit/errors.hpp"
#include "witnesskit/rng.hpp"

namespace witnesskit {

namespace {

constexpr double kTiny = 1e-14;

Eigen::VectorXcd normalized(Eigen::VectorXcd v) {
  double n = v.norm();
  if (n <= kTiny) throw DomainError("bad_argument", "cannot normalize a zero vector");
  return v / n;
}

// Fixes the global phase so the largest-magnitude component is real positive.
Eigen::VectorXcd canonical_phase(Eigen::VectorXcd v) {
  int imax = 0;
  double best = 0.0;
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > best + kTiny) {
      best = std::abs(v(i));
      imax = i;
    }
  if (best > kTiny) v *= std::conj(v(imax)) / std::abs(v(imax));
  return v;
}

}  // namespace

DensityMatrix make_density(Operator op, StateFamily family) {
  if (!op.is_hermitian(1e-12))
    throw DomainError("not_density_matrix", "density matrix must be Hermitian");
  if (std::abs(op.mat.trace().real() - 1.0) > 1e-12 || std::abs(op.mat.trace().imag()) > 1e-12)
    throw DomainError("not_density_matrix", "density matrix must have unit trace");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw DomainError("not_density_matrix", "density matrix must be positive semidefinite");
  return DensityMatrix{std::move(op), family, std::nullopt};
}

Eigen::VectorXcd bell_ket(BellKind kind) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case BellKind::phi_plus: v(0) = r; v(3) = r; break;
    case BellKind::phi_minus: v(0) = r; v(3) = -r; break;
    case BellKind::psi_plus: v(1) = r; v(2) = r; break;
    case BellKind::psi_minus: v(1) = r; v(2) = -r; break;
  }
  return v;
}

DensityMatrix bell(BellKind kind) {
  return make_density(make_operator({2, 2}, projector(bell_ket(kind))), StateFamily::bell);
}

DensityMatrix noisy_bell_state(double p) {
  if (p < 0.0 || p > 1.0) throw DomainError("bad_argument", "mixing weight p must lie in [0, 1]");
  Eigen::MatrixXcd m = p * projector(bell_ket(BellKind::psi_plus)) +
                       (1.0 - p) * Eigen::MatrixXcd::Identity(4, 4) / 4.0;
  DensityMatrix rho = make_density(make_operator({2, 2}, std::move(m)), StateFamily::noisy_bell);
  return rho;
}

DensityMatrix noisy_state(double p, const Eigen::VectorXcd& psi, const DensityMatrix& sigma) {
  if (p < 0.0 || p > 1.0) throw DomainError("bad_argument", "mixing weight p must lie in [0, 1]");
  if (psi.size() != sigma.op.mat.rows())
    throw DomainError("bad_dims", "pure part and noise part sizes differ");
  if (std::abs(psi.norm() - 1.0) > 1e-12)
    throw DomainError("not_normalized", "pure part must be normalized");
  Eigen::MatrixXcd m = p * projector(psi) + (1.0 - p) * sigma.op.mat;
  return make_density(make_operator(sigma.op.dims, std::move(m)), StateFamily::generic);
}

double noise_ball_radius_max() { return 1.0 / std::sqrt(12.0); }

DensityMatrix sample_ball_state(const NoiseBallSpec& spec, std::mt19937_64& rng) {
  if (spec.p < 0.0 || spec.p > 1.0) throw DomainError("bad_argument", "p must lie in [0, 1]");
  if (spec.d < 0.0 || spec.d > noise_ball_radius_max() + 1e-15)
    throw DomainError("bad_argument", "noise radius d must lie in [0, 1/sqrt(12)]");
  static const GeneratorBasis basis = generator_basis(4);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd x(15);
  for (int k = 0; k < 15; ++k) x(k) = gauss(rng);
  double nrm = x.norm();
  if (nrm <= kTiny) {
    x.setZero();
  } else {
    double radius = std::pow(unif(rng), 1.0 / 15.0);
    x *= spec.d * radius / nrm;
  }
  Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
  for (int k = 0; k < 15; ++k) sigma += x(k) * basis.ops[static_cast<std::size_t>(k + 1)];
  Eigen::MatrixXcd m = spec.p * projector(bell_ket(BellKind::psi_plus)) + (1.0 - spec.p) * sigma;
  return make_density(make_operator({2, 2}, std::move(m)), StateFamily::noisy_bell);
}

bool is_ppt(const DensityMatrix& rho, int party, double ppt_tol) {
  Operator pt = partial_transpose(rho.op, party);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt.mat, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -ppt_tol;
}

Eigen::VectorXcd ghz_ket() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return v;
}

Eigen::VectorXcd w_ket() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return v;
}

DensityMatrix ghz_state() {
  return make_density(make_operator({2, 2, 2}, projector(ghz_ket())), StateFamily::ghz);
}

DensityMatrix w_state() {
  return make_density(make_operator({2, 2, 2}, projector(w_ket())), StateFamily::w);
}

std::vector<Eigen::VectorXcd> upb_vectors() {
  auto k = [](int i) { return basis_ket(i, 3); };
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Eigen::VectorXcd> out;
  out.push_back(kron_vec(k(0), r * (k(0) - k(1))));
  out.push_back(kron_vec(r * (k(0) - k(1)), k(2)));
  out.push_back(kron_vec(k(2), r * (k(1) - k(2))));
  out.push_back(kron_vec(r * (k(1) - k(2)), k(0)));
  Eigen::VectorXcd u = (k(0) + k(1) + k(2)) / std::sqrt(3.0);
  out.push_back(kron_vec(u, u));
  return out;
}

std::vector<Eigen::VectorXcd> upb_extension_vectors() {
  auto k = [](int i) { return basis_ket(i, 3); };
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Eigen::VectorXcd> out;
  out.push_back(kron_vec(k(0), r * (k(0) + k(1))));
  out.push_back(kron_vec(r * (k(0) + k(1)), k(2)));
  out.push_back(kron_vec(k(2), r * (k(1) + k(2))));
  out.push_back(kron_vec(r * (k(1) + k(2)), k(0)));
  out.push_back(kron_vec(k(1), k(1)));
  return out;
}

DensityMatrix upb_state() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(9, 9);
  for (const auto& psi : upb_vectors()) m -= projector(psi);
  return make_density(make_operator({3, 3}, m / 4.0), StateFamily::upb);
}

namespace {

void check_chessboard_params(const ChessboardParams& p) {
  if (std::abs(p.m) < kTiny || std::abs(p.n) < kTiny || std::abs(p.c) < kTiny ||
      p.a * p.a + p.b * p.b < kTiny)
    throw DomainError("bad_argument", "chessboard parameters m, n, c and a^2 + b^2 must be nonzero");
}

std::vector<Eigen::VectorXcd> chessboard_generators(const ChessboardParams& p) {
  double s = p.a * p.c / p.n;
  double t = p.a * p.d / p.m;
  auto vec = [](std::initializer_list<std::pair<int, double>> entries) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(9);
    for (const auto& [idx, val] : entries) v(idx) = val;
    return v;
  };
  return {vec({{0, p.m}, {2, s}, {4, p.n}}),
          vec({{1, p.a}, {3, p.b}, {5, p.c}}),
          vec({{0, p.n}, {4, -p.m}, {6, t}}),
          vec({{1, p.b}, {3, -p.a}, {7, p.d}})};
}

}  // namespace

DensityMatrix chessboard_state(const ChessboardParams& params) {
  check_chessboard_params(params);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(9, 9);
  double trace = 0.0;
  for (const auto& v : chessboard_generators(params)) {
    m += projector(v);
    trace += v.squaredNorm();
  }
  DensityMatrix rho = make_density(make_operator({3, 3}, m / trace), StateFamily::chessboard);
  rho.chessboard = params;
  return rho;
}

DensityMatrix horodecki_state(double b) {
  if (b <= 0.0 || b >= 1.0) throw DomainError("bad_argument", "horodecki parameter b must lie in (0, 1)");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8, 8);
  for (int i = 0; i < 3; ++i) {
    m(i, i) = b;
    m(i + 5, i + 5) = b;
    m(i, i + 5) = b;
    m(i + 5, i) = b;
  }
  m(3, 3) = b;
  m(4, 4) = (1.0 + b) / 2.0;
  m(7, 7) = (1.0 + b) / 2.0;
  m(4, 7) = std::sqrt(1.0 - b * b) / 2.0;
  m(7, 4) = m(4, 7);
  return make_density(make_operator({2, 4}, m / (7.0 * b + 1.0)), StateFamily::horodecki);
}

std::vector<ChessboardKernelVector> chessboard_kernel_vectors(const ChessboardParams& p) {
  check_chessboard_params(p);
  std::vector<ChessboardKernelVector> out;

  ChessboardKernelVector k1;
  k1.e = basis_ket(2, 3);
  k1.f = basis_ket(2, 3);
  out.push_back(std::move(k1));

  ChessboardKernelVector k4;
  if (std::abs(p.a * p.c) < kTiny) {
    k4.valid = false;
    k4.issue = "a c vanishes";
  } else {
    Eigen::VectorXcd e(3), f(3);
    e << -p.a * p.d / (p.m * p.n), 0.0, 1.0;
    f << 1.0, 0.0, -p.m * p.n / (p.a * p.c);
    k4.e = normalized(e);
    k4.f = normalized(f);
  }
  out.push_back(std::move(k4));

  // Remaining four vectors solve a quadratic in the third Alice component.
  double a1 = (p.m * p.m + p.n * p.n) * p.b * p.m * p.n - (p.a * p.a + p.b * p.b) * p.a * p.m * p.m;
  double a3 = p.a * p.d * p.d * p.n * p.n;
  double a13 = (p.m * p.m + p.n * p.n) * (p.m * p.n + p.a * p.b) * p.d - 2.0 * p.a * p.b * p.d * p.m * p.m;
  for (int branch = 0; branch < 2; ++branch) {
    cd_t disc = std::sqrt(cd_t(a13 * a13 - 4.0 * a1 * a3, 0.0));
    for (int sign = 0; sign < 2; ++sign) {
      ChessboardKernelVector kv;
      if (std::abs(a3) < kTiny) {
        kv.valid = false;
        kv.issue = "quadratic degenerates (a d vanishes)";
        out.push_back(std::move(kv));
        continue;
      }
      cd_t g1 = (-a13 + (branch == 0 ? disc : -disc)) / (2.0 * a3);
      cd_t g2 = std::sqrt((p.b * p.m * p.n + p.d * (p.m * p.n + p.a * p.b) * g1 + p.a * p.d * p.d * g1 * g1) /
                          (p.a * p.m * p.m));
      double sg = sign == 0 ? 1.0 : -1.0;
      cd_t den1 = p.m * p.n + p.a * p.d * g1;
      if (std::abs(den1) < kTiny || std::abs(p.a * p.c * g2) < kTiny) {
        kv.valid = false;
        kv.issue = "branch denominator vanishes";
        out.push_back(std::move(kv));
        continue;
      }
      Eigen::VectorXcd e(3), f(3);
      e << 1.0, sg * g2, g1;
      f << sg * p.m * p.m * g2 / den1, 1.0, -sg * (p.a * p.a + p.b * p.b + p.b * p.d * g1) / (p.a * p.c * g2);
      kv.e = normalized(e);
      kv.f = normalized(f);
      out.push_back(std::move(kv));
    }
  }
  return out;
}

namespace {

// One restart of the alternating minimization of <e f| M |e f> over unit
// vectors; M must be Hermitian PSD. Returns the achieved value.
double product_seesaw_restart(const Eigen::MatrixXcd& m, int dA, int dB, std::mt19937_64& rng,
                              Eigen::VectorXcd& e_out, Eigen::VectorXcd& f_out) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd f(dB);
  for (int j = 0; j < dB; ++j) f(j) = cd_t(gauss(rng), gauss(rng));
  f.normalize();
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dA);
  double value = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < 10000; ++sweep) {
    Eigen::MatrixXcd mf = Eigen::MatrixXcd::Zero(dA, dA);
    for (int a = 0; a < dA; ++a)
      for (int b = 0; b < dA; ++b)
        mf(a, b) = (f.adjoint() * m.block(a * dB, b * dB, dB, dB) * f).value();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ese(mf);
    e = ese.eigenvectors().col(0);
    Eigen::MatrixXcd me = Eigen::MatrixXcd::Zero(dB, dB);
    for (int a = 0; a < dA; ++a)
      for (int b = 0; b < dA; ++b) me += std::conj(e(a)) * e(b) * m.block(a * dB, b * dB, dB, dB);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esf(me);
    f = esf.eigenvectors().col(0);
    double next = esf.eigenvalues()(0);
    if (std::abs(next - value) < 1e-12) {
      value = next;
      break;
    }
    value = next;
  }
  e_out = canonical_phase(e);
  f_out = canonical_phase(f);
  return value;
}

}  // namespace

std::vector<ProductVectorHit> kernel_product_vectors(const DensityMatrix& rho,
                                                     const KernelSearchOptions& opts) {
  if (rho.family == StateFamily::chessboard && rho.chessboard.has_value()) {
    std::vector<ProductVectorHit> out;
    for (const auto& kv : chessboard_kernel_vectors(*rho.chessboard)) {
      if (!kv.valid) continue;
      Eigen::VectorXcd v = kron_vec(kv.e, kv.f);
      out.push_back({canonical_phase(kv.e), canonical_phase(kv.f), (rho.op.mat * v).norm()});
    }
    return out;
  }

  if (rho.op.parties() != 2)
    throw DomainError("bad_dims", "kernel product search needs a bipartite state");
  int dA = rho.op.dims[0], dB = rho.op.dims[1];
  Eigen::MatrixXcd kernel = hermitian_kernel(rho.op.mat, opts.kernel_tol);
  if (kernel.cols() == 0) return {};
  Eigen::MatrixXcd range_proj =
      Eigen::MatrixXcd::Identity(rho.op.mat.rows(), rho.op.mat.cols()) - kernel * kernel.adjoint();

  struct RestartResult {
    double value;
    Eigen::VectorXcd e, f;
  };
  std::vector<std::optional<RestartResult>> results(static_cast<std::size_t>(opts.restarts));
  parallel_for(opts.restarts, opts.exec, [&](std::int64_t r) {
    std::mt19937_64 rng = substream(opts.seed, static_cast<std::uint64_t>(r));
    Eigen::VectorXcd e, f;
    double v = product_seesaw_restart(range_proj, dA, dB, rng, e, f);
    results[static_cast<std::size_t>(r)] = RestartResult{v, std::move(e), std::move(f)};
  });

  std::vector<ProductVectorHit> out;
  for (const auto& res : results) {
    if (!res || res->value > opts.success_tol) continue;
    bool duplicate = false;
    for (const auto& hit : out) {
      cd_t overlap = (hit.e.adjoint() * res->e).value() * (hit.f.adjoint() * res->f).value();
      if (std::abs(overlap) > 1.0 - opts.dedup_tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.push_back({res->e, res->f, std::sqrt(std::max(res->value, 0.0))});
  }
  return out;
}

}  // namespace witnesskit

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

#include "witnesskit/operator.hpp"
#include "witnesskit/parallel.hpp"
#include "witnesskit/states.hpp"

namespace witnesskit {

enum class WitnessKind { npt, ghz, w1, w2, edge };

struct Witness {
  Operator op;
  WitnessKind kind = WitnessKind::npt;
  std::string provenance;
  double epsilon = 0.0;  // shift applied for edge witnesses, 0 otherwise
};

enum class Classification { entangled, separable_certified, inconclusive };

struct Verdict {
  double value = 0.0;
  Classification classification = Classification::inconclusive;
  double threshold_used = 0.0;
};

// Reference two-qubit witness: partial transpose of the projector onto
// (|00> - |11>)/sqrt(2), the most negative eigenvector of the partially
// transposed noisy-Bell family.
Eigen::MatrixXcd w0_matrix();

// Builds the witness from the most negative eigenvector phi of rho^{T_B}:
// W = |phi><phi|^{T_B}, so Tr(W rho) equals that eigenvalue. PPT input is
// rejected (no such witness exists). Among degenerate minimal eigenvectors
// the lexicographically largest one (after phase canonicalization) is chosen.
Witness npt_witness(const DensityMatrix& rho);

Witness ghz_witness();   // (3/4) 1 - |GHZ><GHZ|
Witness w_witness_1();   // (2/3) 1 - |W><W|
Witness w_witness_2();   // (1/2) 1 - |GHZ><GHZ|

struct SeesawOptions {
  int restarts = 500;
  int max_sweeps = 10000;
  double conv_tol = 1e-12;
  std::uint64_t seed = 20250818;
  Exec exec = Exec::parallel;
};

struct EpsilonResult {
  double value = 0.0;
  Eigen::VectorXcd e, f;  // achieving product vector
  bool negative_product_found = false;
  int failed_restarts = 0;
};

// inf over product vectors of <ef| wbar |ef> by alternating smallest-
// eigenvector sweeps with random restarts. The overload with a denominator
// minimizes the generalized Rayleigh quotient <ef|wbar|ef> / <ef|denom|ef>
// (denom must be positive definite on the relevant subspace; restarts where
// the generalized solve degenerates are skipped and counted).
EpsilonResult optimize_epsilon(const Operator& wbar, const SeesawOptions& opts = {});
EpsilonResult optimize_epsilon(const Operator& wbar, const Operator& denom,
                               const SeesawOptions& opts = {});

enum class EpsilonMode { given, optimize, optimize_primed };

struct EdgeWitnessOptions {
  EpsilonMode mode = EpsilonMode::optimize;
  double epsilon = 0.0;                 // used when mode == given
  std::optional<Operator> denominator;  // required for optimize_primed
  int pt_party = 1;
  SeesawOptions seesaw;
};

// Edge witness for a PPT entangled state delta: Wbar = P + Q^{T} from the
// kernel projectors of delta and delta^{T} (UPB states use Wbar = P alone,
// since there Q^{T} = P), then W = Wbar - epsilon * 1, or Wbar - epsilon * I
// with the supplied denominator in the primed mode.
Witness edge_witness(const DensityMatrix& delta, const EdgeWitnessOptions& opts = {});

// Largest witness value below which separability can still not be excluded,
// for noise radius d (p unknown): values >= tau certify separability.
double tau_threshold(double d);

// Same with the mixing weight p known.
double theta_threshold(double p, double d);

// Three-way verdict from a measured value alpha. Thresholds are specific to
// the noisy-Bell scenario, so any witness other than W0 is refused. The
// overload with a NoiseBallSpec uses theta(p, d); the d-only one uses tau(d).
Verdict classify(const Witness& w, double alpha, double d);
Verdict classify(const Witness& w, double alpha, const NoiseBallSpec& knowledge);

}  // namespace witnesskit

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "witnesskit/operator.hpp"
#include "witnesskit/parallel.hpp"

namespace witnesskit {

enum class BellKind { phi_plus, phi_minus, psi_plus, psi_minus };

enum class StateFamily { generic, bell, noisy_bell, ghz, w, upb, chessboard, horodecki };

// Parameters of the 3x3 chessboard family. All entries real and m, n, c
// nonzero, a^2 + b^2 nonzero; the two dependent amplitudes are s = ac/n and
// t = ad/m. The defaults avoid the symmetric point m = n, where the range
// acquires a real product vector and the state stops being an edge state.
struct ChessboardParams {
  double m = 1.0, n = 2.0, a = 1.0, b = 1.0, c = 1.0, d = 1.0;
};

struct DensityMatrix {
  Operator op;
  StateFamily family = StateFamily::generic;
  std::optional<ChessboardParams> chessboard;
};

// Validates hermiticity (1e-12), positivity (eigenvalues >= -1e-10) and unit
// trace (1e-12).
DensityMatrix make_density(Operator op, StateFamily family = StateFamily::generic);

Eigen::VectorXcd bell_ket(BellKind kind);
DensityMatrix bell(BellKind kind);

// p |psi+><psi+| + (1 - p) I/4 on two qubits, p in [0, 1].
DensityMatrix noisy_bell_state(double p);

// p |psi><psi| + (1 - p) sigma; psi and sigma must share dimensions.
DensityMatrix noisy_state(double p, const Eigen::VectorXcd& psi, const DensityMatrix& sigma);

// Noise model around the maximally mixed two-qubit state: admissible noise
// operators sigma satisfy ||sigma - I/4||_HS <= d with d <= 1/sqrt(12), the
// largest radius for which the whole ball stays positive.
struct NoiseBallSpec {
  double p = 1.0;
  double d = 0.0;
};

double noise_ball_radius_max();

// Draws sigma uniformly from the HS ball of radius spec.d around I/4 and
// returns p |psi+><psi+| + (1 - p) sigma.
DensityMatrix sample_ball_state(const NoiseBallSpec& spec, std::mt19937_64& rng);

// PPT test on the given party, tolerance on the most negative eigenvalue.
bool is_ppt(const DensityMatrix& rho, int party = 1, double ppt_tol = 1e-10);

Eigen::VectorXcd ghz_ket();
Eigen::VectorXcd w_ket();
DensityMatrix ghz_state();
DensityMatrix w_state();

// Tiles unextendible product basis on C3 x C3 (five mutually orthogonal
// product vectors with no product vector orthogonal to all of them) and the
// five extra product vectors completing a useful extension: the four sign
// partners plus |11>.
std::vector<Eigen::VectorXcd> upb_vectors();
std::vector<Eigen::VectorXcd> upb_extension_vectors();

// Bound entangled state (I - sum of UPB projectors) / 4.
DensityMatrix upb_state();

DensityMatrix chessboard_state(const ChessboardParams& params);

// 2x4 bound entangled family, b in (0, 1).
DensityMatrix horodecki_state(double b);

// Closed-form product vectors spanning the chessboard kernel. Some branches
// degenerate for special parameter values; those come back with valid = false
// and a short reason.
struct ChessboardKernelVector {
  Eigen::VectorXcd e, f;
  bool valid = true;
  std::string issue;
};

std::vector<ChessboardKernelVector> chessboard_kernel_vectors(const ChessboardParams& params);

struct ProductVectorHit {
  Eigen::VectorXcd e, f;
  double residual = 0.0;
};

struct KernelSearchOptions {
  int restarts = 200;
  std::uint64_t seed = 20250818;
  double success_tol = 1e-8;  // accept a restart as a kernel member below this
  double dedup_tol = 1e-6;    // overlap distance under which two hits merge
  double kernel_tol = 1e-10;
  Exec exec = Exec::parallel;
};

// Product vectors e (x) f lying in the kernel of rho. Chessboard states use
// the closed form above; anything else runs an alternating eigenvector search
// that minimizes the norm of the range-space projection.
std::vector<ProductVectorHit> kernel_product_vectors(const DensityMatrix& rho,
                                                     const KernelSearchOptions& opts = {});

}  // namespace witnesskit

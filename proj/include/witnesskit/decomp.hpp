#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "witnesskit/operator.hpp"

namespace witnesskit {

// One local von Neumann measurement setting: an orthonormal basis per party
// and a real coefficient for every joint outcome. The realized operator is
// sum_{k,l,..} c(k,l,..) |A_k><A_k| (x) |B_l><B_l| (x) ...
struct Setting {
  std::vector<Eigen::MatrixXcd> bases;  // one per party, columns = basis vectors
  Eigen::VectorXd coeffs;               // flat row-major over joint outcomes

  std::vector<int> outcome_dims() const;
  Operator realize() const;
  bool orthonormal(double tol = 1e-12) const;
};

struct LocalDecomposition {
  std::vector<Setting> settings;
  Operator target;

  Operator recompose() const;
};

struct ProductTerm {
  double coeff = 0.0;
  std::vector<Eigen::VectorXcd> vectors;  // one unit vector per party
  bool normalized = true;
};

struct ProductVectorDecomposition {
  std::vector<ProductTerm> terms;
  Operator target;

  Operator recompose() const;
};

struct TensorTerm {
  double coeff = 0.0;
  std::vector<Eigen::MatrixXcd> factors;  // one Hermitian factor per party
};

struct TensorDecomposition {
  std::vector<TensorTerm> terms;
  Operator target;

  Operator recompose() const;
};

// Expands a bipartite Hermitian operator over the Alice generator basis:
// term i has Alice factor G^A_i and Bob factor sum_j lambda_ij G^B_j.
// Exact recomposition; N_A^2 terms, some possibly zero.
TensorDecomposition operator_basis_decomposition(const Operator& w);

// Three settings (Schmidt-diagonal, x-type, y-type) realizing the partially
// transposed projector |psi><psi|^{T_B} of a two-qubit pure state. For a
// product state the x/y coefficient weights vanish and pruning leaves one
// setting.
LocalDecomposition two_qubit_three_settings(const Eigen::VectorXcd& psi);

// Five product projectors realizing |psi><psi|^{T_B} for a two-qubit state
// with two nonzero Schmidt coefficients: three from phased interpolations of
// the Schmidt vectors, two from the cross computational directions.
ProductVectorDecomposition onp_five_projectors(const Eigen::VectorXcd& psi);

// Number of distinct Alice measurement directions needed to measure the
// product projectors one by one (vectors sharing a basis, equal or
// orthogonal up to phase, share a setting).
int onp_alice_settings_count(const ProductVectorDecomposition& d, double tol = 1e-9);

// Local decomposition of |psi><psi| for a bipartite pure state of Schmidt
// rank l: one diagonal setting plus an x/y pair per round-robin pairing set
// for even l; for odd l the diagonal folds into the x settings. Setting
// count: 1 for l = 1, 2l - 1 for even l, 2l for odd l.
LocalDecomposition theorem1_ons(const Eigen::VectorXcd& psi, const std::vector<int>& dims);

// Partition of the index pairs of {0..l-1} into rounds: even l gives l - 1
// perfect matchings; odd l gives l sets of (l-1)/2 pairs where every index
// sits out exactly once.
std::vector<std::vector<std::pair<int, int>>> round_robin_pairing(int l);

// ceil(rank of the both-sides-traceless coefficient block / (N - 1)) with
// N = min local dimension; at least 1.
int settings_lower_bound(const Operator& target, double rank_tol = 1e-10);
int settings_lower_bound(const Eigen::VectorXcd& psi, const std::vector<int>& dims,
                         double rank_tol = 1e-10);

// Published three-qubit witness decompositions.
LocalDecomposition ghz_decomposition();  // 5 settings
LocalDecomposition w1_decomposition();   // 7 settings
LocalDecomposition w2_decomposition();   // 5 settings

enum class UpbVariant {
  kernel_only,  // the 5 UPB projectors, one setting each
  full,         // witness with identity completion, 6 settings
  onp           // 9 projectors in 5 settings, identity-like shift
};

// Measurement settings for the tiles-UPB witness family. kernel_only ignores
// epsilon; full targets sum(psi psi) - eps * 1; onp targets
// sum(psi psi) - eps' * I with I the sum of the nine product projectors.
LocalDecomposition upb_witness_settings(UpbVariant variant, double epsilon = 0.0);

// The identity-like operator I: sum of the projectors onto the five UPB
// vectors and their four sign partners (denominator of the primed epsilon).
Operator upb_identity_like();

// Conjugates one party's basis vectors, realizing the partial transpose of
// the original target with the same setting count.
LocalDecomposition partial_transpose_decomposition(const LocalDecomposition& d, int party);

double verify(const LocalDecomposition& d);
double verify(const ProductVectorDecomposition& d);
double verify(const TensorDecomposition& d);

// Settings that survive pruning (all coefficients < 1e-12 in magnitude drop)
// counted up to basis equality modulo per-vector phases and outcome
// relabeling.
int count_settings(const LocalDecomposition& d, double prune_tol = 1e-12,
                   double basis_tol = 1e-9);

}  // namespace witnesskit

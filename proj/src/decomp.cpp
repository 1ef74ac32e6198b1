#include "witnesskit/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "witnesskit/basis.hpp"
#include "witnesskit/errors.hpp"
#include "witnesskit/schmidt.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/witness.hpp"

namespace witnesskit {

namespace {

constexpr double kRoot2Inv = 0.7071067811865475244;

Eigen::MatrixXcd kron_mat(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Phase-fixes a column so its first component above tol is real positive.
Eigen::VectorXcd fix_phase(Eigen::VectorXcd v, double tol) {
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > tol) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  return v;
}

}  // namespace

std::vector<int> Setting::outcome_dims() const {
  std::vector<int> out;
  out.reserve(bases.size());
  for (const auto& b : bases) out.push_back(static_cast<int>(b.cols()));
  return out;
}

bool Setting::orthonormal(double tol) const {
  for (const auto& b : bases) {
    if (b.rows() != b.cols()) return false;
    Eigen::MatrixXcd g = b.adjoint() * b;
    g -= Eigen::MatrixXcd::Identity(b.cols(), b.cols());
    if (g.cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

Operator Setting::realize() const {
  if (bases.empty()) throw DomainError("bad_argument", "setting has no bases");
  std::vector<int> dims, odims;
  long total = 1;
  for (const auto& b : bases) {
    if (b.rows() < 1 || b.cols() < 1) throw DomainError("bad_argument", "empty basis in setting");
    dims.push_back(static_cast<int>(b.rows()));
    odims.push_back(static_cast<int>(b.cols()));
    total *= b.cols();
  }
  if (coeffs.size() != total)
    throw DomainError("bad_argument", "coefficient count does not match joint outcomes");

  Operator out = identity_op(dims);
  out.mat.setZero();
  std::vector<int> k(bases.size(), 0);
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int p = static_cast<int>(bases.size()) - 1; p >= 0; --p) {
      k[p] = static_cast<int>(rest % odims[p]);
      rest /= odims[p];
    }
    if (std::abs(coeffs(idx)) == 0.0) continue;
    Eigen::MatrixXcd m = projector(bases[0].col(k[0]));
    for (std::size_t p = 1; p < bases.size(); ++p) m = kron_mat(m, projector(bases[p].col(k[p])));
    out.mat += coeffs(idx) * m;
  }
  return out;
}

Operator LocalDecomposition::recompose() const {
  Operator out = identity_op(target.dims);
  out.mat.setZero();
  for (const auto& s : settings) out.mat += s.realize().mat;
  return out;
}

Operator ProductVectorDecomposition::recompose() const {
  Operator out = identity_op(target.dims);
  out.mat.setZero();
  for (const auto& t : terms) {
    Eigen::VectorXcd v = t.vectors.at(0);
    for (std::size_t p = 1; p < t.vectors.size(); ++p) v = kron_vec(v, t.vectors[p]);
    out.mat += t.coeff * projector(v);
  }
  return out;
}

Operator TensorDecomposition::recompose() const {
  Operator out = identity_op(target.dims);
  out.mat.setZero();
  for (const auto& t : terms) {
    Eigen::MatrixXcd m = t.factors.at(0);
    for (std::size_t p = 1; p < t.factors.size(); ++p) m = kron_mat(m, t.factors[p]);
    out.mat += t.coeff * m;
  }
  return out;
}

TensorDecomposition operator_basis_decomposition(const Operator& w) {
  if (w.parties() != 2)
    throw DomainError("bad_dims", "operator basis decomposition needs a bipartite operator");
  CoefficientMatrix cm = expand(w);
  GeneratorBasis ga = generator_basis(w.dims[0]);
  GeneratorBasis gb = generator_basis(w.dims[1]);
  int nb = w.dims[1] * w.dims[1];

  TensorDecomposition out;
  out.target = w;
  for (int i = 0; i < w.dims[0] * w.dims[0]; ++i) {
    Eigen::MatrixXcd bob = Eigen::MatrixXcd::Zero(w.dims[1], w.dims[1]);
    for (int j = 0; j < nb; ++j)
      if (cm.lambda(i, j) != 0.0) bob += cm.lambda(i, j) * gb.ops[static_cast<std::size_t>(j)];
    out.terms.push_back({1.0, {ga.ops[static_cast<std::size_t>(i)], std::move(bob)}});
  }
  return out;
}

namespace {

Eigen::VectorXd flatten(const Eigen::MatrixXd& grid) {
  Eigen::VectorXd out(grid.rows() * grid.cols());
  for (int i = 0; i < grid.rows(); ++i)
    for (int j = 0; j < grid.cols(); ++j) out(i * grid.cols() + j) = grid(i, j);
  return out;
}

// x- or y-type setting for one pairing round: paired Schmidt vectors are
// replaced by their (anti)symmetric combinations on both sides, with weight
// +s_i s_j (x) or -s_i s_j (y) on the two matched diagonal outcomes.
// fold_index >= 0 additionally puts that Schmidt weight squared on its own
// diagonal outcome (used by odd ranks, which have no separate diagonal
// setting).
Setting pair_setting(const SchmidtForm& sf, const std::vector<std::pair<int, int>>& round,
                     bool ytype, int fold_index) {
  Eigen::MatrixXcd a = sf.a_vectors, b = sf.b_vectors;
  Eigen::MatrixXd grid = Eigen::MatrixXd::Zero(a.cols(), b.cols());
  cd_t ph = ytype ? cd_t(0.0, 1.0) : cd_t(1.0, 0.0);
  for (const auto& [i, j] : round) {
    a.col(i) = kRoot2Inv * (sf.a_vectors.col(i) + ph * sf.a_vectors.col(j));
    a.col(j) = kRoot2Inv * (sf.a_vectors.col(i) - ph * sf.a_vectors.col(j));
    b.col(i) = kRoot2Inv * (sf.b_vectors.col(i) + ph * sf.b_vectors.col(j));
    b.col(j) = kRoot2Inv * (sf.b_vectors.col(i) - ph * sf.b_vectors.col(j));
    double w = sf.coeffs(i) * sf.coeffs(j);
    grid(i, i) = ytype ? -w : w;
    grid(j, j) = ytype ? -w : w;
  }
  if (fold_index >= 0) grid(fold_index, fold_index) += sf.coeffs(fold_index) * sf.coeffs(fold_index);
  Setting s;
  s.bases = {std::move(a), std::move(b)};
  s.coeffs = flatten(grid);
  return s;
}

Setting diagonal_setting(const SchmidtForm& sf) {
  Eigen::MatrixXd grid = Eigen::MatrixXd::Zero(sf.a_vectors.cols(), sf.b_vectors.cols());
  for (int i = 0; i < sf.coeffs.size(); ++i) grid(i, i) = sf.coeffs(i) * sf.coeffs(i);
  Setting s;
  s.bases = {sf.a_vectors, sf.b_vectors};
  s.coeffs = flatten(grid);
  return s;
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> round_robin_pairing(int l) {
  if (l < 2) throw DomainError("bad_argument", "round robin pairing needs at least two indices");
  int m = l % 2 == 0 ? l : l + 1;  // odd l pairs against a bye slot
  std::vector<std::vector<std::pair<int, int>>> rounds;
  for (int r = 0; r < m - 1; ++r) {
    std::vector<std::pair<int, int>> round;
    auto add = [&](int x, int y) {
      if (x < l && y < l) round.emplace_back(std::min(x, y), std::max(x, y));
    };
    add(m - 1, r);
    for (int k = 1; k <= m / 2 - 1; ++k) add((r + k) % (m - 1), (r - k + m - 1) % (m - 1));
    std::sort(round.begin(), round.end());
    rounds.push_back(std::move(round));
  }
  std::sort(rounds.begin(), rounds.end());
  return rounds;
}

LocalDecomposition theorem1_ons(const Eigen::VectorXcd& psi, const std::vector<int>& dims) {
  SchmidtForm sf = schmidt(psi, dims);
  int l = sf.rank;
  LocalDecomposition d;
  d.target = make_operator(dims, projector(psi));
  if (l == 1) {
    d.settings.push_back(diagonal_setting(sf));
    return d;
  }
  auto rounds = round_robin_pairing(l);
  if (l % 2 == 0) {
    d.settings.push_back(diagonal_setting(sf));
    for (const auto& round : rounds) {
      d.settings.push_back(pair_setting(sf, round, false, -1));
      d.settings.push_back(pair_setting(sf, round, true, -1));
    }
  } else {
    for (const auto& round : rounds) {
      std::vector<bool> used(static_cast<std::size_t>(l), false);
      for (const auto& [i, j] : round) used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = true;
      int fold = 0;
      while (used[static_cast<std::size_t>(fold)]) ++fold;
      d.settings.push_back(pair_setting(sf, round, false, fold));
      d.settings.push_back(pair_setting(sf, round, true, -1));
    }
  }
  return d;
}

LocalDecomposition two_qubit_three_settings(const Eigen::VectorXcd& psi) {
  if (psi.size() != 4) throw DomainError("bad_dims", "expected a two-qubit state vector");
  SchmidtForm sf = schmidt(psi, {2, 2});
  LocalDecomposition d;
  d.target = make_operator({2, 2}, projector(psi));
  std::vector<std::pair<int, int>> round{{0, 1}};
  d.settings.push_back(diagonal_setting(sf));
  d.settings.push_back(pair_setting(sf, round, false, -1));
  d.settings.push_back(pair_setting(sf, round, true, -1));
  return partial_transpose_decomposition(d, 1);
}

ProductVectorDecomposition onp_five_projectors(const Eigen::VectorXcd& psi) {
  if (psi.size() != 4) throw DomainError("bad_dims", "expected a two-qubit state vector");
  SchmidtForm sf = schmidt(psi, {2, 2});
  if (sf.rank < 2)
    throw DomainError("bad_argument", "construction needs two nonzero Schmidt coefficients");
  double alpha = sf.coeffs(0), beta = sf.coeffs(1);

  Eigen::VectorXcd a1 = sf.a_vectors.col(0), a2 = sf.a_vectors.col(1);
  // The target carries the Bob-side transpose, so Bob vectors are conjugated.
  Eigen::VectorXcd b1 = sf.b_vectors.col(0).conjugate(), b2 = sf.b_vectors.col(1).conjugate();

  double ct = std::sqrt(alpha / (alpha + beta));
  double st = std::sqrt(beta / (alpha + beta));
  cd_t u = std::polar(1.0, std::numbers::pi / 3.0);
  auto mix = [&](cd_t p1, cd_t p2, const Eigen::VectorXcd& v1, const Eigen::VectorXcd& v2) {
    return Eigen::VectorXcd(p1 * ct * v1 + p2 * st * v2);
  };
  Eigen::VectorXcd A1 = mix(u, std::conj(u), a1, a2), B1 = mix(u, std::conj(u), b1, b2);
  Eigen::VectorXcd A2 = mix(std::conj(u), u, a1, a2), B2 = mix(std::conj(u), u, b1, b2);
  Eigen::VectorXcd A3 = A1 + A2, B3 = B1 + B2;
  double na = A3.norm(), nb = B3.norm();  // 1 up to roundoff; folded into the weight
  double c = (alpha + beta) * (alpha + beta) / 3.0;

  ProductVectorDecomposition d;
  d.target = partial_transpose(make_operator({2, 2}, projector(psi)), 1);
  d.terms.push_back({c, {A1, B1}});
  d.terms.push_back({c, {A2, B2}});
  d.terms.push_back({c * na * na * nb * nb, {A3 / na, B3 / nb}});
  d.terms.push_back({-alpha * beta, {a1, b2}});
  d.terms.push_back({-alpha * beta, {a2, b1}});
  return d;
}

int onp_alice_settings_count(const ProductVectorDecomposition& d, double tol) {
  int n = static_cast<int>(d.terms.size());
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  // Two projectors share an Alice direction when their Alice vectors agree up
  // to phase or are orthogonal (then they are two outcomes of one basis).
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double ov = std::abs(d.terms[static_cast<std::size_t>(i)].vectors[0].dot(
          d.terms[static_cast<std::size_t>(j)].vectors[0]));
      if (ov > 1.0 - tol || ov < tol) parent[static_cast<std::size_t>(find(i))] = find(j);
    }
  int count = 0;
  for (int i = 0; i < n; ++i)
    if (find(i) == i) ++count;
  return count;
}

int settings_lower_bound(const Operator& target, double rank_tol) {
  if (target.parties() != 2)
    throw DomainError("bad_dims", "settings lower bound is defined for bipartite operators");
  int n = std::min(target.dims[0], target.dims[1]);
  if (n == 1) return 1;
  CoefficientMatrix cm = expand(target);
  int r = matrix_rank(cm.reduced().cast<cd_t>(), rank_tol);
  return std::max(1, (r + n - 2) / (n - 1));
}

int settings_lower_bound(const Eigen::VectorXcd& psi, const std::vector<int>& dims,
                         double rank_tol) {
  return settings_lower_bound(make_operator(dims, projector(psi)), rank_tol);
}

namespace {

// Single-qubit measurement bases used by the published three-qubit witness
// decompositions.
Eigen::MatrixXcd qubit_basis(char which) {
  Eigen::MatrixXcd b(2, 2);
  switch (which) {
    case 'z': b << 1, 0, 0, 1; break;
    case 'x': b << kRoot2Inv, kRoot2Inv, kRoot2Inv, -kRoot2Inv; break;
    default:
      b(0, 0) = kRoot2Inv;
      b(0, 1) = kRoot2Inv;
      b(1, 0) = cd_t(0.0, kRoot2Inv);
      b(1, 1) = cd_t(0.0, -kRoot2Inv);
  }
  return b;
}

template <typename F>
Setting three_qubit_setting(const char* axes, F coeff) {
  Setting s;
  s.bases = {qubit_basis(axes[0]), qubit_basis(axes[1]), qubit_basis(axes[2])};
  s.coeffs = Eigen::VectorXd(8);
  for (int k = 0; k < 8; ++k) s.coeffs(k) = coeff((k >> 2) & 1, (k >> 1) & 1, k & 1);
  return s;
}

double parity(int k0, int k1, int k2) { return (k0 + k1 + k2) % 2 == 0 ? 1.0 : -1.0; }

void append_ghz_pauli_settings(std::vector<Setting>& settings) {
  settings.push_back(three_qubit_setting("xxx", [](int a, int b, int c) { return -parity(a, b, c) / 8.0; }));
  for (const char* axes : {"xyy", "yxy", "yyx"})
    settings.push_back(three_qubit_setting(axes, [](int a, int b, int c) { return parity(a, b, c) / 8.0; }));
}

}  // namespace

LocalDecomposition ghz_decomposition() {
  LocalDecomposition d;
  d.target = ghz_witness().op;
  d.settings.push_back(three_qubit_setting("zzz", [](int a, int b, int c) {
    double za = 1 - 2 * a, zb = 1 - 2 * b, zc = 1 - 2 * c;
    return (5.0 - zb * zc - za * zc - za * zb) / 8.0;
  }));
  append_ghz_pauli_settings(d.settings);
  return d;
}

LocalDecomposition w2_decomposition() {
  LocalDecomposition d;
  d.target = w_witness_2().op;
  d.settings.push_back(three_qubit_setting("zzz", [](int a, int b, int c) {
    double za = 1 - 2 * a, zb = 1 - 2 * b, zc = 1 - 2 * c;
    return (3.0 - zb * zc - za * zc - za * zb) / 8.0;
  }));
  append_ghz_pauli_settings(d.settings);
  return d;
}

LocalDecomposition w1_decomposition() {
  LocalDecomposition d;
  d.target = w_witness_1().op;
  d.settings.push_back(three_qubit_setting("zzz", [](int a, int b, int c) {
    double za = 1 - 2 * a, zb = 1 - 2 * b, zc = 1 - 2 * c;
    return (13.0 - za - zb - zc + za * zb + za * zc + zb * zc + 3.0 * za * zb * zc) / 24.0;
  }));
  // Each x/y pair acts on two qubits while the remaining one is read in z,
  // weighted onto its |0> outcome.
  auto paired = [](int pos) {
    return [pos](int a, int b, int c) {
      int k[3] = {a, b, c};
      double zpos = 1 - 2 * k[pos];
      int other = k[(pos + 1) % 3] + k[(pos + 2) % 3];
      return -(1.0 + zpos) * (other % 2 == 0 ? 1.0 : -1.0) / 12.0;
    };
  };
  d.settings.push_back(three_qubit_setting("zxx", paired(0)));
  d.settings.push_back(three_qubit_setting("zyy", paired(0)));
  d.settings.push_back(three_qubit_setting("xzx", paired(1)));
  d.settings.push_back(three_qubit_setting("yzy", paired(1)));
  d.settings.push_back(three_qubit_setting("xxz", paired(2)));
  d.settings.push_back(three_qubit_setting("yyz", paired(2)));
  return d;
}

namespace {

// Orthonormal 3x3 bases hosting the tiles UPB vectors and their partners.
Eigen::MatrixXcd tiles_basis(int which) {
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(3, 3);
  const double r = kRoot2Inv;
  switch (which) {
    case 1: b.setIdentity(); break;
    case 2: b << r, 0, r, -r, 0, r, 0, 1, 0; break;
    case 3: b << 0, 1, 0, r, 0, r, -r, 0, r; break;
    default:
      b << r, 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(6.0),
          -r, 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(6.0),
          0, 1.0 / std::sqrt(3.0), -2.0 / std::sqrt(6.0);
  }
  return b;
}

Setting tiles_setting(int alice, int bob, std::initializer_list<std::pair<std::pair<int, int>, double>> weights) {
  Setting s;
  s.bases = {tiles_basis(alice), tiles_basis(bob)};
  s.coeffs = Eigen::VectorXd::Zero(9);
  for (const auto& [outcome, w] : weights) s.coeffs(outcome.first * 3 + outcome.second) = w;
  return s;
}

}  // namespace

Operator upb_identity_like() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(9, 9);
  for (const auto& v : upb_vectors()) m += projector(v);
  auto ext = upb_extension_vectors();
  for (std::size_t i = 0; i + 1 < ext.size(); ++i) m += projector(ext[i]);  // partners only, not |11>
  return make_operator({3, 3}, m);
}

LocalDecomposition upb_witness_settings(UpbVariant variant, double epsilon) {
  Eigen::MatrixXcd wbar = Eigen::MatrixXcd::Zero(9, 9);
  for (const auto& v : upb_vectors()) wbar += projector(v);

  LocalDecomposition d;
  double e = epsilon;
  switch (variant) {
    case UpbVariant::kernel_only:
      d.target = make_operator({3, 3}, wbar);
      d.settings = {
          tiles_setting(1, 2, {{{0, 0}, 1.0}}),
          tiles_setting(2, 1, {{{0, 2}, 1.0}}),
          tiles_setting(1, 3, {{{2, 0}, 1.0}}),
          tiles_setting(3, 1, {{{0, 0}, 1.0}}),
          tiles_setting(4, 4, {{{1, 1}, 1.0}}),
      };
      break;
    case UpbVariant::full:
      d.target = make_operator({3, 3}, wbar - e * Eigen::MatrixXcd::Identity(9, 9));
      // The four sign partners and |11> complete the four rank-one tiles to an
      // orthonormal basis of the full space, so the identity shift lands on
      // nine outcomes inside six settings.
      d.settings = {
          tiles_setting(1, 2, {{{0, 0}, 1.0 - e}, {{0, 2}, -e}}),
          tiles_setting(2, 1, {{{0, 2}, 1.0 - e}, {{2, 2}, -e}}),
          tiles_setting(1, 3, {{{2, 0}, 1.0 - e}, {{2, 2}, -e}}),
          tiles_setting(3, 1, {{{0, 0}, 1.0 - e}, {{2, 0}, -e}}),
          tiles_setting(4, 4, {{{1, 1}, 1.0}}),
          tiles_setting(1, 1, {{{1, 1}, -e}}),
      };
      break;
    case UpbVariant::onp:
      d.target = make_operator({3, 3}, wbar - e * upb_identity_like().mat);
      d.settings = {
          tiles_setting(1, 2, {{{0, 0}, 1.0 - e}, {{0, 2}, -e}}),
          tiles_setting(2, 1, {{{0, 2}, 1.0 - e}, {{2, 2}, -e}}),
          tiles_setting(1, 3, {{{2, 0}, 1.0 - e}, {{2, 2}, -e}}),
          tiles_setting(3, 1, {{{0, 0}, 1.0 - e}, {{2, 0}, -e}}),
          tiles_setting(4, 4, {{{1, 1}, 1.0 - e}}),
      };
      break;
  }
  return d;
}

LocalDecomposition partial_transpose_decomposition(const LocalDecomposition& d, int party) {
  if (party < 0 || party >= d.target.parties())
    throw DomainError("bad_party", "party index out of range");
  LocalDecomposition out = d;
  out.target = partial_transpose(d.target, party);
  for (auto& s : out.settings) {
    if (static_cast<int>(s.bases.size()) != d.target.parties())
      throw DomainError("bad_dims", "setting party count does not match target");
    s.bases[static_cast<std::size_t>(party)] = s.bases[static_cast<std::size_t>(party)].conjugate();
  }
  return out;
}

double verify(const LocalDecomposition& d) { return hs_norm(d.recompose().mat - d.target.mat); }

double verify(const ProductVectorDecomposition& d) {
  return hs_norm(d.recompose().mat - d.target.mat);
}

double verify(const TensorDecomposition& d) { return hs_norm(d.recompose().mat - d.target.mat); }

namespace {

// Canonical column list of a basis for comparison: phase-fixed columns.
std::vector<Eigen::VectorXcd> basis_columns(const Eigen::MatrixXcd& b, double tol) {
  std::vector<Eigen::VectorXcd> cols;
  cols.reserve(static_cast<std::size_t>(b.cols()));
  for (int j = 0; j < b.cols(); ++j) cols.push_back(fix_phase(b.col(j), tol));
  return cols;
}

// Bases are the same device setting when their columns match as unordered
// sets, each up to a global phase.
bool same_basis(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y, double tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  auto cx = basis_columns(x, tol), cy = basis_columns(y, tol);
  std::vector<bool> used(cy.size(), false);
  for (const auto& cxi : cx) {
    bool matched = false;
    for (std::size_t j = 0; j < cy.size(); ++j) {
      if (used[j]) continue;
      if ((cxi - cy[j]).cwiseAbs().maxCoeff() <= tol) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace

int count_settings(const LocalDecomposition& d, double prune_tol, double basis_tol) {
  std::vector<const Setting*> kept;
  for (const auto& s : d.settings) {
    if (s.coeffs.size() == 0 || s.coeffs.cwiseAbs().maxCoeff() < prune_tol) continue;
    kept.push_back(&s);
  }
  int count = 0;
  std::vector<bool> merged(kept.size(), false);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (merged[i]) continue;
    ++count;
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      if (merged[j] || kept[i]->bases.size() != kept[j]->bases.size()) continue;
      bool same = true;
      for (std::size_t p = 0; p < kept[i]->bases.size() && same; ++p)
        same = same_basis(kept[i]->bases[p], kept[j]->bases[p], basis_tol);
      if (same) merged[j] = true;
    }
  }
  return count;
}

}  // namespace witnesskit

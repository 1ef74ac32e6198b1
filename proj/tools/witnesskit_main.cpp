#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "witnesskit/decomp.hpp"
#include "witnesskit/errors.hpp"
#include "witnesskit/json_io.hpp"
#include "witnesskit/measure.hpp"
#include "witnesskit/montecarlo.hpp"
#include "witnesskit/rng.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/version.hpp"
#include "witnesskit/witness.hpp"

namespace {

using nlohmann::json;
using namespace witnesskit;

struct Common {
  std::uint64_t seed = 20250818;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "master RNG seed");
  sub->add_option("--out", c.out, "write the payload here plus <out>.manifest.json");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
}

std::string iso_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

struct Emitter {
  std::string command;
  std::vector<std::string> argv;

  void emit(const Common& c, const std::string& payload) const {
    if (c.out.empty()) {
      std::cout << payload;
      if (payload.empty() || payload.back() != '\n') std::cout << '\n';
      return;
    }
    {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) throw DomainError("bad_argument", "cannot open output file " + c.out);
      f << payload;
    }
    json manifest;
    manifest["command"] = command;
    manifest["argv"] = argv;
    manifest["seed"] = c.seed;
    manifest["version"] = version();
    manifest["git_revision"] = git_revision();
    manifest["timestamp"] = iso_timestamp();
    manifest["outputs"] = json::array({json{{"path", c.out}, {"digest_fnv1a64", fnv1a64_hex(payload)}}});
    std::ofstream mf(c.out + ".manifest.json", std::ios::binary);
    mf << manifest.dump(2) << "\n";
  }
};

struct StateSpec {
  std::string family;
  double p = 1.0;
  double d = 0.0;
  double b = 0.5;
  std::string params;  // chessboard amplitudes m,n,a,b,c,d
};

void add_state_options(CLI::App* sub, StateSpec& s, const char* flag_name) {
  sub->add_option(flag_name, s.family, "state family: noisy-bell, ghz, w, upb, chessboard, horodecki")
      ->required();
  sub->add_option("--p", s.p, "mixing weight of the pure state");
  sub->add_option("--d", s.d, "noise ball radius");
  sub->add_option("--b", s.b, "parameter of the 2x4 bound entangled family");
  sub->add_option("--params", s.params, "chessboard amplitudes m,n,a,b,c,d");
}

ChessboardParams parse_chessboard(const std::string& csv) {
  std::vector<double> v;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      v.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw DomainError("bad_argument", "chessboard params must be numeric");
    }
  }
  if (v.size() != 6)
    throw DomainError("bad_argument", "chessboard params need six values m,n,a,b,c,d");
  return ChessboardParams{v[0], v[1], v[2], v[3], v[4], v[5]};
}

DensityMatrix build_state(const StateSpec& s, std::uint64_t seed) {
  if (s.family == "noisy-bell") {
    if (s.d == 0.0) return noisy_bell_state(s.p);
    std::mt19937_64 rng = substream(seed, 0);
    return sample_ball_state(NoiseBallSpec{s.p, s.d}, rng);
  }
  if (s.family == "ghz") return ghz_state();
  if (s.family == "w") return w_state();
  if (s.family == "upb") return upb_state();
  if (s.family == "chessboard") {
    if (s.params.empty()) return chessboard_state(ChessboardParams{});
    return chessboard_state(parse_chessboard(s.params));
  }
  if (s.family == "horodecki") return horodecki_state(s.b);
  throw DomainError("bad_argument", "unknown state family " + s.family);
}

std::string classification_name(Classification c) {
  switch (c) {
    case Classification::entangled: return "entangled";
    case Classification::separable_certified: return "certified-separable";
    default: return "inconclusive";
  }
}

std::string witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::npt: return "npt";
    case WitnessKind::ghz: return "ghz";
    case WitnessKind::w1: return "w1";
    case WitnessKind::w2: return "w2";
    default: return "edge";
  }
}

std::string matrix_csv(const Eigen::MatrixXcd& m) {
  std::string out = "i,j,re,im\n";
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out += std::to_string(i) + "," + std::to_string(j) + "," + csv_double(m(i, j).real()) + "," +
             csv_double(m(i, j).imag()) + "\n";
  return out;
}

// ---- state make ----------------------------------------------------------

std::string run_state_make(const StateSpec& spec, const Common& c) {
  DensityMatrix rho = build_state(spec, c.seed);
  if (c.format == "csv") return matrix_csv(rho.op.mat);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.op.mat, Eigen::EigenvaluesOnly);
  int rank = matrix_rank(rho.op.mat);
  json out;
  out["family"] = spec.family;
  out["dims"] = rho.op.dims;
  out["matrix"] = matrix_to_json(rho.op.mat);
  json eigs = json::array();
  for (int i = 0; i < es.eigenvalues().size(); ++i) eigs.push_back(es.eigenvalues()(i));
  out["properties"] = {{"trace", rho.op.mat.trace().real()},
                       {"ppt", is_ppt(rho)},
                       {"min_eigenvalue", es.eigenvalues().minCoeff()},
                       {"eigenvalues", std::move(eigs)},
                       {"rank", rank},
                       {"kernel_dim", rho.op.total_dim() - rank}};
  return out.dump(2);
}

// ---- witness build --------------------------------------------------------

std::string run_witness_build(const StateSpec& spec, bool edge, const std::string& epsilon,
                              const Common& c) {
  if (spec.family == "ghz" || spec.family == "w") {
    Witness w = spec.family == "ghz" ? ghz_witness() : w_witness_1();
    json out;
    out["kind"] = witness_kind_name(w.kind);
    out["provenance"] = w.provenance;
    out["epsilon"] = w.epsilon;
    out["dims"] = w.op.dims;
    out["matrix"] = matrix_to_json(w.op.mat);
    return c.format == "csv" ? matrix_csv(w.op.mat) : out.dump(2);
  }

  DensityMatrix rho = build_state(spec, c.seed);
  Witness w;
  if (edge) {
    EdgeWitnessOptions eo;
    eo.seesaw.seed = c.seed;
    if (epsilon == "optimize" || epsilon.empty()) {
      eo.mode = EpsilonMode::optimize;
    } else if (epsilon == "primed") {
      eo.mode = EpsilonMode::optimize_primed;
      if (spec.family != "upb")
        throw DomainError("mode_unsupported", "primed epsilon is defined for the upb family");
      eo.denominator = upb_identity_like();
    } else {
      eo.mode = EpsilonMode::given;
      try {
        eo.epsilon = std::stod(epsilon);
      } catch (const std::exception&) {
        throw DomainError("bad_argument", "--epsilon takes a number, 'optimize' or 'primed'");
      }
    }
    w = edge_witness(rho, eo);
  } else {
    w = npt_witness(rho);
  }
  if (c.format == "csv") return matrix_csv(w.op.mat);
  json out;
  out["kind"] = witness_kind_name(w.kind);
  out["provenance"] = w.provenance;
  out["epsilon"] = w.epsilon;
  out["dims"] = w.op.dims;
  out["matrix"] = matrix_to_json(w.op.mat);
  out["value"] = hs_inner(w.op.mat, rho.op.mat).real();
  return out.dump(2);
}

// ---- witness thresholds ---------------------------------------------------

std::string run_thresholds(double d, std::optional<double> p, const Common& c) {
  double tau = tau_threshold(d);
  if (c.format == "csv") {
    std::string out = p ? "d,tau,p,theta\n" : "d,tau\n";
    out += csv_double(d) + "," + csv_double(tau);
    if (p) out += "," + csv_double(*p) + "," + csv_double(theta_threshold(*p, d));
    return out + "\n";
  }
  json out;
  out["d"] = d;
  out["tau"] = tau;
  if (p) {
    out["p"] = *p;
    out["theta"] = theta_threshold(*p, d);
  }
  return out.dump(2);
}

// ---- decompose ------------------------------------------------------------

std::string local_decomposition_csv(const LocalDecomposition& d) {
  std::string out = "setting,outcome,coeff\n";
  for (std::size_t s = 0; s < d.settings.size(); ++s)
    for (long i = 0; i < d.settings[s].coeffs.size(); ++i)
      out += std::to_string(s) + "," + std::to_string(i) + "," +
             csv_double(d.settings[s].coeffs(i)) + "\n";
  return out;
}

json local_decomposition_report(const LocalDecomposition& d, bool with_lower_bound) {
  json out;
  out["decomposition"] = decomposition_to_json(d);
  out["settings_count"] = count_settings(d);
  out["residual"] = verify(d);
  if (with_lower_bound)
    out["lower_bound"] = settings_lower_bound(d.target);
  else
    out["lower_bound"] = nullptr;
  return out;
}

std::string run_decompose(const std::string& target, const std::string& mode, double epsilon,
                          bool epsilon_given, double b, const Common& c) {
  json out;
  out["target"] = target;
  out["mode"] = mode;

  auto unsupported = [&]() {
    throw DomainError("mode_unsupported", "mode " + mode + " is not available for target " + target);
  };

  if (target == "w0") {
    Eigen::VectorXcd psi = bell_ket(BellKind::phi_minus);
    if (mode == "ons" || mode == "published") {
      LocalDecomposition d = two_qubit_three_settings(psi);
      if (c.format == "csv") return local_decomposition_csv(d);
      out.update(local_decomposition_report(d, true));
    } else if (mode == "onp") {
      ProductVectorDecomposition d = onp_five_projectors(psi);
      json terms = json::array();
      for (const auto& t : d.terms) {
        json jt;
        jt["coeff"] = t.coeff;
        jt["vectors"] = json::array({vector_to_json(t.vectors[0]), vector_to_json(t.vectors[1])});
        terms.push_back(std::move(jt));
      }
      out["decomposition"] = {{"target_dims", d.target.dims}, {"terms", std::move(terms)}};
      out["projector_count"] = d.terms.size();
      out["alice_settings"] = onp_alice_settings_count(d);
      out["residual"] = verify(d);
      out["lower_bound"] = settings_lower_bound(d.target);
      if (c.format == "csv") {
        std::string s = "term,coeff\n";
        for (std::size_t i = 0; i < d.terms.size(); ++i)
          s += std::to_string(i) + "," + csv_double(d.terms[i].coeff) + "\n";
        return s;
      }
    } else if (mode == "pauli") {
      TensorDecomposition d = operator_basis_decomposition(
          make_operator({2, 2}, w0_matrix()));
      out["decomposition"] = tensor_decomposition_to_json(d);
      int nonzero = 0;
      for (const auto& t : d.terms)
        if (hs_norm(t.factors[1]) > 1e-12) ++nonzero;
      out["terms_count"] = nonzero;
      out["residual"] = verify(d);
      out["lower_bound"] = nullptr;
      if (c.format == "csv") {
        std::string s = "term,coeff,bob_norm\n";
        for (std::size_t i = 0; i < d.terms.size(); ++i)
          s += std::to_string(i) + "," + csv_double(d.terms[i].coeff) + "," +
               csv_double(hs_norm(d.terms[i].factors[1])) + "\n";
        return s;
      }
    } else {
      unsupported();
    }
  } else if (target == "ghz" || target == "w1" || target == "w2") {
    if (mode != "published" && mode != "ons") unsupported();
    LocalDecomposition d = target == "ghz"  ? ghz_decomposition()
                           : target == "w1" ? w1_decomposition()
                                            : w2_decomposition();
    if (c.format == "csv") return local_decomposition_csv(d);
    out.update(local_decomposition_report(d, false));
  } else if (target == "upb") {
    UpbVariant variant;
    bool needs_epsilon = true;
    if (mode == "ons") {
      variant = UpbVariant::kernel_only;
      needs_epsilon = false;
    } else if (mode == "published") {
      variant = UpbVariant::full;
    } else if (mode == "onp") {
      variant = UpbVariant::onp;
    } else {
      unsupported();
      return {};
    }
    double eps = 0.0;
    if (needs_epsilon) {
      if (epsilon_given) {
        eps = epsilon;
      } else {
        Eigen::MatrixXcd wbar = Eigen::MatrixXcd::Zero(9, 9);
        for (const auto& v : upb_vectors()) wbar += projector(v);
        Operator wb = make_operator({3, 3}, wbar);
        SeesawOptions so;
        so.seed = c.seed;
        eps = variant == UpbVariant::full
                  ? optimize_epsilon(wb, so).value
                  : optimize_epsilon(wb, upb_identity_like(), so).value;
      }
      out["epsilon"] = eps;
    }
    LocalDecomposition d = upb_witness_settings(variant, eps);
    if (c.format == "csv") return local_decomposition_csv(d);
    out.update(local_decomposition_report(d, true));
  } else if (target == "horodecki") {
    if (mode != "pauli" && mode != "published") unsupported();
    EdgeWitnessOptions eo;
    eo.seesaw.seed = c.seed;
    if (epsilon_given) {
      eo.mode = EpsilonMode::given;
      eo.epsilon = epsilon;
    }
    Witness w = edge_witness(horodecki_state(b), eo);
    TensorDecomposition d = operator_basis_decomposition(w.op);
    out["epsilon"] = w.epsilon;
    out["decomposition"] = tensor_decomposition_to_json(d);
    int nonzero = 0;
    for (const auto& t : d.terms)
      if (hs_norm(t.factors[1]) > 1e-12) ++nonzero;
    out["terms_count"] = nonzero;
    out["residual"] = verify(d);
    out["lower_bound"] = nullptr;
    if (c.format == "csv") {
      std::string s = "term,coeff,bob_norm\n";
      for (std::size_t i = 0; i < d.terms.size(); ++i)
        s += std::to_string(i) + "," + csv_double(d.terms[i].coeff) + "," +
             csv_double(hs_norm(d.terms[i].factors[1])) + "\n";
      return s;
    }
  } else {
    throw DomainError("bad_argument", "unknown decompose target " + target);
  }
  return out.dump(2);
}

// ---- montecarlo -----------------------------------------------------------

std::string curve_csv(const ErrorCurve& curve) {
  std::string out = "d,alpha,e_minus,E_minus,n_in_bin\n";
  for (const auto& bin : curve.bins) {
    out += csv_double(curve.d) + "," + csv_double(bin.alpha) + ",";
    if (bin.e_minus) out += csv_double(*bin.e_minus);
    out += "," + csv_double(bin.e_bound) + "," + std::to_string(bin.n) + "\n";
  }
  return out;
}

std::string run_curve(double d, long samples, const Common& c) {
  ErrorCurveOptions opts;
  opts.samples = samples;
  opts.seed = c.seed;
  ErrorCurve curve = error_curve(d, opts);
  if (c.format == "csv") return curve_csv(curve);
  json out;
  out["d"] = curve.d;
  out["tau"] = curve.tau;
  out["n_samples"] = curve.n_samples;
  out["seed"] = curve.seed;
  json bins = json::array();
  for (const auto& bin : curve.bins) {
    json jb;
    jb["alpha"] = bin.alpha;
    if (bin.e_minus)
      jb["e_minus"] = *bin.e_minus;
    else
      jb["e_minus"] = nullptr;
    jb["E_minus"] = bin.e_bound;
    jb["sigma"] = bin.sigma;
    jb["n_in_bin"] = bin.n;
    bins.push_back(std::move(jb));
  }
  out["bins"] = std::move(bins);
  return out.dump(2);
}

std::string run_falserate(double d, long samples, const Common& c) {
  ErrorCurveOptions opts;
  opts.samples = samples;
  opts.seed = c.seed;
  FalseRate fr = false_separable_rate(d, opts);
  if (c.format == "csv") {
    return "d,rate,sigma,p_at_max,n\n" + csv_double(fr.d) + "," + csv_double(fr.rate) + "," +
           csv_double(fr.sigma) + "," + csv_double(fr.p_at_max) + "," + std::to_string(fr.n) + "\n";
  }
  json out;
  out["d"] = fr.d;
  out["rate"] = fr.rate;
  out["sigma"] = fr.sigma;
  out["p_at_max"] = fr.p_at_max;
  out["n"] = fr.n;
  out["n_samples"] = fr.n_samples;
  out["seed"] = fr.seed;
  return out.dump(2);
}

// ---- simulate -------------------------------------------------------------

std::string run_simulate(const StateSpec& spec, const std::string& decomposition_file, long shots,
                         bool p_given, bool d_given, const std::string& records_file,
                         const Common& c) {
  DensityMatrix rho = build_state(spec, c.seed);
  std::ifstream f(decomposition_file);
  if (!f) throw DomainError("bad_argument", "cannot read decomposition file " + decomposition_file);
  json jd = json::parse(f, nullptr, false);
  if (jd.is_discarded())
    throw DomainError("bad_argument", "decomposition file is not valid JSON");
  if (jd.is_object() && jd.contains("decomposition")) jd = jd["decomposition"];
  LocalDecomposition dec = decomposition_from_json(jd);

  std::mt19937_64 rng = substream(c.seed, 1);
  std::vector<ShotRecord> records;
  Estimate est = estimate_witness(rho, dec, shots, rng,
                                  records_file.empty() ? nullptr : &records);
  if (!records_file.empty()) {
    std::ofstream rf(records_file, std::ios::binary);
    if (!rf) throw DomainError("bad_argument", "cannot open records file " + records_file);
    rf << "setting,outcome,count\n";
    for (const auto& rec : records)
      for (std::size_t idx = 0; idx < rec.counts.size(); ++idx)
        rf << rec.setting_index << "," << idx << "," << rec.counts[idx] << "\n";
  }

  std::string classification;
  double threshold = 0.0;
  bool w0_target = dec.target.dims == std::vector<int>{2, 2} &&
                   hs_norm(dec.target.mat - w0_matrix()) <= 1e-10;
  if (w0_target && d_given) {
    Witness w{make_operator({2, 2}, w0_matrix()), WitnessKind::npt, "reference", 0.0};
    Verdict v = p_given ? classify(w, est.value, NoiseBallSpec{spec.p, spec.d})
                        : classify(w, est.value, spec.d);
    classification = classification_name(v.classification);
    threshold = v.threshold_used;
  } else {
    classification = est.value < 0.0 ? "entangled" : "inconclusive";
  }

  if (c.format == "csv") {
    return "value,std_error,shots_per_setting,settings_used,classification,threshold\n" +
           csv_double(est.value) + "," + csv_double(est.std_error) + "," +
           std::to_string(est.shots_per_setting) + "," + std::to_string(est.settings_used) + "," +
           classification + "," + csv_double(threshold) + "\n";
  }
  json out;
  out["value"] = est.value;
  out["std_error"] = est.std_error;
  out["shots_per_setting"] = est.shots_per_setting;
  out["settings_used"] = est.settings_used;
  out["classification"] = classification;
  out["threshold_used"] = threshold;
  return out.dump(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"witness construction, measurement decomposition and entanglement certification"};
  app.require_subcommand(1);

  std::vector<std::string> argv_vec(argv, argv + argc);
  std::function<std::string()> action;
  Common common;
  std::string command;

  // state make
  auto* state = app.add_subcommand("state", "density matrix catalog");
  state->require_subcommand(1);
  auto* make = state->add_subcommand("make", "build a state and report its properties");
  static StateSpec make_spec;
  add_state_options(make, make_spec, "--family");
  add_common(make, common);
  make->callback([&] {
    command = "state make";
    action = [&] { return run_state_make(make_spec, common); };
  });

  // witness build / thresholds
  auto* witness = app.add_subcommand("witness", "witness construction and thresholds");
  witness->require_subcommand(1);
  auto* build = witness->add_subcommand("build", "construct a witness for a state");
  static StateSpec build_spec;
  static bool build_edge = false;
  static std::string build_epsilon;
  add_state_options(build, build_spec, "--for");
  build->add_flag("--edge", build_edge, "use the kernel-projector edge construction");
  build->add_option("--epsilon", build_epsilon, "number, 'optimize' or 'primed'");
  add_common(build, common);
  build->callback([&] {
    command = "witness build";
    action = [&] { return run_witness_build(build_spec, build_edge, build_epsilon, common); };
  });

  auto* thresholds = witness->add_subcommand("thresholds", "tau and theta certification thresholds");
  static double th_d = 0.0;
  static double th_p = 0.0;
  auto* th_d_opt = thresholds->add_option("--d", th_d, "noise ball radius")->required();
  auto* th_p_opt = thresholds->add_option("--p", th_p, "mixing weight, enables theta");
  add_common(thresholds, common);
  (void)th_d_opt;
  thresholds->callback([&, th_p_opt] {
    command = "witness thresholds";
    bool has_p = th_p_opt->count() > 0;
    action = [&, has_p] {
      return run_thresholds(th_d, has_p ? std::optional<double>(th_p) : std::nullopt, common);
    };
  });

  // decompose
  auto* decompose = app.add_subcommand("decompose", "measurement decompositions of witnesses");
  static std::string dec_target, dec_mode = "published";
  static double dec_epsilon = 0.0, dec_b = 0.5;
  decompose->add_option("--target", dec_target, "w0, ghz, w1, w2, upb or horodecki")->required();
  decompose->add_option("--mode", dec_mode, "ons, onp, pauli or published")
      ->check(CLI::IsMember({"ons", "onp", "pauli", "published"}));
  auto* dec_eps_opt = decompose->add_option("--epsilon", dec_epsilon, "edge shift; optimized when omitted");
  decompose->add_option("--b", dec_b, "parameter of the 2x4 family");
  add_common(decompose, common);
  decompose->callback([&, dec_eps_opt] {
    command = "decompose";
    bool eps_given = dec_eps_opt->count() > 0;
    action = [&, eps_given] {
      return run_decompose(dec_target, dec_mode, dec_epsilon, eps_given, dec_b, common);
    };
  });

  // montecarlo curve / falserate
  auto* mc = app.add_subcommand("montecarlo", "random-state error analysis");
  mc->require_subcommand(1);
  auto* curve = mc->add_subcommand("curve", "empirical error curve against the analytical bound");
  static double mc_d = 0.1;
  static long mc_samples = 50000;
  curve->add_option("--d", mc_d, "noise ball radius")->required();
  curve->add_option("--samples", mc_samples, "ball sample count");
  add_common(curve, common);
  curve->callback([&] {
    command = "montecarlo curve";
    action = [&] { return run_curve(mc_d, mc_samples, common); };
  });

  auto* falserate = mc->add_subcommand("falserate", "false-separable probability of the naive call");
  static double fr_d = 0.1;
  static long fr_samples = 50000;
  falserate->add_option("--d", fr_d, "noise ball radius")->required();
  falserate->add_option("--samples", fr_samples, "ball sample count");
  add_common(falserate, common);
  falserate->callback([&] {
    command = "montecarlo falserate";
    action = [&] { return run_falserate(fr_d, fr_samples, common); };
  });

  // simulate
  auto* simulate = app.add_subcommand("simulate", "finite-shot witness estimation");
  static StateSpec sim_spec;
  static std::string sim_decomposition;
  static std::string sim_records;
  static long sim_shots = 10000;
  add_state_options(simulate, sim_spec, "--state");
  simulate->add_option("--decomposition", sim_decomposition, "decomposition JSON file")->required();
  simulate->add_option("--shots", sim_shots, "shots per setting");
  simulate->add_option("--records", sim_records, "write per-setting outcome counts to this CSV");
  add_common(simulate, common);
  auto* sim_p_opt = simulate->get_option("--p");
  auto* sim_d_opt = simulate->get_option("--d");
  simulate->callback([&, sim_p_opt, sim_d_opt] {
    command = "simulate";
    bool p_given = sim_p_opt->count() > 0;
    bool d_given = sim_d_opt->count() > 0;
    action = [&, p_given, d_given] {
      return run_simulate(sim_spec, sim_decomposition, sim_shots, p_given, d_given, sim_records,
                          common);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const DomainError& e) {
    json err = {{"error", {{"code", e.code()}, {"message", e.what()}}}};
    std::cout << err.dump() << "\n";
    return 2;
  }

  try {
    Emitter emitter{command, argv_vec};
    emitter.emit(common, action());
  } catch (const DomainError& e) {
    json err = {{"error", {{"code", e.code()}, {"message", e.what()}}}};
    std::cout << err.dump() << "\n";
    return 2;
  }
  return 0;
}

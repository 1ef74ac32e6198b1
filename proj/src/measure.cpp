#include "witnesskit/measure.hpp"

#include <cmath>
#include <cstdint>

#include "witnesskit/errors.hpp"
#include "witnesskit/parallel.hpp"

namespace witnesskit {

namespace {

std::vector<double> outcome_probabilities(const DensityMatrix& rho, const Setting& setting) {
  if (static_cast<int>(setting.bases.size()) != rho.op.parties())
    throw DomainError("bad_dims", "setting party count does not match the state");
  for (std::size_t p = 0; p < setting.bases.size(); ++p)
    if (setting.bases[p].rows() != rho.op.dims[p])
      throw DomainError("bad_dims", "setting basis dimension does not match the state");

  std::vector<int> odims;
  long total = 1;
  for (const auto& b : setting.bases) {
    odims.push_back(static_cast<int>(b.cols()));
    total *= b.cols();
  }
  std::vector<double> probs(static_cast<std::size_t>(total));
  std::vector<int> k(setting.bases.size(), 0);
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int p = static_cast<int>(setting.bases.size()) - 1; p >= 0; --p) {
      k[static_cast<std::size_t>(p)] = static_cast<int>(rest % odims[static_cast<std::size_t>(p)]);
      rest /= odims[static_cast<std::size_t>(p)];
    }
    Eigen::VectorXcd v = setting.bases[0].col(k[0]);
    for (std::size_t p = 1; p < setting.bases.size(); ++p) v = kron_vec(v, setting.bases[p].col(k[p]));
    double prob = (v.adjoint() * rho.op.mat * v).value().real();
    if (prob < -1e-12)
      throw DomainError("invalid_state", "negative outcome probability beyond tolerance");
    probs[static_cast<std::size_t>(idx)] = std::max(prob, 0.0);
  }
  double sum = 0.0;
  for (double p : probs) sum += p;
  if (sum <= 0.0) throw DomainError("invalid_state", "outcome probabilities sum to zero");
  for (double& p : probs) p /= sum;
  return probs;
}

}  // namespace

ShotRecord simulate_setting(const DensityMatrix& rho, const Setting& setting, long shots,
                            std::mt19937_64& rng) {
  if (shots < 0) throw DomainError("bad_argument", "shot count must be nonnegative");
  std::vector<double> probs = outcome_probabilities(rho, setting);
  ShotRecord record;
  record.counts.assign(probs.size(), 0);
  record.shots = shots;
  std::discrete_distribution<int> outcome(probs.begin(), probs.end());
  for (long s = 0; s < shots; ++s) ++record.counts[static_cast<std::size_t>(outcome(rng))];
  return record;
}

Estimate estimate_witness(const DensityMatrix& rho, const LocalDecomposition& decomp,
                          long shots_per_setting, std::mt19937_64& rng,
                          std::vector<ShotRecord>* records) {
  if (shots_per_setting < 1) throw DomainError("zero_shots", "need at least one shot per setting");
  if (decomp.target.dims != rho.op.dims)
    throw DomainError("bad_dims", "decomposition target dimensions do not match the state");

  int n = static_cast<int>(decomp.settings.size());
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(n));
  for (auto& s : seeds) s = rng();

  if (records != nullptr) records->assign(static_cast<std::size_t>(n), ShotRecord{});
  std::vector<double> values(static_cast<std::size_t>(n), 0.0);
  std::vector<double> variances(static_cast<std::size_t>(n), 0.0);
  parallel_for(n, Exec::parallel, [&](std::int64_t i) {
    const Setting& setting = decomp.settings[static_cast<std::size_t>(i)];
    std::mt19937_64 srng(seeds[static_cast<std::size_t>(i)]);
    ShotRecord rec = simulate_setting(rho, setting, shots_per_setting, srng);
    rec.setting_index = static_cast<int>(i);
    double mean = 0.0, second = 0.0;
    for (long idx = 0; idx < setting.coeffs.size(); ++idx) {
      double phat = static_cast<double>(rec.counts[static_cast<std::size_t>(idx)]) / shots_per_setting;
      mean += setting.coeffs(idx) * phat;
      second += setting.coeffs(idx) * setting.coeffs(idx) * phat;
    }
    values[static_cast<std::size_t>(i)] = mean;
    variances[static_cast<std::size_t>(i)] = std::max(second - mean * mean, 0.0) / shots_per_setting;
    if (records != nullptr) (*records)[static_cast<std::size_t>(i)] = std::move(rec);
  });

  Estimate est;
  est.shots_per_setting = shots_per_setting;
  est.settings_used = n;
  double var = 0.0;
  for (int i = 0; i < n; ++i) {
    est.value += values[static_cast<std::size_t>(i)];
    var += variances[static_cast<std::size_t>(i)];
  }
  est.std_error = std::sqrt(var);
  return est;
}

}  // namespace witnesskit

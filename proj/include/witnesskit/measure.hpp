#pragma once

#include <random>
#include <vector>

#include "witnesskit/decomp.hpp"
#include "witnesskit/states.hpp"

namespace witnesskit {

struct ShotRecord {
  int setting_index = 0;
  std::vector<long> counts;  // flat row-major over joint outcomes
  long shots = 0;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  long shots_per_setting = 0;
  int settings_used = 0;
};

// Multinomial outcome counts for measuring one setting on rho. Outcome
// probabilities below -1e-12 reject the state; small negative values clip to
// zero and the distribution is renormalized.
ShotRecord simulate_setting(const DensityMatrix& rho, const Setting& setting, long shots,
                            std::mt19937_64& rng);

// Plug-in estimate of Tr(target rho) from finite-shot runs of every setting,
// with the multinomial standard error propagated across independent settings.
// Per-setting seeds are drawn from rng up front, so the simulation order does
// not depend on the worker count. When records is non-null it receives one
// ShotRecord per setting.
Estimate estimate_witness(const DensityMatrix& rho, const LocalDecomposition& decomp,
                          long shots_per_setting, std::mt19937_64& rng,
                          std::vector<ShotRecord>* records = nullptr);

}  // namespace witnesskit

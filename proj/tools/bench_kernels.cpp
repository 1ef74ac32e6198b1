// Times the OpenMP kernels against their serial reference paths and checks
// that both produce identical results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "witnesskit/montecarlo.hpp"
#include "witnesskit/parallel.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/witness.hpp"

namespace {

using namespace witnesskit;
using clock_t_ = std::chrono::steady_clock;

double time_ms(const std::function<void()>& f) {
  auto t0 = clock_t_::now();
  f();
  auto t1 = clock_t_::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool match) {
  std::printf("%-28s %10.1f ms %10.1f ms %8.2fx   %s\n", name.c_str(), serial_ms, parallel_ms,
              serial_ms / parallel_ms, match ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("%-28s %13s %13s %9s   %s\n", "kernel", "serial", "parallel", "speedup", "results");
  std::printf("workers: %d\n\n", worker_count());

  {
    ErrorCurveOptions o;
    o.samples = 20000;
    ErrorCurve serial, parallel;
    o.exec = Exec::serial;
    double ts = time_ms([&] { serial = error_curve(0.15, o); });
    o.exec = Exec::parallel;
    double tp = time_ms([&] { parallel = error_curve(0.15, o); });
    bool match = serial.bins.size() == parallel.bins.size();
    for (std::size_t i = 0; match && i < serial.bins.size(); ++i) {
      match = serial.bins[i].n == parallel.bins[i].n &&
              serial.bins[i].e_minus == parallel.bins[i].e_minus;
    }
    report("montecarlo error curve", ts, tp, match);
  }

  {
    SoundnessOptions o;
    o.draws = 200000;
    SoundnessReport serial, parallel;
    o.exec = Exec::serial;
    double ts = time_ms([&] { serial = soundness_scan(o); });
    o.exec = Exec::parallel;
    double tp = time_ms([&] { parallel = soundness_scan(o); });
    bool match = serial.tau_violations == parallel.tau_violations &&
                 serial.borderline == parallel.borderline &&
                 serial.mean_radius_sq == parallel.mean_radius_sq;
    report("soundness scan", ts, tp, match);
  }

  {
    Eigen::MatrixXcd wbar = Eigen::MatrixXcd::Zero(9, 9);
    for (const auto& v : upb_vectors()) wbar += projector(v);
    Operator wb = make_operator({3, 3}, wbar);
    SeesawOptions o;
    o.restarts = 120;
    EpsilonResult serial, parallel;
    o.exec = Exec::serial;
    double ts = time_ms([&] { serial = optimize_epsilon(wb, o); });
    o.exec = Exec::parallel;
    double tp = time_ms([&] { parallel = optimize_epsilon(wb, o); });
    report("epsilon seesaw", ts, tp, serial.value == parallel.value);
  }

  {
    KernelSearchOptions o;
    o.restarts = 150;
    DensityMatrix rho = upb_state();
    std::vector<ProductVectorHit> serial, parallel;
    o.exec = Exec::serial;
    double ts = time_ms([&] { serial = kernel_product_vectors(rho, o); });
    o.exec = Exec::parallel;
    double tp = time_ms([&] { parallel = kernel_product_vectors(rho, o); });
    bool match = serial.size() == parallel.size();
    for (std::size_t i = 0; match && i < serial.size(); ++i)
      match = (serial[i].e - parallel[i].e).norm() < 1e-14 &&
              (serial[i].f - parallel[i].f).norm() < 1e-14;
    report("kernel product search", ts, tp, match);
  }

  return 0;
}

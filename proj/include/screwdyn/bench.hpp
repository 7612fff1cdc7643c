#pragma once

// Timing of the spatial (forward kinematics to jounce + second-order
// inverse dynamics) and body-fixed (first-order inverse dynamics) recursions
// on identical inputs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "screwdyn/bodyfixed.hpp"
#include "screwdyn/chains.hpp"
#include "screwdyn/dynamics.hpp"
#include "screwdyn/errors.hpp"
#include "screwdyn/kinematics.hpp"
#include "screwdyn/random.hpp"

namespace screwdyn {

struct BenchTiming {
  double mean_seconds = 0.0;  ///< per call
  double min_seconds = 0.0;   ///< per call
};

struct BenchReport {
  int dof = 0;
  int repeats = 0;
  BenchTiming spatial, bodyfixed;

  /// spatial / body-fixed mean time.
  double ratio() const { return spatial.mean_seconds / bodyfixed.mean_seconds; }
};

namespace detail {

/// Times `calls` invocations of f in batches and reports per-call times.
template <typename F>
BenchTiming time_calls(int calls, F&& f) {
  using clock = std::chrono::steady_clock;
  const int batches = std::min(calls, 20);
  const int per_batch = std::max(1, calls / batches);
  double total = 0.0;
  double best = std::numeric_limits<double>::infinity();
  int done = 0;
  for (int b = 0; b < batches; ++b) {
    const int count = b + 1 == batches ? calls - done : per_batch;
    const auto t0 = clock::now();
    for (int k = 0; k < count; ++k) f();
    const double dt = std::chrono::duration<double>(clock::now() - t0).count();
    total += dt;
    best = std::min(best, dt / count);
    done += count;
  }
  return {total / calls, best};
}

}  // namespace detail

/// Runs both recursions `repeats` times on one random state (gravity trick).
inline BenchReport bench_model(const RobotModel<double>& model, int repeats,
                               std::uint64_t seed = 1) {
  if (repeats <= 0) throw UsageError("repeats must be positive");
  Rng rng(seed);
  const auto js = random_joint_state(rng, model.size());
  const auto chain = BodyFixedChain<double>::FromModel(model);
  volatile double sink = 0.0;

  BenchReport report;
  report.dof = model.size();
  report.repeats = repeats;
  report.spatial = detail::time_calls(repeats, [&] {
    const auto bk = forward_kinematics_4(model, js, true);
    sink = sink + inverse_dynamics_2(model, bk).Qdd(0);
  });
  report.bodyfixed = detail::time_calls(repeats, [&] {
    sink = sink + inverse_dynamics_bodyfixed_1(chain, js).Qd(0);
  });
  return report;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
  const std::size_t m = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

struct ScalingReport {
  std::vector<BenchReport> points;
  double spatial_slope = 0.0;    ///< from the per-call minimum times
  double bodyfixed_slope = 0.0;
};

/// Sweeps uniform chains of the given lengths.
inline ScalingReport bench_scaling(const std::vector<int>& sizes,
                                   int repeats) {
  ScalingReport out;
  std::vector<double> ns, ts, tb;
  for (int n : sizes) {
    out.points.push_back(bench_model(uniform_chain(n), repeats));
    ns.push_back(n);
    ts.push_back(out.points.back().spatial.min_seconds);
    tb.push_back(out.points.back().bodyfixed.min_seconds);
  }
  out.spatial_slope = loglog_slope(ns, ts);
  out.bodyfixed_slope = loglog_slope(ns, tb);
  return out;
}

inline const std::vector<int>& default_scaling_sizes() {
  static const std::vector<int> sizes = {2, 4, 8, 16, 32, 64};
  return sizes;
}

}  // namespace screwdyn

#pragma once

// Trajectory-in, joint-forces-out evaluation used by the `run` command.

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "screwdyn/bodyfixed.hpp"
#include "screwdyn/csv_io.hpp"
#include "screwdyn/dynamics.hpp"
#include "screwdyn/errors.hpp"
#include "screwdyn/kinematics.hpp"
#include "screwdyn/oracles.hpp"

namespace screwdyn {

enum class Representation { Spatial, BodyFixed };

inline const char* to_string(Representation rep) {
  return rep == Representation::Spatial ? "spatial" : "bodyfixed";
}

struct RunOptions {
  Representation representation = Representation::Spatial;
  GravityMode gravity = GravityMode::Trick;
  std::optional<SeaParams<double>> sea;
};

struct RunRow {
  double t = 0.0;
  VectorX<double> Q, Qd;
  VectorX<double> Qdd;  ///< empty for the body-fixed representation
  VectorX<double> theta, tau;  ///< empty without SEA parameters
};

/// Samples of a SineTrajectory at t = k dt, k = 0..floor(duration / dt).
inline TrajectorySamples sample_sine(const SineTrajectory& traj, double dt,
                                     double duration) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw UsageError("sample interval must be positive");
  }
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw UsageError("duration must be non-negative");
  }
  const long count = static_cast<long>(std::floor(duration / dt + 1e-9)) + 1;
  TrajectorySamples out;
  for (long k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) * dt;
    out.times.push_back(t);
    out.states.push_back(traj.at(t));
  }
  return out;
}

/// Joint forces for every sample, in sample order.
inline std::vector<RunRow> run_pipeline(const RobotModel<double>& model,
                                        const TrajectorySamples& traj,
                                        const LoadsTable& loads,
                                        const RunOptions& options) {
  const int n = model.size();
  if (traj.dof() != n) {
    throw DimensionError("trajectory has " + std::to_string(traj.dof()) +
                         " joints, model has " + std::to_string(n));
  }
  if (!loads.empty() && loads.dof() != n) {
    throw DimensionError("loads table does not match chain length");
  }
  if (loads.max_sample() >= static_cast<long>(traj.size())) {
    throw DimensionError("loads refer to sample " +
                         std::to_string(loads.max_sample()) + " but the " +
                         "trajectory has " + std::to_string(traj.size()) +
                         " samples");
  }
  if (options.sea && options.representation == Representation::BodyFixed) {
    throw UsageError("SEA quantities need Qdd, which the body-fixed "
                     "representation does not compute");
  }
  if (options.sea) options.sea->validate(n);

  const bool trick = options.gravity == GravityMode::Trick;
  std::optional<BodyFixedChain<double>> chain;
  if (options.representation == Representation::BodyFixed) {
    chain = BodyFixedChain<double>::FromModel(model);
  }

  std::vector<RunRow> rows(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& js = traj.states[k];
    const AppliedLoads2<double> applied = loads.at(static_cast<long>(k));
    RunRow& row = rows[k];
    row.t = traj.times[k];
    if (chain) {
      const auto r =
          inverse_dynamics_bodyfixed_1(*chain, js, applied, options.gravity);
      row.Q = r.Q;
      row.Qd = r.Qd;
    } else {
      const auto bk = forward_kinematics_4(model, js, trick);
      const auto dr = inverse_dynamics_2(model, bk, applied, options.gravity);
      row.Q = dr.Q;
      row.Qd = dr.Qd;
      row.Qdd = dr.Qdd;
      if (options.sea) {
        const auto sea = sea_motor_quantities(js, dr, *options.sea);
        row.theta = sea.theta;
        row.tau = sea.tau;
      }
    }
  }
  return rows;
}

/// t, Q1..Qn, Qd1..Qdn, Qdd1..Qddn [, theta1..thetan, tau1..taun].
/// Qdd cells are left empty when not computed.
inline void write_run_csv(std::ostream& out, const std::vector<RunRow>& rows,
                          int n, bool with_sea) {
  std::vector<std::string> groups = {"Q", "Qd", "Qdd"};
  if (with_sea) {
    groups.push_back("theta");
    groups.push_back("tau");
  }
  out << 't';
  for (const auto& g : groups) {
    for (int i = 1; i <= n; ++i) out << ',' << g << i;
  }
  out << '\n';
  for (const auto& row : rows) {
    out << format_double(row.t);
    for (const auto* v : {&row.Q, &row.Qd, &row.Qdd}) {
      for (int i = 0; i < n; ++i) {
        out << ',';
        if (v->size() == n) out << format_double((*v)(i));
      }
    }
    if (with_sea) {
      for (const auto* v : {&row.theta, &row.tau}) {
        for (int i = 0; i < n; ++i) out << ',' << format_double((*v)(i));
      }
    }
    out << '\n';
  }
}

}  // namespace screwdyn

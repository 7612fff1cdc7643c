#pragma once

// Independent checks for the recursive algorithms: finite differences,
// kinetic-energy balance, a mass matrix assembled column by column from the
// inverse dynamics, closed-form pendulum dynamics and smooth analytic
// test trajectories.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "screwdyn/dynamics.hpp"
#include "screwdyn/errors.hpp"
#include "screwdyn/kinematics.hpp"
#include "screwdyn/random.hpp"
#include "screwdyn/robot_model.hpp"

namespace screwdyn {

enum class Stencil { Central3, Central5 };

struct FdScheme {
  Stencil stencil = Stencil::Central5;
  double h = 1e-4;

  int width() const { return stencil == Stencil::Central3 ? 3 : 5; }
  int half_width() const { return width() / 2; }

  void validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw SamplingError("finite-difference step must be positive");
    }
  }
};

/// Derivative estimates at the interior sample points.
template <typename T>
struct FdSeries {
  std::vector<double> times;
  std::vector<T> values;
};

namespace detail {

template <typename T>
T central_stencil(const T& m2, const T& m1, const T& p1, const T& p2,
                  Stencil stencil, double h) {
  if (stencil == Stencil::Central3) return T((p1 - m1) / (2.0 * h));
  return T((m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h));
}

}  // namespace detail

/// Differentiates samples taken at uniformly spaced `times`, spacing
/// `scheme.h`. Spacing deviations larger than 1e-12 relative (to the larger
/// of |t| and h, so that roundoff in accumulated time stamps is accepted)
/// are rejected.
template <typename T>
FdSeries<T> finite_difference(const std::vector<double>& times,
                              const std::vector<T>& samples,
                              const FdScheme& scheme) {
  scheme.validate();
  if (times.size() != samples.size()) {
    throw SamplingError("got " + std::to_string(times.size()) +
                        " time stamps for " + std::to_string(samples.size()) +
                        " samples");
  }
  const int w = scheme.width();
  if (static_cast<int>(samples.size()) < w) {
    throw SamplingError("need at least " + std::to_string(w) +
                        " samples for the stencil, got " +
                        std::to_string(samples.size()));
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double dt = times[k] - times[k - 1];
    const double scale = std::max(std::abs(times[k]), scheme.h);
    if (!(std::abs(dt - scheme.h) <= 1e-12 * scale)) {
      throw SamplingError("non-uniform sample spacing at index " +
                          std::to_string(k));
    }
  }
  const int half = scheme.half_width();
  FdSeries<T> out;
  for (int k = half; k + half < static_cast<int>(samples.size()); ++k) {
    const T& m1 = samples[k - 1];
    const T& p1 = samples[k + 1];
    const T& m2 = half == 2 ? samples[k - 2] : m1;
    const T& p2 = half == 2 ? samples[k + 2] : p1;
    out.times.push_back(times[k]);
    out.values.push_back(
        detail::central_stencil(m2, m1, p1, p2, scheme.stencil, scheme.h));
  }
  return out;
}

/// Central difference of f at t; f maps a time to a scalar or an Eigen
/// vector.
template <typename F>
auto central_derivative(F&& f, double t, const FdScheme& scheme = {}) {
  scheme.validate();
  using T = decltype(f(t));
  const double h = scheme.h;
  if (scheme.stencil == Stencil::Central3) {
    return detail::central_stencil<T>(T(), f(t - h), f(t + h), T(),
                                      Stencil::Central3, h);
  }
  return detail::central_stencil<T>(f(t - 2 * h), f(t - h), f(t + h),
                                    f(t + 2 * h), Stencil::Central5, h);
}

/// Running maximum of |value - reference| and |reference| over a
/// trajectory. relative() is max |diff| / max |ref|, i.e. the error is
/// scaled by the magnitude of the quantity over the whole run rather than
/// sample by sample; falls back to the absolute error for a zero reference.
struct ErrorStats {
  double max_abs_diff = 0.0;
  double max_ref = 0.0;

  template <typename A, typename B>
  void add(const A& value, const B& reference) {
    max_abs_diff =
        std::max(max_abs_diff, (value - reference).cwiseAbs().maxCoeff());
    max_ref = std::max(max_ref, reference.cwiseAbs().maxCoeff());
  }

  void add(double value, double reference) {
    max_abs_diff = std::max(max_abs_diff, std::abs(value - reference));
    max_ref = std::max(max_ref, std::abs(reference));
  }

  void merge(const ErrorStats& other) {
    max_abs_diff = std::max(max_abs_diff, other.max_abs_diff);
    max_ref = std::max(max_ref, other.max_ref);
  }

  double relative() const {
    return max_ref > 0.0 ? max_abs_diff / max_ref : max_abs_diff;
  }
};

/// T = 1/2 sum V_i^T M_i V_i with spatial twists and spatial mass matrices.
template <typename Scalar>
Scalar kinetic_energy(const RobotModel<Scalar>& model,
                      const BodyKinematics4<Scalar>& bk) {
  Scalar t = Scalar(0);
  for (int i = 0; i < bk.size(); ++i) {
    const auto& b = bk.bodies[i];
    const Matrix6<Scalar> ms =
        spatial_inertia_transform(model.bodies[i].inertia, b.C);
    t += b.V.dot(ms * b.V);
  }
  return t / Scalar(2);
}

/// |sum Q_i qd_i - dT/dt| for a gravity-free, load-free dynamics result.
template <typename Scalar>
Scalar power_balance_residual(const RobotModel<Scalar>& /*model*/,
                              const BodyKinematics4<Scalar>& bk,
                              const DynamicsResult2<Scalar>& dr,
                              Scalar tdot_fd) {
  using std::abs;
  return abs(dr.Q.dot(bk.joints.qd) - tdot_fd);
}

/// Generalized mass matrix: column k is Q at (q, qd = 0, qdd = e_k) with
/// gravity and applied loads off.
template <typename Scalar>
MatrixX<Scalar> mass_matrix_via_id(const RobotModel<Scalar>& model,
                                   const VectorX<Scalar>& q) {
  const int n = model.size();
  if (q.size() != n) {
    throw DimensionError("q does not match chain length " + std::to_string(n));
  }
  MatrixX<Scalar> m(n, n);
  JointState4<Scalar> js = JointState4<Scalar>::Zero(n);
  js.q = q;
  for (int k = 0; k < n; ++k) {
    js.qdd.setZero();
    js.qdd(k) = Scalar(1);
    const auto bk = forward_kinematics_4(model, js, false);
    m.col(k) = inverse_dynamics_2(model, bk, {}, GravityMode::None).Q;
  }
  return m;
}

/// Q, Qd, Qdd of pendulum() from its Lagrangian.
struct PendulumForces {
  double Q, Qd, Qdd;
};

inline PendulumForces pendulum_lagrangian(double mass, double length,
                                          double theta_zz, double g,
                                          double q, double qd, double qdd,
                                          double qddd, double qdddd) {
  const double j = theta_zz + mass * length * length;
  const double mgl = mass * g * length;
  const double c = std::cos(q), s = std::sin(q);
  return {j * qdd + mgl * c, j * qddd - mgl * s * qd,
          j * qdddd - mgl * (c * qd * qd + s * qdd)};
}

/// q_i(t) = a_i sin(w_i t + phi_i) for every joint, smooth to all orders.
struct SineJoint {
  double amplitude = 0.0;
  double frequency = 0.0;  ///< angular frequency, rad/s
  double phase = 0.0;
};

struct SineTrajectory {
  std::vector<SineJoint> joints;

  int size() const { return static_cast<int>(joints.size()); }

  JointState4<double> at(double t) const {
    const int n = size();
    JointState4<double> js = JointState4<double>::Zero(n);
    for (int i = 0; i < n; ++i) {
      const auto& j = joints[i];
      const double w = j.frequency;
      const double s = std::sin(w * t + j.phase);
      const double c = std::cos(w * t + j.phase);
      js.q(i) = j.amplitude * s;
      js.qd(i) = j.amplitude * w * c;
      js.qdd(i) = -j.amplitude * w * w * s;
      js.qddd(i) = -j.amplitude * w * w * w * c;
      js.qdddd(i) = j.amplitude * w * w * w * w * s;
    }
    return js;
  }

  /// Amplitudes in [0.2, max_amplitude], frequencies in
  /// [0.5, max_frequency] rad/s, phases in [0, 2 pi).
  static SineTrajectory Seeded(int n, std::uint64_t seed,
                               double max_amplitude = 1.0,
                               double max_frequency = 3.0) {
    Rng rng(seed);
    SineTrajectory traj;
    for (int i = 0; i < n; ++i) {
      SineJoint j;
      j.amplitude = uniform(rng, 0.2, max_amplitude);
      j.frequency = uniform(rng, 0.5, max_frequency);
      j.phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
      traj.joints.push_back(j);
    }
    return traj;
  }
};

}  // namespace screwdyn

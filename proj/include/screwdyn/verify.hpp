#pragma once

// Invariant and oracle checks shared by the `verify` command and the
// acceptance suite. Every check is deterministic for a given seed.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "screwdyn/bodyfixed.hpp"
#include "screwdyn/chains.hpp"
#include "screwdyn/dynamics.hpp"
#include "screwdyn/kinematics.hpp"
#include "screwdyn/oracles.hpp"
#include "screwdyn/random.hpp"
#include "screwdyn/screw_algebra.hpp"

namespace screwdyn {

struct CheckResult {
  std::string name;
  double value = 0.0;      ///< residual or error measure
  double tolerance = 0.0;  ///< passes when value < tolerance
  double seconds = 0.0;
  double time_limit = 0.0;  ///< 0 when untimed
  std::string detail;

  bool passed() const {
    return std::isfinite(value) && value < tolerance &&
           (time_limit <= 0.0 || seconds < time_limit);
  }
};

/// One line per check: [PASS]/[FAIL], name, value and tolerance.
inline std::string format_check(const CheckResult& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-6s %-44s %.3e < %.0e",
                r.passed() ? "[PASS]" : "[FAIL]", r.name.c_str(), r.value,
                r.tolerance);
  std::string line = buf;
  if (r.time_limit > 0.0) {
    std::snprintf(buf, sizeof(buf), "  (%.3f s < %.0f s)", r.seconds,
                  r.time_limit);
    line += buf;
  }
  if (!r.detail.empty()) line += "  " + r.detail;
  return line;
}

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

template <typename A, typename B>
double max_abs_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Random spatial loads with first and second derivatives.
inline AppliedLoads2<double> random_loads(Rng& rng, int n, double scale) {
  auto loads = AppliedLoads2<double>::Zero(n);
  for (auto& w : loads.bodies) {
    w.W = random_twist(rng, scale);
    w.Wd = random_twist(rng, scale);
    w.Wdd = random_twist(rng, scale);
  }
  return loads;
}

}  // namespace detail

/// Adjoint homomorphism, adjoint inverse, ad-conjugation and the Jacobi
/// identity of the screw commutator on random poses and screws.
inline CheckResult check_group_laws(int pairs, std::uint64_t seed,
                                    double tolerance = 1e-11,
                                    double time_limit = 0.0) {
  detail::Stopwatch sw;
  Rng rng(seed);
  double hom = 0.0, inv = 0.0, conj = 0.0, jacobi = 0.0;
  const Matrix6<double> eye = Matrix6<double>::Identity();
  for (int k = 0; k < pairs; ++k) {
    const Pose<double> c1 = random_pose(rng), c2 = random_pose(rng);
    const Twist<double> x1 = random_twist(rng), x2 = random_twist(rng),
                        x3 = random_twist(rng);
    const Matrix6<double> ad1 = adjoint_of(c1);
    hom = std::max(hom, detail::max_abs_diff(adjoint_of(c1 * c2),
                                             ad1 * adjoint_of(c2)));
    inv = std::max(inv, detail::max_abs_diff(adjoint_of(c1.inverse()),
                                             adjoint_inverse_of(c1)));
    inv = std::max(inv,
                   detail::max_abs_diff(ad1 * adjoint_inverse_of(c1), eye));
    inv = std::max(inv, detail::max_abs_diff((c1 * c1.inverse()).matrix(),
                                             Matrix4<double>::Identity()));
    conj = std::max(conj, detail::max_abs_diff(
                              ad_matrix(Twist<double>(ad1 * x1)),
                              ad1 * ad_matrix(x1) * adjoint_inverse_of(c1)));
    const Twist<double> j = screw_commutator(x1, screw_commutator(x2, x3)) +
                            screw_commutator(x2, screw_commutator(x3, x1)) +
                            screw_commutator(x3, screw_commutator(x1, x2));
    jacobi = std::max(jacobi, j.cwiseAbs().maxCoeff());
  }
  CheckResult r;
  r.name = "group laws (" + std::to_string(pairs) + " pose pairs)";
  r.value = std::max({hom, inv, conj, jacobi});
  r.tolerance = tolerance;
  r.time_limit = time_limit;
  r.seconds = sw.seconds();
  r.detail = "hom " + detail::sci(hom) + ", inv " + detail::sci(inv) +
             ", conj " + detail::sci(conj) + ", jacobi " + detail::sci(jacobi);
  return r;
}

/// Time derivatives of Ad, Ad^-1 and the spatial mass matrix along
/// constant-screw motions C(t) = exp(Y t) C0 (spatial twist Y) against
/// central differences.
inline CheckResult check_derivative_identities(int trials, std::uint64_t seed,
                                               const FdScheme& scheme = {},
                                               double tolerance = 1e-6) {
  detail::Stopwatch sw;
  Rng rng(seed);
  ErrorStats ad_err, adinv_err, ms_err;
  for (int k = 0; k < trials; ++k) {
    const Twist<double> y = random_twist(rng);
    const Pose<double> c0 = random_pose(rng);
    const double t0 = uniform(rng, 0.0, 1.0);
    Matrix3<double> theta = random_rotation(rng);
    theta = theta * Vector3<double>(uniform(rng, 0.02, 0.05),
                                    uniform(rng, 0.02, 0.05),
                                    uniform(rng, 0.02, 0.05))
                        .asDiagonal() *
            theta.transpose();
    theta = 0.5 * (theta + theta.transpose());
    const Vector3<double> com = random_vector(rng, 3, -0.05, 0.05);
    const double mass = uniform(rng, 0.5, 2.0);
    const Matrix6<double> mb = body_inertia_matrix(
        mass, com, inertia_about_origin(mass, com, theta));

    auto pose = [&](double t) { return exp_screw(y, t) * c0; };
    const Pose<double> c = pose(t0);
    const Matrix6<double> ad_y = ad_matrix(y);

    const Matrix6<double> fd_ad = central_derivative(
        [&](double t) { return adjoint_of(pose(t)); }, t0, scheme);
    ad_err.add(fd_ad, Matrix6<double>(ad_y * adjoint_of(c)));

    const Matrix6<double> fd_adinv = central_derivative(
        [&](double t) { return adjoint_inverse_of(pose(t)); }, t0, scheme);
    adinv_err.add(fd_adinv, Matrix6<double>(-adjoint_inverse_of(c) * ad_y));

    const Matrix6<double> fd_ms = central_derivative(
        [&](double t) { return spatial_inertia_transform(mb, pose(t)); }, t0,
        scheme);
    const Matrix6<double> ms = spatial_inertia_transform(mb, c);
    ms_err.add(fd_ms, Matrix6<double>(-ms * ad_y - ad_y.transpose() * ms));
  }
  CheckResult r;
  r.name = "Ad, Ad^-1, Ms derivative identities";
  r.value = std::max({ad_err.relative(), adinv_err.relative(),
                      ms_err.relative()});
  r.tolerance = tolerance;
  r.seconds = sw.seconds();
  r.detail = "Ad " + detail::sci(ad_err.relative()) + ", Ad^-1 " +
             detail::sci(adinv_err.relative()) + ", Ms " +
             detail::sci(ms_err.relative());
  return r;
}

/// Sample times t_k = k * duration / samples, k = 0..samples-1.
inline std::vector<double> check_times(int samples, double duration) {
  std::vector<double> t(samples);
  for (int k = 0; k < samples; ++k) t[k] = duration * k / samples;
  return t;
}

/// S, Sd, Sdd and V, Vd, Vdd differentiated numerically against the next
/// order from the forward recursion.
inline CheckResult check_kinematic_derivatives(const RobotModel<double>& model,
                                               const SineTrajectory& traj,
                                               int samples, double duration,
                                               const FdScheme& scheme = {},
                                               double tolerance = 1e-5,
                                               double time_limit = 0.0) {
  detail::Stopwatch sw;
  const int n = model.size();
  // Columns per body: S, Sd, Sdd, Sddd, V, Vd, Vdd, Vddd.
  auto stacked = [&](double t) {
    const auto bk = forward_kinematics_4(model, traj.at(t), false);
    Eigen::MatrixXd m(6, 8 * n);
    for (int i = 0; i < n; ++i) {
      const auto& b = bk.bodies[i];
      m.col(8 * i + 0) = b.S;
      m.col(8 * i + 1) = b.Sd;
      m.col(8 * i + 2) = b.Sdd;
      m.col(8 * i + 3) = b.Sddd;
      m.col(8 * i + 4) = b.V;
      m.col(8 * i + 5) = b.Vd;
      m.col(8 * i + 6) = b.Vdd;
      m.col(8 * i + 7) = b.Vddd;
    }
    return m;
  };
  static const char* names[] = {"Sd", "Sdd", "Sddd", "Vd", "Vdd", "Vddd"};
  static const int lower[] = {0, 1, 2, 4, 5, 6};
  ErrorStats err[6];
  for (double t : check_times(samples, duration)) {
    const Eigen::MatrixXd exact = stacked(t);
    const Eigen::MatrixXd fd = central_derivative(stacked, t, scheme);
    for (int q = 0; q < 6; ++q) {
      for (int i = 0; i < n; ++i) {
        err[q].add(Twist<double>(fd.col(8 * i + lower[q])),
                   Twist<double>(exact.col(8 * i + lower[q] + 1)));
      }
    }
  }
  CheckResult r;
  r.name = "kinematic derivatives vs FD (" + std::to_string(samples) +
           " samples)";
  r.tolerance = tolerance;
  r.time_limit = time_limit;
  for (int q = 0; q < 6; ++q) {
    r.value = std::max(r.value, err[q].relative());
    r.detail += std::string(q ? ", " : "") + names[q] + " " +
                detail::sci(err[q].relative());
  }
  r.seconds = sw.seconds();
  return r;
}

/// Qd and Qdd against central differences of Q and Qd along a trajectory.
inline CheckResult check_force_derivatives(const RobotModel<double>& model,
                                           const SineTrajectory& traj,
                                           int samples, double duration,
                                           const FdScheme& scheme = {},
                                           double tolerance = 1e-5) {
  detail::Stopwatch sw;
  auto forces = [&](double t) {
    const auto bk = forward_kinematics_4(model, traj.at(t), true);
    const auto dr = inverse_dynamics_2(model, bk);
    Eigen::MatrixXd m(model.size(), 3);
    m << dr.Q, dr.Qd, dr.Qdd;
    return m;
  };
  ErrorStats qd_err, qdd_err;
  for (double t : check_times(samples, duration)) {
    const Eigen::MatrixXd exact = forces(t);
    const Eigen::MatrixXd fd = central_derivative(forces, t, scheme);
    qd_err.add(VectorX<double>(fd.col(0)), VectorX<double>(exact.col(1)));
    qdd_err.add(VectorX<double>(fd.col(1)), VectorX<double>(exact.col(2)));
  }
  CheckResult r;
  r.name = "Qd, Qdd vs FD of Q";
  r.value = std::max(qd_err.relative(), qdd_err.relative());
  r.tolerance = tolerance;
  r.seconds = sw.seconds();
  r.detail = "Qd " + detail::sci(qd_err.relative()) + ", Qdd " +
             detail::sci(qdd_err.relative());
  return r;
}

/// Spatial and body-fixed Q, Qd on random states, cycling through the three
/// gravity modes with random applied loads.
inline CheckResult check_representation_independence(
    const RobotModel<double>& model, int states, std::uint64_t seed,
    double tolerance = 1e-10) {
  detail::Stopwatch sw;
  Rng rng(seed);
  const int n = model.size();
  const auto chain = BodyFixedChain<double>::FromModel(model);
  static const GravityMode modes[] = {GravityMode::Trick, GravityMode::Explicit,
                                      GravityMode::None};
  double diff = 0.0;
  for (int k = 0; k < states; ++k) {
    const GravityMode mode = modes[k % 3];
    const auto js = random_joint_state(rng, n);
    const auto loads = detail::random_loads(rng, n, 1.0);
    const auto bk = forward_kinematics_4(model, js, mode == GravityMode::Trick);
    const auto dr = inverse_dynamics_2(model, bk, loads, mode);
    const auto bf = inverse_dynamics_bodyfixed_1(chain, js, loads, mode);
    diff = std::max({diff, detail::max_abs_diff(dr.Q, bf.Q),
                     detail::max_abs_diff(dr.Qd, bf.Qd)});
  }
  CheckResult r;
  r.name = "spatial vs body-fixed Q, Qd (" + std::to_string(states) +
           " states)";
  r.value = diff;
  r.tolerance = tolerance;
  r.seconds = sw.seconds();
  return r;
}

/// V^s = Ad_C V^b, Vd^s = Ad_C Vd^b, Vdd^s = Ad_C Vdd^b + [V^s, Vd^s] and
/// constancy of the body-frame joint screws Ad_C^-1 S = X.
inline CheckResult check_twist_consistency(const RobotModel<double>& model,
                                           int states, std::uint64_t seed,
                                           double tolerance = 1e-12) {
  detail::Stopwatch sw;
  Rng rng(seed);
  const int n = model.size();
  const auto chain = BodyFixedChain<double>::FromModel(model);
  ErrorStats twist, screw;
  for (int k = 0; k < states; ++k) {
    const auto js = random_joint_state(rng, n);
    const auto bk = forward_kinematics_4(model, js, true);
    const auto bf = inverse_dynamics_bodyfixed_1(chain, js);
    for (int i = 0; i < n; ++i) {
      const auto& s = bk.bodies[i];
      const auto& b = bf.bodies[i];
      const Matrix6<double> ad = adjoint_of(s.C);
      twist.add(Twist<double>(ad * b.Vb), s.V);
      twist.add(Twist<double>(ad * b.Vbd), s.Vd);
      twist.add(Twist<double>(ad * b.Vbdd + screw_commutator(s.V, s.Vd)),
                s.Vdd);
      twist.add(b.C.matrix(), s.C.matrix());
      screw.add(Twist<double>(adjoint_inverse_of(s.C) * s.S),
                chain.joint_screw[i]);
    }
  }
  CheckResult r;
  r.name = "body-fixed twist and screw consistency";
  r.value = std::max(twist.relative(), screw.relative());
  r.tolerance = tolerance;
  r.seconds = sw.seconds();
  r.detail = "twists " + detail::sci(twist.relative()) + ", screws " +
             detail::sci(screw.relative());
  return r;
}

/// Ground-acceleration trick against explicit gravity wrenches.
inline CheckResult check_gravity_modes(const RobotModel<double>& model,
                                       int states, std::uint64_t seed,
                                       double tolerance = 1e-10) {
  detail::Stopwatch sw;
  Rng rng(seed);
  const int n = model.size();
  double diff = 0.0;
  for (int k = 0; k < states; ++k) {
    const auto js = random_joint_state(rng, n);
    const auto trick = inverse_dynamics_2(
        model, forward_kinematics_4(model, js, true), {}, GravityMode::Trick);
    const auto expl =
        inverse_dynamics_2(model, forward_kinematics_4(model, js, false), {},
                           GravityMode::Explicit);
    diff = std::max({diff, detail::max_abs_diff(trick.Q, expl.Q),
                     detail::max_abs_diff(trick.Qd, expl.Qd),
                     detail::max_abs_diff(trick.Qdd, expl.Qdd)});
  }
  CheckResult r;
  r.name = "gravity trick vs explicit Q, Qd, Qdd";
  r.value = diff;
  r.tolerance = tolerance;
  r.seconds = sw.seconds();
  return r;
}

/// sum Q_i qd_i against dT/dt (central differences of the kinetic energy),
/// gravity and loads off. Residuals are scaled by max(1, |dT/dt|).
inline CheckResult check_power_balance(const RobotModel<double>& model,
                                       const SineTrajectory& traj, int samples,
                                       double duration,
                                       const FdScheme& scheme = {},
                                       double tolerance = 1e-6) {
  detail::Stopwatch sw;
  double worst = 0.0;
  for (double t : check_times(samples, duration)) {
    const auto bk = forward_kinematics_4(model, traj.at(t), false);
    const auto dr = inverse_dynamics_2(model, bk, {}, GravityMode::None);
    const double tdot = central_derivative(
        [&](double s) {
          return kinetic_energy(model,
                                forward_kinematics_4(model, traj.at(s), false));
        },
        t, scheme);
    worst = std::max(worst, power_balance_residual(model, bk, dr, tdot) /
                                std::max(1.0, std::abs(tdot)));
  }
  CheckResult r;
  r.name = "power balance sum(Q qd) = dT/dt";
  r.value = worst;
  r.tolerance = tolerance;
  r.seconds = sw.seconds();
  return r;
}

/// Symmetry and positive definiteness of the generalized mass matrix, plus
/// zero net force at the accelerations M^-1 (-Q(q, qd, 0)).
inline std::vector<CheckResult> check_mass_matrix(
    const RobotModel<double>& model, int states, std::uint64_t seed,
    double symmetry_tolerance = 1e-10, double eom_tolerance = 1e-9) {
  detail::Stopwatch sw;
  Rng rng(seed);
  const int n = model.size();
  double asym = 0.0, min_eig = std::numeric_limits<double>::infinity();
  double eom = 0.0;
  for (int k = 0; k < states; ++k) {
    auto js = random_joint_state(rng, n);
    const MatrixX<double> m = mass_matrix_via_id(model, js.q);
    asym = std::max(asym, (m - m.transpose()).cwiseAbs().maxCoeff());
    const Eigen::SelfAdjointEigenSolver<MatrixX<double>> eig(
        0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());

    js.qdd.setZero();
    const VectorX<double> bias =
        inverse_dynamics_2(model, forward_kinematics_4(model, js, true)).Q;
    js.qdd = m.ldlt().solve(-bias);
    const VectorX<double> net =
        inverse_dynamics_2(model, forward_kinematics_4(model, js, true)).Q;
    eom = std::max(eom, net.cwiseAbs().maxCoeff());
  }
  const double secs = sw.seconds();
  CheckResult sym;
  sym.name = "mass matrix symmetry";
  sym.value = asym;
  sym.tolerance = symmetry_tolerance;
  sym.seconds = secs;
  CheckResult pd;
  pd.name = "mass matrix positive definite";
  // Passes when the smallest eigenvalue is positive.
  pd.value = -min_eig;
  pd.tolerance = 0.0;
  pd.seconds = secs;
  pd.detail = "min eigenvalue " + detail::sci(min_eig);
  CheckResult self;
  self.name = "EOM self-consistency Q(M^-1(-bias)) = 0";
  self.value = eom;
  self.tolerance = eom_tolerance;
  self.seconds = secs;
  return {sym, pd, self};
}

/// Q(l1 + l2) = Q(l1) + Q(l2) - Q(0), also for Qd and Qdd.
inline CheckResult check_load_superposition(const RobotModel<double>& model,
                                            int states, std::uint64_t seed,
                                            double tolerance = 1e-10) {
  detail::Stopwatch sw;
  Rng rng(seed);
  const int n = model.size();
  double diff = 0.0;
  for (int k = 0; k < states; ++k) {
    const auto js = random_joint_state(rng, n);
    const auto bk = forward_kinematics_4(model, js, true);
    const auto l1 = detail::random_loads(rng, n, 5.0);
    const auto l2 = detail::random_loads(rng, n, 5.0);
    auto l12 = l1;
    for (int i = 0; i < n; ++i) {
      l12.bodies[i].W += l2.bodies[i].W;
      l12.bodies[i].Wd += l2.bodies[i].Wd;
      l12.bodies[i].Wdd += l2.bodies[i].Wdd;
    }
    const auto r0 = inverse_dynamics_2(model, bk);
    const auto r1 = inverse_dynamics_2(model, bk, l1);
    const auto r2 = inverse_dynamics_2(model, bk, l2);
    const auto r12 = inverse_dynamics_2(model, bk, l12);
    diff = std::max(
        {diff, detail::max_abs_diff(r12.Q, VectorX<double>(r1.Q + r2.Q - r0.Q)),
         detail::max_abs_diff(r12.Qd, VectorX<double>(r1.Qd + r2.Qd - r0.Qd)),
         detail::max_abs_diff(r12.Qdd,
                              VectorX<double>(r1.Qdd + r2.Qdd - r0.Qdd))});
  }
  CheckResult r;
  r.name = "applied-load superposition";
  r.value = diff;
  r.tolerance = tolerance;
  r.seconds = sw.seconds();
  return r;
}

/// Parameters of the reference pendulum used by the checks.
struct PendulumSetup {
  double mass = 1.3;
  double length = 0.45;
  double theta_zz = 0.021;
  double g = 9.81;

  RobotModel<double> model() const {
    return pendulum(mass, length, theta_zz, g);
  }
};

/// Spatial (all gravity modes) and body-fixed pendulum forces against the
/// Lagrangian on a 1 s trajectory.
inline CheckResult check_pendulum(int samples, double tolerance = 1e-10) {
  detail::Stopwatch sw;
  const PendulumSetup p;
  const auto model = p.model();
  const SineTrajectory traj{{{1.1, 2.3, 0.4}}};
  double diff = 0.0;
  for (double t : check_times(samples + 1, 1.0 + 1.0 / samples)) {
    const auto js = traj.at(t);
    const auto ref =
        pendulum_lagrangian(p.mass, p.length, p.theta_zz, p.g, js.q(0),
                            js.qd(0), js.qdd(0), js.qddd(0), js.qdddd(0));
    for (GravityMode mode : {GravityMode::Trick, GravityMode::Explicit}) {
      const auto dr = inverse_dynamics_2(
          model, forward_kinematics_4(model, js, mode == GravityMode::Trick),
          {}, mode);
      diff = std::max({diff, std::abs(dr.Q(0) - ref.Q),
                       std::abs(dr.Qd(0) - ref.Qd),
                       std::abs(dr.Qdd(0) - ref.Qdd)});
    }
    const auto bf = inverse_dynamics_bodyfixed_1(model, js);
    diff = std::max({diff, std::abs(bf.Q(0) - ref.Q),
                     std::abs(bf.Qd(0) - ref.Qd)});
  }
  CheckResult r;
  r.name = "1-R pendulum vs Lagrangian";
  r.value = diff;
  r.tolerance = tolerance;
  r.seconds = sw.seconds();
  return r;
}

/// FK -> IK round trip on random well-conditioned states of a 6-joint chain.
/// States whose Jacobian rcond estimate is below `min_rcond` are redrawn.
inline CheckResult check_ik_roundtrip(const RobotModel<double>& model,
                                      int states, std::uint64_t seed,
                                      double min_rcond = 1e-2,
                                      double tolerance = 1e-9) {
  detail::Stopwatch sw;
  Rng rng(seed);
  const int n = model.size();
  ErrorStats err;
  int accepted = 0, rejected = 0;
  while (accepted < states) {
    const auto js = random_joint_state(rng, n);
    const auto bk = forward_kinematics_4(model, js, false);
    const Eigen::PartialPivLU<MatrixX<double>> lu(spatial_jacobian(bk));
    if (lu.rcond() < min_rcond) {
      ++rejected;
      continue;
    }
    const auto& last = bk.bodies.back();
    const EndEffectorState4<double> ee{last.V, last.Vd, last.Vdd, last.Vddd};
    const auto ik = inverse_kinematics_4(model, js.q, ee);
    err.add(ik.joints.qd, js.qd);
    err.add(ik.joints.qdd, js.qdd);
    err.add(ik.joints.qddd, js.qddd);
    err.add(ik.joints.qdddd, js.qdddd);
    ++accepted;
  }
  CheckResult r;
  r.name = "IK round trip (" + std::to_string(states) + " states)";
  r.value = err.relative();
  r.tolerance = tolerance;
  r.seconds = sw.seconds();
  r.detail = std::to_string(rejected) + " near-singular draws skipped";
  return r;
}

/// Km (theta - q) = Q on random inputs, and tau against
/// Mm thetadd + Km (theta - q) with thetadd differentiated numerically from
/// theta(t) on the pendulum.
inline std::vector<CheckResult> check_sea(const RobotModel<double>& model,
                                          int states, std::uint64_t seed,
                                          double identity_tolerance = 1e-12,
                                          double fd_tolerance = 1e-5) {
  detail::Stopwatch sw;
  Rng rng(seed);
  const int n = model.size();
  double identity = 0.0;
  for (int k = 0; k < states; ++k) {
    const auto js = random_joint_state(rng, n);
    const auto dr =
        inverse_dynamics_2(model, forward_kinematics_4(model, js, true));
    SeaParams<double> sea{random_vector(rng, n, 10.0, 200.0),
                          random_vector(rng, n, 0.05, 0.5)};
    const auto m = sea_motor_quantities(js, dr, sea);
    const VectorX<double> q_back =
        (sea.stiffness.array() * (m.theta - js.q).array()).matrix();
    identity = std::max(identity, detail::max_abs_diff(q_back, dr.Q));
  }
  CheckResult id;
  id.name = "SEA identity Km (theta - q) = Q";
  id.value = identity;
  id.tolerance = identity_tolerance;
  id.seconds = sw.seconds();

  detail::Stopwatch sw2;
  const PendulumSetup p;
  const auto pend = p.model();
  const SeaParams<double> sea{VectorX<double>::Constant(1, 100.0),
                              VectorX<double>::Constant(1, 0.1)};
  const SineTrajectory traj{{{0.9, 1.7, 0.3}}};
  auto theta = [&](double t) {
    const auto js = traj.at(t);
    const auto dr =
        inverse_dynamics_2(pend, forward_kinematics_4(pend, js, true));
    return sea_motor_quantities(js, dr, sea).theta(0);
  };
  // Nested first derivatives; a wider step keeps the second difference out
  // of roundoff.
  const FdScheme scheme{Stencil::Central5, 1e-3};
  ErrorStats tau_err;
  for (double t : check_times(100, 1.0)) {
    const auto js = traj.at(t);
    const auto dr =
        inverse_dynamics_2(pend, forward_kinematics_4(pend, js, true));
    const auto m = sea_motor_quantities(js, dr, sea);
    const double thetadd_fd = central_derivative(
        [&](double s) { return central_derivative(theta, s, scheme); }, t,
        scheme);
    const double tau_ref = sea.motor_inertia(0) * thetadd_fd +
                           sea.stiffness(0) * (m.theta(0) - js.q(0));
    tau_err.add(m.tau(0), tau_ref);
  }
  CheckResult fd;
  fd.name = "SEA tau vs motor equation with FD thetadd";
  fd.value = tau_err.relative();
  fd.tolerance = fd_tolerance;
  fd.seconds = sw2.seconds();
  return {id, fd};
}

/// The invariant suite run by `screwdyn verify`.
inline std::vector<CheckResult> run_verification(
    const RobotModel<double>& model) {
  std::vector<CheckResult> out;
  const auto traj = SineTrajectory::Seeded(model.size(), 2024);
  out.push_back(check_group_laws(1000, 1));
  out.push_back(check_derivative_identities(200, 2));
  out.push_back(check_kinematic_derivatives(model, traj, 200, 2.0));
  out.push_back(check_force_derivatives(model, traj, 200, 2.0));
  out.push_back(check_representation_independence(model, 300, 3));
  out.push_back(check_twist_consistency(model, 100, 4));
  out.push_back(check_gravity_modes(model, 300, 5));
  out.push_back(check_load_superposition(model, 100, 6));
  out.push_back(check_power_balance(model, traj, 100, 2.0));
  for (auto& r : check_mass_matrix(model, 50, 7)) out.push_back(r);
  for (auto& r : check_sea(model, 100, 8)) out.push_back(r);
  out.push_back(check_pendulum(100));
  out.push_back(check_ik_roundtrip(six_axis_arm(), 100, 9));
  return out;
}

}  // namespace screwdyn

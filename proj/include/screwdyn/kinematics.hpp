#pragma once

// Fourth-order forward kinematics of the mechanism and the combined
// inverse/forward kinematics of a non-redundant manipulator, both with
// twists in spatial representation.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "screwdyn/errors.hpp"
#include "screwdyn/robot_model.hpp"
#include "screwdyn/screw_algebra.hpp"

namespace screwdyn {

/// Joint trajectory sample: position and its first four time derivatives.
template <typename Scalar = double>
struct JointState4 {
  VectorX<Scalar> q, qd, qdd, qddd, qdddd;

  static JointState4 Zero(int n) {
    JointState4 js;
    js.q = js.qd = js.qdd = js.qddd = js.qdddd = VectorX<Scalar>::Zero(n);
    return js;
  }

  int size() const { return static_cast<int>(q.size()); }

  /// Throws DimensionError unless all five vectors have length n.
  void check_size(int n) const {
    if (q.size() != n || qd.size() != n || qdd.size() != n ||
        qddd.size() != n || qdddd.size() != n) {
      throw DimensionError("joint state does not match chain length " +
                           std::to_string(n));
    }
  }
};

/// Per-body output of the forward recursion.
template <typename Scalar = double>
struct BodyState4 {
  Pose<Scalar> f;  ///< POE partial product exp(Y1 q1)...exp(Yi qi)
  Pose<Scalar> C;  ///< absolute pose f * A
  Twist<Scalar> S, Sd, Sdd, Sddd;  ///< instantaneous joint screw
  Twist<Scalar> V, Vd, Vdd, Vddd;  ///< spatial twist of the body
};

template <typename Scalar = double>
struct BodyKinematics4 {
  std::vector<BodyState4<Scalar>> bodies;
  /// True when the ground acceleration was set to (0, -g).
  bool gravity_trick = false;
  Twist<Scalar> ground_acceleration = Twist<Scalar>::Zero();
  /// Joint state the recursion was evaluated at.
  JointState4<Scalar> joints;

  int size() const { return static_cast<int>(bodies.size()); }
};

/// Prescribed end-effector (terminal body) twist and its derivatives.
template <typename Scalar = double>
struct EndEffectorState4 {
  Twist<Scalar> V = Twist<Scalar>::Zero();
  Twist<Scalar> Vd = Twist<Scalar>::Zero();
  Twist<Scalar> Vdd = Twist<Scalar>::Zero();
  Twist<Scalar> Vddd = Twist<Scalar>::Zero();
};

/// Forward kinematics of the mechanism up to jounce.
///
/// Besides poses and twists this returns the instantaneous joint screws
/// S_i = Ad_{f_i} Y_i and their derivatives, which the inverse dynamics
/// reuse. With `gravity_trick` the ground acceleration is (0, -g) so that
/// gravity enters every body's acceleration and all higher derivatives.
template <typename Scalar>
BodyKinematics4<Scalar> forward_kinematics_4(const RobotModel<Scalar>& model,
                                             const JointState4<Scalar>& js,
                                             bool gravity_trick = false) {
  const int n = model.size();
  js.check_size(n);

  BodyKinematics4<Scalar> bk;
  bk.bodies.resize(n);
  bk.gravity_trick = gravity_trick;
  bk.ground_acceleration =
      gravity_trick ? model.ground_gravity_twist() : Twist<Scalar>::Zero();
  bk.joints = js;

  Pose<Scalar> f_prev;
  Twist<Scalar> v_prev = Twist<Scalar>::Zero();
  Twist<Scalar> vd_prev = bk.ground_acceleration;
  Twist<Scalar> vdd_prev = Twist<Scalar>::Zero();
  Twist<Scalar> vddd_prev = Twist<Scalar>::Zero();

  for (int i = 0; i < n; ++i) {
    const Twist<Scalar>& y = model.joints[i].screw;
    BodyState4<Scalar>& b = bk.bodies[i];
    const Scalar qd = js.qd(i), qdd = js.qdd(i), qddd = js.qddd(i);

    b.f = f_prev * exp_screw(y, js.q(i));
    b.C = b.f * model.bodies[i].reference_pose;
    b.S = adjoint_of(b.f) * y;

    b.V = v_prev + b.S * qd;
    b.Sd = screw_commutator(b.V, b.S);
    b.Vd = vd_prev + b.S * qdd + b.Sd * qd;
    // (ad_Vd + ad_V^2) S, with ad_V S = Sd
    b.Sdd = screw_commutator(b.Vd, b.S) + screw_commutator(b.V, b.Sd);
    b.Vdd = vdd_prev + b.S * qddd + Scalar(2) * b.Sd * qdd + b.Sdd * qd;
    // (ad_Vdd + 2 ad_Vd ad_V + ad_V ad_Vd + ad_V^3) S
    //   = [Vdd, S] + 2 [Vd, Sd] + [V, Sdd]
    b.Sddd = screw_commutator(b.Vdd, b.S) +
             Scalar(2) * screw_commutator(b.Vd, b.Sd) +
             screw_commutator(b.V, b.Sdd);
    b.Vddd = vddd_prev + b.S * js.qdddd(i) + Scalar(3) * b.Sd * qddd +
             Scalar(3) * b.Sdd * qdd + b.Sddd * qd;

    f_prev = b.f;
    v_prev = b.V;
    vd_prev = b.Vd;
    vdd_prev = b.Vdd;
    vddd_prev = b.Vddd;
  }
  return bk;
}

/// 6 x n spatial Jacobian; column j is S_j, so V_n = J qd.
template <typename Scalar>
MatrixX<Scalar> spatial_jacobian(const BodyKinematics4<Scalar>& bk) {
  MatrixX<Scalar> j(6, bk.size());
  for (int i = 0; i < bk.size(); ++i) j.col(i) = bk.bodies[i].S;
  return j;
}

template <typename Scalar = double>
struct InverseKinematics4Result {
  JointState4<Scalar> joints;
  BodyKinematics4<Scalar> kinematics;
  MatrixX<Scalar> jacobian;
  /// Reciprocal condition estimate of the Jacobian.
  Scalar rcond = Scalar(0);
};

/// Reciprocal condition threshold below which the Jacobian is singular.
inline constexpr double kSingularRcond = 1e-10;

/// Joint rates up to fourth order from a prescribed end-effector motion.
///
/// The order-k joint rates are solved from the EE twist derivative of
/// order k-1 after the mechanism's forward kinematics up to order k-1 is
/// known; the Jacobian is factored once. The terminal body's twist and
/// derivatives are the prescribed EE values. Only square (6-joint) chains
/// are handled. The returned kinematics have the gravity trick off.
template <typename Scalar>
InverseKinematics4Result<Scalar> inverse_kinematics_4(
    const RobotModel<Scalar>& model, const VectorX<Scalar>& q,
    const EndEffectorState4<Scalar>& ee) {
  const int n = model.size();
  if (n != 6) {
    throw UnsupportedConfiguration(
        "inverse kinematics needs a square Jacobian (6 joints), got " +
        std::to_string(n) +
        " joints; redundant chains need a joint-space decomposition");
  }
  if (q.size() != n) {
    throw DimensionError("q does not match chain length " + std::to_string(n));
  }

  InverseKinematics4Result<Scalar> out;
  BodyKinematics4<Scalar>& bk = out.kinematics;
  JointState4<Scalar>& js = out.joints;
  js = JointState4<Scalar>::Zero(n);
  js.q = q;
  bk.bodies.resize(n);

  // Anything not yet computed stays NaN, so reading a quantity ahead of
  // its step would poison the result.
  const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
  const Twist<Scalar> nan6 = Twist<Scalar>::Constant(nan);
  for (auto& b : bk.bodies) {
    b.S = b.Sd = b.Sdd = b.Sddd = nan6;
    b.V = b.Vd = b.Vdd = b.Vddd = nan6;
  }
  js.qd.setConstant(nan);
  js.qdd.setConstant(nan);
  js.qddd.setConstant(nan);
  js.qdddd.setConstant(nan);

  // 1) configurations and joint screws
  Pose<Scalar> f_prev;
  for (int i = 0; i < n; ++i) {
    auto& b = bk.bodies[i];
    b.f = f_prev * exp_screw(model.joints[i].screw, q(i));
    b.C = b.f * model.bodies[i].reference_pose;
    b.S = adjoint_of(b.f) * model.joints[i].screw;
    f_prev = b.f;
  }
  out.jacobian = spatial_jacobian(bk);
  const Eigen::PartialPivLU<MatrixX<Scalar>> lu(out.jacobian);
  out.rcond = lu.rcond();
  // An exactly singular factor makes the estimate NaN.
  using std::isfinite;
  if (!isfinite(out.rcond)) out.rcond = Scalar(0);
  if (!(out.rcond >= Scalar(kSingularRcond))) {
    throw SingularityError("Jacobian is singular (rcond estimate " +
                               std::to_string(static_cast<double>(out.rcond)) +
                               ")",
                           static_cast<double>(out.rcond));
  }
  auto& last = bk.bodies[n - 1];
  const Twist<Scalar> zero = Twist<Scalar>::Zero();

  // 2.a) velocity
  js.qd = lu.solve(ee.V);
  // 2.b) mechanism twists and first joint-screw derivatives
  for (int i = 0; i < n - 1; ++i) {
    auto& b = bk.bodies[i];
    b.V = (i == 0 ? zero : bk.bodies[i - 1].V) + b.S * js.qd(i);
    b.Sd = screw_commutator(b.V, b.S);
  }
  last.V = ee.V;
  last.Sd = screw_commutator(last.V, last.S);

  // 3.a) acceleration
  std::vector<Twist<Scalar>> sd_qd(n);
  Twist<Scalar> rhs = ee.Vd;
  for (int i = 0; i < n; ++i) {
    sd_qd[i] = bk.bodies[i].Sd * js.qd(i);
    rhs -= sd_qd[i];
  }
  js.qdd = lu.solve(rhs);
  // 3.b)
  for (int i = 0; i < n - 1; ++i) {
    auto& b = bk.bodies[i];
    b.Vd = (i == 0 ? zero : bk.bodies[i - 1].Vd) + b.S * js.qdd(i) + sd_qd[i];
    b.Sdd = screw_commutator(b.Vd, b.S) + screw_commutator(b.V, b.Sd);
  }
  last.Vd = ee.Vd;
  last.Sdd = screw_commutator(last.Vd, last.S) +
             screw_commutator(last.V, last.Sd);

  // 4.a) jerk
  std::vector<Twist<Scalar>> jerk_terms(n);
  rhs = ee.Vdd;
  for (int i = 0; i < n; ++i) {
    const auto& b = bk.bodies[i];
    jerk_terms[i] = Scalar(2) * b.Sd * js.qdd(i) + b.Sdd * js.qd(i);
    rhs -= jerk_terms[i];
  }
  js.qddd = lu.solve(rhs);
  // 4.b)
  for (int i = 0; i < n - 1; ++i) {
    auto& b = bk.bodies[i];
    b.Vdd = (i == 0 ? zero : bk.bodies[i - 1].Vdd) + b.S * js.qddd(i) +
            jerk_terms[i];
    b.Sddd = screw_commutator(b.Vdd, b.S) +
             Scalar(2) * screw_commutator(b.Vd, b.Sd) +
             screw_commutator(b.V, b.Sdd);
  }
  last.Vdd = ee.Vdd;
  last.Sddd = screw_commutator(last.Vdd, last.S) +
              Scalar(2) * screw_commutator(last.Vd, last.Sd) +
              screw_commutator(last.V, last.Sdd);

  // 5.a) jounce
  std::vector<Twist<Scalar>> jounce_terms(n);
  rhs = ee.Vddd;
  for (int i = 0; i < n; ++i) {
    const auto& b = bk.bodies[i];
    jounce_terms[i] = Scalar(3) * b.Sd * js.qddd(i) +
                      Scalar(3) * b.Sdd * js.qdd(i) + b.Sddd * js.qd(i);
    rhs -= jounce_terms[i];
  }
  js.qdddd = lu.solve(rhs);
  // 5.b)
  for (int i = 0; i < n - 1; ++i) {
    auto& b = bk.bodies[i];
    b.Vddd = (i == 0 ? zero : bk.bodies[i - 1].Vddd) + b.S * js.qdddd(i) +
             jounce_terms[i];
  }
  last.Vddd = ee.Vddd;

  bk.gravity_trick = false;
  bk.ground_acceleration.setZero();
  bk.joints = js;
  return out;
}

}  // namespace screwdyn

#pragma once

// Body-fixed recursive inverse dynamics up to the first time derivative of
// the joint forces. Twists and wrenches are resolved in the body frames and
// carried between neighbouring bodies by relative-pose adjoints; joint
// screws are constant in this representation. Used as an independent
// cross-check of the spatial recursion.

#include <string>
#include <vector>

#include "screwdyn/dynamics.hpp"
#include "screwdyn/errors.hpp"
#include "screwdyn/kinematics.hpp"
#include "screwdyn/robot_model.hpp"
#include "screwdyn/screw_algebra.hpp"

namespace screwdyn {

/// Constant per-joint data of the body-fixed formulation.
template <typename Scalar = double>
struct BodyFixedChain {
  /// Joint screw in its own body frame, Ad_{A_i}^{-1} Y_i.
  std::vector<Twist<Scalar>> joint_screw;
  /// A_{i-1}^{-1} A_i with A_0 = I.
  std::vector<Pose<Scalar>> offset;
  std::vector<Matrix6<Scalar>> inertia;
  Vector3<Scalar> gravity = Vector3<Scalar>::Zero();

  int size() const { return static_cast<int>(joint_screw.size()); }

  static BodyFixedChain FromModel(const RobotModel<Scalar>& model) {
    model.validate();
    BodyFixedChain chain;
    Pose<Scalar> previous;
    for (int i = 0; i < model.size(); ++i) {
      const Pose<Scalar>& a = model.bodies[i].reference_pose;
      chain.joint_screw.push_back(adjoint_inverse_of(a) *
                                  model.joints[i].screw);
      chain.offset.push_back(previous.inverse() * a);
      chain.inertia.push_back(model.bodies[i].inertia);
      previous = a;
    }
    chain.gravity = model.gravity;
    return chain;
  }
};

template <typename Scalar = double>
struct BodyFixedState2 {
  Pose<Scalar> C;         ///< absolute pose of body i
  Pose<Scalar> relative;  ///< C_{i,i-1} = C_i^{-1} C_{i-1}
  Twist<Scalar> Vb, Vbd, Vbdd;
};

template <typename Scalar = double>
struct BodyFixedResult1 {
  VectorX<Scalar> Q, Qd;
  std::vector<Wrench<Scalar>> Wbar, Wbard;  ///< body-fixed interbody wrenches
  std::vector<BodyFixedState2<Scalar>> bodies;
};

/// Joint forces and their rates in body-fixed representation.
///
/// Needs q through its third derivative; qdddd is ignored. Applied loads
/// are given in spatial representation (the same input as the spatial
/// algorithm) and converted per body; their second derivatives are unused.
template <typename Scalar>
BodyFixedResult1<Scalar> inverse_dynamics_bodyfixed_1(
    const BodyFixedChain<Scalar>& chain, const JointState4<Scalar>& js,
    const AppliedLoads2<Scalar>& loads = {},
    GravityMode gravity = GravityMode::Trick) {
  const int n = chain.size();
  if (js.q.size() != n || js.qd.size() != n || js.qdd.size() != n ||
      js.qddd.size() != n) {
    throw DimensionError("joint state does not match chain length " +
                         std::to_string(n));
  }
  if (!loads.bodies.empty() && static_cast<int>(loads.bodies.size()) != n) {
    throw DimensionError("applied loads do not match chain length " +
                         std::to_string(n));
  }
  const Twist<Scalar> g0 =
      make_twist<Scalar>(Vector3<Scalar>::Zero(), -chain.gravity);

  BodyFixedResult1<Scalar> out;
  out.bodies.resize(n);
  out.Q.resize(n);
  out.Qd.resize(n);
  out.Wbar.resize(n);
  out.Wbard.resize(n);

  // Forward pass.
  Pose<Scalar> c_prev;
  Twist<Scalar> v_prev = Twist<Scalar>::Zero();
  Twist<Scalar> vd_prev =
      gravity == GravityMode::Trick ? g0 : Twist<Scalar>::Zero();
  Twist<Scalar> vdd_prev = Twist<Scalar>::Zero();
  std::vector<Matrix6<Scalar>> ad_rel(n);
  for (int i = 0; i < n; ++i) {
    const Twist<Scalar>& x = chain.joint_screw[i];
    BodyFixedState2<Scalar>& b = out.bodies[i];
    const Scalar qd = js.qd(i);
    const Pose<Scalar> step = chain.offset[i] * exp_screw(x, js.q(i));
    b.C = c_prev * step;
    b.relative = step.inverse();
    ad_rel[i] = adjoint_of(b.relative);

    const Twist<Scalar> vd_in = ad_rel[i] * vd_prev;
    b.Vb = ad_rel[i] * v_prev + x * qd;
    b.Vbd = vd_in + qd * screw_commutator(b.Vb, x) + x * js.qdd(i);
    b.Vbdd = ad_rel[i] * vdd_prev - qd * screw_commutator(x, vd_in) +
             js.qdd(i) * screw_commutator(b.Vb, x) +
             qd * screw_commutator(b.Vbd, x) + x * js.qddd(i);

    c_prev = b.C;
    v_prev = b.Vb;
    vd_prev = b.Vbd;
    vdd_prev = b.Vbdd;
  }

  // Backward pass.
  Wrench<Scalar> w = Wrench<Scalar>::Zero();
  Wrench<Scalar> wd = Wrench<Scalar>::Zero();
  for (int i = n - 1; i >= 0; --i) {
    const BodyFixedState2<Scalar>& b = out.bodies[i];
    const Matrix6<Scalar>& mb = chain.inertia[i];
    const Twist<Scalar>& x = chain.joint_screw[i];

    Wrench<Scalar> w_next = Wrench<Scalar>::Zero();
    Wrench<Scalar> wd_next = Wrench<Scalar>::Zero();
    if (i + 1 < n) {
      const Matrix6<Scalar> ad_t = ad_rel[i + 1].transpose();
      w_next = ad_t * w;
      wd_next = ad_t * (wd - js.qd(i + 1) * coad(chain.joint_screw[i + 1], w));
    }
    const Wrench<Scalar> pi = mb * b.Vb;
    w = w_next + mb * b.Vbd - coad(b.Vb, pi);
    wd = wd_next + mb * b.Vbdd - coad(b.Vb, Wrench<Scalar>(mb * b.Vbd)) -
         coad(b.Vbd, pi);

    if (!loads.bodies.empty()) {
      const Matrix6<Scalar> ad_c_t = adjoint_of(b.C).transpose();
      const Wrench<Scalar> wb_app = ad_c_t * loads.bodies[i].W;
      w += wb_app;
      wd += ad_c_t * loads.bodies[i].Wd + coad(b.Vb, wb_app);
    }
    if (gravity == GravityMode::Explicit) {
      const Twist<Scalar> gb = adjoint_inverse_of(b.C) * g0;
      w += mb * gb;
      wd -= mb * screw_commutator(b.Vb, gb);
    }
    out.Wbar[i] = w;
    out.Wbard[i] = wd;
    out.Q(i) = x.dot(w);
    out.Qd(i) = x.dot(wd);
  }
  return out;
}

template <typename Scalar>
BodyFixedResult1<Scalar> inverse_dynamics_bodyfixed_1(
    const RobotModel<Scalar>& model, const JointState4<Scalar>& js,
    const AppliedLoads2<Scalar>& loads = {},
    GravityMode gravity = GravityMode::Trick) {
  return inverse_dynamics_bodyfixed_1(BodyFixedChain<Scalar>::FromModel(model),
                                      js, loads, gravity);
}

}  // namespace screwdyn

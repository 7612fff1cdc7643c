#pragma once

// Second-order inverse dynamics in spatial representation: joint forces Q
// and their first two time derivatives from a fourth-order kinematic state.

#include <string>
#include <vector>

#include "screwdyn/errors.hpp"
#include "screwdyn/kinematics.hpp"
#include "screwdyn/robot_model.hpp"
#include "screwdyn/screw_algebra.hpp"

namespace screwdyn {

/// How gravity enters the inverse dynamics.
///   Trick     kinematics were computed with ground acceleration (0, -g)
///   Explicit  kinematics without the trick; gravity wrenches M^s G and
///             their derivatives are added per body
///   None      no gravity
enum class GravityMode { Trick, Explicit, None };

inline const char* to_string(GravityMode mode) {
  switch (mode) {
    case GravityMode::Trick: return "trick";
    case GravityMode::Explicit: return "explicit";
    case GravityMode::None: return "none";
  }
  return "unknown";
}

/// Applied wrench on one body (spatial, axis coordinates) and its first two
/// time derivatives. Enters the interbody wrench recursion additively.
template <typename Scalar = double>
struct AppliedWrench2 {
  Wrench<Scalar> W = Wrench<Scalar>::Zero();
  Wrench<Scalar> Wd = Wrench<Scalar>::Zero();
  Wrench<Scalar> Wdd = Wrench<Scalar>::Zero();
};

/// Per-body applied wrenches. An empty list means no applied loads.
template <typename Scalar = double>
struct AppliedLoads2 {
  std::vector<AppliedWrench2<Scalar>> bodies;

  static AppliedLoads2 Zero(int n) {
    AppliedLoads2 l;
    l.bodies.resize(n);
    return l;
  }
};

/// Spatial mass matrix and momentum co-screw with three derivatives.
template <typename Scalar = double>
struct BodyMomentum {
  Matrix6<Scalar> Ms = Matrix6<Scalar>::Zero();
  Wrench<Scalar> Pi, Pid, Pidd, Piddd;
};

template <typename Scalar = double>
struct DynamicsResult2 {
  VectorX<Scalar> Q, Qd, Qdd;
  /// Interbody wrenches (spatial) transmitted through joint i.
  std::vector<Wrench<Scalar>> Wbar, Wbard, Wbardd;
  std::vector<BodyMomentum<Scalar>> momentum;

  int size() const { return static_cast<int>(Q.size()); }
};

template <typename Scalar = double>
struct GravityWrench2 {
  Wrench<Scalar> W, Wd, Wdd;
};

/// Gravity wrench M^s G of a body and its first two time derivatives,
/// obtained by differentiating M^s along the body twist:
///
///   dM/dt   = -(M ad_V + ad_V^T M)
///   d2M/dt2 = M ad_V^2 + 2 ad_V^T M ad_V + (ad_V^T)^2 M
///             - M ad_Vd - ad_Vd^T M
template <typename Scalar>
GravityWrench2<Scalar> gravity_wrench_derivatives(const Matrix6<Scalar>& ms,
                                                  const Twist<Scalar>& v,
                                                  const Twist<Scalar>& vd,
                                                  const Twist<Scalar>& g) {
  const Matrix6<Scalar> ad = ad_matrix(v);
  const Matrix6<Scalar> add = ad_matrix(vd);
  const Matrix6<Scalar> m_ad = ms * ad;
  GravityWrench2<Scalar> out;
  out.W = ms * g;
  out.Wd = -(m_ad + ad.transpose() * ms) * g;
  out.Wdd = (m_ad * ad + Scalar(2) * ad.transpose() * m_ad +
             ad.transpose() * ad.transpose() * ms - ms * add -
             add.transpose() * ms) *
            g;
  return out;
}

/// Backward recursion from the terminal body to the base.
///
/// `bk` must come from forward_kinematics_4 (or inverse_kinematics_4) with
/// the gravity trick on exactly when `gravity` is GravityMode::Trick.
template <typename Scalar>
DynamicsResult2<Scalar> inverse_dynamics_2(
    const RobotModel<Scalar>& model, const BodyKinematics4<Scalar>& bk,
    const AppliedLoads2<Scalar>& loads = {},
    GravityMode gravity = GravityMode::Trick) {
  const int n = model.size();
  if (bk.size() != n) {
    throw DimensionError("kinematics do not match chain length " +
                         std::to_string(n));
  }
  if (!loads.bodies.empty() && static_cast<int>(loads.bodies.size()) != n) {
    throw DimensionError("applied loads do not match chain length " +
                         std::to_string(n));
  }
  if (bk.gravity_trick != (gravity == GravityMode::Trick)) {
    throw PipelineError(
        std::string("gravity mode '") + to_string(gravity) +
        "' does not match kinematics computed with the gravity trick " +
        (bk.gravity_trick ? "on" : "off"));
  }
  const Twist<Scalar> g0 = model.ground_gravity_twist();

  DynamicsResult2<Scalar> out;
  out.Q.resize(n);
  out.Qd.resize(n);
  out.Qdd.resize(n);
  out.Wbar.resize(n);
  out.Wbard.resize(n);
  out.Wbardd.resize(n);
  out.momentum.resize(n);

  Wrench<Scalar> w = Wrench<Scalar>::Zero();
  Wrench<Scalar> wd = Wrench<Scalar>::Zero();
  Wrench<Scalar> wdd = Wrench<Scalar>::Zero();

  for (int i = n - 1; i >= 0; --i) {
    const BodyState4<Scalar>& b = bk.bodies[i];
    BodyMomentum<Scalar>& p = out.momentum[i];
    const Twist<Scalar>& v = b.V;
    const Twist<Scalar>& vd = b.Vd;

    p.Ms = spatial_inertia_transform(model.bodies[i].inertia, b.C);
    p.Pi = p.Ms * v;
    p.Pid = p.Ms * vd - coad(v, p.Pi);
    // M (Vdd - ad_V Vd) - 2 ad_V^T Pid - (ad_Vd + ad_V^2)^T Pi
    const Twist<Scalar> v_vd = screw_commutator(v, vd);
    const Wrench<Scalar> coad_v_pi = coad(v, p.Pi);
    p.Pidd = p.Ms * (b.Vdd - v_vd) - Scalar(2) * coad(v, p.Pid) -
             coad(vd, p.Pi) - coad(v, coad_v_pi);
    // M (Vddd - 2 ad_V Vdd + ad_V^2 Vd) - 3 ad_V^T Pidd
    //   - 3 (ad_Vd + ad_V^2)^T Pid
    //   - (ad_Vdd + 2 ad_Vd ad_V + ad_V ad_Vd + ad_V^3)^T Pi
    p.Piddd = p.Ms * (b.Vddd - Scalar(2) * screw_commutator(v, b.Vdd) +
                      screw_commutator(v, v_vd)) -
              Scalar(3) * coad(v, p.Pidd) -
              Scalar(3) * (coad(vd, p.Pid) + coad(v, coad(v, p.Pid))) -
              (coad(b.Vdd, p.Pi) + Scalar(2) * coad(v, coad(vd, p.Pi)) +
               coad(vd, coad_v_pi) + coad(v, coad(v, coad_v_pi)));

    w += p.Pid;
    wd += p.Pidd;
    wdd += p.Piddd;
    if (!loads.bodies.empty()) {
      w += loads.bodies[i].W;
      wd += loads.bodies[i].Wd;
      wdd += loads.bodies[i].Wdd;
    }
    if (gravity == GravityMode::Explicit) {
      const auto grav = gravity_wrench_derivatives(p.Ms, v, vd, g0);
      w += grav.W;
      wd += grav.Wd;
      wdd += grav.Wdd;
    }
    out.Wbar[i] = w;
    out.Wbard[i] = wd;
    out.Wbardd[i] = wdd;

    out.Q(i) = b.S.dot(w);
    out.Qd(i) = b.S.dot(wd) + b.Sd.dot(w);
    out.Qdd(i) = b.S.dot(wdd) + b.Sdd.dot(w) + Scalar(2) * b.Sd.dot(wd);
  }
  return out;
}

/// Stiffnesses and reduced motor inertias of serial elastic actuators.
template <typename Scalar = double>
struct SeaParams {
  VectorX<Scalar> stiffness;      ///< K_m diagonal
  VectorX<Scalar> motor_inertia;  ///< M_m diagonal

  /// Throws DimensionError on a length mismatch and ModelError on
  /// non-positive entries.
  void validate(int n) const {
    if (stiffness.size() != n || motor_inertia.size() != n) {
      throw DimensionError("SEA parameters do not match chain length " +
                           std::to_string(n));
    }
    if (!((stiffness.array() > Scalar(0)).all() &&
          (motor_inertia.array() > Scalar(0)).all())) {
      throw ModelError("SEA stiffness and motor inertia must be positive");
    }
  }
};

template <typename Scalar = double>
struct SeaQuantities {
  VectorX<Scalar> theta, thetadd, tau;
};

/// Motor-side quantities from Q = K_m (theta - q):
///   theta = q + K_m^-1 Q,  thetadd = qdd + K_m^-1 Qdd,
///   tau = M_m thetadd + Q.
template <typename Scalar>
SeaQuantities<Scalar> sea_motor_quantities(const JointState4<Scalar>& js,
                                           const DynamicsResult2<Scalar>& dr,
                                           const SeaParams<Scalar>& params) {
  const int n = js.size();
  params.validate(n);
  if (dr.size() != n) {
    throw DimensionError("dynamics result does not match chain length " +
                         std::to_string(n));
  }
  SeaQuantities<Scalar> out;
  out.theta = js.q + (dr.Q.array() / params.stiffness.array()).matrix();
  out.thetadd = js.qdd + (dr.Qdd.array() / params.stiffness.array()).matrix();
  out.tau = (params.motor_inertia.array() * out.thetadd.array()).matrix() + dr.Q;
  return out;
}

}  // namespace screwdyn

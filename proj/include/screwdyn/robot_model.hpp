#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "screwdyn/errors.hpp"
#include "screwdyn/screw_algebra.hpp"

namespace screwdyn {

enum class JointKind { Revolute, Prismatic, Helical };

inline const char* to_string(JointKind kind) {
  switch (kind) {
    case JointKind::Revolute: return "revolute";
    case JointKind::Prismatic: return "prismatic";
    case JointKind::Helical: return "helical";
  }
  return "unknown";
}

/// Screw coordinates of a 1-DOF joint in the zero-reference configuration.
///
///   revolute   (e, y x e)
///   helical    (e, y x e + h e)
///   prismatic  (0, e)
///
/// `e` must be a unit vector for revolute and helical joints (tolerance
/// 1e-9); `y` is any point on the axis and is ignored for prismatic joints.
template <typename Scalar>
Twist<Scalar> joint_screw(JointKind kind, const Vector3<Scalar>& e,
                          const Vector3<Scalar>& y, Scalar pitch = Scalar(0)) {
  using std::abs;
  if (kind != JointKind::Prismatic && !(abs(e.norm() - Scalar(1)) <= Scalar(1e-9))) {
    throw ModelError(std::string(to_string(kind)) +
                     " joint axis must have unit length");
  }
  switch (kind) {
    case JointKind::Revolute:
      return make_twist<Scalar>(e, y.cross(e));
    case JointKind::Helical:
      return make_twist<Scalar>(e, y.cross(e) + pitch * e);
    case JointKind::Prismatic:
      return make_twist<Scalar>(Vector3<Scalar>::Zero(), e);
  }
  return Twist<Scalar>::Zero();
}

template <typename Scalar = double>
struct JointModel {
  JointKind kind = JointKind::Revolute;
  Vector3<Scalar> axis = Vector3<Scalar>::UnitZ();
  Vector3<Scalar> point = Vector3<Scalar>::Zero();
  Scalar pitch = Scalar(0);
  /// Derived from the fields above by joint_screw().
  Twist<Scalar> screw = make_twist<Scalar>(Vector3<Scalar>::UnitZ(),
                                           Vector3<Scalar>::Zero());

  static JointModel Make(JointKind kind, const Vector3<Scalar>& axis,
                         const Vector3<Scalar>& point = Vector3<Scalar>::Zero(),
                         Scalar pitch = Scalar(0)) {
    using std::abs;
    if (!(abs(axis.norm() - Scalar(1)) <= Scalar(1e-9))) {
      throw ModelError(std::string(to_string(kind)) +
                       " joint axis must have unit length");
    }
    JointModel j;
    j.kind = kind;
    j.axis = axis;
    j.point = kind == JointKind::Prismatic ? Vector3<Scalar>::Zero() : point;
    j.pitch = kind == JointKind::Helical ? pitch : Scalar(0);
    j.screw = joint_screw(kind, axis, j.point, j.pitch);
    return j;
  }

  template <typename Other>
  JointModel<Other> cast() const {
    JointModel<Other> j;
    j.kind = kind;
    j.axis = axis.template cast<Other>();
    j.point = point.template cast<Other>();
    j.pitch = static_cast<Other>(pitch);
    j.screw = screw.template cast<Other>();
    return j;
  }
};

/// Body-fixed mass matrix [[Theta, m d~], [-m d~, m I]] with Theta taken
/// about the body-frame origin and d the COM offset in body coordinates.
template <typename Scalar>
Matrix6<Scalar> body_inertia_matrix(Scalar mass, const Vector3<Scalar>& com,
                                    const Matrix3<Scalar>& inertia) {
  Matrix6<Scalar> mb;
  const Matrix3<Scalar> md = mass * skew(com);
  mb << inertia, md, -md, mass * Matrix3<Scalar>::Identity();
  return mb;
}

template <typename Scalar>
struct InertialParameters {
  Scalar mass;
  Vector3<Scalar> com;
  Matrix3<Scalar> inertia;
};

/// Inverse of body_inertia_matrix(): reads (m, d, Theta) back from the blocks.
template <typename Scalar>
InertialParameters<Scalar> inertial_parameters_of(const Matrix6<Scalar>& mb) {
  InertialParameters<Scalar> p;
  p.mass = mb(3, 3);
  const Matrix3<Scalar> md = mb.template topRightCorner<3, 3>();
  p.com = Vector3<Scalar>(md(2, 1), md(0, 2), md(1, 0)) / p.mass;
  p.inertia = mb.template topLeftCorner<3, 3>();
  return p;
}

template <typename Scalar = double>
struct BodyModel {
  /// Pose of the body frame in the zero configuration.
  Pose<Scalar> reference_pose;
  Scalar mass = Scalar(1);
  Vector3<Scalar> com = Vector3<Scalar>::Zero();
  /// Inertia tensor about the body-frame origin, body coordinates.
  Matrix3<Scalar> inertia_tensor = Matrix3<Scalar>::Identity();
  /// Assembled from the three fields above.
  Matrix6<Scalar> inertia = Matrix6<Scalar>::Identity();

  /// Validates m > 0, Theta symmetric positive definite and the assembled
  /// 6x6 mass matrix positive definite (i.e. a physical COM inertia).
  static BodyModel Make(const Pose<Scalar>& reference_pose, Scalar mass,
                        const Vector3<Scalar>& com,
                        const Matrix3<Scalar>& inertia_tensor) {
    if (!(mass > Scalar(0))) throw ModelError("body mass must be positive");
    if (!com.allFinite() || !inertia_tensor.allFinite()) {
      throw ModelError("body inertial data must be finite");
    }
    using std::abs;
    if ((inertia_tensor - inertia_tensor.transpose()).cwiseAbs().maxCoeff() >
        Scalar(1e-12)) {
      throw ModelError("inertia tensor must be symmetric");
    }
    if (Eigen::LLT<Matrix3<Scalar>>(inertia_tensor).info() != Eigen::Success) {
      throw ModelError("inertia tensor must be positive definite");
    }
    BodyModel b;
    b.reference_pose = reference_pose;
    b.mass = mass;
    b.com = com;
    b.inertia_tensor = inertia_tensor;
    b.inertia = body_inertia_matrix(mass, com, inertia_tensor);
    if (Eigen::LLT<Matrix6<Scalar>>(b.inertia).info() != Eigen::Success) {
      throw ModelError(
          "body mass matrix is not positive definite (inertia about the COM "
          "is not positive definite)");
    }
    return b;
  }

  template <typename Other>
  BodyModel<Other> cast() const {
    BodyModel<Other> b;
    b.reference_pose = reference_pose.template cast<Other>();
    b.mass = static_cast<Other>(mass);
    b.com = com.template cast<Other>();
    b.inertia_tensor = inertia_tensor.template cast<Other>();
    b.inertia = inertia.template cast<Other>();
    return b;
  }
};

/// Serial chain of n rigid bodies, body i moved by joint i.
template <typename Scalar = double>
struct RobotModel {
  std::string name;
  std::vector<JointModel<Scalar>> joints;
  std::vector<BodyModel<Scalar>> bodies;
  /// Gravitational acceleration in the inertial frame.
  Vector3<Scalar> gravity = Vector3<Scalar>(Scalar(0), Scalar(0), Scalar(-9.81));
  /// Set when the inertial data are stand-ins rather than identified values.
  bool inertia_placeholder = false;

  int size() const { return static_cast<int>(joints.size()); }

  /// Ground "acceleration" (0, -g) used by the gravity trick.
  Twist<Scalar> ground_gravity_twist() const {
    return make_twist<Scalar>(Vector3<Scalar>::Zero(), -gravity);
  }

  void validate() const {
    if (joints.empty()) throw ModelError("model must have at least one joint");
    if (joints.size() != bodies.size()) {
      throw ModelError("model has " + std::to_string(joints.size()) +
                       " joints but " + std::to_string(bodies.size()) +
                       " bodies");
    }
  }

  template <typename Other>
  RobotModel<Other> cast() const {
    RobotModel<Other> m;
    m.name = name;
    for (const auto& j : joints) m.joints.push_back(j.template cast<Other>());
    for (const auto& b : bodies) m.bodies.push_back(b.template cast<Other>());
    m.gravity = gravity.template cast<Other>();
    m.inertia_placeholder = inertia_placeholder;
    return m;
  }
};

/// Denavit-Hartenberg parameters of one joint.
template <typename Scalar = double>
struct DhParams {
  Scalar alpha = Scalar(0);
  Scalar a = Scalar(0);
  Scalar d = Scalar(0);
  Scalar theta = Scalar(0);
};

/// A_prev * Rot_z(theta) * Trans_z(d) * Trans_x(a) * Rot_x(alpha).
template <typename Scalar>
Pose<Scalar> dh_reference_config(const Pose<Scalar>& previous,
                                 const DhParams<Scalar>& p) {
  using std::cos;
  using std::sin;
  const Scalar ct = cos(p.theta), st = sin(p.theta);
  const Scalar ca = cos(p.alpha), sa = sin(p.alpha);
  Matrix3<Scalar> r;
  r << ct, -st * ca, st * sa,
       st, ct * ca, -ct * sa,
       Scalar(0), sa, ca;
  const Vector3<Scalar> t(p.a * ct, p.a * st, p.d);
  return previous * Pose<Scalar>(r, t);
}

/// Franka Emika Panda geometry (7 revolute joints, frames located on the
/// joint axes). Inertial data are unit-scale placeholders: m = 1 kg,
/// COM at the frame origin, Theta = 0.01 I kg m^2.
inline RobotModel<double> builtin_panda() {
  constexpr double d1 = 0.333, d3 = 0.316, d5 = 0.384;
  constexpr double a4 = 0.0825, a7 = 0.088;
  using V3 = Vector3<double>;

  const V3 ez(0, 0, 1), ey(0, 1, 0);
  const V3 axes[7] = {ez, ey, ez, -ey, ez, -ey, -ez};
  const V3 points[7] = {
      V3(0, 0, d1),           V3(0, 0, d1),
      V3(0, 0, d1 + d3),      V3(a4, 0, d1 + d3),
      V3(0, 0, d1 + d3 + d5), V3(0, 0, d1 + d3 + d5),
      V3(a7, 0, d1 + d3 + d5)};

  Matrix3<double> rot_x_neg90;  // x->x, y->z, z->-y columns of A2
  rot_x_neg90 << 1, 0, 0,
                 0, 0, 1,
                 0, -1, 0;
  Matrix3<double> rot_x_pos90;
  rot_x_pos90 << 1, 0, 0,
                 0, 0, -1,
                 0, 1, 0;
  const Matrix3<double> rot_x_180 = V3(1, -1, -1).asDiagonal();
  const Matrix3<double> eye = Matrix3<double>::Identity();
  const Pose<double> refs[7] = {
      Pose<double>(eye, V3(0, 0, 0.333)),
      Pose<double>(rot_x_neg90, V3(0, 0, 0.333)),
      Pose<double>(eye, V3(0, 0, 0.649)),
      Pose<double>(rot_x_pos90, V3(0.0825, 0, 0.649)),
      Pose<double>(eye, V3(0, 0, 1.033)),
      Pose<double>(rot_x_pos90, V3(0, 0, 1.033)),
      Pose<double>(rot_x_180, V3(0.088, 0, 1.033))};

  RobotModel<double> model;
  model.name = "panda";
  model.inertia_placeholder = true;
  for (int i = 0; i < 7; ++i) {
    model.joints.push_back(
        JointModel<double>::Make(JointKind::Revolute, axes[i], points[i]));
    model.bodies.push_back(BodyModel<double>::Make(
        refs[i], 1.0, V3::Zero(), 0.01 * Matrix3<double>::Identity()));
  }
  return model;
}

}  // namespace screwdyn

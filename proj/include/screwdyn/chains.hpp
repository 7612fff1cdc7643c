#pragma once

// Small built-in mechanisms used by the verification suite, the benchmark
// and the tests.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "screwdyn/random.hpp"
#include "screwdyn/robot_model.hpp"

namespace screwdyn {

/// Inertia tensor about the body origin from a COM inertia tensor
/// (parallel-axis theorem).
inline Matrix3<double> inertia_about_origin(double mass,
                                            const Vector3<double>& com,
                                            const Matrix3<double>& theta_com) {
  return theta_com +
         mass * (com.squaredNorm() * Matrix3<double>::Identity() -
                 com * com.transpose());
}

/// Planar 1-R pendulum swinging about the inertial z axis through the
/// origin. The COM lies at distance `length` along the body x axis, so q is
/// measured from the x axis; gravity acts along -y:
///
///   Q = (Theta_zz + m l^2) qdd + m g l cos q
///
/// with Theta the COM inertia tensor diag(theta_xx, theta_yy, theta_zz).
inline RobotModel<double> pendulum(double mass, double length,
                                   double theta_zz, double g = 9.81,
                                   double theta_xx = 0.01,
                                   double theta_yy = 0.01) {
  RobotModel<double> model;
  model.name = "pendulum";
  model.gravity = Vector3<double>(0, -g, 0);
  model.joints.push_back(JointModel<double>::Make(
      JointKind::Revolute, Vector3<double>::UnitZ(), Vector3<double>::Zero()));
  const Vector3<double> com(length, 0, 0);
  const Matrix3<double> theta_com =
      Vector3<double>(theta_xx, theta_yy, theta_zz).asDiagonal();
  model.bodies.push_back(BodyModel<double>::Make(
      Pose<double>::Identity(), mass, com,
      inertia_about_origin(mass, com, theta_com)));
  return model;
}

/// Revolute chain built from standard DH parameters: joint i turns about the
/// z axis of frame i-1 and body i carries frame i (both at q = 0). Every
/// body gets m = 1, COM at the frame origin and Theta = 0.01 I until
/// replaced, e.g. by assign_test_inertia().
inline RobotModel<double> chain_from_dh(const std::vector<DhParams<double>>& dh,
                                        const std::string& name = "dh_chain") {
  RobotModel<double> model;
  model.name = name;
  Pose<double> previous;
  for (const auto& p : dh) {
    model.joints.push_back(JointModel<double>::Make(
        JointKind::Revolute, previous.rotation.col(2), previous.position));
    const Pose<double> ref = dh_reference_config(previous, p);
    model.bodies.push_back(BodyModel<double>::Make(
        ref, 1.0, Vector3<double>::Zero(),
        0.01 * Matrix3<double>::Identity()));
    previous = ref;
  }
  return model;
}

/// Replaces all inertial data by seeded, non-degenerate values: masses in
/// [0.5, 3] kg, COM offsets up to 0.1 m and randomly oriented COM inertia
/// tensors with principal moments in [0.005, 0.05] kg m^2 that satisfy the
/// triangle inequality.
inline void assign_test_inertia(RobotModel<double>& model,
                                std::uint64_t seed = 7) {
  Rng rng(seed);
  for (auto& body : model.bodies) {
    const double mass = uniform(rng, 0.5, 3.0);
    const Vector3<double> com = random_vector(rng, 3, -0.1, 0.1);
    Vector3<double> principal;
    do {
      principal = random_vector(rng, 3, 0.005, 0.05);
    } while (2.0 * principal.maxCoeff() >= principal.sum());
    const Matrix3<double> r = random_rotation(rng);
    const Matrix3<double> theta_com =
        r * principal.asDiagonal() * r.transpose();
    // Symmetrize exactly before validation.
    const Matrix3<double> theta =
        inertia_about_origin(mass, com, 0.5 * (theta_com + theta_com.transpose()));
    body = BodyModel<double>::Make(body.reference_pose, mass, com,
                                   0.5 * (theta + theta.transpose()));
  }
  model.inertia_placeholder = false;
}

/// n revolute joints with alternating orthogonal axes and 0.1 m links.
inline RobotModel<double> uniform_chain(int n) {
  std::vector<DhParams<double>> dh(n);
  for (auto& p : dh) {
    p.alpha = std::numbers::pi / 2;
    p.a = 0.1;
    p.d = 0.05;
  }
  auto model = chain_from_dh(dh, "uniform_" + std::to_string(n));
  assign_test_inertia(model, 11);
  return model;
}

/// Six-axis arm with UR5-like DH geometry and seeded inertial data.
inline RobotModel<double> six_axis_arm() {
  constexpr double half_pi = std::numbers::pi / 2;
  const std::vector<DhParams<double>> dh = {
      {half_pi, 0.0, 0.089159, 0.0},  {0.0, -0.425, 0.0, 0.0},
      {0.0, -0.39225, 0.0, 0.0},      {half_pi, 0.0, 0.10915, 0.0},
      {-half_pi, 0.0, 0.09465, 0.0},  {0.0, 0.0, 0.0823, 0.0}};
  auto model = chain_from_dh(dh, "six_axis_arm");
  assign_test_inertia(model, 5);
  return model;
}

/// Panda geometry with seeded test inertia instead of the placeholders.
inline RobotModel<double> panda_with_test_inertia() {
  auto model = builtin_panda();
  assign_test_inertia(model, 3);
  model.name = "panda_test_inertia";
  return model;
}

}  // namespace screwdyn

#pragma once

// Seeded random samples of poses, screws and joint states for property tests
// and the verification suite.

#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "screwdyn/kinematics.hpp"
#include "screwdyn/screw_algebra.hpp"

namespace screwdyn {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline VectorX<double> random_vector(Rng& rng, int n, double lo, double hi) {
  VectorX<double> v(n);
  for (int i = 0; i < n; ++i) v(i) = uniform(rng, lo, hi);
  return v;
}

/// Uniformly distributed rotation (normalized Gaussian quaternion).
inline Matrix3<double> random_rotation(Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::Quaterniond quat;
  do {
    quat.coeffs() << normal(rng), normal(rng), normal(rng), normal(rng);
  } while (quat.norm() < 1e-6);
  return quat.normalized().toRotationMatrix();
}

inline Pose<double> random_pose(Rng& rng, double position_scale = 1.0) {
  return Pose<double>(random_rotation(rng),
                      random_vector(rng, 3, -position_scale, position_scale));
}

inline Twist<double> random_twist(Rng& rng, double scale = 1.0) {
  return random_vector(rng, 6, -scale, scale);
}

/// Joint state with every derivative drawn from [-scale, scale].
inline JointState4<double> random_joint_state(Rng& rng, int n,
                                              double scale = 1.0) {
  JointState4<double> js;
  js.q = random_vector(rng, n, -std::numbers::pi, std::numbers::pi);
  js.qd = random_vector(rng, n, -scale, scale);
  js.qdd = random_vector(rng, n, -scale, scale);
  js.qddd = random_vector(rng, n, -scale, scale);
  js.qdddd = random_vector(rng, n, -scale, scale);
  return js;
}

}  // namespace screwdyn

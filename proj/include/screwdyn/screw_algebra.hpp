#pragma once

// SE(3) / se(3) primitives in the ray/axis coordinate convention used
// throughout the library:
//
//   twist  X = (xi, eta)   angular part first, then the velocity of the
//                          body point coinciding with the frame origin
//   wrench W = (m, f)      moment first, then force
//
// All 6x6 operators are stored dense.

#include <cmath>
#include <limits>

#include <Eigen/Core>
#include <Eigen/Dense>

#include "screwdyn/errors.hpp"

namespace screwdyn {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using Vector6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar>
using Matrix6 = Eigen::Matrix<Scalar, 6, 6>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Screw coordinates in ray order (angular, linear).
template <typename Scalar>
using Twist = Vector6<Scalar>;
/// Co-screw coordinates in axis order (moment, force).
template <typename Scalar>
using Wrench = Vector6<Scalar>;

template <typename Scalar>
Matrix3<Scalar> skew(const Vector3<Scalar>& v) {
  Matrix3<Scalar> m;
  m << Scalar(0), -v.z(), v.y(),
       v.z(), Scalar(0), -v.x(),
       -v.y(), v.x(), Scalar(0);
  return m;
}

template <typename Scalar>
Twist<Scalar> make_twist(const Vector3<Scalar>& angular,
                         const Vector3<Scalar>& linear) {
  Twist<Scalar> x;
  x << angular, linear;
  return x;
}

template <typename Scalar>
Wrench<Scalar> make_wrench(const Vector3<Scalar>& moment,
                           const Vector3<Scalar>& force) {
  Wrench<Scalar> w;
  w << moment, force;
  return w;
}

/// Rigid-body transform: maps body-frame coordinates to the reference frame.
template <typename Scalar = double>
struct Pose {
  Matrix3<Scalar> rotation = Matrix3<Scalar>::Identity();
  Vector3<Scalar> position = Vector3<Scalar>::Zero();

  Pose() = default;
  Pose(const Matrix3<Scalar>& r, const Vector3<Scalar>& p)
      : rotation(r), position(p) {}

  static Pose Identity() { return Pose(); }

  static Pose Translation(const Vector3<Scalar>& p) {
    return Pose(Matrix3<Scalar>::Identity(), p);
  }

  static Pose FromMatrix(const Matrix4<Scalar>& h) {
    return Pose(h.template topLeftCorner<3, 3>(),
                h.template topRightCorner<3, 1>());
  }

  Matrix4<Scalar> matrix() const {
    Matrix4<Scalar> h = Matrix4<Scalar>::Identity();
    h.template topLeftCorner<3, 3>() = rotation;
    h.template topRightCorner<3, 1>() = position;
    return h;
  }

  Pose operator*(const Pose& other) const {
    return Pose(rotation * other.rotation,
                rotation * other.position + position);
  }

  Pose inverse() const {
    const Matrix3<Scalar> rt = rotation.transpose();
    return Pose(rt, -(rt * position));
  }

  Vector3<Scalar> transform_point(const Vector3<Scalar>& p) const {
    return rotation * p + position;
  }

  /// Orthonormality and det = +1 within `tol` per entry.
  bool is_valid(Scalar tol = Scalar(1e-12)) const {
    using std::abs;
    const Matrix3<Scalar> err =
        rotation.transpose() * rotation - Matrix3<Scalar>::Identity();
    return err.cwiseAbs().maxCoeff() <= tol &&
           abs(rotation.determinant() - Scalar(1)) <= tol &&
           position.allFinite();
  }

  template <typename Other>
  Pose<Other> cast() const {
    return Pose<Other>(rotation.template cast<Other>(),
                       position.template cast<Other>());
  }
};

/// exp(Y q) for a screw Y in ray coordinates.
///
/// Rodrigues formula for the rotation block and the usual left-Jacobian
/// ("V matrix") for the translation. Below |omega q| = 1e-8 the
/// coefficients switch to their Taylor expansions.
template <typename Scalar>
Pose<Scalar> exp_screw(const Twist<Scalar>& y, Scalar q) {
  using std::cos;
  using std::sin;
  const Vector3<Scalar> w = y.template head<3>() * q;
  const Vector3<Scalar> u = y.template tail<3>() * q;
  const Scalar theta = w.norm();
  const Matrix3<Scalar> wx = skew(w);
  const Matrix3<Scalar> wx2 = wx * wx;

  Scalar a, b, c;  // sin t / t, (1 - cos t) / t^2, (t - sin t) / t^3
  if (theta < Scalar(1e-8)) {
    const Scalar t2 = theta * theta;
    a = Scalar(1) - t2 / Scalar(6);
    b = Scalar(0.5) - t2 / Scalar(24);
    c = Scalar(1) / Scalar(6) - t2 / Scalar(120);
  } else {
    const Scalar s = sin(theta);
    const Scalar t2 = theta * theta;
    a = s / theta;
    b = (Scalar(1) - cos(theta)) / t2;
    c = (theta - s) / (t2 * theta);
  }
  const Matrix3<Scalar> eye = Matrix3<Scalar>::Identity();
  Pose<Scalar> out;
  out.rotation = eye + a * wx + b * wx2;
  out.position = (eye + b * wx + c * wx2) * u;
  return out;
}

/// Ad_C = [[R, 0], [r~ R, R]]; maps body-fixed screw coordinates to the
/// reference frame of C.
template <typename Scalar>
Matrix6<Scalar> adjoint_of(const Pose<Scalar>& c) {
  Matrix6<Scalar> ad = Matrix6<Scalar>::Zero();
  ad.template topLeftCorner<3, 3>() = c.rotation;
  ad.template bottomRightCorner<3, 3>() = c.rotation;
  ad.template bottomLeftCorner<3, 3>() = skew(c.position) * c.rotation;
  return ad;
}

/// Ad_C^{-1} = Ad_{C^{-1}}, formed directly.
template <typename Scalar>
Matrix6<Scalar> adjoint_inverse_of(const Pose<Scalar>& c) {
  const Matrix3<Scalar> rt = c.rotation.transpose();
  Matrix6<Scalar> ad = Matrix6<Scalar>::Zero();
  ad.template topLeftCorner<3, 3>() = rt;
  ad.template bottomRightCorner<3, 3>() = rt;
  ad.template bottomLeftCorner<3, 3>() = -rt * skew(c.position);
  return ad;
}

/// ad_X = [[xi~, 0], [eta~, xi~]].
template <typename Scalar>
Matrix6<Scalar> ad_matrix(const Twist<Scalar>& x) {
  const Matrix3<Scalar> xi = skew<Scalar>(x.template head<3>());
  Matrix6<Scalar> m = Matrix6<Scalar>::Zero();
  m.template topLeftCorner<3, 3>() = xi;
  m.template bottomRightCorner<3, 3>() = xi;
  m.template bottomLeftCorner<3, 3>() = skew<Scalar>(x.template tail<3>());
  return m;
}

/// Lie bracket [X1, X2] = (xi1 x xi2, eta1 x xi2 + xi1 x eta2) = ad_X1 X2.
template <typename Scalar>
Twist<Scalar> screw_commutator(const Twist<Scalar>& x1,
                               const Twist<Scalar>& x2) {
  const Vector3<Scalar> xi1 = x1.template head<3>();
  const Vector3<Scalar> eta1 = x1.template tail<3>();
  const Vector3<Scalar> xi2 = x2.template head<3>();
  const Vector3<Scalar> eta2 = x2.template tail<3>();
  return make_twist<Scalar>(xi1.cross(xi2), eta1.cross(xi2) + xi1.cross(eta2));
}

/// ad_X^T W without forming the matrix.
template <typename Scalar>
Wrench<Scalar> coad(const Twist<Scalar>& x, const Wrench<Scalar>& w) {
  const Vector3<Scalar> xi = x.template head<3>();
  const Vector3<Scalar> eta = x.template tail<3>();
  const Vector3<Scalar> m = w.template head<3>();
  const Vector3<Scalar> f = w.template tail<3>();
  return make_wrench<Scalar>(-xi.cross(m) - eta.cross(f), -xi.cross(f));
}

template <typename Scalar>
Scalar max_asymmetry(const Matrix6<Scalar>& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

/// Ad_C^{-T} Mb Ad_C^{-1}. Throws ModelError if Mb is not symmetric
/// within 1e-9.
template <typename Scalar>
Matrix6<Scalar> spatial_inertia_transform(const Matrix6<Scalar>& mb,
                                          const Pose<Scalar>& c) {
  if (!(max_asymmetry(mb) <= Scalar(1e-9))) {
    throw ModelError("body inertia matrix is not symmetric");
  }
  const Matrix6<Scalar> adinv = adjoint_inverse_of(c);
  return adinv.transpose() * mb * adinv;
}

}  // namespace screwdyn

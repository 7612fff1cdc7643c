#pragma once

// Loader for the `*.model` JSON format.
//
//   {
//     "name": "panda",                       optional
//     "placeholder": true,                   optional, inertia are stand-ins
//     "gravity": [0, 0, -9.81],              optional, default shown
//     "joints": [ {"kind": "revolute" | "prismatic" | "helical",
//                  "axis": [ex, ey, ez],     unit vector, inertial frame
//                  "point": [x, y, z],       point on the axis (not prismatic)
//                  "pitch": h}, ... ],       helical only
//     "bodies": [ {"reference_pose": {"rotation": [9 numbers, row-major],
//                                     "position": [x, y, z]},
//                  "mass": m,
//                  "com": [dx, dy, dz],      body frame, default 0
//                  "inertia": [xx, yy, zz, xy, xz, yz]}, ... ],
//     "dh": [ {"alpha": .., "a": .., "d": .., "theta": ..}, ... ]
//   }
//
// Reference poses come either from per-body "reference_pose" entries
// (identity when omitted) or from a top-level "dh" list applied
// cumulatively from the identity; a model may not mix the two.

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "screwdyn/errors.hpp"
#include "screwdyn/robot_model.hpp"

namespace screwdyn {

namespace detail {

using nlohmann::json;

inline double number_field(const json& obj, const char* key,
                           const std::string& where) {
  if (!obj.contains(key)) {
    throw ModelError(where + ": missing field '" + key + "'");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ModelError(where + ": field '" + key + "' must be a number");
  }
  return v.get<double>();
}

template <int N>
Eigen::Matrix<double, N, 1> fixed_array(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != N) {
    throw ModelError(where + ": expected an array of " + std::to_string(N) +
                     " numbers");
  }
  Eigen::Matrix<double, N, 1> out;
  for (int i = 0; i < N; ++i) {
    if (!v[i].is_number()) {
      throw ModelError(where + ": element " + std::to_string(i) +
                       " is not a number");
    }
    out(i) = v[i].get<double>();
  }
  if (!out.allFinite()) throw ModelError(where + ": values must be finite");
  return out;
}

template <int N>
Eigen::Matrix<double, N, 1> array_field(const json& obj, const char* key,
                                        const std::string& where) {
  if (!obj.contains(key)) {
    throw ModelError(where + ": missing field '" + key + "'");
  }
  return fixed_array<N>(obj.at(key), where + "." + key);
}

inline JointKind parse_kind(const json& obj, const std::string& where) {
  if (!obj.contains("kind") || !obj.at("kind").is_string()) {
    throw ModelError(where + ": missing string field 'kind'");
  }
  const auto s = obj.at("kind").get<std::string>();
  if (s == "revolute") return JointKind::Revolute;
  if (s == "prismatic") return JointKind::Prismatic;
  if (s == "helical") return JointKind::Helical;
  throw ModelError(where + ": unknown joint kind '" + s + "'");
}

inline JointModel<double> parse_joint(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ModelError(where + ": expected an object");
  const JointKind kind = parse_kind(obj, where);
  const Vector3<double> axis = array_field<3>(obj, "axis", where);
  Vector3<double> point = Vector3<double>::Zero();
  if (kind != JointKind::Prismatic) {
    point = array_field<3>(obj, "point", where);
  }
  double pitch = 0.0;
  if (kind == JointKind::Helical) pitch = number_field(obj, "pitch", where);
  if (std::abs(axis.norm() - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << where << ": axis must have unit length (|axis| = " << axis.norm()
        << ")";
    throw ModelError(msg.str());
  }
  return JointModel<double>::Make(kind, axis, point, pitch);
}

inline Pose<double> parse_pose(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ModelError(where + ": expected an object");
  const auto rot = array_field<9>(obj, "rotation", where);
  const auto pos = array_field<3>(obj, "position", where);
  Matrix3<double> r;
  r << rot(0), rot(1), rot(2), rot(3), rot(4), rot(5), rot(6), rot(7), rot(8);
  Pose<double> pose(r, pos);
  if (!pose.is_valid(1e-9)) {
    throw ModelError(where + ": rotation is not a proper orthonormal matrix");
  }
  return pose;
}

inline BodyModel<double> parse_body(const json& obj, const Pose<double>& ref,
                                    const std::string& where) {
  if (!obj.is_object()) throw ModelError(where + ": expected an object");
  const double mass = number_field(obj, "mass", where);
  Vector3<double> com = Vector3<double>::Zero();
  if (obj.contains("com")) com = array_field<3>(obj, "com", where);
  const auto in = array_field<6>(obj, "inertia", where);
  Matrix3<double> theta;
  theta << in(0), in(3), in(4),
           in(3), in(1), in(5),
           in(4), in(5), in(2);
  try {
    return BodyModel<double>::Make(ref, mass, com, theta);
  } catch (const ModelError& e) {
    throw ModelError(where + ": " + e.what());
  }
}

inline DhParams<double> parse_dh(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ModelError(where + ": expected an object");
  DhParams<double> p;
  p.alpha = number_field(obj, "alpha", where);
  p.a = number_field(obj, "a", where);
  p.d = number_field(obj, "d", where);
  p.theta = number_field(obj, "theta", where);
  return p;
}

}  // namespace detail

/// Parses a model from JSON text. Throws ModelError with a location
/// ("joints[2]", "bodies[0].inertia", ...) on any parse or schema error.
inline RobotModel<double> parse_model(const std::string& text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("model parse error: ") + e.what());
  }
  if (!root.is_object()) throw ModelError("model: top level must be an object");

  RobotModel<double> model;
  if (root.contains("name") && root.at("name").is_string()) {
    model.name = root.at("name").get<std::string>();
  }
  if (root.contains("placeholder")) {
    if (!root.at("placeholder").is_boolean()) {
      throw ModelError("model.placeholder must be a boolean");
    }
    model.inertia_placeholder = root.at("placeholder").get<bool>();
  }
  if (root.contains("gravity")) {
    model.gravity = detail::fixed_array<3>(root.at("gravity"), "gravity");
  }

  if (!root.contains("joints") || !root.at("joints").is_array()) {
    throw ModelError("model: missing array 'joints'");
  }
  if (!root.contains("bodies") || !root.at("bodies").is_array()) {
    throw ModelError("model: missing array 'bodies'");
  }
  const json& joints = root.at("joints");
  const json& bodies = root.at("bodies");
  if (joints.empty()) throw ModelError("model: 'joints' is empty");
  if (joints.size() != bodies.size()) {
    throw ModelError("model: " + std::to_string(joints.size()) +
                     " joints but " + std::to_string(bodies.size()) + " bodies");
  }

  for (std::size_t i = 0; i < joints.size(); ++i) {
    model.joints.push_back(
        detail::parse_joint(joints[i], "joints[" + std::to_string(i) + "]"));
  }

  const bool use_dh = root.contains("dh");
  if (use_dh && (!root.at("dh").is_array() ||
                 root.at("dh").size() != bodies.size())) {
    throw ModelError("model: 'dh' must be an array with one entry per body");
  }
  Pose<double> previous;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const std::string where = "bodies[" + std::to_string(i) + "]";
    Pose<double> ref;
    if (use_dh) {
      if (bodies[i].is_object() && bodies[i].contains("reference_pose")) {
        throw ModelError(where +
                         ": reference_pose given although the model uses 'dh'");
      }
      ref = dh_reference_config(
          previous, detail::parse_dh(root.at("dh")[i],
                                     "dh[" + std::to_string(i) + "]"));
      previous = ref;
    } else if (bodies[i].is_object() && bodies[i].contains("reference_pose")) {
      ref = detail::parse_pose(bodies[i].at("reference_pose"),
                               where + ".reference_pose");
    }
    model.bodies.push_back(detail::parse_body(bodies[i], ref, where));
  }
  model.validate();
  return model;
}

inline RobotModel<double> load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const ModelError& e) {
    throw ModelError(path + ": " + e.what());
  }
}

}  // namespace screwdyn

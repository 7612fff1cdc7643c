#include <cmath>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "screwdyn/chains.hpp"
#include "screwdyn/model_io.hpp"
#include "screwdyn/robot_model.hpp"
#include "test_util.hpp"

using namespace screwdyn;
using V3 = Vector3<double>;
using V6 = Twist<double>;

namespace {

V6 twist(double a, double b, double c, double d, double e, double f) {
  V6 v;
  v << a, b, c, d, e, f;
  return v;
}

Matrix4<double> elementary(const Matrix3<double>& r, const V3& p) {
  Matrix4<double> m = Matrix4<double>::Identity();
  m.topLeftCorner<3, 3>() = r;
  m.topRightCorner<3, 1>() = p;
  return m;
}

const char* kMinimal = R"({
  "joints": [{"kind": "revolute", "axis": [0, 0, 1], "point": [0, 0, 0]}],
  "bodies": [{"mass": 1.0, "inertia": [0.1, 0.1, 0.1, 0, 0, 0]}]
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  if (pos != std::string::npos) s.replace(pos, from.size(), to);
  return s;
}

std::string error_of(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ModelError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(JointScrew, PandaSecondJoint) {
  EXPECT_TRUE(AllNear(joint_screw(JointKind::Revolute, V3(0, 1, 0), V3(0, 0, 0.333)),
                      twist(0, 1, 0, -0.333, 0, 0), 0.0));
}

TEST(JointScrew, PandaFourthJoint) {
  EXPECT_TRUE(AllNear(joint_screw(JointKind::Revolute, V3(0, -1, 0), V3(0.0825, 0, 0.649)),
                      twist(0, -1, 0, 0.649, 0, -0.0825), 0.0));
}

TEST(JointScrew, AxisThroughOrigin) {
  EXPECT_TRUE(AllNear(joint_screw(JointKind::Revolute, V3(0, 0, 1), V3(V3::Zero())),
                      twist(0, 0, 1, 0, 0, 0), 0.0));
}

TEST(JointScrew, HelicalAndPrismatic) {
  EXPECT_TRUE(AllNear(joint_screw(JointKind::Helical, V3(0, 0, 1), V3(1, 0, 0), 0.01),
                      twist(0, 0, 1, 0, -1, 0.01), 1e-16));
  EXPECT_TRUE(AllNear(joint_screw(JointKind::Prismatic, V3(1, 0, 0), V3(5, 5, 5)),
                      twist(0, 0, 0, 1, 0, 0), 0.0));
}

TEST(JointScrew, RejectsNonUnitAxis) {
  EXPECT_THROW(joint_screw(JointKind::Revolute, V3(0, 0, 0.9), V3(V3::Zero())), ModelError);
  EXPECT_THROW(joint_screw(JointKind::Helical, V3(0, 0, 1.1), V3(V3::Zero()), 0.1), ModelError);
  EXPECT_NO_THROW(joint_screw(JointKind::Revolute, V3(0, 0, 1 + 5e-10), V3(V3::Zero())));
}

TEST(DhReferenceConfig, ZeroParametersKeepPreviousPose) {
  const Pose<double> prev(
      Eigen::AngleAxisd(0.7, V3(1, 2, 3).normalized()).toRotationMatrix(), V3(1, 2, 3));
  EXPECT_TRUE(AllNear(dh_reference_config(prev, DhParams<double>{}).matrix(), prev.matrix(), 0.0));
}

TEST(DhReferenceConfig, OffsetAlongOwnZ) {
  Matrix3<double> r;
  r << 1, 0, 0, 0, 0, -1, 0, 1, 0;
  const Pose<double> prev(r, V3(0.1, 0, 0));
  const Pose<double> a = dh_reference_config(prev, DhParams<double>{0, 0, 0.333, 0});
  EXPECT_TRUE(AllNear(a.rotation, r, 0.0));
  EXPECT_TRUE(AllNear(a.position, V3(V3(0.1, 0, 0) + 0.333 * r.col(2)), 1e-16));
}

TEST(DhReferenceConfig, ProductOfElementaryTransforms) {
  const double alpha = std::numbers::pi / 2, a = 0.1, d = 0.2, theta = std::numbers::pi / 3;
  const Matrix3<double> rz = Eigen::AngleAxisd(theta, V3::UnitZ()).toRotationMatrix();
  const Matrix3<double> rx = Eigen::AngleAxisd(alpha, V3::UnitX()).toRotationMatrix();
  const Matrix4<double> expected = elementary(rz, V3(V3::Zero())) *
                                   elementary(Matrix3<double>::Identity(), V3(0, 0, d)) *
                                   elementary(Matrix3<double>::Identity(), V3(a, 0, 0)) *
                                   elementary(rx, V3(V3::Zero()));
  const Pose<double> got = dh_reference_config(Pose<double>::Identity(),
                                               DhParams<double>{alpha, a, d, theta});
  EXPECT_TRUE(AllNear(got.matrix(), expected, 1e-15));
}

TEST(BodyModel, InertiaBlocksAndReadBack) {
  const V3 d(0.01, -0.02, 0.03);
  Matrix3<double> theta;
  theta << 0.05, 0.001, -0.002, 0.001, 0.04, 0.0005, -0.002, 0.0005, 0.03;
  const auto b = BodyModel<double>::Make(Pose<double>::Identity(), 2.0, d, theta);
  Matrix6<double> expected;
  expected << theta, 2.0 * skew(d), -2.0 * skew(d), 2.0 * Matrix3<double>::Identity();
  EXPECT_TRUE(AllNear(b.inertia, expected, 0.0));
  const auto p = inertial_parameters_of(b.inertia);
  EXPECT_DOUBLE_EQ(p.mass, 2.0);
  EXPECT_TRUE(AllNear(p.com, d, 1e-17));
  EXPECT_TRUE(AllNear(p.inertia, theta, 0.0));
}

TEST(BodyModel, RejectsUnphysicalData) {
  const Matrix3<double> eye = 0.01 * Matrix3<double>::Identity();
  const Pose<double> id;
  EXPECT_THROW(BodyModel<double>::Make(id, 0.0, V3::Zero(), eye), ModelError);
  EXPECT_THROW(BodyModel<double>::Make(id, -1.0, V3::Zero(), eye), ModelError);
  Matrix3<double> asym = eye;
  asym(0, 1) = 1e-3;
  EXPECT_THROW(BodyModel<double>::Make(id, 1.0, V3::Zero(), asym), ModelError);
  EXPECT_THROW(BodyModel<double>::Make(id, 1.0, V3::Zero(), Matrix3<double>(-eye)), ModelError);
  // Theta about the origin too small for the COM offset: Mb indefinite.
  EXPECT_THROW(BodyModel<double>::Make(id, 1.0, V3(1, 0, 0), eye), ModelError);
}

TEST(BuiltinPanda, PrintedScrewCoordinates) {
  const auto p = builtin_panda();
  ASSERT_EQ(p.size(), 7);
  const double d1 = 0.333, d3 = 0.316, d5 = 0.384, a4 = 0.0825, a7 = 0.088;
  const V6 expected[7] = {
      twist(0, 0, 1, 0, 0, 0),
      twist(0, 1, 0, -d1, 0, 0),
      twist(0, 0, 1, 0, 0, 0),
      twist(0, -1, 0, d1 + d3, 0, -a4),
      twist(0, 0, 1, 0, 0, 0),
      twist(0, -1, 0, d1 + d3 + d5, 0, 0),
      twist(0, 0, -1, 0, a7, 0)};
  for (int i = 0; i < 7; ++i) {
    EXPECT_TRUE(AllNear(p.joints[i].screw, expected[i], 1e-15)) << "joint " << i + 1;
    EXPECT_TRUE(AllNear(p.joints[i].screw,
                        joint_screw(JointKind::Revolute, p.joints[i].axis, p.joints[i].point),
                        1e-15));
  }
}

TEST(BuiltinPanda, PrintedReferenceConfigurations) {
  const auto p = builtin_panda();
  const auto& a7 = p.bodies[6].reference_pose;
  EXPECT_TRUE(AllNear(a7.position, V3(0.088, 0, 1.033), 1e-15));
  EXPECT_TRUE(AllNear(a7.rotation, Matrix3<double>(V3(1, -1, -1).asDiagonal()), 0.0));
  const auto& a2 = p.bodies[1].reference_pose;
  Matrix3<double> r2;
  r2 << 1, 0, 0, 0, 0, 1, 0, -1, 0;
  EXPECT_TRUE(AllNear(a2.rotation, r2, 0.0));
  EXPECT_TRUE(AllNear(a2.position, V3(0, 0, 0.333), 0.0));
  EXPECT_TRUE(p.inertia_placeholder);
}

TEST(BuiltinPanda, FramesLieOnJointAxes) {
  const auto p = builtin_panda();
  for (int i = 0; i < 7; ++i) {
    const auto& a = p.bodies[i].reference_pose;
    const V3 rel = a.position - p.joints[i].point;
    EXPECT_LE(rel.cross(p.joints[i].axis).norm(), 1e-15) << "body " << i + 1;
    // The joint axis is the body's local z axis (up to sign).
    EXPECT_NEAR(std::abs(a.rotation.col(2).dot(p.joints[i].axis)), 1.0, 1e-15);
  }
}

TEST(BuiltinPanda, ZeroReferenceConvention) {
  const auto p = builtin_panda();
  for (int i = 0; i < 7; ++i) {
    const auto& a = p.bodies[i].reference_pose;
    EXPECT_TRUE(AllNear((exp_screw(p.joints[i].screw, 0.0) * a).matrix(), a.matrix(), 0.0));
  }
}

TEST(LoadModel, MinimalFile) {
  const auto m = parse_model(kMinimal);
  ASSERT_EQ(m.size(), 1);
  EXPECT_TRUE(AllNear(m.bodies[0].reference_pose.matrix(), Matrix4<double>::Identity(), 0.0));
  EXPECT_TRUE(AllNear(m.gravity, V3(0, 0, -9.81), 0.0));
  EXPECT_FALSE(m.inertia_placeholder);
}

TEST(LoadModel, ShippedPandaEqualsBuiltin) {
  const auto file = load_model(std::string(SCREWDYN_MODEL_DIR) + "/panda.model");
  const auto ref = builtin_panda();
  ASSERT_EQ(file.size(), ref.size());
  EXPECT_EQ(file.name, ref.name);
  EXPECT_EQ(file.inertia_placeholder, ref.inertia_placeholder);
  EXPECT_TRUE(AllNear(file.gravity, ref.gravity, 0.0));
  for (int i = 0; i < ref.size(); ++i) {
    EXPECT_EQ(file.joints[i].kind, ref.joints[i].kind);
    EXPECT_TRUE(AllNear(file.joints[i].screw, ref.joints[i].screw, 0.0)) << i;
    EXPECT_TRUE(AllNear(file.bodies[i].reference_pose.matrix(),
                        ref.bodies[i].reference_pose.matrix(), 0.0)) << i;
    EXPECT_TRUE(AllNear(file.bodies[i].inertia, ref.bodies[i].inertia, 0.0)) << i;
  }
}

TEST(LoadModel, NonUnitAxisNamesTheJoint) {
  const std::string text = replace(kMinimal, "[0, 0, 1]", "[0, 0, 0.9]");
  const std::string msg = error_of(text);
  EXPECT_NE(msg.find("joints[0]"), std::string::npos) << msg;
  EXPECT_NE(msg.find("unit length"), std::string::npos) << msg;
}

TEST(LoadModel, SchemaErrors) {
  EXPECT_NE(error_of("{not json").find("parse error"), std::string::npos);
  EXPECT_NE(error_of(replace(kMinimal, "\"mass\": 1.0, ", "")).find("bodies[0]: missing field 'mass'"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kMinimal, "[0.1, 0.1, 0.1, 0, 0, 0]", "[0.1, 0.1, 0.1]")).find("bodies[0].inertia"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kMinimal, "\"revolute\"", "\"ball\"")).find("unknown joint kind"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kMinimal, "[0.1, 0.1, 0.1, 0, 0, 0]", "[-0.1, 0.1, 0.1, 0, 0, 0]")).find("bodies[0]"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"joints": [], "bodies": []})").find("empty"), std::string::npos);
  EXPECT_THROW(load_model("/nonexistent/file.model"), ModelError);
}

TEST(LoadModel, DhReferencePoses) {
  const std::string text = R"({
    "joints": [{"kind": "revolute", "axis": [0, 0, 1], "point": [0, 0, 0]},
               {"kind": "prismatic", "axis": [0, 0, 1]}],
    "bodies": [{"mass": 1.0, "inertia": [0.1, 0.1, 0.1, 0, 0, 0]},
               {"mass": 1.0, "inertia": [0.1, 0.1, 0.1, 0, 0, 0]}],
    "dh": [{"alpha": 1.5707963267948966, "a": 0.1, "d": 0.2, "theta": 0.5},
           {"alpha": 0, "a": 0.3, "d": 0, "theta": 0}]
  })";
  const auto m = parse_model(text);
  const Pose<double> a1 = dh_reference_config(Pose<double>::Identity(),
                                              DhParams<double>{std::numbers::pi / 2, 0.1, 0.2, 0.5});
  const Pose<double> a2 = dh_reference_config(a1, DhParams<double>{0, 0.3, 0, 0});
  EXPECT_TRUE(AllNear(m.bodies[0].reference_pose.matrix(), a1.matrix(), 1e-15));
  EXPECT_TRUE(AllNear(m.bodies[1].reference_pose.matrix(), a2.matrix(), 1e-15));
  EXPECT_EQ(m.joints[1].kind, JointKind::Prismatic);

  const std::string mixed = replace(text, "{\"mass\": 1.0,",
                                    "{\"reference_pose\": {\"rotation\": [1,0,0,0,1,0,0,0,1], "
                                    "\"position\": [0,0,0]}, \"mass\": 1.0,");
  EXPECT_NE(error_of(mixed).find("reference_pose given"), std::string::npos);
}

TEST(LoadModel, RejectsImproperRotation) {
  const std::string text = R"({
    "joints": [{"kind": "revolute", "axis": [0, 0, 1], "point": [0, 0, 0]}],
    "bodies": [{"reference_pose": {"rotation": [1,0,0, 0,1,0, 0,0,-1], "position": [0,0,0]},
                "mass": 1.0, "inertia": [0.1, 0.1, 0.1, 0, 0, 0]}]
  })";
  EXPECT_NE(error_of(text).find("bodies[0].reference_pose"), std::string::npos);
}

TEST(TestChains, PendulumInertia) {
  const auto m = pendulum(2.0, 0.5, 0.03);
  const auto p = inertial_parameters_of(m.bodies[0].inertia);
  EXPECT_DOUBLE_EQ(p.inertia(2, 2), 0.03 + 2.0 * 0.25);
  EXPECT_TRUE(AllNear(p.com, V3(0.5, 0, 0), 1e-16));
}

TEST(TestChains, DhChainJointsSitOnPreviousFrameZ) {
  const auto m = six_axis_arm();
  ASSERT_EQ(m.size(), 6);
  Pose<double> prev;
  for (int i = 0; i < 6; ++i) {
    EXPECT_TRUE(AllNear(m.joints[i].axis, V3(prev.rotation.col(2)), 0.0));
    EXPECT_TRUE(AllNear(m.joints[i].point, prev.position, 0.0));
    prev = m.bodies[i].reference_pose;
  }
  EXPECT_FALSE(m.inertia_placeholder);
}

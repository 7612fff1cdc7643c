#include <algorithm>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "screwdyn/chains.hpp"
#include "screwdyn/csv_io.hpp"
#include "screwdyn/pipeline.hpp"
#include "test_util.hpp"

using namespace screwdyn;
using VX = VectorX<double>;

namespace {

std::string csv_error(const std::string& text) {
  std::istringstream in(text);
  try {
    read_trajectory_csv(in);
  } catch (const CsvError& e) {
    return e.what();
  }
  return "";
}

std::string loads_error(const std::string& text, int dof) {
  std::istringstream in(text);
  try {
    read_loads_csv(in, dof);
  } catch (const CsvError& e) {
    return e.what();
  }
  return "";
}

std::string wrench_cells(const std::string& w) {
  return w + ",0,0,0,0,0,0,0,0,0,0,0,0";
}

}  // namespace

TEST(TrajectoryCsv, HeaderLayout) {
  EXPECT_EQ(trajectory_header(2), "t,q1,q2,qd1,qd2,qdd1,qdd2,qddd1,qddd2,qdddd1,qdddd2");
}

TEST(TrajectoryCsv, RoundTripIsExact) {
  const auto traj = sample_sine(SineTrajectory::Seeded(3, 1), 0.01, 0.1);
  std::stringstream buf;
  write_trajectory_csv(buf, traj);
  const auto back = read_trajectory_csv(buf);
  ASSERT_EQ(back.size(), traj.size());
  ASSERT_EQ(back.dof(), 3);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    EXPECT_EQ(back.times[k], traj.times[k]);
    EXPECT_TRUE(AllNear(back.states[k].qdddd, traj.states[k].qdddd, 0.0));
    EXPECT_TRUE(AllNear(back.states[k].q, traj.states[k].q, 0.0));
  }
}

TEST(TrajectoryCsv, ToleratesWhitespaceAndCrlf) {
  std::istringstream in("t,q1,qd1,qdd1,qddd1,qdddd1\r\n\n 0.5 , 1,2,3,4,+5\r\n");
  const auto traj = read_trajectory_csv(in);
  ASSERT_EQ(traj.size(), 1u);
  EXPECT_EQ(traj.times[0], 0.5);
  EXPECT_EQ(traj.states[0].qdddd(0), 5.0);
}

TEST(TrajectoryCsv, Errors) {
  EXPECT_NE(csv_error("").find("empty"), std::string::npos);
  EXPECT_NE(csv_error("t,q1,qd1\n").find("columns"), std::string::npos);
  EXPECT_NE(csv_error("t,q1,qd1,qdd1,qddd1,jounce1\n").find("expected 'qdddd1'"),
            std::string::npos);
  EXPECT_NE(csv_error("t,q1,qd1,qdd1,qddd1,qdddd1\n").find("no samples"), std::string::npos);
  EXPECT_NE(csv_error("t,q1,qd1,qdd1,qddd1,qdddd1\n0,1,2,3,4\n").find("line 2"),
            std::string::npos);
  EXPECT_NE(csv_error("t,q1,qd1,qdd1,qddd1,qdddd1\n0,1,2,x,4,5\n").find("not a number: 'x'"),
            std::string::npos);
}

TEST(LoadsCsv, ParsesRowsAndWildcards) {
  const std::string text = loads_header() + "\n" +
                           "*,2," + wrench_cells("1,0,0,0,0,0") + "\n" +
                           "1,2," + wrench_cells("0,0,0,0,0,3") + "\n" +
                           "1,2," + wrench_cells("0,0,0,0,0,4") + "\n";
  std::istringstream in(text);
  const auto table = read_loads_csv(in, 2);
  EXPECT_EQ(table.max_sample(), 1);
  EXPECT_FALSE(table.empty());
  const auto s0 = table.at(0);
  ASSERT_EQ(s0.bodies.size(), 2u);
  EXPECT_EQ(s0.bodies[1].W(0), 1.0);
  EXPECT_EQ(s0.bodies[1].W(5), 0.0);
  const auto s1 = table.at(1);
  EXPECT_EQ(s1.bodies[1].W(0), 1.0);
  EXPECT_EQ(s1.bodies[1].W(5), 7.0);
  EXPECT_EQ(s1.bodies[0].W.norm(), 0.0);
  EXPECT_TRUE(LoadsTable(3).at(0).bodies.empty());
}

TEST(LoadsCsv, Errors) {
  EXPECT_NE(loads_error("sample,body\n", 2).find("header"), std::string::npos);
  EXPECT_NE(loads_error(loads_header() + "\n0,3," + wrench_cells("0,0,0,0,0,0") + "\n", 2)
                .find("outside 1..2"),
            std::string::npos);
  EXPECT_NE(loads_error(loads_header() + "\n-1,1," + wrench_cells("0,0,0,0,0,0") + "\n", 2)
                .find("sample"),
            std::string::npos);
  EXPECT_NE(loads_error(loads_header() + "\n0,1,0,0\n", 2).find("columns"), std::string::npos);
}

TEST(Pipeline, SampleSineGrid) {
  const auto s = sample_sine(SineTrajectory::Seeded(2, 3), 0.1, 1.0);
  ASSERT_EQ(s.size(), 11u);
  EXPECT_DOUBLE_EQ(s.times.back(), 1.0);
  EXPECT_THROW(sample_sine(SineTrajectory::Seeded(2, 3), 0.0, 1.0), UsageError);
  EXPECT_THROW(sample_sine(SineTrajectory::Seeded(2, 3), 0.1, -1.0), UsageError);
}

TEST(Pipeline, OutputShape) {
  const auto model = builtin_panda();
  const auto traj = sample_sine(SineTrajectory::Seeded(7, 2), 0.05, 0.2);
  const auto rows = run_pipeline(model, traj, LoadsTable(7), RunOptions{});
  std::stringstream out;
  write_run_csv(out, rows, 7, false);
  std::string line;
  std::getline(out, line);
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 21);
  EXPECT_EQ(line.substr(0, 8), "t,Q1,Q2,");
  int data_lines = 0;
  while (std::getline(out, line)) {
    ++data_lines;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 21);
  }
  EXPECT_EQ(data_lines, 5);
}

TEST(Pipeline, ZeroAmplitudeWithoutGravityGivesZeros) {
  auto model = builtin_panda();
  SineTrajectory still;
  still.joints.assign(7, SineJoint{0.0, 1.0, 0.0});
  RunOptions options;
  options.gravity = GravityMode::None;
  for (const auto& row : run_pipeline(model, sample_sine(still, 0.1, 0.5), LoadsTable(7), options)) {
    EXPECT_TRUE(AllNear(row.Q, VX(VX::Zero(7)), 0.0));
    EXPECT_TRUE(AllNear(row.Qdd, VX(VX::Zero(7)), 0.0));
  }
}

TEST(Pipeline, RepresentationsAgree) {
  const auto model = panda_with_test_inertia();
  const auto traj = sample_sine(SineTrajectory::Seeded(7, 8), 0.02, 0.5);
  LoadsTable loads(7);
  AppliedWrench2<double> w;
  w.W << 0.1, 0, 0, 0, 0, -20;
  w.Wd << 0, 0, 0, 1, 0, 0;
  loads.add(-1, 6, w);
  loads.add(3, 2, w);
  for (GravityMode mode : {GravityMode::Trick, GravityMode::Explicit, GravityMode::None}) {
    RunOptions spatial, body;
    spatial.gravity = body.gravity = mode;
    body.representation = Representation::BodyFixed;
    const auto a = run_pipeline(model, traj, loads, spatial);
    const auto b = run_pipeline(model, traj, loads, body);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_TRUE(AllNear(a[k].Q, b[k].Q, 1e-10));
      EXPECT_TRUE(AllNear(a[k].Qd, b[k].Qd, 1e-10));
      EXPECT_EQ(b[k].Qdd.size(), 0);
    }
  }
}

TEST(Pipeline, SeaColumnsAndErrors) {
  const auto model = pendulum(1.0, 0.5, 0.02);
  const auto traj = sample_sine(SineTrajectory{{{0.5, 1.0, 0.0}}}, 0.1, 0.3);
  RunOptions options;
  options.sea = SeaParams<double>{VX::Constant(1, 50.0), VX::Constant(1, 0.1)};
  const auto rows = run_pipeline(model, traj, LoadsTable(1), options);
  for (const auto& row : rows) {
    EXPECT_NEAR(50.0 * (row.theta(0) - traj.states[&row - rows.data()].q(0)), row.Q(0), 1e-12);
  }
  std::stringstream out;
  write_run_csv(out, rows, 1, true);
  std::string header;
  std::getline(out, header);
  EXPECT_EQ(header, "t,Q1,Qd1,Qdd1,theta1,tau1");

  options.representation = Representation::BodyFixed;
  EXPECT_THROW(run_pipeline(model, traj, LoadsTable(1), options), UsageError);
  LoadsTable late(1);
  late.add(10, 0, AppliedWrench2<double>{});
  EXPECT_THROW(run_pipeline(model, traj, late, RunOptions{}), DimensionError);
  EXPECT_THROW(run_pipeline(builtin_panda(), traj, LoadsTable(7), RunOptions{}), DimensionError);
}

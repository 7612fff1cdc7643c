// Joint forces and their first two time derivatives of the Panda arm at one
// sample of a sinusoidal trajectory, computed with the spatial recursion and
// cross-checked against the body-fixed one.

#include <cmath>
#include <cstdio>
#include <string>

#include "screwdyn/screwdyn.hpp"

int main(int argc, char** argv) {
  using namespace screwdyn;
  const std::string path =
      argc > 1 ? argv[1] : std::string(SCREWDYN_MODEL_DIR) + "/panda.model";
  const RobotModel<double> model = load_model(path);

  const SineTrajectory traj = SineTrajectory::Seeded(model.size(), 42);
  const JointState4<double> js = traj.at(0.25);

  const BodyKinematics4<double> bk = forward_kinematics_4(model, js, true);
  const DynamicsResult2<double> dr = inverse_dynamics_2(model, bk);
  const auto bf = inverse_dynamics_bodyfixed_1(model, js);

  std::printf("%-6s %14s %14s %14s %12s\n", "joint", "Q", "Qd", "Qdd",
              "|dQ| bodyfix");
  for (int i = 0; i < model.size(); ++i) {
    std::printf("%-6d %14.6f %14.6f %14.6f %12.2e\n", i + 1, dr.Q(i),
                dr.Qd(i), dr.Qdd(i), std::abs(dr.Q(i) - bf.Q(i)));
  }
  const auto& ee = bk.bodies.back();
  std::printf("terminal body jounce:");
  for (int k = 0; k < 6; ++k) std::printf(" %s", format_double(ee.Vddd(k)).c_str());
  std::printf("\n");
  return 0;
}

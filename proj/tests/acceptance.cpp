// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "screwdyn/screwdyn.hpp"

namespace {

using namespace screwdyn;

int failures = 0;

void report(int id, const std::string& title, const std::vector<CheckResult>& parts) {
  bool ok = true;
  for (const auto& p : parts) ok = ok && p.passed();
  if (!ok) ++failures;
  std::printf("AC%-2d %s  %s\n", id, ok ? "PASS" : "FAIL", title.c_str());
  for (const auto& p : parts) std::printf("       %s\n", format_check(p).c_str());
  std::fflush(stdout);
}

/// Qdd against the second central difference of Q (nested five-point
/// stencils; the wider step keeps roundoff out of the second difference).
CheckResult qdd_from_q(const RobotModel<double>& model, const SineTrajectory& traj,
                       int samples, double duration) {
  const FdScheme scheme{Stencil::Central5, 1e-3};
  auto q_of = [&](double t) {
    return VectorX<double>(
        inverse_dynamics_2(model, forward_kinematics_4(model, traj.at(t), true)).Q);
  };
  ErrorStats err;
  for (double t : check_times(samples, duration)) {
    const auto exact =
        inverse_dynamics_2(model, forward_kinematics_4(model, traj.at(t), true));
    const VectorX<double> fd = central_derivative(
        [&](double s) { return VectorX<double>(central_derivative(q_of, s, scheme)); }, t,
        scheme);
    err.add(fd, exact.Qdd);
  }
  CheckResult r;
  r.name = "Qdd vs second FD of Q";
  r.value = err.relative();
  r.tolerance = 1e-5;
  return r;
}

}  // namespace

int main() {
  const RobotModel<double> panda = panda_with_test_inertia();
  const RobotModel<double> panda_placeholder = builtin_panda();
  const SineTrajectory traj = SineTrajectory::Seeded(panda.size(), 2024);
  const FdScheme five{Stencil::Central5, 1e-4};

  report(1, "Lie-group laws, 1000 pose pairs, < 1e-11, < 1 s",
         {check_group_laws(1000, 101, 1e-11, 1.0)});

  report(2, "Ad, Ad^-1, Ms derivative identities vs central-5 FD (h = 1e-4), < 1e-6",
         {check_derivative_identities(1000, 102, five, 1e-6)});

  report(3, "Panda S, V derivatives to third order vs FD, 1000 samples, < 1e-5, < 5 s",
         {check_kinematic_derivatives(panda, traj, 1000, 2.0, five, 1e-5, 5.0)});

  report(4, "6-DOF FK -> IK round trip, 100 states, < 1e-9",
         {check_ik_roundtrip(six_axis_arm(), 100, 104, 1e-2, 1e-9)});

  report(5, "1-R pendulum Q, Qd, Qdd vs Lagrangian over 1 s, < 1e-10 absolute",
         {check_pendulum(1000, 1e-10)});

  report(6, "spatial vs body-fixed Q, Qd on 1000 random Panda states, < 1e-10",
         {check_representation_independence(panda, 1000, 106, 1e-10),
          check_representation_independence(panda_placeholder, 1000, 206, 1e-10)});

  report(7, "gravity trick vs explicit gravity Q, Qd, Qdd, < 1e-10",
         {check_gravity_modes(panda, 1000, 107, 1e-10),
          check_gravity_modes(panda_placeholder, 1000, 207, 1e-10)});

  report(8, "Qd, Qdd vs central-5 FD of Q along a seeded trajectory, < 1e-5",
         {check_force_derivatives(panda, traj, 500, 2.0, five, 1e-5),
          qdd_from_q(panda, traj, 200, 2.0)});

  {
    auto mm = check_mass_matrix(panda, 200, 109, 1e-10);
    std::vector<CheckResult> parts = {check_power_balance(panda, traj, 500, 2.0, five, 1e-6)};
    parts.insert(parts.end(), mm.begin(), mm.end());
    report(9, "power balance < 1e-6; mass matrix symmetric (1e-10) and positive definite",
           parts);
  }

  {
    const ScalingReport sweep = bench_scaling(default_scaling_sizes(), 2000);
    const bool ok = sweep.spatial_slope >= 0.8 && sweep.spatial_slope <= 1.3 &&
                    sweep.bodyfixed_slope >= 0.8 && sweep.bodyfixed_slope <= 1.3;
    if (!ok) ++failures;
    std::printf("AC10 %s  O(n) scaling: log-time vs log-n slope in [0.8, 1.3], n = 2..64\n",
                ok ? "PASS" : "FAIL");
    std::printf("       spatial slope %.3f, body-fixed slope %.3f\n", sweep.spatial_slope,
                sweep.bodyfixed_slope);
    for (const auto& p : sweep.points) {
      std::printf("       n = %2d  spatial %9.3f us  body-fixed %9.3f us  ratio %.3f\n", p.dof,
                  p.spatial.min_seconds * 1e6, p.bodyfixed.min_seconds * 1e6,
                  p.spatial.min_seconds / p.bodyfixed.min_seconds);
    }
    std::printf("       (the spatial/body-fixed ratio is reported, not asserted)\n");
    std::fflush(stdout);
  }

  {
    const auto sea = check_sea(panda, 1000, 111, 1e-12, 1e-5);
    report(11, "SEA: Km (theta - q) = Q < 1e-12; tau with FD thetadd < 1e-5", sea);
  }

  std::printf("%s: %d of 11 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

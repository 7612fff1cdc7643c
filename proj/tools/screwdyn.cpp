// screwdyn command-line front end.
//
//   screwdyn run    --model M (--traj F | --sine "a,w,phi;..." --dt DT --duration T)
//                   [--rep spatial|bodyfixed] [--gravity trick|explicit|none]
//                   [--loads F] [--sea "km,mm;..."] [--out F]
//   screwdyn verify [--model M]
//   screwdyn bench  [--n N | --model M] [--repeats R]
//
// Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "screwdyn/screwdyn.hpp"

namespace {

using namespace screwdyn;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": not a number: '" + text + "'");
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used != text.size() || !std::isfinite(v)) {
    throw UsageError(what + ": not a number: '" + text + "'");
  }
  return v;
}

/// "a,b,c;a,b,c;..." -> rows of `width` numbers.
std::vector<std::vector<double>> parse_groups(const std::string& text,
                                              std::size_t width,
                                              const std::string& flag) {
  std::vector<std::vector<double>> rows;
  for (const auto& group : split(text, ';')) {
    const auto fields = split(group, ',');
    if (fields.size() != width) {
      throw UsageError(flag + ": each joint needs " + std::to_string(width) +
                       " comma-separated values, got '" + group + "'");
    }
    std::vector<double> row;
    for (const auto& f : fields) row.push_back(parse_number(f, flag));
    rows.push_back(row);
  }
  return rows;
}

SineTrajectory parse_sine(const std::string& text) {
  SineTrajectory traj;
  for (const auto& r : parse_groups(text, 3, "--sine")) {
    traj.joints.push_back({r[0], r[1], r[2]});
  }
  return traj;
}

SeaParams<double> parse_sea(const std::string& text, int n) {
  const auto rows = parse_groups(text, 2, "--sea");
  if (static_cast<int>(rows.size()) != n) {
    throw UsageError("--sea: expected " + std::to_string(n) +
                     " joints, got " + std::to_string(rows.size()));
  }
  SeaParams<double> p{VectorX<double>(n), VectorX<double>(n)};
  for (int i = 0; i < n; ++i) {
    p.stiffness(i) = rows[i][0];
    p.motor_inertia(i) = rows[i][1];
  }
  try {
    p.validate(n);
  } catch (const Error& e) {
    throw UsageError(std::string("--sea: ") + e.what());
  }
  return p;
}

struct RunArgs {
  std::string model, traj, sine, loads, sea, out;
  double dt = 0.0, duration = 0.0;
  std::string rep = "spatial";
  std::string gravity = "trick";
};

int cmd_run(const RunArgs& a) {
  const RobotModel<double> model = load_model(a.model);
  const int n = model.size();

  TrajectorySamples traj;
  if (!a.traj.empty()) {
    std::ifstream in(a.traj);
    if (!in) throw UsageError("cannot open trajectory file '" + a.traj + "'");
    traj = read_trajectory_csv(in);
  } else {
    const SineTrajectory sine = parse_sine(a.sine);
    if (sine.size() != n) {
      throw UsageError("--sine: expected " + std::to_string(n) +
                       " joints, got " + std::to_string(sine.size()));
    }
    traj = sample_sine(sine, a.dt, a.duration);
  }

  RunOptions options;
  options.representation =
      a.rep == "bodyfixed" ? Representation::BodyFixed : Representation::Spatial;
  static const std::map<std::string, GravityMode> modes = {
      {"trick", GravityMode::Trick},
      {"explicit", GravityMode::Explicit},
      {"none", GravityMode::None}};
  options.gravity = modes.at(a.gravity);
  if (!a.sea.empty()) {
    if (options.representation == Representation::BodyFixed) {
      throw UsageError("--sea needs Qdd, which --rep bodyfixed does not "
                       "compute");
    }
    options.sea = parse_sea(a.sea, n);
  }

  LoadsTable loads(n);
  if (!a.loads.empty()) {
    std::ifstream in(a.loads);
    if (!in) throw UsageError("cannot open loads file '" + a.loads + "'");
    loads = read_loads_csv(in, n);
  }

  const auto rows = run_pipeline(model, traj, loads, options);
  if (a.out.empty() || a.out == "-") {
    write_run_csv(std::cout, rows, n, options.sea.has_value());
    std::cout.flush();
  } else {
    std::ofstream out(a.out);
    if (!out) throw UsageError("cannot write '" + a.out + "'");
    write_run_csv(out, rows, n, options.sea.has_value());
    if (!out) throw Error("failed writing '" + a.out + "'");
  }
  return kExitOk;
}

int cmd_verify(const std::string& model_path) {
  const RobotModel<double> model =
      model_path.empty() ? builtin_panda() : load_model(model_path);
  std::cout << "verify: model '" << model.name << "' (" << model.size()
            << " joints" << (model.inertia_placeholder ? ", placeholder inertia" : "")
            << ")\n";
  int failed = 0;
  for (const auto& r : run_verification(model)) {
    std::cout << format_check(r) << '\n';
    if (!r.passed()) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " check(s) failed" : "all checks passed")
            << '\n';
  return failed ? kExitVerifyFailed : kExitOk;
}

void print_timing(const char* label, const BenchTiming& t) {
  std::printf("  %-26s mean %10.3f us   min %10.3f us\n", label,
              t.mean_seconds * 1e6, t.min_seconds * 1e6);
}

int cmd_bench(int n, const std::string& model_path, int repeats) {
  if (repeats <= 0) throw UsageError("--repeats must be positive");
  if (model_path.empty() && n <= 0) throw UsageError("--n must be positive");
  const RobotModel<double> model =
      model_path.empty() ? uniform_chain(n) : load_model(model_path);
  const BenchReport report = bench_model(model, repeats);
  std::printf("bench: model '%s' (%d joints), %d repeats per recursion\n",
              model.name.c_str(), model.size(), repeats);
  print_timing("spatial (FK4 + ID2)", report.spatial);
  print_timing("body-fixed (ID1)", report.bodyfixed);
  std::printf("  ratio spatial / body-fixed (mean): %.3f\n", report.ratio());

  const ScalingReport sweep = bench_scaling(default_scaling_sizes(), repeats);
  std::printf("scaling sweep over uniform chains (per-call minimum):\n");
  std::printf("  %4s %16s %16s\n", "n", "spatial [us]", "body-fixed [us]");
  for (const auto& p : sweep.points) {
    std::printf("  %4d %16.3f %16.3f\n", p.dof, p.spatial.min_seconds * 1e6,
                p.bodyfixed.min_seconds * 1e6);
  }
  std::printf("  log-log slope: spatial %.3f, body-fixed %.3f\n",
              sweep.spatial_slope, sweep.bodyfixed_slope);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recursive higher-order kinematics and inverse dynamics of "
               "serial manipulators"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Evaluate Q, Qd, Qdd along a trajectory");
  run_cmd->add_option("--model", run.model, "Model file (*.model JSON)")
      ->required();
  auto* traj_opt = run_cmd->add_option("--traj", run.traj, "Trajectory CSV");
  auto* sine_opt = run_cmd->add_option(
      "--sine", run.sine, "Per-joint sinusoid a,w,phi separated by ';'");
  traj_opt->excludes(sine_opt);
  auto* dt_opt = run_cmd->add_option("--dt", run.dt, "Sample interval [s]");
  auto* dur_opt =
      run_cmd->add_option("--duration", run.duration, "Trajectory length [s]");
  sine_opt->needs(dt_opt)->needs(dur_opt);
  dt_opt->needs(sine_opt);
  dur_opt->needs(sine_opt);
  run_cmd->add_option("--rep", run.rep, "Twist representation")
      ->check(CLI::IsMember({"spatial", "bodyfixed"}));
  run_cmd->add_option("--gravity", run.gravity, "Gravity handling")
      ->check(CLI::IsMember({"trick", "explicit", "none"}));
  run_cmd->add_option("--loads", run.loads, "Applied-wrench CSV");
  run_cmd->add_option("--sea", run.sea,
                      "Series elastic actuators km,mm per joint separated by ';'");
  run_cmd->add_option("--out", run.out, "Output CSV (default stdout)");

  std::string verify_model;
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
  verify_cmd->add_option("--model", verify_model,
                         "Model file (default: built-in Panda geometry)");

  int bench_n = 8;
  int bench_repeats = 1000;
  std::string bench_model_path;
  auto* bench_cmd = app.add_subcommand("bench", "Time the recursions");
  auto* n_opt = bench_cmd->add_option("--n", bench_n, "Uniform chain length");
  auto* bm_opt = bench_cmd->add_option("--model", bench_model_path, "Model file");
  n_opt->excludes(bm_opt);
  bench_cmd->add_option("--repeats", bench_repeats, "Calls per recursion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run_cmd) {
      if (run.traj.empty() && run.sine.empty()) {
        throw UsageError("run needs --traj or --sine");
      }
      return cmd_run(run);
    }
    if (*verify_cmd) return cmd_verify(verify_model);
    if (*bench_cmd) return cmd_bench(bench_n, bench_model_path, bench_repeats);
  } catch (const std::exception& e) {
    std::cerr << "screwdyn: error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

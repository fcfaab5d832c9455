// Command-line front end: scene-driven reports and theorem verification.
// Exit codes: 0 all checks passed, 1 a violation was found, 2 input error.

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "isocurve/runner.hpp"
#include "isocurve/version.hpp"

namespace {

struct CliArgs {
  std::string command;
  std::string scene_path;
  isocurve::RunOptions opts;
  bool format_given = false;
  std::string grid_text, at_text, origin_text, theorem_positional;
};

int run_cli(const CliArgs& args) {
  using namespace isocurve;
  RunOptions opts = args.opts;

  if (!args.grid_text.empty()) {
    const auto x = args.grid_text.find('x');
    if (x == std::string::npos) {
      std::cerr << "error: --grid must look like 50x50\n";
      return 2;
    }
    opts.grid = GridSpec{std::stoi(args.grid_text.substr(0, x)),
                         std::stoi(args.grid_text.substr(x + 1))};
  }
  if (!args.at_text.empty()) {
    double u = 0.0, v = 0.0;
    if (std::sscanf(args.at_text.c_str(), "%lf,%lf", &u, &v) != 2) {
      std::cerr << "error: --at must look like 0.5,-0.25\n";
      return 2;
    }
    opts.at = std::make_pair(u, v);
  }
  if (!args.origin_text.empty()) {
    double x = 0.0, y = 0.0, z = 0.0;
    if (std::sscanf(args.origin_text.c_str(), "%lf,%lf,%lf", &x, &y, &z) != 3) {
      std::cerr << "error: --origin must look like 0,0,1\n";
      return 2;
    }
    opts.origin = Vec3(x, y, z);
  }
  if (!args.theorem_positional.empty()) opts.theorem = args.theorem_positional;
  if (opts.mode) {
    if (*opts.mode != "paper" && *opts.mode != "direct" && *opts.mode != "both") {
      std::cerr << "error: --mode must be paper, direct or both\n";
      return 2;
    }
  }

  SceneFile scene;
  try {
    scene = load_scene(args.scene_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  RunReport report;
  try {
    report = run(scene, args.command, opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const bool plain = opts.format == "plain" || (args.command == "plot-data" && !args.format_given);
  if (plain) {
    for (const auto& t : report.tasks)
      if (t.payload.contains("text")) std::cout << t.payload.at("text").get<std::string>();
  } else if (opts.format == "csv") {
    std::cout << serialize_csv(report);
  } else {
    std::cout << serialize_json(report);
  }
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differential geometry of curves on parametric surfaces"};
  app.set_version_flag("--version", std::string(isocurve::kToolName) + " " + isocurve::kVersion);
  app.require_subcommand(1);

  CliArgs args;
  const char* commands[] = {"surface-report", "curve-sweep",    "classify", "isometry-check",
                            "theorem-verify", "plot-data",      "run"};
  const char* descriptions[] = {
      "fundamental forms, normal and Christoffel symbols at a point",
      "Frenet and curvature scalars along a curve",
      "position-vector classification against the Frenet planes",
      "first-form and derivative-identity verification for a pair",
      "deviation identities and invariance checks (3.1, 3.2, 3.5, 3.8, geodesic, asymptotic)",
      "plain columnar data for external plotting",
      "execute the scene's task list"};

  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
    sub->add_option("--scene", args.scene_path, "scene file path")->required();
    sub->add_option_function<std::string>(
        "--format",
        [&args](const std::string& v) {
          args.opts.format = v;
          args.format_given = true;
        },
        "output format: json|csv|plain (plot-data defaults to plain)");

    double tol = 0.0;
    sub->add_option_function<double>(
        "--tol", [&opts = args.opts](double v) { opts.tol = v; },
        "tolerance override for the command's checks");
    (void)tol;
    sub->add_option("--grid", args.grid_text, "verification grid, e.g. 50x50");
    sub->add_option_function<int>(
        "--samples", [&opts = args.opts](int v) { opts.samples = v; },
        "number of parameter samples");
    sub->add_option_function<std::string>(
        "--mode", [&opts = args.opts](const std::string& v) { opts.mode = v; },
        "theorem LHS evaluation: paper|direct|both");
    sub->add_option_function<std::string>(
        "--orientation",
        [&opts = args.opts](const std::string& v) {
          if (v != "flip" && v != "default")
            throw CLI::ValidationError("--orientation", "expected 'flip' or 'default'");
          opts.orientation_flip = v == "flip";
        },
        "target chart orientation: flip|default");
    sub->add_flag_function(
        "--paper-literal",
        [&opts = args.opts](std::int64_t) { opts.paper_literal = true; },
        "use the literal unnormalized-cross-product reading of the normal");
    sub->add_option_function<int>(
        "--order", [&opts = args.opts](int v) { opts.order = v; }, "jet order (2 or 3)");
    sub->add_option_function<double>(
        "--eps-immersion", [](double v) { isocurve::set_default_eps_immersion(v); },
        "immersion threshold on |phi_u x phi_v| (default 1e-10)");
    sub->add_option_function<double>(
        "--eps-kappa", [](double v) { isocurve::set_default_eps_kappa(v); },
        "curvature threshold below which the Frenet frame is undefined (default 1e-9)");
    sub->add_option_function<double>(
        "--eps-speed", [](double v) { isocurve::set_default_eps_speed(v); },
        "unit-speed tolerance (default 1e-6)");
    sub->add_option_function<std::string>(
        "--surface", [&opts = args.opts](const std::string& v) { opts.surface = v; },
        "surface name");
    sub->add_option_function<std::string>(
        "--curve", [&opts = args.opts](const std::string& v) { opts.curve = v; }, "curve name");
    sub->add_option_function<std::string>(
        "--pair", [&opts = args.opts](const std::string& v) { opts.pair = v; }, "pair name");
    sub->add_option_function<double>(
        "--a", [&opts = args.opts](double v) { opts.a = v; }, "tangent coefficient a");
    sub->add_option_function<double>(
        "--b", [&opts = args.opts](double v) { opts.b = v; }, "tangent coefficient b");
    sub->add_option("--at", args.at_text, "surface point 'u,v'");
    sub->add_option("--origin", args.origin_text, "position-vector origin 'x,y,z'");
    if (std::string(commands[i]) == "theorem-verify") {
      sub->add_option_function<std::string>(
          "--theorem", [&opts = args.opts](const std::string& v) { opts.theorem = v; },
          "theorem id: 3.1|3.2|3.5|3.8|geodesic|asymptotic");
      sub->add_option("theorem_id", args.theorem_positional,
                      "theorem id (positional alternative)");
    }
    sub->callback([&args, name = std::string(commands[i])] { args.command = name; });
  }

  CLI11_PARSE(app, argc, argv);
  try {
    return run_cli(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bellvol/estimation.hpp"
#include "bellvol/geometry.hpp"
#include "bellvol/inequalities.hpp"
#include "bellvol/models.hpp"

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegPerRad = 180.0 / kPi;

// exit codes: 0 success, 1 validation failure, 2 usage/parameter error,
// 3 runtime/numerical error
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bellvol::Scenario parse_scenario(const std::string& name) {
  if (name == "chsh") return bellvol::Scenario::chsh();
  if (name == "3322") return bellvol::Scenario::i3322();
  throw UsageError("unknown scenario '" + name + "' (expected chsh or 3322)");
}

bellvol::CorrelationModel parse_model_spec(const std::string& spec,
                                           bool degrees) {
  if (spec == "singlet") return bellvol::singlet_model();
  if (spec == "pr") return bellvol::pr_box_model();
  if (spec.rfind("lambda:", 0) == 0) {
    double lambda = 0.0;
    try {
      lambda = std::stod(spec.substr(7));
    } catch (const std::exception&) {
      throw UsageError("bad model spec '" + spec + "': lambda is not a number");
    }
    if (degrees) lambda /= kDegPerRad;
    try {
      return bellvol::lambda_box_model(lambda);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read model file '" + path + "'");
    std::ostringstream body;
    body << in.rdbuf();
    try {
      return bellvol::load_model(body.str());
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  throw UsageError("bad model spec '" + spec +
                   "' (expected singlet, pr, lambda:<angle>, or file:<path>)");
}

json estimate_to_json(const bellvol::VolumeEstimate& est) {
  return json{{"violations", est.violations}, {"samples", est.samples},
              {"v", est.v},                   {"stderr", est.std_error},
              {"seed", est.seed},             {"scenario", est.scenario},
              {"model", est.model}};
}

void emit_record(const std::string& command, const json& parameters,
                 const json& result,
                 std::chrono::steady_clock::time_point start) {
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  json record{{"command", command},
              {"parameters", parameters},
              {"result", result},
              {"wall_time_seconds", secs}};
  std::cout << record.dump(2) << "\n";
}

std::string format_full(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{
      "Monte Carlo estimation of the volume of violation of Bell "
      "inequalities for correlation models"};
  app.require_subcommand(1);

  std::string model_spec = "singlet";
  std::string scenario_name = "chsh";
  std::uint64_t samples = 0;  // 0 = scenario default
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool degrees = false;
  double tol = 0.01;
  int restarts = 0;  // 0 = scenario default
  int iterations = 0;
  double lambda_min = bellvol::kLambdaMin;
  double lambda_max = bellvol::kLambdaMax;
  int steps = 45;
  std::string out_path;
  std::string reference_spec = "singlet";
  std::string validate_path;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_name, "Bell scenario: chsh or 3322");
    cmd->add_option("--samples", samples,
                    "Monte Carlo samples (default 10^6 for chsh, 10^7 for "
                    "3322)");
    cmd->add_option("--seed", seed, "random stream seed");
    cmd->add_option("--threads", threads,
                    "worker threads (0 = all cores); results are identical "
                    "for any value");
    cmd->add_flag("--degrees", degrees,
                  "interpret angle arguments in degrees instead of radians");
  };

  auto* est_cmd = app.add_subcommand(
      "estimate", "estimate the relative volume of violation of one model");
  est_cmd->add_option("--model", model_spec,
                      "singlet | pr | lambda:<angle> | file:<path>");
  add_common(est_cmd);

  auto* sweep_cmd = app.add_subcommand(
      "sweep",
      "estimate the volume across a lambda-box grid (common random numbers)");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--lambda-min", lambda_min,
                        "grid start (default pi/6)");
  sweep_cmd->add_option("--lambda-max", lambda_max,
                        "grid end (default 4pi/9)");
  sweep_cmd->add_option("--steps", steps, "number of grid points (>= 2)");
  sweep_cmd->add_option("--out", out_path, "path for the lambda,v,stderr table");

  auto* cross_cmd = app.add_subcommand(
      "crossover",
      "find the lambda where the lambda-box volume crosses a reference model");
  cross_cmd->add_option("--reference", reference_spec, "singlet | pr");
  add_common(cross_cmd);
  cross_cmd->add_option("--tol", tol, "bracket width tolerance on lambda");

  auto* max_cmd = app.add_subcommand(
      "maxviol", "search for the maximal value of the Bell functional");
  max_cmd->add_option("--model", model_spec,
                      "singlet | pr | lambda:<angle> | file:<path>");
  add_common(max_cmd);
  max_cmd->add_option("--restarts", restarts, "random restarts");
  max_cmd->add_option("--iterations", iterations,
                      "hill-climbing sweeps per restart");

  auto* val_cmd =
      app.add_subcommand("validate", "check a model file against the schema");
  val_cmd->add_option("file", validate_path, "model file path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  const auto scenario = parse_scenario(scenario_name);
  if (samples == 0) {
    samples = scenario.name == bellvol::ScenarioName::Chsh ? 1000000ULL
                                                           : 10000000ULL;
  }

  if (est_cmd->parsed()) {
    const auto model = parse_model_spec(model_spec, degrees);
    const auto est =
        bellvol::estimate_volume(model, scenario, samples, seed, threads);
    emit_record("estimate",
                json{{"model", model_spec},
                     {"scenario", scenario.label()},
                     {"samples", samples},
                     {"seed", seed},
                     {"threads", threads}},
                estimate_to_json(est), start);
    return 0;
  }

  if (sweep_cmd->parsed()) {
    if (degrees) {
      lambda_min /= kDegPerRad;
      lambda_max /= kDegPerRad;
    }
    if (steps < 2) throw UsageError("sweep needs --steps >= 2");
    if (!(lambda_min < lambda_max) || lambda_min < bellvol::kLambdaMin - 1e-12 ||
        lambda_max > bellvol::kLambdaMax + 1e-12) {
      throw UsageError(
          "sweep range must satisfy pi/6 <= lambda-min < lambda-max <= 4pi/9");
    }
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i) {
      grid[i] = lambda_min +
                (lambda_max - lambda_min) * static_cast<double>(i) /
                    static_cast<double>(steps - 1);
    }
    const auto points = bellvol::sweep_lambda(grid, scenario, samples, seed,
                                              /*common_random_numbers=*/true,
                                              threads);
    json rows = json::array();
    std::ostringstream table;
    table << "lambda,v,stderr\n";
    for (const auto& p : points) {
      table << format_full(p.lambda) << "," << format_full(p.estimate.v) << ","
            << format_full(p.estimate.std_error) << "\n";
      rows.push_back(json{{"lambda", p.lambda},
                          {"v", p.estimate.v},
                          {"stderr", p.estimate.std_error}});
    }
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
      out << table.str();
    } else {
      std::cerr << table.str();
    }
    emit_record("sweep",
                json{{"lambda_min", lambda_min},
                     {"lambda_max", lambda_max},
                     {"steps", steps},
                     {"scenario", scenario.label()},
                     {"samples", samples},
                     {"seed", seed},
                     {"out", out_path}},
                json{{"points", rows}}, start);
    return 0;
  }

  if (cross_cmd->parsed()) {
    if (reference_spec != "singlet" && reference_spec != "pr") {
      throw UsageError("crossover reference must be singlet or pr");
    }
    if (degrees) tol /= kDegPerRad;
    const auto reference = parse_model_spec(reference_spec, degrees);
    const auto result = bellvol::find_crossover(
        [](double lambda) { return bellvol::lambda_box_model(lambda); },
        reference, scenario, bellvol::kLambdaMin, bellvol::kLambdaMax, samples,
        seed, tol, threads);
    emit_record("crossover",
                json{{"reference", reference_spec},
                     {"scenario", scenario.label()},
                     {"samples", samples},
                     {"seed", seed},
                     {"tol", tol}},
                json{{"lambda_star", result.lambda_star},
                     {"lambda_star_degrees", result.lambda_star * kDegPerRad},
                     {"bracket_width", result.bracket_width},
                     {"samples_per_eval", result.samples_per_eval},
                     {"reference", result.reference}},
                start);
    return 0;
  }

  if (max_cmd->parsed()) {
    const auto model = parse_model_spec(model_spec, degrees);
    if (restarts == 0) {
      restarts = scenario.name == bellvol::ScenarioName::Chsh ? 50 : 200;
    }
    if (iterations == 0) {
      iterations = scenario.name == bellvol::ScenarioName::Chsh ? 2000 : 5000;
    }
    const auto result = bellvol::search_max_violation(model, scenario, restarts,
                                                      iterations, seed);
    json angles = json::object();
    const auto& c = result.config;
    const std::vector<std::string> a_names =
        scenario.name == bellvol::ScenarioName::Chsh
            ? std::vector<std::string>{"a", "a'"}
            : std::vector<std::string>{"a", "a'", "a''"};
    const std::size_t n_a = a_names.size();
    // config layout: a, then Alice's free directions, then Bob's
    std::vector<bellvol::Direction> alice{c[0]};
    std::vector<bellvol::Direction> bob;
    if (scenario.name == bellvol::ScenarioName::Chsh) {
      bob = {c[1], c[3]};
      alice.push_back(c[2]);
    } else {
      alice.push_back(c[1]);
      alice.push_back(c[2]);
      bob = {c[3], c[4], c[5]};
    }
    for (std::size_t i = 0; i < n_a; ++i) {
      for (std::size_t j = 0; j < bob.size(); ++j) {
        std::string key = "theta_" + a_names[i] + "b" +
                          std::string(j, '\'');
        angles[key] = bellvol::angle_between(alice[i], bob[j]);
      }
    }
    emit_record("maxviol",
                json{{"model", model_spec},
                     {"scenario", scenario.label()},
                     {"restarts", restarts},
                     {"iterations", iterations},
                     {"seed", seed}},
                json{{"value", result.value},
                     {"pairwise_angles", angles},
                     {"iterations_used", result.iterations}},
                start);
    return 0;
  }

  if (val_cmd->parsed()) {
    std::ifstream in(validate_path);
    if (!in) throw UsageError("cannot read model file '" + validate_path + "'");
    std::ostringstream body;
    body << in.rdbuf();
    json report = json::array();
    int code = 0;
    try {
      const auto model = bellvol::load_model(body.str());
      (void)model;
    } catch (const std::exception& e) {
      code = 1;
      std::istringstream lines(e.what());
      std::string line;
      while (std::getline(lines, line)) {
        if (!line.empty()) report.push_back(line);
      }
    }
    emit_record("validate", json{{"file", validate_path}},
                json{{"valid", code == 0}, {"violations", report}}, start);
    return code;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

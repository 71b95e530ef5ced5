// Command-line front end: train tracks, Lipschitz distances, classification,
// candidate loops and simplex minimization.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "outerspace/classify.hpp"
#include "outerspace/errors.hpp"
#include "outerspace/io.hpp"

namespace os = outerspace;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitIntegrity = 4;
constexpr int kExitOther = 1;

struct Config {
  std::string map_text;
  std::string point;
  std::string point2;
  bool both = false;
  std::vector<double> floors;
  int max_iters = 10000;
  double tol = os::kTolerance;
  bool text = false;
  std::uint64_t seed = 0;
};

void flatten(const os::Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += prefix + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

void emit(const os::Json& report, const Config& cfg) {
  if (cfg.text) {
    std::string out;
    flatten(report, "", out);
    std::cout << out;
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

os::Automorphism require_map(const Config& cfg) {
  if (cfg.map_text.empty()) throw os::ParseError("no automorphism given (use --map)", 0);
  return os::Automorphism::parse(cfg.map_text);
}

int cmd_traintrack(const Config& cfg) {
  const os::TrainTrackRun run = os::find_train_track(require_map(cfg), cfg.max_iters);
  emit(os::traintrack_report(run), cfg);
  return std::holds_alternative<os::NonTerminationCertificate>(run.certificate) ? kExitCap : kExitOk;
}

int cmd_distance(const Config& cfg) {
  if (cfg.point.empty()) throw os::ParseError("distance needs --point", 0);
  const auto x = os::read_point_file(cfg.point);
  if (cfg.point2.empty()) {
    const os::Automorphism phi = require_map(cfg);
    const auto y = os::act(x, phi);
    emit(os::distance_report(x, y, os::displacement(x, phi)), cfg);
    return kExitOk;
  }
  const auto y = os::read_point_file(cfg.point2);
  os::Json report = os::distance_report(x, y, os::sigma(x, y));
  if (cfg.both) report = {{"forward", report}, {"backward", os::distance_report(y, x, os::sigma(y, x))}};
  emit(report, cfg);
  return kExitOk;
}

int cmd_classify(const Config& cfg) {
  os::ClassifyOptions options;
  options.max_iters = cfg.max_iters;
  options.tol = cfg.tol;
  if (!cfg.floors.empty()) options.floors = cfg.floors;
  const os::ClassifyResult result = os::classify(require_map(cfg), options);
  emit(os::classify_report(result), cfg);
  return std::holds_alternative<os::NonTerminationCertificate>(result.run.certificate) ? kExitCap : kExitOk;
}

int cmd_candidates(const Config& cfg) {
  if (cfg.point.empty()) throw os::ParseError("candidates needs --point", 0);
  const auto x = os::read_point_file(cfg.point);
  emit(os::candidates_report(x.graph(), os::candidates(x)), cfg);
  return kExitOk;
}

int cmd_minimize(const Config& cfg) {
  const os::Representative rep = os::rose_representative(require_map(cfg));
  const std::vector<double> floors = cfg.floors.empty() ? std::vector<double>{1e-6} : cfg.floors;
  os::Json runs = os::Json::array();
  for (double floor : floors) {
    runs.push_back(os::simplex_report(rep.graph(), os::min_displacement_on_simplex(rep.map, floor, cfg.tol)));
  }
  emit(floors.size() == 1 ? runs.front() : os::Json{{"floors", runs}}, cfg);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Train tracks and the Lipschitz metric on Outer space"};
  app.require_subcommand(1);
  Config cfg;
  std::string positional;

  const auto add_common = [&](CLI::App* sub) {
    auto* json = sub->add_flag("--json", "JSON output (default)");
    sub->add_flag("--text", cfg.text, "flat key: value output")->excludes(json);
    sub->add_option("--tol", cfg.tol, "relative tolerance for floating comparisons")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
  };
  const auto add_map = [&](CLI::App* sub) {
    sub->add_option("--map", cfg.map_text, "automorphism, e.g. \"a->ab; b->bab\"");
    sub->add_option("automorphism", positional, "automorphism (alternative to --map)");
  };

  auto* traintrack = app.add_subcommand("traintrack", "search for a train track representative");
  add_map(traintrack);
  traintrack->add_option("--max-iters", cfg.max_iters, "round cap")->check(CLI::PositiveNumber);
  add_common(traintrack);

  auto* distance = app.add_subcommand("distance", "Lipschitz distance between points, or displacement under --map");
  distance->add_option("--point", cfg.point, "point file")->check(CLI::ExistingFile);
  distance->add_option("--point2", cfg.point2, "second point file")->check(CLI::ExistingFile);
  distance->add_flag("--both", cfg.both, "report both directions");
  add_map(distance);
  add_common(distance);

  auto* classify = app.add_subcommand("classify", "elliptic / hyperbolic / parabolic evidence");
  add_map(classify);
  classify->add_option("--max-iters", cfg.max_iters, "round cap")->check(CLI::PositiveNumber);
  classify->add_option("--floor", cfg.floors, "simplex floors for the reducible case")->check(CLI::PositiveNumber);
  add_common(classify);

  auto* candidates = app.add_subcommand("candidates", "candidate loops of a point");
  candidates->add_option("--point", cfg.point, "point file")->check(CLI::ExistingFile);
  add_common(candidates);

  auto* minimize = app.add_subcommand("minimize", "minimize displacement over the rose simplex");
  add_map(minimize);
  minimize->add_option("--floor", cfg.floors, "lower bound on edge lengths")->check(CLI::PositiveNumber);
  add_common(minimize);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }
  if (cfg.map_text.empty()) cfg.map_text = positional;

  try {
    if (*traintrack) return cmd_traintrack(cfg);
    if (*distance) return cmd_distance(cfg);
    if (*classify) return cmd_classify(cfg);
    if (*candidates) return cmd_candidates(cfg);
    if (*minimize) return cmd_minimize(cfg);
  } catch (const os::ParseError& e) {
    std::cerr << "parse error at position " << e.position() << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const os::MarkingIntegrityError& e) {
    std::cerr << "marking integrity error: " << e.what() << "\n";
    return kExitIntegrity;
  } catch (const os::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitParse;
  } catch (const os::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOther;
}

// Command-line driver: Riemann fans, simulation runs, stability experiments,
// backward weights and convergence studies for the bottleneck tracking code.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wft/error.hpp"
#include "wft/godunov.hpp"
#include "wft/harness.hpp"

namespace {

using namespace wft;

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name);
  if (!out) throw ConfigError("cannot write " + dir + "/" + name);
  return out;
}

void print_fan(const WaveFan& fan) {
  std::cout << "case " << fan.solver_case << ", sv_speed " << rat_to_string(fan.sv_speed) << " ("
            << to_double(fan.sv_speed) << ")\n";
  if (fan.waves.empty()) std::cout << "  constant state " << rat_to_string(fan.left_state) << "\n";
  for (const Wave& w : fan.waves) {
    const char* kind = w.kind == WaveKind::shock
                           ? "shock"
                           : (w.kind == WaveKind::rarefaction ? "rarefaction" : "nonclassical");
    std::cout << "  " << kind << " (" << rat_to_string(w.left) << " -> " << rat_to_string(w.right)
              << ") speed [" << rat_to_string(w.lo_speed) << ", " << rat_to_string(w.hi_speed)
              << "]\n";
  }
}

int cmd_riemann(const std::string& left, const std::string& right, const std::string& vb,
                const std::string& alpha) {
  ModelParams p = ModelParams::make(rat_from_string(vb), rat_from_string(alpha));
  WaveFan fan = constrained_solve(rat_from_string(left), rat_from_string(right), p);
  print_fan(fan);
  return 0;
}

int cmd_simulate(const std::string& config_path) {
  ExperimentConfig cfg = ExperimentConfig::load(config_path);
  PairRun r = run_one(cfg, cfg.rho0_a, cfg.y0_a);
  auto snaps_csv = open_out(cfg.output_dir, "snapshots.csv");
  write_snapshots_csv(snaps_csv, r.snaps);
  auto events = open_out(cfg.output_dir, "events.jsonl");
  write_events_jsonl(events, r.state.log);

  SolutionReport check = check_solution(r.state, r.snaps, cfg.x_min, cfg.x_max);
  nlohmann::json summary;
  summary["events"] = r.state.log.size();
  summary["fronts_final"] = r.state.fronts.size();
  summary["sv_pos"] = to_double(r.state.sv.pos_at(cfg.horizon));
  summary["carries_ns"] = r.state.sv.carries_ns;
  summary["solution_check_ok"] = check.ok;
  summary["solution_check_failures"] = check.failures;
  auto summary_out = open_out(cfg.output_dir, "summary.json");
  summary_out << summary.dump(2) << "\n";
  std::cout << summary.dump(2) << "\n";
  return check.ok ? 0 : 1;
}

int cmd_stability(const std::string& config_path) {
  ExperimentConfig cfg = ExperimentConfig::load(config_path);
  StabilityReport rep = run_pair(cfg);
  auto out = open_out(cfg.output_dir, "stability_report.json");
  out << rep.to_json().dump(2) << "\n";
  std::cout << rep.to_json().dump(2) << "\n";
  return rep.within_constant ? 0 : 1;
}

int cmd_weights(const std::string& config_path, int trials) {
  ExperimentConfig cfg = ExperimentConfig::load(config_path);
  PairRun r = run_one(cfg, cfg.rho0_a, cfg.y0_a);
  TransportResult tr = backward_weights(r.state);
  WeightBoundReport bound = verify_weight_bound(r.state, tr, r.quantized);
  std::vector<std::string> sampled =
      verify_transport(r.state, tr, trials, seed_from_env(20260810));

  nlohmann::json j;
  j["w_b"] = rat_to_string(tr.weights.w_b);
  j["w_b_float"] = to_double(tr.weights.w_b);
  nlohmann::json w;
  for (const auto& [id, value] : tr.weights.w) w[std::to_string(id)] = rat_to_string(value);
  j["w"] = w;
  j["bound_constant"] = bound.c0;
  j["composite_constant"] = bound.composite_constant;
  j["max_weight"] = bound.global_max_weight;
  j["restricted_segments"] = bound.restricted_segments;
  j["bound_ok"] = bound.ok;
  j["bound_failures"] = bound.failures;
  j["sampled_inequality_failures"] = sampled;
  auto out = open_out(cfg.output_dir, "weights.json");
  out << j.dump(2) << "\n";
  std::cout << j.dump(2) << "\n";
  return bound.ok && sampled.empty() ? 0 : 1;
}

int cmd_converge(const std::string& config_path, std::vector<int> levels, int cells, double cfl) {
  ExperimentConfig cfg = ExperimentConfig::load(config_path);
  if (levels.empty()) levels = {4, 6, 8};
  auto rows = convergence_study(cfg, levels, cells, cfl);
  auto out = open_out(cfg.output_dir, "convergence.csv");
  out << "n,l1_to_reference,l1_to_next\n";
  std::cout << "n,l1_to_reference,l1_to_next\n";
  for (const auto& row : rows) {
    out << row.n << "," << row.l1_to_reference << "," << row.l1_to_next << "\n";
    std::cout << row.n << "," << row.l1_to_reference << "," << row.l1_to_next << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-front tracking for traffic flow with a slow-vehicle bottleneck"};
  app.require_subcommand(1);

  std::string left = "1/2", right = "1/2", vb = "1/5", alpha = "9/25";
  auto* riemann = app.add_subcommand("riemann", "solve one constrained Riemann problem");
  riemann->add_option("--left", left, "left state");
  riemann->add_option("--right", right, "right state");
  riemann->add_option("--vb", vb, "SV maximal speed");
  riemann->add_option("--alpha", alpha, "capacity fraction");

  std::string config;
  auto* simulate = app.add_subcommand("simulate", "run one tracking simulation");
  simulate->add_option("--config", config, "config JSON")->required();

  auto* stability = app.add_subcommand("stability", "run a perturbation pair");
  stability->add_option("--config", config, "config JSON")->required();

  int trials = 100;
  auto* weights = app.add_subcommand("weights", "backward weights and bound audit");
  weights->add_option("--config", config, "config JSON")->required();
  weights->add_option("--trials", trials, "random shift assignments to verify");

  std::vector<int> levels;
  int cells = 4096;
  double cfl = 0.45;
  auto* converge = app.add_subcommand("converge", "mesh convergence study");
  converge->add_option("--config", config, "config JSON")->required();
  converge->add_option("--levels", levels, "mesh levels");
  converge->add_option("--cells", cells, "reference resolution");
  converge->add_option("--cfl", cfl, "reference CFL number");

  CLI11_PARSE(app, argc, argv);

  try {
    if (riemann->parsed()) return cmd_riemann(left, right, vb, alpha);
    if (simulate->parsed()) return cmd_simulate(config);
    if (stability->parsed()) return cmd_stability(config);
    if (weights->parsed()) return cmd_weights(config, trials);
    if (converge->parsed()) return cmd_converge(config, levels, cells, cfl);
  } catch (const wft::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const wft::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

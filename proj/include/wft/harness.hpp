#ifndef WFT_HARNESS_HPP
#define WFT_HARNESS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wft/engine.hpp"
#include "wft/tangent.hpp"

namespace wft {

struct ExperimentConfig {
  ModelParams params;
  int n = 6;
  PiecewiseConstant rho0_a, rho0_b;
  Rat y0_a, y0_b;
  Rat horizon;
  Rat x_min, x_max;
  int samples = 32;
  std::uint64_t max_events = 1000000;
  std::string output_dir = ".";

  static ExperimentConfig from_json(const nlohmann::json& j);  // throws ConfigError
  static ExperimentConfig load(const std::string& path);
  void validate() const;  // window margin, quantizability, backgrounds
};

// One wave-front-tracking run plus everything downstream modules need.
struct PairRun {
  PiecewiseConstant quantized;
  SimState state;
  std::vector<Snapshot> snaps;
};

PairRun run_one(const ExperimentConfig& cfg, const PiecewiseConstant& rho0, const Rat& y0);

struct StabilityReport {
  Rat d0;
  std::vector<std::pair<Rat, Rat>> distance;  // (t, d(t))
  Rat max_ratio;                              // max_t d(t)/d(0); 0 when d0 == 0
  bool identical = false;                     // d0 == 0 (then all d(t) must vanish)
  double composite_constant = 0;              // applicable bound from the weight audit
  bool within_constant = true;
  bool restricted_regime = true;
  nlohmann::json to_json() const;
};

StabilityReport run_pair(const ExperimentConfig& cfg);

// First-order Godunov reference with the moving capped interface.
struct GodunovResult {
  PiecewiseConstant profile;  // cell averages at the horizon
  double y_final = 0;
};
GodunovResult godunov_reference(const ExperimentConfig& cfg, const PiecewiseConstant& rho0,
                                const Rat& y0, int cells, double cfl);

struct ConvergenceRow {
  int n = 0;
  double l1_to_reference = 0;  // vs high-resolution Godunov at the horizon
  double l1_to_next = -1;      // vs the next listed level, -1 on the last row
};
std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& cfg,
                                              const std::vector<int>& levels, int cells,
                                              double cfl);

// Draws `trials` random shift assignments (seeded; BOTTLENECK_WFT_SEED
// overrides), propagates them forward, and checks the backward-weight
// inequality plus the per-event identities. Returns a failure list.
std::vector<std::string> verify_transport(const SimState& st, const TransportResult& transport,
                                          int trials, std::uint64_t seed);

std::uint64_t seed_from_env(std::uint64_t fallback);

}  // namespace wft

#endif

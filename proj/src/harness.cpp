#include "wft/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "wft/error.hpp"
#include "wft/godunov.hpp"

namespace wft {

namespace {

Rat rat_from_json(const nlohmann::json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_number()) return rat_from_string(j.dump());
  throw ConfigError("expected a rational (string or number), got " + j.dump());
}

PiecewiseConstant profile_from_json(const nlohmann::json& j) {
  PiecewiseConstant pc;
  if (!j.contains("values")) throw ConfigError("profile needs a values array");
  for (const auto& v : j["values"]) pc.values.push_back(rat_from_json(v));
  if (j.contains("breakpoints"))
    for (const auto& x : j["breakpoints"]) pc.breakpoints.push_back(rat_from_json(x));
  pc.validate();
  return pc;
}

Rat pc_mass(const PiecewiseConstant& pc, const Rat& a, const Rat& b) {
  Rat total = 0;
  Rat cursor = a;
  for (std::size_t i = 0; i <= pc.breakpoints.size(); ++i) {
    Rat seg_end = i < pc.breakpoints.size() ? pc.breakpoints[i] : b;
    if (seg_end > b) seg_end = b;
    if (seg_end > cursor) {
      total += pc.values[i] * (seg_end - cursor);
      cursor = seg_end;
    }
    if (cursor == b) break;
  }
  if (cursor < b) total += pc.values.back() * (b - cursor);
  return total;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    cfg.params = ModelParams::make(rat_from_json(j.at("v_b")), rat_from_json(j.at("alpha")));
    cfg.n = j.at("n").get<int>();
    cfg.rho0_a = profile_from_json(j.at("rho0_a"));
    cfg.rho0_b = j.contains("rho0_b") ? profile_from_json(j["rho0_b"]) : cfg.rho0_a;
    cfg.y0_a = rat_from_json(j.at("y0_a"));
    cfg.y0_b = j.contains("y0_b") ? rat_from_json(j["y0_b"]) : cfg.y0_a;
    cfg.horizon = rat_from_json(j.at("horizon"));
    if (!j.contains("window") || j["window"].size() != 2)
      throw ConfigError("config needs window = [x_min, x_max]");
    cfg.x_min = rat_from_json(j["window"][0]);
    cfg.x_max = rat_from_json(j["window"][1]);
    if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
    if (j.contains("max_events")) cfg.max_events = j["max_events"].get<std::uint64_t>();
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad JSON in ") + path + ": " + e.what());
  }
  return from_json(j);
}

void ExperimentConfig::validate() const {
  if (!(horizon > 0)) throw ConfigError("horizon must be positive");
  if (!(x_min < x_max)) throw ConfigError("window is empty");
  if (n < 1) throw ConfigError("mesh level must be >= 1");
  if (rho0_a.values.front() != rho0_b.values.front() ||
      rho0_a.values.back() != rho0_b.values.back())
    throw ConfigError("paired data must share background states");
  // Margin: nothing moves faster than unit speed, so breakpoints and the SV
  // must sit at least `horizon` away from the window edges.
  auto margin_ok = [&](const Rat& x) { return x - horizon >= x_min && x + horizon <= x_max; };
  for (const PiecewiseConstant* pc : {&rho0_a, &rho0_b})
    for (const Rat& x : pc->breakpoints)
      if (!margin_ok(x)) throw ConfigError("breakpoint too close to the window edge");
  if (!margin_ok(y0_a) || !margin_ok(y0_b))
    throw ConfigError("SV start too close to the window edge");
}

PairRun run_one(const ExperimentConfig& cfg, const PiecewiseConstant& rho0, const Rat& y0) {
  PairRun r;
  DensityMesh mesh = build_mesh(cfg.n, cfg.params);
  r.quantized = quantize(rho0, mesh);
  SimState st = init(r.quantized, y0, mesh, cfg.params);
  st.max_events = cfg.max_events;
  r.snaps = run(st, cfg.horizon, cfg.samples);
  r.state = std::move(st);
  return r;
}

StabilityReport run_pair(const ExperimentConfig& cfg) {
  PairRun a = run_one(cfg, cfg.rho0_a, cfg.y0_a);
  PairRun b = run_one(cfg, cfg.rho0_b, cfg.y0_b);
  if (a.snaps.size() != b.snaps.size()) throw InvariantError("run_pair: snapshot grids differ");

  StabilityReport rep;
  for (std::size_t i = 0; i < a.snaps.size(); ++i) {
    Rat d = l1_distance(a.snaps[i].profile, b.snaps[i].profile) +
            rat_abs(a.snaps[i].sv_pos - b.snaps[i].sv_pos);
    rep.distance.emplace_back(a.snaps[i].time, d);
  }
  rep.d0 = rep.distance.front().second;
  rep.identical = rep.d0 == 0;
  rep.max_ratio = 0;
  for (const auto& [t, d] : rep.distance) {
    if (rep.identical) {
      if (d != 0)
        throw InvariantError("uniqueness violated: identical data diverged at t = " +
                             rat_to_string(t));
      continue;
    }
    Rat ratio = d / rep.d0;
    if (ratio > rep.max_ratio) rep.max_ratio = ratio;
  }

  double constant = 0;
  bool restricted = true;
  for (const PairRun* r : {&a, &b}) {
    TransportResult tr = backward_weights(r->state);
    WeightBoundReport wb = verify_weight_bound(r->state, tr, r->quantized);
    constant = std::max(constant, wb.composite_constant);
    restricted = restricted && wb.nc1a + wb.nc2a + wb.nc4 + wb.boundary_episodes == 0;
  }
  rep.composite_constant = constant;
  rep.restricted_regime = restricted;
  rep.within_constant = rep.identical || to_double(rep.max_ratio) <= constant;
  return rep;
}

nlohmann::json StabilityReport::to_json() const {
  nlohmann::json j;
  j["d0"] = rat_to_string(d0);
  j["identical"] = identical;
  j["ratio"] = to_double(max_ratio);
  j["ratio_exact"] = rat_to_string(max_ratio);
  j["composite_constant"] = composite_constant;
  j["within_constant"] = within_constant;
  j["restricted_regime"] = restricted_regime;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [t, d] : distance)
    rows.push_back({{"t", to_double(t)}, {"d", to_double(d)}, {"d_exact", rat_to_string(d)}});
  j["distance"] = rows;
  return j;
}

GodunovResult godunov_reference(const ExperimentConfig& cfg, const PiecewiseConstant& rho0,
                                const Rat& y0, int cells, double cfl) {
  if (cells < 16) throw ConfigError("godunov_reference: need at least 16 cells");
  if (!(cfl > 0 && cfl <= 0.5)) throw ConfigError("godunov_reference: cfl must lie in (0, 1/2]");
  const double v_b = to_double(cfg.params.v_b);
  const double alpha = to_double(cfg.params.alpha);
  const double rho_star = to_double(cfg.params.rho_star);
  const double sq = std::sqrt(1.0 - alpha);

  const Rat dx_exact = (cfg.x_max - cfg.x_min) / cells;
  const double dx = to_double(dx_exact);
  std::vector<double> rho(static_cast<std::size_t>(cells));
  for (int j = 0; j < cells; ++j) {
    Rat a = cfg.x_min + dx_exact * j;
    rho[static_cast<std::size_t>(j)] = to_double(pc_mass(rho0, a, a + dx_exact) / dx_exact);
  }
  std::vector<double> flux(static_cast<std::size_t>(cells) + 1);

  double y = to_double(y0);
  double t = 0;
  const double horizon = to_double(cfg.horizon);
  const double x_min = to_double(cfg.x_min);
  while (t < horizon) {
    double dt = std::min(cfl * dx, horizon - t);
    // Downwind cell average drives the SV speed.
    int jc = static_cast<int>(std::floor((y - x_min) / dx));
    int dw = std::clamp(jc + 1, 0, cells - 1);
    double rho_dw = rho[static_cast<std::size_t>(dw)];
    double w = rho_dw <= rho_star ? v_b : 1.0 - rho_dw;

    flux.front() = rho[0] * (1.0 - rho[0]);
    flux.back() = rho.back() * (1.0 - rho.back());
    fv::flux_sweep(rho.data(), flux.data() + 1, static_cast<std::size_t>(cells) - 1);

    // Cap the interface nearest the SV at the saturated road-frame flux.
    int isv = std::clamp(static_cast<int>(std::llround((y - x_min) / dx)), 1, cells - 1);
    double rho_hat_w = (1.0 - w) * (1.0 + sq) / 2.0;
    double cap = alpha / 4.0 * (1.0 - w) * (1.0 - w) + w * rho_hat_w;
    flux[static_cast<std::size_t>(isv)] = std::min(flux[static_cast<std::size_t>(isv)], cap);

    for (int j = 0; j < cells; ++j)
      rho[static_cast<std::size_t>(j)] +=
          dt / dx * (flux[static_cast<std::size_t>(j)] - flux[static_cast<std::size_t>(j) + 1]);
    y += dt * w;
    t += dt;
  }

  GodunovResult out;
  out.y_final = y;
  out.profile.values.reserve(rho.size());
  for (int j = 0; j < cells; ++j) {
    if (j > 0) out.profile.breakpoints.push_back(cfg.x_min + dx_exact * j);
    double v = std::clamp(rho[static_cast<std::size_t>(j)], 0.0, 1.0);
    out.profile.values.push_back(Rat(v));
  }
  return out;
}

std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& cfg,
                                              const std::vector<int>& levels, int cells,
                                              double cfl) {
  if (levels.size() < 2) throw ConfigError("convergence_study: need at least two levels");
  GodunovResult ref = godunov_reference(cfg, cfg.rho0_a, cfg.y0_a, cells, cfl);
  std::vector<PiecewiseConstant> finals;
  std::vector<ConvergenceRow> rows;
  for (int n : levels) {
    ExperimentConfig c = cfg;
    c.n = n;
    PairRun run = run_one(c, cfg.rho0_a, cfg.y0_a);
    finals.push_back(run.snaps.back().profile);
    ConvergenceRow row;
    row.n = n;
    row.l1_to_reference =
        to_double(l1_distance_window(finals.back(), ref.profile, cfg.x_min, cfg.x_max));
    rows.push_back(row);
  }
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    rows[i].l1_to_next =
        to_double(l1_distance_window(finals[i], finals[i + 1], cfg.x_min, cfg.x_max));
  return rows;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("BOTTLENECK_WFT_SEED");
  if (!env || !*env) return fallback;
  return std::strtoull(env, nullptr, 10);
}

std::vector<std::string> verify_transport(const SimState& st, const TransportResult& transport,
                                          int trials, std::uint64_t seed) {
  std::vector<std::string> failures;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> numer(-16, 16);
  const ModelParams& p = st.params;
  const Rat ns_delta = p.rho_check - p.rho_hat;

  for (int trial = 0; trial < trials; ++trial) {
    std::map<FrontId, Rat> xi0;
    for (const InitialJump& jump : st.initial_jumps)
      if (jump.left != jump.right) xi0[jump.id] = rat(numer(rng), 8);
    Rat xi_b0(numer(rng), 8);

    ShiftState shifts = attach_shifts(st, xi0, xi_b0);
    for (const InteractionEvent& ev : st.log) {
      ShiftState pre = shifts;
      propagate(shifts, ev);
      // Re-derive the lemma identity for this event from the log record.
      if (ev.cls == EventClass::ww) {
        const FrontSnap &i1 = ev.incoming[0], &i2 = ev.incoming[1], &out = ev.outgoing[0];
        Rat lhs = out.delta() * shifts.waves.at(out.id).xi;
        Rat rhs = i1.delta() * pre.waves.at(i1.id).xi + i2.delta() * pre.waves.at(i2.id).xi;
        if (lhs != rhs) failures.push_back("ww conservation failed at event " +
                                           std::to_string(ev.seq));
        continue;
      }
      const FrontSnap& in = ev.incoming[0];
      const FrontSnap& out = ev.outgoing[0];
      Rat ps = psi(in.left, in.right, p);
      Rat xi_k_pre = pre.waves.at(in.id).xi;
      Rat xi_k_post = shifts.waves.at(in.id).xi;
      switch (ev.cls) {
        case EventClass::wsv_right_a:
        case EventClass::wsv_right_b:
        case EventClass::wsv_left:
          if (shifts.xi_b != (1 - ps) * pre.xi_b + ps * xi_k_pre || xi_k_post != xi_k_pre)
            failures.push_back("wave-SV shift law failed at event " + std::to_string(ev.seq));
          break;
        case EventClass::ns_create_right:
        case EventClass::ns_create_left:
          if (shifts.xi_b != pre.xi_b ||
              out.delta() * xi_k_post + ns_delta * shifts.xi_b != in.delta() * xi_k_pre)
            failures.push_back("NS creation shift law failed at event " + std::to_string(ev.seq));
          break;
        case EventClass::ns_cancel_right:
        case EventClass::ns_cancel_left:
          if (shifts.xi_b != (1 - ps) * pre.xi_b + ps * xi_k_pre ||
              out.delta() * xi_k_post != in.delta() * xi_k_pre + ns_delta * pre.xi_b)
            failures.push_back("NS cancellation shift law failed at event " +
                               std::to_string(ev.seq));
          break;
        default:
          failures.push_back("unknown event class in log");
      }
    }

    // Initial functional coordinates.
    auto pair_with = [&](const SparseVec& row) {
      Rat acc = 0;
      for (const auto& [coord, coeff] : row) {
        if (coord == kShiftB)
          acc += coeff * xi_b0;
        else {
          const InitialJump* jump = nullptr;
          for (const InitialJump& cand : st.initial_jumps)
            if (cand.id == coord) jump = &cand;
          acc += coeff * (jump->right - jump->left) * xi0.at(coord);
        }
      }
      return acc;
    };

    // The composed rows must reproduce the forward propagation exactly.
    for (const auto& [id, entry] : shifts.waves) {
      auto it = transport.rows.find(id);
      if (it == transport.rows.end()) {
        failures.push_back("transport lost front " + std::to_string(id));
        continue;
      }
      if (pair_with(it->second) != entry.delta * entry.xi)
        failures.push_back("transport row mismatch for front " + std::to_string(id));
    }
    if (pair_with(transport.row_b) != shifts.xi_b)
      failures.push_back("transport row mismatch for the SV shift");

    // Backward-weight inequality at the horizon.
    Rat rhs = transport.weights.w_b * rat_abs(xi_b0);
    for (const auto& [jump_id, w] : transport.weights.w) {
      const InitialJump* jump = nullptr;
      for (const InitialJump& cand : st.initial_jumps)
        if (cand.id == jump_id) jump = &cand;
      rhs += w * rat_abs((jump->right - jump->left) * xi0.at(jump_id));
    }
    if (weighted_norm(shifts) > rhs)
      failures.push_back("backward-weight inequality violated on trial " + std::to_string(trial));
    if (static_cast<int>(failures.size()) > 20) break;
  }
  return failures;
}

}  // namespace wft

#include "wft/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wft/error.hpp"

namespace wft {

ShiftState attach_shifts(const SimState& st, const std::map<FrontId, Rat>& xi0,
                         const Rat& xi_b0) {
  std::size_t coords = 0;
  ShiftState shifts;
  shifts.xi_b = xi_b0;
  shifts.applied_events = 0;
  auto front_delta = [&](FrontId id) {
    for (const Front& f : st.initial_fronts)
      if (f.id == id) return f.right - f.left;
    throw InvariantError("attach_shifts: unknown initial front");
  };
  for (const InitialJump& jump : st.initial_jumps) {
    Rat xi;
    if (jump.left != jump.right) {
      auto it = xi0.find(jump.id);
      if (it == xi0.end())
        throw DomainError("attach_shifts: missing shift for jump " + std::to_string(jump.id));
      xi = it->second;
      ++coords;
    } else {
      xi = xi_b0;  // waves born from the constrained solve at y0 ride with the SV
    }
    for (FrontId id : jump.born) shifts.waves[id] = {front_delta(id), xi};
  }
  if (coords != xi0.size())
    throw DomainError("attach_shifts: shift assignment does not match the initial jumps");
  return shifts;
}

void propagate(ShiftState& shifts, const InteractionEvent& ev) {
  if (shifts.applied_events != ev.seq)
    throw DomainError("propagate: events must be applied in log order");
  shifts.applied_events += 1;

  if (ev.cls == EventClass::ww) {
    const FrontSnap& a = ev.incoming[0];
    const FrontSnap& b = ev.incoming[1];
    const FrontSnap& out = ev.outgoing[0];
    ShiftEntry sa = shifts.waves.at(a.id);
    ShiftEntry sb = shifts.waves.at(b.id);
    shifts.waves.erase(a.id);
    shifts.waves.erase(b.id);
    Rat xi = (a.delta() * sa.xi + b.delta() * sb.xi) / out.delta();
    shifts.waves[out.id] = {out.delta(), xi};
    return;
  }

  const FrontSnap& in = ev.incoming[0];
  const FrontSnap& out = ev.outgoing[0];
  ShiftEntry cur = shifts.waves.at(in.id);
  Rat xi_b_pre = shifts.xi_b;
  Rat ns_jump = out.delta() - in.delta();  // +-(rho_check - rho_hat) at create/cancel

  switch (ev.cls) {
    case EventClass::wsv_right_a:
    case EventClass::wsv_right_b:
    case EventClass::wsv_left:
      shifts.xi_b = (1 - ev.psi_value) * xi_b_pre + ev.psi_value * cur.xi;
      shifts.waves[in.id] = {out.delta(), cur.xi};
      break;
    case EventClass::ns_create_right:
    case EventClass::ns_create_left:
      // delta+ xi+ + (rho_check-rho_hat) xi_b = delta- xi-; xi_b unchanged.
      // Both cases collapse to delta+ xi+ = delta- xi- + (delta+ - delta-) xi_b.
      shifts.waves[in.id] = {out.delta(),
                             (in.delta() * cur.xi + ns_jump * xi_b_pre) / out.delta()};
      break;
    case EventClass::ns_cancel_right:
    case EventClass::ns_cancel_left:
      // delta+ xi+ = delta- xi- + (rho_check-rho_hat) xi_b^-.
      shifts.xi_b = (1 - ev.psi_value) * xi_b_pre + ev.psi_value * cur.xi;
      shifts.waves[in.id] = {out.delta(),
                             (in.delta() * cur.xi + ns_jump * xi_b_pre) / out.delta()};
      break;
    default:
      throw InvariantError("propagate: unknown event class");
  }
}

Rat weighted_norm(const ShiftState& shifts) {
  Rat total = rat_abs(shifts.xi_b);
  for (const auto& [id, entry] : shifts.waves) total += rat_abs(entry.delta * entry.xi);
  return total;
}

AncestorGraph::AncestorGraph(const SimState& st) {
  n_events_ = static_cast<std::int64_t>(st.log.size());
  const std::int64_t inf = n_events_ + 1;
  for (const InitialJump& jump : st.initial_jumps) {
    Node jn;
    jn.birth = 0;
    jn.death = 0;  // the jump layer exists only at cut 0
    nodes_[jump.id] = jn;
    for (FrontId id : jump.born) {
      Node fn;
      fn.birth = 1;
      fn.death = inf;
      if (jump.left != jump.right) fn.parents = {jump.id};
      nodes_[id] = fn;
      nodes_[jump.id].child = jump.born.size() == 1 ? id : kNoFront;
    }
  }
  // Initial fronts not recorded under a jump cannot exist by construction,
  // but single shocks reuse the chain: every born front is covered above.
  for (const InteractionEvent& ev : st.log) {
    times_.push_back(ev.time);
    if (ev.cls != EventClass::ww) continue;  // SV interactions keep identities
    FrontId out = ev.outgoing[0].id;
    Node fn;
    fn.birth = ev.seq + 2;
    fn.death = inf;
    for (const FrontSnap& s : ev.incoming) {
      fn.parents.push_back(s.id);
      nodes_.at(s.id).death = ev.seq + 1;
      nodes_.at(s.id).child = out;
    }
    nodes_[out] = fn;
  }
}

std::int64_t AncestorGraph::cut_before(const Rat& t) const {
  if (t == 0) return 0;
  std::int64_t c = 1;
  for (const Rat& et : times_)
    if (et < t) ++c;
  return c;
}

std::int64_t AncestorGraph::cut_after(const Rat& t) const {
  std::int64_t c = 1;
  for (const Rat& et : times_)
    if (et <= t) ++c;
  return c;
}

bool AncestorGraph::alive(FrontId id, std::int64_t cut) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) return false;
  return it->second.birth <= cut && cut <= it->second.death;
}

std::set<FrontId> AncestorGraph::alive_set(std::int64_t cut) const {
  std::set<FrontId> out;
  for (const auto& [id, node] : nodes_)
    if (node.birth <= cut && cut <= node.death) out.insert(id);
  return out;
}

std::set<FrontId> AncestorGraph::ancestors(FrontId k, std::int64_t cut1, std::int64_t cut2) const {
  if (!(cut1 <= cut2)) throw DomainError("ancestors: cut1 must not exceed cut2");
  if (!alive(k, cut2)) throw DomainError("ancestors: front not alive at the later cut");
  std::set<FrontId> out;
  std::vector<FrontId> stack = {k};
  while (!stack.empty()) {
    FrontId id = stack.back();
    stack.pop_back();
    const Node& node = nodes_.at(id);
    if (node.birth <= cut1 && cut1 <= node.death) {
      out.insert(id);
      continue;
    }
    if (node.parents.empty())
      throw DomainError("ancestors: front has no representation at the earlier cut");
    for (FrontId parent : node.parents) stack.push_back(parent);
  }
  return out;
}

FrontId AncestorGraph::descendant(FrontId id, std::int64_t cut) const {
  FrontId cur = id;
  while (!alive(cur, cut)) {
    FrontId child = nodes_.at(cur).child;
    if (child == kNoFront)
      throw DomainError("descendant: lineage does not reach the requested cut");
    cur = child;
  }
  return cur;
}

std::vector<std::string> AncestorGraph::check_invariants() const {
  std::vector<std::string> failures;
  const std::int64_t last = final_cut();
  // Partition property across every consecutive cut pair plus (0, last).
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::int64_t c = 0; c < last; ++c) pairs.emplace_back(c, c + 1);
  pairs.emplace_back(0, last);
  for (auto [c1, c2] : pairs) {
    std::set<FrontId> k1 = alive_set(c1), k2 = alive_set(c2);
    std::set<FrontId> covered;
    std::size_t total = 0;
    for (FrontId k : k2) {
      std::set<FrontId> anc = ancestors(k, c1, c2);
      total += anc.size();
      covered.insert(anc.begin(), anc.end());
    }
    if (covered.size() != total) {
      failures.push_back("ancestor sets overlap between cuts " + std::to_string(c1) + " and " +
                         std::to_string(c2));
      continue;
    }
    if (covered != k1)
      failures.push_back("ancestor sets do not partition the front set at cut " +
                         std::to_string(c1));
  }
  // Cardinality monotonicity in the earlier cut.
  for (FrontId k : alive_set(last)) {
    std::size_t prev = 0;
    for (std::int64_t c = last; c >= 0; --c) {
      std::size_t card = ancestors(k, c, last).size();
      if (card + 1 <= prev) {  // card < prev
        failures.push_back("ancestor cardinality not monotone for front " + std::to_string(k));
        break;
      }
      prev = card;
    }
  }
  return failures;
}

namespace {

void axpy(SparseVec& dst, const Rat& scale, const SparseVec& src) {
  for (const auto& [coord, value] : src) {
    Rat& slot = dst[coord];
    slot += scale * value;
    if (slot == 0) dst.erase(coord);
  }
}

SparseVec scaled(const SparseVec& src, const Rat& scale) {
  SparseVec out;
  if (scale == 0) return out;
  for (const auto& [coord, value] : src) out[coord] = scale * value;
  return out;
}

struct TransportState {
  std::map<FrontId, SparseVec> rows;
  SparseVec row_b;

  void apply(const InteractionEvent& ev) {
    if (ev.cls == EventClass::ww) {
      SparseVec merged = rows.at(ev.incoming[0].id);
      axpy(merged, Rat(1), rows.at(ev.incoming[1].id));
      rows.erase(ev.incoming[0].id);
      rows.erase(ev.incoming[1].id);
      rows[ev.outgoing[0].id] = std::move(merged);
      return;
    }
    const FrontSnap& in = ev.incoming[0];
    const FrontSnap& out = ev.outgoing[0];
    SparseVec& wave = rows.at(in.id);
    Rat ns_jump = out.delta() - in.delta();
    switch (ev.cls) {
      case EventClass::wsv_right_a:
      case EventClass::wsv_right_b:
      case EventClass::wsv_left: {
        SparseVec nb = scaled(row_b, 1 - ev.psi_value);
        axpy(nb, ev.psi_value / in.delta(), wave);
        row_b = std::move(nb);
        break;
      }
      case EventClass::ns_create_right:
      case EventClass::ns_create_left:
        axpy(wave, ns_jump, row_b);
        break;
      case EventClass::ns_cancel_right:
      case EventClass::ns_cancel_left: {
        SparseVec b_pre = row_b;
        SparseVec nb = scaled(b_pre, 1 - ev.psi_value);
        axpy(nb, ev.psi_value / in.delta(), wave);
        row_b = std::move(nb);
        axpy(wave, ns_jump, b_pre);
        break;
      }
      default:
        throw InvariantError("transport: unknown event class");
    }
  }
};

}  // namespace

TransportResult backward_weights(const SimState& st) {
  TransportState ts;
  ts.row_b[kShiftB] = 1;
  for (const InitialJump& jump : st.initial_jumps) {
    for (FrontId id : jump.born) {
      Rat delta;
      for (const Front& f : st.initial_fronts)
        if (f.id == id) delta = f.right - f.left;
      SparseVec v;
      if (jump.left != jump.right)
        v[jump.id] = delta / (jump.right - jump.left);
      else
        v[kShiftB] = delta;  // born on the SV ray: shifted by xi_b
      ts.rows[id] = std::move(v);
    }
  }
  for (const InteractionEvent& ev : st.log) ts.apply(ev);

  TransportResult result;
  result.weights.w_b = 0;
  for (const InitialJump& jump : st.initial_jumps)
    if (jump.left != jump.right) result.weights.w[jump.id] = 0;
  auto accumulate = [&](const SparseVec& row) {
    for (const auto& [coord, value] : row) {
      if (coord == kShiftB)
        result.weights.w_b += rat_abs(value);
      else
        result.weights.w[coord] += rat_abs(value);
    }
  };
  for (const auto& [id, row] : ts.rows) accumulate(row);
  accumulate(ts.row_b);
  result.rows = std::move(ts.rows);
  result.row_b = std::move(ts.row_b);
  return result;
}

std::vector<NcEpisode> classify_ns_episodes(const SimState& st, const AncestorGraph& graph) {
  std::vector<NcEpisode> episodes;
  bool open = st.ns_at_init;
  NcEpisode cur;
  if (open) cur.create_seq = -1;
  for (const InteractionEvent& ev : st.log) {
    if (is_ns_create(ev.cls)) {
      if (open) throw InvariantError("nonclassical shock created twice");
      open = true;
      cur = NcEpisode{};
      cur.create_seq = ev.seq;
    } else if (is_ns_cancel(ev.cls)) {
      if (!open) throw InvariantError("nonclassical shock cancelled while absent");
      open = false;
      cur.cancel_seq = ev.seq;
      episodes.push_back(cur);
    }
  }
  if (open) {
    cur.cancel_seq = -1;
    episodes.push_back(cur);
  }

  const std::int64_t last = graph.final_cut();
  for (NcEpisode& ep : episodes) {
    if (ep.create_seq < 0) {
      ep.cls = NcClass::open_at_init;
      continue;
    }
    if (ep.cancel_seq < 0) {
      ep.cls = NcClass::open_at_horizon;
      continue;
    }
    const InteractionEvent& create = st.log[static_cast<std::size_t>(ep.create_seq)];
    const InteractionEvent& cancel = st.log[static_cast<std::size_t>(ep.cancel_seq)];
    bool create_right = incoming_from_right(create.cls);
    bool cancel_right = incoming_from_right(cancel.cls);
    FrontId k1 = graph.descendant(create.incoming[0].id, last);
    FrontId k2 = graph.descendant(cancel.incoming[0].id, last);
    if (create_right && !cancel_right)
      ep.cls = k1 == k2 ? NcClass::nc1b : NcClass::nc1a;
    else if (!create_right && cancel_right)
      ep.cls = k1 == k2 ? NcClass::nc2b : NcClass::nc2a;
    else if (!create_right && !cancel_right)
      ep.cls = NcClass::nc3;
    else
      ep.cls = NcClass::nc4;
  }
  return episodes;
}

WeightBoundReport verify_weight_bound(const SimState& st, const TransportResult& transport,
                                      const PiecewiseConstant& rho0_quantized) {
  WeightBoundReport rep;
  const ModelParams& p = st.params;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.failures.push_back(msg);
  };

  double tv = to_double(rho0_quantized.total_variation());
  double star = to_double(p.rho_star);
  rep.c0 = 2.0 * std::exp(3.0 * tv / star) / star;

  AncestorGraph graph(st);
  std::vector<NcEpisode> episodes = classify_ns_episodes(st, graph);

  // Events excluded from the restricted regime of the weight bound.
  std::set<std::int64_t> special;
  for (const NcEpisode& ep : episodes) {
    bool restricted_ok = ep.cls == NcClass::nc1b || ep.cls == NcClass::nc2b ||
                         ep.cls == NcClass::nc3;
    switch (ep.cls) {
      case NcClass::nc1a: rep.nc1a += 1; break;
      case NcClass::nc2a: rep.nc2a += 1; break;
      case NcClass::nc4: rep.nc4 += 1; break;
      case NcClass::open_at_init:
      case NcClass::open_at_horizon: rep.boundary_episodes += 1; break;
      default: break;
    }
    if (!restricted_ok) {
      if (ep.create_seq >= 0) special.insert(ep.create_seq);
      if (ep.cancel_seq >= 0) special.insert(ep.cancel_seq);
    }
  }

  // At-most-once and mutual exclusion of the one-shot composites.
  if (rep.nc1a > 1) fail("NC1-a occurred more than once");
  if (rep.nc2a > 1) fail("NC2-a occurred more than once");
  if (rep.nc1a > 0 && rep.nc2a > 0) fail("NC1-a and NC2-a both occurred");

  // Restricted-regime segments: reset the transport at every special event
  // and bound the column sums of each segment map.
  {
    TransportState seg;
    std::set<FrontId> live;
    for (const Front& f : st.initial_fronts) live.insert(f.id);
    auto reset = [&]() {
      seg.rows.clear();
      seg.row_b.clear();
      seg.row_b[kShiftB] = 1;
      for (FrontId id : live) seg.rows[id][id] = 1;
    };
    auto finish_segment = [&](bool had_events) {
      if (!had_events) return;
      rep.restricted_segments += 1;
      std::map<FrontId, Rat> colsum;
      auto add = [&](const SparseVec& row) {
        for (const auto& [coord, value] : row) colsum[coord] += rat_abs(value);
      };
      for (const auto& [id, row] : seg.rows) add(row);
      add(seg.row_b);
      for (const auto& [coord, value] : colsum) {
        double w = to_double(value);
        rep.max_segment_weight = std::max(rep.max_segment_weight, w);
        if (w >= rep.c0)
          fail("restricted-regime weight " + std::to_string(w) + " reaches the bound " +
               std::to_string(rep.c0));
      }
    };
    reset();
    bool had = false;
    for (const InteractionEvent& ev : st.log) {
      if (special.count(ev.seq)) {
        finish_segment(had);
        if (ev.cls == EventClass::ww) throw InvariantError("special event must involve the SV");
        reset();  // live set unchanged by SV events
        had = false;
      } else {
        seg.apply(ev);
        had = true;
      }
      if (ev.cls == EventClass::ww) {
        live.erase(ev.incoming[0].id);
        live.erase(ev.incoming[1].id);
        live.insert(ev.outgoing[0].id);
        if (special.count(ev.seq)) reset();
      }
    }
    finish_segment(had);
  }

  // Left-trace property: if two waves with an ancestry link both modify the
  // SV speed, the later one arrives with its left state in [0, rho_check].
  {
    struct SpeedMod {
      std::int64_t seq;
      FrontId id;
      Rat left;
    };
    std::vector<SpeedMod> mods;
    for (const InteractionEvent& ev : st.log)
      if (is_sv_event(ev.cls) && ev.sv_speed_pre != ev.sv_speed_post)
        mods.push_back({ev.seq, ev.incoming[0].id, ev.incoming[0].left});
    for (std::size_t i = 0; i < mods.size(); ++i) {
      for (std::size_t j = i + 1; j < mods.size(); ++j) {
        std::set<FrontId> anc = graph.ancestors(mods[j].id, mods[i].seq + 1, mods[j].seq + 1);
        if (anc.count(mods[i].id) && mods[j].left > p.rho_check)
          fail("speed-modifying descendant wave arrived with left trace " +
               rat_to_string(mods[j].left) + " outside [0, rho_check]");
      }
    }
  }

  // NC3: both halves leave xi_b untouched. NC4: the SV coefficient of the
  // cancellation is a contraction.
  for (const NcEpisode& ep : episodes) {
    if (ep.cls == NcClass::nc3) {
      if (st.log[static_cast<std::size_t>(ep.create_seq)].psi_value != 0 ||
          st.log[static_cast<std::size_t>(ep.cancel_seq)].psi_value != 0)
        fail("NC3 episode has a nonzero psi");
    }
    if (ep.cls == NcClass::nc4) {
      const InteractionEvent& cancel = st.log[static_cast<std::size_t>(ep.cancel_seq)];
      Rat coeff = 1 - cancel.psi_value +
                  cancel.psi_value * (p.rho_hat - p.rho_check) / cancel.incoming[0].delta();
      if (coeff > 1) fail("NC4 cancellation amplifies the SV shift");
    }
  }

  for (const auto& [id, w] : transport.weights.w)
    rep.global_max_weight = std::max(rep.global_max_weight, to_double(w));
  rep.global_max_weight = std::max(rep.global_max_weight, to_double(transport.weights.w_b));

  double factor_u = 1.0 + to_double(p.rho_hat - p.rho_check);
  double two_over_star = 2.0 / star;
  double factor_s = 1.0 + (1.0 + two_over_star) * (1.0 + two_over_star);
  rep.composite_constant = rep.c0 * std::pow(factor_u, rep.boundary_episodes) *
                           ((rep.nc1a + rep.nc2a) > 0 ? factor_s : 1.0);
  return rep;
}

}  // namespace wft

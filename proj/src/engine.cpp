#include "wft/engine.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "wft/error.hpp"

namespace wft {

const char* event_class_name(EventClass cls) {
  switch (cls) {
    case EventClass::ww: return "WW";
    case EventClass::wsv_right_a: return "WSV-right-a";
    case EventClass::wsv_right_b: return "WSV-right-b";
    case EventClass::wsv_left: return "WSV-left";
    case EventClass::ns_create_right: return "NS-create-right";
    case EventClass::ns_create_left: return "NS-create-left";
    case EventClass::ns_cancel_right: return "NS-cancel-right";
    case EventClass::ns_cancel_left: return "NS-cancel-left";
  }
  return "?";
}

bool is_sv_event(EventClass cls) { return cls != EventClass::ww; }

bool is_ns_create(EventClass cls) {
  return cls == EventClass::ns_create_left || cls == EventClass::ns_create_right;
}

bool is_ns_cancel(EventClass cls) {
  return cls == EventClass::ns_cancel_left || cls == EventClass::ns_cancel_right;
}

bool incoming_from_right(EventClass cls) {
  return cls == EventClass::wsv_right_a || cls == EventClass::wsv_right_b ||
         cls == EventClass::ns_create_right || cls == EventClass::ns_cancel_right;
}

bool SimState::CandidateLater::operator()(const Candidate& x, const Candidate& y) const {
  if (x.time != y.time) return x.time > y.time;
  if (x.pos != y.pos) return x.pos > y.pos;  // simultaneous: ascending position
  if (x.with_sv != y.with_sv) return x.with_sv;  // coincident point: wave-wave first
  if (x.a != y.a) return x.a > y.a;
  return x.b > y.b;
}

Rat SimState::sv_right_trace() const {
  if (sv.carries_ns) return params.rho_check;
  if (sv_slot < fronts.size()) return fronts[sv_slot].left;
  if (!fronts.empty()) return fronts.back().right;
  return left_background;
}

Rat SimState::sv_left_trace() const {
  if (sv.carries_ns) return params.rho_hat;
  if (sv_slot > 0) return fronts[sv_slot - 1].right;
  if (!fronts.empty()) return fronts.front().left;
  return left_background;
}

std::size_t SimState::index_of(FrontId id) const {
  for (std::size_t i = 0; i < fronts.size(); ++i)
    if (fronts[i].id == id) return i;
  throw InvariantError("index_of: front not alive");
}

void SimState::push_pair(std::size_t li) {
  if (li + 1 >= fronts.size()) return;
  const Front& f = fronts[li];
  const Front& g = fronts[li + 1];
  if (!(f.speed > g.speed)) return;
  Rat t = (g.intercept - f.intercept) / (f.speed - g.speed);
  if (t < time) return;  // already crossed: only possible for parallel bookkeeping noise
  Candidate c;
  c.time = t;
  c.pos = f.pos_at(t);
  c.with_sv = false;
  c.a = f.id;
  c.b = g.id;
  c.gen_a = gen.at(f.id);
  c.gen_b = gen.at(g.id);
  queue.push(std::move(c));
}

void SimState::push_sv_candidates() {
  auto push_one = [&](const Front& f, int side) {
    // side -1: f left of SV, collides when faster; +1: right, when slower.
    bool approaching = side < 0 ? f.speed > sv.speed : sv.speed > f.speed;
    if (!approaching) return;
    Rat rel = side < 0 ? f.speed - sv.speed : sv.speed - f.speed;
    Rat t = side < 0 ? (sv.intercept - f.intercept) / rel : (f.intercept - sv.intercept) / rel;
    if (t < time) return;
    Candidate c;
    c.time = t;
    c.pos = f.pos_at(t);
    c.with_sv = true;
    c.a = f.id;
    c.gen_a = gen.at(f.id);
    c.gen_b = sv_gen;
    c.side = side;
    queue.push(std::move(c));
  };
  if (sv_slot > 0) push_one(fronts[sv_slot - 1], -1);
  if (sv_slot < fronts.size()) push_one(fronts[sv_slot], +1);
}

void SimState::seed_candidates() {
  for (std::size_t i = 0; i + 1 < fronts.size(); ++i) push_pair(i);
  push_sv_candidates();
}

Snapshot SimState::snapshot(const Rat& t) const {
  // Collect (position, value-right-of-position) pairs; coincident positions
  // collapse to the rightmost value.
  std::vector<std::pair<Rat, Rat>> jumps;
  jumps.reserve(fronts.size() + 1);
  Rat sv_pos = sv.pos_at(t);
  for (std::size_t i = 0; i < fronts.size(); ++i) {
    if (sv.carries_ns && i == sv_slot) jumps.emplace_back(sv_pos, params.rho_check);
    jumps.emplace_back(fronts[i].pos_at(t), fronts[i].right);
  }
  if (sv.carries_ns && sv_slot == fronts.size()) jumps.emplace_back(sv_pos, params.rho_check);

  Snapshot snap;
  snap.time = t;
  snap.sv_pos = sv_pos;
  snap.sv_speed = sv.speed;
  snap.carries_ns = sv.carries_ns;
  snap.profile.values.push_back(fronts.empty() ? left_background : fronts.front().left);
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    if (i + 1 < jumps.size() && jumps[i + 1].first == jumps[i].first) continue;
    snap.profile.breakpoints.push_back(jumps[i].first);
    snap.profile.values.push_back(jumps[i].second);
  }
  snap.profile.merge_equal_adjacent();
  return snap;
}

std::string SimState::dump(const Rat& t) const {
  std::ostringstream os;
  os << "t = " << rat_to_string(t) << ", sv pos " << rat_to_string(sv.pos_at(t)) << " speed "
     << rat_to_string(sv.speed) << (sv.carries_ns ? " [NS]" : "") << "\n";
  for (std::size_t i = 0; i < fronts.size(); ++i) {
    if (i == sv_slot) os << "  -- SV --\n";
    const Front& f = fronts[i];
    os << "  front " << f.id << " @ " << rat_to_string(f.pos_at(t)) << " ("
       << rat_to_string(f.left) << " -> " << rat_to_string(f.right) << ") speed "
       << rat_to_string(f.speed) << "\n";
  }
  if (sv_slot == fronts.size()) os << "  -- SV --\n";
  return os.str();
}

namespace {

// Splits a classical wave into tracking fronts: shocks stay whole,
// rarefactions become fans of mesh-adjacent pieces.
std::vector<std::pair<Rat, Rat>> tracking_pieces(const Rat& vl, const Rat& vr,
                                                 const DensityMesh& mesh) {
  std::vector<std::pair<Rat, Rat>> pieces;
  if (vl == vr) return pieces;
  if (vl < vr) {
    pieces.emplace_back(vl, vr);
    return pieces;
  }
  auto hi = mesh.nearest_index(vl);
  auto lo = mesh.nearest_index(vr);
  if (mesh.points[hi] != vl || mesh.points[lo] != vr)
    throw DomainError("tracking_pieces: state off the mesh");
  for (std::size_t k = hi; k > lo; --k) pieces.emplace_back(mesh.points[k], mesh.points[k - 1]);
  return pieces;
}

}  // namespace

SimState init(const PiecewiseConstant& rho0, const Rat& y0, const DensityMesh& mesh,
              const ModelParams& p) {
  rho0.validate();
  for (const Rat& v : rho0.values)
    if (!mesh.contains(v)) throw DomainError("init: datum value " + rat_to_string(v) + " off-mesh");

  SimState st;
  st.params = p;
  st.mesh = mesh;
  st.time = 0;
  st.left_background = rho0.values.front();

  auto add_front = [&](const Rat& x, const Rat& vl, const Rat& vr, InitialJump& jump) {
    Front f;
    f.id = st.next_id++;
    f.speed = front_speed(vl, vr);
    f.intercept = x;  // t = 0
    f.left = vl;
    f.right = vr;
    st.fronts.push_back(f);
    jump.born.push_back(f.id);
    return f.id;
  };

  // Classical solves away from y0.
  for (std::size_t j = 0; j < rho0.breakpoints.size(); ++j) {
    const Rat& x = rho0.breakpoints[j];
    if (x == y0) continue;
    InitialJump jump;
    jump.id = st.next_id++;
    jump.pos = x;
    jump.left = rho0.values[j];
    jump.right = rho0.values[j + 1];
    for (const auto& [vl, vr] : tracking_pieces(jump.left, jump.right, mesh))
      add_front(x, vl, vr, jump);
    st.initial_jumps.push_back(std::move(jump));
  }

  // Constrained solve at the SV position.
  {
    Rat dl = rho0.value_at(y0), dr = dl;
    auto it = std::find(rho0.breakpoints.begin(), rho0.breakpoints.end(), y0);
    bool datum_jump = it != rho0.breakpoints.end();
    if (datum_jump) {
      std::size_t j = static_cast<std::size_t>(it - rho0.breakpoints.begin());
      dl = rho0.values[j];
      dr = rho0.values[j + 1];
    }
    InitialJump jump;
    jump.id = st.next_id++;
    jump.pos = y0;
    jump.left = dl;
    jump.right = dr;
    jump.at_sv = true;
    WaveFan fan = constrained_solve(dl, dr, p);
    st.sv.speed = fan.sv_speed;
    st.sv.intercept = y0;
    st.sv.carries_ns = fan.has_nonclassical();
    st.ns_at_init = st.sv.carries_ns;
    if (fan.solver_case == 1) {
      for (const auto& [vl, vr] : tracking_pieces(dl, p.rho_hat, mesh)) add_front(y0, vl, vr, jump);
      for (const auto& [vl, vr] : tracking_pieces(p.rho_check, dr, mesh))
        add_front(y0, vl, vr, jump);
    } else {
      for (const auto& [vl, vr] : tracking_pieces(dl, dr, mesh)) add_front(y0, vl, vr, jump);
    }
    if (datum_jump || fan.solver_case == 1) st.initial_jumps.push_back(std::move(jump));
  }

  std::sort(st.fronts.begin(), st.fronts.end(), [](const Front& a, const Front& b) {
    if (a.intercept != b.intercept) return a.intercept < b.intercept;
    return a.speed < b.speed;  // coincident newborn fans order by speed
  });
  st.sv_slot = 0;
  for (const Front& f : st.fronts) {
    if (f.intercept < y0 || (f.intercept == y0 && f.speed < st.sv.speed)) ++st.sv_slot;
  }

  // State chain sanity (catches datum/mesh mismatches early).
  for (std::size_t i = 0; i + 1 < st.fronts.size(); ++i) {
    bool at_ns = st.sv.carries_ns && i + 1 == st.sv_slot;
    const Rat& expected = at_ns ? p.rho_hat : st.fronts[i + 1].left;
    if (st.fronts[i].right != expected)
      throw InvariantError("init: broken state chain\n" + st.dump(0));
  }

  for (const Front& f : st.fronts) st.gen[f.id] = 1;
  st.initial_fronts = st.fronts;
  st.seed_candidates();
  return st;
}

std::optional<Collision> next_event(SimState& st) {
  while (!st.queue.empty()) {
    const SimState::Candidate& c = st.queue.top();
    bool valid = false;
    if (c.with_sv) {
      auto g = st.gen.find(c.a);
      if (g != st.gen.end() && g->second == c.gen_a && c.gen_b == st.sv_gen) {
        std::size_t i = st.index_of(c.a);
        valid = c.side < 0 ? (i + 1 == st.sv_slot) : (i == st.sv_slot);
      }
    } else {
      auto ga = st.gen.find(c.a);
      auto gb = st.gen.find(c.b);
      if (ga != st.gen.end() && gb != st.gen.end() && ga->second == c.gen_a &&
          gb->second == c.gen_b) {
        valid = st.index_of(c.a) + 1 == st.index_of(c.b);
      }
    }
    if (!valid) {
      st.queue.pop();
      continue;
    }
    Collision col;
    col.time = c.time;
    col.pos = c.pos;
    col.with_sv = c.with_sv;
    col.left_id = c.a;
    col.right_id = c.with_sv ? kNoFront : c.b;
    col.side = c.side;
    return col;
  }
  return std::nullopt;
}

namespace {

FrontSnap snap_of(const Front& f) { return {f.id, f.left, f.right, f.speed}; }

}  // namespace

const InteractionEvent& resolve(SimState& st, const Collision& c) {
  if (st.log.size() >= st.max_events)
    throw InvariantError("event cascade exceeded the safety cap\n" + st.dump(st.time));
  const ModelParams& p = st.params;
  const Rat& t = c.time;
  const Rat& x = c.pos;

  InteractionEvent ev;
  ev.seq = static_cast<std::int64_t>(st.log.size());
  ev.time = t;
  ev.pos = x;
  ev.sv_speed_pre = ev.sv_speed_post = st.sv.speed;
  ev.ns_pre = ev.ns_post = st.sv.carries_ns;
  ev.psi_value = 0;

  if (!c.with_sv) {
    std::size_t ia = st.index_of(c.left_id);
    Front f = st.fronts[ia];
    Front g = st.fronts[ia + 1];
    if (f.right != g.left) throw InvariantError("ww: colliding fronts not adjacent in state");
    if (f.left == g.right)
      throw InvariantError("ww: merge would produce no front\n" + st.dump(t));
    Front m;
    m.id = st.next_id++;
    m.left = f.left;
    m.right = g.right;
    m.speed = front_speed(m.left, m.right);
    m.intercept = x - m.speed * t;
    if (m.is_rarefaction() && m.left - m.right > st.mesh.max_gap())
      throw InvariantError("ww: centered rarefaction would be re-created\n" + st.dump(t));
    ev.cls = EventClass::ww;
    ev.incoming = {snap_of(f), snap_of(g)};
    ev.outgoing = {snap_of(m)};

    st.gen.erase(f.id);
    st.gen.erase(g.id);
    st.fronts.erase(st.fronts.begin() + static_cast<std::ptrdiff_t>(ia),
                    st.fronts.begin() + static_cast<std::ptrdiff_t>(ia) + 2);
    st.fronts.insert(st.fronts.begin() + static_cast<std::ptrdiff_t>(ia), m);
    st.gen[m.id] = 1;
    if (ia + 1 < st.sv_slot)
      st.sv_slot -= 1;
    else if (ia < st.sv_slot)  // triple point: merged front straddles the SV
      st.sv_slot = m.speed > st.sv.speed ? ia + 1 : ia;
    if (ia > 0) st.push_pair(ia - 1);
    st.push_pair(ia);
    st.push_sv_candidates();
  } else {
    std::size_t i = st.index_of(c.left_id);
    Front f = st.fronts[i];
    bool from_right = c.side > 0;
    bool had_ns = st.sv.carries_ns;
    ev.incoming = {snap_of(f)};
    ev.psi_value = psi(f.left, f.right, p);

    Rat dl, dr;
    if (from_right) {
      if (had_ns && f.left != p.rho_check)
        throw InvariantError("NS right neighbour does not start at rho_check\n" + st.dump(t));
      dl = had_ns ? p.rho_hat : f.left;
      dr = f.right;
    } else {
      if (had_ns && f.right != p.rho_hat)
        throw InvariantError("NS left neighbour does not end at rho_hat\n" + st.dump(t));
      dl = f.left;
      dr = had_ns ? p.rho_check : f.right;
    }

    WaveFan fan = constrained_solve(dl, dr, p);
    if (fan.solver_case == 1 && had_ns)
      throw InvariantError("nonclassical shock survived an interaction\n" + st.dump(t));

    Front out;
    out.id = f.id;
    if (fan.solver_case == 1) {
      // Creation: exactly one classical piece, on the incoming side.
      std::vector<Wave> classical;
      for (const Wave& w : fan.waves)
        if (w.kind != WaveKind::nonclassical) classical.push_back(w);
      if (classical.size() != 1 || classical[0].kind != WaveKind::shock)
        throw InvariantError("NS creation did not emit a single shock\n" + st.dump(t));
      out.left = classical[0].left;
      out.right = classical[0].right;
      out.speed = classical[0].lo_speed;
      ev.cls = from_right ? EventClass::ns_create_right : EventClass::ns_create_left;
      if (from_right) {
        if (!(f.is_rarefaction() && f.left == p.rho_hat && f.right > p.rho_check &&
              out.left == p.rho_check && out.right == f.right && out.speed > p.v_b))
          throw InvariantError("unclassifiable NS creation from the right\n" + st.dump(t));
      } else {
        if (!(f.is_rarefaction() && f.right == p.rho_check && f.left < p.rho_hat &&
              out.left == f.left && out.right == p.rho_hat && out.speed < p.v_b))
          throw InvariantError("unclassifiable NS creation from the left\n" + st.dump(t));
      }
      st.sv.carries_ns = true;
    } else {
      if (fan.waves.size() != 1)
        throw InvariantError("wave-SV resolution lost the incoming wave\n" + st.dump(t));
      out.left = fan.waves[0].left;
      out.right = fan.waves[0].right;
      out.speed = fan.waves[0].lo_speed;
      if (had_ns) {
        ev.cls = from_right ? EventClass::ns_cancel_right : EventClass::ns_cancel_left;
        if (fan.waves[0].kind != WaveKind::shock)
          throw InvariantError("NS cancellation did not emit a classical shock\n" + st.dump(t));
        st.sv.carries_ns = false;
      } else {
        if (out.left != f.left || out.right != f.right)
          throw InvariantError("simple crossing altered the wave\n" + st.dump(t));
        ev.cls = from_right
                     ? (f.is_rarefaction() ? EventClass::wsv_right_a : EventClass::wsv_right_b)
                     : EventClass::wsv_left;
      }
      // The wave ends up on the other side of the SV.
      if (from_right)
        st.sv_slot += 1;
      else
        st.sv_slot -= 1;
    }
    out.intercept = x - out.speed * t;
    ev.outgoing = {snap_of(out)};
    ev.ns_post = st.sv.carries_ns;

    st.sv.speed = fan.sv_speed;
    st.sv.intercept = x - fan.sv_speed * t;
    st.sv_gen += 1;
    st.fronts[i] = out;
    st.gen[out.id] += 1;

    if (ev.cls == EventClass::wsv_left && !(ev.sv_speed_pre == p.v_b && fan.sv_speed == p.v_b))
      throw InvariantError("left crossing changed the SV speed\n" + st.dump(t));
    Rat expect_speed = sv_speed(st.sv_right_trace(), p);
    if (st.sv.speed != expect_speed)
      throw InvariantError("SV speed inconsistent with its right trace\n" + st.dump(t));

    ev.sv_speed_post = st.sv.speed;
    if (i > 0) st.push_pair(i - 1);
    st.push_pair(i);
    st.push_sv_candidates();
  }

  st.time = t;
  st.log.push_back(std::move(ev));
  return st.log.back();
}

std::vector<Snapshot> run(SimState& st, const Rat& horizon, int samples) {
  if (!(horizon > 0)) throw DomainError("run: horizon must be positive");
  if (samples < 1) samples = 1;
  std::vector<Rat> grid;
  for (int k = 0; k <= samples; ++k) grid.push_back(horizon * k / samples);
  std::size_t next_snap = 0;
  std::vector<Snapshot> snaps;

  while (auto c = next_event(st)) {
    if (c->time > horizon) break;
    while (next_snap < grid.size() && grid[next_snap] < c->time)
      snaps.push_back(st.snapshot(grid[next_snap++]));
    resolve(st, *c);
  }
  while (next_snap < grid.size()) snaps.push_back(st.snapshot(grid[next_snap++]));
  st.time = horizon;
  return snaps;
}

namespace {

Rat value_left_of(const PiecewiseConstant& pc, const Rat& x) {
  auto it = std::lower_bound(pc.breakpoints.begin(), pc.breakpoints.end(), x);
  return pc.values[static_cast<std::size_t>(it - pc.breakpoints.begin())];
}

Rat window_mass(const PiecewiseConstant& pc, const Rat& a, const Rat& b) {
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

SolutionReport check_solution(const SimState& st, const std::vector<Snapshot>& snaps,
                              const Rat& x_min, const Rat& x_max) {
  SolutionReport rep;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.failures.push_back(msg);
  };
  const ModelParams& p = st.params;

  // (a) Rankine-Hugoniot and front admissibility, initial fronts and every
  // logged outgoing front.
  auto check_front = [&](const FrontSnap& s, const std::string& where) {
    ++rep.checks;
    if (s.left == s.right) return fail("degenerate front " + where);
    if (s.speed != front_speed(s.left, s.right))
      return fail("Rankine-Hugoniot violated " + where);
    if (s.right < s.left && s.left - s.right > st.mesh.max_gap())
      fail("rarefaction front too strong " + where);
  };
  for (const Front& f : st.initial_fronts) check_front(snap_of(f), "at t=0");
  for (const InteractionEvent& ev : st.log)
    for (const FrontSnap& s : ev.outgoing)
      check_front(s, "after event " + std::to_string(ev.seq));

  // (b) Constraint at the SV traces, sampled at every snapshot.
  for (const Snapshot& snap : snaps) {
    ++rep.checks;
    Rat cap = constraint_level(snap.sv_speed, p);
    Rat right = snap.profile.value_at(snap.sv_pos);
    Rat left = value_left_of(snap.profile, snap.sv_pos);
    if (flux(right) - snap.sv_speed * right > cap || flux(left) - snap.sv_speed * left > cap)
      fail("flux constraint violated at t = " + rat_to_string(snap.time));
  }

  // (c) Exact mass balance over [x_min, x_max] (no front may reach the edges).
  if (!snaps.empty()) {
    Rat mass0 = window_mass(snaps.front().profile, x_min, x_max);
    Rat influx = flux(snaps.front().profile.values.front());
    Rat outflux = flux(snaps.front().profile.values.back());
    for (const Snapshot& snap : snaps) {
      ++rep.checks;
      if (!snap.profile.breakpoints.empty() &&
          (snap.profile.breakpoints.front() < x_min || snap.profile.breakpoints.back() > x_max)) {
        fail("front left the window at t = " + rat_to_string(snap.time));
        continue;
      }
      Rat drift = window_mass(snap.profile, x_min, x_max) - mass0 -
                  snap.time * (influx - outflux);
      if (drift != 0)
        fail("mass drift " + rat_to_string(drift) + " at t = " + rat_to_string(snap.time));
    }
  }

  // (d) SV path: continuous, piecewise linear, slopes in {v_b} U {v(rho): rho > rho_star}.
  for (const InteractionEvent& ev : st.log) {
    if (!is_sv_event(ev.cls)) continue;
    ++rep.checks;
    for (const Rat& s : {ev.sv_speed_pre, ev.sv_speed_post}) {
      if (s == p.v_b) continue;
      if (!(s < p.v_b && s >= 0))
        fail("inadmissible SV speed at event " + std::to_string(ev.seq));
    }
  }
  return rep;
}

void write_snapshots_csv(std::ostream& os, const std::vector<Snapshot>& snaps) {
  os << "t,x,value,y,sv_speed\n";
  for (const Snapshot& s : snaps) {
    const auto& pc = s.profile;
    for (std::size_t i = 0; i < pc.values.size(); ++i) {
      os << to_double(s.time) << ",";
      if (i == 0)
        os << "-inf";
      else
        os << to_double(pc.breakpoints[i - 1]);
      os << "," << to_double(pc.values[i]) << "," << to_double(s.sv_pos) << ","
         << to_double(s.sv_speed) << "\n";
    }
  }
}

void write_events_jsonl(std::ostream& os, const std::vector<InteractionEvent>& log) {
  for (const InteractionEvent& ev : log) {
    nlohmann::json j;
    j["seq"] = ev.seq;
    j["t"] = rat_to_string(ev.time);
    j["t_float"] = to_double(ev.time);
    j["x"] = rat_to_string(ev.pos);
    j["class"] = event_class_name(ev.cls);
    auto snaps_json = [](const std::vector<FrontSnap>& v) {
      nlohmann::json arr = nlohmann::json::array();
      for (const FrontSnap& s : v)
        arr.push_back({{"id", s.id},
                       {"left", rat_to_string(s.left)},
                       {"right", rat_to_string(s.right)},
                       {"speed", rat_to_string(s.speed)}});
      return arr;
    };
    j["incoming"] = snaps_json(ev.incoming);
    j["outgoing"] = snaps_json(ev.outgoing);
    j["sv_speed_pre"] = rat_to_string(ev.sv_speed_pre);
    j["sv_speed_post"] = rat_to_string(ev.sv_speed_post);
    j["ns_pre"] = ev.ns_pre;
    j["ns_post"] = ev.ns_post;
    j["psi"] = rat_to_string(ev.psi_value);
    os << j.dump() << "\n";
  }
}

}  // namespace wft

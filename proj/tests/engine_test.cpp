#include "wft/engine.hpp"

#include <random>

#include "test_util.hpp"
#include "wft/error.hpp"

using namespace wft;

namespace {

ModelParams desk() { return ModelParams::make(rat(1, 5), rat(9, 25)); }

PiecewiseConstant profile(std::vector<Rat> breakpoints, std::vector<Rat> values) {
  PiecewiseConstant pc;
  pc.breakpoints = std::move(breakpoints);
  pc.values = std::move(values);
  pc.validate();
  return pc;
}

void init_cases() {
  ModelParams p = desk();
  DensityMesh mesh = build_mesh(5, p);

  // Constant 1/2: case 1 at the SV, two classical shocks plus the attached NS.
  SimState st = init(profile({}, {rat(1, 2)}), Rat(0), mesh, p);
  WFT_CHECK(st.fronts.size() == 2);
  WFT_CHECK(st.sv.carries_ns && st.ns_at_init);
  WFT_CHECK(st.sv.speed == p.v_b);
  WFT_CHECK(st.fronts[0].left == rat(1, 2) && st.fronts[0].right == p.rho_hat);
  WFT_CHECK(st.fronts[1].left == p.rho_check && st.fronts[1].right == rat(1, 2));
  WFT_CHECK(st.sv_slot == 1);
  WFT_CHECK(st.sv_right_trace() == p.rho_check && st.sv_left_trace() == p.rho_hat);

  // Constant 1/16: case 2, no fronts.
  SimState quiet = init(profile({}, {rat(1, 16)}), Rat(0), mesh, p);
  WFT_CHECK(quiet.fronts.empty() && !quiet.sv.carries_ns && quiet.sv.speed == rat(1, 5));

  // A single rarefaction jump away from the SV splits into a mesh fan.
  PiecewiseConstant raref = quantize(profile({Rat(2)}, {rat(7, 10), rat(1, 10)}), mesh);
  SimState fan = init(raref, Rat(-4), mesh, p);
  WFT_CHECK(fan.fronts.size() >= 12);  // height ~0.6 over gaps <= 3/64
  for (std::size_t i = 0; i < fan.fronts.size(); ++i) {
    const Front& f = fan.fronts[i];
    WFT_CHECK(f.is_rarefaction() && f.left - f.right <= mesh.max_gap());
    WFT_CHECK(f.speed == front_speed(f.left, f.right));
    if (i > 0) WFT_CHECK(fan.fronts[i - 1].right == f.left && fan.fronts[i - 1].speed < f.speed);
  }
  WFT_CHECK(fan.initial_jumps.size() == 1 &&
            fan.initial_jumps[0].born.size() == fan.fronts.size());

  bool threw = false;
  try {
    init(profile({}, {rat(1, 10)}), Rat(0), mesh, p);  // 1/10 off-mesh
  } catch (const DomainError&) {
    threw = true;
  }
  WFT_CHECK(threw);
}

void next_event_cases() {
  ModelParams p = desk();
  DensityMesh mesh = build_mesh(5, p);  // level 5 keeps 1/16 (level 4 trades it for rho_check)

  // Two shocks at x = 0 (speed 3/8) and x = 1 (speed -3/8) meet at t = 4/3.
  SimState st = init(profile({Rat(0), Rat(1)}, {rat(1, 8), rat(1, 2), rat(7, 8)}), Rat(-6),
                     mesh, p);
  WFT_CHECK(st.fronts.size() == 2);
  auto ev = next_event(st);
  WFT_CHECK(ev && !ev->with_sv && ev->time == rat(4, 3) && ev->pos == rat(1, 2));
  const InteractionEvent& logged = resolve(st, *ev);
  WFT_CHECK(logged.cls == EventClass::ww);
  WFT_CHECK(logged.outgoing.size() == 1);  // one outgoing front, never zero or two
  WFT_CHECK(st.fronts.size() == 1 && st.fronts[0].left == rat(1, 8) &&
            st.fronts[0].right == rat(7, 8) && st.fronts[0].speed == 0);
  WFT_CHECK(!next_event(st));  // nothing left to collide before any horizon

  // Parallel fronts never meet.
  SimState par = init(profile({Rat(0), Rat(4)}, {rat(1, 8), rat(1, 2), rat(7, 8)}), Rat(-20),
                      mesh, p);
  // SV speed 1/5 vs front speeds 3/8 and -3/8: the -3/8 front is well right.
  WFT_CHECK(next_event(par).has_value());

  // Front at x = 1 with speed 0 vs the SV at speed 1/5: meet at t = 5.
  SimState chase = init(profile({Rat(1)}, {rat(1, 16), rat(15, 16)}), Rat(0), mesh, p);
  WFT_CHECK(chase.fronts.size() == 1 && chase.fronts[0].speed == 0);
  auto c = next_event(chase);
  WFT_CHECK(c && c->with_sv && c->side > 0 && c->time == Rat(5) && c->pos == Rat(1));
  const InteractionEvent& crossed = resolve(chase, *c);
  WFT_CHECK(crossed.cls == EventClass::wsv_right_b);
  WFT_CHECK(crossed.sv_speed_post == rat(1, 16));  // case 3: v(15/16)
  WFT_CHECK(chase.sv_slot == 1);                   // wave now left of the SV
}

void ns_cancel_left_case() {
  ModelParams p = desk();
  DensityMesh mesh = build_mesh(5, p);
  // Case-1 init at the SV; a fast shock from the left merges with the
  // reflected wave and then cancels the nonclassical shock.
  SimState st =
      init(profile({Rat(-1)}, {rat(1, 16), rat(1, 2)}), Rat(0), mesh, p);
  WFT_CHECK(st.sv.carries_ns);
  std::vector<Snapshot> snaps = run(st, Rat(8), 8);
  std::vector<EventClass> classes;
  for (const InteractionEvent& ev : st.log) classes.push_back(ev.cls);
  WFT_CHECK(classes.size() >= 2 && classes[0] == EventClass::ww &&
            classes[1] == EventClass::ns_cancel_left);
  const InteractionEvent& cancel = st.log[1];
  WFT_CHECK(cancel.incoming[0].left == rat(1, 16) && cancel.incoming[0].right == p.rho_hat);
  WFT_CHECK(cancel.outgoing[0].left == rat(1, 16) && cancel.outgoing[0].right == p.rho_check);
  WFT_CHECK(cancel.ns_pre && !cancel.ns_post);
  WFT_CHECK(cancel.sv_speed_pre == p.v_b && cancel.sv_speed_post == p.v_b);
  WFT_CHECK(cancel.psi_value == 0);  // left-side cancellation leaves xi_b alone

  SolutionReport rep = check_solution(st, snaps, Rat(-12), Rat(12));
  WFT_CHECK_MSG(rep.ok, rep.failures.empty() ? "" : rep.failures.front());
}

void ns_create_right_case() {
  ModelParams p = desk();
  DensityMesh mesh = build_mesh(5, p);
  // SV rides in rho_hat; a mesh rarefaction front (rho_hat -> 22/32) arrives
  // from the right and spawns the nonclassical shock.
  SimState st = init(profile({rat(1, 4)}, {p.rho_hat, rat(11, 16)}), Rat(0), mesh, p);
  WFT_CHECK(!st.sv.carries_ns);
  std::vector<Snapshot> snaps = run(st, Rat(2), 4);
  WFT_CHECK(st.log.size() == 1 && st.log[0].cls == EventClass::ns_create_right);
  WFT_CHECK(st.sv.carries_ns);
  const InteractionEvent& create = st.log[0];
  WFT_CHECK(create.outgoing[0].left == p.rho_check && create.outgoing[0].right == rat(11, 16));
  WFT_CHECK(create.outgoing[0].speed > p.v_b);  // transmitted wave escapes forward
  WFT_CHECK(create.sv_speed_post == p.v_b);
  SolutionReport rep = check_solution(st, snaps, Rat(-4), Rat(4));
  WFT_CHECK_MSG(rep.ok, rep.failures.empty() ? "" : rep.failures.front());
}

void run_cases() {
  ModelParams p = desk();
  DensityMesh mesh = build_mesh(5, p);

  // Case-2 constant: straight SV line, no events.
  SimState quiet = init(profile({}, {rat(1, 16)}), rat(1, 4), mesh, p);
  run(quiet, Rat(3), 4);
  WFT_CHECK(quiet.log.empty());
  WFT_CHECK(quiet.sv.pos_at(Rat(3)) == rat(1, 4) + rat(3, 5));

  // Case-1 constant: the nonclassical shock persists to the horizon and the
  // constraint stays saturated.
  SimState jammed = init(profile({}, {rat(1, 2)}), Rat(0), mesh, p);
  std::vector<Snapshot> snaps = run(jammed, Rat(4), 8);
  WFT_CHECK(jammed.log.empty() && jammed.sv.carries_ns);
  for (const Snapshot& s : snaps) {
    Rat left = s.profile.value_at(s.sv_pos - rat(1, 1000000));
    WFT_CHECK(left == p.rho_hat);
    WFT_CHECK(flux(left) - s.sv_speed * left == constraint_level(s.sv_speed, p));
  }
  SolutionReport rep = check_solution(jammed, snaps, Rat(-8), Rat(8));
  WFT_CHECK_MSG(rep.ok, rep.failures.empty() ? "" : rep.failures.front());
}

void simultaneous_events_order() {
  ModelParams p = desk();
  DensityMesh mesh = build_mesh(4, p);
  // Two identical shock pairs, far apart, collide at the same instant; the
  // log must list the left collision first.
  PiecewiseConstant pc = profile({Rat(-8), Rat(-7), Rat(7), Rat(8)},
                                 {rat(1, 8), rat(1, 2), rat(7, 8), rat(1, 2), rat(7, 8)});
  // (1/8,1/2)@-8 at 3/8 catches (1/2,7/8)@-7 at -3/8: t = 4/3, x = -7.5;
  // (7/8,1/2)@7 is a rarefaction (opens up), (1/2,7/8)@8 drifts left at -3/8.
  SimState st = init(pc, Rat(-20), mesh, p);
  run(st, Rat(2), 2);
  WFT_CHECK(!st.log.empty() && st.log[0].cls == EventClass::ww);
  for (std::size_t i = 1; i < st.log.size(); ++i) {
    if (st.log[i].time == st.log[i - 1].time)
      WFT_CHECK(st.log[i].pos >= st.log[i - 1].pos);  // ascending position on ties
    WFT_CHECK(st.log[i].time >= st.log[i - 1].time);
  }
}

void safety_cap() {
  ModelParams p = desk();
  DensityMesh mesh = build_mesh(5, p);
  PiecewiseConstant pc = quantize(
      profile({Rat(-2), Rat(-1), Rat(1), Rat(2)},
              {rat(1, 8), rat(3, 4), rat(1, 4), rat(5, 8), rat(1, 8)}),
      mesh);
  SimState st = init(pc, Rat(0), mesh, p);
  st.max_events = 2;
  bool threw = false;
  try {
    run(st, Rat(10), 2);
  } catch (const InvariantError&) {
    threw = true;
  }
  WFT_CHECK(threw);
}

void mass_and_randomized_audit() {
  ModelParams p = desk();
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4 + 2 * (trial % 2);
    DensityMesh mesh = build_mesh(n, p);
    std::uniform_int_distribution<int> value(0, 64);
    std::uniform_int_distribution<int> pos(-40, 40);
    int jumps = 3 + trial % 5;
    std::vector<Rat> bps;
    for (int j = 0; j < jumps; ++j) bps.push_back(rat(pos(rng), 16));
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    PiecewiseConstant pc;
    for (std::size_t j = 0; j <= bps.size(); ++j) pc.values.push_back(rat(value(rng), 64));
    pc.breakpoints = bps;
    pc.merge_equal_adjacent();
    pc = quantize(pc, mesh);
    Rat y0 = rat(pos(rng), 32);
    SimState st = init(pc, y0, mesh, p);
    std::vector<Snapshot> snaps = run(st, Rat(2), 8);
    SolutionReport rep = check_solution(st, snaps, Rat(-8), Rat(8));
    WFT_CHECK_MSG(rep.ok, rep.failures.empty() ? "trial" : rep.failures.front());
    // Classical front count: wave-wave merges lose one, SV events keep it.
    long count = static_cast<long>(st.initial_fronts.size());
    for (const InteractionEvent& ev : st.log) {
      long next = count + static_cast<long>(ev.outgoing.size()) -
                  static_cast<long>(ev.incoming.size());
      WFT_CHECK(next == count - (ev.cls == EventClass::ww ? 1 : 0));
      count = next;
    }
    WFT_CHECK(count == static_cast<long>(st.fronts.size()));
  }
}

}  // namespace

int main() {
  init_cases();
  next_event_cases();
  ns_cancel_left_case();
  ns_create_right_case();
  run_cases();
  simultaneous_events_order();
  safety_cap();
  mass_and_randomized_audit();
  return wft_test::summarize("engine_test");
}

#include "wft/riemann.hpp"

#include <sstream>

#include "wft/error.hpp"

namespace wft {

bool WaveFan::has_nonclassical() const {
  for (const Wave& w : waves)
    if (w.kind == WaveKind::nonclassical) return true;
  return false;
}

void WaveFan::validate(const ModelParams* p) const {
  auto fail = [&](const std::string& msg) {
    std::ostringstream os;
    os << "WaveFan invariant: " << msg << " (left " << rat_to_string(left_state) << ", right "
       << rat_to_string(right_state) << ")";
    throw InvariantError(os.str());
  };
  Rat cursor = left_state;
  const Rat* prev_hi = nullptr;
  for (const Wave& w : waves) {
    if (w.left != cursor) fail("state chain broken");
    if (prev_hi && !(*prev_hi < w.lo_speed)) fail("wave speeds overlap or unsorted");
    switch (w.kind) {
      case WaveKind::shock:
        if (!(w.left < w.right)) fail("shock not Lax-admissible");
        if (w.lo_speed != w.hi_speed || w.lo_speed != front_speed(w.left, w.right))
          fail("shock speed is not the Rankine-Hugoniot speed");
        break;
      case WaveKind::rarefaction:
        if (!(w.left > w.right)) fail("rarefaction not decreasing");
        if (w.lo_speed != 1 - 2 * w.left || w.hi_speed != 1 - 2 * w.right)
          fail("rarefaction edge speeds off-characteristic");
        break;
      case WaveKind::nonclassical:
        if (!p) fail("nonclassical wave in a classical fan");
        if (w.left != p->rho_hat || w.right != p->rho_check || w.lo_speed != p->v_b ||
            w.hi_speed != p->v_b)
          fail("nonclassical shock is not (rho_hat -> rho_check) at v_b");
        break;
    }
    cursor = w.right;
    prev_hi = &w.hi_speed;
  }
  if (cursor != right_state) fail("fan does not reach the right state");
}

WaveFan classical_solve(const Rat& rho_l, const Rat& rho_r) {
  if (rho_l < 0 || rho_l > 1 || rho_r < 0 || rho_r > 1)
    throw DomainError("classical_solve: states outside [0,1]");
  WaveFan fan;
  fan.left_state = rho_l;
  fan.right_state = rho_r;
  if (rho_l < rho_r) {
    Rat s = front_speed(rho_l, rho_r);
    fan.waves.push_back({s, s, rho_l, rho_r, WaveKind::shock});
  } else if (rho_l > rho_r) {
    fan.waves.push_back({1 - 2 * rho_l, 1 - 2 * rho_r, rho_l, rho_r, WaveKind::rarefaction});
  }
  return fan;
}

WaveFan constrained_solve(const Rat& rho_l, const Rat& rho_r, const ModelParams& p) {
  WaveFan classical = classical_solve(rho_l, rho_r);
  Rat trace = evaluate(classical, p.v_b);  // right trace along the SV ray
  Rat f_trace = flux(trace);
  Rat cap = p.ns_constraint_level() + p.v_b * trace;

  if (f_trace > cap) {
    // Case 1: the classical solution violates the constraint at the SV.
    WaveFan fan;
    fan.left_state = rho_l;
    fan.right_state = rho_r;
    fan.sv_speed = p.v_b;
    fan.solver_case = 1;
    WaveFan left = classical_solve(rho_l, p.rho_hat);
    WaveFan right = classical_solve(p.rho_check, rho_r);
    for (const Wave& w : left.waves) {
      if (!(w.hi_speed < p.v_b))
        throw InvariantError("constrained_solve: case-1 left fan not slower than the SV");
      fan.waves.push_back(w);
    }
    fan.waves.push_back({p.v_b, p.v_b, p.rho_hat, p.rho_check, WaveKind::nonclassical});
    for (const Wave& w : right.waves) {
      if (!(w.lo_speed > p.v_b))
        throw InvariantError("constrained_solve: case-1 right fan not faster than the SV");
      fan.waves.push_back(w);
    }
    fan.validate(&p);
    return fan;
  }

  classical.solver_case = (f_trace < p.v_b * trace) ? 3 : 2;
  classical.sv_speed = classical.solver_case == 3 ? traffic_speed(rho_r) : p.v_b;
  classical.validate(&p);
  return classical;
}

Rat evaluate(const WaveFan& fan, const Rat& xi) {
  Rat value = fan.left_state;
  for (const Wave& w : fan.waves) {
    if (xi < w.lo_speed) return value;
    if (w.kind == WaveKind::rarefaction && xi < w.hi_speed) return (1 - xi) / 2;
    value = w.right;  // at or past the wave: right-continuous convention
  }
  return value;
}

Rat evaluate_left(const WaveFan& fan, const Rat& xi) {
  Rat value = fan.left_state;
  for (const Wave& w : fan.waves) {
    if (xi <= w.lo_speed) return value;
    if (w.kind == WaveKind::rarefaction && xi <= w.hi_speed) return (1 - xi) / 2;
    value = w.right;
  }
  return value;
}

}  // namespace wft

#ifndef WFT_RIEMANN_HPP
#define WFT_RIEMANN_HPP

#include <vector>

#include "wft/fundamental.hpp"
#include "wft/rational.hpp"

namespace wft {

enum class WaveKind { shock, rarefaction, nonclassical };

// One self-similar wave. Shocks and the nonclassical shock occupy a single
// ray (lo_speed == hi_speed); a rarefaction spans [lo_speed, hi_speed].
struct Wave {
  Rat lo_speed, hi_speed;
  Rat left, right;
  WaveKind kind = WaveKind::shock;
};

// Solution of a Riemann problem as a fan of waves with strictly increasing,
// non-overlapping speed supports, together with the SV ray speed.
struct WaveFan {
  Rat left_state, right_state;
  std::vector<Wave> waves;
  Rat sv_speed;         // slope of the SV trajectory out of the origin
  int solver_case = 0;  // 1/2/3 for the constrained solver, 0 for plain classical

  bool has_nonclassical() const;
  void validate(const ModelParams* p = nullptr) const;  // throws InvariantError
};

// Standard (unconstrained) solver: shock if rho_l < rho_r, rarefaction if
// rho_l > rho_r, empty fan otherwise. sv_speed is left at zero, case 0.
WaveFan classical_solve(const Rat& rho_l, const Rat& rho_r);

// Constrained solver. Case 1 inserts the nonclassical shock
// (rho_hat -> rho_check) on the ray v_b and resolves each side classically;
// cases 2 and 3 return the classical fan with the appropriate SV speed.
// The boundary f == F_alpha + v_b*rho counts as case 2.
WaveFan constrained_solve(const Rat& rho_l, const Rat& rho_r, const ModelParams& p);

// State at the ray x/t = xi; right-continuous across discontinuities,
// (1-xi)/2 inside a rarefaction.
Rat evaluate(const WaveFan& fan, const Rat& xi);

// Left limit at the ray (differs from evaluate only on a discontinuity ray).
Rat evaluate_left(const WaveFan& fan, const Rat& xi);

}  // namespace wft

#endif

#ifndef WFT_FUNDAMENTAL_HPP
#define WFT_FUNDAMENTAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wft/rational.hpp"

namespace wft {

// Closed-form algebra of the model. The flux is hard-coded to rho*(1-rho);
// the slow vehicle (SV) rides at v_b in free flow and at the traffic speed
// v(rho) = 1-rho once the density ahead exceeds rho_star = 1-v_b.
//
// The two critical densities rho_check <= rho_hat are the intersections of
// the reduced-capacity line f_alpha(v_b) + v_b*rho with the flux parabola.
// They satisfy rho_check + rho_hat = rho_star exactly, which the exact
// arithmetic preserves; this identity is what makes the nonclassical shock
// (rho_hat -> rho_check) travel at exactly v_b and saturate the constraint.
struct ModelParams {
  Rat v_b;    // SV maximal speed, in (0,1)
  Rat alpha;  // residual capacity fraction at the bottleneck, in (0,1]

  // Derived, filled by make().
  Rat rho_star;   // 1 - v_b
  Rat rho_check;  // smaller root
  Rat rho_hat;    // larger root

  // Requires 1-alpha to be the square of a rational so that the critical
  // densities are exactly representable. Throws DomainError otherwise.
  static ModelParams make(const Rat& v_b, const Rat& alpha);

  // Convenience constructor from a square-root parametrization:
  // alpha = 1 - s^2 with s in [0,1). Always exactly representable.
  static ModelParams from_sqrt_complement(const Rat& v_b, const Rat& s);

  Rat ns_constraint_level() const;  // F_alpha evaluated at v_b
};

Rat flux(const Rat& rho);                  // rho*(1-rho), rho in [0,1]
Rat traffic_speed(const Rat& rho);         // v(rho) = 1-rho
Rat sv_speed(const Rat& rho, const ModelParams& p);  // omega(rho)

// Both roots plus rho_star; also available pre-computed on ModelParams.
struct CriticalDensities {
  Rat rho_check, rho_hat, rho_star;
};
CriticalDensities critical_densities(const ModelParams& p);

// F_alpha(sv_dot) = (alpha/4)*(1-sv_dot)^2, sv_dot in [0,1].
Rat constraint_level(const Rat& sv_dot, const ModelParams& p);

// Rankine-Hugoniot speed; for this flux it reduces to 1 - rho_l - rho_r.
// Rarefaction fronts in the tracking scheme move at the same chord speed.
Rat front_speed(const Rat& rho_l, const Rat& rho_r);

// Interaction coefficient psi(left, right): the fraction of an incoming wave
// shift transferred to the SV shift when the wave crosses the SV trajectory.
Rat psi(const Rat& rho_l, const Rat& rho_r, const ModelParams& p);

// Grid verification of the three psi bounds
//   A: |1 - psi| <= 1 + 2/rho_star
//   B: |psi / (rho_r - rho_l)| <= 2/rho_star
//   C: |psi/(rho_r-rho_l)| + |1-psi| * 2/rho_star <= 2/rho_star
//      (C restricted to rho_l in [0, rho_check])
// over rho_r in (rho_star, 1), rho_l in [0,rho_check] U [rho_hat,1] with the
// given grid step. Pairs with rho_l == rho_r are skipped in B and C (the
// quotient is undefined there).
struct PsiBoundsReport {
  bool ok = true;
  std::uint64_t pairs_checked = 0;
  // Smallest observed margin (bound minus value) per bound; nonnegative iff ok.
  Rat slack_a, slack_b, slack_c;
  std::string violation;  // offending pair, empty when ok
};
PsiBoundsReport verify_psi_bounds(const ModelParams& p, const Rat& grid_step);

}  // namespace wft

#endif

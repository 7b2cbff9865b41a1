#include "wft/fundamental.hpp"

#include <sstream>

#include "wft/error.hpp"

namespace wft {

namespace {

void require_unit_interval(const Rat& rho, const char* who) {
  if (rho < 0 || rho > 1) {
    std::ostringstream os;
    os << who << ": density " << rat_to_string(rho) << " outside [0,1]";
    throw DomainError(os.str());
  }
}

}  // namespace

ModelParams ModelParams::make(const Rat& v_b, const Rat& alpha) {
  if (!(v_b > 0 && v_b < 1)) throw DomainError("v_b must lie in (0,1)");
  if (!(alpha > 0 && alpha <= 1)) throw DomainError("alpha must lie in (0,1]");
  ModelParams p;
  p.v_b = v_b;
  p.alpha = alpha;
  p.rho_star = 1 - v_b;
  // Roots of rho^2 - rho_star*rho + (alpha/4)*rho_star^2 = 0:
  //   rho = rho_star*(1 -+ sqrt(1-alpha))/2.
  auto s = rat_sqrt_exact(Rat(1) - alpha);
  if (!s) {
    throw DomainError(
        "1-alpha is not the square of a rational; the critical densities "
        "would be irrational (pick alpha = 1 - s^2 with s rational)");
  }
  p.rho_check = p.rho_star * (1 - *s) / 2;
  p.rho_hat = p.rho_star * (1 + *s) / 2;
  return p;
}

ModelParams ModelParams::from_sqrt_complement(const Rat& v_b, const Rat& s) {
  if (!(s >= 0 && s < 1)) throw DomainError("sqrt complement must lie in [0,1)");
  return make(v_b, Rat(1) - s * s);
}

Rat ModelParams::ns_constraint_level() const { return constraint_level(v_b, *this); }

Rat flux(const Rat& rho) {
  require_unit_interval(rho, "flux");
  return rho * (1 - rho);
}

Rat traffic_speed(const Rat& rho) {
  require_unit_interval(rho, "traffic_speed");
  return 1 - rho;
}

Rat sv_speed(const Rat& rho, const ModelParams& p) {
  require_unit_interval(rho, "sv_speed");
  return rho <= p.rho_star ? p.v_b : traffic_speed(rho);
}

CriticalDensities critical_densities(const ModelParams& p) {
  return {p.rho_check, p.rho_hat, p.rho_star};
}

Rat constraint_level(const Rat& sv_dot, const ModelParams& p) {
  if (sv_dot < 0 || sv_dot > 1) throw DomainError("constraint_level: speed outside [0,1]");
  Rat one_minus = 1 - sv_dot;
  return p.alpha / 4 * one_minus * one_minus;
}

Rat front_speed(const Rat& rho_l, const Rat& rho_r) {
  require_unit_interval(rho_l, "front_speed");
  require_unit_interval(rho_r, "front_speed");
  if (rho_l == rho_r) throw DomainError("front_speed: equal states have no front");
  return 1 - rho_l - rho_r;
}

Rat psi(const Rat& rho_l, const Rat& rho_r, const ModelParams& p) {
  require_unit_interval(rho_l, "psi");
  require_unit_interval(rho_r, "psi");
  const Rat& star = p.rho_star;
  if (rho_r > star && (rho_l <= p.rho_check || (rho_l >= p.rho_hat && rho_l <= star)))
    return (rho_r - star) / (rho_l + rho_r - star);
  if ((rho_r > star && rho_l >= star && rho_l <= rho_r) || (rho_r >= star && rho_r < rho_l))
    return (rho_r - rho_l) / rho_r;
  return 0;
}

PsiBoundsReport verify_psi_bounds(const ModelParams& p, const Rat& grid_step) {
  if (!(grid_step > 0)) throw DomainError("verify_psi_bounds: grid step must be positive");
  PsiBoundsReport rep;
  const Rat bound_a = 1 + 2 / p.rho_star;
  const Rat bound_bc = 2 / p.rho_star;
  rep.slack_a = rep.slack_b = rep.slack_c = bound_a + bound_bc + 1;

  auto record = [&](const char* tag, const Rat& slack, Rat& worst, const Rat& l, const Rat& r) {
    if (slack < worst) worst = slack;
    if (slack < 0 && rep.ok) {
      rep.ok = false;
      std::ostringstream os;
      os << "bound " << tag << " violated at (rho_l, rho_r) = (" << rat_to_string(l) << ", "
         << rat_to_string(r) << ")";
      rep.violation = os.str();
    }
  };

  // rho_l walks [0, rho_check] then [rho_hat, 1]; rho_r walks (rho_star, 1).
  std::vector<Rat> lefts;
  for (Rat l = 0; l <= p.rho_check; l += grid_step) lefts.push_back(l);
  if (lefts.empty() || lefts.back() != p.rho_check) lefts.push_back(p.rho_check);
  for (Rat l = p.rho_hat; l <= 1; l += grid_step) lefts.push_back(l);
  if (lefts.back() != 1) lefts.push_back(Rat(1));

  for (Rat r = p.rho_star + grid_step; r < 1; r += grid_step) {
    for (const Rat& l : lefts) {
      Rat ps = psi(l, r, p);
      Rat slack_a = bound_a - rat_abs(1 - ps);
      record("A", slack_a, rep.slack_a, l, r);
      if (l != r) {
        Rat quot = rat_abs(ps / (r - l));
        record("B", bound_bc - quot, rep.slack_b, l, r);
        if (l <= p.rho_check)
          record("C", bound_bc - (quot + rat_abs(1 - ps) * bound_bc), rep.slack_c, l, r);
      }
      ++rep.pairs_checked;
    }
  }
  return rep;
}

}  // namespace wft

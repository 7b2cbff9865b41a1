#include "wft/fundamental.hpp"

#include <random>

#include "test_util.hpp"
#include "wft/error.hpp"

using namespace wft;

namespace {

ModelParams desk() { return ModelParams::make(rat(1, 5), rat(9, 25)); }

void model_params_cases() {
  ModelParams p = desk();
  WFT_CHECK(p.rho_star == rat(4, 5));
  WFT_CHECK(p.rho_check == rat(2, 25));
  WFT_CHECK(p.rho_hat == rat(18, 25));

  // Defining property of the critical densities: both roots lie on the
  // reduced-capacity line F_alpha(v_b) + v_b*rho.
  Rat f_alpha = p.ns_constraint_level();
  WFT_CHECK(flux(p.rho_check) - p.v_b * p.rho_check == f_alpha);
  WFT_CHECK(flux(p.rho_hat) - p.v_b * p.rho_hat == f_alpha);
  WFT_CHECK(p.rho_check + p.rho_hat == p.rho_star);

  // alpha = 1: double root at rho_star / 2.
  ModelParams full = ModelParams::make(rat(1, 5), Rat(1));
  WFT_CHECK(full.rho_check == rat(2, 5) && full.rho_hat == rat(2, 5));

  bool threw = false;
  try {
    ModelParams::make(rat(1, 5), rat(1, 2));  // 1/2 is not a rational square
  } catch (const DomainError&) {
    threw = true;
  }
  WFT_CHECK(threw);
  threw = false;
  try {
    ModelParams::make(Rat(1), rat(9, 25));
  } catch (const DomainError&) {
    threw = true;
  }
  WFT_CHECK(threw);

  // Root identity rho_check + rho_hat == rho_star stays exact for random
  // parameters drawn through the square-complement parametrization.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(1, 999);
  for (int i = 0; i < 2000; ++i) {
    Rat v_b = rat(num(rng), 1000);
    Rat s = rat(num(rng) - 1, 1000);
    ModelParams q = ModelParams::from_sqrt_complement(v_b, s);
    WFT_CHECK(q.rho_check + q.rho_hat == q.rho_star);
    WFT_CHECK(q.rho_check <= q.rho_hat);
    WFT_CHECK(flux(q.rho_check) - q.v_b * q.rho_check == q.ns_constraint_level());
  }
}

void flux_cases() {
  WFT_CHECK(flux(Rat(0)) == 0);
  WFT_CHECK(flux(rat(1, 2)) == rat(1, 4));
  WFT_CHECK(flux(rat(18, 25)) == rat(18, 25) * rat(7, 25));  // 0.72 * 0.28 = 0.2016
  WFT_CHECK(flux(rat(18, 25)) == rat(126, 625));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(0, 1000);
  for (int i = 0; i < 500; ++i) {
    Rat rho = rat(num(rng), 1000);
    WFT_CHECK(flux(rho) == flux(1 - rho));  // parabola symmetry
  }
  bool threw = false;
  try {
    flux(rat(11, 10));
  } catch (const DomainError&) {
    threw = true;
  }
  WFT_CHECK(threw);
}

void sv_speed_cases() {
  ModelParams p = desk();
  WFT_CHECK(sv_speed(rat(1, 2), p) == rat(1, 5));
  WFT_CHECK(sv_speed(rat(9, 10), p) == rat(1, 10));
  WFT_CHECK(sv_speed(rat(4, 5), p) == rat(1, 5));  // both branches agree at rho_star
}

void constraint_level_cases() {
  ModelParams p = desk();
  WFT_CHECK(constraint_level(rat(1, 5), p) == rat(36, 625));  // 0.0576
  WFT_CHECK(constraint_level(Rat(1), p) == 0);
  ModelParams unconstrained = ModelParams::make(rat(1, 5), Rat(1));
  WFT_CHECK(constraint_level(Rat(0), unconstrained) == rat(1, 4));
}

void front_speed_cases() {
  WFT_CHECK(front_speed(rat(1, 5), rat(3, 5)) == rat(1, 5));
  WFT_CHECK(front_speed(Rat(0), Rat(1)) == 0);
  WFT_CHECK(front_speed(rat(1, 2), rat(18, 25)) == rat(-11, 50));  // -0.22
  // Chord-speed identity against the flux, exact on random pairs.
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> num(0, 1000);
  for (int i = 0; i < 500; ++i) {
    Rat a = rat(num(rng), 1000), b = rat(num(rng), 1000);
    if (a == b) continue;
    WFT_CHECK(front_speed(a, b) == (flux(a) - flux(b)) / (a - b));
  }
  bool threw = false;
  try {
    front_speed(rat(1, 2), rat(1, 2));
  } catch (const DomainError&) {
    threw = true;
  }
  WFT_CHECK(threw);
}

void psi_cases() {
  ModelParams p = desk();
  WFT_CHECK(psi(rat(1, 20), rat(9, 10), p) == rat(2, 3));
  WFT_CHECK(psi(rat(17, 20), rat(9, 10), p) == rat(1, 18));
  WFT_CHECK(psi(rat(3, 10), rat(1, 2), p) == 0);
  WFT_CHECK(psi(Rat(0), rat(9, 10), p) == 1);  // endpoint: full shift transfer

  // First-branch identity 1 - psi = rho_l / (rho_l + rho_r - rho_star).
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(0, 1000);
  for (int i = 0; i < 2000; ++i) {
    Rat l = rat(num(rng), 1000), r = rat(num(rng), 1000);
    bool branch1 = r > p.rho_star && (l <= p.rho_check || (l >= p.rho_hat && l <= p.rho_star));
    if (!branch1) continue;
    WFT_CHECK(1 - psi(l, r, p) == l / (l + r - p.rho_star));
  }
}

void psi_bounds_cases() {
  ModelParams p = desk();
  PsiBoundsReport rep = verify_psi_bounds(p, rat(1, 200));
  WFT_CHECK_MSG(rep.ok, rep.violation);
  WFT_CHECK(rep.pairs_checked > 1000);
  WFT_CHECK(rep.slack_a >= 0 && rep.slack_b >= 0 && rep.slack_c >= 0);

  // Spot values from the bound B: psi/(rho_r - rho_l) at (0.05, 0.9).
  Rat quot = psi(rat(1, 20), rat(9, 10), p) / (rat(9, 10) - rat(1, 20));
  WFT_CHECK(quot == rat(2, 3) / rat(17, 20));
  WFT_CHECK(quot <= 2 / p.rho_star);

  // rho_l = 0: psi = 1, bound C reduces to bound B.
  WFT_CHECK(1 - psi(Rat(0), rat(9, 10), p) == 0);
}

}  // namespace

int main() {
  model_params_cases();
  flux_cases();
  sv_speed_cases();
  constraint_level_cases();
  front_speed_cases();
  psi_cases();
  psi_bounds_cases();
  return wft_test::summarize("fundamental_test");
}

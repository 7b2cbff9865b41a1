#include "godunov_kernels.h"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace wft::fv {

// Two interfaces per iteration; same operation order as the scalar kernel.
void flux_sweep_neon(const double* rho, double* flux, std::size_t n_interfaces) {
  const float64x2_t half = vdupq_n_f64(0.5);
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n_interfaces; i += 2) {
    float64x2_t a = vld1q_f64(rho + i);
    float64x2_t b = vld1q_f64(rho + i + 1);
    float64x2_t ac = vminq_f64(a, half);
    float64x2_t bc = vmaxq_f64(b, half);
    float64x2_t demand = vmulq_f64(ac, vsubq_f64(one, ac));
    float64x2_t supply = vmulq_f64(bc, vsubq_f64(one, bc));
    vst1q_f64(flux + i, vminq_f64(demand, supply));
  }
  for (; i < n_interfaces; ++i) {
    double a = rho[i];
    double b = rho[i + 1];
    double ac = a < 0.5 ? a : 0.5;
    double bc = b > 0.5 ? b : 0.5;
    double demand = ac * (1.0 - ac);
    double supply = bc * (1.0 - bc);
    flux[i] = demand < supply ? demand : supply;
  }
}

}  // namespace wft::fv

#endif

#include "wft/godunov.hpp"

#include "godunov_kernels.h"

namespace wft::fv {

void flux_sweep_scalar(const double* rho, double* flux, std::size_t n_interfaces) {
  for (std::size_t i = 0; i < n_interfaces; ++i) {
    double a = rho[i];
    double b = rho[i + 1];
    double ac = a < 0.5 ? a : 0.5;  // demand side
    double bc = b > 0.5 ? b : 0.5;  // supply side
    double demand = ac * (1.0 - ac);
    double supply = bc * (1.0 - bc);
    flux[i] = demand < supply ? demand : supply;
  }
}

namespace {

FluxSweepFn resolve_backend(const char** name) {
#if defined(__x86_64__)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) {
    *name = "avx2";
    return flux_sweep_avx2;
  }
#elif defined(__aarch64__)
  *name = "neon";
  return flux_sweep_neon;
#endif
  *name = "scalar";
  return flux_sweep_scalar;
}

struct Backend {
  const char* name;
  FluxSweepFn fn;
  Backend() { fn = resolve_backend(&name); }
};

const Backend& backend() {
  static Backend b;
  return b;
}

}  // namespace

FluxSweepFn active_flux_sweep() { return backend().fn; }

const char* flux_sweep_backend() { return backend().name; }

}  // namespace wft::fv

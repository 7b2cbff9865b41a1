#ifndef WFT_GODUNOV_HPP
#define WFT_GODUNOV_HPP

#include <cstddef>

namespace wft::fv {

// Godunov interface fluxes for the flux rho*(1-rho):
//   flux[i] = min(demand(rho[i]), supply(rho[i+1])),  i = 0 .. n_interfaces-1,
// with demand(a) = f(min(a, 1/2)) and supply(b) = f(max(b, 1/2)).
//
// The sweep is the only data-parallel hot loop in the project; a SIMD variant
// is selected at runtime and must produce bitwise-identical results to the
// scalar reference (no FMA, no reassociation).
void flux_sweep_scalar(const double* rho, double* flux, std::size_t n_interfaces);

using FluxSweepFn = void (*)(const double*, double*, std::size_t);

FluxSweepFn active_flux_sweep();
const char* flux_sweep_backend();  // "scalar", "avx2" or "neon"

inline void flux_sweep(const double* rho, double* flux, std::size_t n_interfaces) {
  active_flux_sweep()(rho, flux, n_interfaces);
}

}  // namespace wft::fv

#endif

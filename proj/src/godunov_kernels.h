#ifndef WFT_GODUNOV_KERNELS_H
#define WFT_GODUNOV_KERNELS_H

#include <cstddef>

// Internal: architecture-specific sweep variants, each compiled in its own
// translation unit with the matching target flags.
namespace wft::fv {

#if defined(__x86_64__)
void flux_sweep_avx2(const double* rho, double* flux, std::size_t n_interfaces);
#endif
#if defined(__aarch64__)
void flux_sweep_neon(const double* rho, double* flux, std::size_t n_interfaces);
#endif

}  // namespace wft::fv

#endif

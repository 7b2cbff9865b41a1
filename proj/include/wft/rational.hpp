#ifndef WFT_RATIONAL_HPP
#define WFT_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace wft {

// All densities, positions, times and shifts are exact rationals. Collision
// ordering and mesh membership are then decidable, which removes every
// tolerance knob from the event engine.
using Rat = mpq_class;

inline double to_double(const Rat& q) { return q.get_d(); }

// mpq_class(n, d) does not canonicalize; this does.
inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline int rat_sign(const Rat& q) { return sgn(q); }

// 2^-k as an exact rational, k >= 0.
inline Rat pow2_inv(unsigned k) {
  Rat r(1);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), k);
  return r;
}

// Renders "p/q", or just "p" when the denominator is 1.
std::string rat_to_string(const Rat& q);

// Accepts "p/q", plain integers, and exact decimal strings ("0.36", "-1.5e-2").
// Throws std::invalid_argument on malformed input.
Rat rat_from_string(const std::string& s);

// Exact square root when the argument is the square of a rational.
std::optional<Rat> rat_sqrt_exact(const Rat& q);

}  // namespace wft

#endif

#ifndef WFT_MESH_HPP
#define WFT_MESH_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "wft/fundamental.hpp"
#include "wft/rational.hpp"

namespace wft {

// The dyadic density mesh 2^-n * N on [0,1], modified so that rho_check,
// rho_hat and rho_star are members. Consecutive gaps stay within
// [2^-(n+1), 3*2^-(n+1)]; construction fails otherwise.
struct DensityMesh {
  int level = 0;
  std::vector<Rat> points;            // sorted ascending
  std::vector<std::string> notes;     // logged deviations (endpoint protection etc.)

  Rat half_step() const { return pow2_inv(static_cast<unsigned>(level) + 1); }
  Rat max_gap() const { return 3 * half_step(); }
  bool contains(const Rat& v) const;
  std::size_t nearest_index(const Rat& v) const;  // ties toward the smaller point
};

DensityMesh build_mesh(int n, const ModelParams& p);

// Piecewise-constant profile: values[i] on (breakpoints[i-1], breakpoints[i]],
// values.front() left of all breakpoints, values.back() to the right.
struct PiecewiseConstant {
  std::vector<Rat> breakpoints;  // strictly increasing
  std::vector<Rat> values;       // breakpoints.size() + 1 entries

  void validate() const;  // throws DomainError
  Rat value_at(const Rat& x) const;  // right-continuous
  Rat total_variation() const;
  void merge_equal_adjacent();

  // Text format: one "<x_start> <value>" row per segment, the first row with
  // x_start = -inf. Values as exact rational or decimal strings.
  void write(std::ostream& os) const;
  static PiecewiseConstant read(std::istream& is);
};

// Exact L1 distance; requires matching background states on both sides
// (otherwise the distance is infinite and a DomainError is thrown).
Rat l1_distance(const PiecewiseConstant& a, const PiecewiseConstant& b);

// Exact L1 distance restricted to [lo, hi]; no background requirement.
Rat l1_distance_window(const PiecewiseConstant& a, const PiecewiseConstant& b, const Rat& lo,
                       const Rat& hi);

// Projects the values of rho0 onto the mesh. Nearest-point rounding (ties
// toward the smaller value) clamped so that no projected jump exceeds the
// input jump plus accumulated rounding credit; this keeps
// TV(quantize(u)) <= TV(u) for every input while staying within one mesh gap
// of plain nearest rounding. Adjacent equal values are merged.
PiecewiseConstant quantize(const PiecewiseConstant& rho0, const DensityMesh& mesh);

}  // namespace wft

#endif

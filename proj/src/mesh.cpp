#include "wft/mesh.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "wft/error.hpp"

namespace wft {

bool DensityMesh::contains(const Rat& v) const {
  return std::binary_search(points.begin(), points.end(), v);
}

std::size_t DensityMesh::nearest_index(const Rat& v) const {
  auto it = std::lower_bound(points.begin(), points.end(), v);
  if (it == points.begin()) return 0;
  if (it == points.end()) return points.size() - 1;
  std::size_t hi = static_cast<std::size_t>(it - points.begin());
  std::size_t lo = hi - 1;
  // Tie breaks toward the smaller point.
  return (v - points[lo]) <= (points[hi] - v) ? lo : hi;
}

DensityMesh build_mesh(int n, const ModelParams& p) {
  if (n < 1) throw DomainError("build_mesh: level must be >= 1");
  DensityMesh mesh;
  mesh.level = n;
  Rat step = pow2_inv(static_cast<unsigned>(n));
  for (Rat x = 0; x <= 1; x += step) mesh.points.push_back(x);
  const Rat half = mesh.half_step();

  std::vector<Rat> placed;
  auto is_protected = [&](const Rat& v) {
    if (v == 0 || v == 1) return true;
    return std::find(placed.begin(), placed.end(), v) != placed.end();
  };

  for (const Rat& s : {p.rho_check, p.rho_hat, p.rho_star}) {
    if (!mesh.contains(s)) {
      auto& pts = mesh.points;
      Rat best_d = rat_abs(s - pts[mesh.nearest_index(s)]);
      if (best_d < half) {
        // Replace the nearest point, skipping 0, 1 and already-placed
        // special values; fall back to insertion if no candidate within a
        // half step survives the protection rule.
        std::ptrdiff_t repl = -1;
        Rat repl_d;
        for (std::size_t i = 0; i < pts.size(); ++i) {
          Rat d = rat_abs(s - pts[i]);
          if (d >= half || is_protected(pts[i])) continue;
          if (repl < 0 || d < repl_d) {
            repl = static_cast<std::ptrdiff_t>(i);
            repl_d = d;
          }
        }
        if (repl >= 0) {
          if (repl_d != best_d) {
            std::ostringstream os;
            os << "protected nearest point kept; replaced next-nearest "
               << rat_to_string(pts[static_cast<std::size_t>(repl)]) << " by "
               << rat_to_string(s);
            mesh.notes.push_back(os.str());
          }
          pts.erase(pts.begin() + repl);
        } else {
          mesh.notes.push_back("no replaceable neighbour for " + rat_to_string(s) +
                               "; inserted instead");
        }
      }
      pts.insert(std::upper_bound(pts.begin(), pts.end(), s), s);
    }
    placed.push_back(s);
  }

  for (std::size_t i = 0; i + 1 < mesh.points.size(); ++i) {
    Rat gap = mesh.points[i + 1] - mesh.points[i];
    if (gap < half || gap > mesh.max_gap()) {
      std::ostringstream os;
      os << "build_mesh: level " << n << " gap (" << rat_to_string(mesh.points[i]) << ", "
         << rat_to_string(mesh.points[i + 1]) << ") of width " << rat_to_string(gap)
         << " violates [" << rat_to_string(half) << ", " << rat_to_string(mesh.max_gap()) << "]";
      throw ConstructionError(os.str());
    }
  }
  return mesh;
}

void PiecewiseConstant::validate() const {
  if (values.size() != breakpoints.size() + 1)
    throw DomainError("PiecewiseConstant: need one more value than breakpoints");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw DomainError("PiecewiseConstant: breakpoints not strictly increasing");
  for (const Rat& v : values)
    if (v < 0 || v > 1) throw DomainError("PiecewiseConstant: value outside [0,1]");
}

Rat PiecewiseConstant::value_at(const Rat& x) const {
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  return values[static_cast<std::size_t>(it - breakpoints.begin())];
}

Rat PiecewiseConstant::total_variation() const {
  Rat tv = 0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) tv += rat_abs(values[i + 1] - values[i]);
  return tv;
}

void PiecewiseConstant::merge_equal_adjacent() {
  std::vector<Rat> bp, vals;
  vals.push_back(values[0]);
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (values[i + 1] != vals.back()) {
      bp.push_back(breakpoints[i]);
      vals.push_back(values[i + 1]);
    }
  }
  breakpoints = std::move(bp);
  values = std::move(vals);
}

void PiecewiseConstant::write(std::ostream& os) const {
  os << "-inf " << rat_to_string(values[0]) << "\n";
  for (std::size_t i = 0; i < breakpoints.size(); ++i)
    os << rat_to_string(breakpoints[i]) << " " << rat_to_string(values[i + 1]) << "\n";
}

PiecewiseConstant PiecewiseConstant::read(std::istream& is) {
  PiecewiseConstant pc;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    std::istringstream row(line);
    std::string xs, vs;
    if (!(row >> xs)) continue;
    if (xs[0] == '#') continue;
    if (!(row >> vs)) throw ConfigError("profile row needs two columns: " + line);
    if (first) {
      if (xs != "-inf") throw ConfigError("first profile row must start at -inf");
      pc.values.push_back(rat_from_string(vs));
      first = false;
    } else {
      pc.breakpoints.push_back(rat_from_string(xs));
      pc.values.push_back(rat_from_string(vs));
    }
  }
  if (first) throw ConfigError("empty profile");
  pc.validate();
  return pc;
}

Rat l1_distance(const PiecewiseConstant& a, const PiecewiseConstant& b) {
  if (a.values.front() != b.values.front() || a.values.back() != b.values.back())
    throw DomainError("l1_distance: background states differ, distance is infinite");
  Rat total = 0;
  std::size_t ia = 0, ib = 0;
  // Walk the merged breakpoint list; the difference vanishes outside it.
  Rat prev;
  bool have_prev = false;
  while (ia < a.breakpoints.size() || ib < b.breakpoints.size()) {
    Rat x;
    if (ib >= b.breakpoints.size() ||
        (ia < a.breakpoints.size() && a.breakpoints[ia] <= b.breakpoints[ib]))
      x = a.breakpoints[ia];
    else
      x = b.breakpoints[ib];
    if (have_prev && a.values[ia] != b.values[ib])
      total += rat_abs(a.values[ia] - b.values[ib]) * (x - prev);
    while (ia < a.breakpoints.size() && a.breakpoints[ia] == x) ++ia;
    while (ib < b.breakpoints.size() && b.breakpoints[ib] == x) ++ib;
    prev = x;
    have_prev = true;
  }
  return total;
}

Rat l1_distance_window(const PiecewiseConstant& a, const PiecewiseConstant& b, const Rat& lo,
                       const Rat& hi) {
  if (!(lo < hi)) throw DomainError("l1_distance_window: empty window");
  std::vector<Rat> cuts = {lo, hi};
  for (const Rat& x : a.breakpoints)
    if (x > lo && x < hi) cuts.push_back(x);
  for (const Rat& x : b.breakpoints)
    if (x > lo && x < hi) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Rat total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    // Sample on the right-open side of the cell start (values are
    // right-continuous, so value_at(cell start) is the cell value).
    Rat va = a.value_at(cuts[i]);
    Rat vb = b.value_at(cuts[i]);
    if (va != vb) total += rat_abs(va - vb) * (cuts[i + 1] - cuts[i]);
  }
  return total;
}

PiecewiseConstant quantize(const PiecewiseConstant& rho0, const DensityMesh& mesh) {
  rho0.validate();
  PiecewiseConstant out;
  out.breakpoints = rho0.breakpoints;
  out.values.reserve(rho0.values.size());
  const auto& pts = mesh.points;
  const Rat cap = mesh.max_gap();

  auto nearest_in = [&](const Rat& v, const Rat& lo, const Rat& hi) {
    // Nearest mesh point to v within [lo, hi]; the window always contains at
    // least the previous output value. Ties toward the smaller point.
    std::size_t i = mesh.nearest_index(v);
    if (pts[i] < lo) {
      while (pts[i] < lo) ++i;
    } else if (pts[i] > hi) {
      while (pts[i] > hi) --i;
    }
    return pts[i];
  };

  Rat w = pts[mesh.nearest_index(rho0.values[0])];
  out.values.push_back(w);
  Rat carry = 0;
  for (std::size_t i = 1; i < rho0.values.size(); ++i) {
    Rat radius = rat_abs(rho0.values[i] - rho0.values[i - 1]) + carry;
    Rat next = nearest_in(rho0.values[i], w - radius, w + radius);
    carry = radius - rat_abs(next - w);
    if (carry > cap) carry = cap;
    w = next;
    out.values.push_back(w);
  }
  out.merge_equal_adjacent();
  return out;
}

}  // namespace wft

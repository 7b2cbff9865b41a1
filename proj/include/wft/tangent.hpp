#ifndef WFT_TANGENT_HPP
#define WFT_TANGENT_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wft/engine.hpp"

namespace wft {

// Coordinate index for the SV shift in sparse transport vectors.
inline constexpr FrontId kShiftB = -7;

// Wave shifts xi_k plus the SV shift xi_b at some cut of the event log.
// Entries carry the signed strength so the weighted norm is self-contained.
struct ShiftEntry {
  Rat delta;  // rho_right - rho_left of the live front
  Rat xi;
};

struct ShiftState {
  std::map<FrontId, ShiftEntry> waves;
  Rat xi_b;
  std::int64_t applied_events = 0;  // log prefix this state corresponds to
};

// Assigns t=0 shifts. xi0 is indexed by initial-jump ids (pre fan-splitting;
// jumps with left == right are excluded); every front born from a jump
// inherits that jump's shift, fronts born from the constrained solve at y0
// with no datum jump inherit xi_b0. Throws DomainError on index mismatch.
ShiftState attach_shifts(const SimState& st, const std::map<FrontId, Rat>& xi0, const Rat& xi_b0);

// Applies one interaction to the shift state (events must be fed in order).
void propagate(ShiftState& shifts, const InteractionEvent& ev);

// sum_k |delta_k * xi_k| + |xi_b|
Rat weighted_norm(const ShiftState& shifts);

// Ancestry of fronts through wave-wave merges. Cut c = 0 addresses the datum
// jumps; cut c >= 1 addresses the state after the t=0 fan splits and c-1
// logged events.
class AncestorGraph {
 public:
  explicit AncestorGraph(const SimState& st);

  std::int64_t final_cut() const { return n_events_ + 1; }
  std::int64_t cut_before(const Rat& t) const;  // t^-  (0 maps to the jump layer)
  std::int64_t cut_after(const Rat& t) const;   // t^+

  bool alive(FrontId id, std::int64_t cut) const;
  std::set<FrontId> alive_set(std::int64_t cut) const;

  // K(n, t1, t2, k): ancestors at cut1 of front k alive at cut2.
  std::set<FrontId> ancestors(FrontId k, std::int64_t cut1, std::int64_t cut2) const;
  // The unique live descendant of id at the given cut.
  FrontId descendant(FrontId id, std::int64_t cut) const;

  // Disjointness, partition and cardinality monotonicity of ancestor sets,
  // checked across every event boundary. Returns a failure list (empty = ok).
  std::vector<std::string> check_invariants() const;

 private:
  struct Node {
    std::int64_t birth = 0, death = 0;  // alive for birth <= cut <= death
    std::vector<FrontId> parents;
    FrontId child = kNoFront;
  };
  std::map<FrontId, Node> nodes_;
  std::vector<Rat> times_;
  std::int64_t n_events_ = 0;
};

// Sparse linear functional over the initial coordinates (jump ids + kShiftB).
using SparseVec = std::map<FrontId, Rat>;

struct WeightVector {
  std::map<FrontId, Rat> w;  // per initial jump
  Rat w_b;
};

// Composition of the per-event shift-transport maps over the whole log.
// rows[k] expresses delta_k(T)*xi_k(T) as a functional of the initial data;
// row_b does the same for xi_b(T). Weights are absolute column sums.
struct TransportResult {
  std::map<FrontId, SparseVec> rows;
  SparseVec row_b;
  WeightVector weights;
};

TransportResult backward_weights(const SimState& st);

// Nonclassical-shock episode bookkeeping (creation/cancellation pairing and
// the NC1..NC4 composite classes with their a/b subcases).
enum class NcClass { nc1a, nc1b, nc2a, nc2b, nc3, nc4, open_at_init, open_at_horizon };

struct NcEpisode {
  std::int64_t create_seq = -1;  // -1: nonclassical shock present since t=0
  std::int64_t cancel_seq = -1;  // -1: still attached at the horizon
  NcClass cls = NcClass::nc3;
};

std::vector<NcEpisode> classify_ns_episodes(const SimState& st, const AncestorGraph& graph);

struct WeightBoundReport {
  bool ok = true;
  std::vector<std::string> failures;
  double c0 = 0;                  // 2*exp(3*TV/rho_star)/rho_star
  double max_segment_weight = 0;  // over restricted-regime segments
  double global_max_weight = 0;
  int restricted_segments = 0;
  int nc1a = 0, nc2a = 0, nc4 = 0, boundary_episodes = 0;
  double composite_constant = 0;  // c0 with the special-event factors applied
};

// Lemma-style audit of the computed weights: the restricted-regime bound on
// every maximal log segment free of NC1-a/NC2-a/NC4/boundary episodes,
// at-most-once and mutual exclusion of NC1-a/NC2-a, the left-trace property
// of consecutive SV-speed-modifying waves, and the NC3/NC4 identities.
WeightBoundReport verify_weight_bound(const SimState& st, const TransportResult& transport,
                                      const PiecewiseConstant& rho0_quantized);

}  // namespace wft

#endif

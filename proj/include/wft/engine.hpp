#ifndef WFT_ENGINE_HPP
#define WFT_ENGINE_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "wft/mesh.hpp"
#include "wft/riemann.hpp"

namespace wft {

using FrontId = std::int64_t;
inline constexpr FrontId kNoFront = -1;

// A moving discontinuity. Trajectories are stored in intercept form
// (pos(t) = intercept + speed*t) so positions stay exact without re-anchoring
// every front at every event time.
struct Front {
  FrontId id = kNoFront;
  Rat intercept;
  Rat speed;
  Rat left, right;

  bool is_rarefaction() const { return right < left; }
  Rat pos_at(const Rat& t) const { return intercept + speed * t; }
};

// Slow-vehicle trajectory segment. When carries_ns is set, the nonclassical
// shock (rho_hat -> rho_check) rides exactly on the SV position.
struct SvState {
  Rat intercept;
  Rat speed;
  bool carries_ns = false;

  Rat pos_at(const Rat& t) const { return intercept + speed * t; }
};

enum class EventClass {
  ww,               // two classical fronts merge away from the SV
  wsv_right_a,      // rarefaction front crossed from the right
  wsv_right_b,      // shock crossed from the right
  wsv_left,         // front overtook the SV from the left
  ns_create_right,  // nonclassical shock created, incoming wave from the right
  ns_create_left,
  ns_cancel_right,  // nonclassical shock cancelled, incoming wave from the right
  ns_cancel_left,
};

const char* event_class_name(EventClass cls);
bool is_sv_event(EventClass cls);
bool is_ns_create(EventClass cls);
bool is_ns_cancel(EventClass cls);
bool incoming_from_right(EventClass cls);

struct FrontSnap {
  FrontId id = kNoFront;
  Rat left, right, speed;
  Rat delta() const { return right - left; }
};

struct InteractionEvent {
  std::int64_t seq = 0;
  Rat time, pos;
  EventClass cls = EventClass::ww;
  std::vector<FrontSnap> incoming;  // classical fronts only; 2 for ww, 1 for SV events
  std::vector<FrontSnap> outgoing;
  Rat sv_speed_pre, sv_speed_post;
  bool ns_pre = false, ns_post = false;
  Rat psi_value;  // psi(incoming.left, incoming.right) for SV events
};

// The datum jumps carry the shift coordinates; rarefaction fans born at t=0
// record which fronts they split into.
struct InitialJump {
  FrontId id = kNoFront;
  Rat pos;
  Rat left, right;
  bool at_sv = false;  // resolved by the constrained solver at y0
  std::vector<FrontId> born;
};

struct Snapshot {
  Rat time;
  PiecewiseConstant profile;
  Rat sv_pos, sv_speed;
  bool carries_ns = false;
};

struct Collision {
  Rat time, pos;
  bool with_sv = false;
  FrontId left_id = kNoFront;   // for ww; for SV events the single front id
  FrontId right_id = kNoFront;  // kNoFront for SV events
  int side = 0;                 // SV events: -1 front from the left, +1 from the right
};

class SimState {
 public:
  ModelParams params;
  DensityMesh mesh;
  Rat time;
  std::vector<Front> fronts;  // sorted left to right
  std::size_t sv_slot = 0;    // fronts[0..sv_slot) lie left of the SV
  SvState sv;
  std::vector<InteractionEvent> log;
  std::vector<InitialJump> initial_jumps;
  std::vector<Front> initial_fronts;
  Rat left_background;  // state left of every front; fixed for the whole run
  bool ns_at_init = false;
  std::uint64_t max_events = 1000000;

  Rat sv_right_trace() const;
  Rat sv_left_trace() const;
  Snapshot snapshot(const Rat& t) const;
  std::string dump(const Rat& t) const;  // diagnostic state listing

  // Internal: lazy event queue (managed by init/next_event/resolve).
  struct Candidate {
    Rat time, pos;
    bool with_sv = false;
    FrontId a = kNoFront, b = kNoFront;
    std::uint64_t gen_a = 0, gen_b = 0;
    int side = 0;
  };
  struct CandidateLater {
    bool operator()(const Candidate& x, const Candidate& y) const;
  };
  std::priority_queue<Candidate, std::vector<Candidate>, CandidateLater> queue;
  std::map<FrontId, std::uint64_t> gen;
  std::uint64_t sv_gen = 0;
  FrontId next_id = 1;

  std::size_t index_of(FrontId id) const;  // current list index
  void seed_candidates();
  void push_pair(std::size_t li);      // ww candidate for (fronts[li], fronts[li+1])
  void push_sv_candidates();
};

// Builds the t=0 state: every datum jump solved classically (rarefactions
// split into mesh-adjacent fans), the jump or constant state at y0 solved
// with the constrained solver. rho0 must be quantized onto the mesh.
SimState init(const PiecewiseConstant& rho0, const Rat& y0, const DensityMesh& mesh,
              const ModelParams& p);

// Earliest future collision, or nullopt if the remaining fronts never meet.
std::optional<Collision> next_event(SimState& st);

// Applies one collision, returns the logged event.
const InteractionEvent& resolve(SimState& st, const Collision& c);

// Advances to the horizon (events with time <= horizon are applied) and
// returns snapshots on a uniform time grid with `samples` intervals.
std::vector<Snapshot> run(SimState& st, const Rat& horizon, int samples = 16);

struct SolutionReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::uint64_t checks = 0;
};

// Independent audit of a finished run: Rankine-Hugoniot on every logged
// front, the flux constraint at the SV traces, exact mass balance over the
// window, and admissibility of the SV slopes.
SolutionReport check_solution(const SimState& st, const std::vector<Snapshot>& snaps,
                              const Rat& x_min, const Rat& x_max);

void write_snapshots_csv(std::ostream& os, const std::vector<Snapshot>& snaps);
void write_events_jsonl(std::ostream& os, const std::vector<InteractionEvent>& log);

}  // namespace wft

#endif

#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ppwb/compiler.hpp"
#include "ppwb/config.hpp"
#include "ppwb/semantics.hpp"

namespace ppwb {

// A compiled protocol bound against its source: decoded symbol tables with
// all payload names resolved to source ids, plus reverse lookups and a
// by-family index over the generated transitions. Non-owning; the source and
// target must outlive the context.
struct SimContext {
  const ProtocolSpec* source = nullptr;
  const CompiledProtocol* target = nullptr;
  SimView view;

  // per compiled state id
  std::vector<char> state_locked;
  std::vector<int> state_compute;  // source state id of the compute component

  struct EdgeInfo {
    EdgeKind kind = EdgeKind::Init;
    int backup_state = -1;  // source ids, -1 where not applicable
    int backup_edge = -1;
    int live = -1;
  };
  std::vector<EdgeInfo> edge_info;  // per compiled edge id

  // reverse lookups
  std::vector<int> unlocked_of;  // source state id -> compiled U state
  std::vector<int> locked_of;    // source state id -> compiled L state
  // (kind, backup_state, backup_edge, live) -> compiled edge id
  std::map<std::array<int, 4>, int> edge_ids;

  std::vector<Family> family_of;                        // per target transition
  std::vector<std::vector<int>> by_family;              // family -> transitions
  std::map<std::pair<int, int>, std::vector<int>> by_family_origin;

  bool mediated_source() const { return source->model == Model::Mediated; }

  // -1 when the combination does not exist in the compiled edge alphabet.
  int edge_id(EdgeKind kind, int backup_state, int backup_edge, int live) const;
  int init_edge(int live = -1) const {
    return edge_id(EdgeKind::Init, -1, -1, live);
  }

  // Throws TargetMismatch when the compiled protocol cannot have come from
  // this source (undecodable symbols, missing product states, foreign
  // payloads, diverging alphabets or provenance gaps).
  static SimContext bind(const ProtocolSpec& source, const CompiledProtocol& target);
};

// Translation of source configurations into the compiled protocol: agents
// unlocked, edges neutral (keeping the live source edge value for mediated
// sources). Throws StateNotInSource for states outside the source protocol.
MediatedConfiguration translate(const SimContext& ctx, const Configuration& c);
MediatedConfiguration translate(const SimContext& ctx, const MediatedConfiguration& c);

// True iff d is the image of some source configuration under translate():
// every agent unlocked and every edge side neutral.
bool is_translated_form(const SimContext& ctx, const MediatedConfiguration& d);

// Reconstruct the source configuration a compiled configuration stands for:
// an agent holding the only pending, unacknowledged request falls back to its
// backup; every other agent keeps its compute state. Total on well-formed
// configurations; callers decide reachability.
Configuration normalize_plain(const SimContext& ctx, const MediatedConfiguration& d);
MediatedConfiguration normalize_mediated(const SimContext& ctx,
                                         const MediatedConfiguration& d);

template <class C>
C normalize_as(const SimContext& ctx, const MediatedConfiguration& d);
template <>
inline Configuration normalize_as<Configuration>(const SimContext& ctx,
                                                 const MediatedConfiguration& d) {
  return normalize_plain(ctx, d);
}
template <>
inline MediatedConfiguration normalize_as<MediatedConfiguration>(
    const SimContext& ctx, const MediatedConfiguration& d) {
  return normalize_mediated(ctx, d);
}

// The steps driving d back to translated form: conclude committed
// conversations (t3 then t4 per pair), finish half-concluded ones (t4) and
// abort pending requests (t5). Pairs are scanned in ascending order.
struct CleanupSchedule {
  std::vector<StepLabel> steps;
  MediatedConfiguration endpoint;
};

// Non-throwing cleanup: on failure, steps holds the enabled prefix and the
// missing_* fields name the unresolvable step (or stay unset when the full
// schedule ran but did not reach translated form).
struct CleanupAttempt {
  bool ok = false;
  std::vector<StepLabel> steps;
  MediatedConfiguration endpoint;
  std::optional<Family> missing_family;
  int missing_initiator = -1;
  int missing_responder = -1;
  std::string reason;
};
CleanupAttempt try_cleanup(const SimContext& ctx, const MediatedConfiguration& d);

// Throws NotCleanable when a scheduled step cannot be resolved or the
// endpoint is not in translated form (d is then outside the reachable set).
CleanupSchedule cleanup_schedule(const SimContext& ctx, const MediatedConfiguration& d);

// Internal building block, also used by the verifier: resolve the unique
// target transition of the given family whose left side matches w at
// (initiator, responder); nullopt when none exists.
std::optional<StepLabel> resolve_family_step(const SimContext& ctx,
                                             const MediatedConfiguration& w,
                                             Family family, int initiator,
                                             int responder);

}  // namespace ppwb

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppwb/protocol.hpp"

namespace ppwb {

// Transition families of the immediate-observation simulation. A two-way
// interaction of the source protocol is split into a four-step handshake:
//   t1  request   observer locks and backs up its old condition
//   t2  acknowledge  partner locks, takes its new state, marks responded
//   t3  conclude  observer unlocks into its new state
//   t4  finish    partner unlocks, edge returns to neutral
//   t5  abort     observer gives up a request that was not acknowledged
//   t6  shortcut for source transitions that are already observation-only
enum class Family { T1, T2, T3, T4, T5, T6 };

const char* family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

// Which source transition a generated transition came from, and as which
// family. Deduplicated instances carry one Origin per originator.
struct Origin {
  Family family;
  int source_transition = -1;
  friend auto operator<=>(const Origin&, const Origin&) = default;
};

struct CompiledProtocol {
  ProtocolSpec spec;  // always mediated and immediate-observation compliant
  Model source_model = Model::Plain;
  std::vector<std::vector<Origin>> provenance;  // parallel to spec.transitions
};

// Compile a plain protocol into an observation-only mediated protocol.
// With use_io_shortcut, source transitions that already leave the initiator
// unchanged are emitted as a single t6 instead of the five-family handshake.
CompiledProtocol compile_pp(const ProtocolSpec& source, bool use_io_shortcut = false);

// Compile a mediated protocol into an observation-only one. Edge states of
// the result carry two components: the handshake marker (with a backup of the
// observer's pre-interaction condition) and the live source edge value.
CompiledProtocol compile_mpp(const ProtocolSpec& source);

// Provenance lookup; throws UnknownTransition for indices outside the
// compiled transition set.
const std::vector<Origin>& classify(const CompiledProtocol& pc, int transition_index);

// Index of a transition record, -1 if the record is not part of pc.
int find_transition(const CompiledProtocol& pc, const Transition& t);

// --- generated symbol naming -------------------------------------------
//
// Compiled protocols use a reserved printable naming scheme so they survive
// the text format:
//   agent states   U:q  L:q
//   edge states    eps  sr  bak:q            (plain source)
//                  eps|s  sr|s  bak:q:s|s2   (mediated source)
// Source symbols therefore must not contain ':' or '|'.

inline constexpr std::string_view kInitName = "eps";
inline constexpr std::string_view kRespondedName = "sr";

std::string unlocked_name(std::string_view q);
std::string locked_name(std::string_view q);
std::string backup_name(std::string_view q);
std::string backup_pair_name(std::string_view q, std::string_view s);
std::string edge_pair_name(std::string_view first, std::string_view live);

enum class EdgeKind { Init, Responded, Backup };

struct DecodedState {
  bool locked = false;
  std::string source_state;
};

struct DecodedEdge {
  EdgeKind kind = EdgeKind::Init;
  bool pair = false;          // true for mediated-source compilations
  std::string backup_state;   // kind == Backup
  std::string backup_edge;    // kind == Backup and pair
  std::string live;           // pair only: the live source edge value
};

std::optional<DecodedState> decode_state_name(std::string_view name);
std::optional<DecodedEdge> decode_edge_name(std::string_view name);

// Decoded symbol tables of a compiled protocol. Throws TargetMismatch when a
// symbol does not follow the naming scheme or the tables are inconsistent.
struct SimView {
  bool mediated_source = false;
  std::vector<DecodedState> states;  // by compiled state id
  std::vector<DecodedEdge> edges;    // by compiled edge id
  static SimView of(const ProtocolSpec& compiled);
};

}  // namespace ppwb

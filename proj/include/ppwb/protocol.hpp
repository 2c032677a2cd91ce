#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ppwb/errors.hpp"

namespace ppwb {

// Interaction model of a protocol. Immediate-observation protocols are not a
// separate model: they are plain or mediated protocols whose transitions all
// leave the initiator untouched (see is_immediate_observation()).
enum class Model { Plain, Mediated };

// One pairwise interaction rule. States and edge states are stored as indices
// into the owning ProtocolSpec's symbol tables. Plain transitions leave the
// edge fields at -1.
//
//   plain:    (p, q)          -> (p2, q2)
//   mediated: (p, r, q, s)    -> (p2, r2, q2, s2)
//
// p/r belong to the initiator, q/s to the responder; r is the initiator's
// side of the shared edge and s the responder's side.
struct Transition {
  int p = -1, q = -1, p2 = -1, q2 = -1;
  int r = -1, s = -1, r2 = -1, s2 = -1;
  friend bool operator==(const Transition&, const Transition&) = default;
};

// A protocol definition: agent states, input alphabet, optional edge states,
// input/output maps and the transition set. The transition set is a relation;
// pairs without a matching record are silent and never produce steps.
struct ProtocolSpec {
  Model model = Model::Plain;
  std::vector<std::string> states;       // Q, index is the state id
  std::vector<std::string> alphabet;     // Sigma
  std::vector<std::string> edge_states;  // S, empty for plain protocols
  int initial_edge = -1;                 // id into edge_states (mediated only)
  std::vector<int> input_map;            // alphabet id -> state id
  std::vector<int> output_map;           // state id -> 0 or 1
  std::vector<Transition> transitions;

  int state_id(std::string_view name) const;
  int edge_id(std::string_view name) const;
  int symbol_id(std::string_view name) const;

  // Append a fresh symbol; duplicates raise MalformedSource.
  int add_state(std::string name);
  int add_symbol(std::string name);
  int add_edge_state(std::string name);

  // True iff no transition changes the initiator's agent state (plain) or
  // its agent state and edge side (mediated).
  bool is_immediate_observation() const;

  // Structural well-formedness; throws MalformedSource with a reason.
  void validate() const;

  friend bool operator==(const ProtocolSpec&, const ProtocolSpec&) = default;
};

}  // namespace ppwb

#pragma once

#include <span>
#include <string>
#include <vector>

#include "ppwb/config.hpp"
#include "ppwb/protocol.hpp"

namespace ppwb {

// Resolve a list of input symbol names to alphabet ids.
// Throws UnknownInputSymbol for names outside the alphabet.
std::vector<int> resolve_input(const ProtocolSpec& p,
                               const std::vector<std::string>& symbols);

// Initial configuration for an input vector (alphabet ids). Plain protocols
// get the vector of mapped states; mediated protocols get the matrix with
// mapped states on the diagonal and the initial edge state everywhere else.
Configuration global_input_plain(const ProtocolSpec& p, std::span<const int> input);
MediatedConfiguration global_input_mediated(const ProtocolSpec& p,
                                            std::span<const int> input);

template <class C>
C global_input_as(const ProtocolSpec& p, std::span<const int> input);
template <>
inline Configuration global_input_as<Configuration>(const ProtocolSpec& p,
                                                    std::span<const int> input) {
  return global_input_plain(p, input);
}
template <>
inline MediatedConfiguration global_input_as<MediatedConfiguration>(
    const ProtocolSpec& p, std::span<const int> input) {
  return global_input_mediated(p, input);
}

// Consensus output: 0 or 1 when every agent agrees, Bot otherwise. Edge
// states are ignored for mediated configurations.
OutputValue global_output(const ProtocolSpec& p, const Configuration& c);
OutputValue global_output(const ProtocolSpec& p, const MediatedConfiguration& c);

// All steps enabled in c, ordered by (transition, initiator, responder).
std::vector<StepLabel> enabled_steps(const ProtocolSpec& p, const Configuration& c);
std::vector<StepLabel> enabled_steps(const ProtocolSpec& p,
                                     const MediatedConfiguration& c);

bool step_enabled(const ProtocolSpec& p, const Configuration& c, const StepLabel& l);
bool step_enabled(const ProtocolSpec& p, const MediatedConfiguration& c,
                  const StepLabel& l);

// Apply one step. Exactly the entries named by the transition change; all
// other entries are copied untouched. Throws StepNotEnabled.
Configuration apply_step(const ProtocolSpec& p, const Configuration& c,
                         const StepLabel& l);
MediatedConfiguration apply_step(const ProtocolSpec& p,
                                 const MediatedConfiguration& c,
                                 const StepLabel& l);

}  // namespace ppwb

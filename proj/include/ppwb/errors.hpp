#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppwb {

// Base class for all workbench errors so callers can catch in one place.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text format could not be parsed (also covers ill-formed protocol files).
struct ParseError : Error {
  using Error::Error;
};

// A protocol definition violates a structural requirement.
struct MalformedSource : Error {
  using Error::Error;
};

// An input symbol is not part of the protocol's alphabet.
struct UnknownInputSymbol : Error {
  using Error::Error;
};

// A step label does not match any enabled step of the configuration.
struct StepNotEnabled : Error {
  using Error::Error;
};

// A transition index or record is not part of the compiled protocol.
struct UnknownTransition : Error {
  using Error::Error;
};

// A configuration refers to states outside the source protocol.
struct StateNotInSource : Error {
  using Error::Error;
};

// The cleanup schedule hit an unresolvable step; the configuration is not
// reachable from any translated configuration.
struct NotCleanable : Error {
  using Error::Error;
};

// A compiled protocol does not bind against the given source protocol.
struct TargetMismatch : Error {
  using Error::Error;
};

// Component analysis was requested on a truncated reachability graph.
struct PartialGraph : Error {
  using Error::Error;
};

// Exploration hit its node limit. The partial graph remains available via
// explore(), which reports truncation through a flag instead of throwing.
struct StateSpaceExceeded : Error {
  std::size_t node_limit;
  std::size_t nodes_seen;
  StateSpaceExceeded(std::size_t limit, std::size_t seen)
      : Error("state space exceeded node limit " + std::to_string(limit) +
              " (" + std::to_string(seen) + " nodes explored)"),
        node_limit(limit),
        nodes_seen(seen) {}
};

}  // namespace ppwb

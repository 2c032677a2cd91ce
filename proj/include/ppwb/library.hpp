#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ppwb/protocol.hpp"

namespace ppwb {

// Canonical protocols used by tests, the acceptance suite and as shipped
// examples. Each entry documents the predicate it computes over input
// multisets and a population bound up to which the self-test verifies it.
struct LibraryEntry {
  std::string name;
  ProtocolSpec spec;
  std::string predicate_doc;
  int documented_bound = 4;
  // Ground truth over input symbol ids; returns 0 or 1.
  std::function<int(const std::vector<int>&)> predicate;
};

// "at least one 1": one-way infection, already observation-only.
LibraryEntry detect_one();

// "at least two 1s": a genuinely two-way source exercising the full
// five-family handshake.
LibraryEntry threshold2();

// "more 1s than 0s", ties report 0. Four states: strong/weak per leaning;
// strong opposites cancel into weak-0/weak-1, strongs convert weaks, and
// weak-0 converts weak-1 so all-weak tie populations settle on 0.
LibraryEntry majority();

// "count of 1s is congruent to r modulo m". One carrier accumulates the sum
// while everyone else becomes a follower echoing the carrier's verdict.
// Requires m >= 2 and 0 <= r < m (std::invalid_argument otherwise).
LibraryEntry modulo(int m, int r);

// "at least one 1", mediated: each ordered pair may fire at most once
// because the transition consumes the fresh edge.
LibraryEntry detect_one_once();

// All entries above with modulo instantiated as modulo(2,0).
std::vector<LibraryEntry> standard_entries();

}  // namespace ppwb

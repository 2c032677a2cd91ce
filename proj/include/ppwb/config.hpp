#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ppwb {

// Snapshot of a plain population: one state id per agent. Agent indices are
// 0-based in memory; all file formats and reports print them 1-based.
struct Configuration {
  std::vector<int> agents;

  int size() const { return static_cast<int>(agents.size()); }
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// Snapshot of a mediated population: an n x n matrix with agent states on the
// diagonal and edge sides off it. Cell (i,j) holds agent i's side of the edge
// shared with agent j.
struct MediatedConfiguration {
  int n = 0;
  std::vector<int> cells;  // row-major, n*n entries

  static MediatedConfiguration sized(int n) {
    MediatedConfiguration m;
    m.n = n;
    m.cells.assign(static_cast<std::size_t>(n) * n, -1);
    return m;
  }
  int& at(int i, int j) { return cells[static_cast<std::size_t>(i) * n + j]; }
  int at(int i, int j) const { return cells[static_cast<std::size_t>(i) * n + j]; }
  int agent(int i) const { return at(i, i); }
  int size() const { return n; }
  friend bool operator==(const MediatedConfiguration&,
                         const MediatedConfiguration&) = default;
};

// One concrete step: a transition together with the acting agents.
struct StepLabel {
  int transition = -1;  // index into ProtocolSpec::transitions
  int initiator = -1;   // 0-based agent index
  int responder = -1;
  friend auto operator<=>(const StepLabel&, const StepLabel&) = default;
};

// Aggregated output of a configuration; Bot marks missing consensus and is
// never a per-agent value.
enum class OutputValue { Zero = 0, One = 1, Bot = 2 };

inline std::uint64_t fnv1a(const std::vector<int>& v, std::uint64_t h = 1469598103934665603ULL) {
  for (int x : v) {
    auto u = static_cast<std::uint32_t>(x);
    for (int b = 0; b < 4; ++b) {
      h ^= (u >> (b * 8)) & 0xffu;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const { return fnv1a(c.agents); }
};

struct MediatedConfigurationHash {
  std::size_t operator()(const MediatedConfiguration& c) const {
    return fnv1a(c.cells, 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(c.n));
  }
};

template <class C>
struct ConfigHasher;
template <>
struct ConfigHasher<Configuration> : ConfigurationHash {};
template <>
struct ConfigHasher<MediatedConfiguration> : MediatedConfigurationHash {};

}  // namespace ppwb

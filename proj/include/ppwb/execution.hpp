#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ppwb/config.hpp"
#include "ppwb/semantics.hpp"

namespace ppwb {

inline constexpr std::size_t kDefaultNodeLimit = 5'000'000;

struct ExploreOptions {
  std::size_t node_limit = kDefaultNodeLimit;
  // Plain configurations only: sort agent vectors before deduplication.
  // Quotients the graph by agent permutations; step labels then refer to the
  // sorted representatives, so leave this off when labels must stay
  // index-faithful.
  bool canonicalize_plain = false;
};

// Breadth-first closure of the step relation. Node 0 is the root; nodes are
// numbered in discovery order, successors enumerated in enabled_steps order,
// so identical inputs always produce the identical graph.
template <class C>
struct ReachabilityGraph {
  std::vector<C> nodes;
  std::vector<std::vector<std::pair<StepLabel, int>>> edges;
  std::vector<int> parent;             // BFS tree, -1 at the root
  std::vector<StepLabel> parent_label;
  std::unordered_map<C, int, ConfigHasher<C>> index;
  bool complete = true;
  std::size_t node_limit = kDefaultNodeLimit;

  int find(const C& c) const {
    auto it = index.find(c);
    return it == index.end() ? -1 : it->second;
  }
  // Labels along the BFS tree path from the root to node v.
  std::vector<StepLabel> path_from_root(int v) const {
    std::vector<StepLabel> path;
    for (int u = v; parent[u] >= 0; u = parent[u]) path.push_back(parent_label[u]);
    std::reverse(path.begin(), path.end());
    return path;
  }
};

template <class C>
ReachabilityGraph<C> explore(const ProtocolSpec& p, C root, ExploreOptions opt = {}) {
  if constexpr (std::is_same_v<C, Configuration>) {
    if (opt.canonicalize_plain) std::sort(root.agents.begin(), root.agents.end());
  }
  ReachabilityGraph<C> g;
  g.node_limit = opt.node_limit;
  g.nodes.push_back(root);
  g.edges.emplace_back();
  g.parent.push_back(-1);
  g.parent_label.emplace_back();
  g.index.emplace(std::move(root), 0);

  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    for (const StepLabel& lab : enabled_steps(p, g.nodes[u])) {
      C succ = apply_step(p, g.nodes[u], lab);
      if constexpr (std::is_same_v<C, Configuration>) {
        if (opt.canonicalize_plain) std::sort(succ.agents.begin(), succ.agents.end());
      }
      int v = g.find(succ);
      if (v < 0) {
        if (g.nodes.size() >= opt.node_limit) {
          g.complete = false;
          return g;
        }
        v = static_cast<int>(g.nodes.size());
        g.nodes.push_back(succ);
        g.edges.emplace_back();
        g.parent.push_back(static_cast<int>(u));
        g.parent_label.push_back(lab);
        g.index.emplace(std::move(succ), v);
      }
      g.edges[u].push_back({lab, v});
    }
  }
  return g;
}

// Throwing variant of explore(): raises StateSpaceExceeded on truncation.
template <class C>
ReachabilityGraph<C> reachable(const ProtocolSpec& p, const C& root,
                               ExploreOptions opt = {}) {
  ReachabilityGraph<C> g = explore(p, root, opt);
  if (!g.complete) throw StateSpaceExceeded(opt.node_limit, g.nodes.size());
  return g;
}

// Strongly connected components of an edge list (Tarjan, iterative).
// Components are listed with ascending members and ordered by smallest node.
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<std::pair<StepLabel, int>>>& edges);

// Components without edges into other components: exactly the sets of
// configurations a fair execution visits forever. Throws PartialGraph on a
// truncated graph.
template <class C>
std::vector<std::vector<int>> terminal_sccs(const ReachabilityGraph<C>& g) {
  if (!g.complete) throw PartialGraph("terminal components need the closed graph");
  std::vector<std::vector<int>> comps = strongly_connected_components(g.edges);
  std::vector<int> comp_of(g.nodes.size());
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
  std::vector<std::vector<int>> terminal;
  for (const auto& comp : comps) {
    bool exits = false;
    for (int v : comp) {
      for (const auto& [lab, w] : g.edges[v])
        if (comp_of[w] != comp_of[v]) {
          exits = true;
          break;
        }
      if (exits) break;
    }
    if (!exits) terminal.push_back(comp);
  }
  return terminal;
}

enum class Stability { Stable0, Stable1, NotStable };

// A configuration is output stable iff every configuration reachable from it
// has the same 0/1 output. Throws StateSpaceExceeded.
template <class C>
Stability output_stable(const ProtocolSpec& p, const C& c, ExploreOptions opt = {}) {
  ReachabilityGraph<C> g = reachable(p, c, opt);
  OutputValue x = global_output(p, g.nodes[0]);
  if (x == OutputValue::Bot) return Stability::NotStable;
  for (const C& node : g.nodes)
    if (global_output(p, node) != x) return Stability::NotStable;
  return x == OutputValue::Zero ? Stability::Stable0 : Stability::Stable1;
}

enum class PredicateValue { Zero, One, NotWellSpecified };

// Value the protocol computes on an input vector: fair executions converge
// to an output x iff every terminal component is an output-x consensus.
// Requires at least two agents. Throws StateSpaceExceeded.
PredicateValue predicate_value(const ProtocolSpec& p, std::span<const int> input,
                               ExploreOptions opt = {});

template <class C>
struct Trace {
  C start;
  std::vector<std::pair<StepLabel, C>> steps;
  std::uint64_t seed = 0;
};

// Uniform choice among enabled steps, reproducible per seed. Uniform random
// scheduling is fair with probability 1, so traces are smoke tests, never
// stability evidence.
template <class C>
Trace<C> run_random(const ProtocolSpec& p, const C& start, std::uint64_t seed,
                    std::size_t max_steps) {
  std::mt19937_64 rng(seed);
  auto uniform_below = [&rng](std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = rng();
      if (r >= threshold) return r % n;
    }
  };
  Trace<C> tr{start, {}, seed};
  C cur = start;
  for (std::size_t k = 0; k < max_steps; ++k) {
    std::vector<StepLabel> en = enabled_steps(p, cur);
    if (en.empty()) break;
    const StepLabel& pick = en[uniform_below(en.size())];
    cur = apply_step(p, cur, pick);
    tr.steps.push_back({pick, cur});
  }
  return tr;
}

}  // namespace ppwb

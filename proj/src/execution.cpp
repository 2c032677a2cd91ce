#include "ppwb/execution.hpp"

#include <stdexcept>

namespace ppwb {

std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<std::pair<StepLabel, int>>>& edges) {
  int n = static_cast<int>(edges.size());
  std::vector<int> idx(n, -1), low(n, 0), comp_of(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;

  // Explicit DFS stack: (node, next child position).
  std::vector<std::pair<int, std::size_t>> dfs;
  int counter = 0;
  for (int root = 0; root < n; ++root) {
    if (idx[root] >= 0) continue;
    dfs.push_back({root, 0});
    while (!dfs.empty()) {
      auto& [v, child] = dfs.back();
      if (child == 0) {
        idx[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (child < edges[v].size()) {
        int w = edges[v][child].second;
        ++child;
        if (idx[w] < 0) {
          dfs.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], idx[w]);
      }
      if (descended) continue;
      if (low[v] == idx[v]) {
        std::vector<int> comp;
        for (;;) {
          int w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp_of[w] = static_cast<int>(comps.size());
          comp.push_back(w);
          if (w == v) break;
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      int finished = v;
      dfs.pop_back();
      if (!dfs.empty()) {
        int parent = dfs.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

PredicateValue predicate_value(const ProtocolSpec& p, std::span<const int> input,
                               ExploreOptions opt) {
  if (input.size() < 2)
    throw std::invalid_argument("predicate evaluation needs at least two agents");

  auto classify = [&p](const auto& g) {
    int agreed = -1;
    for (const auto& comp : terminal_sccs(g)) {
      for (int v : comp) {
        OutputValue out = global_output(p, g.nodes[v]);
        if (out == OutputValue::Bot) return PredicateValue::NotWellSpecified;
        int x = out == OutputValue::One ? 1 : 0;
        if (agreed < 0) agreed = x;
        if (agreed != x) return PredicateValue::NotWellSpecified;
      }
    }
    return agreed == 1 ? PredicateValue::One : PredicateValue::Zero;
  };

  if (p.model == Model::Plain)
    return classify(reachable(p, global_input_plain(p, input), opt));
  return classify(reachable(p, global_input_mediated(p, input), opt));
}

}  // namespace ppwb

#include "ppwb/semantics.hpp"

#include <string>

namespace ppwb {

namespace {

void check_input_ids(const ProtocolSpec& p, std::span<const int> input) {
  if (input.empty()) throw UnknownInputSymbol("empty input vector");
  for (int s : input)
    if (s < 0 || s >= static_cast<int>(p.alphabet.size()))
      throw UnknownInputSymbol("input symbol id " + std::to_string(s) +
                               " outside the alphabet");
}

bool matches_plain(const ProtocolSpec& p, const Configuration& c,
                   const StepLabel& l) {
  if (l.transition < 0 || l.transition >= static_cast<int>(p.transitions.size()))
    return false;
  int n = c.size();
  if (l.initiator < 0 || l.initiator >= n || l.responder < 0 ||
      l.responder >= n || l.initiator == l.responder)
    return false;
  const Transition& t = p.transitions[l.transition];
  return c.agents[l.initiator] == t.p && c.agents[l.responder] == t.q;
}

bool matches_mediated(const ProtocolSpec& p, const MediatedConfiguration& c,
                      const StepLabel& l) {
  if (l.transition < 0 || l.transition >= static_cast<int>(p.transitions.size()))
    return false;
  int n = c.n;
  if (l.initiator < 0 || l.initiator >= n || l.responder < 0 ||
      l.responder >= n || l.initiator == l.responder)
    return false;
  const Transition& t = p.transitions[l.transition];
  int i = l.initiator, j = l.responder;
  return c.at(i, i) == t.p && c.at(i, j) == t.r && c.at(j, j) == t.q &&
         c.at(j, i) == t.s;
}

}  // namespace

std::vector<int> resolve_input(const ProtocolSpec& p,
                               const std::vector<std::string>& symbols) {
  std::vector<int> ids;
  ids.reserve(symbols.size());
  for (const auto& s : symbols) {
    int id = p.symbol_id(s);
    if (id < 0) throw UnknownInputSymbol("unknown input symbol '" + s + "'");
    ids.push_back(id);
  }
  return ids;
}

Configuration global_input_plain(const ProtocolSpec& p, std::span<const int> input) {
  check_input_ids(p, input);
  Configuration c;
  c.agents.reserve(input.size());
  for (int s : input) c.agents.push_back(p.input_map[s]);
  return c;
}

MediatedConfiguration global_input_mediated(const ProtocolSpec& p,
                                            std::span<const int> input) {
  check_input_ids(p, input);
  int n = static_cast<int>(input.size());
  MediatedConfiguration m = MediatedConfiguration::sized(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = (i == j) ? p.input_map[input[i]] : p.initial_edge;
  return m;
}

OutputValue global_output(const ProtocolSpec& p, const Configuration& c) {
  if (c.agents.empty()) return OutputValue::Bot;
  int first = p.output_map[c.agents[0]];
  for (int a : c.agents)
    if (p.output_map[a] != first) return OutputValue::Bot;
  return first == 0 ? OutputValue::Zero : OutputValue::One;
}

OutputValue global_output(const ProtocolSpec& p, const MediatedConfiguration& c) {
  if (c.n == 0) return OutputValue::Bot;
  int first = p.output_map[c.agent(0)];
  for (int i = 0; i < c.n; ++i)
    if (p.output_map[c.agent(i)] != first) return OutputValue::Bot;
  return first == 0 ? OutputValue::Zero : OutputValue::One;
}

std::vector<StepLabel> enabled_steps(const ProtocolSpec& p, const Configuration& c) {
  std::vector<StepLabel> out;
  int n = c.size();
  for (int t = 0; t < static_cast<int>(p.transitions.size()); ++t) {
    const Transition& tr = p.transitions[t];
    for (int i = 0; i < n; ++i) {
      if (c.agents[i] != tr.p) continue;
      for (int j = 0; j < n; ++j) {
        if (i == j || c.agents[j] != tr.q) continue;
        out.push_back({t, i, j});
      }
    }
  }
  return out;
}

std::vector<StepLabel> enabled_steps(const ProtocolSpec& p,
                                     const MediatedConfiguration& c) {
  std::vector<StepLabel> out;
  int n = c.n;
  for (int t = 0; t < static_cast<int>(p.transitions.size()); ++t) {
    const Transition& tr = p.transitions[t];
    for (int i = 0; i < n; ++i) {
      if (c.at(i, i) != tr.p) continue;
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (c.at(i, j) == tr.r && c.at(j, j) == tr.q && c.at(j, i) == tr.s)
          out.push_back({t, i, j});
      }
    }
  }
  return out;
}

bool step_enabled(const ProtocolSpec& p, const Configuration& c, const StepLabel& l) {
  return matches_plain(p, c, l);
}

bool step_enabled(const ProtocolSpec& p, const MediatedConfiguration& c,
                  const StepLabel& l) {
  return matches_mediated(p, c, l);
}

Configuration apply_step(const ProtocolSpec& p, const Configuration& c,
                         const StepLabel& l) {
  if (!matches_plain(p, c, l)) throw StepNotEnabled("step not enabled");
  const Transition& t = p.transitions[l.transition];
  Configuration out = c;
  out.agents[l.initiator] = t.p2;
  out.agents[l.responder] = t.q2;
  return out;
}

MediatedConfiguration apply_step(const ProtocolSpec& p,
                                 const MediatedConfiguration& c,
                                 const StepLabel& l) {
  if (!matches_mediated(p, c, l)) throw StepNotEnabled("step not enabled");
  const Transition& t = p.transitions[l.transition];
  MediatedConfiguration out = c;
  int i = l.initiator, j = l.responder;
  out.at(i, i) = t.p2;
  out.at(i, j) = t.r2;
  out.at(j, j) = t.q2;
  out.at(j, i) = t.s2;
  return out;
}

}  // namespace ppwb

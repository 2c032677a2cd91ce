#include "ppwb/protocol.hpp"

#include <algorithm>

namespace ppwb {

namespace {

int find_name(const std::vector<std::string>& names, std::string_view name) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

int append_name(std::vector<std::string>& names, std::string name,
                const char* what) {
  if (name.empty())
    throw MalformedSource(std::string("empty ") + what + " name");
  if (find_name(names, name) >= 0)
    throw MalformedSource(std::string("duplicate ") + what + " '" + name + "'");
  names.push_back(std::move(name));
  return static_cast<int>(names.size()) - 1;
}

bool symbol_ok(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == '#')
      return false;
  return true;
}

}  // namespace

int ProtocolSpec::state_id(std::string_view name) const {
  return find_name(states, name);
}

int ProtocolSpec::edge_id(std::string_view name) const {
  return find_name(edge_states, name);
}

int ProtocolSpec::symbol_id(std::string_view name) const {
  return find_name(alphabet, name);
}

int ProtocolSpec::add_state(std::string name) {
  return append_name(states, std::move(name), "state");
}

int ProtocolSpec::add_symbol(std::string name) {
  return append_name(alphabet, std::move(name), "input symbol");
}

int ProtocolSpec::add_edge_state(std::string name) {
  return append_name(edge_states, std::move(name), "edge state");
}

bool ProtocolSpec::is_immediate_observation() const {
  for (const Transition& t : transitions) {
    if (t.p != t.p2) return false;
    if (model == Model::Mediated && t.r != t.r2) return false;
  }
  return true;
}

void ProtocolSpec::validate() const {
  auto state_ok = [this](int id) {
    return id >= 0 && id < static_cast<int>(states.size());
  };
  auto edge_ok = [this](int id) {
    return id >= 0 && id < static_cast<int>(edge_states.size());
  };

  if (states.empty()) throw MalformedSource("protocol has no states");
  if (alphabet.empty()) throw MalformedSource("protocol has no input alphabet");
  for (const auto& n : states)
    if (!symbol_ok(n)) throw MalformedSource("bad state name '" + n + "'");
  for (const auto& n : alphabet)
    if (!symbol_ok(n)) throw MalformedSource("bad input symbol '" + n + "'");
  for (const auto& n : edge_states)
    if (!symbol_ok(n)) throw MalformedSource("bad edge state name '" + n + "'");

  if (input_map.size() != alphabet.size())
    throw MalformedSource("input map must cover the whole alphabet");
  for (int q : input_map)
    if (!state_ok(q)) throw MalformedSource("input map refers to unknown state");
  if (output_map.size() != states.size())
    throw MalformedSource("output map must cover all states");
  for (int b : output_map)
    if (b != 0 && b != 1) throw MalformedSource("output values must be 0 or 1");

  if (model == Model::Plain) {
    if (!edge_states.empty() || initial_edge != -1)
      throw MalformedSource("plain protocols must not declare edge states");
  } else {
    if (edge_states.empty())
      throw MalformedSource("mediated protocols need at least one edge state");
    if (!edge_ok(initial_edge))
      throw MalformedSource("initial edge state missing or unknown");
  }

  for (const Transition& t : transitions) {
    if (!state_ok(t.p) || !state_ok(t.q) || !state_ok(t.p2) || !state_ok(t.q2))
      throw MalformedSource("transition refers to unknown agent state");
    if (model == Model::Plain) {
      if (t.r != -1 || t.s != -1 || t.r2 != -1 || t.s2 != -1)
        throw MalformedSource("plain transition carries edge states");
    } else {
      if (!edge_ok(t.r) || !edge_ok(t.s) || !edge_ok(t.r2) || !edge_ok(t.s2))
        throw MalformedSource("transition refers to unknown edge state");
    }
  }
}

}  // namespace ppwb

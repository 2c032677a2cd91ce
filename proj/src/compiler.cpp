#include "ppwb/compiler.hpp"

#include <array>
#include <map>

namespace ppwb {

const char* family_name(Family f) {
  switch (f) {
    case Family::T1: return "t1";
    case Family::T2: return "t2";
    case Family::T3: return "t3";
    case Family::T4: return "t4";
    case Family::T5: return "t5";
    case Family::T6: return "t6";
  }
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
  for (Family f : {Family::T1, Family::T2, Family::T3, Family::T4, Family::T5,
                   Family::T6})
    if (name == family_name(f)) return f;
  return std::nullopt;
}

std::string unlocked_name(std::string_view q) { return "U:" + std::string(q); }
std::string locked_name(std::string_view q) { return "L:" + std::string(q); }
std::string backup_name(std::string_view q) { return "bak:" + std::string(q); }

std::string backup_pair_name(std::string_view q, std::string_view s) {
  return "bak:" + std::string(q) + ":" + std::string(s);
}

std::string edge_pair_name(std::string_view first, std::string_view live) {
  return std::string(first) + "|" + std::string(live);
}

std::optional<DecodedState> decode_state_name(std::string_view name) {
  if (name.size() > 2 && name.substr(0, 2) == "U:")
    return DecodedState{false, std::string(name.substr(2))};
  if (name.size() > 2 && name.substr(0, 2) == "L:")
    return DecodedState{true, std::string(name.substr(2))};
  return std::nullopt;
}

namespace {

std::optional<DecodedEdge> decode_edge_first(std::string_view first) {
  DecodedEdge e;
  if (first == kInitName) {
    e.kind = EdgeKind::Init;
    return e;
  }
  if (first == kRespondedName) {
    e.kind = EdgeKind::Responded;
    return e;
  }
  if (first.size() > 4 && first.substr(0, 4) == "bak:") {
    e.kind = EdgeKind::Backup;
    std::string_view payload = first.substr(4);
    auto colon = payload.find(':');
    if (colon == std::string_view::npos) {
      e.backup_state = std::string(payload);
    } else {
      e.backup_state = std::string(payload.substr(0, colon));
      e.backup_edge = std::string(payload.substr(colon + 1));
      if (e.backup_state.empty() || e.backup_edge.empty()) return std::nullopt;
    }
    if (e.backup_state.empty()) return std::nullopt;
    return e;
  }
  return std::nullopt;
}

}  // namespace

std::optional<DecodedEdge> decode_edge_name(std::string_view name) {
  auto bar = name.find('|');
  if (bar == std::string_view::npos) {
    auto e = decode_edge_first(name);
    if (e && e->kind == EdgeKind::Backup && !e->backup_edge.empty())
      return std::nullopt;  // two-part backup requires a live component
    return e;
  }
  if (name.find('|', bar + 1) != std::string_view::npos) return std::nullopt;
  auto e = decode_edge_first(name.substr(0, bar));
  if (!e) return std::nullopt;
  e->pair = true;
  e->live = std::string(name.substr(bar + 1));
  if (e->live.empty()) return std::nullopt;
  if (e->kind == EdgeKind::Backup && e->backup_edge.empty()) return std::nullopt;
  return e;
}

SimView SimView::of(const ProtocolSpec& compiled) {
  if (compiled.model != Model::Mediated)
    throw TargetMismatch("compiled protocol must be mediated");
  SimView v;
  v.states.reserve(compiled.states.size());
  for (const auto& n : compiled.states) {
    auto d = decode_state_name(n);
    if (!d) throw TargetMismatch("agent state '" + n + "' is not a generated symbol");
    v.states.push_back(*d);
  }
  if (compiled.edge_states.empty())
    throw TargetMismatch("compiled protocol has no edge states");
  v.edges.reserve(compiled.edge_states.size());
  for (const auto& n : compiled.edge_states) {
    auto d = decode_edge_name(n);
    if (!d) throw TargetMismatch("edge state '" + n + "' is not a generated symbol");
    v.edges.push_back(*d);
  }
  v.mediated_source = v.edges.front().pair;
  for (const auto& e : v.edges)
    if (e.pair != v.mediated_source)
      throw TargetMismatch("mix of one- and two-component edge states");
  return v;
}

namespace {

struct Emitter {
  CompiledProtocol& out;
  std::map<std::array<int, 8>, int> index;

  void emit(const Transition& t, Family f, int source_idx) {
    std::array<int, 8> key{t.p, t.q, t.p2, t.q2, t.r, t.s, t.r2, t.s2};
    auto [it, fresh] = index.try_emplace(key, static_cast<int>(out.spec.transitions.size()));
    if (fresh) {
      out.spec.transitions.push_back(t);
      out.provenance.push_back({Origin{f, source_idx}});
      return;
    }
    auto& origins = out.provenance[it->second];
    Origin o{f, source_idx};
    for (const Origin& prev : origins)
      if (prev == o) return;
    origins.push_back(o);
  }
};

void check_compile_source(const ProtocolSpec& source, Model expected) {
  source.validate();
  if (source.model != expected)
    throw MalformedSource(expected == Model::Plain
                              ? "compile_pp expects a plain protocol"
                              : "compile_mpp expects a mediated protocol");
  auto reserved_free = [](const std::string& s) {
    return s.find(':') == std::string::npos && s.find('|') == std::string::npos;
  };
  for (const auto& n : source.states)
    if (!reserved_free(n))
      throw MalformedSource("state '" + n + "' uses a reserved character (':' or '|')");
  for (const auto& n : source.edge_states)
    if (!reserved_free(n))
      throw MalformedSource("edge state '" + n + "' uses a reserved character (':' or '|')");
}

// Shared between both compilers: the {locked,unlocked} x Q product states
// plus input/output maps that ignore the locking component.
void build_agent_layer(const ProtocolSpec& source, ProtocolSpec& out,
                       std::vector<int>& u_of, std::vector<int>& l_of) {
  int nq = static_cast<int>(source.states.size());
  u_of.resize(nq);
  l_of.resize(nq);
  for (int q = 0; q < nq; ++q) u_of[q] = out.add_state(unlocked_name(source.states[q]));
  for (int q = 0; q < nq; ++q) l_of[q] = out.add_state(locked_name(source.states[q]));
  out.alphabet = source.alphabet;
  out.input_map.resize(source.alphabet.size());
  for (std::size_t a = 0; a < source.alphabet.size(); ++a)
    out.input_map[a] = u_of[source.input_map[a]];
  out.output_map.resize(out.states.size());
  for (int q = 0; q < nq; ++q) {
    out.output_map[u_of[q]] = source.output_map[q];
    out.output_map[l_of[q]] = source.output_map[q];
  }
}

}  // namespace

CompiledProtocol compile_pp(const ProtocolSpec& source, bool use_io_shortcut) {
  check_compile_source(source, Model::Plain);

  CompiledProtocol pc;
  pc.source_model = Model::Plain;
  ProtocolSpec& out = pc.spec;
  out.model = Model::Mediated;

  std::vector<int> u_of, l_of;
  build_agent_layer(source, out, u_of, l_of);

  int eps = out.add_edge_state(std::string(kInitName));
  int sr = out.add_edge_state(std::string(kRespondedName));
  int nq = static_cast<int>(source.states.size());
  std::vector<int> bak_of(nq);
  for (int q = 0; q < nq; ++q) bak_of[q] = out.add_edge_state(backup_name(source.states[q]));
  out.initial_edge = eps;

  int nq2 = static_cast<int>(out.states.size());
  int ns2 = static_cast<int>(out.edge_states.size());
  Emitter em{pc, {}};

  for (int ti = 0; ti < static_cast<int>(source.transitions.size()); ++ti) {
    const Transition& t = source.transitions[ti];
    int p = t.p, q = t.q, p2 = t.p2, q2 = t.q2;

    if (use_io_shortcut && p == p2) {
      em.emit({u_of[p], u_of[q], u_of[p], u_of[q2], eps, eps, eps, eps},
              Family::T6, ti);
      continue;
    }

    // request: observer locks, backs up its state, asks for the interaction
    em.emit({u_of[p], u_of[q], u_of[p], l_of[q2], eps, eps, eps, bak_of[q]},
            Family::T1, ti);
    // acknowledge: partner locks, takes its result state, marks responded
    em.emit({l_of[q2], u_of[p], l_of[q2], l_of[p2], bak_of[q], eps, bak_of[q], sr},
            Family::T2, ti);
    // conclude: observer unlocks into its result state
    em.emit({l_of[p2], l_of[q2], l_of[p2], u_of[q2], sr, bak_of[q], sr, eps},
            Family::T3, ti);
    // finish: partner unlocks once the observer's side is neutral again
    for (int x = 0; x < nq2; ++x)
      em.emit({x, l_of[p2], x, u_of[p2], eps, sr, eps, eps}, Family::T4, ti);
    // abort: a pending request whose partner is not committed is withdrawn
    for (int x = 0; x < nq2; ++x)
      for (int z = 0; z < ns2; ++z) {
        if (z == sr) continue;
        em.emit({x, l_of[q2], x, u_of[q], z, bak_of[q], z, eps}, Family::T5, ti);
      }
  }
  return pc;
}

CompiledProtocol compile_mpp(const ProtocolSpec& source) {
  check_compile_source(source, Model::Mediated);

  CompiledProtocol pc;
  pc.source_model = Model::Mediated;
  ProtocolSpec& out = pc.spec;
  out.model = Model::Mediated;

  std::vector<int> u_of, l_of;
  build_agent_layer(source, out, u_of, l_of);

  int nq = static_cast<int>(source.states.size());
  int ns = static_cast<int>(source.edge_states.size());

  // Edge states are (marker, live) pairs: marker is eps, sr or a backup of
  // the observer's pre-interaction (state, edge) condition; live is the edge
  // value of the source protocol.
  auto pair_id = [&](const std::string& first, int live) {
    return out.add_edge_state(edge_pair_name(first, source.edge_states[live]));
  };
  std::vector<int> eps_live(ns), sr_live(ns);
  std::vector<std::vector<std::vector<int>>> bak_live(
      nq, std::vector<std::vector<int>>(ns, std::vector<int>(ns)));
  for (int w = 0; w < ns; ++w) eps_live[w] = pair_id(std::string(kInitName), w);
  for (int w = 0; w < ns; ++w) sr_live[w] = pair_id(std::string(kRespondedName), w);
  for (int q = 0; q < nq; ++q)
    for (int s = 0; s < ns; ++s)
      for (int w = 0; w < ns; ++w)
        bak_live[q][s][w] =
            pair_id(backup_pair_name(source.states[q], source.edge_states[s]), w);
  out.initial_edge = eps_live[source.initial_edge];

  int nq2 = static_cast<int>(out.states.size());
  int ns2 = static_cast<int>(out.edge_states.size());
  std::vector<bool> is_responded(ns2, false);
  for (int w = 0; w < ns; ++w) is_responded[sr_live[w]] = true;

  Emitter em{pc, {}};
  for (int ti = 0; ti < static_cast<int>(source.transitions.size()); ++ti) {
    const Transition& t = source.transitions[ti];
    int p = t.p, r = t.r, q = t.q, s = t.s;
    int p2 = t.p2, r2 = t.r2, q2 = t.q2, s2 = t.s2;
    int bak = bak_live[q][s][s2];  // backup of (q,s), live already advanced

    em.emit({u_of[p], u_of[q], u_of[p], l_of[q2],
             eps_live[r], eps_live[s], eps_live[r], bak},
            Family::T1, ti);
    em.emit({l_of[q2], u_of[p], l_of[q2], l_of[p2],
             bak, eps_live[r], bak, sr_live[r2]},
            Family::T2, ti);
    em.emit({l_of[p2], l_of[q2], l_of[p2], u_of[q2],
             sr_live[r2], bak, sr_live[r2], eps_live[s2]},
            Family::T3, ti);
    for (int x = 0; x < nq2; ++x)
      em.emit({x, l_of[p2], x, u_of[p2],
               eps_live[s2], sr_live[r2], eps_live[s2], eps_live[r2]},
              Family::T4, ti);
    for (int x = 0; x < nq2; ++x)
      for (int vw = 0; vw < ns2; ++vw) {
        if (is_responded[vw]) continue;  // a responded side is committed
        em.emit({x, l_of[q2], x, u_of[q], vw, bak, vw, eps_live[s]},
                Family::T5, ti);
      }
  }
  return pc;
}

const std::vector<Origin>& classify(const CompiledProtocol& pc, int transition_index) {
  if (transition_index < 0 ||
      transition_index >= static_cast<int>(pc.provenance.size()))
    throw UnknownTransition("transition index " + std::to_string(transition_index) +
                            " is not part of the compiled protocol");
  return pc.provenance[transition_index];
}

int find_transition(const CompiledProtocol& pc, const Transition& t) {
  for (std::size_t i = 0; i < pc.spec.transitions.size(); ++i)
    if (pc.spec.transitions[i] == t) return static_cast<int>(i);
  return -1;
}

}  // namespace ppwb

#include "ppwb/translation.hpp"

#include <string>

namespace ppwb {

namespace {

int require_source_state(const ProtocolSpec& source, const std::string& name) {
  int id = source.state_id(name);
  if (id < 0)
    throw TargetMismatch("compiled symbol refers to unknown source state '" +
                         name + "'");
  return id;
}

int require_source_edge(const ProtocolSpec& source, const std::string& name) {
  int id = source.edge_id(name);
  if (id < 0)
    throw TargetMismatch("compiled symbol refers to unknown source edge state '" +
                         name + "'");
  return id;
}

void check_shape(const SimContext& ctx, const MediatedConfiguration& d) {
  if (d.n < 1) throw StateNotInSource("empty configuration");
  int nq = static_cast<int>(ctx.target->spec.states.size());
  int ns = static_cast<int>(ctx.target->spec.edge_states.size());
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) {
      int v = d.at(i, j);
      if (i == j ? (v < 0 || v >= nq) : (v < 0 || v >= ns))
        throw StateNotInSource("configuration cell outside the compiled protocol");
    }
}

}  // namespace

int SimContext::edge_id(EdgeKind kind, int backup_state, int backup_edge,
                        int live) const {
  auto it = edge_ids.find(
      std::array<int, 4>{static_cast<int>(kind), backup_state, backup_edge, live});
  return it == edge_ids.end() ? -1 : it->second;
}

SimContext SimContext::bind(const ProtocolSpec& source, const CompiledProtocol& target) {
  source.validate();
  target.spec.validate();
  SimContext ctx;
  ctx.source = &source;
  ctx.target = &target;
  ctx.view = SimView::of(target.spec);

  if (ctx.view.mediated_source != (source.model == Model::Mediated))
    throw TargetMismatch("edge state shape does not match the source model");
  if (target.spec.alphabet != source.alphabet)
    throw TargetMismatch("input alphabets differ");
  if (target.provenance.size() != target.spec.transitions.size())
    throw TargetMismatch("provenance does not cover the transition set");

  int nq = static_cast<int>(source.states.size());
  ctx.unlocked_of.assign(nq, -1);
  ctx.locked_of.assign(nq, -1);
  ctx.state_locked.resize(target.spec.states.size());
  ctx.state_compute.resize(target.spec.states.size());
  for (std::size_t i = 0; i < ctx.view.states.size(); ++i) {
    const DecodedState& st = ctx.view.states[i];
    int q = require_source_state(source, st.source_state);
    ctx.state_locked[i] = st.locked;
    ctx.state_compute[i] = q;
    (st.locked ? ctx.locked_of : ctx.unlocked_of)[q] = static_cast<int>(i);
  }
  for (int q = 0; q < nq; ++q)
    if (ctx.unlocked_of[q] < 0 || ctx.locked_of[q] < 0)
      throw TargetMismatch("source state '" + source.states[q] +
                           "' lacks a locked or unlocked counterpart");

  ctx.edge_info.resize(target.spec.edge_states.size());
  for (std::size_t i = 0; i < ctx.view.edges.size(); ++i) {
    const DecodedEdge& e = ctx.view.edges[i];
    EdgeInfo info;
    info.kind = e.kind;
    if (e.kind == EdgeKind::Backup) {
      info.backup_state = require_source_state(source, e.backup_state);
      if (e.pair) info.backup_edge = require_source_edge(source, e.backup_edge);
    }
    if (e.pair) info.live = require_source_edge(source, e.live);
    ctx.edge_info[i] = info;
    std::array<int, 4> key{static_cast<int>(info.kind), info.backup_state,
                           info.backup_edge, info.live};
    if (!ctx.edge_ids.emplace(key, static_cast<int>(i)).second)
      throw TargetMismatch("duplicate edge state decoding");
  }
  if (ctx.init_edge(ctx.mediated_source() ? source.initial_edge : -1) < 0)
    throw TargetMismatch("compiled protocol lacks the neutral edge state");

  ctx.family_of.resize(target.spec.transitions.size());
  ctx.by_family.assign(6, {});
  for (std::size_t i = 0; i < target.provenance.size(); ++i) {
    const auto& origins = target.provenance[i];
    if (origins.empty()) throw TargetMismatch("transition without provenance");
    Family f = origins.front().family;
    for (const Origin& o : origins) {
      if (o.family != f)
        throw TargetMismatch("transition claimed by two different families");
      if (o.source_transition < 0 ||
          o.source_transition >= static_cast<int>(source.transitions.size()))
        throw TargetMismatch("provenance refers to unknown source transition");
      ctx.by_family_origin[{static_cast<int>(f), o.source_transition}].push_back(
          static_cast<int>(i));
    }
    ctx.family_of[i] = f;
    ctx.by_family[static_cast<int>(f)].push_back(static_cast<int>(i));
  }
  return ctx;
}

MediatedConfiguration translate(const SimContext& ctx, const Configuration& c) {
  if (ctx.mediated_source())
    throw StateNotInSource("plain configuration for a mediated source");
  if (c.size() < 1) throw StateNotInSource("empty configuration");
  int nq = static_cast<int>(ctx.source->states.size());
  MediatedConfiguration d = MediatedConfiguration::sized(c.size());
  int eps = ctx.init_edge();
  for (int i = 0; i < c.size(); ++i) {
    int q = c.agents[i];
    if (q < 0 || q >= nq) throw StateNotInSource("agent state outside the source");
    for (int j = 0; j < c.size(); ++j)
      d.at(i, j) = (i == j) ? ctx.unlocked_of[q] : eps;
  }
  return d;
}

MediatedConfiguration translate(const SimContext& ctx, const MediatedConfiguration& c) {
  if (!ctx.mediated_source())
    throw StateNotInSource("mediated configuration for a plain source");
  if (c.n < 1) throw StateNotInSource("empty configuration");
  int nq = static_cast<int>(ctx.source->states.size());
  int ns = static_cast<int>(ctx.source->edge_states.size());
  MediatedConfiguration d = MediatedConfiguration::sized(c.n);
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j) {
      int v = c.at(i, j);
      if (i == j) {
        if (v < 0 || v >= nq) throw StateNotInSource("agent state outside the source");
        d.at(i, j) = ctx.unlocked_of[v];
      } else {
        if (v < 0 || v >= ns) throw StateNotInSource("edge state outside the source");
        d.at(i, j) = ctx.init_edge(v);
      }
    }
  return d;
}

bool is_translated_form(const SimContext& ctx, const MediatedConfiguration& d) {
  check_shape(ctx, d);
  for (int i = 0; i < d.n; ++i) {
    if (ctx.state_locked[d.agent(i)]) return false;
    for (int j = 0; j < d.n; ++j)
      if (i != j && ctx.edge_info[d.at(i, j)].kind != EdgeKind::Init) return false;
  }
  return true;
}

namespace {

// An agent reverts to its backup only if it has exactly one pending request
// that the partner has not acknowledged; in every other case the compute
// state stands (committed conversations keep their result).
int normalized_agent_state(const SimContext& ctx, const MediatedConfiguration& d,
                           int i) {
  int pending = 0, backup = -1;
  for (int j = 0; j < d.n; ++j) {
    if (j == i) continue;
    const SimContext::EdgeInfo& side = ctx.edge_info[d.at(i, j)];
    if (side.kind != EdgeKind::Backup) continue;
    if (ctx.edge_info[d.at(j, i)].kind == EdgeKind::Responded) continue;
    ++pending;
    backup = side.backup_state;
  }
  if (pending == 1) return backup;
  return ctx.state_compute[d.agent(i)];
}

}  // namespace

Configuration normalize_plain(const SimContext& ctx, const MediatedConfiguration& d) {
  check_shape(ctx, d);
  Configuration c;
  c.agents.resize(d.n);
  for (int i = 0; i < d.n; ++i) c.agents[i] = normalized_agent_state(ctx, d, i);
  return c;
}

MediatedConfiguration normalize_mediated(const SimContext& ctx,
                                         const MediatedConfiguration& d) {
  check_shape(ctx, d);
  MediatedConfiguration c = MediatedConfiguration::sized(d.n);
  for (int i = 0; i < d.n; ++i) {
    c.at(i, i) = normalized_agent_state(ctx, d, i);
    for (int j = 0; j < d.n; ++j) {
      if (j == i) continue;
      const SimContext::EdgeInfo& side = ctx.edge_info[d.at(i, j)];
      if (side.kind == EdgeKind::Backup &&
          ctx.edge_info[d.at(j, i)].kind != EdgeKind::Responded)
        c.at(i, j) = side.backup_edge;  // the aborted request rolls back
      else
        c.at(i, j) = side.live;  // neutral or committed: the live value stands
    }
  }
  return c;
}

std::optional<StepLabel> resolve_family_step(const SimContext& ctx,
                                             const MediatedConfiguration& w,
                                             Family family, int initiator,
                                             int responder) {
  const ProtocolSpec& spec = ctx.target->spec;
  for (int ti : ctx.by_family[static_cast<int>(family)]) {
    const Transition& t = spec.transitions[ti];
    if (w.at(initiator, initiator) == t.p && w.at(initiator, responder) == t.r &&
        w.at(responder, responder) == t.q && w.at(responder, initiator) == t.s)
      return StepLabel{ti, initiator, responder};
  }
  return std::nullopt;
}

CleanupAttempt try_cleanup(const SimContext& ctx, const MediatedConfiguration& d) {
  check_shape(ctx, d);
  CleanupAttempt out;
  MediatedConfiguration w = d;

  auto take = [&](Family f, int init, int obs) {
    auto step = resolve_family_step(ctx, w, f, init, obs);
    if (!step) {
      out.missing_family = f;
      out.missing_initiator = init;
      out.missing_responder = obs;
      out.reason = std::string("no ") + family_name(f) + " step for agents " +
                   std::to_string(init + 1) + "," + std::to_string(obs + 1);
      return false;
    }
    w = apply_step(ctx.target->spec, w, *step);
    out.steps.push_back(*step);
    return true;
  };

  // Decisions come from the frozen d; pairs are independent because locked
  // agents only ever interact within their own pair.
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) {
      if (i == j) continue;
      EdgeKind mine = ctx.edge_info[d.at(i, j)].kind;
      EdgeKind partner = ctx.edge_info[d.at(j, i)].kind;
      bool fine = true;
      if (mine == EdgeKind::Backup && partner == EdgeKind::Responded) {
        // conclude the committed conversation, then finish it
        fine = take(Family::T3, j, i) && take(Family::T4, i, j);
      } else if (mine == EdgeKind::Init && partner == EdgeKind::Responded) {
        fine = take(Family::T4, i, j);  // only the finishing step is missing
      } else if (mine == EdgeKind::Backup) {
        fine = take(Family::T5, j, i);  // withdraw the unacknowledged request
      }
      if (!fine) {
        out.endpoint = std::move(w);
        return out;
      }
    }

  if (!is_translated_form(ctx, w)) {
    out.reason = "cleanup did not reach a translated configuration";
    out.endpoint = std::move(w);
    return out;
  }
  out.ok = true;
  out.endpoint = std::move(w);
  return out;
}

CleanupSchedule cleanup_schedule(const SimContext& ctx, const MediatedConfiguration& d) {
  CleanupAttempt att = try_cleanup(ctx, d);
  if (!att.ok) throw NotCleanable(att.reason);
  return {std::move(att.steps), std::move(att.endpoint)};
}

}  // namespace ppwb

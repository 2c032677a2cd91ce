#include "ppwb/verifier.hpp"

#include <array>
#include <sstream>

#include "ppwb/text_format.hpp"

namespace ppwb {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

InputSet all_inputs(const ProtocolSpec& p, int min_n, int max_n) {
  InputSet out;
  int k = static_cast<int>(p.alphabet.size());
  for (int n = min_n; n <= max_n; ++n) {
    std::vector<int> v(n, 0);
    for (;;) {
      out.push_back(v);
      int pos = n - 1;
      while (pos >= 0 && v[pos] == k - 1) v[pos--] = 0;
      if (pos < 0) break;
      ++v[pos];
    }
  }
  return out;
}

namespace {

std::string input_csv(const ProtocolSpec& p, const std::vector<int>& inp) {
  std::string out;
  for (std::size_t i = 0; i < inp.size(); ++i) {
    if (i) out += ",";
    out += p.alphabet[inp[i]];
  }
  return out;
}

std::string params_for(const InputSet& inputs, const CheckOptions& opt) {
  std::size_t lo = 0, hi = 0;
  for (const auto& inp : inputs) {
    if (!lo || inp.size() < lo) lo = inp.size();
    if (inp.size() > hi) hi = inp.size();
  }
  std::ostringstream s;
  s << "inputs=" << inputs.size() << " n=" << lo << ".." << hi
    << " node-limit=" << opt.node_limit;
  return s.str();
}

std::string step_str(const StepLabel& l) {
  return std::to_string(l.initiator + 1) + " " + std::to_string(l.responder + 1) +
         " " + std::to_string(l.transition + 1);
}

const char* output_str(OutputValue v) {
  switch (v) {
    case OutputValue::Zero: return "0";
    case OutputValue::One: return "1";
    case OutputValue::Bot: return "bot";
  }
  return "?";
}

const char* stability_str(Stability s) {
  switch (s) {
    case Stability::Stable0: return "stable-0";
    case Stability::Stable1: return "stable-1";
    case Stability::NotStable: return "not-stable";
  }
  return "?";
}

const char* predicate_str(PredicateValue v) {
  switch (v) {
    case PredicateValue::Zero: return "0";
    case PredicateValue::One: return "1";
    case PredicateValue::NotWellSpecified: return "not-well-specified";
  }
  return "?";
}

VerificationReport make_inconclusive(VerificationReport rep, const ProtocolSpec& p,
                                     const std::vector<int>& inp, const char* what) {
  rep.verdict = Verdict::Inconclusive;
  rep.detail = std::string(what) + " hit the node limit at input " + input_csv(p, inp) +
               "; rerun with a higher --node-limit";
  return rep;
}

// Resolve the generated instance of (family, source transition) whose left
// side matches w at (initiator, responder).
std::optional<StepLabel> resolve_origin_step(const SimContext& ctx,
                                             const MediatedConfiguration& w,
                                             Family f, int source_t, int i, int j) {
  auto it = ctx.by_family_origin.find({static_cast<int>(f), source_t});
  if (it == ctx.by_family_origin.end()) return std::nullopt;
  const ProtocolSpec& spec = ctx.target->spec;
  for (int ti : it->second) {
    const Transition& t = spec.transitions[ti];
    if (w.at(i, i) == t.p && w.at(i, j) == t.r && w.at(j, j) == t.q &&
        w.at(j, i) == t.s)
      return StepLabel{ti, i, j};
  }
  return std::nullopt;
}

bool committed_pair_at(const SimContext& ctx, const MediatedConfiguration& d,
                       int i, int j) {
  return ctx.edge_info[d.at(i, j)].kind == EdgeKind::Backup &&
         ctx.edge_info[d.at(j, i)].kind == EdgeKind::Responded;
}

bool has_committed_pair(const SimContext& ctx, const MediatedConfiguration& d) {
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      if (i != j && committed_pair_at(ctx, d, i, j)) return true;
  return false;
}

template <class SC>
VerificationReport completeness_impl(const SimContext& ctx, const InputSet& inputs,
                                     const CheckOptions& opt) {
  VerificationReport rep;
  rep.check = "completeness";
  rep.params = params_for(inputs, opt);
  const ProtocolSpec& src = *ctx.source;

  for (const auto& inp : inputs) {
    SC c0 = global_input_as<SC>(src, inp);
    auto g = explore(src, c0, {opt.node_limit, false});
    if (!g.complete) return make_inconclusive(rep, src, inp, "source exploration");

    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
      for (const auto& [lab, v] : g.edges[u]) {
        MediatedConfiguration w = translate(ctx, g.nodes[u]);
        MediatedConfiguration goal = translate(ctx, g.nodes[v]);
        int a = lab.initiator, b = lab.responder;
        const std::array<std::pair<Family, std::pair<int, int>>, 4> plan{{
            {Family::T1, {a, b}},
            {Family::T2, {b, a}},
            {Family::T3, {a, b}},
            {Family::T4, {b, a}},
        }};
        std::vector<StepLabel> steps;
        for (const auto& [fam, who] : plan) {
          auto step = resolve_origin_step(ctx, w, fam, lab.transition, who.first,
                                          who.second);
          if (!step) {
            rep.verdict = Verdict::Fail;
            rep.detail = "four-step witness for source step " + step_str(lab) +
                         " breaks at " + family_name(fam);
            Witness wit{WitnessKind::MissingStep, Side::Target,
                        translate(ctx, g.nodes[u])};
            wit.steps = steps;
            wit.missing = PendingStep{fam, who.first, who.second};
            wit.input = inp;
            wit.note = rep.detail + " on input " + input_csv(src, inp);
            rep.witness = std::move(wit);
            return rep;
          }
          w = apply_step(ctx.target->spec, w, *step);
          steps.push_back(*step);
        }
        if (!(w == goal)) {
          rep.verdict = Verdict::Fail;
          rep.detail = "four-step witness for source step " + step_str(lab) +
                       " ends off the translated successor";
          Witness wit{WitnessKind::EndpointMismatch, Side::Target,
                      translate(ctx, g.nodes[u])};
          wit.steps = steps;
          wit.expected_side = Side::Target;
          wit.expected = goal;
          wit.input = inp;
          wit.note = rep.detail;
          rep.witness = std::move(wit);
          return rep;
        }
        ++rep.cases_checked;
      }
    }
  }
  return rep;
}

template <class SC>
VerificationReport soundness_impl(const SimContext& ctx, const InputSet& inputs,
                                  const CheckOptions& opt) {
  VerificationReport rep;
  rep.check = "soundness";
  rep.params = params_for(inputs, opt);
  const ProtocolSpec& src = *ctx.source;
  const ProtocolSpec& tgt = ctx.target->spec;

  for (const auto& inp : inputs) {
    SC c0 = global_input_as<SC>(src, inp);
    auto gs = explore(src, c0, {opt.node_limit, false});
    if (!gs.complete) return make_inconclusive(rep, src, inp, "source exploration");
    auto gt = explore(tgt, translate(ctx, c0), {opt.node_limit, false});
    if (!gt.complete) return make_inconclusive(rep, src, inp, "target exploration");

    for (std::size_t di = 0; di < gt.nodes.size(); ++di) {
      const MediatedConfiguration& d = gt.nodes[di];
      SC cprime = normalize_as<SC>(ctx, d);

      CleanupAttempt att = try_cleanup(ctx, d);
      if (!att.ok) {
        rep.verdict = Verdict::Fail;
        rep.detail = "cleanup fails: " + att.reason;
        Witness wit{WitnessKind::MissingStep, Side::Target, d};
        wit.steps = att.steps;
        if (att.missing_family)
          wit.missing = PendingStep{*att.missing_family, att.missing_initiator,
                                    att.missing_responder};
        wit.input = inp;
        wit.note = rep.detail + " on input " + input_csv(src, inp);
        rep.witness = std::move(wit);
        return rep;
      }
      MediatedConfiguration goal = translate(ctx, cprime);
      if (!(att.endpoint == goal)) {
        rep.verdict = Verdict::Fail;
        rep.detail = "cleanup endpoint differs from the translated normalization";
        Witness wit{WitnessKind::EndpointMismatch, Side::Target, d};
        wit.steps = att.steps;
        wit.expected_side = Side::Target;
        wit.expected = goal;
        wit.input = inp;
        wit.note = rep.detail;
        rep.witness = std::move(wit);
        return rep;
      }
      if (gs.find(cprime) < 0) {
        rep.verdict = Verdict::Fail;
        rep.detail = "normalized configuration is not reachable in the source";
        Witness wit{WitnessKind::MembershipMissing, Side::Target, d};
        wit.expected_side = Side::Source;
        wit.expected = cprime;
        wit.input = inp;
        wit.note = rep.detail + " on input " + input_csv(src, inp);
        rep.witness = std::move(wit);
        return rep;
      }

      if (opt.project_paths) {
        // Replaying the acknowledged conversations of the discovery path must
        // drive the source onto the normalized configuration.
        SC c = c0;
        std::vector<StepLabel> projected;
        for (const StepLabel& lab : gt.path_from_root(static_cast<int>(di))) {
          if (ctx.family_of[lab.transition] != Family::T2) continue;
          int source_t = ctx.target->provenance[lab.transition].front().source_transition;
          StepLabel s{source_t, lab.responder, lab.initiator};
          if (!step_enabled(src, c, s)) {
            rep.verdict = Verdict::Fail;
            rep.detail = "projected source step " + step_str(s) + " is not enabled";
            Witness wit{WitnessKind::MissingStep, Side::Source, c0};
            wit.steps = projected;
            wit.missing_label = s;
            wit.input = inp;
            wit.note = rep.detail;
            rep.witness = std::move(wit);
            return rep;
          }
          c = apply_step(src, c, s);
          projected.push_back(s);
        }
        if (!(c == cprime)) {
          rep.verdict = Verdict::Fail;
          rep.detail = "projected path misses the normalized configuration";
          Witness wit{WitnessKind::EndpointMismatch, Side::Source, c0};
          wit.steps = projected;
          wit.expected_side = Side::Source;
          wit.expected = cprime;
          wit.input = inp;
          wit.note = rep.detail;
          rep.witness = std::move(wit);
          return rep;
        }
      }
      ++rep.cases_checked;
    }
  }
  return rep;
}

template <class SC>
VerificationReport io_impl(const SimContext& ctx, const InputSet& inputs,
                           const CheckOptions& opt) {
  VerificationReport rep;
  rep.check = "io";
  rep.params = params_for(inputs, opt);
  const ProtocolSpec& src = *ctx.source;
  const ProtocolSpec& tgt = ctx.target->spec;

  for (const auto& inp : inputs) {
    SC c0 = global_input_as<SC>(src, inp);
    MediatedConfiguration via_translate = translate(ctx, c0);
    MediatedConfiguration direct = global_input_mediated(tgt, inp);
    if (!(via_translate == direct)) {
      rep.verdict = Verdict::Fail;
      rep.detail = "translated initial configuration differs from the target's";
      Witness wit{WitnessKind::InputMismatch, Side::Target, direct};
      wit.expected_side = Side::Target;
      wit.expected = via_translate;
      wit.input = inp;
      wit.note = rep.detail + " on input " + input_csv(src, inp);
      rep.witness = std::move(wit);
      return rep;
    }
    ++rep.cases_checked;

    auto g = explore(src, c0, {opt.node_limit, false});
    if (!g.complete) return make_inconclusive(rep, src, inp, "source exploration");
    for (const SC& c : g.nodes) {
      OutputValue a = global_output(src, c);
      OutputValue b = global_output(tgt, translate(ctx, c));
      if (a != b) {
        rep.verdict = Verdict::Fail;
        rep.detail = std::string("outputs diverge: source ") + output_str(a) +
                     ", translated " + output_str(b);
        Witness wit{WitnessKind::OutputMismatch, Side::Source, c};
        wit.input = inp;
        wit.note = rep.detail;
        rep.witness = std::move(wit);
        return rep;
      }
      ++rep.cases_checked;
    }
  }
  return rep;
}

template <class SC>
VerificationReport stability_impl(const SimContext& ctx, const InputSet& inputs,
                                  const CheckOptions& opt) {
  VerificationReport rep;
  rep.check = "stability";
  rep.params = params_for(inputs, opt);
  const ProtocolSpec& src = *ctx.source;
  const ProtocolSpec& tgt = ctx.target->spec;

  for (const auto& inp : inputs) {
    auto g = explore(src, global_input_as<SC>(src, inp), {opt.node_limit, false});
    if (!g.complete) return make_inconclusive(rep, src, inp, "source exploration");
    for (const SC& c : g.nodes) {
      Stability ss, ts;
      try {
        ss = output_stable(src, c, {opt.node_limit, false});
        ts = output_stable(tgt, translate(ctx, c), {opt.node_limit, false});
      } catch (const StateSpaceExceeded&) {
        return make_inconclusive(rep, src, inp, "stability exploration");
      }
      if (ss != ts) {
        rep.verdict = Verdict::Fail;
        rep.detail = std::string("source is ") + stability_str(ss) +
                     " but the translation is " + stability_str(ts);
        Witness wit{WitnessKind::StabilityMismatch, Side::Source, c};
        wit.input = inp;
        wit.note = rep.detail;
        rep.witness = std::move(wit);
        return rep;
      }
      ++rep.cases_checked;
    }
  }
  return rep;
}

}  // namespace

VerificationReport check_completeness(const SimContext& ctx, const InputSet& inputs,
                                      CheckOptions opt) {
  return ctx.mediated_source()
             ? completeness_impl<MediatedConfiguration>(ctx, inputs, opt)
             : completeness_impl<Configuration>(ctx, inputs, opt);
}

VerificationReport check_soundness(const SimContext& ctx, const InputSet& inputs,
                                   CheckOptions opt) {
  return ctx.mediated_source() ? soundness_impl<MediatedConfiguration>(ctx, inputs, opt)
                               : soundness_impl<Configuration>(ctx, inputs, opt);
}

VerificationReport check_io(const SimContext& ctx, const InputSet& inputs,
                            CheckOptions opt) {
  return ctx.mediated_source() ? io_impl<MediatedConfiguration>(ctx, inputs, opt)
                               : io_impl<Configuration>(ctx, inputs, opt);
}

VerificationReport check_stability_preservation(const SimContext& ctx,
                                                const InputSet& inputs,
                                                CheckOptions opt) {
  return ctx.mediated_source()
             ? stability_impl<MediatedConfiguration>(ctx, inputs, opt)
             : stability_impl<Configuration>(ctx, inputs, opt);
}

VerificationReport check_predicate_equality(const SimContext& ctx, int max_n,
                                            CheckOptions opt) {
  VerificationReport rep;
  rep.check = "predicate";
  {
    std::ostringstream s;
    s << "max-n=" << max_n << " node-limit=" << opt.node_limit;
    rep.params = s.str();
  }
  const ProtocolSpec& src = *ctx.source;
  for (const auto& inp : all_inputs(src, 2, max_n)) {
    PredicateValue a, b;
    try {
      a = predicate_value(src, inp, {opt.node_limit, false});
      b = predicate_value(ctx.target->spec, inp, {opt.node_limit, false});
    } catch (const StateSpaceExceeded&) {
      return make_inconclusive(rep, src, inp, "predicate exploration");
    }
    if (a != b) {
      rep.verdict = Verdict::Fail;
      rep.detail = std::string("source computes ") + predicate_str(a) +
                   " but the target computes " + predicate_str(b) + " on " +
                   input_csv(src, inp);
      Witness wit{WitnessKind::PredicateMismatch, Side::Source, std::monostate{}};
      wit.input = inp;
      wit.note = rep.detail;
      rep.witness = std::move(wit);
      return rep;
    }
    ++rep.cases_checked;
  }
  return rep;
}

std::optional<std::string> lock_discipline_violation(const SimContext& ctx,
                                                     const MediatedConfiguration& d) {
  for (int i = 0; i < d.n; ++i) {
    int pending = 0;
    for (int j = 0; j < d.n; ++j) {
      if (j == i) continue;
      EdgeKind k = ctx.edge_info[d.at(i, j)].kind;
      if (k == EdgeKind::Backup || k == EdgeKind::Responded) ++pending;
    }
    bool locked = ctx.state_locked[d.agent(i)];
    if (locked && pending != 1)
      return "agent " + std::to_string(i + 1) + " is locked with " +
             std::to_string(pending) + " pending sides";
    if (!locked && pending != 0)
      return "agent " + std::to_string(i + 1) + " is unlocked with " +
             std::to_string(pending) + " pending sides";
  }
  return std::nullopt;
}

VerificationReport check_observations(const SimContext& ctx, const InputSet& inputs,
                                      CheckOptions opt) {
  VerificationReport rep;
  rep.check = "observations";
  rep.params = params_for(inputs, opt);
  const ProtocolSpec& tgt = ctx.target->spec;

  auto fail = [&rep](Witness wit, std::string detail) {
    rep.verdict = Verdict::Fail;
    rep.detail = std::move(detail);
    rep.witness = std::move(wit);
  };

  for (const auto& inp : inputs) {
    auto g = explore(tgt, global_input_mediated(tgt, inp), {opt.node_limit, false});
    if (!g.complete) return make_inconclusive(rep, tgt, inp, "target exploration");

    // outputs change only at the observer of a request, acknowledge, abort
    // or shortcut step
    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
      for (const auto& [lab, v] : g.edges[u]) {
        Family f = ctx.family_of[lab.transition];
        bool family_may_change = f == Family::T1 || f == Family::T2 ||
                                 f == Family::T5 || f == Family::T6;
        for (int k = 0; k < g.nodes[u].n; ++k) {
          int before = tgt.output_map[g.nodes[u].agent(k)];
          int after = tgt.output_map[g.nodes[v].agent(k)];
          if (before == after) continue;
          if (family_may_change && k == lab.responder) continue;
          Witness wit{WitnessKind::OutputChangeViolation, Side::Target, g.nodes[u]};
          wit.steps = {lab};
          wit.agent = k;
          wit.input = inp;
          wit.note = std::string("output of agent ") + std::to_string(k + 1) +
                     " changes along a " + family_name(f) +
                     " step where it is not the observer";
          fail(std::move(wit), "output changes outside an observer position");
          return rep;
        }
      }
    }

    // the lock state mirrors the number of pending sides
    for (const MediatedConfiguration& d : g.nodes) {
      if (auto why = lock_discipline_violation(ctx, d)) {
        Witness wit{WitnessKind::LockDisciplineViolation, Side::Target, d};
        wit.input = inp;
        wit.note = *why;
        fail(std::move(wit), *why);
        return rep;
      }
      ++rep.cases_checked;
    }

    // committed pairs always resolve: conclude enabled now, finish enabled next
    for (const MediatedConfiguration& d : g.nodes) {
      for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j) {
          if (i == j || !committed_pair_at(ctx, d, i, j)) continue;
          auto s3 = resolve_family_step(ctx, d, Family::T3, j, i);
          if (!s3) {
            Witness wit{WitnessKind::MissingStep, Side::Target, d};
            wit.missing = PendingStep{Family::T3, j, i};
            wit.input = inp;
            wit.note = "committed pair cannot conclude";
            fail(std::move(wit), "committed pair cannot take its t3 step");
            return rep;
          }
          MediatedConfiguration w = apply_step(tgt, d, *s3);
          auto s4 = resolve_family_step(ctx, w, Family::T4, i, j);
          if (!s4) {
            Witness wit{WitnessKind::MissingStep, Side::Target, d};
            wit.steps = {*s3};
            wit.missing = PendingStep{Family::T4, i, j};
            wit.input = inp;
            wit.note = "committed pair cannot finish after concluding";
            fail(std::move(wit), "committed pair cannot take its t4 step");
            return rep;
          }
        }
    }

    // no terminal component may hold on to a committed pair
    for (const auto& comp : terminal_sccs(g)) {
      for (int v : comp) {
        if (has_committed_pair(ctx, g.nodes[v])) {
          Witness wit{WitnessKind::CommittedPairInTerminalScc, Side::Target,
                      g.nodes[v]};
          wit.input = inp;
          wit.note = "terminal component contains a committed pair";
          fail(std::move(wit), "a committed pair survives into a terminal component");
          return rep;
        }
      }
    }
  }
  return rep;
}

namespace {

template <class C>
std::optional<C> run_steps(const ProtocolSpec& p, C cfg,
                           const std::vector<StepLabel>& steps) {
  for (const StepLabel& s : steps) {
    if (!step_enabled(p, cfg, s)) return std::nullopt;
    cfg = apply_step(p, cfg, s);
  }
  return cfg;
}

const ProtocolSpec& spec_of(const SimContext& ctx, Side side) {
  return side == Side::Source ? *ctx.source : ctx.target->spec;
}

}  // namespace

bool replay_witness(const SimContext& ctx, const VerificationReport& report) {
  if (report.verdict != Verdict::Fail || !report.witness) return false;
  const Witness& w = *report.witness;
  const ProtocolSpec& src = *ctx.source;
  const ProtocolSpec& tgt = ctx.target->spec;

  switch (w.kind) {
    case WitnessKind::MissingStep: {
      const auto* start = std::get_if<MediatedConfiguration>(&w.start);
      if (w.side == Side::Target) {
        if (!start) return false;
        auto end = run_steps(tgt, *start, w.steps);
        if (!end) return false;
        if (w.missing)
          return !resolve_family_step(ctx, *end, w.missing->family,
                                      w.missing->initiator, w.missing->responder);
        if (w.missing_label) return !step_enabled(tgt, *end, *w.missing_label);
        return !is_translated_form(ctx, *end);  // cleanup ran but fell short
      }
      // source-side: a projected step is not enabled
      if (const auto* plain = std::get_if<Configuration>(&w.start)) {
        auto end = run_steps(src, *plain, w.steps);
        return end && w.missing_label && !step_enabled(src, *end, *w.missing_label);
      }
      if (!start) return false;
      auto end = run_steps(src, *start, w.steps);
      return end && w.missing_label && !step_enabled(src, *end, *w.missing_label);
    }
    case WitnessKind::EndpointMismatch: {
      if (w.side == Side::Target) {
        const auto* start = std::get_if<MediatedConfiguration>(&w.start);
        const auto* want = std::get_if<MediatedConfiguration>(&w.expected);
        if (!start || !want) return false;
        auto end = run_steps(tgt, *start, w.steps);
        return end && !(*end == *want);
      }
      if (const auto* plain = std::get_if<Configuration>(&w.start)) {
        const auto* want = std::get_if<Configuration>(&w.expected);
        if (!want) return false;
        auto end = run_steps(src, *plain, w.steps);
        return end && !(*end == *want);
      }
      const auto* start = std::get_if<MediatedConfiguration>(&w.start);
      const auto* want = std::get_if<MediatedConfiguration>(&w.expected);
      if (!start || !want) return false;
      auto end = run_steps(src, *start, w.steps);
      return end && !(*end == *want);
    }
    case WitnessKind::OutputMismatch: {
      if (const auto* plain = std::get_if<Configuration>(&w.start))
        return global_output(src, *plain) !=
               global_output(tgt, translate(ctx, *plain));
      if (const auto* med = std::get_if<MediatedConfiguration>(&w.start))
        return global_output(src, *med) != global_output(tgt, translate(ctx, *med));
      return false;
    }
    case WitnessKind::InputMismatch: {
      MediatedConfiguration direct = global_input_mediated(tgt, w.input);
      MediatedConfiguration via =
          src.model == Model::Plain
              ? translate(ctx, global_input_plain(src, w.input))
              : translate(ctx, global_input_mediated(src, w.input));
      return !(direct == via);
    }
    case WitnessKind::MembershipMissing: {
      const auto* d = std::get_if<MediatedConfiguration>(&w.start);
      if (!d) return false;
      if (src.model == Model::Plain) {
        const auto* want = std::get_if<Configuration>(&w.expected);
        if (!want || !(normalize_plain(ctx, *d) == *want)) return false;
        auto gs = explore(src, global_input_plain(src, w.input), {});
        return gs.complete && gs.find(*want) < 0;
      }
      const auto* want = std::get_if<MediatedConfiguration>(&w.expected);
      if (!want || !(normalize_mediated(ctx, *d) == *want)) return false;
      auto gs = explore(src, global_input_mediated(src, w.input), {});
      return gs.complete && gs.find(*want) < 0;
    }
    case WitnessKind::StabilityMismatch: {
      if (const auto* plain = std::get_if<Configuration>(&w.start))
        return output_stable(src, *plain) !=
               output_stable(tgt, translate(ctx, *plain));
      if (const auto* med = std::get_if<MediatedConfiguration>(&w.start))
        return output_stable(src, *med) != output_stable(tgt, translate(ctx, *med));
      return false;
    }
    case WitnessKind::PredicateMismatch:
      return predicate_value(src, w.input) != predicate_value(tgt, w.input);
    case WitnessKind::OutputChangeViolation: {
      const auto* start = std::get_if<MediatedConfiguration>(&w.start);
      if (!start || w.steps.size() != 1 || w.agent < 0) return false;
      if (!step_enabled(tgt, *start, w.steps[0])) return false;
      MediatedConfiguration after = apply_step(tgt, *start, w.steps[0]);
      int before_out = tgt.output_map[start->agent(w.agent)];
      int after_out = tgt.output_map[after.agent(w.agent)];
      if (before_out == after_out) return false;
      Family f = ctx.family_of[w.steps[0].transition];
      bool family_may_change = f == Family::T1 || f == Family::T2 ||
                               f == Family::T5 || f == Family::T6;
      return !(family_may_change && w.agent == w.steps[0].responder);
    }
    case WitnessKind::LockDisciplineViolation: {
      const auto* start = std::get_if<MediatedConfiguration>(&w.start);
      return start && lock_discipline_violation(ctx, *start).has_value();
    }
    case WitnessKind::CommittedPairInTerminalScc: {
      const auto* start = std::get_if<MediatedConfiguration>(&w.start);
      if (!start || !has_committed_pair(ctx, *start)) return false;
      auto g = explore(tgt, *start, {});
      if (!g.complete) return false;
      for (const auto& comp : terminal_sccs(g))
        for (int v : comp)
          if (v == 0) return true;  // the witness node sits in a terminal scc
      return false;
    }
  }
  return false;
}

namespace {

void render_config(std::ostream& out, const SimContext& ctx, Side side,
                   const std::variant<std::monostate, Configuration,
                                      MediatedConfiguration>& cfg,
                   const char* label) {
  const ProtocolSpec& spec = spec_of(ctx, side);
  if (const auto* plain = std::get_if<Configuration>(&cfg))
    out << label << ": " << config_to_line(spec, *plain) << "\n";
  else if (const auto* med = std::get_if<MediatedConfiguration>(&cfg))
    out << label << ": " << config_to_line(spec, *med) << "\n";
}

}  // namespace

std::string render_report(const SimContext& ctx, const VerificationReport& report) {
  std::ostringstream out;
  out << "check: " << report.check << "\n";
  out << "params: " << report.params << "\n";
  out << "verdict: " << verdict_name(report.verdict) << "\n";
  out << "cases: " << report.cases_checked << "\n";
  if (!report.detail.empty()) out << "detail: " << report.detail << "\n";
  if (report.witness) {
    const Witness& w = *report.witness;
    out << "witness:\n";
    if (!w.input.empty()) out << "  input: " << input_csv(*ctx.source, w.input) << "\n";
    out << "  side: " << (w.side == Side::Source ? "source" : "target") << "\n";
    std::ostringstream tmp;
    render_config(tmp, ctx, w.side, w.start, "  start");
    render_config(tmp, ctx, w.expected_side, w.expected, "  expected");
    out << tmp.str();
    if (!w.steps.empty()) {
      out << "  steps:\n";
      for (const StepLabel& s : w.steps) out << "    " << step_str(s) << "\n";
    }
    if (w.missing)
      out << "  missing: " << family_name(w.missing->family) << " "
          << (w.missing->initiator + 1) << " " << (w.missing->responder + 1) << "\n";
    if (w.missing_label) out << "  missing: " << step_str(*w.missing_label) << "\n";
    if (w.agent >= 0) out << "  agent: " << (w.agent + 1) << "\n";
    if (!w.note.empty()) out << "  note: " << w.note << "\n";
  }
  return out.str();
}

}  // namespace ppwb

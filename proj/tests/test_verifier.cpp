#include <set>

#include "doctest.h"
#include "ppwb/library.hpp"
#include "ppwb/text_format.hpp"
#include "ppwb/verifier.hpp"

using namespace ppwb;

namespace {

CompiledProtocol drop_family(const CompiledProtocol& pc, Family f) {
  CompiledProtocol out;
  out.source_model = pc.source_model;
  out.spec = pc.spec;
  out.spec.transitions.clear();
  out.provenance.clear();
  for (std::size_t i = 0; i < pc.spec.transitions.size(); ++i) {
    if (pc.provenance[i].front().family == f) continue;
    out.spec.transitions.push_back(pc.spec.transitions[i]);
    out.provenance.push_back(pc.provenance[i]);
  }
  return out;
}

struct Bound {
  LibraryEntry entry;
  CompiledProtocol pc;
  SimContext ctx;
  explicit Bound(LibraryEntry e, bool shortcut = false)
      : entry(std::move(e)),
        pc(entry.spec.model == Model::Plain ? compile_pp(entry.spec, shortcut)
                                            : compile_mpp(entry.spec)),
        ctx(SimContext::bind(entry.spec, pc)) {}
};

}  // namespace

TEST_CASE("the full check set passes on detect_one") {
  Bound b(detect_one());
  InputSet inputs = all_inputs(b.entry.spec, 2, 3);
  CHECK(check_completeness(b.ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_soundness(b.ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_io(b.ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_stability_preservation(b.ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_observations(b.ctx, inputs).verdict == Verdict::Pass);
  VerificationReport pred = check_predicate_equality(b.ctx, 3);
  CHECK(pred.verdict == Verdict::Pass);
  CHECK(pred.cases_checked == 12);  // 4 vectors at n=2, 8 at n=3
}

TEST_CASE("the full check set passes on threshold2 at n=2") {
  Bound b(threshold2());
  InputSet inputs = all_inputs(b.entry.spec, 2, 2);
  CHECK(check_completeness(b.ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_soundness(b.ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_io(b.ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_stability_preservation(b.ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_observations(b.ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_predicate_equality(b.ctx, 2).verdict == Verdict::Pass);
}

TEST_CASE("empty input sets pass vacuously") {
  Bound b(detect_one());
  VerificationReport rep = check_completeness(b.ctx, {});
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.cases_checked == 0);
}

TEST_CASE("the mediated compilation agrees with its source") {
  Bound b(detect_one_once());
  InputSet inputs = all_inputs(b.entry.spec, 2, 3);
  CHECK(check_completeness(b.ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_soundness(b.ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_io(b.ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_observations(b.ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_predicate_equality(b.ctx, 3).verdict == Verdict::Pass);
}

TEST_CASE("single-symbol alphabets are trivially corresponding") {
  LibraryEntry e;
  e.name = "constant";
  ProtocolSpec& p = e.spec;
  p.add_state("q");
  p.add_symbol("a");
  p.input_map = {0};
  p.output_map = {0};
  CompiledProtocol pc = compile_pp(p, false);
  SimContext ctx = SimContext::bind(p, pc);
  InputSet inputs = all_inputs(p, 2, 4);
  CHECK(check_io(ctx, inputs).verdict == Verdict::Pass);
  CHECK(check_predicate_equality(ctx, 4).verdict == Verdict::Pass);
}

TEST_CASE("deleting t3 breaks the four-step witness with a replayable trace") {
  LibraryEntry d1 = detect_one();
  CompiledProtocol mutated = drop_family(compile_pp(d1.spec, false), Family::T3);
  SimContext ctx = SimContext::bind(d1.spec, mutated);
  VerificationReport rep = check_completeness(ctx, all_inputs(d1.spec, 2, 2));
  REQUIRE(rep.verdict == Verdict::Fail);
  REQUIRE(rep.witness);
  CHECK(rep.witness->kind == WitnessKind::MissingStep);
  CHECK(rep.witness->missing);
  CHECK(rep.witness->missing->family == Family::T3);
  CHECK(rep.witness->steps.size() == 2);  // t1 and t2 ran
  CHECK(replay_witness(ctx, rep));
}

TEST_CASE("deleting t5 leaves pending requests that cannot clean up") {
  LibraryEntry d1 = detect_one();
  CompiledProtocol mutated = drop_family(compile_pp(d1.spec, false), Family::T5);
  SimContext ctx = SimContext::bind(d1.spec, mutated);
  VerificationReport rep = check_soundness(ctx, all_inputs(d1.spec, 2, 2));
  REQUIRE(rep.verdict == Verdict::Fail);
  REQUIRE(rep.witness);
  CHECK(rep.witness->kind == WitnessKind::MissingStep);
  CHECK(rep.witness->missing);
  CHECK(rep.witness->missing->family == Family::T5);
  CHECK(replay_witness(ctx, rep));
}

TEST_CASE("diverging outputs also diverge the computed predicate") {
  LibraryEntry d1 = detect_one();
  CompiledProtocol mutated = compile_pp(d1.spec, false);
  mutated.spec.output_map[mutated.spec.state_id("U:1")] = 0;
  SimContext ctx = SimContext::bind(d1.spec, mutated);
  VerificationReport pred = check_predicate_equality(ctx, 2);
  REQUIRE(pred.verdict == Verdict::Fail);
  REQUIRE(pred.witness);
  CHECK(pred.witness->kind == WitnessKind::PredicateMismatch);
  CHECK(replay_witness(ctx, pred));
}

TEST_CASE("a wrong t3 result state is caught as an endpoint mismatch") {
  LibraryEntry d1 = detect_one();
  CompiledProtocol mutated = compile_pp(d1.spec, false);
  for (std::size_t i = 0; i < mutated.spec.transitions.size(); ++i) {
    if (mutated.provenance[i].front().family != Family::T3) continue;
    // conclude into the wrong compute state
    mutated.spec.transitions[i].q2 = mutated.spec.state_id("U:0");
  }
  SimContext ctx = SimContext::bind(d1.spec, mutated);
  VerificationReport rep = check_completeness(ctx, all_inputs(d1.spec, 2, 2));
  REQUIRE(rep.verdict == Verdict::Fail);
  REQUIRE(rep.witness);
  CHECK(rep.witness->kind == WitnessKind::EndpointMismatch);
  CHECK(replay_witness(ctx, rep));
}

TEST_CASE("an output map ignoring the source is caught with an offending configuration") {
  LibraryEntry d1 = detect_one();
  CompiledProtocol mutated = compile_pp(d1.spec, false);
  mutated.spec.output_map[mutated.spec.state_id("U:1")] = 0;
  SimContext ctx = SimContext::bind(d1.spec, mutated);
  VerificationReport rep = check_io(ctx, all_inputs(d1.spec, 2, 2));
  REQUIRE(rep.verdict == Verdict::Fail);
  REQUIRE(rep.witness);
  CHECK(rep.witness->kind == WitnessKind::OutputMismatch);
  CHECK(replay_witness(ctx, rep));
}

TEST_CASE("a wrong input map is caught as an input mismatch") {
  LibraryEntry d1 = detect_one();
  CompiledProtocol mutated = compile_pp(d1.spec, false);
  mutated.spec.input_map[1] = mutated.spec.state_id("L:1");
  SimContext ctx = SimContext::bind(d1.spec, mutated);
  VerificationReport rep = check_io(ctx, all_inputs(d1.spec, 2, 2));
  REQUIRE(rep.verdict == Verdict::Fail);
  REQUIRE(rep.witness);
  CHECK(rep.witness->kind == WitnessKind::InputMismatch);
  CHECK(replay_witness(ctx, rep));
}

TEST_CASE("an output that depends on the lock state violates the observations") {
  LibraryEntry d1 = detect_one();
  CompiledProtocol mutated = compile_pp(d1.spec, false);
  mutated.spec.output_map[mutated.spec.state_id("L:1")] = 0;
  SimContext ctx = SimContext::bind(d1.spec, mutated);
  VerificationReport rep = check_observations(ctx, all_inputs(d1.spec, 2, 2));
  REQUIRE(rep.verdict == Verdict::Fail);
  REQUIRE(rep.witness);
  CHECK(rep.witness->kind == WitnessKind::OutputChangeViolation);
  CHECK(replay_witness(ctx, rep));
}

TEST_CASE("deleting any handshake family fails at least one check") {
  LibraryEntry d1 = detect_one();
  CompiledProtocol pc = compile_pp(d1.spec, false);
  InputSet inputs = all_inputs(d1.spec, 2, 2);
  for (Family f : {Family::T1, Family::T2, Family::T3, Family::T4, Family::T5}) {
    CompiledProtocol mutated = drop_family(pc, f);
    SimContext ctx = SimContext::bind(d1.spec, mutated);
    std::vector<VerificationReport> reports;
    reports.push_back(check_completeness(ctx, inputs));
    reports.push_back(check_soundness(ctx, inputs));
    reports.push_back(check_io(ctx, inputs));
    reports.push_back(check_stability_preservation(ctx, inputs));
    reports.push_back(check_observations(ctx, inputs));
    reports.push_back(check_predicate_equality(ctx, 3));
    bool any_fail = false;
    for (const VerificationReport& rep : reports) {
      if (rep.verdict != Verdict::Fail) continue;
      any_fail = true;
      REQUIRE(rep.witness);
      CHECK(replay_witness(ctx, rep));
    }
    INFO("family ", family_name(f));
    CHECK(any_fail);
  }
}

TEST_CASE("a crafted double request trips the lock discipline probe") {
  Bound b(detect_one());
  MediatedConfiguration d = translate(b.ctx, Configuration{{1, 0, 0}});
  // agent 3 holds two backups at once; unreachable, rejected by the probe
  d.at(2, 2) = b.pc.spec.state_id("L:1");
  d.at(2, 0) = b.pc.spec.edge_id("bak:0");
  d.at(2, 1) = b.pc.spec.edge_id("bak:0");
  auto why = lock_discipline_violation(b.ctx, d);
  REQUIRE(why);
  CHECK(why->find("agent 3") != std::string::npos);

  // a single pending side is exactly what a locked agent must have
  d.at(2, 1) = b.pc.spec.edge_id("eps");
  CHECK(!lock_discipline_violation(b.ctx, d));
}

TEST_CASE("reports render deterministically") {
  Bound b(detect_one());
  VerificationReport rep = check_completeness(b.ctx, all_inputs(b.entry.spec, 2, 2));
  std::string text = render_report(b.ctx, rep);
  CHECK(text.find("check: completeness\n") != std::string::npos);
  CHECK(text.find("verdict: pass\n") != std::string::npos);
  CHECK(text == render_report(b.ctx, rep));

  CompiledProtocol mutated = drop_family(b.pc, Family::T3);
  SimContext ctx = SimContext::bind(b.entry.spec, mutated);
  VerificationReport bad = check_completeness(ctx, all_inputs(b.entry.spec, 2, 2));
  std::string bad_text = render_report(ctx, bad);
  CHECK(bad_text.find("verdict: fail\n") != std::string::npos);
  CHECK(bad_text.find("witness:\n") != std::string::npos);
  CHECK(bad_text.find("missing: t3") != std::string::npos);
}

TEST_CASE("replay refuses reports without failures") {
  Bound b(detect_one());
  VerificationReport rep = check_io(b.ctx, all_inputs(b.entry.spec, 2, 2));
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(!replay_witness(b.ctx, rep));
}

TEST_CASE("node limits surface as inconclusive verdicts") {
  Bound b(detect_one());
  CheckOptions tight;
  tight.node_limit = 2;
  InputSet inputs = all_inputs(b.entry.spec, 2, 2);
  CHECK(check_soundness(b.ctx, inputs, tight).verdict == Verdict::Inconclusive);
  CHECK(check_predicate_equality(b.ctx, 2, tight).verdict == Verdict::Inconclusive);
}

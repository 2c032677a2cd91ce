#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ppwb/execution.hpp"
#include "ppwb/translation.hpp"

namespace ppwb {

enum class Verdict { Pass, Fail, Inconclusive };

const char* verdict_name(Verdict v);

// What a failing witness demonstrates; replay_witness() re-executes it.
enum class WitnessKind {
  MissingStep,         // steps are an enabled prefix; `missing` cannot be resolved
  EndpointMismatch,    // after steps the configuration differs from `expected`
  OutputMismatch,      // source and translated outputs differ on `start`
  InputMismatch,       // translated initial configuration differs from target's
  MembershipMissing,   // normalized configuration unreachable in the source
  StabilityMismatch,   // output stability differs between the two sides
  PredicateMismatch,   // computed predicate values differ on `input`
  OutputChangeViolation,   // an output changed outside an observer position
  LockDisciplineViolation, // lock state disagrees with the pending-side count
  CommittedPairInTerminalScc,
};

enum class Side { Source, Target };

struct PendingStep {
  Family family;
  int initiator = -1;
  int responder = -1;
};

struct Witness {
  using ConfigAlt = std::variant<std::monostate, Configuration, MediatedConfiguration>;

  Witness() = default;
  Witness(WitnessKind k, Side s, ConfigAlt c)
      : kind(k), side(s), start(std::move(c)) {}

  WitnessKind kind = WitnessKind::MissingStep;
  Side side = Side::Target;  // protocol on which start and steps live
  ConfigAlt start;
  std::vector<StepLabel> steps;       // enabled in order from start
  std::optional<PendingStep> missing;       // by family, resolved on replay
  std::optional<StepLabel> missing_label;   // concrete step that is not enabled
  Side expected_side = Side::Target;
  ConfigAlt expected;
  std::vector<int> input;  // input vector (alphabet ids) the case came from
  int agent = -1;          // offending agent where applicable
  std::string note;
};

struct VerificationReport {
  std::string check;
  std::string params;
  Verdict verdict = Verdict::Pass;
  std::string detail;  // reason for fail/inconclusive
  std::optional<Witness> witness;
  std::size_t cases_checked = 0;
};

struct CheckOptions {
  std::size_t node_limit = kDefaultNodeLimit;
  // Also validate, per reachable compiled configuration, that replaying the
  // acknowledged conversations of its discovery path through the source
  // protocol lands exactly on the normalized configuration.
  bool project_paths = true;
};

using InputSet = std::vector<std::vector<int>>;

// Every input vector over the protocol's alphabet with min_n <= length <= max_n,
// ordered by length, then lexicographically.
InputSet all_inputs(const ProtocolSpec& p, int min_n, int max_n);

// Per source step C -> C', the exact four-step handshake witness
// t1(a,b) t2(b,a) t3(a,b) t4(b,a) must run from [[C]] and end in [[C']].
VerificationReport check_completeness(const SimContext& ctx, const InputSet& inputs,
                                      CheckOptions opt = {});

// Per reachable compiled configuration D, normalize and clean up; the
// endpoint must be the translation of the normalized configuration, which in
// turn must be reachable in the source.
VerificationReport check_soundness(const SimContext& ctx, const InputSet& inputs,
                                   CheckOptions opt = {});

// Translated initial configurations coincide with the target's own, and
// translation preserves the aggregated output everywhere.
VerificationReport check_io(const SimContext& ctx, const InputSet& inputs,
                            CheckOptions opt = {});

// Output stability holds on a source configuration iff it holds on its
// translation, with equal stable outputs.
VerificationReport check_stability_preservation(const SimContext& ctx,
                                                const InputSet& inputs,
                                                CheckOptions opt = {});

// Source and target compute the same predicate value on every input vector
// of length 2..max_n, treating not-well-specified as a value.
VerificationReport check_predicate_equality(const SimContext& ctx, int max_n,
                                            CheckOptions opt = {});

// Structural invariants over all configurations reachable from translated
// initial ones: outputs change only at observers of request/acknowledge/abort
// steps; the lock state mirrors the count of pending sides; committed pairs
// resolve (conclude enabled, then finish) and never survive into a terminal
// component.
VerificationReport check_observations(const SimContext& ctx, const InputSet& inputs,
                                      CheckOptions opt = {});

// Per-configuration observation probes, exposed for self-tests on crafted
// configurations. Returns an explanation or nullopt when the invariant holds.
std::optional<std::string> lock_discipline_violation(const SimContext& ctx,
                                                     const MediatedConfiguration& d);

// Re-execute a failing witness; true iff the recorded violation reproduces.
bool replay_witness(const SimContext& ctx, const VerificationReport& report);

// Deterministic plain-text rendering, one block per report.
std::string render_report(const SimContext& ctx, const VerificationReport& report);

}  // namespace ppwb

// ppwb - a workbench for population protocols.
//
// Subcommands:
//   compile    turn a protocol into its observation-only simulation
//   run        one seeded random execution
//   predicate  exhaustive predicate table over small inputs
//   verify     correspondence checks between a source and its compilation
//   translate  print the translated form of a source configuration
//
// Exit codes: 0 success / all checks pass, 1 semantic failure, 2 parse
// error, 3 not well-specified, 4 node limit hit.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ppwb/compiler.hpp"
#include "ppwb/execution.hpp"
#include "ppwb/text_format.hpp"
#include "ppwb/translation.hpp"
#include "ppwb/verifier.hpp"

namespace {

using namespace ppwb;

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitParse = 2;
constexpr int kExitNotWellSpecified = 3;
constexpr int kExitLimit = 4;

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(tok);
  return out;
}

std::string csv_of(const ProtocolSpec& p, const std::vector<int>& inp) {
  std::string out;
  for (std::size_t i = 0; i < inp.size(); ++i) {
    if (i) out += ",";
    out += p.alphabet[inp[i]];
  }
  return out;
}

int cmd_compile(const std::string& in, const std::string& out_path,
                const std::string& model, bool use_t6) {
  ParsedProtocolFile file = parse_protocol_file(in);
  if (!model.empty()) {
    Model want = model == "mpp" ? Model::Mediated : Model::Plain;
    if (file.spec.model != want)
      throw ParseError("'" + in + "' is not a " + model + " protocol");
  }
  CompiledProtocol pc = file.spec.model == Model::Plain
                            ? compile_pp(file.spec, use_t6)
                            : compile_mpp(file.spec);
  write_file(out_path, compiled_to_text(pc));
  std::cout << "wrote " << pc.spec.transitions.size() << " transitions to "
            << out_path << "\n";
  return kExitOk;
}

template <class C>
int run_and_report(const ProtocolSpec& p, const C& start, std::uint64_t seed,
                   std::size_t max_steps, const std::string& trace_path) {
  Trace<C> tr = run_random(p, start, seed, max_steps);
  if (!trace_path.empty()) write_file(trace_path, trace_to_text(p, tr));
  const C& last = tr.steps.empty() ? tr.start : tr.steps.back().second;
  std::cout << "steps: " << tr.steps.size() << "\n";
  std::cout << "final: " << config_to_line(p, last) << "\n";
  const char* names[] = {"0", "1", "bot"};
  std::cout << "output: " << names[static_cast<int>(global_output(p, last))] << "\n";
  return kExitOk;
}

int cmd_run(const std::string& in, const std::string& input_csv, std::uint64_t seed,
            std::size_t max_steps, const std::string& trace_path) {
  ParsedProtocolFile file = parse_protocol_file(in);
  std::vector<int> input = resolve_input(file.spec, split_csv(input_csv));
  if (file.spec.model == Model::Plain)
    return run_and_report(file.spec, global_input_plain(file.spec, input), seed,
                          max_steps, trace_path);
  return run_and_report(file.spec, global_input_mediated(file.spec, input), seed,
                        max_steps, trace_path);
}

int cmd_predicate(const std::string& in, int max_n, std::size_t node_limit) {
  ParsedProtocolFile file = parse_protocol_file(in);
  const ProtocolSpec& p = file.spec;
  bool all_ws = true;
  for (const auto& inp : all_inputs(p, 2, max_n)) {
    PredicateValue v = predicate_value(p, inp, {node_limit, false});
    const char* names[] = {"0", "1", "NWS"};
    std::cout << csv_of(p, inp) << " -> " << names[static_cast<int>(v)] << "\n";
    if (v == PredicateValue::NotWellSpecified) all_ws = false;
  }
  return all_ws ? kExitOk : kExitNotWellSpecified;
}

int cmd_verify(const std::string& source_path, const std::string& target_path,
               const std::string& checks_csv, int max_n, std::size_t node_limit) {
  ParsedProtocolFile source_file = parse_protocol_file(source_path);
  CompiledProtocol target = compiled_from_parsed(parse_protocol_file(target_path));
  SimContext ctx = SimContext::bind(source_file.spec, target);

  InputSet inputs = all_inputs(source_file.spec, 2, max_n);
  CheckOptions opt;
  opt.node_limit = node_limit;

  std::vector<VerificationReport> reports;
  for (const std::string& name : split_csv(checks_csv)) {
    if (name == "completeness")
      reports.push_back(check_completeness(ctx, inputs, opt));
    else if (name == "soundness")
      reports.push_back(check_soundness(ctx, inputs, opt));
    else if (name == "io")
      reports.push_back(check_io(ctx, inputs, opt));
    else if (name == "stability")
      reports.push_back(check_stability_preservation(ctx, inputs, opt));
    else if (name == "observations")
      reports.push_back(check_observations(ctx, inputs, opt));
    else if (name == "predicate")
      reports.push_back(check_predicate_equality(ctx, max_n, opt));
    else
      throw ParseError("unknown check '" + name + "'");
  }

  bool any_fail = false, any_inconclusive = false;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) std::cout << "\n";
    std::cout << render_report(ctx, reports[i]);
    any_fail |= reports[i].verdict == Verdict::Fail;
    any_inconclusive |= reports[i].verdict == Verdict::Inconclusive;
  }
  if (any_fail) return kExitSemantic;
  if (any_inconclusive) return kExitLimit;
  return kExitOk;
}

int cmd_translate(const std::string& protocol_path, const std::string& config_arg) {
  ParsedProtocolFile file = parse_protocol_file(protocol_path);
  const ProtocolSpec& src = file.spec;
  CompiledProtocol pc =
      src.model == Model::Plain ? compile_pp(src, false) : compile_mpp(src);
  SimContext ctx = SimContext::bind(src, pc);

  AnyConfig cfg;
  if (std::filesystem::exists(config_arg)) {
    cfg = parse_config_text(src, read_file(config_arg));
  } else {
    if (src.model != Model::Plain)
      throw ParseError("mediated configurations must come from a config file");
    Configuration c;
    for (const auto& name : split_csv(config_arg)) {
      int id = src.state_id(name);
      if (id < 0) throw StateNotInSource("state '" + name + "' is not in the source");
      c.agents.push_back(id);
    }
    cfg = std::move(c);
  }

  MediatedConfiguration d = std::holds_alternative<Configuration>(cfg)
                                ? translate(ctx, std::get<Configuration>(cfg))
                                : translate(ctx, std::get<MediatedConfiguration>(cfg));
  std::cout << config_block(pc.spec, d);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for population protocols"};
  app.require_subcommand(1);

  auto* compile = app.add_subcommand("compile", "compile to an observation-only protocol");
  std::string compile_in, compile_out, compile_model;
  bool use_t6 = false;
  compile->add_option("in", compile_in, "source protocol file")->required();
  compile->add_option("out", compile_out, "output file")->required();
  compile->add_option("--model", compile_model, "require pp or mpp source")
      ->check(CLI::IsMember({"pp", "mpp"}));
  compile->add_flag("--use-t6", use_t6,
                    "shortcut observation-only source transitions (pp only)");

  auto* run = app.add_subcommand("run", "seeded random execution");
  std::string run_in, run_input, run_trace;
  std::uint64_t run_seed = 0;
  std::size_t run_max_steps = 100000;
  run->add_option("in", run_in, "protocol file")->required();
  run->add_option("--input", run_input, "comma-separated input symbols")->required();
  run->add_option("--seed", run_seed, "random seed (default 0)");
  run->add_option("--max-steps", run_max_steps, "step bound (default 100000)");
  run->add_option("--trace", run_trace, "write the trace to this file");

  auto* predicate = app.add_subcommand("predicate", "predicate table over small inputs");
  std::string predicate_in;
  int predicate_max_n = 3;
  std::size_t predicate_limit = kDefaultNodeLimit;
  predicate->add_option("in", predicate_in, "protocol file")->required();
  predicate->add_option("--max-n", predicate_max_n, "largest population size")
      ->check(CLI::Range(2, 1000000));
  predicate->add_option("--node-limit", predicate_limit, "exploration node limit");

  auto* verify = app.add_subcommand("verify", "check a compilation against its source");
  std::string verify_source, verify_target;
  std::string verify_checks = "completeness,soundness,io,stability,observations,predicate";
  int verify_max_n = 3;
  std::size_t verify_limit = kDefaultNodeLimit;
  verify->add_option("--source", verify_source, "source protocol file")->required();
  verify->add_option("--target", verify_target, "compiled protocol file")->required();
  verify->add_option("--checks", verify_checks, "comma-separated list of checks");
  verify->add_option("--max-n", verify_max_n, "largest population size")
      ->check(CLI::Range(2, 1000000));
  verify->add_option("--node-limit", verify_limit, "exploration node limit");

  auto* translate_cmd = app.add_subcommand("translate", "translate a source configuration");
  std::string translate_protocol, translate_config;
  translate_cmd->add_option("--protocol", translate_protocol, "source protocol file")
      ->required();
  translate_cmd
      ->add_option("--config", translate_config,
                   "comma-separated states, or a file with a config: block")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*compile) return cmd_compile(compile_in, compile_out, compile_model, use_t6);
    if (*run) return cmd_run(run_in, run_input, run_seed, run_max_steps, run_trace);
    if (*predicate) return cmd_predicate(predicate_in, predicate_max_n, predicate_limit);
    if (*verify)
      return cmd_verify(verify_source, verify_target, verify_checks, verify_max_n,
                        verify_limit);
    if (*translate_cmd) return cmd_translate(translate_protocol, translate_config);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const TargetMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const StateSpaceExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
  return kExitOk;
}

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ppwb/compiler.hpp"
#include "ppwb/text_format.hpp"

using namespace ppwb;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

fs::path tmp_dir() {
  fs::path dir = "cli_test_tmp";
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out = tmp_dir() / ("out." + std::to_string(counter++));
  std::string cmd = std::string(PPWB_BIN) + " " + args + " > " + out.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out);
  std::ostringstream buf;
  buf << in.rdbuf();
  res.output = buf.str();
  return res;
}

std::string proto(const std::string& name) {
  return (fs::path(PPWB_PROTO_DIR) / (name + ".pp")).string();
}

std::string write_tmp(const std::string& name, const std::string& content) {
  fs::path p = tmp_dir() / name;
  std::ofstream out(p);
  out << content;
  return p.string();
}

}  // namespace

TEST_CASE("compile writes the expected transition counts") {
  std::string full = (tmp_dir() / "d1_full.pp").string();
  CliResult r = run_cli("compile " + proto("detect_one") + " " + full);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("19 transitions") != std::string::npos);
  CompiledProtocol pc = compiled_from_parsed(parse_protocol_file(full));
  CHECK(pc.spec.transitions.size() == 19);

  std::string shortcut = (tmp_dir() / "d1_t6.pp").string();
  CliResult r6 = run_cli("compile " + proto("detect_one") + " " + shortcut + " --use-t6");
  CHECK(r6.exit_code == 0);
  CHECK(compiled_from_parsed(parse_protocol_file(shortcut)).spec.transitions.size() == 1);

  std::string bad = write_tmp("broken.pp", "model: pp\nstates 0 1\n");
  CHECK(run_cli("compile " + bad + " " + (tmp_dir() / "x.pp").string()).exit_code == 2);
  CHECK(run_cli("compile " + proto("detect_one") + " " +
                (tmp_dir() / "y.pp").string() + " --model mpp")
            .exit_code == 2);
}

TEST_CASE("run reports the final configuration and output") {
  CliResult r = run_cli("run " + proto("detect_one") + " --input 1,0 --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("final: 1,1\n") != std::string::npos);
  CHECK(r.output.find("output: 1\n") != std::string::npos);

  CliResult quiet = run_cli("run " + proto("detect_one") + " --input 0,0 --seed 7");
  CHECK(quiet.exit_code == 0);
  CHECK(quiet.output.find("steps: 0\n") != std::string::npos);
  CHECK(quiet.output.find("output: 0\n") != std::string::npos);

  CHECK(run_cli("run " + proto("detect_one") + " --input 5,0").exit_code == 1);
}

TEST_CASE("predicate prints a table and maps verdicts to exit codes") {
  CliResult r = run_cli("predicate " + proto("detect_one") + " --max-n 3");
  CHECK(r.exit_code == 0);
  // 4 vectors at n=2 plus 8 at n=3
  int rows = 0;
  std::istringstream in(r.output);
  std::string line;
  while (std::getline(in, line))
    if (line.find(" -> ") != std::string::npos) ++rows;
  CHECK(rows == 12);
  CHECK(r.output.find("1,0 -> 1") != std::string::npos);
  CHECK(r.output.find("0,0 -> 0") != std::string::npos);

  CliResult th = run_cli("predicate " + proto("threshold2") + " --max-n 2");
  CHECK(th.exit_code == 0);
  CHECK(th.output ==
        "0,0 -> 0\n"
        "0,1 -> 0\n"
        "1,0 -> 0\n"
        "1,1 -> 1\n");

  // conflicting terminal components: two rules race from the same start
  std::string nws = write_tmp("nws.pp",
                              "model: pp\n"
                              "states: a b c\n"
                              "alphabet: x\n"
                              "input:\nx -> a\n"
                              "output:\na -> 0\nb -> 1\nc -> 0\n"
                              "transitions:\n"
                              "a a -> b b\n"
                              "a a -> c c\n");
  CliResult conflicted = run_cli("predicate " + nws + " --max-n 2");
  CHECK(conflicted.exit_code == 3);
  CHECK(conflicted.output.find("x,x -> NWS") != std::string::npos);

  CliResult limited =
      run_cli("predicate " + proto("detect_one") + " --max-n 12 --node-limit 50");
  CHECK(limited.exit_code == 4);
}

TEST_CASE("verify runs the suite and flags tampered targets") {
  std::string target = (tmp_dir() / "d1_verify.pp").string();
  REQUIRE(run_cli("compile " + proto("detect_one") + " " + target).exit_code == 0);

  CliResult ok = run_cli("verify --source " + proto("detect_one") + " --target " +
                         target + " --max-n 2");
  CHECK(ok.exit_code == 0);
  for (const char* check : {"completeness", "soundness", "io", "stability",
                            "observations", "predicate"})
    CHECK(ok.output.find(std::string("check: ") + check) != std::string::npos);
  CHECK(ok.output.find("verdict: fail") == std::string::npos);

  // drop the abort family from the file and watch soundness fail
  CompiledProtocol pc = compiled_from_parsed(parse_protocol_file(target));
  CompiledProtocol tampered;
  tampered.source_model = pc.source_model;
  tampered.spec = pc.spec;
  tampered.spec.transitions.clear();
  for (std::size_t i = 0; i < pc.spec.transitions.size(); ++i) {
    if (pc.provenance[i].front().family == Family::T5) continue;
    tampered.spec.transitions.push_back(pc.spec.transitions[i]);
    tampered.provenance.push_back(pc.provenance[i]);
  }
  std::string tampered_path = write_tmp("d1_tampered.pp", compiled_to_text(tampered));
  CliResult bad = run_cli("verify --source " + proto("detect_one") + " --target " +
                          tampered_path + " --max-n 2");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("verdict: fail") != std::string::npos);
  CHECK(bad.output.find("witness:") != std::string::npos);

  CliResult limited = run_cli("verify --source " + proto("detect_one") + " --target " +
                              target + " --max-n 9 --node-limit 40");
  CHECK(limited.exit_code == 4);
  CHECK(limited.output.find("verdict: inconclusive") != std::string::npos);
}

TEST_CASE("translate prints the translated configuration") {
  CliResult r = run_cli("translate --protocol " + proto("detect_one") + " --config 0,1");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "config:\n"
        "U:0,eps\n"
        "eps,U:1\n");

  // mediated sources read the configuration from a file
  std::string cfg = write_tmp("once.cfg",
                              "config:\n"
                              "1,fresh\n"
                              "fresh,0\n");
  CliResult m = run_cli("translate --protocol " + proto("detect_one_once") +
                        " --config " + cfg);
  CHECK(m.exit_code == 0);
  CHECK(m.output ==
        "config:\n"
        "U:1,eps|fresh\n"
        "eps|fresh,U:0\n");

  CHECK(run_cli("translate --protocol " + proto("detect_one") + " --config 0,7")
            .exit_code == 1);
}

TEST_CASE("usage errors exit with the parse code") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("compile only_one_arg").exit_code == 2);
}

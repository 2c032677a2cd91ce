#include "ppwb/library.hpp"

#include <stdexcept>

namespace ppwb {

namespace {

int count_ones(const std::vector<int>& input) {
  int ones = 0;
  for (int s : input) ones += (s == 1);
  return ones;
}

}  // namespace

LibraryEntry detect_one() {
  LibraryEntry e;
  e.name = "detect_one";
  e.predicate_doc = "1 iff at least one agent starts with input 1";
  e.documented_bound = 5;
  e.predicate = [](const std::vector<int>& inp) { return count_ones(inp) >= 1; };

  ProtocolSpec& p = e.spec;
  int q0 = p.add_state("0");
  int q1 = p.add_state("1");
  p.add_symbol("0");
  p.add_symbol("1");
  p.input_map = {q0, q1};
  p.output_map = {0, 1};
  p.transitions.push_back({q1, q0, q1, q1, -1, -1, -1, -1});
  return e;
}

LibraryEntry threshold2() {
  LibraryEntry e;
  e.name = "threshold2";
  e.predicate_doc = "1 iff at least two agents start with input 1";
  e.documented_bound = 5;
  e.predicate = [](const std::vector<int>& inp) { return count_ones(inp) >= 2; };

  ProtocolSpec& p = e.spec;
  int q0 = p.add_state("0");
  int q1 = p.add_state("1");
  int q2 = p.add_state("2");
  p.add_symbol("0");
  p.add_symbol("1");
  p.input_map = {q0, q1};
  p.output_map = {0, 0, 1};
  p.transitions.push_back({q1, q1, q2, q2, -1, -1, -1, -1});
  p.transitions.push_back({q2, q0, q2, q2, -1, -1, -1, -1});
  p.transitions.push_back({q2, q1, q2, q2, -1, -1, -1, -1});
  return e;
}

LibraryEntry majority() {
  LibraryEntry e;
  e.name = "majority";
  e.predicate_doc = "1 iff more agents start with 1 than with 0; ties report 0";
  e.documented_bound = 5;
  e.predicate = [](const std::vector<int>& inp) {
    int ones = count_ones(inp);
    return 2 * ones > static_cast<int>(inp.size());
  };

  ProtocolSpec& p = e.spec;
  int s1 = p.add_state("s1");  // strong, leaning 1
  int s0 = p.add_state("s0");  // strong, leaning 0
  int w1 = p.add_state("w1");  // weak, leaning 1
  int w0 = p.add_state("w0");  // weak, leaning 0
  p.add_symbol("0");
  p.add_symbol("1");
  p.input_map = {s0, s1};
  p.output_map = {1, 0, 1, 0};
  auto rule = [&p](int a, int b, int a2, int b2) {
    p.transitions.push_back({a, b, a2, b2, -1, -1, -1, -1});
  };
  rule(s1, s0, w1, w0);  // opposite strongs cancel
  rule(s0, s1, w0, w1);
  rule(s1, w0, s1, w1);  // surviving strongs convert weaks
  rule(s0, w1, s0, w0);
  rule(w0, w1, w0, w0);  // all-weak populations settle on the tie verdict
  return e;
}

LibraryEntry modulo(int m, int r) {
  if (m < 2 || r < 0 || r >= m)
    throw std::invalid_argument("modulo requires m >= 2 and 0 <= r < m");
  LibraryEntry e;
  e.name = "modulo_" + std::to_string(m) + "_" + std::to_string(r);
  e.predicate_doc = "1 iff the count of 1s is congruent to " + std::to_string(r) +
                    " modulo " + std::to_string(m);
  e.documented_bound = 5;
  e.predicate = [m, r](const std::vector<int>& inp) {
    return count_ones(inp) % m == r;
  };

  ProtocolSpec& p = e.spec;
  std::vector<int> carrier(m);
  for (int v = 0; v < m; ++v) carrier[v] = p.add_state("c" + std::to_string(v));
  int f0 = p.add_state("f0");
  int f1 = p.add_state("f1");
  p.add_symbol("0");
  p.add_symbol("1");
  p.input_map = {carrier[0], carrier[1 % m]};
  p.output_map.assign(p.states.size(), 0);
  for (int v = 0; v < m; ++v) p.output_map[carrier[v]] = (v == r) ? 1 : 0;
  p.output_map[f0] = 0;
  p.output_map[f1] = 1;

  auto follower = [&](int v) { return (v == r) ? f1 : f0; };
  // carriers merge; the absorbed agent follows the new verdict
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      int sum = (x + y) % m;
      p.transitions.push_back(
          {carrier[x], carrier[y], carrier[sum], follower(sum), -1, -1, -1, -1});
    }
  // carriers correct stale followers
  for (int v = 0; v < m; ++v) {
    int wrong = (v == r) ? f0 : f1;
    p.transitions.push_back(
        {carrier[v], wrong, carrier[v], follower(v), -1, -1, -1, -1});
  }
  return e;
}

LibraryEntry detect_one_once() {
  LibraryEntry e;
  e.name = "detect_one_once";
  e.predicate_doc = "1 iff at least one agent starts with input 1";
  e.documented_bound = 3;
  e.predicate = [](const std::vector<int>& inp) { return count_ones(inp) >= 1; };

  ProtocolSpec& p = e.spec;
  p.model = Model::Mediated;
  int q0 = p.add_state("0");
  int q1 = p.add_state("1");
  p.add_symbol("0");
  p.add_symbol("1");
  int fresh = p.add_edge_state("fresh");
  int used = p.add_edge_state("used");
  p.initial_edge = fresh;
  p.input_map = {q0, q1};
  p.output_map = {0, 1};
  p.transitions.push_back({q1, q0, q1, q1, fresh, fresh, used, used});
  return e;
}

std::vector<LibraryEntry> standard_entries() {
  std::vector<LibraryEntry> out;
  out.push_back(detect_one());
  out.push_back(threshold2());
  out.push_back(majority());
  out.push_back(modulo(2, 0));
  out.push_back(detect_one_once());
  return out;
}

}  // namespace ppwb

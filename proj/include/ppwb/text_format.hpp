#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ppwb/compiler.hpp"
#include "ppwb/config.hpp"
#include "ppwb/execution.hpp"
#include "ppwb/protocol.hpp"

namespace ppwb {

// Protocol description files: one definition per file, sections
//   model: pp|mpp        states: ...        alphabet: ...
//   edge-states: ...     initial-edge: ...  (mediated only)
//   input:   lines "sigma -> q"
//   output:  lines "q -> 0|1"
//   transitions:  lines "p q -> p' q'"  or  "p r q s -> p' r' q' s'"
//   provenance:   lines "<index> <family> <source-index>[,...]"  (compiled)
// '#' starts a comment; symbols are whitespace-free tokens. All indices in
// files are 1-based.

struct ParsedProtocolFile {
  ProtocolSpec spec;
  std::optional<std::vector<std::vector<Origin>>> provenance;
};

ParsedProtocolFile parse_protocol_text(std::string_view text);
ParsedProtocolFile parse_protocol_file(const std::string& path);

std::string protocol_to_text(const ProtocolSpec& p);
std::string compiled_to_text(const CompiledProtocol& pc);

// Rebuild a CompiledProtocol from a parsed file. The source model is inferred
// from the edge-state shape. Requires a provenance section.
CompiledProtocol compiled_from_parsed(const ParsedProtocolFile& file);

// Configurations: plain as one comma-separated line, mediated as one line of
// ';'-joined rows (inside "config:" blocks mediated matrices may also span n
// lines).
std::string config_to_line(const ProtocolSpec& p, const Configuration& c);
std::string config_to_line(const ProtocolSpec& p, const MediatedConfiguration& c);
std::string config_block(const ProtocolSpec& p, const Configuration& c);
std::string config_block(const ProtocolSpec& p, const MediatedConfiguration& c);

using AnyConfig = std::variant<Configuration, MediatedConfiguration>;
AnyConfig parse_config_text(const ProtocolSpec& p, std::string_view text);

// Traces: "start:" line followed by one "i j t -> config" line per step.
template <class C>
std::string trace_to_text(const ProtocolSpec& p, const Trace<C>& tr) {
  std::string out = "start: " + config_to_line(p, tr.start) + "\n";
  for (const auto& [lab, cfg] : tr.steps) {
    out += std::to_string(lab.initiator + 1) + " " +
           std::to_string(lab.responder + 1) + " " +
           std::to_string(lab.transition + 1) + " -> " + config_to_line(p, cfg) +
           "\n";
  }
  return out;
}

// Graphs: a node list ("<id> <config>") and an edge list
// ("<src> <i> <j> <t> <dst>"), all ids 1-based, discovery order.
template <class C>
std::string graph_to_text(const ProtocolSpec& p, const ReachabilityGraph<C>& g) {
  std::string out = "nodes:\n";
  for (std::size_t v = 0; v < g.nodes.size(); ++v)
    out += std::to_string(v + 1) + " " + config_to_line(p, g.nodes[v]) + "\n";
  out += "edges:\n";
  for (std::size_t v = 0; v < g.edges.size(); ++v)
    for (const auto& [lab, w] : g.edges[v])
      out += std::to_string(v + 1) + " " + std::to_string(lab.initiator + 1) +
             " " + std::to_string(lab.responder + 1) + " " +
             std::to_string(lab.transition + 1) + " " + std::to_string(w + 1) +
             "\n";
  if (!g.complete) out += "truncated: node-limit " + std::to_string(g.node_limit) + "\n";
  return out;
}

std::string read_file(const std::string& path);   // ParseError on I/O failure
void write_file(const std::string& path, std::string_view content);

}  // namespace ppwb

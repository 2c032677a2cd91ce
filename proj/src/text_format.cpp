#include "ppwb/text_format.hpp"

#include <fstream>
#include <sstream>

namespace ppwb {

namespace {

std::string strip_comment(std::string line) {
  auto hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  return line;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

struct Section {
  std::string name;
  std::vector<std::vector<std::string>> lines;  // tokenized content lines
};

const std::vector<std::string> kSectionNames = {
    "model",  "states", "alphabet",    "edge-states", "initial-edge",
    "input",  "output", "transitions", "provenance"};

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> sections;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(std::move(raw));
    // A known section header starts the line and ends with ':'.
    std::string header;
    for (const auto& name : kSectionNames) {
      if (line.rfind(name + ":", 0) == 0) {
        header = name;
        break;
      }
    }
    if (!header.empty()) {
      sections.push_back({header, {}});
      std::string rest = line.substr(header.size() + 1);
      auto toks = tokens_of(rest);
      if (!toks.empty()) sections.back().lines.push_back(std::move(toks));
      continue;
    }
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (sections.empty())
      throw ParseError("line " + std::to_string(lineno) + ": content before any section");
    sections.back().lines.push_back(std::move(toks));
  }
  return sections;
}

std::vector<std::string> flat_tokens(const Section& s) {
  std::vector<std::string> out;
  for (const auto& line : s.lines) out.insert(out.end(), line.begin(), line.end());
  return out;
}

int lookup_state(const ProtocolSpec& p, const std::string& name) {
  int id = p.state_id(name);
  if (id < 0) throw ParseError("unknown state '" + name + "'");
  return id;
}

int lookup_edge(const ProtocolSpec& p, const std::string& name) {
  int id = p.edge_id(name);
  if (id < 0) throw ParseError("unknown edge state '" + name + "'");
  return id;
}

int parse_index(const std::string& tok, std::size_t limit, const char* what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " '" + tok + "'");
  }
  if (pos != tok.size() || v < 1 || static_cast<std::size_t>(v) > limit)
    throw ParseError(std::string("bad ") + what + " '" + tok + "'");
  return static_cast<int>(v - 1);
}

}  // namespace

ParsedProtocolFile parse_protocol_text(std::string_view text) {
  ParsedProtocolFile file;
  ProtocolSpec& p = file.spec;

  std::vector<Section> sections = split_sections(text);
  auto section = [&sections](const std::string& name) -> const Section* {
    const Section* found = nullptr;
    for (const auto& s : sections)
      if (s.name == name) {
        if (found) throw ParseError("duplicate section '" + name + "'");
        found = &s;
      }
    return found;
  };
  auto required = [&section](const std::string& name) -> const Section& {
    const Section* s = section(name);
    if (!s) throw ParseError("missing section '" + name + "'");
    return *s;
  };

  try {
    auto model_toks = flat_tokens(required("model"));
    if (model_toks.size() != 1 || (model_toks[0] != "pp" && model_toks[0] != "mpp"))
      throw ParseError("model must be 'pp' or 'mpp'");
    p.model = model_toks[0] == "pp" ? Model::Plain : Model::Mediated;

    for (auto& name : flat_tokens(required("states"))) p.add_state(std::move(name));
    for (auto& name : flat_tokens(required("alphabet"))) p.add_symbol(std::move(name));

    if (p.model == Model::Mediated) {
      for (auto& name : flat_tokens(required("edge-states")))
        p.add_edge_state(std::move(name));
      auto init = flat_tokens(required("initial-edge"));
      if (init.size() != 1) throw ParseError("initial-edge takes one symbol");
      p.initial_edge = lookup_edge(p, init[0]);
    } else {
      if (section("edge-states") || section("initial-edge"))
        throw ParseError("plain protocols must not declare edge states");
    }

    p.input_map.assign(p.alphabet.size(), -1);
    for (const auto& line : required("input").lines) {
      if (line.size() != 3 || line[1] != "->")
        throw ParseError("input lines read 'symbol -> state'");
      int sym = p.symbol_id(line[0]);
      if (sym < 0) throw ParseError("unknown input symbol '" + line[0] + "'");
      if (p.input_map[sym] != -1)
        throw ParseError("duplicate input mapping for '" + line[0] + "'");
      p.input_map[sym] = lookup_state(p, line[2]);
    }
    for (std::size_t a = 0; a < p.alphabet.size(); ++a)
      if (p.input_map[a] < 0)
        throw ParseError("input symbol '" + p.alphabet[a] + "' has no mapping");

    p.output_map.assign(p.states.size(), -1);
    for (const auto& line : required("output").lines) {
      if (line.size() != 3 || line[1] != "->" || (line[2] != "0" && line[2] != "1"))
        throw ParseError("output lines read 'state -> 0|1'");
      int q = lookup_state(p, line[0]);
      if (p.output_map[q] != -1)
        throw ParseError("duplicate output mapping for '" + line[0] + "'");
      p.output_map[q] = line[2] == "1" ? 1 : 0;
    }
    for (std::size_t q = 0; q < p.states.size(); ++q)
      if (p.output_map[q] < 0)
        throw ParseError("state '" + p.states[q] + "' has no output");

    for (const auto& line : required("transitions").lines) {
      Transition t;
      if (p.model == Model::Plain) {
        if (line.size() != 5 || line[2] != "->")
          throw ParseError("plain transitions read 'p q -> p2 q2'");
        t.p = lookup_state(p, line[0]);
        t.q = lookup_state(p, line[1]);
        t.p2 = lookup_state(p, line[3]);
        t.q2 = lookup_state(p, line[4]);
      } else {
        if (line.size() != 9 || line[4] != "->")
          throw ParseError("mediated transitions read 'p r q s -> p2 r2 q2 s2'");
        t.p = lookup_state(p, line[0]);
        t.r = lookup_edge(p, line[1]);
        t.q = lookup_state(p, line[2]);
        t.s = lookup_edge(p, line[3]);
        t.p2 = lookup_state(p, line[5]);
        t.r2 = lookup_edge(p, line[6]);
        t.q2 = lookup_state(p, line[7]);
        t.s2 = lookup_edge(p, line[8]);
      }
      p.transitions.push_back(t);
    }

    if (const Section* prov = section("provenance")) {
      std::vector<std::vector<Origin>> table(p.transitions.size());
      for (const auto& line : prov->lines) {
        if (line.size() != 3) throw ParseError("provenance lines read 'index family sources'");
        int idx = parse_index(line[0], p.transitions.size(), "transition index");
        auto fam = family_from_name(line[1]);
        if (!fam) throw ParseError("unknown family '" + line[1] + "'");
        std::istringstream srcs(line[2]);
        std::string tok;
        while (std::getline(srcs, tok, ','))
          table[idx].push_back(
              {*fam, parse_index(tok, 1u << 30, "source transition index")});
        if (table[idx].empty()) throw ParseError("provenance line lists no sources");
      }
      file.provenance = std::move(table);
    }

    p.validate();
  } catch (const MalformedSource& e) {
    throw ParseError(e.what());
  }
  return file;
}

ParsedProtocolFile parse_protocol_file(const std::string& path) {
  return parse_protocol_text(read_file(path));
}

std::string protocol_to_text(const ProtocolSpec& p) {
  std::ostringstream out;
  out << "model: " << (p.model == Model::Plain ? "pp" : "mpp") << "\n";
  out << "states:";
  for (const auto& s : p.states) out << " " << s;
  out << "\nalphabet:";
  for (const auto& s : p.alphabet) out << " " << s;
  out << "\n";
  if (p.model == Model::Mediated) {
    out << "edge-states:";
    for (const auto& s : p.edge_states) out << " " << s;
    out << "\ninitial-edge: " << p.edge_states[p.initial_edge] << "\n";
  }
  out << "input:\n";
  for (std::size_t a = 0; a < p.alphabet.size(); ++a)
    out << p.alphabet[a] << " -> " << p.states[p.input_map[a]] << "\n";
  out << "output:\n";
  for (std::size_t q = 0; q < p.states.size(); ++q)
    out << p.states[q] << " -> " << p.output_map[q] << "\n";
  out << "transitions:\n";
  for (const Transition& t : p.transitions) {
    if (p.model == Model::Plain) {
      out << p.states[t.p] << " " << p.states[t.q] << " -> " << p.states[t.p2]
          << " " << p.states[t.q2] << "\n";
    } else {
      out << p.states[t.p] << " " << p.edge_states[t.r] << " " << p.states[t.q]
          << " " << p.edge_states[t.s] << " -> " << p.states[t.p2] << " "
          << p.edge_states[t.r2] << " " << p.states[t.q2] << " "
          << p.edge_states[t.s2] << "\n";
    }
  }
  return out.str();
}

std::string compiled_to_text(const CompiledProtocol& pc) {
  std::ostringstream out;
  out << protocol_to_text(pc.spec);
  out << "provenance:\n";
  for (std::size_t i = 0; i < pc.provenance.size(); ++i) {
    out << (i + 1) << " " << family_name(pc.provenance[i].front().family) << " ";
    for (std::size_t k = 0; k < pc.provenance[i].size(); ++k) {
      if (k) out << ",";
      out << (pc.provenance[i][k].source_transition + 1);
    }
    out << "\n";
  }
  return out.str();
}

CompiledProtocol compiled_from_parsed(const ParsedProtocolFile& file) {
  if (!file.provenance)
    throw ParseError("compiled protocol file lacks a provenance section");
  CompiledProtocol pc;
  pc.spec = file.spec;
  pc.provenance = *file.provenance;
  for (std::size_t i = 0; i < pc.provenance.size(); ++i)
    if (pc.provenance[i].empty())
      throw ParseError("transition " + std::to_string(i + 1) + " has no provenance");
  SimView view = SimView::of(pc.spec);  // TargetMismatch on foreign symbols
  pc.source_model = view.mediated_source ? Model::Mediated : Model::Plain;
  return pc;
}

namespace {

std::string cell_csv(const ProtocolSpec& p, const MediatedConfiguration& c, int i) {
  std::string row;
  for (int j = 0; j < c.n; ++j) {
    if (j) row += ",";
    row += (i == j) ? p.states[c.at(i, j)] : p.edge_states[c.at(i, j)];
  }
  return row;
}

}  // namespace

std::string config_to_line(const ProtocolSpec& p, const Configuration& c) {
  std::string out;
  for (int i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += p.states[c.agents[i]];
  }
  return out;
}

std::string config_to_line(const ProtocolSpec& p, const MediatedConfiguration& c) {
  std::string out;
  for (int i = 0; i < c.n; ++i) {
    if (i) out += ";";
    out += cell_csv(p, c, i);
  }
  return out;
}

std::string config_block(const ProtocolSpec& p, const Configuration& c) {
  return "config: " + config_to_line(p, c) + "\n";
}

std::string config_block(const ProtocolSpec& p, const MediatedConfiguration& c) {
  std::string out = "config:\n";
  for (int i = 0; i < c.n; ++i) out += cell_csv(p, c, i) + "\n";
  return out;
}

AnyConfig parse_config_text(const ProtocolSpec& p, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::vector<std::vector<std::string>> rows;
  bool saw_header = false;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(std::move(raw));
    if (line.rfind("config:", 0) == 0) {
      if (saw_header) throw ParseError("more than one config block");
      saw_header = true;
      line = line.substr(7);
    }
    // split on ';' first (one-line mediated form), then on ','
    std::istringstream parts(line);
    std::string part;
    while (std::getline(parts, part, ';')) {
      std::vector<std::string> cells;
      std::istringstream cs(part);
      std::string cell;
      while (std::getline(cs, cell, ',')) {
        auto toks = tokens_of(cell);
        if (toks.size() > 1)
          throw ParseError("line " + std::to_string(lineno) + ": stray whitespace in cell");
        if (!toks.empty()) cells.push_back(toks[0]);
      }
      if (!cells.empty()) rows.push_back(std::move(cells));
    }
  }
  if (!saw_header) throw ParseError("missing 'config:' header");
  if (rows.empty()) throw ParseError("empty configuration");

  if (rows.size() == 1 && (p.model == Model::Plain || rows[0].size() == 1)) {
    if (p.model == Model::Mediated && rows[0].size() != 1)
      throw ParseError("mediated configurations need an n x n matrix");
    Configuration c;
    if (p.model == Model::Mediated) {
      // 1x1 matrix of a mediated protocol
      MediatedConfiguration m = MediatedConfiguration::sized(1);
      m.at(0, 0) = lookup_state(p, rows[0][0]);
      return m;
    }
    for (const auto& name : rows[0]) c.agents.push_back(lookup_state(p, name));
    return c;
  }

  if (p.model == Model::Plain)
    throw ParseError("plain configurations are a single line of states");
  int n = static_cast<int>(rows.size());
  MediatedConfiguration m = MediatedConfiguration::sized(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw ParseError("configuration matrix is not square");
    for (int j = 0; j < n; ++j)
      m.at(i, j) = (i == j) ? lookup_state(p, rows[i][j]) : lookup_edge(p, rows[i][j]);
  }
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ParseError("write to '" + path + "' failed");
}

}  // namespace ppwb

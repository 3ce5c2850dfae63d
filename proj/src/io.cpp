#include "pref/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <utility>

namespace pref {
namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

// Sorted "a b" lines with a <= b, independent of the dense id assignment.
std::string edge_body(const LabeledGraph& g) {
  std::vector<std::pair<std::string_view, std::string_view>> lines;
  lines.reserve(g.graph.num_edges());
  for (auto [u, v] : g.graph.edges()) {
    std::string_view a = g.labels[u], b = g.labels[v];
    if (b < a) std::swap(a, b);
    lines.emplace_back(a, b);
  }
  std::sort(lines.begin(), lines.end());
  std::string body;
  for (auto [a, b] : lines) {
    body.append(a).append(1, ' ').append(b).append(1, '\n');
  }
  return body;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

nlohmann::json label_or_null(const LabeledGraph& g, NodeId v) {
  return v == kNoNode ? nlohmann::json(nullptr) : nlohmann::json(g.labels[v]);
}

std::string state_name(NodeState s) {
  switch (s) {
    case NodeState::Susceptible:
      return "S";
    case NodeState::Infected:
      return "I";
    case NodeState::Recovered:
      return "R";
  }
  return "S";
}

}  // namespace

LabeledGraph LabeledGraph::with_numeric_labels(Graph graph) {
  LabeledGraph g;
  g.labels.resize(graph.num_nodes());
  for (std::size_t v = 0; v < g.labels.size(); ++v) g.labels[v] = std::to_string(v);
  g.graph = std::move(graph);
  return g;
}

NodeId LabeledGraph::id_of(const std::string& label) const {
  if (index_.size() != labels.size()) {
    index_.clear();
    for (NodeId v = 0; v < labels.size(); ++v) index_.emplace(labels[v], v);
  }
  auto it = index_.find(label);
  if (it == index_.end()) throw std::invalid_argument("unknown node label '" + label + "'");
  return it->second;
}

LabeledGraph read_edge_list(std::istream& in) {
  LabeledGraph g;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<Edge> edges;
  auto id_for = [&](const std::string& label) {
    auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(g.labels.size()));
    if (inserted) g.labels.push_back(label);
    return it->second;
  };
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    std::istringstream fields(text);
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw ParseError("expected two node labels, got '" + text + "'", number);
    }
    NodeId u = id_for(a);
    NodeId v = id_for(b);
    edges.emplace_back(u, v);
  }
  if (g.labels.empty()) throw std::invalid_argument("edge list contains no nodes");
  g.graph = Graph::from_edges(g.labels.size(), edges);
  return g;
}

LabeledGraph load_edge_list(const std::string& path) {
  auto in = open_in(path);
  return read_edge_list(in);
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return hex.str();
}

std::string graph_digest(const LabeledGraph& g) { return sha256_hex(edge_body(g)); }

void write_edge_list(std::ostream& out, const LabeledGraph& g) {
  const auto body = edge_body(g);
  out << "# pref network\n";
  out << "# nodes=" << g.graph.num_nodes() << "\n";
  out << "# edges=" << g.graph.num_edges() << "\n";
  out << "# sha256=" << sha256_hex(body) << "\n";
  out << body;
}

void save_edge_list(const std::string& path, const LabeledGraph& g) {
  auto out = open_out(path);
  write_edge_list(out, g);
}

void save_label_map(const std::string& path, const LabeledGraph& g) {
  auto out = open_out(path);
  for (std::size_t v = 0; v < g.labels.size(); ++v) out << v << ' ' << g.labels[v] << '\n';
}

void write_sequence(std::ostream& out, const LabeledGraph& g, const std::vector<NodeId>& order,
                    const std::map<std::string, std::string>& header) {
  require_permutation(order, g.graph.num_nodes());
  std::ostringstream body;
  for (NodeId v : order) body << g.labels[v] << '\n';
  out << "# pref sequence\n";
  for (const auto& [key, value] : header) out << "# " << key << '=' << value << '\n';
  out << "# network_sha256=" << graph_digest(g) << '\n';
  out << "# sha256=" << sha256_hex(body.str()) << '\n';
  out << body.str();
}

void save_sequence(const std::string& path, const LabeledGraph& g, const std::vector<NodeId>& order,
                   const std::map<std::string, std::string>& header) {
  auto out = open_out(path);
  write_sequence(out, g, order, header);
}

SequenceFile read_sequence(std::istream& in, const LabeledGraph& g) {
  SequenceFile file;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      auto kv = trim(text.substr(1));
      auto eq = kv.find('=');
      if (eq != std::string::npos) file.header[kv.substr(0, eq)] = kv.substr(eq + 1);
      continue;
    }
    try {
      file.order.push_back(g.id_of(text));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), number);
    }
  }
  require_permutation(file.order, g.graph.num_nodes());
  auto recorded = file.header.find("network_sha256");
  if (recorded != file.header.end() && recorded->second != graph_digest(g)) {
    throw std::invalid_argument("sequence was computed for a different network");
  }
  return file;
}

SequenceFile load_sequence(const std::string& path, const LabeledGraph& g) {
  auto in = open_in(path);
  return read_sequence(in, g);
}

nlohmann::json to_json(const DiffusionTrace& trace, const LabeledGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (NodeId v = 0; v < trace.infection_time.size(); ++v) {
    if (!trace.infected(v)) continue;
    nodes.push_back({{"node", g.labels[v]},
                     {"time", trace.infection_time[v]},
                     {"infector", label_or_null(g, trace.infector[v])},
                     {"state", state_name(trace.final_state[v])}});
  }
  return {{"source", g.labels[trace.source]},
          {"horizon", trace.horizon},
          {"died_out", trace.died_out},
          {"num_nodes", trace.infection_time.size()},
          {"ever_infected", trace.ever_infected()},
          {"infected", std::move(nodes)}};
}

nlohmann::json to_json(const ObserverReadout& readout, const LabeledGraph& g) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : readout.records) {
    records.push_back({{"node", g.labels[r.node]},
                       {"time", r.time ? nlohmann::json(*r.time) : nlohmann::json(nullptr)},
                       {"directional", r.directional},
                       {"infector", r.infector ? nlohmann::json(g.labels[*r.infector]) : nlohmann::json(nullptr)}});
  }
  return {{"num_nodes", readout.num_nodes}, {"observers", std::move(records)}};
}

ObserverReadout readout_from_json(const nlohmann::json& j, const LabeledGraph& g) {
  ObserverReadout readout;
  readout.num_nodes = g.graph.num_nodes();
  if (j.contains("num_nodes") && j.at("num_nodes").get<std::size_t>() != readout.num_nodes) {
    throw std::invalid_argument("readout was recorded on a graph of a different size");
  }
  for (const auto& rec : j.at("observers")) {
    ObserverRecord r;
    r.node = g.id_of(rec.at("node").get<std::string>());
    if (rec.contains("time") && !rec.at("time").is_null()) r.time = rec.at("time").get<std::uint32_t>();
    r.directional = rec.value("directional", false);
    if (rec.contains("infector") && !rec.at("infector").is_null()) {
      r.infector = g.id_of(rec.at("infector").get<std::string>());
    }
    readout.records.push_back(r);
  }
  std::sort(readout.records.begin(), readout.records.end(),
            [](const ObserverRecord& a, const ObserverRecord& b) { return a.node < b.node; });
  for (std::size_t i = 1; i < readout.records.size(); ++i) {
    if (readout.records[i].node == readout.records[i - 1].node) {
      throw std::invalid_argument("readout lists observer '" + g.labels[readout.records[i].node] + "' twice");
    }
  }
  return readout;
}

nlohmann::json to_json(const CandidateReport& report, const LabeledGraph& g) {
  auto labels = [&](const std::vector<NodeId>& ids) {
    nlohmann::json arr = nlohmann::json::array();
    for (NodeId v : ids) arr.push_back(g.labels[v]);
    return arr;
  };
  nlohmann::json theta = nlohmann::json::array();
  for (auto [v, count] : report.theta) theta.push_back({{"node", g.labels[v]}, {"count", count}});
  return {{"earliest_observers", labels(report.earliest)},
          {"primary_candidates", labels(report.primary)},
          {"interior_candidates", labels(report.interior)},
          {"effective_periphery", labels(report.periphery)},
          {"estimated_source", report.estimate ? nlohmann::json(g.labels[*report.estimate]) : nlohmann::json(nullptr)},
          {"theta", std::move(theta)},
          {"final_candidates", labels(report.final_set)},
          {"phi", report.phi},
          {"unconstrained", report.unconstrained}};
}

}  // namespace pref

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "pref/diffusion.hpp"
#include "pref/graph.hpp"
#include "pref/localize.hpp"
#include "pref/sequence.hpp"

namespace pref {

/// Raised for malformed input files; carries the offending line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A graph together with the external label of every dense id.
struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;

  /// Labels "0".."n-1".
  static LabeledGraph with_numeric_labels(Graph graph);
  /// Throws std::invalid_argument for an unknown label.
  NodeId id_of(const std::string& label) const;

 private:
  mutable std::unordered_map<std::string, NodeId> index_;
};

/// Whitespace separated "u v" lines, '#' comments and blank lines ignored.
/// Labels are mapped to dense ids in order of first appearance. Self-loops
/// and duplicate edges are dropped (counts in graph.build_stats()).
LabeledGraph read_edge_list(std::istream& in);
LabeledGraph load_edge_list(const std::string& path);

/// Writes a header with n, m and the SHA-256 of the edge lines, then one
/// "u v" line per edge using labels.
void write_edge_list(std::ostream& out, const LabeledGraph& g);
void save_edge_list(const std::string& path, const LabeledGraph& g);
/// "id label" per line.
void save_label_map(const std::string& path, const LabeledGraph& g);

/// Hex SHA-256 of the canonical edge-list body of a graph.
std::string graph_digest(const LabeledGraph& g);
std::string sha256_hex(const std::string& data);

/// Sequence file: '#'-prefixed "key=value" header lines, then one label per line.
struct SequenceFile {
  std::vector<NodeId> order;
  std::map<std::string, std::string> header;
};
void write_sequence(std::ostream& out, const LabeledGraph& g, const std::vector<NodeId>& order,
                    const std::map<std::string, std::string>& header);
void save_sequence(const std::string& path, const LabeledGraph& g, const std::vector<NodeId>& order,
                   const std::map<std::string, std::string>& header);
/// Throws ParseError / std::invalid_argument unless the body is a permutation
/// and any recorded network_sha256 matches `g`.
SequenceFile read_sequence(std::istream& in, const LabeledGraph& g);
SequenceFile load_sequence(const std::string& path, const LabeledGraph& g);

nlohmann::json to_json(const DiffusionTrace& trace, const LabeledGraph& g);
nlohmann::json to_json(const ObserverReadout& readout, const LabeledGraph& g);
ObserverReadout readout_from_json(const nlohmann::json& j, const LabeledGraph& g);
nlohmann::json to_json(const CandidateReport& report, const LabeledGraph& g);

}  // namespace pref

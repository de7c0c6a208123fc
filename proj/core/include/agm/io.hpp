#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "agm/curve.hpp"
#include "agm/graph.hpp"

namespace agm {

/// Malformed input. Carries the 1-based line number and, when known, the
/// file it came from.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message, std::string source = {});

  std::size_t line() const { return line_; }
  const std::string& source() const { return source_; }
  const std::string& detail() const { return detail_; }

  ParseError with_source(std::string source) const { return {line_, detail_, std::move(source)}; }

 private:
  std::size_t line_;
  std::string detail_;
  std::string source_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Label = std::int64_t;
using LabelEdge = std::pair<Label, Label>;

enum class CommunityFormat {
  automatic,   // node-pairs if every line has two fields and some community id repeats
  per_line,    // one community per line, members separated by whitespace
  node_pairs,  // "node<TAB>community" per line
};

/// Whitespace-separated "src dst" lines; '#' starts a comment line.
/// Self-loops and duplicates are kept.
std::vector<LabelEdge> parse_edge_list(std::istream& in);

/// Community membership file. Returns one label set per community, in order
/// of first appearance; duplicate labels within a community are collapsed
/// while the first-seen order of labels is kept.
std::vector<std::vector<Label>> parse_community_file(std::istream& in,
                                                     CommunityFormat format = CommunityFormat::automatic);

/// Graph, ground-truth communities and the dense-id to original-label table.
struct Dataset {
  Graph graph;
  AffiliationNetwork affiliations;
  std::vector<Label> labels;  // labels[dense id] = original label

  Label label(NodeId u) const { return labels[u]; }
};

struct DatasetSummary {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t communities = 0;
  double mean_community_size = 0.0;     // S
  double memberships_per_node = 0.0;    // A
};

/// Cleans raw input into a Dataset: drops self-loops and duplicate edges,
/// remaps endpoint labels to dense ids in ascending label order, drops
/// community members that are not graph nodes, splits every community into
/// connected components and drops components of size 1. Identical member
/// sets stay distinct communities.
Dataset preprocess(std::span<const LabelEdge> edges, const std::vector<std::vector<Label>>& communities);

DatasetSummary summarize(const Dataset& ds);

/// Shortest decimal form that round-trips.
std::string format_double(double value);

void write_edge_list(std::ostream& out, const Graph& g);
void write_communities(std::ostream& out, const AffiliationNetwork& net);
void write_id_map(std::ostream& out, std::span<const Label> labels);
void write_curve_tsv(std::ostream& out, const Curve& curve);
void write_summary(std::ostream& out, const DatasetSummary& summary);

/// Dataset directory layout: edges.txt, communities.txt (dense ids) and
/// idmap.tsv ("id<TAB>label"). The id map also fixes the node count, so
/// isolated nodes survive a round trip.
void save_dataset(const std::filesystem::path& dir, const Dataset& ds);

/// Loads a dataset directory written by save_dataset. No preprocessing is
/// applied; ids are validated.
Dataset load_dataset(const std::filesystem::path& dir);

/// Reads a text file; IoError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes a text file, creating parent directories; IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace agm

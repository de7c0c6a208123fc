#include "agm/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

namespace agm {

ParseError::ParseError(std::size_t line, const std::string& message, std::string source)
    : std::runtime_error((source.empty() ? std::string() : source + ":") + "line " +
                         std::to_string(line) + ": " + message),
      line_(line),
      detail_(message),
      source_(std::move(source)) {}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

bool is_comment_or_blank(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && is_space(line[i])) ++i;
  return i == line.size() || line[i] == '#';
}

Label parse_label(std::string_view token, std::size_t line_no) {
  Label value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError(line_no, "expected an integer node label, got '" + std::string(token) + "'");
  }
  return value;
}

template <class Fn>
void for_each_data_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    fn(line_no, split_fields(line));
  }
}

std::vector<Label> dedupe_keep_order(std::vector<Label> labels) {
  std::vector<Label> out;
  out.reserve(labels.size());
  std::vector<Label> seen;
  for (Label l : labels) {
    auto it = std::lower_bound(seen.begin(), seen.end(), l);
    if (it != seen.end() && *it == l) continue;
    seen.insert(it, l);
    out.push_back(l);
  }
  return out;
}

}  // namespace

std::vector<LabelEdge> parse_edge_list(std::istream& in) {
  std::vector<LabelEdge> edges;
  for_each_data_line(in, [&](std::size_t line_no, const std::vector<std::string_view>& fields) {
    if (fields.size() != 2) {
      throw ParseError(line_no, "expected 2 fields, found " + std::to_string(fields.size()));
    }
    edges.emplace_back(parse_label(fields[0], line_no), parse_label(fields[1], line_no));
  });
  return edges;
}

std::vector<std::vector<Label>> parse_community_file(std::istream& in, CommunityFormat format) {
  std::vector<std::pair<std::size_t, std::vector<Label>>> rows;
  for_each_data_line(in, [&](std::size_t line_no, const std::vector<std::string_view>& fields) {
    std::vector<Label> row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(parse_label(f, line_no));
    rows.emplace_back(line_no, std::move(row));
  });

  if (format == CommunityFormat::automatic) {
    bool all_pairs = !rows.empty();
    for (const auto& [line_no, row] : rows) all_pairs = all_pairs && row.size() == 2;
    bool repeated_community = false;
    if (all_pairs) {
      std::vector<Label> second;
      for (const auto& [line_no, row] : rows) second.push_back(row[1]);
      std::sort(second.begin(), second.end());
      repeated_community = std::adjacent_find(second.begin(), second.end()) != second.end();
    }
    format = (all_pairs && repeated_community) ? CommunityFormat::node_pairs
                                               : CommunityFormat::per_line;
  }

  std::vector<std::vector<Label>> communities;
  if (format == CommunityFormat::per_line) {
    communities.reserve(rows.size());
    for (auto& [line_no, row] : rows) communities.push_back(dedupe_keep_order(std::move(row)));
    return communities;
  }

  std::map<Label, std::size_t> slot;
  for (auto& [line_no, row] : rows) {
    if (row.size() != 2) {
      throw ParseError(line_no, "expected 'node community' pair, found " +
                                    std::to_string(row.size()) + " fields");
    }
    auto [it, inserted] = slot.try_emplace(row[1], communities.size());
    if (inserted) communities.emplace_back();
    communities[it->second].push_back(row[0]);
  }
  for (auto& c : communities) c = dedupe_keep_order(std::move(c));
  return communities;
}

Dataset preprocess(std::span<const LabelEdge> edges, const std::vector<std::vector<Label>>& communities) {
  std::vector<Label> labels;
  labels.reserve(2 * edges.size());
  for (auto [a, b] : edges) {
    if (a == b) continue;
    labels.push_back(a);
    labels.push_back(b);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  auto dense = [&](Label l) -> std::ptrdiff_t {
    auto it = std::lower_bound(labels.begin(), labels.end(), l);
    return (it != labels.end() && *it == l) ? it - labels.begin() : -1;
  };

  std::vector<Edge> dense_edges;
  dense_edges.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a == b) continue;
    dense_edges.push_back({static_cast<NodeId>(dense(a)), static_cast<NodeId>(dense(b))});
  }
  Graph graph(labels.size(), dense_edges);

  std::vector<std::vector<NodeId>> kept;
  for (const auto& community : communities) {
    std::vector<NodeId> members;
    for (Label l : community) {
      auto id = dense(l);
      if (id >= 0) members.push_back(static_cast<NodeId>(id));
    }
    for (auto& component : split_into_components(graph, members)) {
      if (component.size() >= 2) kept.push_back(std::move(component));
    }
  }

  Dataset ds;
  ds.affiliations = AffiliationNetwork(labels.size(), std::move(kept));
  ds.graph = std::move(graph);
  ds.labels = std::move(labels);
  return ds;
}

DatasetSummary summarize(const Dataset& ds) {
  DatasetSummary s;
  s.nodes = ds.graph.node_count();
  s.edges = ds.graph.edge_count();
  s.communities = ds.affiliations.community_count();
  const auto total = static_cast<double>(ds.affiliations.membership_count());
  s.mean_community_size = s.communities == 0 ? 0.0 : total / static_cast<double>(s.communities);
  s.memberships_per_node = s.nodes == 0 ? 0.0 : total / static_cast<double>(s.nodes);
  return s;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << '\t' << e.v << '\n';
}

void write_communities(std::ostream& out, const AffiliationNetwork& net) {
  for (std::size_t c = 0; c < net.community_count(); ++c) {
    auto m = net.members(static_cast<CommunityId>(c));
    for (std::size_t i = 0; i < m.size(); ++i) out << (i ? "\t" : "") << m[i];
    out << '\n';
  }
}

void write_id_map(std::ostream& out, std::span<const Label> labels) {
  out << "# id\tlabel\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << '\t' << labels[i] << '\n';
}

void write_curve_tsv(std::ostream& out, const Curve& curve) {
  out << "# kind=" << curve_kind_name(curve.kind) << '\n';
  out << "# " << curve.x_label << '\t' << curve.y_label << '\n';
  for (const auto& p : curve.points) out << format_double(p.x) << '\t' << format_double(p.y) << '\n';
}

void write_summary(std::ostream& out, const DatasetSummary& s) {
  out << "# dataset summary\n";
  out << "# identical member sets are kept as distinct communities\n";
  out << "N\t" << s.nodes << '\n';
  out << "E\t" << s.edges << '\n';
  out << "C\t" << s.communities << '\n';
  out << "S\t" << format_double(s.mean_community_size) << '\n';
  out << "A\t" << format_double(s.memberships_per_node) << '\n';
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

void save_dataset(const std::filesystem::path& dir, const Dataset& ds) {
  std::ostringstream edges, communities, idmap;
  write_edge_list(edges, ds.graph);
  write_communities(communities, ds.affiliations);
  write_id_map(idmap, ds.labels);
  write_file(dir / "edges.txt", edges.str());
  write_file(dir / "communities.txt", communities.str());
  write_file(dir / "idmap.tsv", idmap.str());
}

Dataset load_dataset(const std::filesystem::path& dir) {
  auto with_source = [](const std::filesystem::path& p, auto&& fn) {
    try {
      return fn();
    } catch (const ParseError& e) {
      throw e.with_source(p.string());
    }
  };

  const auto idmap_path = dir / "idmap.tsv";
  std::istringstream idmap_in(read_file(idmap_path));
  auto labels = with_source(idmap_path, [&] {
    std::vector<Label> out;
    for_each_data_line(idmap_in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
      if (f.size() != 2) throw ParseError(line_no, "expected 'id label'");
      if (parse_label(f[0], line_no) != static_cast<Label>(out.size())) {
        throw ParseError(line_no, "id map must list ids 0..N-1 in order");
      }
      out.push_back(parse_label(f[1], line_no));
    });
    return out;
  });
  const std::size_t n = labels.size();

  auto check_id = [n](Label l, std::size_t line_no) {
    if (l < 0 || static_cast<std::size_t>(l) >= n) {
      throw ParseError(line_no, "node id " + std::to_string(l) + " outside id map");
    }
    return static_cast<NodeId>(l);
  };

  const auto edges_path = dir / "edges.txt";
  std::istringstream edges_in(read_file(edges_path));
  auto edges = with_source(edges_path, [&] {
    std::vector<Edge> out;
    for_each_data_line(edges_in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
      if (f.size() != 2) throw ParseError(line_no, "expected 2 fields");
      NodeId u = check_id(parse_label(f[0], line_no), line_no);
      NodeId v = check_id(parse_label(f[1], line_no), line_no);
      if (u == v) throw ParseError(line_no, "self-loop in canonical dataset");
      out.push_back({u, v});
    });
    return out;
  });

  const auto comm_path = dir / "communities.txt";
  std::istringstream comm_in(read_file(comm_path));
  auto communities = with_source(comm_path, [&] {
    std::vector<std::vector<NodeId>> out;
    for_each_data_line(comm_in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
      std::vector<NodeId> members;
      for (auto tok : f) members.push_back(check_id(parse_label(tok, line_no), line_no));
      out.push_back(std::move(members));
    });
    return out;
  });

  Dataset ds;
  ds.graph = Graph(n, edges);
  ds.affiliations = AffiliationNetwork(n, std::move(communities));
  ds.labels = std::move(labels);
  return ds;
}

}  // namespace agm

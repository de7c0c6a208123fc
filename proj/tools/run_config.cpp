#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace agm::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    throw ConfigError(std::string(key), "invalid number '" + std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw ConfigError(std::string(key), "expected a boolean, got '" + std::string(value) + "'");
}

std::string format_name(CommunityFormat f) {
  switch (f) {
    case CommunityFormat::automatic: return "auto";
    case CommunityFormat::per_line: return "lines";
    case CommunityFormat::node_pairs: return "pairs";
  }
  return "auto";
}

}  // namespace

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = trim(text.substr(start, end - start));
    if (!item.empty()) out.emplace_back(item);
    start = end + 1;
  }
  return out;
}

void RunConfig::set(std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  const std::string k(key);
  if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "threads") {
    threads = parse_number<std::size_t>(key, value);
  } else if (key == "edges") {
    edges = value;
  } else if (key == "communities") {
    communities = value;
  } else if (key == "out") {
    out = value;
  } else if (key == "community_format") {
    if (value == "auto") community_format = CommunityFormat::automatic;
    else if (value == "lines") community_format = CommunityFormat::per_line;
    else if (value == "pairs") community_format = CommunityFormat::node_pairs;
    else throw ConfigError(k, "expected auto, lines or pairs");
  } else if (key == "tol") {
    tol = parse_number<double>(key, value);
  } else if (key == "max_iter") {
    max_iter = parse_number<std::size_t>(key, value);
  } else if (key == "fit_epsilon") {
    fit_epsilon = parse_bool(key, value);
  } else if (key == "beta") {
    beta = parse_number<double>(key, value);
  } else if (key == "scale") {
    scale = parse_number<double>(key, value);
  } else if (key == "epsilon") {
    epsilon = parse_number<double>(key, value);
  } else if (key == "allow_quadratic") {
    allow_quadratic = parse_bool(key, value);
  } else if (key == "bins") {
    bins = parse_number<double>(key, value);
  } else if (key == "min_bin_samples") {
    min_bin_samples = parse_number<std::size_t>(key, value);
  } else if (key == "k_max") {
    k_max = parse_number<std::size_t>(key, value);
  } else if (key == "pair_sample") {
    pair_sample = parse_number<std::size_t>(key, value);
  } else if (key == "hop_sources") {
    hop_sources = parse_number<std::size_t>(key, value);
  } else if (key == "eig_k") {
    eig_k = parse_number<std::size_t>(key, value);
  } else if (key == "properties") {
    properties = split_list(value);
  } else {
    throw ConfigError(k, "unknown key");
  }
}

void RunConfig::validate() const {
  if (!(tol > 0.0)) throw ConfigRangeError("tol", "must be positive");
  if (max_iter == 0) throw ConfigRangeError("max_iter", "must be positive");
  if (beta && !(*beta > 0.0 && *beta < 1.0)) throw ConfigRangeError("beta", "must lie in (0, 1)");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigRangeError("scale", "must be positive");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ConfigRangeError("epsilon", "must lie in [0, 1)");
  if (!(bins > 1.0)) throw ConfigRangeError("bins", "log bin factor must exceed 1");
  if (k_max == 0) throw ConfigRangeError("k_max", "must be at least 1");
  if (pair_sample == 0) throw ConfigRangeError("pair_sample", "must be at least 1");
  if (hop_sources == 0) throw ConfigRangeError("hop_sources", "must be at least 1");
  if (eig_k == 0) throw ConfigRangeError("eig_k", "must be at least 1");
}

std::string RunConfig::canonical() const {
  std::ostringstream ss;
  ss << "allow_quadratic=" << allow_quadratic << '\n';
  ss << "beta=" << (beta ? format_double(*beta) : std::string("none")) << '\n';
  ss << "bins=" << format_double(bins) << '\n';
  ss << "communities=" << communities << '\n';
  ss << "community_format=" << format_name(community_format) << '\n';
  ss << "edges=" << edges << '\n';
  ss << "eig_k=" << eig_k << '\n';
  ss << "epsilon=" << format_double(epsilon) << '\n';
  ss << "fit_epsilon=" << fit_epsilon << '\n';
  ss << "hop_sources=" << hop_sources << '\n';
  ss << "k_max=" << k_max << '\n';
  ss << "max_iter=" << max_iter << '\n';
  ss << "min_bin_samples=" << min_bin_samples << '\n';
  ss << "out=" << out << '\n';
  ss << "pair_sample=" << pair_sample << '\n';
  ss << "properties=";
  for (std::size_t i = 0; i < properties.size(); ++i) ss << (i ? "," : "") << properties[i];
  ss << '\n';
  ss << "scale=" << format_double(scale) << '\n';
  ss << "seed=" << (seed ? std::to_string(*seed) : std::string("auto")) << '\n';
  ss << "threads=" << threads << '\n';
  ss << "tol=" << format_double(tol) << '\n';
  return ss.str();
}

SuiteOptions RunConfig::suite_options(std::uint64_t run_seed) const {
  SuiteOptions o;
  o.bins.factor = bins;
  o.bins.min_samples = min_bin_samples;
  o.k_max = k_max;
  o.pair_sample = pair_sample;
  o.seed = run_seed;
  o.hop_sources = hop_sources;
  o.spectral.k = eig_k;
  o.spectral.seed = run_seed;
  return o;
}

RunConfig parse_run_config(std::string_view text, const std::vector<std::string>& required) {
  RunConfig config;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected key=value");
    }
    auto key = trim(line.substr(0, eq));
    config.set(key, line.substr(eq + 1));
    seen.emplace(key);
  }
  for (const auto& key : required) {
    if (!seen.count(key)) throw ConfigError(key, "missing required key");
  }
  config.validate();
  return config;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace agm::cli

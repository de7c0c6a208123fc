#include "agm/comparator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "agm/community_metrics.hpp"

namespace agm {

namespace {

// A curve prepared for cumulative integration.
struct Density {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> cumulative;  // unnormalized area up to x[i]
  double area = 0.0;

  bool point_mass() const { return x.size() == 1; }

  double cdf(double t) const {
    if (point_mass()) return t >= x.front() ? 1.0 : 0.0;
    if (t <= x.front()) return 0.0;
    if (t >= x.back()) return 1.0;
    const auto i = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin()) - 1;
    const double frac = (t - x[i]) / (x[i + 1] - x[i]);
    const double yt = y[i] + frac * (y[i + 1] - y[i]);
    return (cumulative[i] + 0.5 * (t - x[i]) * (y[i] + yt)) / area;
  }

  // Normalized density just inside the segment [lo, hi] of a grid that
  // contains every x of this curve; zero outside the curve's range.
  std::pair<double, double> segment_density(double lo, double hi) const {
    if (point_mass() || lo < x.front() || hi > x.back()) return {0.0, 0.0};
    auto at = [&](double t) {
      auto i = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin());
      i = std::clamp<std::size_t>(i, 1, x.size() - 1) - 1;
      return (y[i] + (t - x[i]) / (x[i + 1] - x[i]) * (y[i + 1] - y[i])) / area;
    };
    return {at(lo), at(hi)};
  }
};

Density prepare(const Curve& curve, AxisScale scale) {
  Density d;
  for (const auto& p : curve.points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("curve contains non-finite values");
    }
    if (scale == AxisScale::log) {
      if (p.x <= 0.0) continue;
      d.x.push_back(std::log(p.x));
    } else {
      d.x.push_back(p.x);
    }
    d.y.push_back(p.y);
  }
  if (d.x.empty()) throw std::invalid_argument("curve has no usable points");
  for (std::size_t i = 1; i < d.x.size(); ++i) {
    if (!(d.x[i] > d.x[i - 1])) throw std::invalid_argument("curve x values must increase strictly");
  }
  if (d.point_mass()) {
    if (d.y.front() == 0.0) throw std::invalid_argument("curve has zero total area");
    d.area = 1.0;
    d.cumulative = {0.0};
    return d;
  }
  d.cumulative.assign(d.x.size(), 0.0);
  for (std::size_t i = 1; i < d.x.size(); ++i) {
    d.cumulative[i] = d.cumulative[i - 1] + 0.5 * (d.x[i] - d.x[i - 1]) * (d.y[i] + d.y[i - 1]);
  }
  d.area = d.cumulative.back();
  if (!(d.area > 0.0) || !std::isfinite(d.area)) {
    throw std::invalid_argument("curve has zero total area");
  }
  return d;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(4) << *v;
  return ss.str();
}

std::optional<double> mean_of(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

// All requested curves for one dataset, sharing expensive intermediates.
std::map<Property, std::optional<Curve>> curves_for(const Dataset& ds, std::span<const Property> props,
                                                    const SuiteOptions& options) {
  std::map<Property, std::optional<Curve>> out;
  std::optional<OverlapCurves> overlap;
  std::optional<SpectralSummary> spectrum;
  auto nonempty = [](Curve c) -> std::optional<Curve> {
    if (c.empty()) return std::nullopt;
    return c;
  };
  for (Property p : props) {
    switch (p) {
      case Property::OO:
      case Property::AABB:
        if (!overlap) overlap = overlap_clustering(ds, options.pair_sample, options.bins, options.seed);
        out[p] = nonempty(p == Property::OO ? overlap->oo : overlap->aabb);
        break;
      case Property::EigVal:
      case Property::EigVec:
        if (ds.graph.node_count() == 0) {
          out[p] = std::nullopt;
          break;
        }
        if (!spectrum) spectrum = spectral_summary(ds.graph, options.spectral);
        out[p] = nonempty(p == Property::EigVal ? eigenvalue_curve(*spectrum) : eigenvector_curve(*spectrum));
        break;
      default:
        out[p] = property_curve(ds, p, options);
    }
  }
  return out;
}

}  // namespace

double ks_statistic(const Curve& f, const Curve& g, AxisScale scale) {
  const auto a = prepare(f, scale);
  const auto b = prepare(g, scale);
  std::vector<double> grid(a.x);
  grid.insert(grid.end(), b.x.begin(), b.x.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  double sup = 0.0;
  for (double t : grid) sup = std::max(sup, std::abs(a.cdf(t) - b.cdf(t)));
  // Between grid points the gap is quadratic; its extremum sits where the
  // two densities cross.
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto [a0, a1] = a.segment_density(grid[i - 1], grid[i]);
    const auto [b0, b1] = b.segment_density(grid[i - 1], grid[i]);
    const double d0 = a0 - b0, d1 = a1 - b1;
    if (d0 * d1 < 0.0) {
      const double t = grid[i - 1] + (grid[i] - grid[i - 1]) * d0 / (d0 - d1);
      sup = std::max(sup, std::abs(a.cdf(t) - b.cdf(t)));
    }
  }
  return std::min(sup, 1.0);
}

RelativeImprovement relative_improvement(double ks_a, double ks_b) {
  if (!(ks_a >= 0.0) || !(ks_b >= 0.0)) throw std::invalid_argument("KS values must be non-negative");
  if (ks_a == 0.0 && ks_b == 0.0) return {0.0, true};
  return {(ks_b - ks_a) / std::max(ks_a, ks_b), false};
}

std::string_view property_name(Property p) {
  switch (p) {
    case Property::Vol: return "Vol";
    case Property::MID: return "MID";
    case Property::PC: return "PC";
    case Property::EP: return "EP";
    case Property::OO: return "OO";
    case Property::AABB: return "AABB";
    case Property::Deg: return "Deg";
    case Property::CCF: return "CCF";
    case Property::Hop: return "Hop";
    case Property::TP: return "TP";
    case Property::EigVal: return "EigVal";
    case Property::EigVec: return "EigVec";
  }
  return "?";
}

std::optional<Property> parse_property(std::string_view name) {
  const auto wanted = lowercase(name);
  for (auto list : {std::span<const Property>(kCommunityProperties), std::span<const Property>(kNetworkProperties)}) {
    for (Property p : list) {
      if (lowercase(property_name(p)) == wanted) return p;
    }
  }
  return std::nullopt;
}

bool is_community_property(Property p) {
  return std::find(kCommunityProperties.begin(), kCommunityProperties.end(), p) != kCommunityProperties.end();
}

AxisScale property_scale(Property p) {
  switch (p) {
    case Property::PC:
    case Property::EP:
    case Property::Hop:
      return AxisScale::linear;
    default:
      return AxisScale::log;
  }
}

std::optional<Curve> property_curve(const Dataset& ds, Property p, const SuiteOptions& options) {
  Curve c;
  switch (p) {
    case Property::Vol:
      c = edges_vs_size(ds, options.bins).curve;
      break;
    case Property::MID:
      c = max_icdf_vs_size(ds, options.bins);
      break;
    case Property::PC:
      c = connector_in_overlap(ds, options.connector_bins, options.bins.min_samples).curve;
      break;
    case Property::EP:
      c = edge_prob_vs_shared(ds, options.k_max);
      std::erase_if(c.points, [&](const CurvePoint& pt) { return pt.samples < options.bins.min_samples; });
      break;
    case Property::OO:
      c = overlap_clustering(ds, options.pair_sample, options.bins, options.seed).oo;
      break;
    case Property::AABB:
      c = overlap_clustering(ds, options.pair_sample, options.bins, options.seed).aabb;
      break;
    case Property::Deg:
      c = degree_distribution(ds.graph);
      break;
    case Property::CCF:
      c = clustering_distribution(ds.graph);
      std::erase_if(c.points, [&](const CurvePoint& pt) { return pt.samples < options.bins.min_samples; });
      break;
    case Property::Hop: {
      const std::size_t n = ds.graph.node_count();
      const std::size_t sources = n < options.exact_hop_threshold ? n : options.hop_sources;
      if (n == 0) return std::nullopt;
      c = hop_plot(ds.graph, std::max<std::size_t>(sources, 1), options.seed);
      break;
    }
    case Property::TP:
      c = triad_participation(ds.graph);
      break;
    case Property::EigVal:
    case Property::EigVec: {
      if (ds.graph.node_count() == 0) return std::nullopt;
      const auto s = spectral_summary(ds.graph, options.spectral);
      c = p == Property::EigVal ? eigenvalue_curve(s) : eigenvector_curve(s);
      break;
    }
  }
  if (c.empty()) return std::nullopt;
  return c;
}

std::optional<double> ComparisonReport::row_average(std::size_t row, bool community_table) const {
  const auto& cols = community_table ? community_columns : network_columns;
  std::vector<double> present;
  for (Property p : cols) {
    auto it = rows.at(row).values.find(p);
    if (it != rows[row].values.end() && it->second) present.push_back(*it->second);
  }
  return mean_of(present);
}

std::optional<double> ComparisonReport::column_average(Property p) const {
  std::vector<double> present;
  for (const auto& r : rows) {
    auto it = r.values.find(p);
    if (it != r.values.end() && it->second) present.push_back(*it->second);
  }
  return mean_of(present);
}

ComparisonReport compare_suite(const Dataset& real, const Dataset& synth,
                               std::span<const Property> properties, const SuiteOptions& options,
                               std::string row_name) {
  ComparisonReport report;
  for (Property p : properties) {
    auto& cols = is_community_property(p) ? report.community_columns : report.network_columns;
    if (std::find(cols.begin(), cols.end(), p) == cols.end()) cols.push_back(p);
  }
  std::vector<Property> wanted(report.community_columns);
  wanted.insert(wanted.end(), report.network_columns.begin(), report.network_columns.end());

  const auto lhs = curves_for(real, wanted, options);
  const auto rhs = curves_for(synth, wanted, options);
  ComparisonRow row;
  row.name = std::move(row_name);
  for (Property p : wanted) {
    const auto& f = lhs.at(p);
    const auto& g = rhs.at(p);
    std::optional<double> value;
    if (f && g) {
      try {
        value = ks_statistic(*f, *g, property_scale(p));
      } catch (const std::invalid_argument&) {
        value = std::nullopt;  // degenerate curve: uncomputable, not zero
      }
    }
    row.values[p] = value;
  }
  report.rows.push_back(std::move(row));
  return report;
}

ComparisonReport relative_improvement_report(const ComparisonReport& model_a,
                                             const ComparisonReport& model_b) {
  if (model_a.rows.size() != model_b.rows.size()) {
    throw std::invalid_argument("reports have different row counts");
  }
  ComparisonReport out;
  out.community_columns = model_a.community_columns;
  out.network_columns = model_a.network_columns;
  for (std::size_t r = 0; r < model_a.rows.size(); ++r) {
    ComparisonRow row;
    row.name = model_a.rows[r].name;
    for (const auto& [p, ks_a] : model_a.rows[r].values) {
      auto it = model_b.rows[r].values.find(p);
      if (!ks_a || it == model_b.rows[r].values.end() || !it->second) {
        row.values[p] = std::nullopt;
        continue;
      }
      row.values[p] = relative_improvement(*ks_a, *it->second).value;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

void write_report_table(std::ostream& out, const ComparisonReport& report) {
  out << "# KS statistic between cumulative areas of unit-area-normalized curves;\n";
  out << "# piecewise-linear interpolation on the union x grid, log x for size/degree/rank axes.\n";
  auto table = [&](const char* title, const std::vector<Property>& cols, bool community) {
    if (cols.empty()) return;
    std::size_t name_width = std::string_view(title).size();
    for (const auto& r : report.rows) name_width = std::max(name_width, r.name.size());
    name_width = std::max<std::size_t>(name_width, 7);
    constexpr int w = 8;
    out << std::left << std::setw(static_cast<int>(name_width)) << title;
    for (Property p : cols) out << ' ' << std::right << std::setw(w) << property_name(p);
    out << ' ' << std::right << std::setw(w) << "Avg" << '\n';
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
      out << std::left << std::setw(static_cast<int>(name_width)) << report.rows[r].name;
      for (Property p : cols) {
        auto it = report.rows[r].values.find(p);
        out << ' ' << std::right << std::setw(w)
            << cell(it == report.rows[r].values.end() ? std::nullopt : it->second);
      }
      out << ' ' << std::right << std::setw(w) << cell(report.row_average(r, community)) << '\n';
    }
    out << std::left << std::setw(static_cast<int>(name_width)) << "Average";
    std::vector<double> all;
    for (Property p : cols) {
      auto avg = report.column_average(p);
      if (avg) all.push_back(*avg);
      out << ' ' << std::right << std::setw(w) << cell(avg);
    }
    out << ' ' << std::right << std::setw(w) << cell(mean_of(all)) << "\n\n";
  };
  table("Community", report.community_columns, true);
  table("Network", report.network_columns, false);
}

void write_report_kv(std::ostream& out, const ComparisonReport& report) {
  for (const auto& r : report.rows) {
    for (const auto* cols : {&report.community_columns, &report.network_columns}) {
      for (Property p : *cols) {
        auto it = r.values.find(p);
        out << r.name << '.' << property_name(p) << '\t';
        if (it == r.values.end() || !it->second) {
          out << "absent\n";
        } else {
          out << format_double(*it->second) << '\n';
        }
      }
    }
  }
}

}  // namespace agm

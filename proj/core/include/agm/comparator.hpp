#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agm/curve.hpp"
#include "agm/io.hpp"
#include "agm/network_props.hpp"

namespace agm {

enum class AxisScale { linear, log };

/// Largest gap between the cumulative areas of two curves.
///
/// Each curve is read as a density over its own x-range: piecewise-linear
/// between points, zero outside, and scaled to unit total area. Both
/// cumulative integrals are evaluated on the union of the x grids and the
/// largest absolute difference is returned, so the result lies in [0, 1].
/// A one-point curve with non-zero y is a unit point mass. With
/// AxisScale::log the integration variable is log x and points with x <= 0
/// are dropped. Throws std::invalid_argument for empty curves, non-finite
/// values or non-positive total area.
double ks_statistic(const Curve& f, const Curve& g, AxisScale scale = AxisScale::linear);

struct RelativeImprovement {
  double value = 0.0;         // (ks_b - ks_a) / max(ks_a, ks_b), in [-1, 1]
  bool both_perfect = false;  // both KS values were zero
};

/// Positive when model A has the smaller KS value.
RelativeImprovement relative_improvement(double ks_a, double ks_b);

enum class Property {
  // community connectivity and overlaps
  Vol, MID, PC, EP, OO, AABB,
  // whole network
  Deg, CCF, Hop, TP, EigVal, EigVec,
};

inline constexpr std::array<Property, 6> kCommunityProperties{
    Property::Vol, Property::MID, Property::PC, Property::EP, Property::OO, Property::AABB};
inline constexpr std::array<Property, 6> kNetworkProperties{
    Property::Deg, Property::CCF, Property::Hop, Property::TP, Property::EigVal, Property::EigVec};

std::string_view property_name(Property p);
std::optional<Property> parse_property(std::string_view name);  // case-insensitive
bool is_community_property(Property p);

/// Size/degree/rank axes are compared in log space, ratio and count axes in
/// linear space.
AxisScale property_scale(Property p);

struct SuiteOptions {
  LogBins bins{};
  std::size_t k_max = 10;
  std::size_t pair_sample = 1000;
  std::size_t connector_bins = 10;
  std::uint64_t seed = 1;
  std::size_t hop_sources = 1000;
  std::size_t exact_hop_threshold = 10000;  // exact BFS below this many nodes
  SpectralOptions spectral{};
};

/// Curve for one property, or nullopt when it cannot be computed on this
/// dataset (for example, no overlapping communities).
std::optional<Curve> property_curve(const Dataset& ds, Property p, const SuiteOptions& options);

struct ComparisonRow {
  std::string name;
  std::map<Property, std::optional<double>> values;  // absent entries are nullopt
};

struct ComparisonReport {
  std::vector<Property> community_columns;
  std::vector<Property> network_columns;
  std::vector<ComparisonRow> rows;

  /// Mean of the row's present values in one table; nullopt if none.
  std::optional<double> row_average(std::size_t row, bool community_table) const;
  /// Mean of a column's present values across rows.
  std::optional<double> column_average(Property p) const;
};

/// KS statistic per selected property between the curves of two datasets.
ComparisonReport compare_suite(const Dataset& real, const Dataset& synth,
                               std::span<const Property> properties, const SuiteOptions& options,
                               std::string row_name = "synthetic");

/// Per-cell relative improvement of model A over model B given their KS
/// reports against the same data (rows matched by position).
ComparisonReport relative_improvement_report(const ComparisonReport& model_a,
                                             const ComparisonReport& model_b);

/// Aligned text tables (community table, then network table) with row and
/// column averages; absent cells print as "-".
void write_report_table(std::ostream& out, const ComparisonReport& report);

/// "row.property<TAB>value" lines in a stable order.
void write_report_kv(std::ostream& out, const ComparisonReport& report);

}  // namespace agm

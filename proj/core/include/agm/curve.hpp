#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace agm {

enum class CurveKind { raw, binned_mean, ccdf };

struct CurvePoint {
  double x;
  double y;
  std::size_t samples = 1;  // observations behind this point
};

/// A sampled function y(x); x strictly increasing.
struct Curve {
  std::vector<CurvePoint> points;
  std::string x_label;
  std::string y_label;
  CurveKind kind = CurveKind::raw;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
};

std::string_view curve_kind_name(CurveKind kind);

/// Logarithmic binning: bin i holds x in [factor^i, factor^(i+1)).
/// Non-positive x share a dedicated bin placed first.
struct LogBins {
  double factor = 2.0;
  std::size_t min_samples = 5;  // bins with fewer samples are suppressed
};

/// Mean of y per log bin; each point sits at the mean x of its bin.
Curve binned_mean(std::span<const std::pair<double, double>> samples, const LogBins& bins,
                  std::string x_label, std::string y_label);

/// Mean of y per equal-width bin over [lo, hi); x values >= hi fall into the
/// last bin. Points sit at the mean x of their bin.
Curve linear_binned_mean(std::span<const std::pair<double, double>> samples, std::size_t bin_count,
                         double lo, double hi, std::size_t min_samples, std::string x_label,
                         std::string y_label);

/// Groups samples by exact x value and averages y.
Curve grouped_mean(std::span<const std::pair<double, double>> samples, std::string x_label,
                   std::string y_label);

/// Checks the structural invariants (x strictly increasing, ccdf values
/// non-increasing in [0, 1]).
bool is_well_formed(const Curve& curve);

}  // namespace agm

#include "agm/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

namespace agm {

std::string_view curve_kind_name(CurveKind kind) {
  switch (kind) {
    case CurveKind::raw:
      return "raw";
    case CurveKind::binned_mean:
      return "binned-mean";
    case CurveKind::ccdf:
      return "ccdf";
  }
  return "raw";
}

namespace {

struct Accumulator {
  double sum_x = 0;
  double sum_y = 0;
  std::size_t n = 0;
};

Curve from_bins(const std::map<std::int64_t, Accumulator>& acc, std::size_t min_samples,
                std::string x_label, std::string y_label, CurveKind kind) {
  Curve curve;
  curve.x_label = std::move(x_label);
  curve.y_label = std::move(y_label);
  curve.kind = kind;
  for (const auto& [key, a] : acc) {
    if (a.n == 0 || a.n < min_samples) continue;
    const double n = static_cast<double>(a.n);
    CurvePoint p{a.sum_x / n, a.sum_y / n, a.n};
    if (!curve.points.empty() && !(p.x > curve.points.back().x)) {
      // Bin means can only collide if bins are degenerate; merge.
      auto& last = curve.points.back();
      const double m = static_cast<double>(last.samples);
      last.y = (last.y * m + p.y * n) / (m + n);
      last.samples += a.n;
      continue;
    }
    curve.points.push_back(p);
  }
  return curve;
}

}  // namespace

Curve binned_mean(std::span<const std::pair<double, double>> samples, const LogBins& bins,
                  std::string x_label, std::string y_label) {
  if (!(bins.factor > 1.0)) throw std::invalid_argument("log bin factor must exceed 1");
  const double log_factor = std::log(bins.factor);
  std::map<std::int64_t, Accumulator> acc;
  for (auto [x, y] : samples) {
    std::int64_t key = std::numeric_limits<std::int64_t>::min();
    if (x > 0) {
      // Small epsilon so exact powers of the factor land in their own bin.
      key = static_cast<std::int64_t>(std::floor(std::log(x) / log_factor + 1e-9));
    }
    auto& a = acc[key];
    a.sum_x += x;
    a.sum_y += y;
    ++a.n;
  }
  return from_bins(acc, bins.min_samples, std::move(x_label), std::move(y_label),
                   CurveKind::binned_mean);
}

Curve linear_binned_mean(std::span<const std::pair<double, double>> samples, std::size_t bin_count,
                         double lo, double hi, std::size_t min_samples, std::string x_label,
                         std::string y_label) {
  if (bin_count == 0 || !(hi > lo)) throw std::invalid_argument("invalid linear bin range");
  const double width = (hi - lo) / static_cast<double>(bin_count);
  std::map<std::int64_t, Accumulator> acc;
  for (auto [x, y] : samples) {
    auto key = static_cast<std::int64_t>(std::floor((x - lo) / width));
    key = std::clamp<std::int64_t>(key, 0, static_cast<std::int64_t>(bin_count) - 1);
    auto& a = acc[key];
    a.sum_x += x;
    a.sum_y += y;
    ++a.n;
  }
  return from_bins(acc, min_samples, std::move(x_label), std::move(y_label),
                   CurveKind::binned_mean);
}

Curve grouped_mean(std::span<const std::pair<double, double>> samples, std::string x_label,
                   std::string y_label) {
  std::map<double, Accumulator> acc;
  for (auto [x, y] : samples) {
    auto& a = acc[x];
    a.sum_x += x;
    a.sum_y += y;
    ++a.n;
  }
  Curve curve;
  curve.x_label = std::move(x_label);
  curve.y_label = std::move(y_label);
  curve.kind = CurveKind::raw;
  for (const auto& [x, a] : acc) {
    curve.points.push_back({x, a.sum_y / static_cast<double>(a.n), a.n});
  }
  return curve;
}

bool is_well_formed(const Curve& curve) {
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
    if (i > 0 && !(p.x > curve.points[i - 1].x)) return false;
    if (curve.kind == CurveKind::ccdf) {
      if (p.y < 0.0 || p.y > 1.0) return false;
      if (i > 0 && p.y > curve.points[i - 1].y) return false;
    }
  }
  return true;
}

}  // namespace agm

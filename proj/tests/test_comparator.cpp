#include <gtest/gtest.h>

#include <sstream>

#include "agm/comparator.hpp"
#include "test_support.hpp"

using namespace agm;
using namespace agm::testing;

namespace {

Curve curve(std::vector<std::pair<double, double>> pts) {
  Curve c;
  for (auto [x, y] : pts) c.points.push_back({x, y, 1});
  return c;
}

Curve random_curve(Rng& rng, double lo, double hi) {
  std::vector<double> xs;
  const auto n = 2 + rng.below(15);
  for (std::uint64_t i = 0; i < n; ++i) xs.push_back(lo + (hi - lo) * rng.uniform());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Curve c;
  for (double x : xs) c.points.push_back({x, 0.01 + rng.uniform() * 10, 1});
  return c;
}

// Independent check: evaluate both piecewise-linear densities on a fine
// uniform grid, integrate with the trapezoid rule and take the largest gap.
double numeric_ks(const std::function<double(double)>& f, const std::function<double(double)>& g, double lo,
                  double hi, int n) {
  const double h = (hi - lo) / n;
  double fa = 0, ga = 0, ftot = 0, gtot = 0;
  for (int i = 0; i < n; ++i) {
    double x = lo + i * h;
    ftot += 0.5 * h * (f(x) + f(x + h));
    gtot += 0.5 * h * (g(x) + g(x + h));
  }
  double best = 0;
  for (int i = 0; i < n; ++i) {
    double x = lo + i * h;
    fa += 0.5 * h * (f(x) + f(x + h)) / ftot;
    ga += 0.5 * h * (g(x) + g(x + h)) / gtot;
    best = std::max(best, std::abs(fa - ga));
  }
  return best;
}

}  // namespace

TEST(Ks, IdenticalIsZero) {
  auto f = curve({{1, 2}, {2, 5}, {4, 1}});
  EXPECT_EQ(ks_statistic(f, f), 0.0);
  EXPECT_EQ(ks_statistic(f, f, AxisScale::log), 0.0);
}

TEST(Ks, SeparatedSpikes) {
  EXPECT_DOUBLE_EQ(ks_statistic(curve({{0, 1}}), curve({{1, 1}})), 1.0);
}

TEST(Ks, UniformVersusWiderUniform) {
  // value from a dense numeric integration of the two unit-area densities
  auto uf = [](double x) { return x <= 1.0 ? 1.0 : 0.0; };
  auto ug = [](double) { return 0.5; };
  const double oracle = numeric_ks(uf, ug, 0.0, 2.0, 10000);
  EXPECT_NEAR(oracle, 0.5, 1e-3);
  const double ks = ks_statistic(curve({{0, 1}, {1, 1}}), curve({{0, 0.5}, {2, 0.5}}));
  EXPECT_NEAR(ks, 0.5, 1e-12);
}

TEST(Ks, MatchesNumericOracleOnRandomCurves) {
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    auto f = random_curve(rng, 0, 5), g = random_curve(rng, 0, 5);
    auto interp = [](const Curve& c) {
      return [&c](double x) {
        if (x < c.points.front().x || x > c.points.back().x) return 0.0;
        for (std::size_t i = 1; i < c.size(); ++i)
          if (x <= c.points[i].x) {
            auto a = c.points[i - 1], b = c.points[i];
            return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
          }
        return c.points.back().y;
      };
    };
    const double oracle = numeric_ks(interp(f), interp(g), 0.0, 5.0, 200000);
    EXPECT_NEAR(ks_statistic(f, g), oracle, 2e-3);
  }
}

TEST(Ks, InvariantsOnRandomCurves) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    auto f = random_curve(rng, 0.5, 100), g = random_curve(rng, 0.5, 100);
    for (auto scale : {AxisScale::linear, AxisScale::log}) {
      const double a = ks_statistic(f, g, scale);
      EXPECT_EQ(a, ks_statistic(g, f, scale));
      EXPECT_GE(a, 0.0);
      EXPECT_LE(a, 1.0);
      EXPECT_EQ(ks_statistic(f, f, scale), 0.0);
      auto scaled = f;
      for (auto& p : scaled.points) p.y *= 7.25;
      EXPECT_NEAR(ks_statistic(scaled, g, scale), a, 1e-12);
    }
  }
}

TEST(Ks, Errors) {
  EXPECT_THROW(ks_statistic(Curve{}, curve({{1, 1}})), std::invalid_argument);
  EXPECT_THROW(ks_statistic(curve({{1, 0}, {2, 0}}), curve({{1, 1}})), std::invalid_argument);
  EXPECT_THROW(ks_statistic(curve({{1, std::nan("")}}), curve({{1, 1}})), std::invalid_argument);
  // log axis leaves nothing of a curve that lives at x <= 0
  EXPECT_THROW(ks_statistic(curve({{0, 1}}), curve({{1, 1}}), AxisScale::log), std::invalid_argument);
}

TEST(RelativeImprovement, Examples) {
  EXPECT_DOUBLE_EQ(relative_improvement(0.0, 0.5).value, 1.0);
  EXPECT_DOUBLE_EQ(relative_improvement(0.3, 0.3).value, 0.0);
  EXPECT_DOUBLE_EQ(relative_improvement(0.4, 0.2).value, -0.5);
  auto both = relative_improvement(0, 0);
  EXPECT_TRUE(both.both_perfect);
  EXPECT_EQ(both.value, 0.0);
  EXPECT_THROW(relative_improvement(-0.1, 0.2), std::invalid_argument);
}

TEST(RelativeImprovement, Antisymmetric) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    double a = rng.uniform(), b = rng.uniform();
    auto ab = relative_improvement(a, b).value;
    EXPECT_EQ(ab, -relative_improvement(b, a).value);
    EXPECT_LE(std::abs(ab), 1.0);
  }
}

TEST(Properties, NamesAndParsing) {
  std::vector<std::string> community, network;
  for (auto p : kCommunityProperties) community.emplace_back(property_name(p));
  for (auto p : kNetworkProperties) network.emplace_back(property_name(p));
  EXPECT_EQ(community, (std::vector<std::string>{"Vol", "MID", "PC", "EP", "OO", "AABB"}));
  EXPECT_EQ(network, (std::vector<std::string>{"Deg", "CCF", "Hop", "TP", "EigVal", "EigVec"}));
  EXPECT_EQ(parse_property("eigval"), Property::EigVal);
  EXPECT_FALSE(parse_property("nope").has_value());
}

TEST(CompareSuite, SelfComparisonIsZero) {
  auto inst = random_instance(150, 12, 2);
  Dataset ds;
  ds.graph = inst.graph;
  ds.affiliations = inst.net;
  ds.labels.resize(150);
  std::vector<Property> all(kCommunityProperties.begin(), kCommunityProperties.end());
  all.insert(all.end(), kNetworkProperties.begin(), kNetworkProperties.end());
  SuiteOptions opt;
  opt.bins.min_samples = 1;
  opt.spectral.k = 10;
  auto r = compare_suite(ds, ds, all, opt);
  ASSERT_EQ(r.rows.size(), 1u);
  for (auto p : all) {
    ASSERT_TRUE(r.rows[0].values.at(p).has_value()) << property_name(p);
    EXPECT_EQ(*r.rows[0].values.at(p), 0.0) << property_name(p);
  }
  EXPECT_EQ(*r.row_average(0, true), 0.0);
  EXPECT_EQ(*r.row_average(0, false), 0.0);
}

TEST(CompareSuite, AbsentWhenNoOverlap) {
  EdgeList e{{0, 1}, {1, 2}, {0, 2}, {3, 4}};
  auto ds = make_dataset(5, e, {{0, 1, 2}, {3, 4}});
  std::vector<Property> sel{Property::PC, Property::OO, Property::Deg};
  SuiteOptions opt;
  opt.bins.min_samples = 1;
  auto r = compare_suite(ds, ds, sel, opt);
  EXPECT_FALSE(r.rows[0].values.at(Property::PC).has_value());
  EXPECT_FALSE(r.rows[0].values.at(Property::OO).has_value());
  EXPECT_TRUE(r.rows[0].values.at(Property::Deg).has_value());
  EXPECT_EQ(r.community_columns, (std::vector<Property>{Property::PC, Property::OO}));
  EXPECT_FALSE(r.row_average(0, true).has_value());

  std::ostringstream table, kv;
  write_report_table(table, r);
  write_report_kv(kv, r);
  EXPECT_NE(table.str().find("-"), std::string::npos);
  EXPECT_NE(kv.str().find("synthetic.PC\tabsent"), std::string::npos);
}

TEST(CompareSuite, RelativeImprovementReport) {
  ComparisonReport a, b;
  a.community_columns = b.community_columns = {Property::Vol};
  a.rows = {{"m", {{Property::Vol, 0.1}}}};
  b.rows = {{"m", {{Property::Vol, 0.4}}}};
  auto r = relative_improvement_report(a, b);
  EXPECT_DOUBLE_EQ(*r.rows[0].values.at(Property::Vol), 0.75);
}

#include <gtest/gtest.h>

#include <cstdlib>
#include <iostream>
#include <set>

#include "agm/comparator.hpp"
#include "agm/fitter.hpp"
#include "test_support.hpp"

using namespace agm;
using namespace agm::testing;

namespace {

// Planted AGM graph over overlapping communities with log-uniform sizes.
Dataset planted(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = 3000;
  std::vector<std::vector<NodeId>> comms;
  std::vector<NodeId> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  for (int c = 0; c < 150; ++c) {
    const auto size = static_cast<std::size_t>(std::exp(std::log(10.0) + std::log(20.0) * rng.uniform()));
    for (std::size_t i = 0; i < size; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
    comms.emplace_back(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
  }
  Dataset ds;
  ds.affiliations = AffiliationNetwork(n, comms);
  ds.graph = generate(ds.affiliations, assign_probs_power_law(ds.affiliations, 0.4, 1.0), seed);
  ds.labels.resize(n);
  std::iota(ds.labels.begin(), ds.labels.end(), Label{0});
  return ds;
}

std::map<Property, double> self_consistency(std::uint64_t seed) {
  auto real = planted(seed);
  auto r = fit(FitProblem::build(real.graph, real.affiliations));
  AgmParams fitted{r.p, 0.0};
  Dataset synth = real;
  synth.graph = generate(real.affiliations, fitted, seed + 1000);
  std::vector<Property> all(kCommunityProperties.begin(), kCommunityProperties.end());
  all.insert(all.end(), kNetworkProperties.begin(), kNetworkProperties.end());
  SuiteOptions opt;
  opt.seed = seed;
  auto report = compare_suite(real, synth, all, opt);
  std::map<Property, double> out;
  for (auto& [p, v] : report.rows[0].values)
    if (v) out[p] = *v;
  return out;
}

}  // namespace

// Frozen from pilot runs over seeds 1..20 (AGM_PILOT=1 prints them). Curves
// with thin tails (OO, AABB, PC, EP, CCF, Hop) occasionally reach 0.3-0.45 on
// one draw when a sparse end bin or one extra hop is present on only one
// side, so single-draw bounds apply to the smooth curves and the ensemble
// median to all of them.
TEST(SelfConsistency, FittedModelReproducesItsSource) {
  if (std::getenv("AGM_PILOT")) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      std::cout << "seed " << seed;
      for (auto& [p, v] : self_consistency(seed)) std::cout << ' ' << property_name(p) << '=' << v;
      std::cout << '\n';
    }
  }
  const std::set<Property> smooth{Property::Vol, Property::MID, Property::Deg,
                                  Property::TP,  Property::EigVal, Property::EigVec};
  std::map<Property, std::vector<double>> runs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto ks = self_consistency(seed);
    ASSERT_EQ(ks.size(), 12u);
    double sum = 0;
    for (auto& [p, v] : ks) {
      runs[p].push_back(v);
      sum += v;
      if (smooth.count(p)) EXPECT_LT(v, 0.15) << property_name(p) << " seed " << seed;
    }
    EXPECT_LT(sum / 12, 0.15) << "row average, seed " << seed;
  }
  for (auto& [p, v] : runs) {
    std::sort(v.begin(), v.end());
    EXPECT_LT(v[v.size() / 2], 0.15) << property_name(p) << " median";
  }
}

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "proxyshap/errors.hpp"
#include "proxyshap/sampling.hpp"

using namespace proxyshap;

namespace {

SamplerConfig config(SamplingScheme scheme, std::size_t budget, std::uint64_t seed = 1) {
  SamplerConfig c;
  c.scheme = scheme;
  c.budget = budget;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Sampling, LeverageProbabilities) {
  const auto c = config(SamplingScheme::leverage, 4);
  EXPECT_NEAR(std::exp(log_scheme_probability(c, 3, Coalition(3))), 0.25, 1e-15);
  EXPECT_NEAR(std::exp(log_scheme_probability(c, 3, Coalition::from_members(3, {1}))), 1.0 / 12.0, 1e-15);
}

TEST(Sampling, UniformProbabilities) {
  const auto c = config(SamplingScheme::uniform, 4);
  for (std::uint64_t m = 0; m < 4; ++m)
    EXPECT_NEAR(std::exp(log_scheme_probability(c, 2, Coalition::from_mask(2, m))), 0.25, 1e-15);
}

TEST(Sampling, SizeDistributionsSumToOne) {
  for (auto scheme : {SamplingScheme::leverage, SamplingScheme::uniform, SamplingScheme::proportional}) {
    for (std::size_t n = 2; n <= 40; n += 7) {
      auto c = config(scheme, 2);
      c.proportional_index = {IndexFamily::SII, 0.5, 2};
      c.proportional_order = 2;
      double total = 0.0;
      for (double lp : log_size_probabilities(c, n)) total += std::exp(lp);
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(Sampling, ExhaustiveBudgetReturnsThePowerSet) {
  for (auto scheme : {SamplingScheme::leverage, SamplingScheme::uniform}) {
    const auto draws = sample(config(scheme, 32), 5);
    std::set<Coalition> seen;
    for (const auto& d : draws) seen.insert(d.coalition);
    EXPECT_EQ(draws.size(), 32u);
    EXPECT_EQ(seen.size(), 32u);
  }
}

TEST(Sampling, BordersComeFirstAndDrawsAreDistinct) {
  const auto draws = sample(config(SamplingScheme::leverage, 200), 12);
  ASSERT_EQ(draws.size(), 200u);
  EXPECT_TRUE(draws[0].coalition.empty());
  EXPECT_EQ(draws[1].coalition.size(), 12u);
  std::set<Coalition> seen;
  for (const auto& d : draws) {
    EXPECT_TRUE(seen.insert(d.coalition).second);
    EXPECT_NEAR(d.log_probability, log_scheme_probability(config(SamplingScheme::leverage, 2), 12, d.coalition),
                1e-12);
  }
}

TEST(Sampling, SameSeedSameDraws) {
  const auto a = sample(config(SamplingScheme::leverage, 100, 9), 20);
  const auto b = sample(config(SamplingScheme::leverage, 100, 9), 20);
  const auto c = sample(config(SamplingScheme::leverage, 100, 10), 20);
  ASSERT_EQ(a.size(), b.size());
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].coalition, b[i].coalition);
    differs |= a[i].coalition != c[i].coalition;
  }
  EXPECT_TRUE(differs);
}

TEST(Sampling, LeverageSizeFrequenciesAreUniform) {
  const std::size_t n = 8, draws = 100000;
  auto c = config(SamplingScheme::leverage, draws, 3);
  c.without_replacement = false;
  c.include_borders = false;
  std::vector<double> counts(n + 1, 0.0);
  for (const auto& d : sample(c, n)) counts[d.coalition.size()] += 1.0;
  const double p = 1.0 / (n + 1);
  const double sd = std::sqrt(draws * p * (1 - p));
  for (double count : counts) EXPECT_LE(std::abs(count - draws * p), 3.0 * sd);
}

TEST(Sampling, WithinSizeDrawsAreUniform) {
  Rng rng(5);
  std::vector<double> hits(6, 0.0);
  const int reps = 60000;
  for (int i = 0; i < reps; ++i)
    for (auto j : random_subset(6, 2, rng).members()) hits[j] += 1.0;
  for (double h : hits) EXPECT_NEAR(h / reps, 2.0 / 6.0, 0.01);
}

TEST(Sampling, BudgetChecks) {
  EXPECT_THROW(sample(config(SamplingScheme::leverage, 33), 5), PreconditionError);
  EXPECT_THROW(sample(config(SamplingScheme::leverage, 1), 5), PreconditionError);
  auto c = config(SamplingScheme::proportional, 10);
  c.proportional_index = {IndexFamily::CHII, 0.5, 1};
  EXPECT_THROW(sample(c, 5), PreconditionError);
}

TEST(Sampling, ProportionalIsTheTargetAveragedWeight) {
  auto c = config(SamplingScheme::proportional, 2);
  c.proportional_index = {IndexFamily::SII, 0.5, 2};
  c.proportional_order = 2;
  const std::size_t n = 6;
  // Average of p^2_{|T\S|}/4 over all 15 pairs S, summed over the size class.
  for (std::size_t t = 0; t <= n; ++t) {
    double mass = 0.0;
    for (std::uint64_t m = 0; m < 64; ++m) {
      const auto T = Coalition::from_mask(n, m);
      if (T.size() != t) continue;
      double avg = 0.0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
          const auto S = Coalition::from_members(n, {a, b});
          avg += p_weight(c.proportional_index, n, 2, t - S.intersection_size(T)) / 4.0;
        }
      mass += avg / 15.0;
    }
    EXPECT_NEAR(std::exp(log_size_probabilities(c, n)[t]), mass, 1e-13);
  }
}

#include <gtest/gtest.h>

#include <cmath>

#include "proxyshap/errors.hpp"
#include "proxyshap/msr.hpp"
#include "support/oracles.hpp"

using namespace proxyshap;
using testing_support::Mask;

namespace {

SamplerConfig scheme(SamplingScheme s, const IndexSpec& index = {}, std::size_t order = 1) {
  SamplerConfig c;
  c.scheme = s;
  c.budget = 2;
  c.proportional_index = index;
  c.proportional_order = order;
  return c;
}

// Σ_T P(T) X_T and Σ_T P(T) X_T² for the single-draw estimate X_T.
std::pair<double, double> single_draw_moments(const Game& game, const IndexSpec& index, const Coalition& S,
                                              const SamplerConfig& sampler) {
  const std::size_t n = game.players();
  const std::vector<Coalition> targets{S};
  long double mean = 0.0L, second = 0.0L;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    const auto T = Coalition::from_mask(n, m);
    const double lp = variance_log_probability(sampler, index, n, S, T);
    if (lp == kNegInf) continue;  // never drawn
    const std::vector<EvaluatedSample> one{{T, lp, game.value(T)}};
    const double x = msr_estimate(one, index, targets).at(S);
    mean += std::exp(lp) * x;
    second += std::exp(lp) * x * x;
  }
  return {static_cast<double>(mean), static_cast<double>(second)};
}

}  // namespace

TEST(Msr, SingleSampleExample) {
  const std::vector<EvaluatedSample> one{{Coalition(2), std::log(1.0 / 3.0), 1.0}};
  const std::vector<Coalition> targets{Coalition::from_members(2, {0})};
  EXPECT_NEAR(msr_estimate(one, {IndexFamily::SII, 0.5, 1}, targets).at(targets[0]), -1.5, 1e-14);
}

TEST(Msr, ZeroGameGivesZero) {
  std::vector<EvaluatedSample> samples;
  for (Mask m = 0; m < 16; ++m) samples.push_back({Coalition::from_mask(4, m), std::log(1.0 / 16.0), 0.0});
  const auto targets = subsets_up_to_order(4, 2);
  for (const auto& e : msr_estimate(samples, {IndexFamily::SII, 0.5, 2}, targets).entries()) EXPECT_EQ(e.value, 0.0);
  EXPECT_EQ(variance_exact(ConstantGame(4, 0.0), {IndexFamily::SII, 0.5, 2}, targets[5],
                           scheme(SamplingScheme::leverage)),
            0.0);
}

TEST(Msr, InvalidInputsAreRejected) {
  const std::vector<Coalition> targets{Coalition::from_members(2, {0})};
  EXPECT_THROW(msr_estimate({}, {IndexFamily::SII, 0.5, 1}, targets), PreconditionError);
  const std::vector<EvaluatedSample> zero{{Coalition(2), kNegInf, 1.0}};
  EXPECT_THROW(msr_estimate(zero, {IndexFamily::SII, 0.5, 1}, targets), PreconditionError);
  const std::vector<EvaluatedSample> one{{Coalition(2), 0.0, 1.0}};
  EXPECT_THROW(msr_estimate(one, {IndexFamily::CHII, 0.5, 1}, targets), PreconditionError);
}

TEST(Msr, UnbiasedUnderEveryScheme) {
  const auto game = random_sparse_moebius(6, 15, 3, 12);
  for (auto family : {IndexFamily::SII, IndexFamily::BII, IndexFamily::Moebius}) {
    const IndexSpec index{family, family == IndexFamily::BII ? 0.3 : 0.5, 2};
    const auto targets = subsets_up_to_order(6, 2);
    const auto truth = exact_interactions(game, index, targets);
    for (auto s : {SamplingScheme::leverage, SamplingScheme::uniform, SamplingScheme::proportional}) {
      for (const auto& S : {targets[2], targets[9]}) {
        const auto [mean, second] = single_draw_moments(game, index, S, scheme(s, index, S.size()));
        EXPECT_NEAR(mean, truth.at(S), 1e-10) << to_string(family) << " " << to_string(s);
        const double variance = second - mean * mean;
        EXPECT_NEAR(variance_exact(game, index, S, scheme(s, index, S.size())), variance,
                    1e-9 * std::max(1.0, variance));
      }
    }
  }
}

TEST(Msr, ResidualGameKnowsOnlyItsSamples) {
  const std::vector<EvaluatedSample> samples{{Coalition::from_mask(2, 1), -1.0, 3.0},
                                             {Coalition::from_mask(2, 3), -1.0, 5.0}};
  const auto r = ResidualGame::from_samples(2, samples, [](const Coalition& c) { return double(c.size()); });
  EXPECT_EQ(r.value(Coalition::from_mask(2, 1)), 2.0);
  EXPECT_EQ(r.value(Coalition::from_mask(2, 3)), 3.0);
  EXPECT_THROW(r.value(Coalition::from_mask(2, 2)), MissingCoalitionError);
}

TEST(Gamma, BanzhafLeverageExample) {
  const IndexSpec bii{IndexFamily::BII, 0.5, 1};
  const auto leverage = scheme(SamplingScheme::leverage);
  EXPECT_NEAR(gamma_brute(bii, 4, 1, leverage), 5.46875, 1e-12);
  EXPECT_NEAR(*gamma_closed(bii, 4, 1, leverage), 5.46875, 1e-15);
}

TEST(Gamma, ClosedFormsMatchTheBruteSum) {
  for (std::size_t n = 2; n <= 16; ++n) {
    const IndexSpec bii{IndexFamily::BII, 0.5, 3};
    const IndexSpec sii{IndexFamily::SII, 0.5, 3};
    for (std::size_t s = 1; s <= std::min<std::size_t>(3, n); ++s) {
      const auto leverage = scheme(SamplingScheme::leverage);
      EXPECT_NEAR(gamma_brute(bii, n, s, leverage) / *gamma_closed(bii, n, s, leverage), 1.0, 1e-12);
      for (const auto& index : {bii, sii}) {
        const auto proportional = scheme(SamplingScheme::proportional, index, s);
        EXPECT_NEAR(gamma_brute(index, n, s, proportional), std::pow(4.0, s), 1e-9 * std::pow(4.0, s));
        EXPECT_EQ(*gamma_closed(index, n, s, proportional), std::pow(4.0, s));
      }
    }
    const auto leverage = scheme(SamplingScheme::leverage);
    EXPECT_NEAR(gamma_brute(sii, n, 1, leverage) / *gamma_closed(sii, n, 1, leverage), 1.0, 1e-12);
    EXPECT_FALSE(gamma_closed(sii, n, 2, scheme(SamplingScheme::uniform)).has_value());
  }
}

TEST(Gamma, EqualsTheVarianceOfTheConstantGame) {
  // For ν ≡ 1 every discrete derivative of order ≥ 1 vanishes, so V = Γ.
  const IndexSpec sii{IndexFamily::SII, 0.5, 2};
  const auto leverage = scheme(SamplingScheme::leverage);
  const auto S = Coalition::from_members(9, {2, 5});
  EXPECT_NEAR(variance_exact(ConstantGame(9, 1.0), sii, S, leverage) / gamma_brute(sii, 9, 2, leverage), 1.0,
              1e-12);
}

TEST(ShouldAdjust, RuleExamples) {
  EXPECT_TRUE(should_adjust(20, 3, 100));
  EXPECT_TRUE(should_adjust(60, 2, 10000));
  EXPECT_FALSE(should_adjust(60, 3, 10000));
  EXPECT_FALSE(should_adjust(40, 3, 5000));
  EXPECT_TRUE(should_adjust(40, 1, 10));
}

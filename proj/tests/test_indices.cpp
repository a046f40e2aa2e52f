#include <gtest/gtest.h>

#include "proxyshap/errors.hpp"
#include "proxyshap/indices.hpp"
#include "proxyshap/numeric.hpp"
#include "support/oracles.hpp"

using namespace proxyshap;

TEST(Indices, PWeightExamples) {
  const IndexSpec sii{IndexFamily::SII, 0.5, 1};
  EXPECT_NEAR(p_weight(sii, 3, 1, 1), 1.0 / 6.0, 1e-15);
  const IndexSpec bii{IndexFamily::BII, 0.5, 2};
  for (std::size_t t = 0; t <= 3; ++t) EXPECT_NEAR(p_weight(bii, 5, 2, t), 1.0 / 8.0, 1e-15);
  const IndexSpec moebius{IndexFamily::Moebius, 0.5, 3};
  EXPECT_EQ(p_weight(moebius, 7, 2, 0), 1.0);
  EXPECT_EQ(p_weight(moebius, 7, 2, 1), 0.0);
  EXPECT_EQ(log_p_weight(moebius, 7, 2, 1), kNegInf);
}

TEST(Indices, PWeightsMatchTheRationalTable) {
  for (int n = 1; n <= 20; ++n)
    for (int s = 1; s <= n; ++s)
      for (int t = 0; t <= n - s; ++t) {
        const IndexSpec sii{IndexFamily::SII, 0.5, 1};
        EXPECT_NEAR(p_weight(sii, n, s, t), testing_support::reference_p(IndexFamily::SII, n, s, t),
                    1e-13 * testing_support::reference_p(IndexFamily::SII, n, s, t));
        const IndexSpec bii{IndexFamily::BII, 0.3, 1};
        const double ref = testing_support::reference_p(IndexFamily::BII, n, s, t, 0.3);
        EXPECT_NEAR(p_weight(bii, n, s, t), ref, 1e-13 * ref);
      }
}

TEST(Indices, WeightsFormDistributions) {
  for (std::size_t n = 1; n <= 60; ++n)
    for (std::size_t s = 1; s <= n; ++s)
      for (auto family : {IndexFamily::SII, IndexFamily::BII}) {
        const IndexSpec index{family, 0.5, 1};
        CompensatedSum total;
        for (std::size_t t = 0; t + s <= n; ++t) total.add(binomial(n - s, t) * p_weight(index, n, s, t));
        EXPECT_NEAR(total.value(), 1.0, 1e-12) << to_string(family) << " n=" << n << " s=" << s;
      }
}

TEST(Indices, QWeightExamples) {
  EXPECT_EQ(q_weight({IndexFamily::SII, 0.5, 3}, 9, 3, 3), 1.0);
  EXPECT_NEAR(q_weight({IndexFamily::BII, 0.5, 1}, 9, 1, 3), 0.25, 1e-15);
  EXPECT_NEAR(q_weight({IndexFamily::CHII, 0.5, 2}, 9, 2, 4), 0.5, 1e-15);
  EXPECT_THROW(q_weight({IndexFamily::SII, 0.5, 1}, 9, 3, 2), PreconditionError);
  EXPECT_THROW(q_weight({IndexFamily::FSII, 0.5, 2}, 9, 3, 4), PreconditionError);
}

TEST(Indices, FaithfulQWeightsMatchTheReferenceRows) {
  for (auto family : {IndexFamily::FSII, IndexFamily::FBII})
    for (std::size_t k = 1; k <= 4; ++k)
      for (std::size_t s = 1; s <= k; ++s)
        for (std::size_t t = s; t <= 30; ++t) {
          const double ref = testing_support::reference_q(family, static_cast<int>(s), static_cast<int>(t),
                                                          static_cast<int>(k));
          EXPECT_NEAR(q_weight({family, 0.5, k}, 30, s, t), ref, 1e-13 * std::max(1.0, std::abs(ref)));
        }
}

TEST(Indices, SingletonReductionToValues) {
  for (std::size_t n = 1; n <= 15; ++n)
    for (std::size_t t = 0; t < n; ++t) {
      EXPECT_EQ(p_weight({IndexFamily::SV, 0.5, 1}, n, 1, t), p_weight({IndexFamily::SII, 0.5, 1}, n, 1, t));
      EXPECT_EQ(p_weight({IndexFamily::BV, 0.4, 1}, n, 1, t), p_weight({IndexFamily::BII, 0.4, 1}, n, 1, t));
    }
}

TEST(Indices, ValidationRules) {
  EXPECT_THROW((IndexSpec{IndexFamily::BII, 1.0, 1}).validate(), PreconditionError);
  EXPECT_THROW((IndexSpec{IndexFamily::SII, 0.5, 0}).validate(), PreconditionError);
  EXPECT_THROW(validate_target_order({IndexFamily::SV, 0.5, 1}, 5, 2), PreconditionError);
  EXPECT_THROW(validate_target_order({IndexFamily::FSII, 0.5, 2}, 5, 3), PreconditionError);
  EXPECT_THROW(validate_target_order({IndexFamily::SII, 0.5, 2}, 5, 0), PreconditionError);
  EXPECT_NO_THROW(validate_target_order({IndexFamily::SII, 0.5, 2}, 5, 3));
  EXPECT_FALSE(has_p_weights({IndexFamily::CHII, 0.5, 1}));
  EXPECT_FALSE(has_p_weights({IndexFamily::FBII, 0.5, 1}));
  EXPECT_TRUE(has_p_weights({IndexFamily::Moebius, 0.5, 1}));
  EXPECT_EQ(parse_family("fsii"), IndexFamily::FSII);
  EXPECT_THROW(parse_family("shap"), PreconditionError);
}

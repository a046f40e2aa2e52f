#include <gtest/gtest.h>

#include <memory>
#include <set>

#include "proxyshap/coalition.hpp"
#include "proxyshap/errors.hpp"
#include "proxyshap/game.hpp"
#include "proxyshap/numeric.hpp"
#include "support/oracles.hpp"

using namespace proxyshap;
using testing_support::Mask;

namespace {

Coalition C(std::string_view bits) { return Coalition::parse(bits); }

}  // namespace

TEST(Coalition, ParseAndPrintRoundTrip) {
  const auto c = C("01101");
  EXPECT_EQ(c.width(), 5u);
  EXPECT_EQ(c.size(), 3u);
  EXPECT_TRUE(c.contains(1));
  EXPECT_FALSE(c.contains(0));
  EXPECT_EQ(c.to_string(), "01101");
  EXPECT_THROW(Coalition::parse("01x"), ParseError);
}

TEST(Coalition, SetOperationsStayWithinWidth) {
  for (std::size_t n : {1u, 63u, 64u, 65u, 130u}) {
    Coalition a(n);
    a.insert(0);
    a.insert(n - 1);
    const auto comp = a.complement();
    EXPECT_EQ(comp.size(), n - a.size());
    EXPECT_EQ((a | comp).size(), n);
    EXPECT_TRUE((a & comp).empty());
    EXPECT_EQ((Coalition::full(n) - a), comp);
    EXPECT_EQ(comp.complement(), a);
    EXPECT_EQ(Coalition::full(n).size(), n);
  }
}

TEST(Coalition, WidthMismatchIsRejected) {
  EXPECT_THROW((void)(Coalition(3) | Coalition(4)), PreconditionError);
  EXPECT_THROW(Coalition(3).insert(3), PreconditionError);
}

TEST(Coalition, SubsetEnumerationCountsMatchBinomials) {
  const auto subsets = subsets_up_to_order(7, 3);
  EXPECT_EQ(subsets.size(), 7u + 21u + 35u);
  std::set<Coalition> unique(subsets.begin(), subsets.end());
  EXPECT_EQ(unique.size(), subsets.size());
  for (std::size_t i = 1; i < subsets.size(); ++i) EXPECT_LE(subsets[i - 1].size(), subsets[i].size());
}

TEST(Numeric, BinomialsAndLogSpace) {
  EXPECT_DOUBLE_EQ(binomial(10, 3), 120.0);
  EXPECT_DOUBLE_EQ(binomial(60, 30), 118264581564861424.0);
  EXPECT_EQ(binomial(3, 5), 0.0);
  EXPECT_NEAR(std::exp(log_binomial(50, 20)), binomial(50, 20), 1e-12 * binomial(50, 20));
  EXPECT_NEAR(beta_function(2.0, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(harmonic_number(4), 25.0 / 12.0, 1e-15);
}

TEST(Numeric, CompensatedSumRecoversSmallTerms) {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), 1000.0);
}

TEST(Numeric, RngIsDeterministicAndBounded) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.uniform_below(7);
    EXPECT_EQ(x, b.uniform_below(7));
    EXPECT_LT(x, 7u);
    const double u = a.uniform01();
    EXPECT_EQ(u, b.uniform01());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Game, EvaluateExamples) {
  EXPECT_EQ(evaluate(ConstantGame(3, 3.5), Coalition(3)), 3.5);
  const UnanimityGame u(C("110"));
  EXPECT_EQ(evaluate(u, C("100")), 0.0);
  EXPECT_EQ(evaluate(u, C("110")), 1.0);
  const MoebiusGame m(2, {{C("10"), 2.0}, {C("11"), -1.0}});
  EXPECT_EQ(evaluate(m, C("11")), 1.0);
  EXPECT_THROW(evaluate(m, C("111")), PreconditionError);
}

TEST(Game, TableGameRefusesUnrecordedCoalitions) {
  TableGame::Table table{{C("00"), 1.0}, {C("11"), 2.0}};
  const TableGame g(2, table);
  EXPECT_EQ(evaluate(g, C("11")), 2.0);
  EXPECT_THROW(evaluate(g, C("10")), MissingCoalitionError);
}

TEST(Game, DiscreteDerivativeExamples) {
  const UnanimityGame u(C("110"));
  EXPECT_EQ(discrete_derivative(u, Coalition(3), C("110")), 1.0);
  EXPECT_EQ(discrete_derivative(u, C("110"), Coalition(3)), 1.0);
  const MoebiusGame m(3, {{C("110"), -1.0}});
  EXPECT_EQ(discrete_derivative(m, C("110"), C("001")), -1.0);
  EXPECT_THROW(discrete_derivative(m, C("110"), C("010")), PreconditionError);
}

TEST(Game, MoebiusTransformExamplesAndRoundTrip) {
  const auto constant = moebius_transform(ConstantGame(4, 2.5));
  ASSERT_EQ(constant.coefficients().size(), 1u);
  EXPECT_EQ(constant.coefficient(Coalition(4)), 2.5);

  const auto unanimity = moebius_transform(UnanimityGame(C("0110")));
  ASSERT_EQ(unanimity.coefficients().size(), 1u);
  EXPECT_EQ(unanimity.coefficient(C("0110")), 1.0);

  const auto game = random_sparse_moebius(9, 20, 4, 5, 100.0);
  const auto back = moebius_transform(game);
  for (const auto& [S, m] : game.coefficients()) EXPECT_NEAR(back.coefficient(S), m, 1e-10);
  for (Mask mask = 0; mask < 512; ++mask) {
    const auto T = Coalition::from_mask(9, mask);
    EXPECT_NEAR(back.value(T), game.value(T), 1e-10);
  }
  EXPECT_THROW(moebius_transform(ConstantGame(21, 1.0)), CapacityError);
}

TEST(Game, ExactInteractionExamples) {
  const UnanimityGame u(C("11"));
  const std::vector<Coalition> pair{C("11")};
  const std::vector<Coalition> single{C("10")};
  EXPECT_NEAR(exact_interactions(u, {IndexFamily::SII, 0.5, 2}, pair).at(C("11")), 1.0, 1e-15);
  EXPECT_NEAR(exact_interactions(u, {IndexFamily::BII, 0.5, 2}, single).at(C("10")), 0.5, 1e-15);

  const ConstantGame c(5, 7.0);
  for (auto family : {IndexFamily::SII, IndexFamily::BII, IndexFamily::CHII, IndexFamily::Moebius,
                      IndexFamily::FSII, IndexFamily::FBII}) {
    const IndexSpec index{family, 0.5, 2};
    const auto targets = subsets_up_to_order(5, 2);
    for (const auto& e : exact_interactions(c, index, targets).entries()) EXPECT_NEAR(e.value, 0.0, 1e-12);
  }
}

TEST(Game, ExactRouteMatchesIndependentOracle) {
  const auto game = random_sparse_moebius(8, 25, 4, 11);
  const auto values = testing_support::value_table(game);
  for (auto family : {IndexFamily::SV, IndexFamily::SII, IndexFamily::BV, IndexFamily::BII, IndexFamily::Moebius,
                      IndexFamily::CHII, IndexFamily::FSII, IndexFamily::FBII}) {
    for (std::size_t k : {1u, 2u, 3u}) {
      if (is_value_family(family) && k > 1) continue;
      const IndexSpec index{family, 0.5, k};
      const auto targets = subsets_up_to_order(8, k);
      std::vector<Mask> masks;
      for (const auto& t : targets) masks.push_back(t.to_mask());
      const auto expected = testing_support::reference_indices(values, 8, masks, index);
      const auto dense = exact_interactions(LinearCombinationGame(8, {{1.0, std::make_shared<MoebiusGame>(game)}}),
                                            index, targets);
      for (std::size_t i = 0; i < targets.size(); ++i)
        EXPECT_TRUE(testing_support::close(dense.entries()[i].value, expected[i], 1e-9))
            << to_string(family) << " k=" << k << " " << targets[i].to_string();
    }
  }
}

TEST(Game, DummyPlayerGetsZero) {
  // Player 5 never appears in a Möbius term.
  const auto narrow = random_sparse_moebius(5, 12, 3, 3);
  MoebiusGame::Coefficients coefficients;
  for (const auto& [S, m] : narrow.coefficients()) {
    Coalition wide(6);
    for (auto j : S.members()) wide.insert(j);
    coefficients.emplace(wide, m);
  }
  const MoebiusGame game(6, coefficients);
  for (auto family : {IndexFamily::SII, IndexFamily::BII, IndexFamily::CHII, IndexFamily::FSII}) {
    const IndexSpec index{family, 0.5, 2};
    const auto targets = subsets_up_to_order(6, 2);
    const auto result = exact_interactions(game, index, targets, ExactRoute::moebius_brute);
    for (const auto& e : result.entries())
      if (e.subset.contains(5)) {
        EXPECT_NEAR(e.value, 0.0, 1e-12);
      }
  }
}

TEST(Game, LinearityOfExactInteractions) {
  auto g1 = std::make_shared<MoebiusGame>(random_sparse_moebius(7, 10, 3, 1));
  auto g2 = std::make_shared<MoebiusGame>(random_sparse_moebius(7, 10, 3, 2));
  const LinearCombinationGame mix(7, {{2.0, g1}, {-0.5, g2}});
  const IndexSpec index{IndexFamily::SII, 0.5, 3};
  const auto targets = subsets_up_to_order(7, 3);
  const auto a = exact_interactions(*g1, index, targets, ExactRoute::enumeration);
  const auto b = exact_interactions(*g2, index, targets, ExactRoute::enumeration);
  const auto c = exact_interactions(mix, index, targets, ExactRoute::enumeration);
  for (std::size_t i = 0; i < targets.size(); ++i)
    EXPECT_NEAR(c.entries()[i].value, 2.0 * a.entries()[i].value - 0.5 * b.entries()[i].value, 1e-10);
}

TEST(Game, EnumerationAndMoebiusRoutesAgree) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const std::size_t n = 9 + seed;
    // A dense random table, not only sparse Möbius games.
    Rng rng(seed);
    TableGame::Table table;
    for (Mask m = 0; m < (Mask{1} << n); ++m) table[Coalition::from_mask(n, m)] = 2.0 * rng.uniform01() - 1.0;
    const TableGame game(n, table);
    for (auto family : {IndexFamily::SII, IndexFamily::BII, IndexFamily::Moebius}) {
      const IndexSpec index{family, family == IndexFamily::BII ? 0.3 : 0.5, 2};
      const auto targets = subsets_up_to_order(n, 2);
      const auto e2 = exact_interactions(game, index, targets, ExactRoute::enumeration);
      const auto e3 = exact_interactions(game, index, targets, ExactRoute::moebius_brute);
      for (std::size_t i = 0; i < targets.size(); ++i)
        EXPECT_TRUE(testing_support::close(e2.entries()[i].value, e3.entries()[i].value, 1e-9));
    }
  }
}

TEST(Game, ExactInteractionsRespectTheCap) {
  const ConstantGame big(22, 1.0);
  const std::vector<Coalition> t{Coalition::from_members(22, {0})};
  EXPECT_THROW(exact_interactions(big, {IndexFamily::SV, 0.5, 1}, t), CapacityError);
}

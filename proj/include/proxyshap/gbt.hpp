#ifndef PROXYSHAP_GBT_HPP
#define PROXYSHAP_GBT_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "proxyshap/game.hpp"
#include "proxyshap/trees.hpp"

namespace proxyshap {

/// Squared-error gradient boosting on binary coalition features.
struct GbtConfig {
  std::size_t n_estimators = 100;
  std::size_t max_depth = 6;
  double learning_rate = 0.3;
  double reg_lambda = 1.0;
  double min_child_weight = 1.0;
  double subsample = 1.0;
  double colsample = 1.0;
  std::uint64_t seed = 0;

  /// "default" = (100, 6, 0.3, 1); "hpo-informed" = (2000, 3, 0.05, 5).
  /// Sampling rates and min_child_weight keep their defaults in both.
  static GbtConfig preset(std::string_view name);
  void validate() const;
  std::string describe() const;
};

struct GbtTrainingReport {
  /// Training MSE after each boosting round.
  std::vector<double> mse_per_round;
  double initial_mse = 0.0;
  double final_mse() const { return mse_per_round.empty() ? initial_mse : mse_per_round.back(); }
};

/// Fits base_score = mean target, then one depth-limited tree per round on the
/// current residuals. Leaf values are learning_rate·ΣG/(count + reg_lambda);
/// split ties go to the lowest feature index.
TreeEnsemble fit_gbt(std::span<const LabeledCoalition> data, const GbtConfig& config,
                     GbtTrainingReport* report = nullptr);

}  // namespace proxyshap

#endif  // PROXYSHAP_GBT_HPP

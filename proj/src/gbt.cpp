#include "proxyshap/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "proxyshap/errors.hpp"
#include "proxyshap/numeric.hpp"

namespace proxyshap {

GbtConfig GbtConfig::preset(std::string_view name) {
  GbtConfig c;
  if (name == "default") return c;
  if (name == "hpo-informed") {
    c.n_estimators = 2000;
    c.max_depth = 3;
    c.learning_rate = 0.05;
    c.reg_lambda = 5.0;
    return c;
  }
  throw PreconditionError("unknown proxy preset '" + std::string(name) +
                          "' (expected default or hpo-informed)");
}

void GbtConfig::validate() const {
  if (n_estimators < 1) throw PreconditionError("n_estimators must be at least 1");
  if (max_depth < 1) throw PreconditionError("max_depth must be at least 1");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0))
    throw PreconditionError("learning_rate must lie in (0, 1]");
  if (!(reg_lambda >= 0.0)) throw PreconditionError("reg_lambda must be non-negative");
  if (!(min_child_weight >= 0.0)) throw PreconditionError("min_child_weight must be non-negative");
  if (!(subsample > 0.0 && subsample <= 1.0)) throw PreconditionError("subsample must lie in (0, 1]");
  if (!(colsample > 0.0 && colsample <= 1.0)) throw PreconditionError("colsample must lie in (0, 1]");
}

std::string GbtConfig::describe() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "n_estimators=%zu max_depth=%zu learning_rate=%.17g reg_lambda=%.17g "
                "min_child_weight=%.17g subsample=%.17g colsample=%.17g",
                n_estimators, max_depth, learning_rate, reg_lambda, min_child_weight, subsample,
                colsample);
  return buf;
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<std::vector<std::uint8_t>>& columns, const std::vector<double>& residual,
              const GbtConfig& config, const std::vector<std::size_t>& features)
      : columns_(columns), residual_(residual), config_(config), features_(features) {}

  std::vector<TreeNode> build(std::vector<std::size_t> rows) {
    nodes_.clear();
    grow(rows, 0);
    return std::move(nodes_);
  }

 private:
  struct Split {
    int feature = -1;
    double gain = 0.0;
  };

  int grow(std::vector<std::size_t>& rows, std::size_t depth) {
    const int here = static_cast<int>(nodes_.size());
    nodes_.emplace_back();

    CompensatedSum g_sum;
    double squares = 0.0;
    for (auto r : rows) {
      g_sum.add(residual_[r]);
      squares += residual_[r] * residual_[r];
    }
    const double g = g_sum.value();
    const double count = static_cast<double>(rows.size());

    Split best;
    if (depth < config_.max_depth && rows.size() >= 2) best = find_split(rows, g, count, squares);

    if (best.feature < 0) {
      nodes_[static_cast<std::size_t>(here)].leaf_value =
          config_.learning_rate * g / (count + config_.reg_lambda);
      return here;
    }

    const auto& column = columns_[static_cast<std::size_t>(best.feature)];
    std::vector<std::size_t> left, right;
    for (auto r : rows) (column[r] ? right : left).push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    const int l = grow(left, depth + 1);
    const int rr = grow(right, depth + 1);
    TreeNode& node = nodes_[static_cast<std::size_t>(here)];
    node.feature = best.feature;
    node.left = l;
    node.right = rr;
    return here;
  }

  Split find_split(const std::vector<std::size_t>& rows, double g, double count, double squares) const {
    const double lambda = config_.reg_lambda;
    const double min_child = std::max(1.0, config_.min_child_weight);
    const double parent = g * g / (count + lambda);
    Split best;
    for (auto j : features_) {
      const auto& column = columns_[j];
      CompensatedSum g_right;
      std::size_t n_right = 0;
      for (auto r : rows) {
        if (column[r]) {
          g_right.add(residual_[r]);
          ++n_right;
        }
      }
      const double cr = static_cast<double>(n_right);
      const double cl = count - cr;
      if (cr < min_child || cl < min_child) continue;
      const double gr = g_right.value();
      const double gl = g - gr;
      const double gain = gl * gl / (cl + lambda) + gr * gr / (cr + lambda) - parent;
      if (gain > best.gain) best = {static_cast<int>(j), gain};
    }
    // Splits that only shuffle rounding noise are not worth a node.
    if (best.feature >= 0 && !(best.gain > 1e-12 * squares)) best.feature = -1;
    return best;
  }

  const std::vector<std::vector<std::uint8_t>>& columns_;
  const std::vector<double>& residual_;
  const GbtConfig& config_;
  const std::vector<std::size_t>& features_;
  std::vector<TreeNode> nodes_;
};

void partial_shuffle(std::vector<std::size_t>& items, std::size_t take, Rng& rng) {
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(items.size() - i));
    std::swap(items[i], items[j]);
  }
  items.resize(take);
  std::sort(items.begin(), items.end());
}

}  // namespace

TreeEnsemble fit_gbt(std::span<const LabeledCoalition> data, const GbtConfig& config,
                     GbtTrainingReport* report) {
  config.validate();
  if (data.empty()) throw PreconditionError("fit_gbt needs at least one training row");
  const std::size_t n = data.front().coalition.width();
  const std::size_t m = data.size();
  for (const auto& row : data)
    if (row.coalition.width() != n) throw PreconditionError("training coalitions differ in width");

  std::vector<std::vector<std::uint8_t>> columns(n, std::vector<std::uint8_t>(m, 0));
  for (std::size_t r = 0; r < m; ++r)
    for (auto j : data[r].coalition.members()) columns[j][r] = 1;

  CompensatedSum mean_sum;
  for (const auto& row : data) mean_sum.add(row.value);
  TreeEnsemble ensemble;
  ensemble.n = n;
  ensemble.base_score = mean_sum.value() / static_cast<double>(m);

  std::vector<double> prediction(m, ensemble.base_score);
  std::vector<double> residual(m);
  auto update_residuals = [&] {
    double sse = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      residual[r] = data[r].value - prediction[r];
      sse += residual[r] * residual[r];
    }
    return sse / static_cast<double>(m);
  };
  const double initial = update_residuals();
  if (report) {
    report->mse_per_round.clear();
    report->initial_mse = initial;
  }

  Rng rng(config.seed);
  const std::size_t row_take =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(config.subsample * static_cast<double>(m))));
  const std::size_t col_take =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(config.colsample * static_cast<double>(n))));

  for (std::size_t round = 0; round < config.n_estimators; ++round) {
    std::vector<std::size_t> rows(m);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    if (row_take < m) partial_shuffle(rows, row_take, rng);
    std::vector<std::size_t> features(n);
    std::iota(features.begin(), features.end(), std::size_t{0});
    if (n > 0 && col_take < n) partial_shuffle(features, col_take, rng);

    TreeBuilder builder(columns, residual, config, features);
    Tree tree = Tree::from_nodes(builder.build(std::move(rows)), n);
    for (std::size_t r = 0; r < m; ++r) prediction[r] += tree.predict_nodes(data[r].coalition);
    ensemble.trees.push_back(std::move(tree));

    const double mse = update_residuals();
    if (report) report->mse_per_round.push_back(mse);
  }
  return ensemble;
}

}  // namespace proxyshap

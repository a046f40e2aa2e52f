#include "proxyshap/interventional.hpp"

#include "proxyshap/errors.hpp"
#include "proxyshap/numeric.hpp"

namespace proxyshap {

InterventionalGame::InterventionalGame(std::shared_ptr<const TreeEnsemble> model,
                                       std::vector<double> explained,
                                       std::vector<std::vector<double>> background)
    : Game(model ? model->n : 0),
      model_(std::move(model)),
      explained_(std::move(explained)),
      background_(std::move(background)) {
  if (!model_) throw PreconditionError("interventional game needs a model");
  const std::size_t n = model_->n;
  if (explained_.size() != n)
    throw PreconditionError("explained point has " + std::to_string(explained_.size()) +
                            " features, model expects " + std::to_string(n));
  if (background_.empty()) throw PreconditionError("background set is empty");
  for (const auto& row : background_)
    if (row.size() != n) throw PreconditionError("background row width does not match the model");
  for (const auto& tree : model_->trees)
    if (!tree.has_nodes()) throw PreconditionError("interventional game needs node-form trees");
}

double InterventionalGame::value(const Coalition& coalition) const {
  std::vector<double> z(explained_.size());
  CompensatedSum sum;
  for (const auto& row : background_) {
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = coalition.contains(j) ? explained_[j] : row[j];
    sum.add(predict_features(*model_, z));
  }
  return sum.value() / static_cast<double>(background_.size());
}

TreeEnsemble InterventionalGame::coalition_ensemble() const {
  const std::size_t n = players();
  const double scale = 1.0 / static_cast<double>(background_.size());
  TreeEnsemble out;
  out.n = n;
  out.base_score = model_->base_score;

  for (const auto& tree : model_->trees) {
    const auto& nodes = tree.nodes();
    std::vector<Leaf> leaves;
    for (const auto& b : background_) {
      Coalition left(n), right(n);
      auto walk = [&](auto&& self, int index) -> void {
        const TreeNode& node = nodes[static_cast<std::size_t>(index)];
        if (node.is_leaf()) {
          leaves.push_back({left, right, scale * node.leaf_value});
          return;
        }
        const std::size_t j = static_cast<std::size_t>(node.feature);
        const int x_child = explained_[j] < node.threshold ? node.left : node.right;
        const int b_child = b[j] < node.threshold ? node.left : node.right;
        if (x_child == b_child || right.contains(j)) return self(self, x_child);
        if (left.contains(j)) return self(self, b_child);
        right.insert(j);
        self(self, x_child);
        right.erase(j);
        left.insert(j);
        self(self, b_child);
        left.erase(j);
      };
      walk(walk, 0);
    }
    out.trees.push_back(Tree::from_leaves(std::move(leaves)));
  }
  return out;
}

}  // namespace proxyshap

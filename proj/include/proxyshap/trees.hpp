#ifndef PROXYSHAP_TREES_HPP
#define PROXYSHAP_TREES_HPP

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "proxyshap/coalition.hpp"
#include "proxyshap/game.hpp"

namespace proxyshap {

/// One root-to-leaf path in leaf-path form: a coalition T reaches the leaf
/// iff right ⊆ T ⊆ N \ left.
struct Leaf {
  Coalition left;
  Coalition right;
  double value = 0.0;

  bool reaches(const Coalition& coalition) const {
    return right.is_subset_of(coalition) && !left.intersects(coalition);
  }
};

/// Node of the interchange representation. A node with feature < 0 is a
/// leaf. Inputs with x[feature] < threshold go left.
struct TreeNode {
  int feature = -1;
  double threshold = 0.5;
  int left = -1;
  int right = -1;
  double leaf_value = 0.0;

  bool is_leaf() const { return feature < 0; }
};

struct FlattenReport {
  std::size_t leaves = 0;
  /// Leaves whose path constraints contradict each other (dropped).
  std::size_t unreachable = 0;
};

class Tree {
 public:
  /// Leaf-path form only; the node form is unavailable for such trees.
  static Tree from_leaves(std::vector<Leaf> leaves);
  /// Flattens nodes over n binary features. Throws ParseError on malformed
  /// structure (dangling children, cycles, feature >= n).
  static Tree from_nodes(std::vector<TreeNode> nodes, std::size_t n, FlattenReport* report = nullptr);

  const std::vector<Leaf>& leaves() const { return leaves_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  bool has_nodes() const { return !nodes_.empty(); }

  /// Σ_j c_j 1[R_j ⊆ T ⊆ N \ L_j].
  double predict(const Coalition& coalition) const;
  /// Walks the node form with x_j = 1[j ∈ T].
  double predict_nodes(const Coalition& coalition) const;
  /// Walks the node form on real-valued features.
  double predict_features(std::span<const double> x) const;

 private:
  std::vector<Leaf> leaves_;
  std::vector<TreeNode> nodes_;
};

/// Additive tree model over n features: predict = base_score + Σ trees.
struct TreeEnsemble {
  std::size_t n = 0;
  double base_score = 0.0;
  std::vector<Tree> trees;

  std::size_t leaf_count() const;
  std::size_t max_leaf_depth() const;
};

double predict(const TreeEnsemble& ensemble, const Coalition& coalition);
double predict_features(const TreeEnsemble& ensemble, std::span<const double> x);

/// Interchange JSON:
///   {"n": int, "base_score": float,
///    "trees": [{"nodes": [{"feature": j, "left": a, "right": b[, "threshold": t]}
///                         | {"leaf": v}]}]}
/// Node 0 is the root; `left` = feature absent, `right` = feature present.
TreeEnsemble parse_ensemble(std::string_view json_text, FlattenReport* report = nullptr);
TreeEnsemble load_ensemble(const std::filesystem::path& path, FlattenReport* report = nullptr);
/// Requires every tree to carry its node form.
std::string serialize_ensemble(const TreeEnsemble& ensemble);

/// ν(T) = predict(ensemble, T) over binary coalition features.
class TreeGame final : public Game {
 public:
  explicit TreeGame(std::shared_ptr<const TreeEnsemble> ensemble);
  GameKind kind() const override { return GameKind::tree; }
  double value(const Coalition& coalition) const override;
  const TreeEnsemble& ensemble() const { return *ensemble_; }

 private:
  std::shared_ptr<const TreeEnsemble> ensemble_;
};

/// One chain tree per non-zero Möbius term: the ensemble reproduces the game
/// exactly on every coalition.
TreeEnsemble ensemble_from_moebius(const MoebiusGame& game);

/// A single complete tree of depth n splitting on players 0..n-1 in order;
/// reproduces any game exactly. Requires n within the enumeration cap.
TreeEnsemble ensemble_from_game(const Game& game, std::size_t cap = kDefaultEnumerationCap);

}  // namespace proxyshap

#endif  // PROXYSHAP_TREES_HPP

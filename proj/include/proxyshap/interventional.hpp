#ifndef PROXYSHAP_INTERVENTIONAL_HPP
#define PROXYSHAP_INTERVENTIONAL_HPP

#include <cstddef>
#include <memory>
#include <vector>

#include "proxyshap/game.hpp"
#include "proxyshap/trees.hpp"

namespace proxyshap {

inline constexpr std::size_t kDefaultBackgroundSize = 50;

/// Explains one point of a real-valued tree model against a background set:
/// ν(S) = (1/|B|) Σ_i f(z_i), z_i[j] = x[j] for j ∈ S and b_i[j] otherwise.
class InterventionalGame final : public Game {
 public:
  InterventionalGame(std::shared_ptr<const TreeEnsemble> model, std::vector<double> explained,
                     std::vector<std::vector<double>> background);

  GameKind kind() const override { return GameKind::interventional_tree; }
  double value(const Coalition& coalition) const override;

  const TreeEnsemble& model() const { return *model_; }
  const std::vector<double>& explained() const { return explained_; }
  const std::vector<std::vector<double>>& background() const { return background_; }

  /// The same game written as a leaf-path ensemble over coalitions, so tree
  /// extraction applies to it. For each tree and background row, a split
  /// where x and b disagree forks into "j ∈ S" (follow x) and "j ∉ S"
  /// (follow b); agreeing splits add no constraint. Leaf values carry the
  /// 1/|B| factor.
  TreeEnsemble coalition_ensemble() const;

 private:
  std::shared_ptr<const TreeEnsemble> model_;
  std::vector<double> explained_;
  std::vector<std::vector<double>> background_;
};

}  // namespace proxyshap

#endif  // PROXYSHAP_INTERVENTIONAL_HPP

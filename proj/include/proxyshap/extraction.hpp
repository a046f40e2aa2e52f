#ifndef PROXYSHAP_EXTRACTION_HPP
#define PROXYSHAP_EXTRACTION_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "proxyshap/coalition.hpp"
#include "proxyshap/game.hpp"
#include "proxyshap/indices.hpp"
#include "proxyshap/interaction_vector.hpp"
#include "proxyshap/trees.hpp"

namespace proxyshap {

/// Shape of one (leaf, target) pair: ℓ = |L|, r = |R|, u = |S ∩ L|, s = |S|.
struct LambdaKey {
  std::size_t l = 0;
  std::size_t r = 0;
  std::size_t u = 0;
  std::size_t s = 0;

  /// s ≥ 1, u ≤ min(ℓ, s) and s - u ≤ r: the shapes a target S ⊆ L ∪ R can take.
  bool is_valid() const { return s >= 1 && u <= l && u <= s && s - u <= r; }
};

/// λ = Σ_{i=0}^{ℓ-u} (-1)^{i+u} C(ℓ-u, i) q^s_{i+u+r}. The alternating sum is
/// carried out in quad precision, so it stays accurate when the terms are
/// many orders of magnitude larger than the result.
double lambda_general(const IndexSpec& index, std::size_t n, const LambdaKey& key);

/// Per-family closed forms of λ. With a = r + u - s and b = ℓ - u:
///   SV/SII   (-1)^u / ((a+b+1) C(a+b, a))
///   BV/BII   (-1)^u w^a (1-w)^b
///   Möbius   (-1)^u 1[a = 0]
///   CHII     s (-1)^u B(u+r, ℓ-u+1)
///   FBII     (-1)^u 1[a = 0] + Σ_{i ≥ max(0, k-r-u+1)} (-1)^{u+i+k-s} 2^{-(a+i)} C(b,i) C(a+i-1, k-s)
///   FSII     (-1)^u 1[a = 0] + Σ_{i ≥ max(0, k-r-u+1)} (-1)^{u+i+k-s} s/(k+s) C(k,s) C(b,i)
///                                   C(r+i+u-1, k) / C(r+u+i+k-1, k+s)
double lambda_closed(const IndexSpec& index, std::size_t n, const LambdaKey& key);

/// The Shapley closed form with (a+b) in place of (a+b+1); infinite when
/// a = b = 0. Kept to report which variant agrees with lambda_general.
double lambda_shapley_printed(const LambdaKey& key);

enum class LambdaRoute { closed, general };

/// λ values for every key a given ensemble and target orders can produce.
class LambdaTable {
 public:
  LambdaTable(const IndexSpec& index, std::size_t n, const TreeEnsemble& ensemble,
              std::size_t max_order, LambdaRoute route);

  /// Zero for keys that are not valid.
  double operator()(std::size_t l, std::size_t r, std::size_t u, std::size_t s) const;

 private:
  std::size_t depth_;
  std::size_t max_order_;
  std::vector<double> values_;
};

struct ExtractionStats {
  /// (leaf, target) pairs inspected.
  std::size_t leaves_visited = 0;
  /// Pairs with S ⊆ L ∪ R, i.e. non-zero λ weight applied.
  std::size_t leaves_contributing = 0;
};

/// φ_S = Σ_trees Σ_{leaves with S ⊆ L∪R} c · λ(|L|, |R|, |S ∩ L|, |S|).
InteractionVector extract_tree_interactions(const TreeEnsemble& ensemble, const IndexSpec& index,
                                            std::span<const Coalition> targets,
                                            LambdaRoute route = LambdaRoute::closed,
                                            Provenance provenance = Provenance::exact,
                                            ExtractionStats* stats = nullptr);

/// Targets of order 1..k lying inside some leaf's L ∪ R; every other target
/// of those orders has φ_S = 0.
std::vector<Coalition> active_targets(const TreeEnsemble& ensemble, std::size_t max_order);

/// All subsets of order 1..k (order 1 only for value families).
std::vector<Coalition> default_targets(const IndexSpec& index, std::size_t n);

/// ν̂(T) = Σ_{S ∈ basis} β_S 1[S ⊆ T].
struct LinearProxy {
  std::size_t n = 0;
  std::vector<Coalition> basis;
  Eigen::VectorXd coefficients;

  double predict(const Coalition& coalition) const;
};

/// {∅} plus every subset of order 1..k.
std::vector<Coalition> linear_basis(std::size_t n, std::size_t max_order);

/// Minimum-norm least squares over the indicator design matrix.
LinearProxy fit_linear_proxy(std::span<const LabeledCoalition> data, std::span<const Coalition> basis);

/// φ_S = Σ_{T ∈ basis, T ⊇ S} q^s_t β_T.
InteractionVector extract_linear_interactions(const LinearProxy& proxy, const IndexSpec& index,
                                              std::span<const Coalition> targets,
                                              Provenance provenance = Provenance::exact);

}  // namespace proxyshap

#endif  // PROXYSHAP_EXTRACTION_HPP

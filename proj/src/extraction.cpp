#include "proxyshap/extraction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>

#include "proxyshap/errors.hpp"
#include "proxyshap/numeric.hpp"
#include "proxyshap/parallel.hpp"

namespace proxyshap {

namespace {

using Quad = __float128;

Quad quad_binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Quad c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<Quad>(n - k + i) / static_cast<Quad>(i);
  return c;
}

Quad quad_power(Quad base, std::size_t exponent) {
  Quad result = 1;
  for (std::size_t i = 0; i < exponent; ++i) result *= base;
  return result;
}

Quad sign(std::size_t exponent) { return exponent % 2 == 0 ? Quad(1) : Quad(-1); }

// Faithful-index tail (t > k) in quad precision.
Quad faithful_tail(const IndexSpec& index, std::size_t s, std::size_t t) {
  const std::size_t k = index.max_order;
  if (index.family == IndexFamily::FBII) {
    return sign(k - s) * quad_power(Quad(0.5), t - s) * quad_binomial(t - s - 1, k - s);
  }
  return sign(k - s) * (Quad(s) / Quad(k + s)) * quad_binomial(k, s) * quad_binomial(t - 1, k) /
         quad_binomial(t + k - 1, k + s);
}

Quad quad_q(const IndexSpec& index, std::size_t s, std::size_t t) {
  switch (index.family) {
    case IndexFamily::SV:
    case IndexFamily::SII:
      return Quad(1) / Quad(t - s + 1);
    case IndexFamily::BV:
    case IndexFamily::BII:
      return quad_power(Quad(index.banzhaf_w), t - s);
    case IndexFamily::Moebius:
      return t == s ? 1 : 0;
    case IndexFamily::CHII:
      return Quad(s) / Quad(t);
    case IndexFamily::FSII:
    case IndexFamily::FBII:
      if (t == s) return 1;
      if (t <= index.max_order) return 0;
      return faithful_tail(index, s, t);
  }
  return 0;
}

void require_valid(const IndexSpec& index, const LambdaKey& key) {
  if (!key.is_valid())
    throw PreconditionError("invalid λ key (ℓ=" + std::to_string(key.l) + ", r=" + std::to_string(key.r) +
                            ", u=" + std::to_string(key.u) + ", s=" + std::to_string(key.s) + ")");
  if (is_faithful_family(index.family) && key.s > index.max_order)
    throw PreconditionError("faithful index: λ requires s <= k");
}

}  // namespace

double lambda_general(const IndexSpec& index, std::size_t /*n*/, const LambdaKey& key) {
  require_valid(index, key);
  const std::size_t b = key.l - key.u;
  Quad sum = 0;
  for (std::size_t i = 0; i <= b; ++i)
    sum += sign(i + key.u) * quad_binomial(b, i) * quad_q(index, key.s, i + key.u + key.r);
  return static_cast<double>(sum);
}

double lambda_closed(const IndexSpec& index, std::size_t /*n*/, const LambdaKey& key) {
  require_valid(index, key);
  const auto [l, r, u, s] = key;
  const std::size_t a = r + u - s;
  const std::size_t b = l - u;
  const double sgn = u % 2 == 0 ? 1.0 : -1.0;

  switch (index.family) {
    case IndexFamily::SV:
    case IndexFamily::SII:
      // 1 / ((a+b+1) C(a+b, a)) = B(a+1, b+1)
      return sgn * beta_function(static_cast<double>(a + 1), static_cast<double>(b + 1));
    case IndexFamily::BV:
    case IndexFamily::BII:
      return sgn * std::pow(index.banzhaf_w, static_cast<double>(a)) *
             std::pow(1.0 - index.banzhaf_w, static_cast<double>(b));
    case IndexFamily::Moebius:
      return a == 0 ? sgn : 0.0;
    case IndexFamily::CHII:
      return static_cast<double>(s) * sgn *
             beta_function(static_cast<double>(u + r), static_cast<double>(l - u + 1));
    case IndexFamily::FBII:
    case IndexFamily::FSII: {
      const std::size_t k = index.max_order;
      Quad sum = a == 0 ? Quad(sgn) : Quad(0);
      const std::size_t lower = k + 1 > r + u ? k + 1 - r - u : 0;
      for (std::size_t i = lower; i <= b; ++i) {
        Quad term = sign(u + i + k - s) * quad_binomial(b, i);
        if (index.family == IndexFamily::FBII) {
          term *= quad_power(Quad(0.5), a + i) * quad_binomial(a + i - 1, k - s);
        } else {
          term *= (Quad(s) / Quad(k + s)) * quad_binomial(k, s) * quad_binomial(r + i + u - 1, k) /
                  quad_binomial(r + u + i + k - 1, k + s);
        }
        sum += term;
      }
      return static_cast<double>(sum);
    }
  }
  return 0.0;
}

double lambda_shapley_printed(const LambdaKey& key) {
  if (!key.is_valid()) throw PreconditionError("invalid λ key");
  const std::size_t a = key.r + key.u - key.s;
  const std::size_t b = key.l - key.u;
  const double sgn = key.u % 2 == 0 ? 1.0 : -1.0;
  return sgn / (static_cast<double>(a + b) * binomial(a + b, a));
}

LambdaTable::LambdaTable(const IndexSpec& index, std::size_t n, const TreeEnsemble& ensemble,
                         std::size_t max_order, LambdaRoute route)
    : depth_(0), max_order_(max_order) {
  for (const auto& tree : ensemble.trees)
    for (const auto& leaf : tree.leaves()) depth_ = std::max({depth_, leaf.left.size(), leaf.right.size()});

  const std::size_t d = depth_ + 1;
  const std::size_t k = max_order_ + 1;
  values_.assign(d * d * k * k, 0.0);
  std::vector<char> present(d * d, 0);
  for (const auto& tree : ensemble.trees)
    for (const auto& leaf : tree.leaves()) present[leaf.left.size() * d + leaf.right.size()] = 1;

  for (std::size_t l = 0; l < d; ++l) {
    for (std::size_t r = 0; r < d; ++r) {
      if (!present[l * d + r]) continue;
      for (std::size_t s = 1; s <= max_order_; ++s) {
        if (is_faithful_family(index.family) && s > index.max_order) continue;
        for (std::size_t u = 0; u <= s; ++u) {
          const LambdaKey key{l, r, u, s};
          if (!key.is_valid()) continue;
          values_[((l * d + r) * k + s) * k + u] =
              route == LambdaRoute::closed ? lambda_closed(index, n, key) : lambda_general(index, n, key);
        }
      }
    }
  }
}

double LambdaTable::operator()(std::size_t l, std::size_t r, std::size_t u, std::size_t s) const {
  if (l > depth_ || r > depth_ || s > max_order_ || u > s) return 0.0;
  const std::size_t d = depth_ + 1;
  const std::size_t k = max_order_ + 1;
  return values_[((l * d + r) * k + s) * k + u];
}

InteractionVector extract_tree_interactions(const TreeEnsemble& ensemble, const IndexSpec& index,
                                            std::span<const Coalition> targets, LambdaRoute route,
                                            Provenance provenance, ExtractionStats* stats) {
  index.validate();
  const std::size_t n = ensemble.n;
  std::size_t max_order = 0;
  for (const auto& S : targets) {
    if (S.width() != n) throw PreconditionError("target width does not match the ensemble");
    validate_target_order(index, n, S.size());
    max_order = std::max(max_order, S.size());
  }

  // Leaf masks in contiguous word arrays: the scan below touches every leaf
  // once per target, so memory layout dominates its cost.
  const std::size_t words = (n + 63) / 64;
  const std::size_t leaf_count = ensemble.leaf_count();
  std::vector<std::uint64_t> support_words(leaf_count * words), left_words(leaf_count * words);
  std::vector<std::uint32_t> left_sizes(leaf_count), right_sizes(leaf_count);
  std::vector<double> leaf_values(leaf_count);
  std::size_t j = 0;
  for (const auto& tree : ensemble.trees)
    for (const auto& leaf : tree.leaves()) {
      const auto left = leaf.left.words();
      const auto right = leaf.right.words();
      for (std::size_t w = 0; w < words; ++w) {
        support_words[j * words + w] = left[w] | right[w];
        left_words[j * words + w] = left[w];
      }
      left_sizes[j] = static_cast<std::uint32_t>(leaf.left.size());
      right_sizes[j] = static_cast<std::uint32_t>(leaf.right.size());
      leaf_values[j] = leaf.value;
      ++j;
    }

  const LambdaTable table(index, n, ensemble, max_order, route);
  std::vector<double> results(targets.size(), 0.0);
  std::vector<std::size_t> contributing(targets.size(), 0);
  parallel_for(targets.size(), [&](std::size_t i) {
    const auto S = targets[i].words();
    const std::size_t s = targets[i].size();
    CompensatedSum sum;
    std::size_t hits = 0;
    for (std::size_t leaf = 0; leaf < leaf_count; ++leaf) {
      const std::uint64_t* support = &support_words[leaf * words];
      bool inside = true;
      for (std::size_t w = 0; w < words && inside; ++w) inside = (S[w] & ~support[w]) == 0;
      if (!inside) continue;
      const std::uint64_t* left = &left_words[leaf * words];
      std::size_t u = 0;
      for (std::size_t w = 0; w < words; ++w) u += static_cast<std::size_t>(std::popcount(S[w] & left[w]));
      ++hits;
      sum.add(leaf_values[leaf] * table(left_sizes[leaf], right_sizes[leaf], u, s));
    }
    results[i] = sum.value();
    contributing[i] = hits;
  });

  if (stats) {
    stats->leaves_visited += leaf_count * targets.size();
    for (auto h : contributing) stats->leaves_contributing += h;
  }
  InteractionVector out(index, n);
  for (std::size_t i = 0; i < targets.size(); ++i) out.add(targets[i], results[i], provenance);
  return out;
}

std::vector<Coalition> active_targets(const TreeEnsemble& ensemble, std::size_t max_order) {
  std::set<Coalition> supports;
  for (const auto& tree : ensemble.trees)
    for (const auto& leaf : tree.leaves())
      if (!leaf.left.empty() || !leaf.right.empty()) supports.insert(leaf.left | leaf.right);

  std::set<Coalition> active;
  for (const auto& support : supports) {
    const auto members = support.members();
    for (const auto& local : subsets_up_to_order(members.size(), std::min(max_order, members.size()))) {
      Coalition S(ensemble.n);
      for (auto b : local.members()) S.insert(members[b]);
      active.insert(std::move(S));
    }
  }
  return {active.begin(), active.end()};
}

std::vector<Coalition> default_targets(const IndexSpec& index, std::size_t n) {
  const std::size_t k = is_value_family(index.family) ? 1 : index.max_order;
  return subsets_up_to_order(n, std::min(k, n));
}

double LinearProxy::predict(const Coalition& coalition) const {
  CompensatedSum sum;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].is_subset_of(coalition)) sum.add(coefficients[static_cast<Eigen::Index>(i)]);
  return sum.value();
}

std::vector<Coalition> linear_basis(std::size_t n, std::size_t max_order) {
  std::vector<Coalition> basis{Coalition(n)};
  for (auto& c : subsets_up_to_order(n, std::min(max_order, n))) basis.push_back(std::move(c));
  return basis;
}

LinearProxy fit_linear_proxy(std::span<const LabeledCoalition> data, std::span<const Coalition> basis) {
  if (basis.empty()) throw PreconditionError("linear proxy needs a non-empty basis");
  if (data.empty()) throw PreconditionError("linear proxy needs training data");
  const std::size_t n = basis.front().width();
  for (const auto& b : basis)
    if (b.width() != n) throw PreconditionError("basis coalitions differ in width");
  for (const auto& row : data)
    if (row.coalition.width() != n) throw PreconditionError("training coalition width mismatch");

  const auto rows = static_cast<Eigen::Index>(data.size());
  const auto cols = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd target(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = data[static_cast<std::size_t>(i)];
    target[i] = row.value;
    for (Eigen::Index j = 0; j < cols; ++j)
      if (basis[static_cast<std::size_t>(j)].is_subset_of(row.coalition)) design(i, j) = 1.0;
  }

  LinearProxy proxy;
  proxy.n = n;
  proxy.basis.assign(basis.begin(), basis.end());
  proxy.coefficients = design.completeOrthogonalDecomposition().solve(target);
  return proxy;
}

InteractionVector extract_linear_interactions(const LinearProxy& proxy, const IndexSpec& index,
                                              std::span<const Coalition> targets, Provenance provenance) {
  index.validate();
  const std::size_t n = proxy.n;
  for (const auto& S : targets) {
    if (S.width() != n) throw PreconditionError("target width does not match the proxy");
    validate_target_order(index, n, S.size());
  }
  std::vector<double> results(targets.size(), 0.0);
  parallel_for(targets.size(), [&](std::size_t i) {
    const Coalition& S = targets[i];
    const std::size_t s = S.size();
    CompensatedSum sum;
    for (std::size_t j = 0; j < proxy.basis.size(); ++j) {
      const Coalition& T = proxy.basis[j];
      if (!S.is_subset_of(T)) continue;
      sum.add(q_weight(index, n, s, T.size()) * proxy.coefficients[static_cast<Eigen::Index>(j)]);
    }
    results[i] = sum.value();
  });
  InteractionVector out(index, n);
  for (std::size_t i = 0; i < targets.size(); ++i) out.add(targets[i], results[i], provenance);
  return out;
}

}  // namespace proxyshap

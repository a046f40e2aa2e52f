#include "proxyshap/trees.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "proxyshap/errors.hpp"
#include "proxyshap/numeric.hpp"

namespace proxyshap {

namespace {

using nlohmann::json;

struct Flattener {
  const std::vector<TreeNode>& nodes;
  std::size_t n;
  std::vector<Leaf>& leaves;
  FlattenReport& report;
  std::vector<char> visited;

  void visit(int index, Coalition& left, Coalition& right, bool reachable) {
    if (index < 0 || static_cast<std::size_t>(index) >= nodes.size())
      throw ParseError("tree node refers to missing child " + std::to_string(index));
    if (visited[static_cast<std::size_t>(index)])
      throw ParseError("tree node " + std::to_string(index) + " is reachable twice (not a tree)");
    visited[static_cast<std::size_t>(index)] = 1;

    const TreeNode& node = nodes[static_cast<std::size_t>(index)];
    if (node.is_leaf()) {
      ++report.leaves;
      if (reachable) leaves.push_back({left, right, node.leaf_value});
      else ++report.unreachable;
      return;
    }
    if (static_cast<std::size_t>(node.feature) >= n)
      throw ParseError("split feature " + std::to_string(node.feature) + " is out of range for n = " +
                       std::to_string(n));
    if (std::isnan(node.threshold)) throw ParseError("split threshold is NaN");

    const std::size_t j = static_cast<std::size_t>(node.feature);
    const double tau = node.threshold;
    // Binary inputs: x = 0 goes left iff 0 < tau, x = 1 goes left iff 1 < tau.
    if (tau <= 0.0) {
      visit(node.left, left, right, false);
      visit(node.right, left, right, reachable);
      return;
    }
    if (tau > 1.0) {
      visit(node.left, left, right, reachable);
      visit(node.right, left, right, false);
      return;
    }

    // Left branch: j absent.
    {
      const bool had = left.contains(j);
      const bool ok = reachable && !right.contains(j);
      left.insert(j);
      visit(node.left, left, right, ok);
      if (!had) left.erase(j);
    }
    // Right branch: j present.
    {
      const bool had = right.contains(j);
      const bool ok = reachable && !left.contains(j);
      right.insert(j);
      visit(node.right, left, right, ok);
      if (!had) right.erase(j);
    }
  }
};

double walk(const std::vector<TreeNode>& nodes, auto&& feature_value) {
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const TreeNode& node = nodes[i];
    i = static_cast<std::size_t>(feature_value(static_cast<std::size_t>(node.feature)) < node.threshold
                                     ? node.left
                                     : node.right);
  }
  return nodes[i].leaf_value;
}

}  // namespace

Tree Tree::from_leaves(std::vector<Leaf> leaves) {
  for (const auto& leaf : leaves) {
    if (leaf.left.width() != leaf.right.width()) throw PreconditionError("leaf width mismatch");
    if (leaf.left.intersects(leaf.right)) throw PreconditionError("leaf has L ∩ R ≠ ∅");
  }
  Tree t;
  t.leaves_ = std::move(leaves);
  return t;
}

Tree Tree::from_nodes(std::vector<TreeNode> nodes, std::size_t n, FlattenReport* report) {
  if (nodes.empty()) throw ParseError("tree has no nodes");
  Tree t;
  FlattenReport local;
  Flattener flattener{nodes, n, t.leaves_, local, std::vector<char>(nodes.size(), 0)};
  Coalition left(n), right(n);
  flattener.visit(0, left, right, true);
  t.nodes_ = std::move(nodes);
  if (report) {
    report->leaves += local.leaves;
    report->unreachable += local.unreachable;
  }
  return t;
}

double Tree::predict(const Coalition& coalition) const {
  if (has_nodes()) return predict_nodes(coalition);
  CompensatedSum sum;
  for (const auto& leaf : leaves_)
    if (leaf.reaches(coalition)) sum.add(leaf.value);
  return sum.value();
}

double Tree::predict_nodes(const Coalition& coalition) const {
  if (!has_nodes()) throw PreconditionError("tree has no node form");
  return walk(nodes_, [&](std::size_t j) { return coalition.contains(j) ? 1.0 : 0.0; });
}

double Tree::predict_features(std::span<const double> x) const {
  if (!has_nodes()) throw PreconditionError("tree has no node form");
  return walk(nodes_, [&](std::size_t j) {
    if (j >= x.size()) throw PreconditionError("feature vector too short for tree");
    return x[j];
  });
}

std::size_t TreeEnsemble::leaf_count() const {
  std::size_t count = 0;
  for (const auto& t : trees) count += t.leaves().size();
  return count;
}

std::size_t TreeEnsemble::max_leaf_depth() const {
  std::size_t depth = 0;
  for (const auto& t : trees)
    for (const auto& leaf : t.leaves()) depth = std::max(depth, leaf.left.size() + leaf.right.size());
  return depth;
}

double predict(const TreeEnsemble& ensemble, const Coalition& coalition) {
  if (coalition.width() != ensemble.n) throw PreconditionError("coalition width does not match ensemble");
  CompensatedSum sum;
  sum.add(ensemble.base_score);
  for (const auto& tree : ensemble.trees) sum.add(tree.predict(coalition));
  return sum.value();
}

double predict_features(const TreeEnsemble& ensemble, std::span<const double> x) {
  CompensatedSum sum;
  sum.add(ensemble.base_score);
  for (const auto& tree : ensemble.trees) sum.add(tree.predict_features(x));
  return sum.value();
}

TreeEnsemble parse_ensemble(std::string_view json_text, FlattenReport* report) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model is not valid JSON: ") + e.what());
  }
  try {
    TreeEnsemble ensemble;
    const auto n = doc.at("n").get<long long>();
    if (n < 0) throw ParseError("model field n must be non-negative");
    ensemble.n = static_cast<std::size_t>(n);
    ensemble.base_score = doc.value("base_score", 0.0);
    for (const auto& tree_doc : doc.at("trees")) {
      std::vector<TreeNode> nodes;
      for (const auto& node_doc : tree_doc.at("nodes")) {
        TreeNode node;
        if (node_doc.contains("leaf")) {
          node.leaf_value = node_doc.at("leaf").get<double>();
        } else {
          node.feature = node_doc.at("feature").get<int>();
          if (node.feature < 0) throw ParseError("split feature must be non-negative");
          node.left = node_doc.at("left").get<int>();
          node.right = node_doc.at("right").get<int>();
          node.threshold = node_doc.value("threshold", 0.5);
        }
        nodes.push_back(node);
      }
      ensemble.trees.push_back(Tree::from_nodes(std::move(nodes), ensemble.n, report));
    }
    return ensemble;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model does not follow the interchange schema: ") + e.what());
  }
}

TreeEnsemble load_ensemble(const std::filesystem::path& path, FlattenReport* report) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_ensemble(buffer.str(), report);
}

std::string serialize_ensemble(const TreeEnsemble& ensemble) {
  json doc;
  doc["n"] = ensemble.n;
  doc["base_score"] = ensemble.base_score;
  doc["trees"] = json::array();
  for (const auto& tree : ensemble.trees) {
    if (!tree.has_nodes()) throw PreconditionError("cannot serialise a tree without node form");
    json nodes = json::array();
    for (const auto& node : tree.nodes()) {
      if (node.is_leaf()) {
        nodes.push_back({{"leaf", node.leaf_value}});
      } else {
        json j = {{"feature", node.feature}, {"left", node.left}, {"right", node.right}};
        if (node.threshold != 0.5) j["threshold"] = node.threshold;
        nodes.push_back(std::move(j));
      }
    }
    doc["trees"].push_back({{"nodes", std::move(nodes)}});
  }
  return doc.dump() + "\n";
}

TreeGame::TreeGame(std::shared_ptr<const TreeEnsemble> ensemble)
    : Game(ensemble->n), ensemble_(std::move(ensemble)) {}

double TreeGame::value(const Coalition& coalition) const { return predict(*ensemble_, coalition); }

TreeEnsemble ensemble_from_moebius(const MoebiusGame& game) {
  TreeEnsemble ensemble;
  ensemble.n = game.players();
  for (const auto& [subset, m] : game.coefficients()) {
    const auto members = subset.members();
    if (members.empty()) {
      ensemble.base_score += m;
      continue;
    }
    // Chain: split on each member in turn, absent -> 0, all present -> m.
    std::vector<TreeNode> nodes;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const int here = static_cast<int>(nodes.size());
      TreeNode split;
      split.feature = static_cast<int>(members[i]);
      split.left = here + 1;
      split.right = here + 2;
      nodes.push_back(split);
      nodes.push_back(TreeNode{});  // absent: leaf 0
    }
    TreeNode last;
    last.leaf_value = m;
    nodes.push_back(last);
    ensemble.trees.push_back(Tree::from_nodes(std::move(nodes), ensemble.n));
  }
  return ensemble;
}

TreeEnsemble ensemble_from_game(const Game& game, std::size_t cap) {
  const std::size_t n = game.players();
  const auto table = tabulate(game, cap);
  std::vector<TreeNode> nodes;
  nodes.reserve(2 * table.size());

  auto build = [&](auto&& self, std::size_t depth, std::uint64_t mask) -> int {
    const int here = static_cast<int>(nodes.size());
    nodes.emplace_back();
    if (depth == n) {
      nodes[static_cast<std::size_t>(here)].leaf_value = table[mask];
      return here;
    }
    const int left = self(self, depth + 1, mask);
    const int right = self(self, depth + 1, mask | (std::uint64_t{1} << depth));
    TreeNode& node = nodes[static_cast<std::size_t>(here)];
    node.feature = static_cast<int>(depth);
    node.left = left;
    node.right = right;
    return here;
  };
  build(build, 0, 0);

  TreeEnsemble ensemble;
  ensemble.n = n;
  ensemble.trees.push_back(Tree::from_nodes(std::move(nodes), n));
  return ensemble;
}

}  // namespace proxyshap

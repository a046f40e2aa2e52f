#include "proxyshap/game.hpp"

#include <bit>
#include <cstdint>
#include <set>
#include <string>

#include "proxyshap/errors.hpp"
#include "proxyshap/numeric.hpp"
#include "proxyshap/parallel.hpp"
#include "proxyshap/sampling.hpp"

namespace proxyshap {

std::string_view to_string(GameKind kind) {
  switch (kind) {
    case GameKind::constant: return "constant";
    case GameKind::unanimity: return "unanimity";
    case GameKind::synthetic_moebius: return "synthetic-moebius";
    case GameKind::table: return "table";
    case GameKind::tree: return "tree";
    case GameKind::interventional_tree: return "interventional-tree";
    case GameKind::residual: return "residual";
    case GameKind::linear_combination: return "linear-combination";
    case GameKind::counting: return "counting";
  }
  return "?";
}

double evaluate(const Game& game, const Coalition& coalition) {
  if (coalition.width() != game.players())
    throw PreconditionError("coalition width " + std::to_string(coalition.width()) +
                            " does not match game with " + std::to_string(game.players()) +
                            " players");
  return game.value(coalition);
}

UnanimityGame::UnanimityGame(Coalition carrier)
    : Game(carrier.width()), carrier_(std::move(carrier)) {}

MoebiusGame::MoebiusGame(std::size_t n, Coefficients coefficients)
    : Game(n), coefficients_(std::move(coefficients)) {
  for (const auto& [subset, m] : coefficients_) {
    if (subset.width() != n) throw PreconditionError("Möbius coefficient width mismatch");
  }
}

double MoebiusGame::value(const Coalition& coalition) const {
  CompensatedSum sum;
  for (const auto& [subset, m] : coefficients_)
    if (subset.is_subset_of(coalition)) sum.add(m);
  return sum.value();
}

double MoebiusGame::coefficient(const Coalition& subset) const {
  auto it = coefficients_.find(subset);
  return it == coefficients_.end() ? 0.0 : it->second;
}

TableGame::TableGame(std::size_t n, Table table) : Game(n), table_(std::move(table)) {
  for (const auto& [coalition, v] : table_) {
    if (coalition.width() != n) throw PreconditionError("table coalition width mismatch");
  }
}

double TableGame::value(const Coalition& coalition) const {
  auto it = table_.find(coalition);
  if (it == table_.end())
    throw MissingCoalitionError("table game has no value recorded for " + coalition.to_string());
  return it->second;
}

LinearCombinationGame::LinearCombinationGame(std::size_t n, Terms terms)
    : Game(n), terms_(std::move(terms)) {
  for (const auto& [alpha, g] : terms_) {
    if (!g || g->players() != n) throw PreconditionError("linear combination width mismatch");
  }
}

double LinearCombinationGame::value(const Coalition& coalition) const {
  CompensatedSum sum;
  for (const auto& [alpha, g] : terms_) sum.add(alpha * g->value(coalition));
  return sum.value();
}

double discrete_derivative(const Game& game, const Coalition& S, const Coalition& T) {
  if (S.width() != game.players() || T.width() != game.players())
    throw PreconditionError("discrete_derivative: width mismatch");
  if (S.intersects(T)) throw PreconditionError("discrete_derivative requires S ∩ T = ∅");

  const auto members = S.members();
  const std::size_t s = members.size();
  if (s >= 63) throw CapacityError("discrete_derivative: |S| too large to enumerate");
  CompensatedSum sum;
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << s); ++sub) {
    Coalition coalition = T;
    for (std::size_t b = 0; b < s; ++b)
      if ((sub >> b) & 1u) coalition.insert(members[b]);
    const bool negative = (s - static_cast<std::size_t>(std::popcount(sub))) % 2 == 1;
    const double v = game.value(coalition);
    sum.add(negative ? -v : v);
  }
  return sum.value();
}

namespace {

void require_enumerable(std::size_t n, std::size_t cap) {
  if (n > cap || n >= 63)
    throw CapacityError("enumeration over 2^" + std::to_string(n) +
                        " coalitions exceeds the cap of 2^" + std::to_string(cap));
}

std::uint64_t mask_of(const Coalition& c) { return c.to_mask(); }

}  // namespace

std::vector<double> tabulate(const Game& game, std::size_t cap) {
  const std::size_t n = game.players();
  require_enumerable(n, cap);
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> values(count);
  // Chunked so the parallel split does not depend on the worker count.
  constexpr std::uint64_t kChunk = 1024;
  const std::size_t chunks = static_cast<std::size_t>((count + kChunk - 1) / kChunk);
  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(count, begin + kChunk);
    for (std::uint64_t mask = begin; mask < end; ++mask)
      values[mask] = game.value(Coalition::from_mask(n, mask));
  });
  return values;
}

void moebius_in_place(std::span<double> table, std::size_t n) {
  if (table.size() != (std::size_t{1} << n)) throw PreconditionError("table size must be 2^n");
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t mask = 0; mask < table.size(); ++mask)
      if (mask & bit) table[mask] -= table[mask ^ bit];
  }
}

void zeta_in_place(std::span<double> table, std::size_t n) {
  if (table.size() != (std::size_t{1} << n)) throw PreconditionError("table size must be 2^n");
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t mask = 0; mask < table.size(); ++mask)
      if (mask & bit) table[mask] += table[mask ^ bit];
  }
}

MoebiusGame moebius_transform(const Game& game, std::size_t cap) {
  const std::size_t n = game.players();
  auto table = tabulate(game, cap);
  moebius_in_place(table, n);
  MoebiusGame::Coefficients coefficients;
  for (std::uint64_t mask = 0; mask < table.size(); ++mask)
    if (table[mask] != 0.0) coefficients.emplace(Coalition::from_mask(n, mask), table[mask]);
  return MoebiusGame(n, std::move(coefficients));
}

namespace {

// Σ_{T ⊆ N\S} p_t^s Δ_S ν(T), literally: outer loop over T, inner over L ⊆ S.
double enumerate_index(const std::vector<double>& values, std::size_t n, std::uint64_t target,
                       const std::vector<double>& p) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const std::uint64_t rest = full & ~target;
  const int s = std::popcount(target);

  std::vector<std::pair<std::uint64_t, bool>> sub_s;  // (L, negative sign)
  for (std::uint64_t L = target;; L = (L - 1) & target) {
    sub_s.emplace_back(L, (s - std::popcount(L)) % 2 == 1);
    if (L == 0) break;
  }

  CompensatedSum total;
  for (std::uint64_t T = rest;; T = (T - 1) & rest) {
    CompensatedSum derivative;
    for (const auto& [L, negative] : sub_s) {
      const double v = values[T | L];
      derivative.add(negative ? -v : v);
    }
    total.add(p[static_cast<std::size_t>(std::popcount(T))] * derivative.value());
    if (T == 0) break;
  }
  return total.value();
}

// Σ_{T ⊇ S} q_t^s m_T over a full Möbius table.
double moebius_index(const std::vector<double>& m, std::size_t n, std::uint64_t target,
                     const std::vector<double>& q) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const std::uint64_t rest = full & ~target;
  CompensatedSum total;
  for (std::uint64_t U = rest;; U = (U - 1) & rest) {
    const std::uint64_t T = target | U;
    total.add(q[static_cast<std::size_t>(std::popcount(T))] * m[T]);
    if (U == 0) break;
  }
  return total.value();
}

std::vector<double> q_row(const IndexSpec& index, std::size_t n, std::size_t s) {
  std::vector<double> q(n + 1, 0.0);
  for (std::size_t t = s; t <= n; ++t) q[t] = q_weight(index, n, s, t);
  return q;
}

}  // namespace

InteractionVector exact_interactions(const Game& game, const IndexSpec& index,
                                     std::span<const Coalition> targets, ExactRoute route,
                                     std::size_t cap) {
  index.validate();
  const std::size_t n = game.players();
  for (const auto& S : targets) {
    if (S.width() != n) throw PreconditionError("target width mismatch");
    validate_target_order(index, n, S.size());
  }

  const auto* moebius_game = dynamic_cast<const MoebiusGame*>(&game);
  if (route == ExactRoute::automatic) {
    if (moebius_game) route = ExactRoute::moebius_sparse;
    else if (has_p_weights(index)) route = ExactRoute::enumeration;
    else route = ExactRoute::moebius_brute;
  }
  if (route == ExactRoute::enumeration && !has_p_weights(index))
    throw PreconditionError("enumeration route needs coalition weights p; " +
                            std::string(to_string(index.family)) + " has none");
  if (route == ExactRoute::moebius_sparse && !moebius_game)
    throw PreconditionError("sparse Möbius route requires a MoebiusGame");

  std::vector<double> results(targets.size(), 0.0);
  if (route == ExactRoute::moebius_sparse) {
    parallel_for(targets.size(), [&](std::size_t i) {
      const Coalition& S = targets[i];
      const std::size_t s = S.size();
      CompensatedSum sum;
      for (const auto& [T, m] : moebius_game->coefficients())
        if (S.is_subset_of(T)) sum.add(q_weight(index, n, s, T.size()) * m);
      results[i] = sum.value();
    });
  } else {
    auto table = tabulate(game, cap);
    if (route == ExactRoute::moebius_brute) moebius_in_place(table, n);

    std::vector<std::vector<double>> rows(n + 1);
    for (const auto& S : targets) {
      const std::size_t s = S.size();
      if (!rows[s].empty()) continue;
      if (route == ExactRoute::enumeration) {
        rows[s].resize(n - s + 1);
        for (std::size_t t = 0; t + s <= n; ++t) rows[s][t] = p_weight(index, n, s, t);
      } else {
        rows[s] = q_row(index, n, s);
      }
    }
    parallel_for(targets.size(), [&](std::size_t i) {
      const std::uint64_t target = mask_of(targets[i]);
      const auto& row = rows[targets[i].size()];
      results[i] = route == ExactRoute::enumeration ? enumerate_index(table, n, target, row)
                                                    : moebius_index(table, n, target, row);
    });
  }

  InteractionVector out(index, n);
  for (std::size_t i = 0; i < targets.size(); ++i) out.add(targets[i], results[i], Provenance::exact);
  return out;
}

MoebiusGame random_sparse_moebius(std::size_t n, std::size_t terms, std::size_t max_order,
                                  std::uint64_t seed, double scale) {
  if (max_order == 0 || max_order > n) throw PreconditionError("random_sparse_moebius: bad order");
  double available = 0.0;
  for (std::size_t k = 1; k <= max_order; ++k) available += binomial(n, k);
  if (static_cast<double>(terms) > available)
    throw PreconditionError("random_sparse_moebius: more terms than subsets");

  Rng rng(seed);
  MoebiusGame::Coefficients coefficients;
  while (coefficients.size() < terms) {
    const std::size_t size = 1 + static_cast<std::size_t>(rng.uniform_below(max_order));
    Coalition subset = random_subset(n, size, rng);
    const double m = scale * (2.0 * rng.uniform01() - 1.0);
    coefficients.emplace(std::move(subset), m);
  }
  return MoebiusGame(n, std::move(coefficients));
}

}  // namespace proxyshap

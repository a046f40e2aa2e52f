#ifndef PROXYSHAP_GAME_HPP
#define PROXYSHAP_GAME_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "proxyshap/coalition.hpp"
#include "proxyshap/indices.hpp"
#include "proxyshap/interaction_vector.hpp"

namespace proxyshap {

enum class GameKind {
  constant,
  unanimity,
  synthetic_moebius,
  table,
  tree,
  interventional_tree,
  residual,
  linear_combination,
  counting,
};

std::string_view to_string(GameKind kind);

/// A value function over coalitions of `players()` players. Implementations
/// are immutable and deterministic, so a Game may be shared across threads.
class Game {
 public:
  virtual ~Game() = default;

  std::size_t players() const { return n_; }
  virtual GameKind kind() const = 0;
  /// Unchecked evaluation; use evaluate() for the width-checked entry point.
  virtual double value(const Coalition& coalition) const = 0;

 protected:
  explicit Game(std::size_t n) : n_(n) {}

 private:
  std::size_t n_;
};

using GamePtr = std::shared_ptr<const Game>;

double evaluate(const Game& game, const Coalition& coalition);

struct LabeledCoalition {
  Coalition coalition;
  double value = 0.0;
};

class ConstantGame final : public Game {
 public:
  ConstantGame(std::size_t n, double constant) : Game(n), constant_(constant) {}
  GameKind kind() const override { return GameKind::constant; }
  double value(const Coalition&) const override { return constant_; }
  double constant() const { return constant_; }

 private:
  double constant_;
};

/// u_R(T) = 1[R ⊆ T].
class UnanimityGame final : public Game {
 public:
  explicit UnanimityGame(Coalition carrier);
  GameKind kind() const override { return GameKind::unanimity; }
  double value(const Coalition& coalition) const override {
    return carrier_.is_subset_of(coalition) ? 1.0 : 0.0;
  }
  const Coalition& carrier() const { return carrier_; }

 private:
  Coalition carrier_;
};

/// ν(T) = Σ_{R ⊆ T} m_R over a sparse coefficient map.
class MoebiusGame final : public Game {
 public:
  using Coefficients = std::map<Coalition, double>;

  MoebiusGame(std::size_t n, Coefficients coefficients);
  GameKind kind() const override { return GameKind::synthetic_moebius; }
  double value(const Coalition& coalition) const override;

  const Coefficients& coefficients() const { return coefficients_; }
  /// m_S, zero when S is not stored.
  double coefficient(const Coalition& subset) const;

 private:
  Coefficients coefficients_;
};

/// Recorded values only; querying an unrecorded coalition throws
/// MissingCoalitionError.
class TableGame final : public Game {
 public:
  using Table = std::unordered_map<Coalition, double, CoalitionHash>;

  TableGame(std::size_t n, Table table);
  GameKind kind() const override { return GameKind::table; }
  double value(const Coalition& coalition) const override;
  bool contains(const Coalition& coalition) const { return table_.contains(coalition); }
  const Table& table() const { return table_; }

 private:
  Table table_;
};

/// Σ_i α_i ν_i(T).
class LinearCombinationGame final : public Game {
 public:
  using Terms = std::vector<std::pair<double, GamePtr>>;

  LinearCombinationGame(std::size_t n, Terms terms);
  GameKind kind() const override { return GameKind::linear_combination; }
  double value(const Coalition& coalition) const override;

 private:
  Terms terms_;
};

inline constexpr std::size_t kDefaultEnumerationCap = 20;

/// Δ_S ν(T) = Σ_{L ⊆ S} (-1)^{s-ℓ} ν(T ∪ L); requires S ∩ T = ∅.
double discrete_derivative(const Game& game, const Coalition& S, const Coalition& T);

/// ν on all 2^n coalitions, indexed by bit mask. Throws CapacityError when
/// n exceeds `cap`.
std::vector<double> tabulate(const Game& game, std::size_t cap = kDefaultEnumerationCap);
/// In-place fast Möbius transform over a 2^n table: values -> m.
void moebius_in_place(std::span<double> table, std::size_t n);
/// Inverse (zeta) transform: m -> values.
void zeta_in_place(std::span<double> table, std::size_t n);

/// m_S = Δ_S ν(∅) for all S, by enumeration. Zero coefficients are dropped.
MoebiusGame moebius_transform(const Game& game, std::size_t cap = kDefaultEnumerationCap);

enum class ExactRoute {
  automatic,       // sparse Möbius for MoebiusGame, else enumeration when p exists, else brute Möbius
  enumeration,     // Σ_{T ⊆ N\S} p_t^s(n) Δ_S ν(T)
  moebius_brute,   // Σ_{T ⊇ S} q_t^s(n) m_T with m from a full transform
  moebius_sparse,  // same sum over the stored coefficients of a MoebiusGame (any n)
};

/// Exact index values for every target, by full enumeration (or by the
/// sparse Möbius representation where the game provides one).
InteractionVector exact_interactions(const Game& game, const IndexSpec& index,
                                     std::span<const Coalition> targets,
                                     ExactRoute route = ExactRoute::automatic,
                                     std::size_t cap = kDefaultEnumerationCap);

/// Seeded synthetic game with `terms` non-zero Möbius coefficients on
/// distinct subsets of size 1..max_order, coefficients uniform in
/// [-scale, scale].
MoebiusGame random_sparse_moebius(std::size_t n, std::size_t terms, std::size_t max_order,
                                  std::uint64_t seed, double scale = 1.0);

}  // namespace proxyshap

#endif  // PROXYSHAP_GAME_HPP

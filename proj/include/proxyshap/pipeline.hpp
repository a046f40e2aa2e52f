#ifndef PROXYSHAP_PIPELINE_HPP
#define PROXYSHAP_PIPELINE_HPP

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "proxyshap/extraction.hpp"
#include "proxyshap/game.hpp"
#include "proxyshap/gbt.hpp"
#include "proxyshap/indices.hpp"
#include "proxyshap/interaction_vector.hpp"
#include "proxyshap/msr.hpp"
#include "proxyshap/sampling.hpp"

namespace proxyshap {

enum class ProxyKind { tree, linear };
enum class AdjustMode { automatic, on, off };

std::string_view to_string(ProxyKind kind);
ProxyKind parse_proxy_kind(std::string_view name);
std::string_view to_string(AdjustMode mode);
AdjustMode parse_adjust_mode(std::string_view name);

struct PipelineConfig {
  IndexSpec index{};
  ProxyKind proxy = ProxyKind::tree;
  GbtConfig gbt{};
  /// Order of the linear basis; 0 means the largest target order.
  std::size_t linear_order = 0;
  std::size_t linear_basis_limit = 200000;
  /// budget, scheme and replacement policy; the seed is derived from `seed`.
  SamplerConfig sampler{};
  AdjustMode adjust = AdjustMode::automatic;
  double adjust_constant = kDefaultAdjustConstant;
  /// Empty means every subset of order 1..k.
  std::vector<Coalition> targets;
  std::uint64_t seed = 0;
};

/// Forwards to another game and counts every evaluation.
class CountingGame final : public Game {
 public:
  explicit CountingGame(const Game& base) : Game(base.players()), base_(base) {}
  GameKind kind() const override { return GameKind::counting; }
  double value(const Coalition& coalition) const override {
    count_.fetch_add(1, std::memory_order_relaxed);
    return base_.value(coalition);
  }
  std::size_t count() const { return count_.load(); }

 private:
  const Game& base_;
  mutable std::atomic<std::size_t> count_{0};
};

struct PipelineResult {
  InteractionVector estimate;
  /// Interactions of the fitted proxy alone.
  InteractionVector proxy_part;
  /// MSR estimate of the residual game, present when adjusted.
  std::optional<InteractionVector> msr_part;
  bool adjusted = false;
  std::size_t queries = 0;
  double training_mse = 0.0;
};

/// Sample, evaluate, fit the proxy, extract its interactions exactly, and
/// optionally add the MSR estimate of the residual on the same coalitions.
/// The game is queried once per sampled coalition and nowhere else.
PipelineResult run_proxyshap(const Game& game, const PipelineConfig& config);

/// Resolves the automatic adjustment rule for a configuration.
bool resolve_adjust(const PipelineConfig& config, std::size_t n, std::size_t max_target_order);

/// Targets the pipeline will report for `n` players.
std::vector<Coalition> resolve_targets(const PipelineConfig& config, std::size_t n);

/// Σ (φ̂ - φ)² / Σ φ²; 0 when both are all-zero, +inf when only the truth is.
double relative_mse(const InteractionVector& estimate, const InteractionVector& truth);

/// Brute enumeration when n ≤ cap; otherwise exact routes that do not need
/// enumeration (sparse Möbius, tree extraction). Throws CapacityError if
/// neither applies.
InteractionVector ground_truth(const Game& game, const IndexSpec& index, std::span<const Coalition> targets,
                               std::size_t cap = kDefaultEnumerationCap);

struct SweepConfig {
  std::string name;
  PipelineConfig config;
};

struct SweepRow {
  std::string config;
  std::size_t budget = 0;
  std::size_t rep = 0;
  double relative_mse = 0.0;
};

struct SweepSummary {
  std::string config;
  std::size_t budget = 0;
  double mean = 0.0;
  double sem = 0.0;
  std::size_t reps = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepSummary> summary;

  std::string rows_csv() const;
  std::string summary_json() const;
};

/// Every (config, budget, repetition) run; repetition r uses seed
/// mix_seed(seed, r) for all configs and budgets.
SweepResult benchmark_sweep(const Game& game, std::span<const SweepConfig> configs,
                            std::span<const std::size_t> budgets, std::size_t repetitions, std::uint64_t seed,
                            std::size_t cap = kDefaultEnumerationCap);

}  // namespace proxyshap

#endif  // PROXYSHAP_PIPELINE_HPP

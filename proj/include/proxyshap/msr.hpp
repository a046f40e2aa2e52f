#ifndef PROXYSHAP_MSR_HPP
#define PROXYSHAP_MSR_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "proxyshap/game.hpp"
#include "proxyshap/indices.hpp"
#include "proxyshap/interaction_vector.hpp"
#include "proxyshap/sampling.hpp"

namespace proxyshap {

struct EvaluatedSample {
  Coalition coalition;
  double log_probability = 0.0;
  double value = 0.0;
};

/// φ̂_S = (1/m) Σ_T ν(T) (-1)^{s-|S∩T|} p^s_{t-|S∩T|} / P(T). The weight ratio
/// is formed in log space so tiny probabilities at large n do not underflow.
InteractionVector msr_estimate(std::span<const EvaluatedSample> samples, const IndexSpec& index,
                               std::span<const Coalition> targets,
                               Provenance provenance = Provenance::msr_only);

/// r(T) = ν(T) - ν̂(T), known only on the recorded coalitions.
class ResidualGame final : public Game {
 public:
  using Table = std::unordered_map<Coalition, double, CoalitionHash>;

  ResidualGame(std::size_t n, Table residuals);
  /// Records r(T) for each sample from its stored value and the proxy.
  static ResidualGame from_samples(std::size_t n, std::span<const EvaluatedSample> samples,
                                   const std::function<double(const Coalition&)>& proxy);

  GameKind kind() const override { return GameKind::residual; }
  /// Throws MissingCoalitionError outside the recorded set.
  double value(const Coalition& coalition) const override;
  const Table& residuals() const { return residuals_; }

 private:
  Table residuals_;
};

/// log P(T) used by the variance identity and Γ. For the proportional scheme
/// this is the target-specific law p^s_{|T\S|}/2^s rather than the
/// target-averaged mixture that sample() draws from.
double variance_log_probability(const SamplerConfig& scheme, const IndexSpec& index, std::size_t n,
                                const Coalition& target, const Coalition& coalition);

/// Per-sample variance Σ_T ν(T)² w_T² / P(T) - φ_S², by enumeration.
double variance_exact(const Game& game, const IndexSpec& index, const Coalition& target,
                      const SamplerConfig& scheme, std::size_t cap = kDefaultEnumerationCap);

/// Γ_S = Σ_T (p^s_{t-|S∩T|})² / P(T), summed by size classes.
double gamma_brute(const IndexSpec& index, std::size_t n, std::size_t s, const SamplerConfig& scheme);

/// Closed forms where known: BII (w = 1/2) under leverage gives
/// (n+1) C(2n,n) / 4^{n-s}; proportional gives 4^s; SII under leverage with
/// s = 1 gives 2(n+1) H_n / n.
std::optional<double> gamma_closed(const IndexSpec& index, std::size_t n, std::size_t s,
                                   const SamplerConfig& scheme);

inline constexpr double kDefaultAdjustConstant = 10.0;

/// True iff n < 30 or m ≥ C·n^{k-1}.
bool should_adjust(std::size_t n, std::size_t k, std::size_t budget, double constant = kDefaultAdjustConstant);

}  // namespace proxyshap

#endif  // PROXYSHAP_MSR_HPP

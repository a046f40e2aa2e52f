#ifndef PROXYSHAP_SAMPLING_HPP
#define PROXYSHAP_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "proxyshap/coalition.hpp"
#include "proxyshap/indices.hpp"
#include "proxyshap/numeric.hpp"

namespace proxyshap {

enum class SamplingScheme { leverage, proportional, uniform };

std::string_view to_string(SamplingScheme scheme);
SamplingScheme parse_scheme(std::string_view name);

/// How the evaluation set is drawn.
///
/// Every scheme assigns a probability that depends on |T| only:
///  - leverage:      1 / ((n+1) C(n,t))
///  - uniform:       2^-n
///  - proportional:  the interaction weights p^s of `proportional_index`,
///                   averaged over all targets of order `proportional_order`
///                   (each target's own distribution is p^s_{|T\S|} / 2^s).
struct SamplerConfig {
  SamplingScheme scheme = SamplingScheme::leverage;
  std::size_t budget = 0;
  bool without_replacement = true;
  bool include_borders = true;
  std::uint64_t seed = 0;
  IndexSpec proportional_index{};
  std::size_t proportional_order = 1;

  void validate(std::size_t n) const;
};

struct CoalitionSample {
  Coalition coalition;
  /// i.i.d. scheme probability of this coalition (may underflow for huge n;
  /// log_probability never does).
  double probability = 0.0;
  double log_probability = 0.0;
};

/// log P(|T| = t) for t = 0..n under the scheme.
std::vector<double> log_size_probabilities(const SamplerConfig& config, std::size_t n);

/// log P(T) for one coalition under the i.i.d. scheme.
double log_scheme_probability(const SamplerConfig& config, std::size_t n, const Coalition& coalition);

/// Draws the evaluation set. Without replacement, draws are repeated until
/// `budget` distinct coalitions are collected; with include_borders the empty
/// and grand coalitions come first. The reported probability is always the
/// i.i.d. scheme probability.
std::vector<CoalitionSample> sample(const SamplerConfig& config, std::size_t n);

/// Uniform subset of the given size (Floyd's algorithm).
Coalition random_subset(std::size_t n, std::size_t size, Rng& rng);

}  // namespace proxyshap

#endif  // PROXYSHAP_SAMPLING_HPP

#include "proxyshap/sampling.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "proxyshap/errors.hpp"

namespace proxyshap {

std::string_view to_string(SamplingScheme scheme) {
  switch (scheme) {
    case SamplingScheme::leverage: return "leverage";
    case SamplingScheme::proportional: return "proportional";
    case SamplingScheme::uniform: return "uniform";
  }
  return "?";
}

SamplingScheme parse_scheme(std::string_view name) {
  if (name == "leverage") return SamplingScheme::leverage;
  if (name == "proportional") return SamplingScheme::proportional;
  if (name == "uniform") return SamplingScheme::uniform;
  throw PreconditionError("unknown sampling scheme '" + std::string(name) + "'");
}

std::vector<double> log_size_probabilities(const SamplerConfig& config, std::size_t n) {
  std::vector<double> out(n + 1, kNegInf);
  const double log2 = std::log(2.0);
  switch (config.scheme) {
    case SamplingScheme::leverage:
      for (auto& v : out) v = -std::log(static_cast<double>(n + 1));
      break;
    case SamplingScheme::uniform:
      for (std::size_t t = 0; t <= n; ++t) out[t] = log_binomial(n, t) - static_cast<double>(n) * log2;
      break;
    case SamplingScheme::proportional: {
      const std::size_t s = config.proportional_order;
      const IndexSpec& index = config.proportional_index;
      if (!has_p_weights(index))
        throw PreconditionError("proportional sampling needs an index with coalition weights p");
      if (s < 1 || s > n) throw PreconditionError("proportional sampling order must be in 1..n");
      // Averaging p^s_{|T\S|}/2^s over all C(n,s) targets S of order s:
      // P(T) = Σ_u C(t,u) C(n-t,s-u) p^s_{t-u} / (C(n,s) 2^s), u = |S ∩ T|.
      const double log_norm = -log_binomial(n, s) - static_cast<double>(s) * log2;
      for (std::size_t t = 0; t <= n; ++t) {
        double acc = kNegInf;
        const std::size_t u_lo = s > n - t ? s - (n - t) : 0;
        for (std::size_t u = u_lo; u <= std::min(s, t); ++u) {
          acc = log_add_exp(acc, log_binomial(t, u) + log_binomial(n - t, s - u) +
                                     log_p_weight(index, n, s, t - u));
        }
        out[t] = acc + log_norm + log_binomial(n, t);
      }
      break;
    }
  }
  return out;
}

double log_scheme_probability(const SamplerConfig& config, std::size_t n, const Coalition& coalition) {
  const std::size_t t = coalition.size();
  return log_size_probabilities(config, n)[t] - log_binomial(n, t);
}

namespace {

// Number of coalitions with positive probability, as a double.
double support_size(const std::vector<double>& log_sizes, std::size_t n) {
  double total = 0.0;
  for (std::size_t t = 0; t <= n; ++t)
    if (log_sizes[t] != kNegInf) total += binomial(n, t);
  return total;
}

}  // namespace

void SamplerConfig::validate(std::size_t n) const {
  if (n == 0) throw PreconditionError("sampling needs at least one player");
  if (budget == 0) throw PreconditionError("sampling budget must be positive");
  if (include_borders && budget < 2)
    throw PreconditionError("including the border coalitions needs a budget of at least 2");
  if (without_replacement) {
    const auto sizes = log_size_probabilities(*this, n);
    double support = support_size(sizes, n);
    if (include_borders) {
      if (sizes[0] == kNegInf) support += 1.0;
      if (sizes[n] == kNegInf) support += 1.0;
    }
    if (static_cast<double>(budget) > support)
      throw PreconditionError("budget " + std::to_string(budget) +
                              " exceeds the number of distinct coalitions available (" +
                              std::to_string(support) + ")");
  }
}

Coalition random_subset(std::size_t n, std::size_t size, Rng& rng) {
  if (size > n) throw PreconditionError("random_subset: size exceeds n");
  const bool flip = size > n / 2;
  const std::size_t k = flip ? n - size : size;
  Coalition c(n);
  for (std::size_t j = n - k; j < n; ++j) {
    const std::size_t r = static_cast<std::size_t>(rng.uniform_below(j + 1));
    if (c.contains(r)) c.insert(j);
    else c.insert(r);
  }
  return flip ? c.complement() : c;
}

std::vector<CoalitionSample> sample(const SamplerConfig& config, std::size_t n) {
  config.validate(n);
  const auto log_sizes = log_size_probabilities(config, n);
  std::vector<double> size_weights(n + 1);
  for (std::size_t t = 0; t <= n; ++t) size_weights[t] = std::exp(log_sizes[t]);

  auto make = [&](Coalition c) {
    const std::size_t t = c.size();
    const double lp = log_sizes[t] - log_binomial(n, t);
    return CoalitionSample{std::move(c), std::exp(lp), lp};
  };

  std::vector<CoalitionSample> out;
  out.reserve(config.budget);
  std::unordered_set<Coalition, CoalitionHash> seen;
  std::vector<double> taken(n + 1, 0.0);
  std::vector<double> capacity(n + 1);
  for (std::size_t t = 0; t <= n; ++t) capacity[t] = binomial(n, t);

  auto record = [&](Coalition c) {
    if (config.without_replacement) {
      if (!seen.insert(c).second) return false;
      taken[c.size()] += 1.0;
    }
    out.push_back(make(std::move(c)));
    return true;
  };

  if (config.include_borders) {
    record(Coalition(n));
    record(Coalition::full(n));
  }

  // Exhaustive budget: the result is the whole power set, no need to draw.
  if (config.without_replacement && n < 63 &&
      static_cast<double>(config.budget) == std::ldexp(1.0, static_cast<int>(n))) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
      record(Coalition::from_mask(n, mask));
    return out;
  }

  Rng rng(config.seed);
  while (out.size() < config.budget) {
    // Draw a size, skipping strata that are already exhausted.
    double total = 0.0;
    for (std::size_t t = 0; t <= n; ++t) {
      const bool exhausted = config.without_replacement && taken[t] >= capacity[t];
      if (!exhausted) total += size_weights[t];
    }
    double u = rng.uniform01() * total;
    std::size_t t = n + 1;
    for (std::size_t cand = 0; cand <= n; ++cand) {
      const bool exhausted = config.without_replacement && taken[cand] >= capacity[cand];
      if (exhausted || size_weights[cand] == 0.0) continue;
      t = cand;
      if (u < size_weights[cand]) break;
      u -= size_weights[cand];
    }
    if (t > n) throw PreconditionError("sampling support exhausted before reaching the budget");
    record(random_subset(n, t, rng));
  }
  return out;
}

}  // namespace proxyshap

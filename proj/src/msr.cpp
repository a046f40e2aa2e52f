#include "proxyshap/msr.hpp"

#include <cmath>
#include <string>

#include "proxyshap/errors.hpp"
#include "proxyshap/numeric.hpp"
#include "proxyshap/parallel.hpp"

namespace proxyshap {

namespace {

// log p^s_j(n) for j = 0..n-s, per order s.
std::vector<std::vector<double>> log_p_rows(const IndexSpec& index, std::size_t n, std::size_t max_s) {
  std::vector<std::vector<double>> rows(max_s + 1);
  for (std::size_t s = 1; s <= max_s; ++s) {
    rows[s].resize(n - s + 1);
    for (std::size_t j = 0; j + s <= n; ++j) rows[s][j] = log_p_weight(index, n, s, j);
  }
  return rows;
}

void require_msr_index(const IndexSpec& index) {
  index.validate();
  if (!has_p_weights(index))
    throw PreconditionError("MSR needs coalition weights p; " + std::string(to_string(index.family)) +
                            " has none");
}

}  // namespace

InteractionVector msr_estimate(std::span<const EvaluatedSample> samples, const IndexSpec& index,
                               std::span<const Coalition> targets, Provenance provenance) {
  require_msr_index(index);
  if (samples.empty()) throw PreconditionError("MSR needs at least one sample");
  const std::size_t n = samples.front().coalition.width();
  for (const auto& sample : samples) {
    if (sample.coalition.width() != n) throw PreconditionError("sample widths differ");
    if (!(sample.log_probability > kNegInf) || std::isnan(sample.log_probability))
      throw PreconditionError("MSR sample " + sample.coalition.to_string() + " has zero probability");
  }
  std::size_t max_s = 0;
  for (const auto& S : targets) {
    if (S.width() != n) throw PreconditionError("target width does not match the samples");
    validate_target_order(index, n, S.size());
    max_s = std::max(max_s, S.size());
  }
  const auto rows = log_p_rows(index, n, max_s);
  const double m = static_cast<double>(samples.size());

  std::vector<double> results(targets.size(), 0.0);
  parallel_for(targets.size(), [&](std::size_t i) {
    const Coalition& S = targets[i];
    const std::size_t s = S.size();
    CompensatedSum sum;
    for (const auto& sample : samples) {
      if (sample.value == 0.0) continue;
      const std::size_t u = S.intersection_size(sample.coalition);
      const double lp = rows[s][sample.coalition.size() - u];
      if (lp == kNegInf) continue;
      const double weight = std::exp(lp - sample.log_probability);
      sum.add((s - u) % 2 == 0 ? sample.value * weight : -sample.value * weight);
    }
    results[i] = sum.value() / m;
  });

  InteractionVector out(index, n);
  for (std::size_t i = 0; i < targets.size(); ++i) out.add(targets[i], results[i], provenance);
  return out;
}

ResidualGame::ResidualGame(std::size_t n, Table residuals) : Game(n), residuals_(std::move(residuals)) {
  for (const auto& [coalition, r] : residuals_)
    if (coalition.width() != n) throw PreconditionError("residual coalition width mismatch");
}

ResidualGame ResidualGame::from_samples(std::size_t n, std::span<const EvaluatedSample> samples,
                                        const std::function<double(const Coalition&)>& proxy) {
  Table table;
  for (const auto& sample : samples) table[sample.coalition] = sample.value - proxy(sample.coalition);
  return ResidualGame(n, std::move(table));
}

double ResidualGame::value(const Coalition& coalition) const {
  auto it = residuals_.find(coalition);
  if (it == residuals_.end())
    throw MissingCoalitionError("residual game was not recorded on " + coalition.to_string());
  return it->second;
}

double variance_log_probability(const SamplerConfig& scheme, const IndexSpec& index, std::size_t n,
                                const Coalition& target, const Coalition& coalition) {
  if (scheme.scheme != SamplingScheme::proportional) return log_scheme_probability(scheme, n, coalition);
  const std::size_t s = target.size();
  const std::size_t outside = coalition.size() - target.intersection_size(coalition);
  return log_p_weight(index, n, s, outside) - static_cast<double>(s) * std::log(2.0);
}

double variance_exact(const Game& game, const IndexSpec& index, const Coalition& target,
                      const SamplerConfig& scheme, std::size_t cap) {
  require_msr_index(index);
  const std::size_t n = game.players();
  if (target.width() != n) throw PreconditionError("target width does not match the game");
  validate_target_order(index, n, target.size());
  const auto values = tabulate(game, cap);
  const std::size_t s = target.size();

  CompensatedSum second, first;
  for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
    const double v = values[mask];
    const Coalition T = Coalition::from_mask(n, mask);
    const std::size_t u = target.intersection_size(T);
    const double lp = log_p_weight(index, n, s, T.size() - u);
    if (lp == kNegInf || v == 0.0) continue;
    const double lP = variance_log_probability(scheme, index, n, target, T);
    if (lP == kNegInf) throw PreconditionError("scheme gives zero probability to a weighted coalition");
    const double w = std::exp(lp);
    first.add((s - u) % 2 == 0 ? v * w : -v * w);
    second.add(v * v * std::exp(2.0 * lp - lP));
  }
  const double phi = first.value();
  return second.value() - phi * phi;
}

double gamma_brute(const IndexSpec& index, std::size_t n, std::size_t s, const SamplerConfig& scheme) {
  require_msr_index(index);
  validate_target_order(index, n, s);
  if (n > kDefaultEnumerationCap) throw CapacityError("brute Γ enumerates 2^n coalitions; n too large");
  std::vector<std::size_t> members(s);
  for (std::size_t i = 0; i < s; ++i) members[i] = i;
  const Coalition target = Coalition::from_members(n, members);

  CompensatedSum sum;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const Coalition T = Coalition::from_mask(n, mask);
    const std::size_t u = target.intersection_size(T);
    const double lp = log_p_weight(index, n, s, T.size() - u);
    if (lp == kNegInf) continue;
    sum.add(std::exp(2.0 * lp - variance_log_probability(scheme, index, n, target, T)));
  }
  return sum.value();
}

std::optional<double> gamma_closed(const IndexSpec& index, std::size_t n, std::size_t s,
                                   const SamplerConfig& scheme) {
  require_msr_index(index);
  validate_target_order(index, n, s);
  switch (scheme.scheme) {
    case SamplingScheme::proportional:
      return std::ldexp(1.0, 2 * static_cast<int>(s));
    case SamplingScheme::leverage:
      if (is_banzhaf_family(index.family) && index.banzhaf_w == 0.5) {
        return std::ldexp(static_cast<double>(n + 1) * binomial(2 * n, n), -2 * static_cast<int>(n - s));
      }
      if (is_shapley_family(index.family) && s == 1) {
        return 2.0 * static_cast<double>(n + 1) * harmonic_number(n) / static_cast<double>(n);
      }
      return std::nullopt;
    case SamplingScheme::uniform:
      return std::nullopt;
  }
  return std::nullopt;
}

bool should_adjust(std::size_t n, std::size_t k, std::size_t budget, double constant) {
  if (k < 1) throw PreconditionError("should_adjust requires k >= 1");
  if (n < 30) return true;
  return static_cast<double>(budget) >= constant * std::pow(static_cast<double>(n), static_cast<double>(k - 1));
}

}  // namespace proxyshap

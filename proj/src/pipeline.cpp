#include "proxyshap/pipeline.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "json.hpp"
#include "proxyshap/csv.hpp"
#include "proxyshap/errors.hpp"
#include "proxyshap/interventional.hpp"
#include "proxyshap/numeric.hpp"
#include "proxyshap/parallel.hpp"
#include "proxyshap/trees.hpp"

namespace proxyshap {

std::string_view to_string(ProxyKind kind) { return kind == ProxyKind::tree ? "tree" : "linear"; }

ProxyKind parse_proxy_kind(std::string_view name) {
  if (name == "tree") return ProxyKind::tree;
  if (name == "linear") return ProxyKind::linear;
  throw PreconditionError("unknown proxy '" + std::string(name) + "' (expected tree or linear)");
}

std::string_view to_string(AdjustMode mode) {
  switch (mode) {
    case AdjustMode::automatic: return "auto";
    case AdjustMode::on: return "on";
    case AdjustMode::off: return "off";
  }
  return "?";
}

AdjustMode parse_adjust_mode(std::string_view name) {
  if (name == "auto") return AdjustMode::automatic;
  if (name == "on") return AdjustMode::on;
  if (name == "off") return AdjustMode::off;
  throw PreconditionError("unknown adjust mode '" + std::string(name) + "' (expected auto, on or off)");
}

std::vector<Coalition> resolve_targets(const PipelineConfig& config, std::size_t n) {
  if (!config.targets.empty()) return config.targets;
  return default_targets(config.index, n);
}

bool resolve_adjust(const PipelineConfig& config, std::size_t n, std::size_t max_target_order) {
  switch (config.adjust) {
    case AdjustMode::off: return false;
    case AdjustMode::on:
      if (!has_p_weights(config.index))
        throw PreconditionError("adjust=on needs coalition weights p; " +
                                std::string(to_string(config.index.family)) + " has none");
      return true;
    case AdjustMode::automatic:
      return has_p_weights(config.index) &&
             should_adjust(n, std::max<std::size_t>(1, max_target_order), config.sampler.budget,
                           config.adjust_constant);
  }
  return false;
}

PipelineResult run_proxyshap(const Game& game, const PipelineConfig& config) {
  config.index.validate();
  const std::size_t n = game.players();
  const auto targets = resolve_targets(config, n);
  if (targets.empty()) throw PreconditionError("no targets to estimate");
  std::size_t max_order = 0;
  for (const auto& S : targets) {
    if (S.width() != n) throw PreconditionError("target width does not match the game");
    validate_target_order(config.index, n, S.size());
    max_order = std::max(max_order, S.size());
  }
  const bool adjust = resolve_adjust(config, n, max_order);

  SamplerConfig sampler = config.sampler;
  sampler.seed = mix_seed(config.seed, 0);
  if (sampler.scheme == SamplingScheme::proportional) {
    sampler.proportional_index = config.index;
    sampler.proportional_order = max_order;
  }
  const auto drawn = sample(sampler, n);

  CountingGame counter(game);
  std::vector<EvaluatedSample> samples(drawn.size());
  parallel_for(drawn.size(), [&](std::size_t i) {
    samples[i] = {drawn[i].coalition, drawn[i].log_probability, counter.value(drawn[i].coalition)};
  });
  std::vector<LabeledCoalition> data;
  data.reserve(samples.size());
  for (const auto& s : samples) data.push_back({s.coalition, s.value});

  const Provenance proxy_tag = adjust ? Provenance::proxy_msr : Provenance::proxy;
  std::optional<InteractionVector> proxy_part;
  std::function<double(const Coalition&)> proxy_predict;
  double training_mse = 0.0;
  std::shared_ptr<TreeEnsemble> ensemble;
  std::shared_ptr<LinearProxy> linear;

  if (config.proxy == ProxyKind::tree) {
    GbtConfig gbt = config.gbt;
    gbt.seed = mix_seed(config.seed, 1);
    GbtTrainingReport report;
    ensemble = std::make_shared<TreeEnsemble>(fit_gbt(data, gbt, &report));
    training_mse = report.final_mse();
    proxy_part = extract_tree_interactions(*ensemble, config.index, targets, LambdaRoute::closed, Provenance::proxy);
    proxy_predict = [ensemble](const Coalition& T) { return predict(*ensemble, T); };
  } else {
    const std::size_t order = config.linear_order == 0 ? max_order : config.linear_order;
    double basis_size = 1.0;
    for (std::size_t j = 1; j <= std::min(order, n); ++j) basis_size += binomial(n, j);
    if (basis_size > static_cast<double>(config.linear_basis_limit))
      throw CapacityError("linear basis of order " + std::to_string(order) + " has " +
                          format_number(basis_size) + " terms, above the limit of " +
                          std::to_string(config.linear_basis_limit));
    const auto basis = linear_basis(n, order);
    linear = std::make_shared<LinearProxy>(fit_linear_proxy(data, basis));
    proxy_part = extract_linear_interactions(*linear, config.index, targets, Provenance::proxy);
    proxy_predict = [linear](const Coalition& T) { return linear->predict(T); };
    CompensatedSum sse;
    for (const auto& row : data) {
      const double e = row.value - linear->predict(row.coalition);
      sse.add(e * e);
    }
    training_mse = sse.value() / static_cast<double>(data.size());
  }

  PipelineResult result{InteractionVector(config.index, n), *proxy_part, std::nullopt, adjust, 0, training_mse};
  if (adjust) {
    const auto residual = ResidualGame::from_samples(n, samples, proxy_predict);
    std::vector<EvaluatedSample> residual_samples = samples;
    for (auto& s : residual_samples) s.value = residual.value(s.coalition);
    result.msr_part = msr_estimate(residual_samples, config.index, targets, Provenance::msr_only);
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    double v = result.proxy_part.entries()[i].value;
    if (adjust) v += result.msr_part->entries()[i].value;
    result.estimate.add(targets[i], v, proxy_tag);
  }
  result.queries = counter.count();
  return result;
}

double relative_mse(const InteractionVector& estimate, const InteractionVector& truth) {
  if (estimate.size() != truth.size())
    throw PreconditionError("relative_mse: estimate and truth hold different target sets");
  CompensatedSum num, den;
  for (const auto& entry : truth.entries()) {
    const auto est = estimate.find(entry.subset);
    if (!est) throw PreconditionError("relative_mse: target " + entry.subset.to_string() + " missing from estimate");
    const double d = *est - entry.value;
    num.add(d * d);
    den.add(entry.value * entry.value);
  }
  if (den.value() == 0.0) return num.value() == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num.value() / den.value();
}

InteractionVector ground_truth(const Game& game, const IndexSpec& index, std::span<const Coalition> targets,
                               std::size_t cap) {
  if (game.players() <= cap) return exact_interactions(game, index, targets, ExactRoute::automatic, cap);
  if (dynamic_cast<const MoebiusGame*>(&game))
    return exact_interactions(game, index, targets, ExactRoute::moebius_sparse, cap);
  if (const auto* tree = dynamic_cast<const TreeGame*>(&game))
    return extract_tree_interactions(tree->ensemble(), index, targets);
  if (const auto* interventional = dynamic_cast<const InterventionalGame*>(&game))
    return extract_tree_interactions(interventional->coalition_ensemble(), index, targets);
  throw CapacityError("ground truth for a " + std::string(to_string(game.kind())) + " game with n = " +
                      std::to_string(game.players()) + " needs enumeration beyond the cap of " +
                      std::to_string(cap));
}

std::string SweepResult::rows_csv() const {
  std::string out = "config,budget,rep,relative_mse\n";
  for (const auto& row : rows) {
    out += row.config + ',' + std::to_string(row.budget) + ',' + std::to_string(row.rep) + ',' +
           format_number(row.relative_mse, 12) + '\n';
  }
  return out;
}

std::string SweepResult::summary_json() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& s : summary) {
    nlohmann::ordered_json entry;
    entry["config"] = s.config;
    entry["budget"] = s.budget;
    entry["reps"] = s.reps;
    // JSON has no infinity; an unbounded error is reported as null.
    if (std::isfinite(s.mean)) entry["mean_relative_mse"] = s.mean;
    else entry["mean_relative_mse"] = nullptr;
    if (std::isfinite(s.sem)) entry["sem"] = s.sem;
    else entry["sem"] = nullptr;
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

SweepResult benchmark_sweep(const Game& game, std::span<const SweepConfig> configs,
                            std::span<const std::size_t> budgets, std::size_t repetitions, std::uint64_t seed,
                            std::size_t cap) {
  if (configs.empty() || budgets.empty() || repetitions == 0)
    throw PreconditionError("benchmark needs at least one config, budget and repetition");
  const std::size_t n = game.players();

  std::vector<InteractionVector> truths;
  for (const auto& c : configs) {
    const auto targets = resolve_targets(c.config, n);
    truths.push_back(ground_truth(game, c.config.index, targets, cap));
  }

  const std::size_t jobs = configs.size() * budgets.size() * repetitions;
  std::vector<double> errors(jobs, 0.0);
  parallel_for(jobs, [&](std::size_t job) {
    const std::size_t rep = job % repetitions;
    const std::size_t b = (job / repetitions) % budgets.size();
    const std::size_t c = job / (repetitions * budgets.size());
    PipelineConfig config = configs[c].config;
    config.sampler.budget = budgets[b];
    config.seed = mix_seed(seed, rep);
    const auto result = run_proxyshap(game, config);
    errors[job] = relative_mse(result.estimate, truths[c]);
  });

  SweepResult out;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (std::size_t b = 0; b < budgets.size(); ++b) {
      CompensatedSum sum;
      std::vector<double> values;
      for (std::size_t rep = 0; rep < repetitions; ++rep) {
        const double e = errors[(c * budgets.size() + b) * repetitions + rep];
        out.rows.push_back({configs[c].name, budgets[b], rep, e});
        values.push_back(e);
        sum.add(e);
      }
      const double mean = sum.value() / static_cast<double>(repetitions);
      double sem = 0.0;
      if (repetitions > 1) {
        CompensatedSum sq;
        for (double v : values) sq.add((v - mean) * (v - mean));
        sem = std::sqrt(sq.value() / static_cast<double>(repetitions - 1)) /
              std::sqrt(static_cast<double>(repetitions));
      }
      out.summary.push_back({configs[c].name, budgets[b], mean, sem, repetitions});
    }
  }
  return out;
}

}  // namespace proxyshap

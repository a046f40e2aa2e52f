#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "proxyshap/csv.hpp"
#include "proxyshap/errors.hpp"
#include "proxyshap/extraction.hpp"
#include "proxyshap/gbt.hpp"
#include "proxyshap/interventional.hpp"
#include "proxyshap/msr.hpp"
#include "proxyshap/parallel.hpp"
#include "proxyshap/pipeline.hpp"
#include "proxyshap/sampling.hpp"
#include "proxyshap/trees.hpp"

namespace proxyshap::cli {

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::size_t parse_count(const std::string& text, std::string_view what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw ParseError(std::string(what) + ": '" + text + "' is not a non-negative integer");
  }
}

double parse_real(const std::string& text, std::string_view what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(std::string(what) + ": '" + text + "' is not a number");
  }
}

std::shared_ptr<const TreeEnsemble> load_model(const std::string& path) {
  FlattenReport report;
  auto ensemble = std::make_shared<const TreeEnsemble>(load_ensemble(path, &report));
  if (report.unreachable > 0)
    std::cerr << "warning: dropped " << report.unreachable << " unreachable leaves from " << path << '\n';
  return ensemble;
}

}  // namespace

GamePtr make_game(std::string_view spec, std::optional<std::size_t> n, std::size_t background_limit) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("game spec '" + std::string(spec) + "' must look like kind:detail");
  const std::string kind(spec.substr(0, colon));
  const std::string detail(spec.substr(colon + 1));

  if (kind == "constant") {
    if (!n) throw PreconditionError("constant games need --n");
    return std::make_shared<ConstantGame>(*n, parse_real(detail, "constant value"));
  }
  if (kind == "unanimity") return std::make_shared<UnanimityGame>(Coalition::parse(detail));
  if (kind == "moebius" || kind == "table") {
    const auto rows = read_coalition_values(detail);
    if (rows.empty() && !n) throw ParseError(detail + " has no rows; pass --n to fix the width");
    const std::size_t width = rows.empty() ? *n : rows.front().coalition.width();
    if (n && *n != width) throw PreconditionError("--n disagrees with the coalition width in " + detail);
    if (kind == "moebius") {
      MoebiusGame::Coefficients coefficients;
      for (const auto& row : rows)
        if (!coefficients.emplace(row.coalition, row.value).second)
          throw ParseError(detail + ": duplicate coalition " + row.coalition.to_string());
      return std::make_shared<MoebiusGame>(width, std::move(coefficients));
    }
    TableGame::Table table;
    for (const auto& row : rows)
      if (!table.emplace(row.coalition, row.value).second)
        throw ParseError(detail + ": duplicate coalition " + row.coalition.to_string());
    return std::make_shared<TableGame>(width, std::move(table));
  }
  if (kind == "tree") {
    auto model = load_model(detail);
    if (n && *n != model->n) throw PreconditionError("--n disagrees with the model's feature count");
    return std::make_shared<TreeGame>(std::move(model));
  }
  if (kind == "interventional") {
    const auto parts = split(detail, ',');
    if (parts.size() != 3) throw ParseError("interventional spec is interventional:model.json,x.csv,background.csv");
    auto model = load_model(parts[0]);
    const auto x_rows = read_numeric_rows(parts[1]);
    if (x_rows.empty()) throw ParseError(parts[1] + " holds no explained point");
    auto background = read_numeric_rows(parts[2]);
    if (background.size() > background_limit) background.resize(background_limit);
    return std::make_shared<InterventionalGame>(std::move(model), x_rows.front(), std::move(background));
  }
  if (kind == "random") {
    const auto parts = split(detail, ',');
    if (parts.size() != 4) throw ParseError("random spec is random:n,terms,max_order,seed");
    return std::make_shared<MoebiusGame>(random_sparse_moebius(parse_count(parts[0], "n"),
                                                               parse_count(parts[1], "terms"),
                                                               parse_count(parts[2], "max_order"),
                                                               parse_count(parts[3], "seed")));
  }
  throw ParseError("unknown game kind '" + kind + "'");
}

namespace {

struct Options {
  std::string index = "sii";
  std::size_t order = 1;
  double banzhaf_w = 0.5;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out = "-";

  std::string game;
  std::optional<std::size_t> n;
  std::string targets_file;
  std::size_t cap = kDefaultEnumerationCap;
  std::string route = "auto";
  std::size_t background = kDefaultBackgroundSize;

  std::string model;
  bool all_targets = false;
  bool general_lambda = false;
  bool timing = false;

  std::string data;
  std::string sampler = "leverage";
  std::size_t budget = 0;
  bool with_replacement = false;
  bool no_borders = false;
  std::string preset = "default";
  std::optional<std::size_t> n_estimators;
  std::optional<std::size_t> max_depth;
  std::optional<double> learning_rate;
  std::optional<double> reg_lambda;

  std::string proxy = "tree";
  std::string adjust = "auto";
  double adjust_constant = kDefaultAdjustConstant;
  std::size_t linear_order = 0;

  std::string budgets;
  std::size_t reps = 1;
  std::string configs = "tree:auto";

  std::string manifest;
};

struct RunRecord {
  Json config = Json::object();
  std::optional<std::size_t> queries;
};

IndexSpec make_index(const Options& o) {
  IndexSpec index;
  index.family = parse_family(o.index);
  index.banzhaf_w = o.banzhaf_w;
  index.max_order = o.order;
  index.validate();
  return index;
}

Json index_json(const IndexSpec& index) {
  return Json{{"family", std::string(to_string(index.family))},
              {"order", index.max_order},
              {"banzhaf_w", index.banzhaf_w}};
}

GbtConfig make_gbt(const Options& o) {
  GbtConfig gbt = GbtConfig::preset(o.preset);
  if (o.n_estimators) gbt.n_estimators = *o.n_estimators;
  if (o.max_depth) gbt.max_depth = *o.max_depth;
  if (o.learning_rate) gbt.learning_rate = *o.learning_rate;
  if (o.reg_lambda) gbt.reg_lambda = *o.reg_lambda;
  gbt.validate();
  return gbt;
}

Json gbt_json(const GbtConfig& g) {
  return Json{{"n_estimators", g.n_estimators}, {"max_depth", g.max_depth},
              {"learning_rate", g.learning_rate}, {"reg_lambda", g.reg_lambda},
              {"min_child_weight", g.min_child_weight}, {"subsample", g.subsample},
              {"colsample", g.colsample}};
}

SamplerConfig make_sampler(const Options& o) {
  SamplerConfig s;
  s.scheme = parse_scheme(o.sampler);
  s.budget = o.budget;
  s.without_replacement = !o.with_replacement;
  s.include_borders = !o.no_borders;
  return s;
}

Json sampler_json(const SamplerConfig& s) {
  return Json{{"scheme", std::string(to_string(s.scheme))},
              {"budget", s.budget},
              {"without_replacement", s.without_replacement},
              {"include_borders", s.include_borders}};
}

void emit(const Options& o, std::string_view content) {
  if (o.out == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    write_text(o.out, content);
  }
}

std::vector<Coalition> explicit_targets(const Options& o, std::size_t n) {
  if (o.targets_file.empty()) return {};
  auto targets = read_targets(o.targets_file, n);
  if (targets.empty()) throw PreconditionError(o.targets_file + " lists no targets");
  return targets;
}

void cmd_exact(const Options& o, RunRecord& record) {
  const auto game = make_game(o.game, o.n, o.background);
  const auto index = make_index(o);
  auto targets = explicit_targets(o, game->players());
  if (targets.empty()) targets = default_targets(index, game->players());
  ExactRoute route = ExactRoute::automatic;
  if (o.route == "enumeration") route = ExactRoute::enumeration;
  else if (o.route == "moebius") route = ExactRoute::moebius_brute;
  else if (o.route != "auto") throw PreconditionError("unknown route '" + o.route + "'");

  const auto result = exact_interactions(*game, index, targets, route, o.cap);
  emit(o, result.to_csv());
  record.config = Json{{"game", o.game}, {"n", game->players()}, {"index", index_json(index)},
                       {"route", o.route}, {"cap", o.cap}, {"targets", targets.size()}};
}

void cmd_tree_extract(const Options& o, RunRecord& record) {
  const auto ensemble = load_model(o.model);
  const auto index = make_index(o);
  auto targets = explicit_targets(o, ensemble->n);
  std::string target_mode = "file";
  if (targets.empty()) {
    const std::size_t k = is_value_family(index.family) ? 1 : index.max_order;
    if (o.all_targets) {
      targets = default_targets(index, ensemble->n);
      target_mode = "all";
    } else {
      targets = active_targets(*ensemble, k);
      target_mode = "active";
    }
  }
  const auto route = o.general_lambda ? LambdaRoute::general : LambdaRoute::closed;
  ExtractionStats stats;
  const auto start = std::chrono::steady_clock::now();
  const auto result = extract_tree_interactions(*ensemble, index, targets, route, Provenance::exact, &stats);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(o, result.to_csv());
  if (o.timing) {
    std::fprintf(stderr, "trees=%zu leaves=%zu targets=%zu leaves_visited=%zu leaves_contributing=%zu wall_seconds=%.6f\n",
                 ensemble->trees.size(), ensemble->leaf_count(), targets.size(), stats.leaves_visited,
                 stats.leaves_contributing, seconds);
  }
  record.config = Json{{"model", o.model}, {"n", ensemble->n}, {"index", index_json(index)},
                       {"lambda", o.general_lambda ? "general" : "closed"}, {"targets", target_mode},
                       {"target_count", targets.size()}};
}

std::vector<LabeledCoalition> training_data(const Options& o, const Game* game, std::size_t* queries) {
  if (!o.data.empty()) return read_coalition_values(o.data);
  if (!game) throw PreconditionError("train-proxy needs --data or --game");
  SamplerConfig sampler = make_sampler(o);
  sampler.seed = mix_seed(o.seed, 0);
  if (sampler.scheme == SamplingScheme::proportional) {
    sampler.proportional_index = make_index(o);
    sampler.proportional_order = o.order;
  }
  CountingGame counter(*game);
  std::vector<LabeledCoalition> rows;
  for (const auto& s : sample(sampler, game->players())) rows.push_back({s.coalition, counter.value(s.coalition)});
  *queries = counter.count();
  return rows;
}

void cmd_train_proxy(const Options& o, RunRecord& record) {
  GamePtr game;
  if (o.data.empty()) game = make_game(o.game, o.n, o.background);
  std::size_t queries = 0;
  const auto rows = training_data(o, game.get(), &queries);
  if (rows.empty()) throw PreconditionError("no training rows");
  GbtConfig gbt = make_gbt(o);
  gbt.seed = mix_seed(o.seed, 1);
  GbtTrainingReport report;
  const auto ensemble = fit_gbt(rows, gbt, &report);
  emit(o, serialize_ensemble(ensemble));
  std::fprintf(stderr, "rows=%zu trees=%zu training_mse=%.6g\n", rows.size(), ensemble.trees.size(),
               report.final_mse());
  record.config = Json{{"data", o.data.empty() ? Json(nullptr) : Json(o.data)},
                       {"game", o.game.empty() ? Json(nullptr) : Json(o.game)},
                       {"rows", rows.size()},
                       {"preset", o.preset},
                       {"gbt", gbt_json(gbt)},
                       {"training_mse", report.final_mse()}};
  if (game) {
    record.config["sampler"] = sampler_json(make_sampler(o));
    record.queries = queries;
  }
}

PipelineConfig make_pipeline(const Options& o, std::size_t n) {
  PipelineConfig config;
  config.index = make_index(o);
  config.proxy = parse_proxy_kind(o.proxy);
  config.gbt = make_gbt(o);
  config.linear_order = o.linear_order;
  config.sampler = make_sampler(o);
  config.adjust = parse_adjust_mode(o.adjust);
  config.adjust_constant = o.adjust_constant;
  config.targets = explicit_targets(o, n);
  config.seed = o.seed;
  return config;
}

void cmd_estimate(const Options& o, RunRecord& record) {
  const auto game = make_game(o.game, o.n, o.background);
  const std::size_t n = game->players();
  const auto config = make_pipeline(o, n);
  const auto result = run_proxyshap(*game, config);
  emit(o, result.estimate.to_csv(true));
  record.config = Json{{"game", o.game},
                       {"n", n},
                       {"index", index_json(config.index)},
                       {"proxy", std::string(to_string(config.proxy))},
                       {"gbt", gbt_json(config.gbt)},
                       {"linear_order", config.linear_order},
                       {"sampler", sampler_json(config.sampler)},
                       {"adjust_mode", std::string(to_string(config.adjust))},
                       {"adjust_constant", config.adjust_constant},
                       {"adjust", result.adjusted},
                       {"targets", result.estimate.size()},
                       {"training_mse", result.training_mse}};
  record.queries = result.queries;
}

void cmd_benchmark(const Options& o, RunRecord& record) {
  const auto game = make_game(o.game, o.n, o.background);
  const std::size_t n = game->players();
  std::vector<std::size_t> budgets;
  for (const auto& b : split(o.budgets, ',')) budgets.push_back(parse_count(b, "budget"));

  std::vector<SweepConfig> configs;
  Json config_json = Json::array();
  for (const auto& item : split(o.configs, ',')) {
    const auto parts = split(item, ':');
    if (parts.empty() || parts.size() > 3) throw ParseError("config '" + item + "' must be proxy[:adjust[:preset]]");
    Options local = o;
    local.proxy = parts[0];
    if (parts.size() > 1) local.adjust = parts[1];
    if (parts.size() > 2) local.preset = parts[2];
    local.budget = budgets.front();
    configs.push_back({item, make_pipeline(local, n)});
    config_json.push_back(Json{{"name", item}, {"proxy", local.proxy}, {"adjust", local.adjust},
                               {"gbt", gbt_json(configs.back().config.gbt)}});
  }
  const auto sweep = benchmark_sweep(*game, configs, budgets, o.reps, o.seed, o.cap);
  emit(o, sweep.rows_csv());
  if (o.out != "-") write_text(o.out + ".summary.json", sweep.summary_json());

  Json budget_json = Json::array();
  for (auto b : budgets) budget_json.push_back(b);
  record.config = Json{{"game", o.game}, {"n", n}, {"index", index_json(make_index(o))},
                       {"sampler", o.sampler}, {"without_replacement", !o.with_replacement},
                       {"budgets", budget_json}, {"reps", o.reps}, {"configs", config_json}};
  std::size_t total = 0;
  for (auto b : budgets) total += b * o.reps * configs.size();
  record.queries = total;
}

void cmd_gamma(const Options& o, RunRecord& record) {
  if (!o.n) throw PreconditionError("gamma needs --n");
  const auto index = make_index(o);
  SamplerConfig scheme;
  scheme.scheme = parse_scheme(o.sampler);
  scheme.proportional_index = index;
  scheme.proportional_order = o.order;
  const std::size_t n = *o.n;
  const std::size_t s = o.order;

  std::string brute = "NA";
  if (n <= o.cap) brute = format_number(gamma_brute(index, n, s, scheme), 15);
  const auto closed = gamma_closed(index, n, s, scheme);
  std::string out = "index,scheme,n,s,brute,closed\n";
  out += o.index + ',' + o.sampler + ',' + std::to_string(n) + ',' + std::to_string(s) + ',' + brute + ',' +
         (closed ? format_number(*closed, 15) : std::string("NA")) + '\n';
  emit(o, out);
  record.config = Json{{"index", index_json(index)}, {"scheme", o.sampler}, {"n", n}, {"s", s}};
}

void write_manifest(const Options& o, const std::string& command, const std::vector<std::string>& args,
                    const RunRecord& record, double seconds) {
  if (o.out == "-") return;
  Json doc;
  doc["tool"] = "proxyshap";
  doc["version"] = std::string(kVersion);
  doc["command"] = command;
  doc["argv"] = args;
  doc["config"] = record.config;
  doc["seed"] = o.seed;
  doc["threads"] = o.threads;
  doc["wall_time_seconds"] = seconds;
  doc["queries"] = record.queries ? Json(*record.queries) : Json(nullptr);
  write_text(o.out + ".manifest.json", doc.dump(2) + "\n");
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--index", o.index, "sv, sii, bv, bii, chii, moebius, fsii, fbii")->capture_default_str();
  cmd->add_option("--order", o.order, "maximal interaction order k")->capture_default_str();
  cmd->add_option("--banzhaf-w", o.banzhaf_w, "Banzhaf weight w in (0,1)")->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker cap (0 = all cores)")->capture_default_str();
  cmd->add_option("--out", o.out, "output file (- = stdout)")->capture_default_str();
}

void add_game(CLI::App* cmd, Options& o, bool required) {
  auto* opt = cmd->add_option("--game", o.game, "game spec kind:detail");
  if (required) opt->required();
  cmd->add_option("--n", o.n, "player count (constant games)");
  cmd->add_option("--background", o.background, "background rows used by interventional games")
      ->capture_default_str();
}

void add_sampling(CLI::App* cmd, Options& o) {
  cmd->add_option("--sampler", o.sampler, "leverage, proportional or uniform")->capture_default_str();
  cmd->add_option("--budget", o.budget, "number of coalitions to evaluate");
  cmd->add_flag("--with-replacement", o.with_replacement, "draw i.i.d. instead of distinct coalitions");
  cmd->add_flag("--no-borders", o.no_borders, "do not force the empty and grand coalitions");
}

void add_gbt(CLI::App* cmd, Options& o) {
  cmd->add_option("--preset", o.preset, "default or hpo-informed")->capture_default_str();
  cmd->add_option("--n-estimators", o.n_estimators, "override the preset");
  cmd->add_option("--max-depth", o.max_depth, "override the preset");
  cmd->add_option("--learning-rate", o.learning_rate, "override the preset");
  cmd->add_option("--reg-lambda", o.reg_lambda, "override the preset");
}

void add_pipeline(CLI::App* cmd, Options& o) {
  add_sampling(cmd, o);
  add_gbt(cmd, o);
  cmd->add_option("--proxy", o.proxy, "tree or linear")->capture_default_str();
  cmd->add_option("--adjust", o.adjust, "auto, on or off")->capture_default_str();
  cmd->add_option("--adjust-constant", o.adjust_constant, "C in m >= C n^(k-1)")->capture_default_str();
  cmd->add_option("--linear-order", o.linear_order, "linear basis order (0 = target order)")
      ->capture_default_str();
  cmd->add_option("--targets", o.targets_file, "file with one 0/1 target per line");
  cmd->add_option("--cap", o.cap, "largest n for brute-force enumeration")->capture_default_str();
}

int replay(const Options& o) {
  const Json doc = Json::parse(read_text(o.manifest), nullptr, false);
  if (doc.is_discarded() || !doc.contains("argv") || !doc["argv"].is_array())
    throw ParseError(o.manifest + " is not a run manifest");
  std::vector<std::string> args{"proxyshap"};
  for (const auto& a : doc["argv"]) args.push_back(a.get<std::string>());
  if (o.out != "-") {
    bool replaced = false;
    for (std::size_t i = 1; i + 1 < args.size(); ++i) {
      if (args[i] == "--out") {
        args[i + 1] = o.out;
        replaced = true;
      }
    }
    if (!replaced) {
      args.push_back("--out");
      args.push_back(o.out);
    }
  }
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Proxy-based estimation and exact extraction of Shapley-type interaction indices"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;

  auto* exact = app.add_subcommand("exact", "exact interactions by enumeration");
  add_common(exact, o);
  add_game(exact, o, true);
  exact->add_option("--targets", o.targets_file, "file with one 0/1 target per line");
  exact->add_option("--route", o.route, "auto, enumeration or moebius")->capture_default_str();
  exact->add_option("--cap", o.cap, "largest n for enumeration")->capture_default_str();

  auto* extract = app.add_subcommand("tree-extract", "exact interactions of a tree ensemble");
  add_common(extract, o);
  extract->add_option("--model", o.model, "interchange JSON model")->required();
  extract->add_option("--targets", o.targets_file, "file with one 0/1 target per line");
  extract->add_flag("--all-targets", o.all_targets, "report every subset of order 1..k");
  extract->add_flag("--general-lambda", o.general_lambda, "use the alternating-sum λ instead of closed forms");
  extract->add_flag("--timing", o.timing, "print leaf visits and wall time to stderr");

  auto* train = app.add_subcommand("train-proxy", "fit a boosted-tree proxy on coalition data");
  add_common(train, o);
  add_game(train, o, false);
  add_sampling(train, o);
  add_gbt(train, o);
  train->add_option("--data", o.data, "coalition,value CSV");

  auto* estimate = app.add_subcommand("estimate", "proxy estimate with optional MSR adjustment");
  add_common(estimate, o);
  add_game(estimate, o, true);
  add_pipeline(estimate, o);

  auto* bench = app.add_subcommand("benchmark", "relative MSE sweep against the exact truth");
  add_common(bench, o);
  add_game(bench, o, true);
  add_pipeline(bench, o);
  bench->add_option("--budgets", o.budgets, "comma-separated budgets")->required();
  bench->add_option("--reps", o.reps, "repetitions per budget")->capture_default_str();
  bench->add_option("--configs", o.configs, "comma-separated proxy[:adjust[:preset]]")->capture_default_str();

  auto* gamma = app.add_subcommand("gamma", "variance factor Γ, brute force and closed form");
  add_common(gamma, o);
  gamma->add_option("--scheme,--sampler", o.sampler, "leverage, proportional or uniform")->capture_default_str();
  gamma->add_option("--n", o.n, "player count")->required();
  gamma->add_option("--cap", o.cap, "largest n for the brute sum")->capture_default_str();

  auto* replay_cmd = app.add_subcommand("replay", "re-run a command from its manifest");
  replay_cmd->add_option("--manifest", o.manifest, "manifest written next to an output")->required();
  replay_cmd->add_option("--out", o.out, "write to this path instead of the recorded one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (replay_cmd->parsed()) return replay(o);
    set_max_threads(o.threads);

    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    RunRecord record;
    const auto start = std::chrono::steady_clock::now();
    std::string command;
    if (exact->parsed()) { command = "exact"; cmd_exact(o, record); }
    else if (extract->parsed()) { command = "tree-extract"; cmd_tree_extract(o, record); }
    else if (train->parsed()) { command = "train-proxy"; cmd_train_proxy(o, record); }
    else if (estimate->parsed()) { command = "estimate"; cmd_estimate(o, record); }
    else if (bench->parsed()) { command = "benchmark"; cmd_benchmark(o, record); }
    else if (gamma->parsed()) { command = "gamma"; cmd_gamma(o, record); }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(o, command, args, record, seconds);
    return 0;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const MissingCoalitionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace proxyshap::cli

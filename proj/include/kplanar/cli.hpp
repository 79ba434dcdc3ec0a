#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kplanar/bounds.hpp"
#include "kplanar/decompose.hpp"
#include "kplanar/drawing.hpp"
#include "kplanar/error.hpp"
#include "kplanar/generators.hpp"
#include "kplanar/io.hpp"
#include "kplanar/montecarlo.hpp"
#include "kplanar/oracle.hpp"
#include "kplanar/svg.hpp"
#include "kplanar/weights.hpp"

namespace kplanar::cli {

using io::Json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUncertified = 2;

struct RunConfig {
  std::string subcommand;
  std::string input;
  int k = 2;
  double epsilon = 0.1;
  std::string weights = "optimal";  ///< optimal | uniform | explicit list
  std::uint64_t seed = 1;
  std::int64_t trials = 1000;
  std::int64_t budget = 10000;
  std::string out;
  std::string svg;
  std::string log_base = "natural";
  bool json = false;
  int threads = 0;

  std::string mode = "construction";      ///< decompose path
  std::string oracle_mode = "labeling";
  std::string strategy = "local";
  std::string goal = "certify";
  std::string objective = "max-g";
  EdgeId edge = 0;
  int label_u = 0;
  int label_v = 0;

  std::string family = "convex-kn";
  int n = 0;
  int d = 3;
  std::int64_t m = -1;
  std::int64_t max_degree = -1;
  std::int64_t L = -1;
  double C = -1;
  double alpha = 0;
  std::string lll_constant = "3";
};

namespace detail {

inline WeightVector resolve_weights(const RunConfig& cfg) {
  if (cfg.weights == "optimal") return optimal_weights(cfg.k);
  if (cfg.weights == "uniform") return uniform_weights(cfg.k);
  WeightVector w = parse_weights(cfg.weights);
  if (w.k() != cfg.k) {
    throw Error("--weights has " + std::to_string(w.k()) + " entries but --k is " +
                std::to_string(cfg.k));
  }
  return w;
}

inline bounds::LogBase resolve_log_base(const RunConfig& cfg) {
  return cfg.log_base == "binary" ? bounds::LogBase::binary : bounds::LogBase::natural;
}

inline Json bound_json(const bounds::BoundValue& b) {
  if (b.applies()) return *b.value;
  return Json{{"unmet", b.unmet}};
}

inline std::string number_text(const Json& v) {
  if (v.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(6) << v.get<double>();
    return s.str();
  }
  if (v.is_object() && v.contains("unmet")) return "n/a (" + v["unmet"].get<std::string>() + ")";
  return v.dump();
}

inline void print_table(std::ostream& out, const Json& rows) {
  std::size_t width = 0;
  for (auto it = rows.begin(); it != rows.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = rows.begin(); it != rows.end(); ++it) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << it.key() << number_text(*it)
        << '\n';
  }
}

inline void emit(const RunConfig& cfg, const Json& doc, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (!cfg.out.empty()) {
    io::write_file(cfg.out, text);
  } else {
    out << text;
  }
}

inline Json common_inputs(const RunConfig& cfg) {
  Json in{{"k", cfg.k}, {"eps", cfg.epsilon}, {"weights", cfg.weights}};
  if (!cfg.input.empty()) in["drawing"] = cfg.input;
  return in;
}

inline Json summary_json(const mc::MonteCarloSummary& s) {
  Json edges = Json::array();
  for (const auto& e : s.edges) {
    edges.push_back({{"edge", e.edge},
                     {"mean_load", e.mean_load},
                     {"empirical_tail", e.empirical_tail},
                     {"mcdiarmid_bound", e.bound},
                     {"slack", e.slack},
                     {"dominated", e.dominated}});
  }
  Json out{{"trials", s.trials},
           {"k", s.k},
           {"eps", s.epsilon},
           {"gamma", s.gamma},
           {"L", s.L},
           {"max_degree", s.max_degree},
           {"load_threshold", s.load_threshold},
           {"total",
            {{"mean", s.mean_total},
             {"variance", s.variance_total},
             {"min", s.min_total},
             {"max", s.max_total}}},
           {"edges", edges},
           {"tails_dominated", s.tails_dominated}};
  if (s.exact_mean) {
    out["total"]["exact_mean"] = io::to_json(*s.exact_mean);
    out["total"]["exact_mean_value"] = to_double(*s.exact_mean);
  }
  if (s.exact_variance) {
    out["total"]["exact_variance"] = io::to_json(*s.exact_variance);
    out["total"]["exact_variance_value"] = to_double(*s.exact_variance);
  }
  if (s.z_score) {
    out["total"]["z_score"] = *s.z_score;
    out["total"]["z_uses_exact_variance"] = s.z_uses_exact_variance;
  }
  return out;
}

}  // namespace detail

inline int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const Drawing d = io::load_drawing_file(cfg.input);
  const Graph& g = d.graph();
  const Graph inter = intersection_graph(d);
  const auto base = detail::resolve_log_base(cfg);
  const double alpha = g.degree_ratio();
  Json stats{{"n", g.vertex_count()},
             {"m", g.edge_count()},
             {"max_degree", g.max_degree()},
             {"C", d.total_crossings()},
             {"L", d.local_crossing_number()},
             {"intersection_max_degree", inter.max_degree()},
             {"alpha", alpha},
             {"representation",
              d.representation() == Representation::geometric ? "geometric" : "combinatorial"},
             {"adjacent_crossings", d.has_adjacent_crossings()},
             {"planar", d.total_crossings() == 0}};
  Json lower{{"crossing_lower_bound", detail::bound_json(bounds::crossing_lower_bound(g.edge_count(), g.vertex_count()))},
             {"lcr_lower_bound", detail::bound_json(bounds::lcr_lower_bound(g.edge_count(), g.vertex_count()))}};
  if (cfg.epsilon > 0 && cfg.epsilon < 1) {
    lower["beta_threshold_irregular"] = bounds::beta_threshold_irregular(cfg.epsilon, base);
  }
  if (alpha >= 1 && cfg.epsilon > 0) {
    lower["beta_threshold_regular"] =
        detail::bound_json(bounds::beta_threshold_regular(alpha, cfg.epsilon, base));
  }
  Json doc = io::envelope("analyze", detail::common_inputs(cfg), {{"stats", stats}, {"bounds", lower}}, cfg.seed);
  if (cfg.json || !cfg.out.empty()) detail::emit(cfg, doc, out);
  if (!cfg.json) {
    detail::print_table(out, stats);
    detail::print_table(out, lower);
    if (d.total_crossings() == 0) out << "note: the drawing is crossing-free (planar)\n";
  }
  return kExitOk;
}

inline int cmd_decompose(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Drawing d = io::load_drawing_file(cfg.input);
  SearchOptions options;
  options.strategy = cfg.strategy == "restart" ? ResampleStrategy::restart : ResampleStrategy::local;
  options.goal = cfg.goal == "minimize" ? SearchGoal::minimize : SearchGoal::certify;
  DecompositionResult result;
  if (cfg.mode == "construction") {
    result = decompose_lcr(d, cfg.k, cfg.epsilon, detail::resolve_weights(cfg), cfg.budget, cfg.seed, options);
  } else if (cfg.mode == "combined") {
    result = decompose_combined(d, cfg.k, cfg.epsilon, cfg.budget, cfg.seed, options);
  } else if (cfg.mode == "degree-partition") {
    result = decompose_via_degree_partition(d, cfg.k, cfg.epsilon, cfg.budget, cfg.seed, options);
  } else {
    result = decompose_by_coloring(d);
    if (result.assignment.k != cfg.k) {
      result.warnings.push_back("coloring uses " + std::to_string(result.assignment.k) +
                                " planes; --k is ignored in this mode");
    }
  }
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  Json inputs = detail::common_inputs(cfg);
  inputs["mode"] = cfg.mode;
  inputs["budget"] = cfg.budget;
  inputs["strategy"] = cfg.strategy;
  inputs["goal"] = cfg.goal;
  Json outputs{{"decomposition", io::to_json(result)}};
  if (!cfg.svg.empty()) {
    const std::string picture = svg::render_decomposition(d, result.assignment);
    const auto counts = svg::crossings_per_plane(svg::parse(picture));
    outputs["svg"] = {{"path", cfg.svg},
                      {"crossings_per_plane", counts},
                      {"matches_report", counts == result.report.plane_total}};
    io::write_file(cfg.svg, picture);
  }
  detail::emit(cfg, io::envelope("decompose", inputs, outputs, cfg.seed), out);
  return result.report.certified ? kExitOk : kExitUncertified;
}

inline int cmd_montecarlo(const RunConfig& cfg, std::ostream& out) {
  if (cfg.trials < 100) throw Error("--trials must be >= 100");
  const Drawing d = io::load_drawing_file(cfg.input);
  const auto summary = mc::run(d, detail::resolve_weights(cfg), cfg.epsilon, cfg.trials, cfg.seed, cfg.threads);
  Json inputs = detail::common_inputs(cfg);
  inputs["trials"] = cfg.trials;
  detail::emit(cfg, io::envelope("montecarlo", inputs, {{"summary", detail::summary_json(summary)}}, cfg.seed), out);
  return kExitOk;
}

inline int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  const auto base = detail::resolve_log_base(cfg);
  const double constant = cfg.lll_constant == "e" ? bounds::kLllConstantE : bounds::kLllConstant;
  const bounds::BoundValue missing = bounds::BoundValue::hypothesis_unmet("missing input");
  Json inputs{{"n", cfg.n}, {"m", cfg.m}, {"max_degree", cfg.max_degree}, {"L", cfg.L},
              {"C", cfg.C}, {"k", cfg.k}, {"eps", cfg.epsilon}, {"alpha", cfg.alpha},
              {"log_base", cfg.log_base}, {"lll_constant", cfg.lll_constant}};
  const bool have_nm = cfg.n >= 1 && cfg.m >= 0;
  const bool have_load = cfg.L >= 1 && cfg.max_degree >= 1;
  Json rows;
  rows["crossing_lower_bound"] =
      detail::bound_json(have_nm ? bounds::crossing_lower_bound(cfg.m, cfg.n) : missing);
  rows["lcr_lower_bound"] = detail::bound_json(have_nm ? bounds::lcr_lower_bound(cfg.m, cfg.n) : missing);
  if (cfg.n >= 1) {
    auto kn = bounds::kn_lower_bound(cfg.n, cfg.k);
    rows["kn_lcr_k_lower_bound"] = detail::bound_json(kn.value);
  }
  rows["kn_ratio_floor"] = bounds::kn_lower_bound(1, cfg.k).ratio_floor;
  if (cfg.epsilon > 0 && cfg.epsilon < 1) {
    rows["beta_threshold_irregular"] = bounds::beta_threshold_irregular(cfg.epsilon, base);
  } else {
    rows["beta_threshold_irregular"] = detail::bound_json(bounds::BoundValue::hypothesis_unmet("needs 0 < eps < 1"));
  }
  double alpha = cfg.alpha;
  if (alpha <= 0 && have_nm && cfg.max_degree >= 1 && cfg.m > 0) {
    alpha = static_cast<double>(cfg.max_degree) * cfg.n / (2.0 * static_cast<double>(cfg.m));
  }
  rows["beta_threshold_regular"] = detail::bound_json(
      alpha >= 1 && cfg.epsilon > 0 ? bounds::beta_threshold_regular(alpha, cfg.epsilon, base)
                                    : bounds::BoundValue::hypothesis_unmet("needs alpha >= 1 and eps > 0"));
  if (have_load) {
    const double tail = bounds::mcdiarmid_edge_tail(cfg.epsilon, cfg.L, cfg.max_degree);
    const auto dep = bounds::dependency_degree_bound(cfg.L, cfg.max_degree);
    rows["mcdiarmid_edge_tail"] = tail;
    rows["dependency_degree_bound"] = dep;
    if (cfg.m >= 0) {
      rows["lll_avoidance_probability"] = bounds::lll_avoidance_probability(cfg.L, cfg.max_degree, cfg.m);
      auto verdict = bounds::lll_check({tail, dep, cfg.m}, constant);
      rows["lll_holds"] = verdict.holds;
      rows["lll_success_lower_bound"] = verdict.success_lower_bound;
    }
  } else {
    rows["mcdiarmid_edge_tail"] = detail::bound_json(bounds::BoundValue::hypothesis_unmet("needs L >= 1 and max degree >= 1"));
  }
  if (have_load && have_nm && cfg.m > 0 && cfg.C >= 0 && cfg.epsilon > 0) {
    bounds::RegimeParams p{alpha, cfg.epsilon, cfg.k, static_cast<double>(cfg.L),
                           static_cast<double>(cfg.max_degree), static_cast<double>(cfg.m),
                           static_cast<double>(cfg.n), cfg.C};
    auto gap = bounds::combined_probability_gap(p);
    rows["gap_lhs"] = gap.lhs;
    rows["gap_rhs"] = gap.rhs;
    rows["gap_holds"] = gap.holds;
    rows["gap_crossing_condition"] = gap.crossing_condition;
  }
  Json doc = io::envelope("bounds", inputs, {{"bounds", rows}}, cfg.seed);
  if (cfg.json || !cfg.out.empty()) detail::emit(cfg, doc, out);
  if (!cfg.json) detail::print_table(out, rows);
  return kExitOk;
}

inline int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const Drawing d = io::load_drawing_file(cfg.input);
  Json inputs = detail::common_inputs(cfg);
  inputs["mode"] = cfg.oracle_mode;
  Json outputs;
  if (cfg.oracle_mode == "labeling") {
    auto objective = cfg.objective == "sum-g"      ? oracle::LabelingObjective::sum_g
                     : cfg.objective == "combined" ? oracle::LabelingObjective::combined
                                                   : oracle::LabelingObjective::max_g;
    inputs["objective"] = cfg.objective;
    auto r = oracle::exact_best_labeling(d, cfg.k, objective, cfg.epsilon);
    outputs = {{"objective", r.objective}, {"feasible", r.feasible}, {"witness", r.witness},
               {"search_space", r.search_space}};
  } else if (cfg.oracle_mode == "partition") {
    auto r = oracle::exact_best_edge_partition(d, cfg.k);
    outputs = {{"objective", r.objective}, {"witness", r.witness}, {"search_space", r.search_space}};
  } else if (cfg.oracle_mode == "expectation") {
    const WeightVector w = detail::resolve_weights(cfg);
    const Rational e = oracle::exact_survival_expectation(d, w);
    outputs = {{"expectation", io::to_json(e)}, {"value", to_double(e)}, {"C", d.total_crossings()}};
    if (auto var = oracle::exact_survival_variance(d, w)) {
      outputs["variance"] = io::to_json(*var);
      outputs["variance_value"] = to_double(*var);
    }
  } else if (cfg.oracle_mode == "conditional") {
    inputs["edge"] = cfg.edge;
    inputs["label_u"] = cfg.label_u;
    inputs["label_v"] = cfg.label_v;
    const WeightVector w = detail::resolve_weights(cfg);
    auto r = oracle::exact_conditional_survival(d, w, cfg.edge, cfg.label_u, cfg.label_v);
    Json survival = Json::array(), dist = Json::array();
    for (const auto& p : r.partner_survival) survival.push_back(io::to_json(p));
    for (const auto& p : r.load_distribution) dist.push_back(io::to_json(p));
    outputs = {{"partners", r.partners}, {"partner_survival", survival},
               {"load_distribution", dist}, {"mean", io::to_json(r.mean)},
               {"free_vertices", r.free_vertices}};
  } else {
    auto s = oracle::dependency_scopes(d);
    outputs = {{"scope", s.scope}, {"degree", s.degree}, {"max_degree", s.max_degree},
               {"bound", bounds::dependency_degree_bound(d.local_crossing_number(), d.graph().max_degree())}};
  }
  detail::emit(cfg, io::envelope("oracle", inputs, outputs, cfg.seed), out);
  return kExitOk;
}

inline int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  Json inputs{{"family", cfg.family}, {"n", cfg.n}};
  Json extra;
  Drawing d = [&]() -> Drawing {
    if (cfg.family == "convex-kn") return gen::convex_kn(cfg.n);
    if (cfg.family == "cyl-kn") return gen::cylindrical_kn(cfg.n);
    if (cfg.family == "regularish") {
      inputs["d"] = cfg.d;
      auto r = gen::random_regularish(cfg.n, cfg.d, cfg.seed);
      extra = {{"alpha", r.alpha}, {"repairs", r.repairs}, {"dropped", r.dropped}};
      return gen::random_geometric_drawing(r.graph, cfg.seed);
    }
    std::int64_t m = cfg.m >= 0 ? cfg.m : 2LL * cfg.n;
    inputs["m"] = m;
    return gen::random_geometric_drawing(gen::random_graph(cfg.n, m, cfg.seed), cfg.seed);
  }();
  Json outputs{{"drawing", io::to_json(d)}};
  if (!extra.is_null()) outputs["generator"] = extra;
  detail::emit(cfg, io::envelope("gen", inputs, outputs, cfg.seed), out);
  return kExitOk;
}

/// Parses `args` (without the program name), runs the subcommand and returns
/// the process exit code: 0 success or certified, 2 uncertified, 1 error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"k-planar local crossing decompositions", "kplanar"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  app.add_option("--seed", cfg.seed, "random seed; all randomness derives from it");
  app.add_option("--k", cfg.k, "number of planes")->check(CLI::Range(1, 64));
  app.add_option("--eps", cfg.epsilon, "slack epsilon")->check(CLI::NonNegativeNumber);
  app.add_option("--weights", cfg.weights, "optimal | uniform | explicit list such as 2/3,1/3");
  app.add_option("--trials", cfg.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  app.add_option("--budget", cfg.budget, "resampling rounds")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "write the JSON envelope here instead of stdout");
  app.add_option("--svg", cfg.svg, "write an SVG with one panel per plane (decompose)");
  app.add_option("--log-base", cfg.log_base, "logarithm base for thresholds")
      ->check(CLI::IsMember({"natural", "binary"}));
  app.add_option("--threads", cfg.threads, "Monte Carlo worker threads, 0 = all cores")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--json", cfg.json, "print the JSON envelope instead of a table (analyze, bounds)");

  auto* analyze = app.add_subcommand("analyze", "drawing statistics and lower bounds");
  analyze->add_option("drawing", cfg.input, "drawing JSON")->required();

  auto* decompose = app.add_subcommand("decompose", "split a drawing into k planes");
  decompose->add_option("drawing", cfg.input, "drawing JSON")->required();
  decompose->add_option("--mode", cfg.mode, "decomposition path")
      ->check(CLI::IsMember({"construction", "degree-partition", "coloring", "combined"}));
  decompose->add_option("--strategy", cfg.strategy, "resample violated scopes or restart")
      ->check(CLI::IsMember({"local", "restart"}));
  decompose->add_option("--goal", cfg.goal, "stop at the threshold or keep minimizing max load")
      ->check(CLI::IsMember({"certify", "minimize"}));

  auto* montecarlo = app.add_subcommand("montecarlo", "sample labelings and compare with bounds");
  montecarlo->add_option("drawing", cfg.input, "drawing JSON")->required();

  auto* bounds_cmd = app.add_subcommand("bounds", "bound calculators");
  bounds_cmd->add_option("--n", cfg.n, "vertices");
  bounds_cmd->add_option("--m", cfg.m, "edges (-1 = unknown)");
  bounds_cmd->add_option("--max-degree", cfg.max_degree, "maximum degree (-1 = unknown)");
  bounds_cmd->add_option("--L", cfg.L, "local crossing number (-1 = unknown)");
  bounds_cmd->add_option("--C", cfg.C, "crossing count (-1 = unknown)");
  bounds_cmd->add_option("--alpha", cfg.alpha, "degree ratio (0 = derive from n, m, max degree)");
  bounds_cmd->add_option("--lll-constant", cfg.lll_constant, "local lemma constant")
      ->check(CLI::IsMember({"3", "e"}));

  auto* oracle_cmd = app.add_subcommand("oracle", "exact enumeration oracles");
  oracle_cmd->add_option("drawing", cfg.input, "drawing JSON")->required();
  oracle_cmd->add_option("--mode", cfg.oracle_mode, "oracle")
      ->check(CLI::IsMember({"labeling", "partition", "expectation", "conditional", "scopes"}));
  oracle_cmd->add_option("--objective", cfg.objective, "labeling objective")
      ->check(CLI::IsMember({"max-g", "sum-g", "combined"}));
  oracle_cmd->add_option("--edge", cfg.edge, "edge id (conditional)");
  oracle_cmd->add_option("--label-u", cfg.label_u, "label of the edge's smaller endpoint");
  oracle_cmd->add_option("--label-v", cfg.label_v, "label of the edge's larger endpoint");

  auto* gen_cmd = app.add_subcommand("gen", "generate drawings");
  gen_cmd->add_option("--family", cfg.family, "drawing family")
      ->check(CLI::IsMember({"convex-kn", "cyl-kn", "regularish", "geometric"}));
  gen_cmd->add_option("--n", cfg.n, "vertices")->required();
  gen_cmd->add_option("--d", cfg.d, "target degree (regularish)");
  gen_cmd->add_option("--m", cfg.m, "edges (geometric; default 2n)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  try {
    if (*analyze) return cmd_analyze(cfg, out);
    if (*decompose) return cmd_decompose(cfg, out, err);
    if (*montecarlo) return cmd_montecarlo(cfg, out);
    if (*bounds_cmd) return cmd_bounds(cfg, out);
    if (*oracle_cmd) return cmd_oracle(cfg, out);
    return cmd_gen(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace kplanar::cli

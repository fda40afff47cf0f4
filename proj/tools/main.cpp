// lrp — long-range percolation laboratory command line.
//
// Subcommands: generate, diameter, stats, descent, renorm, experiment, fit.
// Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lrp/bfs.hpp"
#include "lrp/errors.hpp"
#include "lrp/descent.hpp"
#include "lrp/diameter.hpp"
#include "lrp/experiment.hpp"
#include "lrp/fit.hpp"
#include "lrp/format.hpp"
#include "lrp/graph_io.hpp"
#include "lrp/renorm.hpp"
#include "lrp/sampler.hpp"
#include "lrp/structure.hpp"

namespace {

using namespace lrp;

struct GenerateArgs {
  int d = 1;
  std::int64_t n = 0;
  double s = 1.0;
  double beta = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::string out;
  bool coupled = false;
};

int cmd_generate(const GenerateArgs& a) {
  const ModelParams params(a.d, a.n, a.s, a.beta, a.seed);
  const GridGraph g =
      a.coupled ? sample_graph_coupled(params, a.trial) : sample_graph(params, a.trial);
  if (a.out.empty() || a.out == "-") {
    write_graph(g, std::cout);
  } else {
    write_graph_file(g, a.out);
  }
  return 0;
}

struct DiameterArgs {
  std::string input;
  std::string mode = "auto";
  std::int64_t sources = 16;
};

int cmd_diameter(const DiameterArgs& a) {
  const GridGraph g = read_graph_file(a.input);
  DiameterResult result;
  if (a.mode == "exact") {
    result = exact_diameter(g);
  } else if (a.mode == "estimate") {
    result = estimate_diameter(g, a.sources);
  } else {
    try {
      result = exact_diameter(g);
    } catch (const ResourceLimitError&) {
      result = estimate_diameter(g, a.sources);
    }
  }
  if (result.mode == DiameterMode::lower_bound) {
    std::cerr << "lower_bound=" << result.value << " upper_bound=" << result.upper_bound
              << " sources=" << result.sources_used << "\n";
  }
  std::cout << result.value << "\n";
  return 0;
}

struct StatsArgs {
  std::string input;
  std::vector<double> psis;
  std::string histogram_out;
};

int cmd_stats(const StatsArgs& a) {
  const GridGraph g = read_graph_file(a.input);
  const StructureStats stats = compute_structure_stats(g);
  const EdgeLengthHistogram hist = edge_length_histogram(g);

  if (!a.histogram_out.empty()) {
    std::ofstream out(a.histogram_out);
    if (!out) throw std::runtime_error("cannot write: " + a.histogram_out);
    out << "k,count\n";
    for (std::int64_t k = 1; k <= hist.max_length(); ++k) {
      out << k << ',' << hist.counts[k] << "\n";
    }
  }

  ExperimentConfig cfg;
  cfg.tail_psi = a.psis;
  TrialRecord rec;
  rec.d = g.params().d;
  rec.n = g.params().n;
  rec.s = g.params().s;
  rec.beta = g.params().beta;
  rec.trial = static_cast<std::int64_t>(g.trial());
  rec.edges = g.long_edge_count();
  rec.cuts = stats.cut_nodes;
  rec.isolated = stats.isolated_nodes;
  rec.ball2 = stats.ball2_size;
  for (double psi : a.psis) rec.tail_sums.push_back(tail_sum(hist, psi, g.params()));

  std::cout << csv_header(cfg) << "\n" << csv_row(rec, cfg.metrics) << "\n";
  return 0;
}

struct DescentArgs {
  std::string input;
  std::optional<std::int64_t> start;
  int c = 2;
  std::int64_t max_steps = 0;
};

int cmd_descent(const DescentArgs& a) {
  const GridGraph g = read_graph_file(a.input);
  const NodeId start = a.start.value_or(g.node_count() - 1);
  std::int64_t max_steps = a.max_steps;
  if (max_steps <= 0) {
    max_steps = std::max<std::int64_t>(8, 4 * g.params().max_distance());
  }
  const DescentTrace trace = descent_run(g, start, a.c, max_steps);

  std::cout << "descent start=" << trace.start << " c=" << a.c
            << " threshold=" << format_double(trace.threshold) << "\n";
  for (std::size_t i = 0; i < trace.chain.size(); ++i) {
    std::cout << i << ' ' << trace.chain[i] << ' ' << trace.norms[i] << "\n";
  }
  std::cout << "steps_to_threshold=";
  if (trace.steps_to_threshold) {
    std::cout << *trace.steps_to_threshold << "\n";
  } else {
    std::cout << "none\n";
  }
  return 0;
}

struct RenormArgs {
  std::string input;
  double alpha = 0.8;
  int levels = 2;
};

std::string box_to_string(const Box& box) {
  std::string s = "[";
  for (std::size_t j = 0; j < box.lo.size(); ++j) {
    if (j) s += " x ";
    s += std::to_string(box.lo[j]) + ".." + std::to_string(box.hi[j]);
  }
  return s + "]";
}

int cmd_renorm(const RenormArgs& a) {
  const GridGraph g = read_graph_file(a.input);
  const RenormPlan plan = make_renorm_plan(g.params(), a.alpha, a.levels);
  const RenormCertificate cert = renorm_certificate(g, plan);

  std::cout << "renorm alpha=" << format_double(plan.alpha) << " m=" << plan.levels
            << " valid=" << (cert.valid ? 1 : 0);
  if (cert.valid) std::cout << " implied_bound=" << cert.implied_bound;
  std::cout << "\n";
  for (int r = 0; r < plan.levels; ++r) {
    std::cout << "level " << (r + 1) << " side=" << plan.side_lengths[r]
              << " cubes=" << cert.cubes_per_level[r] << " pairs=" << cert.pairs_per_level[r]
              << " long_tagged=" << cert.witnesses[r].size() << "\n";
  }
  if (cert.failure) {
    std::cout << "failure level=" << cert.failure->level << " cube_a="
              << box_to_string(cert.failure->cube_a)
              << " cube_b=" << box_to_string(cert.failure->cube_b) << "\n";
  }
  return 0;
}

struct ExperimentArgs {
  std::string config_path;
  std::string out_override;
  int workers_override = 0;
};

int cmd_experiment(const ExperimentArgs& a) {
  ExperimentConfig cfg = load_config(a.config_path);
  if (!a.out_override.empty()) cfg.out = a.out_override;
  if (a.workers_override > 0) cfg.workers = a.workers_override;
  const ExperimentReport report = run_experiment(cfg);
  if (cfg.out.empty()) {
    std::cout << report.csv;
  } else {
    std::cout << "wrote " << cfg.out << " (" << report.records.size() << " rows, "
              << report.aggregates.size() << " cells) and " << aggregate_path(cfg.out) << "\n";
  }
  return 0;
}

struct FitArgs {
  std::string input;
  std::string regime = "power";
  std::string metric = "diameter";
  std::optional<int> d_filter;
  std::optional<double> s_filter, beta_filter;
};

int cmd_fit(const FitArgs& a) {
  std::vector<double> psis;
  std::vector<TrialRecord> records = read_trial_csv(a.input, &psis);

  std::erase_if(records, [&](const TrialRecord& r) {
    return (a.d_filter && r.d != *a.d_filter) || (a.s_filter && r.s != *a.s_filter) ||
           (a.beta_filter && r.beta != *a.beta_filter);
  });
  if (records.empty()) throw std::runtime_error("fit: no rows after filtering");
  for (const auto& r : records) {
    if (r.d != records.front().d || r.s != records.front().s ||
        r.beta != records.front().beta) {
      throw std::runtime_error(
          "fit: rows mix several (d,s,beta) cells; restrict with --d/--s/--beta");
    }
  }

  ScalingFit fit;
  if (a.regime == "power") {
    fit = fit_power_law(records, a.metric, psis);
    std::cout << "slope=" << format_double(fit.value) << " stderr=" << format_double(fit.std_err)
              << " r2=" << format_double(fit.r_squared) << " n=[" << fit.n_min << ".."
              << fit.n_max << "] points=" << fit.points << "\n";
  } else if (a.regime == "polylog") {
    fit = fit_loglog_ratio(records, a.metric, RatioRegime::polylog, psis);
    std::cout << "delta=" << format_double(fit.value) << " stderr=" << format_double(fit.std_err)
              << " r2=" << format_double(fit.r_squared) << " n=[" << fit.n_min << ".."
              << fit.n_max << "] points=" << fit.points << "\n";
  } else if (a.regime == "ratio") {
    fit = fit_loglog_ratio(records, a.metric, RatioRegime::log_over_loglog, psis);
    std::cout << "constant=" << format_double(fit.value) << " spread=" << format_double(fit.spread)
              << " n=[" << fit.n_min << ".." << fit.n_max << "] points=" << fit.points << "\n";
  } else {
    throw std::runtime_error("fit: regime must be power|polylog|ratio");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"long-range percolation laboratory"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "sample a graph and write it");
  generate->add_option("--d", gen.d, "dimension")->required();
  generate->add_option("--n", gen.n, "side length")->required();
  generate->add_option("--s", gen.s, "decay exponent")->required();
  generate->add_option("--beta", gen.beta, "rate beta")->required();
  generate->add_option("--seed", gen.seed, "master seed")->required();
  generate->add_option("--trial", gen.trial, "trial index");
  generate->add_option("--out", gen.out, "output path ('-' for stdout)");
  generate->add_flag("--coupled", gen.coupled, "use the coupled per-pair sampler");

  DiameterArgs diam;
  auto* diameter = app.add_subcommand("diameter", "diameter of a graph file");
  diameter->add_option("input", diam.input, "graph file")->required();
  diameter->add_option("--mode", diam.mode, "exact|estimate|auto")
      ->check(CLI::IsMember({"exact", "estimate", "auto"}));
  diameter->add_option("--sources", diam.sources, "BFS sources in estimate mode");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "structure statistics of a graph file");
  stats_cmd->add_option("input", stats.input, "graph file")->required();
  stats_cmd->add_option("--psi", stats.psis, "tail-sum psi values");
  stats_cmd->add_option("--histogram", stats.histogram_out, "write k,count CSV here");

  DescentArgs desc;
  auto* descent = app.add_subcommand("descent", "greedy norm descent trace");
  descent->add_option("input", desc.input, "graph file")->required();
  descent->add_option("--start", desc.start, "start node (default: far corner)");
  descent->add_option("--c", desc.c, "threshold parameter c");
  descent->add_option("--max-steps", desc.max_steps, "step cap");

  RenormArgs ren;
  auto* renorm = app.add_subcommand("renorm", "renormalization certificate");
  renorm->add_option("input", ren.input, "graph file")->required();
  renorm->add_option("--alpha", ren.alpha, "level shrink exponent");
  renorm->add_option("--m", ren.levels, "level count");

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "run a sweep from a JSON config");
  experiment->add_option("--config", exp.config_path, "JSON config path")->required();
  experiment->add_option("--out", exp.out_override, "override config.out");
  experiment->add_option("--workers", exp.workers_override, "override worker count");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit scaling exponents from a trial CSV");
  fit_cmd->add_option("--input", fit.input, "trial CSV path")->required();
  fit_cmd->add_option("--regime", fit.regime, "power|polylog|ratio");
  fit_cmd->add_option("--metric", fit.metric, "CSV metric column");
  fit_cmd->add_option("--d", fit.d_filter, "filter rows by d");
  fit_cmd->add_option("--s", fit.s_filter, "filter rows by s");
  fit_cmd->add_option("--beta", fit.beta_filter, "filter rows by beta");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // help/version exit clean, usage errors exit 1
  }

  try {
    if (app.got_subcommand(generate)) return cmd_generate(gen);
    if (app.got_subcommand(diameter)) return cmd_diameter(diam);
    if (app.got_subcommand(stats_cmd)) return cmd_stats(stats);
    if (app.got_subcommand(descent)) return cmd_descent(desc);
    if (app.got_subcommand(renorm)) return cmd_renorm(ren);
    if (app.got_subcommand(experiment)) return cmd_experiment(exp);
    if (app.got_subcommand(fit_cmd)) return cmd_fit(fit);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

#include "lrp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iterator>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "lrp/bfs.hpp"
#include "lrp/descent.hpp"
#include "lrp/diameter.hpp"
#include "lrp/errors.hpp"
#include "lrp/format.hpp"
#include "lrp/graph.hpp"
#include "lrp/renorm.hpp"
#include "lrp/rng.hpp"
#include "lrp/sampler.hpp"
#include "lrp/structure.hpp"

namespace lrp {

namespace {

using nlohmann::json;

constexpr std::int64_t kAutoExactNodeCap = std::int64_t(1) << 16;
constexpr std::int64_t kEstimateSources = 16;
// In automatic mode large instances may spend about this many BFS sweeps
// before falling back to the estimator.
constexpr std::uint64_t kAutoVisitSweeps = 64;

const char* kFixedColumns[] = {"d",    "N",        "s",     "beta",     "trial",
                               "edges", "diameter", "diam_mode", "corner_path", "cuts",
                               "isolated", "ball2", "descent_steps", "renorm_valid"};

std::string diameter_metric_name(DiameterMetric m) {
  switch (m) {
    case DiameterMetric::none: return "none";
    case DiameterMetric::exact: return "exact";
    case DiameterMetric::estimate: return "estimate";
    case DiameterMetric::automatic: return "auto";
  }
  return "auto";
}

DiameterMetric diameter_metric_from(const std::string& name) {
  if (name == "none") return DiameterMetric::none;
  if (name == "exact") return DiameterMetric::exact;
  if (name == "estimate") return DiameterMetric::estimate;
  if (name == "auto") return DiameterMetric::automatic;
  throw std::invalid_argument("config: metrics.diameter must be none|exact|estimate|auto");
}

std::int64_t default_descent_steps(std::int64_t n) {
  if (n < 16) return 8;
  const double logn = std::log(static_cast<double>(n));
  return std::max<std::int64_t>(8, static_cast<std::int64_t>(std::ceil(10.0 * logn / std::log(logn))));
}

}  // namespace

std::int64_t ExperimentConfig::cell_count() const {
  return static_cast<std::int64_t>(dims.size()) * static_cast<std::int64_t>(sides.size()) *
         static_cast<std::int64_t>(exponents.size()) * static_cast<std::int64_t>(betas.size());
}

ModelParams ExperimentConfig::cell_params(std::int64_t cell_index) const {
  if (cell_index < 0 || cell_index >= cell_count()) {
    throw std::out_of_range("cell_params: cell index out of range");
  }
  const std::int64_t nb = static_cast<std::int64_t>(betas.size());
  const std::int64_t ns = static_cast<std::int64_t>(exponents.size());
  const std::int64_t nn = static_cast<std::int64_t>(sides.size());
  const std::int64_t bi = cell_index % nb;
  const std::int64_t si = (cell_index / nb) % ns;
  const std::int64_t ni = (cell_index / (nb * ns)) % nn;
  const std::int64_t di = cell_index / (nb * ns * nn);
  return ModelParams(dims[di], sides[ni], exponents[si], betas[bi],
                     rng::mix(seed, static_cast<std::uint64_t>(cell_index)));
}

ExperimentConfig config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }

  ExperimentConfig cfg;
  try {
    cfg.dims = j.value("dims", cfg.dims);
    cfg.sides = j.at("sides").get<std::vector<std::int64_t>>();
    cfg.exponents = j.at("exponents").get<std::vector<double>>();
    cfg.betas = j.at("betas").get<std::vector<double>>();
    cfg.trials = j.value("trials", std::int64_t(1));
    cfg.seed = j.value("seed", std::uint64_t(0));
    if (j.contains("metrics")) {
      const json& m = j["metrics"];
      if (m.contains("diameter")) {
        cfg.metrics.diameter = diameter_metric_from(m["diameter"].get<std::string>());
      }
      cfg.metrics.corner_path = m.value("corner_path", cfg.metrics.corner_path);
      cfg.metrics.structure = m.value("structure", cfg.metrics.structure);
      cfg.metrics.descent = m.value("descent", cfg.metrics.descent);
      cfg.metrics.renorm = m.value("renorm", cfg.metrics.renorm);
      cfg.metrics.timing = m.value("timing", cfg.metrics.timing);
    }
    if (j.contains("renorm")) {
      cfg.renorm_alpha = j["renorm"].value("alpha", cfg.renorm_alpha);
      cfg.renorm_levels = j["renorm"].value("m", cfg.renorm_levels);
    }
    if (j.contains("descent")) {
      cfg.descent_c = j["descent"].value("c", cfg.descent_c);
      cfg.descent_max_steps = j["descent"].value("max_steps", cfg.descent_max_steps);
    }
    cfg.tail_psi = j.value("tail_psi", cfg.tail_psi);
    cfg.workers = j.value("workers", cfg.workers);
    cfg.out = j.value("out", cfg.out);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["dims"] = cfg.dims;
  j["sides"] = cfg.sides;
  j["exponents"] = cfg.exponents;
  j["betas"] = cfg.betas;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["metrics"] = {{"diameter", diameter_metric_name(cfg.metrics.diameter)},
                  {"corner_path", cfg.metrics.corner_path},
                  {"structure", cfg.metrics.structure},
                  {"descent", cfg.metrics.descent},
                  {"renorm", cfg.metrics.renorm},
                  {"timing", cfg.metrics.timing}};
  j["renorm"] = {{"alpha", cfg.renorm_alpha}, {"m", cfg.renorm_levels}};
  j["descent"] = {{"c", cfg.descent_c}, {"max_steps", cfg.descent_max_steps}};
  j["tail_psi"] = cfg.tail_psi;
  j["workers"] = cfg.workers;
  j["out"] = cfg.out;
  return j.dump(2);
}

std::string aggregate_path(const std::string& out) {
  if (out.size() > 4 && out.substr(out.size() - 4) == ".csv") {
    return out.substr(0, out.size() - 4) + ".agg.csv";
  }
  return out + ".agg.csv";
}

std::string csv_header(const ExperimentConfig& config) {
  std::string h;
  for (const char* col : kFixedColumns) {
    if (!h.empty()) h += ',';
    h += col;
  }
  for (double psi : config.tail_psi) h += ",tail_sum_psi" + format_double(psi);
  h += ",wall_ms";
  return h;
}

namespace {

void append_opt(std::string& row, const std::optional<std::int64_t>& v) {
  row += ',';
  if (v) row += std::to_string(*v);
}

}  // namespace

std::string csv_row(const TrialRecord& rec, const MetricsSpec& metrics) {
  std::string row = std::to_string(rec.d);
  row += ',' + std::to_string(rec.n);
  row += ',' + format_double(rec.s);
  row += ',' + format_double(rec.beta);
  row += ',' + std::to_string(rec.trial);
  row += ',' + std::to_string(rec.edges);
  append_opt(row, rec.diameter);
  row += ',';
  row += rec.diam_mode;
  append_opt(row, rec.corner_path);
  append_opt(row, rec.cuts);
  append_opt(row, rec.isolated);
  append_opt(row, rec.ball2);
  append_opt(row, rec.descent_steps);
  row += ',';
  if (rec.renorm_valid) row += std::to_string(*rec.renorm_valid);
  for (const auto& t : rec.tail_sums) append_opt(row, t);
  row += ',';
  if (metrics.timing) row += format_double(rec.wall_ms);
  return row;
}

namespace {

TrialRecord run_trial(const ExperimentConfig& cfg, const ModelParams& params,
                      const OffsetTable& table, std::int64_t trial, BfsWorkspace& ws) {
  const auto t0 = std::chrono::steady_clock::now();

  TrialRecord rec;
  rec.d = params.d;
  rec.n = params.n;
  rec.s = params.s;
  rec.beta = params.beta;
  rec.trial = trial;

  const GridGraph g = sample_graph(table, static_cast<std::uint64_t>(trial));
  rec.edges = g.long_edge_count();

  switch (cfg.metrics.diameter) {
    case DiameterMetric::none:
      break;
    case DiameterMetric::exact: {
      const DiameterResult r = exact_diameter(g);
      rec.diameter = r.value;
      rec.diam_mode = "exact";
      break;
    }
    case DiameterMetric::estimate: {
      const DiameterResult r = estimate_diameter(g, kEstimateSources);
      rec.diameter = r.value;
      rec.diam_mode = "lower_bound";
      break;
    }
    case DiameterMetric::automatic: {
      DiameterOptions opts;
      if (g.node_count() > kAutoExactNodeCap) {
        opts.visit_budget = kAutoVisitSweeps * static_cast<std::uint64_t>(g.node_count());
      }
      try {
        const DiameterResult r = exact_diameter(g, opts);
        rec.diameter = r.value;
        rec.diam_mode = "exact";
      } catch (const ResourceLimitError&) {
        const DiameterResult r = estimate_diameter(g, kEstimateSources);
        rec.diameter = r.value;
        rec.diam_mode = "lower_bound";
      }
      break;
    }
  }

  if (cfg.metrics.corner_path) {
    rec.corner_path = ws.run(g, 0).dist[g.node_count() - 1];
  }

  if (cfg.metrics.structure) {
    const StructureStats stats = compute_structure_stats(g);
    rec.cuts = stats.cut_nodes;
    rec.isolated = stats.isolated_nodes;
    rec.ball2 = stats.ball2_size;
  }

  if (!cfg.tail_psi.empty()) {
    const EdgeLengthHistogram h = edge_length_histogram(g);
    for (double psi : cfg.tail_psi) rec.tail_sums.push_back(tail_sum(h, psi, params));
  }

  if (cfg.metrics.descent) {
    const std::int64_t max_steps =
        cfg.descent_max_steps > 0 ? cfg.descent_max_steps : default_descent_steps(params.n);
    const DescentTrace trace =
        descent_run(g, g.node_count() - 1, cfg.descent_c, max_steps);
    rec.descent_steps = trace.steps_to_threshold;
  }

  if (cfg.metrics.renorm) {
    const RenormPlan plan = make_renorm_plan(params, cfg.renorm_alpha, cfg.renorm_levels);
    rec.renorm_valid = renorm_certificate(g, plan).valid ? 1 : 0;
  }

  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return rec;
}

int resolve_workers(const ExperimentConfig& cfg) {
  if (cfg.workers > 0) return cfg.workers;
  if (const char* env = std::getenv("LRP_WORKERS")) {
    if (const auto parsed = parse_int(env); parsed && *parsed > 0) {
      return static_cast<int>(*parsed);
    }
  }
  return 1;
}

std::vector<MetricAggregate> aggregate_cell(const ExperimentConfig& cfg,
                                            const std::vector<TrialRecord>& records,
                                            std::int64_t begin, std::int64_t end) {
  std::vector<std::pair<std::string, std::vector<double>>> columns;
  auto add = [&](const std::string& name, auto getter) {
    std::vector<double> values;
    for (std::int64_t i = begin; i < end; ++i) {
      if (const auto v = getter(records[i])) values.push_back(static_cast<double>(*v));
    }
    if (!values.empty()) columns.emplace_back(name, std::move(values));
  };

  add("edges", [](const TrialRecord& r) { return std::optional<std::int64_t>(r.edges); });
  add("diameter", [](const TrialRecord& r) { return r.diameter; });
  add("corner_path", [](const TrialRecord& r) { return r.corner_path; });
  add("cuts", [](const TrialRecord& r) { return r.cuts; });
  add("isolated", [](const TrialRecord& r) { return r.isolated; });
  add("ball2", [](const TrialRecord& r) { return r.ball2; });
  add("descent_steps", [](const TrialRecord& r) { return r.descent_steps; });
  add("renorm_valid", [](const TrialRecord& r) {
    return r.renorm_valid ? std::optional<std::int64_t>(*r.renorm_valid) : std::nullopt;
  });
  for (std::size_t pi = 0; pi < cfg.tail_psi.size(); ++pi) {
    add("tail_sum_psi" + format_double(cfg.tail_psi[pi]), [pi](const TrialRecord& r) {
      return pi < r.tail_sums.size() ? r.tail_sums[pi] : std::nullopt;
    });
  }

  std::vector<MetricAggregate> out;
  for (auto& [name, values] : columns) {
    MetricAggregate agg;
    agg.metric = name;
    agg.count = static_cast<std::int64_t>(values.size());
    double sum = 0.0;
    agg.min = values.front();
    agg.max = values.front();
    for (double v : values) {
      sum += v;
      agg.min = std::min(agg.min, v);
      agg.max = std::max(agg.max, v);
    }
    agg.mean = sum / values.size();
    double ss = 0.0;
    for (double v : values) ss += (v - agg.mean) * (v - agg.mean);
    agg.stddev = values.size() > 1 ? std::sqrt(ss / (values.size() - 1)) : 0.0;
    out.push_back(std::move(agg));
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (cfg.sides.empty() || cfg.exponents.empty() || cfg.betas.empty() || cfg.dims.empty()) {
    throw std::invalid_argument("experiment: dims/sides/exponents/betas must be non-empty");
  }
  for (double psi : cfg.tail_psi) {
    if (!(psi > 0.0) || !(psi < 1.0)) {
      throw std::invalid_argument("experiment: tail_psi entries must be in (0,1)");
    }
  }

  const std::int64_t cells = cfg.cell_count();
  const std::int64_t tasks = cells * cfg.trials;

  // Validate every cell (and the renorm plan when requested) before any work.
  std::vector<ModelParams> params;
  params.reserve(cells);
  for (std::int64_t c = 0; c < cells; ++c) {
    params.push_back(cfg.cell_params(c));
    if (cfg.metrics.renorm) make_renorm_plan(params.back(), cfg.renorm_alpha, cfg.renorm_levels);
    if (cfg.metrics.descent && cfg.descent_c < 0) {
      throw std::invalid_argument("experiment: descent c must be >= 0");
    }
  }

  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::trunc);
    if (!file) throw std::runtime_error("experiment: cannot write output: " + cfg.out);
  }

  // Offset tables are shared across a cell's trials.
  std::vector<OffsetTable> tables;
  tables.reserve(cells);
  for (std::int64_t c = 0; c < cells; ++c) tables.emplace_back(params[c]);

  ExperimentReport report;
  report.config = cfg;
  report.records.resize(tasks);

  const int workers = resolve_workers(cfg);
  std::atomic<std::int64_t> next_task{0};
  std::vector<unsigned char> done(tasks, 0);
  std::mutex mu;
  std::condition_variable cv;
  std::exception_ptr first_error;

  auto worker = [&]() {
    BfsWorkspace ws;
    for (;;) {
      const std::int64_t t = next_task.fetch_add(1);
      if (t >= tasks) return;
      const std::int64_t cell = t / cfg.trials;
      const std::int64_t trial = t % cfg.trials;
      try {
        TrialRecord rec = run_trial(cfg, params[cell], tables[cell], trial, ws);
        std::lock_guard<std::mutex> lock(mu);
        report.records[t] = std::move(rec);
        done[t] = 1;
        cv.notify_all();
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
        done[t] = 2;
        cv.notify_all();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);

  // Stream rows in canonical order as they complete.
  report.csv = csv_header(cfg) + "\n";
  if (file.is_open()) file << report.csv;
  {
    std::unique_lock<std::mutex> lock(mu);
    for (std::int64_t t = 0; t < tasks; ++t) {
      cv.wait(lock, [&] { return done[t] != 0; });
      if (done[t] == 2) break;
      const std::string row = csv_row(report.records[t], cfg.metrics) + "\n";
      report.csv += row;
      if (file.is_open()) file << row;
    }
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  if (file.is_open() && !file.flush()) {
    throw std::runtime_error("experiment: write failed: " + cfg.out);
  }

  // Per-cell aggregates, sequential and in cell order.
  std::string agg = "d,N,s,beta,trials,metric,count,mean,stddev,min,max\n";
  for (std::int64_t c = 0; c < cells; ++c) {
    CellAggregate cell;
    cell.d = params[c].d;
    cell.n = params[c].n;
    cell.s = params[c].s;
    cell.beta = params[c].beta;
    cell.trials = cfg.trials;
    cell.metrics = aggregate_cell(cfg, report.records, c * cfg.trials, (c + 1) * cfg.trials);
    for (const MetricAggregate& m : cell.metrics) {
      agg += std::to_string(cell.d) + ',' + std::to_string(cell.n) + ',' + format_double(cell.s) +
             ',' + format_double(cell.beta) + ',' + std::to_string(cell.trials) + ',' + m.metric +
             ',' + std::to_string(m.count) + ',' + format_double(m.mean) + ',' +
             format_double(m.stddev) + ',' + format_double(m.min) + ',' + format_double(m.max) +
             "\n";
    }
    report.aggregates.push_back(std::move(cell));
  }
  report.agg_csv = std::move(agg);
  if (!cfg.out.empty()) {
    std::ofstream agg_file(aggregate_path(cfg.out), std::ios::trunc);
    if (!agg_file || !(agg_file << report.agg_csv).flush()) {
      throw std::runtime_error("experiment: cannot write aggregates: " + aggregate_path(cfg.out));
    }
  }
  return report;
}

std::vector<TrialRecord> read_trial_csv(const std::string& path, std::vector<double>* psis) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV: " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError("CSV: empty file", 0);

  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    std::string col;
    while (std::getline(hs, col, ',')) header.push_back(col);
  }
  const std::size_t fixed = std::size(kFixedColumns);
  if (header.size() < fixed + 1) throw ParseError("CSV: missing columns", 1);
  for (std::size_t i = 0; i < fixed; ++i) {
    if (header[i] != kFixedColumns[i]) {
      throw ParseError("CSV: unexpected column '" + header[i] + "'", 1);
    }
  }
  if (header.back() != "wall_ms") throw ParseError("CSV: last column must be wall_ms", 1);

  std::vector<double> psi_list;
  for (std::size_t i = fixed; i + 1 < header.size(); ++i) {
    const std::string& col = header[i];
    const std::string prefix = "tail_sum_psi";
    if (col.rfind(prefix, 0) != 0) throw ParseError("CSV: unexpected column '" + col + "'", 1);
    const auto psi = parse_double(col.substr(prefix.size()));
    if (!psi) throw ParseError("CSV: unparsable psi in column '" + col + "'", 1);
    psi_list.push_back(*psi);
  }
  if (psis) *psis = psi_list;

  std::vector<TrialRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::istringstream ls(line);
    std::string col;
    while (std::getline(ls, col, ',')) cols.push_back(col);
    while (cols.size() < header.size()) cols.push_back("");  // trailing empties
    if (cols.size() != header.size()) throw ParseError("CSV: wrong column count", line_no);

    auto opt_int = [&](const std::string& text) -> std::optional<std::int64_t> {
      if (text.empty()) return std::nullopt;
      const auto v = parse_int(text);
      if (!v) throw ParseError("CSV: bad integer '" + text + "'", line_no);
      return v;
    };
    auto need = [&](std::optional<std::int64_t> v) {
      if (!v) throw ParseError("CSV: missing required field", line_no);
      return *v;
    };
    auto need_double = [&](const std::string& text) {
      const auto v = parse_double(text);
      if (!v) throw ParseError("CSV: bad real '" + text + "'", line_no);
      return *v;
    };

    TrialRecord rec;
    rec.d = static_cast<int>(need(opt_int(cols[0])));
    rec.n = need(opt_int(cols[1]));
    rec.s = need_double(cols[2]);
    rec.beta = need_double(cols[3]);
    rec.trial = need(opt_int(cols[4]));
    rec.edges = need(opt_int(cols[5]));
    rec.diameter = opt_int(cols[6]);
    rec.diam_mode = cols[7];
    rec.corner_path = opt_int(cols[8]);
    rec.cuts = opt_int(cols[9]);
    rec.isolated = opt_int(cols[10]);
    rec.ball2 = opt_int(cols[11]);
    rec.descent_steps = opt_int(cols[12]);
    if (const auto v = opt_int(cols[13])) rec.renorm_valid = static_cast<int>(*v);
    for (std::size_t i = 0; i < psi_list.size(); ++i) {
      rec.tail_sums.push_back(opt_int(cols[fixed + i]));
    }
    if (!cols.back().empty()) rec.wall_ms = need_double(cols.back());
    records.push_back(std::move(rec));
  }
  return records;
}

std::optional<double> metric_value(const TrialRecord& rec, const std::string& metric,
                                   const std::vector<double>& psis) {
  auto as_double = [](const std::optional<std::int64_t>& v) -> std::optional<double> {
    if (!v) return std::nullopt;
    return static_cast<double>(*v);
  };
  if (metric == "edges") return static_cast<double>(rec.edges);
  if (metric == "diameter") return as_double(rec.diameter);
  if (metric == "corner_path") return as_double(rec.corner_path);
  if (metric == "cuts") return as_double(rec.cuts);
  if (metric == "isolated") return as_double(rec.isolated);
  if (metric == "ball2") return as_double(rec.ball2);
  if (metric == "descent_steps") return as_double(rec.descent_steps);
  if (metric == "renorm_valid") {
    if (!rec.renorm_valid) return std::nullopt;
    return static_cast<double>(*rec.renorm_valid);
  }
  const std::string prefix = "tail_sum_psi";
  if (metric.rfind(prefix, 0) == 0) {
    const auto psi = parse_double(metric.substr(prefix.size()));
    if (!psi) throw std::invalid_argument("metric_value: bad psi in '" + metric + "'");
    for (std::size_t i = 0; i < psis.size() && i < rec.tail_sums.size(); ++i) {
      if (psis[i] == *psi) return as_double(rec.tail_sums[i]);
    }
    return std::nullopt;
  }
  throw std::invalid_argument("metric_value: unknown metric '" + metric + "'");
}

std::vector<FitPoint> fit_points(const std::vector<TrialRecord>& records,
                                 const std::string& metric, const std::vector<double>& psis) {
  struct Acc {
    double sum = 0.0;
    std::int64_t count = 0;
  };
  std::map<std::int64_t, Acc> by_n;
  for (const auto& rec : records) {
    if (const auto v = metric_value(rec, metric, psis)) {
      auto& acc = by_n[rec.n];
      acc.sum += *v;
      ++acc.count;
    }
  }
  std::vector<FitPoint> points;
  for (const auto& [n, acc] : by_n) points.push_back({n, acc.sum / acc.count});
  return points;
}

ScalingFit fit_power_law(const std::vector<TrialRecord>& records, const std::string& metric,
                         const std::vector<double>& psis) {
  return fit_power_law(fit_points(records, metric, psis));
}

ScalingFit fit_loglog_ratio(const std::vector<TrialRecord>& records, const std::string& metric,
                            RatioRegime regime, const std::vector<double>& psis) {
  return fit_loglog_ratio(fit_points(records, metric, psis), regime);
}

}  // namespace lrp

#include "mkcs/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "mkcs/graph.hpp"
#include "mkcs/ising.hpp"
#include "mkcs/rng.hpp"

namespace mkcs {

std::string metric_name(SweepMetric metric) {
  switch (metric) {
    case SweepMetric::min_gap:
      return "min_gap";
    case SweepMetric::tts:
      return "tts";
    case SweepMetric::qubo_value:
      return "qubo_value";
  }
  return "unknown";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::string best;
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v &&
        (best.empty() || std::strlen(buf) < best.size()))
      best = buf;
  }
  return best;
}

namespace {

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto begin = item.find_first_not_of(" \t");
    if (begin == std::string::npos)
      throw std::invalid_argument("empty list element");
    const auto end = item.find_last_not_of(" \t");
    out.push_back(item.substr(begin, end - begin + 1));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<int> parse_ints(const std::string& value) {
  std::vector<int> out;
  for (const auto& item : split_list(value)) out.push_back(std::stoi(item));
  return out;
}

std::vector<double> parse_doubles(const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(std::stod(item));
  return out;
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& text) {
  SweepConfig cfg;
  cfg.n_values.clear();
  cfg.p_values.clear();
  cfg.k_values.clear();
  cfg.c1_values.clear();
  cfg.c2_values.clear();

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty key or value");
    if (key == "n")
      cfg.n_values = parse_ints(value);
    else if (key == "p")
      cfg.p_values = parse_doubles(value);
    else if (key == "k")
      cfg.k_values = parse_ints(value);
    else if (key == "form") {
      if (value == "linear")
        cfg.form = FormChoice::linear;
      else if (value == "nonlinear")
        cfg.form = FormChoice::nonlinear;
      else if (value == "both")
        cfg.form = FormChoice::both;
      else
        throw std::invalid_argument("unknown form: " + value);
    } else if (key == "c1")
      cfg.c1_values = parse_doubles(value);
    else if (key == "c2")
      cfg.c2_values = parse_doubles(value);
    else if (key == "graphs_per_cell")
      cfg.graphs_per_cell = std::stoi(value);
    else if (key == "base_seed")
      cfg.base_seed = std::stoull(value);
    else if (key == "metric") {
      if (value == "min_gap")
        cfg.metric = SweepMetric::min_gap;
      else if (value == "tts")
        cfg.metric = SweepMetric::tts;
      else if (value == "qubo_value")
        cfg.metric = SweepMetric::qubo_value;
      else
        throw std::invalid_argument("unknown metric: " + value);
    } else if (key == "enumeration_budget")
      cfg.enumeration_budget = std::stoi(value);
    else if (key == "epsilon_ghz")
      cfg.epsilon_ghz = std::stod(value);
    else if (key == "schedule")
      cfg.schedule_csv = value == "default" ? std::string() : value;
    else if (key == "max_qubits")
      cfg.spectrum.max_qubits = std::stoi(value);
    else if (key == "dense_max_qubits")
      cfg.spectrum.dense_max_qubits = std::stoi(value);
    else if (key == "dense_routing_qubits")
      cfg.spectrum.dense_routing_qubits = std::stoi(value);
    else if (key == "block_cap")
      cfg.spectrum.block_cap = std::stoi(value);
    else if (key == "reads")
      cfg.sampler_reads = std::stoi(value);
    else if (key == "sweeps")
      cfg.sampler_sweeps = std::stoi(value);
    else if (key == "beta_start")
      cfg.beta_start = std::stod(value);
    else if (key == "beta_end")
      cfg.beta_end = std::stod(value);
    else if (key == "t_run_us")
      cfg.tts_t_run_us = std::stod(value);
    else if (key == "alpha")
      cfg.tts_alpha = std::stod(value);
    else if (key == "tts_tol")
      cfg.tts_tol = std::stod(value);
    else
      throw std::invalid_argument("unknown config key: " + key);
  }
  if (cfg.n_values.empty() || cfg.p_values.empty() || cfg.k_values.empty() ||
      cfg.c1_values.empty() || cfg.c2_values.empty())
    throw std::invalid_argument("config must list n, p, k, c1 and c2 values");
  if (cfg.graphs_per_cell < 1)
    throw std::invalid_argument("graphs_per_cell must be >= 1");
  return cfg;
}

SweepConfig read_sweep_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_sweep_config(buffer.str());
}

namespace {

struct CellTask {
  int n;
  double p;
  int k;
  double c1, c2;
  int cell_index;
  int graph_id;
};

double metric_value(const SweepConfig& cfg, const AnnealSchedule& schedule,
                    const QuboModel& model, std::uint64_t graph_seed) {
  switch (cfg.metric) {
    case SweepMetric::qubo_value:
      return solve_bruteforce(model, cfg.enumeration_budget).value;
    case SweepMetric::min_gap: {
      const GapResult gap =
          min_gap(to_ising(model), schedule, cfg.epsilon_ghz, cfg.spectrum);
      if (gap.no_distinct)
        throw std::runtime_error("no distinct excited state");
      return gap.delta_min;
    }
    case SweepMetric::tts: {
      const SolveResult ground =
          solve_bruteforce(model, cfg.enumeration_budget);
      SamplerConfig sampler;
      sampler.num_reads = cfg.sampler_reads;
      sampler.sweeps = cfg.sampler_sweeps;
      sampler.beta_start = cfg.beta_start;
      sampler.beta_end = cfg.beta_end;
      sampler.seed = seed_combine({graph_seed, 0x5a17ULL});
      const double p_hat = estimate_success(sample_serial(model, sampler),
                                            ground.value, cfg.tts_tol);
      return tts(p_hat, cfg.tts_t_run_us, cfg.tts_alpha).tts_us;
    }
  }
  throw std::logic_error("unreachable metric");
}

template <typename Row>
void sort_rows(std::vector<Row>& rows) {
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.n, a.p, a.k, a.form, a.c1, a.c2, a.graph_id) <
           std::tie(b.n, b.p, b.k, b.form, b.c1, b.c2, b.graph_id);
  });
}

}  // namespace

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("empty sample");
  if (q <= 0.0) return sorted.front();
  if (q >= 1.0) return sorted.back();
  const double position = q * double(sorted.size() - 1);
  const std::size_t lo = std::size_t(position);
  const double frac = position - double(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

SweepTable run_sweep(const SweepConfig& cfg) {
  const AnnealSchedule schedule =
      cfg.schedule_csv.empty() ? AnnealSchedule::linear()
                               : AnnealSchedule::from_csv_file(cfg.schedule_csv);

  std::vector<CellTask> tasks;
  int cell_index = 0;
  for (int n : cfg.n_values)
    for (double p : cfg.p_values)
      for (int k : cfg.k_values)
        for (double c1 : cfg.c1_values)
          for (double c2 : cfg.c2_values) {
            for (int g = 0; g < cfg.graphs_per_cell; ++g)
              tasks.push_back({n, p, k, c1, c2, cell_index, g});
            ++cell_index;
          }

  std::vector<std::string> forms;
  if (cfg.form == FormChoice::linear || cfg.form == FormChoice::both)
    forms.push_back("linear");
  if (cfg.form == FormChoice::nonlinear || cfg.form == FormChoice::both)
    forms.push_back("nonlinear");

  // One slot per (task, form); slots keep results addressable by index so
  // the output cannot depend on the execution order.
  struct Slot {
    bool ok = false;
    double value = 0.0;
    std::string message;
  };
  std::vector<Slot> slots(tasks.size() * forms.size());

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < std::int64_t(tasks.size()); ++t) {
    const CellTask& task = tasks[std::size_t(t)];
    const std::uint64_t graph_seed = seed_combine(
        {cfg.base_seed, std::uint64_t(task.n), double_bits(task.p),
         std::uint64_t(task.cell_index), std::uint64_t(task.graph_id)});
    Graph graph;
    bool graph_ok = true;
    std::string graph_error;
    try {
      graph = er_generate(task.n, task.p, graph_seed);
    } catch (const std::exception& e) {
      graph_ok = false;
      graph_error = e.what();
    }
    for (std::size_t f = 0; f < forms.size(); ++f) {
      Slot& slot = slots[std::size_t(t) * forms.size() + f];
      if (!graph_ok) {
        slot.message = graph_error;
        continue;
      }
      try {
        const MkcsInstance inst = make_instance(graph, task.k);
        const QuboModel model = forms[f] == "linear"
                                    ? build_linear(inst, task.c1, task.c2)
                                    : build_nonlinear(inst, task.c1, task.c2);
        slot.value = metric_value(cfg, schedule, model, graph_seed);
        slot.ok = true;
      } catch (const std::exception& e) {
        slot.message = e.what();
      }
    }
  }

  SweepTable table;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const CellTask& task = tasks[t];
    for (std::size_t f = 0; f < forms.size(); ++f) {
      const Slot& slot = slots[t * forms.size() + f];
      if (slot.ok)
        table.rows.push_back({task.n, task.p, task.k, forms[f], task.c1,
                              task.c2, task.graph_id, slot.value});
      else
        table.errors.push_back({task.n, task.p, task.k, forms[f], task.c1,
                                task.c2, task.graph_id, slot.message});
    }
  }
  sort_rows(table.rows);
  sort_rows(table.errors);

  // Cell summaries over the successful rows.
  std::map<std::tuple<int, double, int, std::string, double, double>,
           std::vector<double>>
      cells;
  for (const auto& row : table.rows)
    cells[{row.n, row.p, row.k, row.form, row.c1, row.c2}].push_back(
        row.value);
  for (auto& [key, samples] : cells) {
    CellSummary summary;
    summary.n = std::get<0>(key);
    summary.p = std::get<1>(key);
    summary.k = std::get<2>(key);
    summary.form = std::get<3>(key);
    summary.c1 = std::get<4>(key);
    summary.c2 = std::get<5>(key);
    summary.count = int(samples.size());
    double total = 0.0;
    for (double v : samples) total += v;
    summary.mean = total / double(samples.size());
    double ss = 0.0;
    for (double v : samples) ss += (v - summary.mean) * (v - summary.mean);
    summary.stddev =
        samples.size() > 1 ? std::sqrt(ss / double(samples.size() - 1)) : 0.0;
    std::sort(samples.begin(), samples.end());
    summary.q0 = samples.front();
    summary.q25 = quantile_sorted(samples, 0.25);
    summary.median = quantile_sorted(samples, 0.5);
    summary.q75 = quantile_sorted(samples, 0.75);
    summary.q100 = samples.back();
    table.summaries.push_back(summary);
  }
  return table;
}

HypothesisResult hypothesis_test(const std::vector<double>& a,
                                 const std::vector<double>& b, double delta,
                                 double confidence) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("hypothesis test needs >= 2 samples per side");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("confidence must lie in (0, 1)");
  auto moments = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= double(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= double(xs.size() - 1);
    return std::pair<double, double>{mean, var};
  };
  const auto [mean_a, var_a] = moments(a);
  const auto [mean_b, var_b] = moments(b);
  const double qa = var_a / double(a.size());
  const double qb = var_b / double(b.size());
  const double se2 = qa + qb;

  HypothesisResult out;
  if (se2 == 0.0) {
    out.degenerate = true;
    out.reject = mean_a < mean_b - delta * mean_b;
    out.delta_boundary =
        mean_b != 0.0 ? (mean_b - mean_a) / mean_b
                      : std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const double dof = se2 * se2 /
                     (qa * qa / double(a.size() - 1) +
                      qb * qb / double(b.size() - 1));
  const boost::math::students_t dist(dof);
  out.t_crit = boost::math::quantile(dist, confidence);
  const double se = std::sqrt(se2);
  out.t_stat = (mean_a - mean_b + delta * mean_b) / se;
  out.reject = out.t_stat < -out.t_crit;
  out.delta_boundary =
      mean_b != 0.0 ? (mean_b - mean_a - out.t_crit * se) / mean_b
                    : std::numeric_limits<double>::quiet_NaN();
  return out;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open output file: " + path.string());
  return out;
}

}  // namespace

void write_sweep_csv(const SweepTable& table, SweepMetric metric,
                     const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const std::string name = metric_name(metric);

  auto data = open_out(dir / (name + "_data.csv"));
  data << "n,p,k,form,c1,c2,graph_id,value\n";
  for (const auto& row : table.rows)
    data << row.n << ',' << format_double(row.p) << ',' << row.k << ','
         << row.form << ',' << format_double(row.c1) << ','
         << format_double(row.c2) << ',' << row.graph_id << ','
         << format_double(row.value) << '\n';

  auto summary = open_out(dir / (name + "_summary.csv"));
  summary << "n,p,k,form,c1,c2,count,mean,median,q0,q25,q75,q100,stddev\n";
  for (const auto& cell : table.summaries)
    summary << cell.n << ',' << format_double(cell.p) << ',' << cell.k << ','
            << cell.form << ',' << format_double(cell.c1) << ','
            << format_double(cell.c2) << ',' << cell.count << ','
            << format_double(cell.mean) << ',' << format_double(cell.median)
            << ',' << format_double(cell.q0) << ',' << format_double(cell.q25)
            << ',' << format_double(cell.q75) << ','
            << format_double(cell.q100) << ',' << format_double(cell.stddev)
            << '\n';

  auto errors = open_out(dir / "errors.csv");
  errors << "n,p,k,form,c1,c2,graph_id,message\n";
  for (const auto& err : table.errors) {
    std::string msg = err.message;
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    errors << err.n << ',' << format_double(err.p) << ',' << err.k << ','
           << err.form << ',' << format_double(err.c1) << ','
           << format_double(err.c2) << ',' << err.graph_id << ',' << msg
           << '\n';
  }
}

}  // namespace mkcs

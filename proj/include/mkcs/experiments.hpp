#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mkcs/anneal.hpp"
#include "mkcs/qubo.hpp"
#include "mkcs/schedule.hpp"
#include "mkcs/spectrum.hpp"

namespace mkcs {

enum class SweepMetric { min_gap, tts, qubo_value };
enum class FormChoice { linear, nonlinear, both };

std::string metric_name(SweepMetric metric);

/// Batch description: the cross product of (n, p, k, c1, c2) defines the
/// cells; every cell draws graphs_per_cell seeded random graphs, and each
/// graph is evaluated under the requested reformulation(s). The g-th graph
/// of a cell is seeded by folding (base_seed, n, p, cell_index, g), so a
/// sweep is a pure function of its config, independent of scheduling.
struct SweepConfig {
  std::vector<int> n_values;
  std::vector<double> p_values;
  std::vector<int> k_values;
  FormChoice form = FormChoice::both;
  std::vector<double> c1_values;
  std::vector<double> c2_values;
  int graphs_per_cell = 100;
  std::uint64_t base_seed = 1;
  SweepMetric metric = SweepMetric::qubo_value;

  int enumeration_budget = 24;
  SpectrumConfig spectrum;
  double epsilon_ghz = 1.0;
  std::string schedule_csv;  // empty: linear default curves
  int sampler_reads = 1000;
  int sampler_sweeps = 100;
  double beta_start = 0.1;
  double beta_end = 10.0;
  double tts_t_run_us = 20.0;
  double tts_alpha = 0.95;
  double tts_tol = 1e-9;
};

/// Flat "key = value" text; lists are comma-separated, '#' starts a
/// comment line. Unknown keys are rejected. Keys: n, p, k, form, c1, c2,
/// graphs_per_cell, base_seed, metric, enumeration_budget, epsilon_ghz,
/// schedule, max_qubits, dense_max_qubits, dense_routing_qubits,
/// block_cap, reads, sweeps, beta_start, beta_end, t_run_us, alpha,
/// tts_tol.
SweepConfig parse_sweep_config(const std::string& text);
SweepConfig read_sweep_config_file(const std::string& path);

struct SweepRow {
  int n = 0;
  double p = 0.0;
  int k = 0;
  std::string form;
  double c1 = 0.0, c2 = 0.0;
  int graph_id = 0;
  double value = 0.0;
};

struct SweepCellError {
  int n = 0;
  double p = 0.0;
  int k = 0;
  std::string form;
  double c1 = 0.0, c2 = 0.0;
  int graph_id = 0;
  std::string message;
};

struct CellSummary {
  int n = 0;
  double p = 0.0;
  int k = 0;
  std::string form;
  double c1 = 0.0, c2 = 0.0;
  int count = 0;
  double mean = 0.0, median = 0.0;
  double q0 = 0.0, q25 = 0.0, q75 = 0.0, q100 = 0.0;
  double stddev = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::vector<SweepCellError> errors;
  std::vector<CellSummary> summaries;
};

SweepTable run_sweep(const SweepConfig& cfg);

/// Linear-interpolation quantile on a sorted sample (the convention where
/// q * (count - 1) indexes the order statistics).
double quantile_sorted(const std::vector<double>& sorted, double q);

struct HypothesisResult {
  /// Null "mean(a) >= mean(b) - delta * mean(b)" rejected at the given
  /// confidence in favor of "mean(a) < mean(b) - delta * mean(b)".
  bool reject = false;
  /// Largest delta at which rejection still holds (rejection at some
  /// delta implies rejection at every smaller delta when mean(b) > 0).
  double delta_boundary = 0.0;
  /// Both samples carried zero variance; the decision degenerates to a
  /// direct mean comparison.
  bool degenerate = false;
  double t_stat = 0.0;
  double t_crit = 0.0;
};

/// One-sided two-sample comparison with unequal variances (Welch) on the
/// shifted hypothesis above. Requires at least two observations per side.
HypothesisResult hypothesis_test(const std::vector<double>& a,
                                 const std::vector<double>& b, double delta,
                                 double confidence);

/// Writes <metric>_data.csv, <metric>_summary.csv and errors.csv under
/// out_dir. Rows are sorted by key and all numbers use shortest
/// round-trip formatting, so identical tables produce identical bytes.
void write_sweep_csv(const SweepTable& table, SweepMetric metric,
                     const std::string& out_dir);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace mkcs

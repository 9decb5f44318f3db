#include "mkcs/anneal.hpp"

#include <omp.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mkcs/rng.hpp"

namespace mkcs {

namespace {

// Flip neighborhoods flattened for the inner loop.
struct FlipTable {
  int num_vars;
  std::vector<double> linear;                       // energy convention
  std::vector<std::vector<std::pair<int, double>>> neighbors;
  double offset;
  double sign;  // maps model value to minimized energy

  explicit FlipTable(const QuboModel& m)
      : num_vars(m.num_vars),
        linear(m.num_vars),
        neighbors(m.num_vars),
        offset(m.offset),
        sign(m.sense == Sense::maximize ? -1.0 : 1.0) {
    for (int v = 0; v < m.num_vars; ++v) linear[v] = sign * m.linear[v];
    for (const auto& q : m.quadratic) {
      neighbors[q.u].emplace_back(q.v, sign * q.coeff);
      neighbors[q.v].emplace_back(q.u, sign * q.coeff);
    }
  }

  // Energy change of flipping variable v in state bits.
  double delta(const std::vector<std::uint8_t>& bits, int v) const {
    double d = linear[v];
    for (const auto& [u, c] : neighbors[v])
      if (bits[u]) d += c;
    return bits[v] ? -d : d;
  }
};

SampleRead run_read(const QuboModel& m, const FlipTable& table,
                    const SamplerConfig& cfg, std::uint64_t read_seed) {
  std::mt19937_64 gen(read_seed);
  const int n = table.num_vars;
  SampleRead out;
  out.bits.resize(n);
  for (int v = 0; v < n; ++v) out.bits[v] = std::uint8_t(gen() & 1u);
  if (n > 0 && cfg.sweeps > 0) {
    const double ratio = cfg.beta_end / cfg.beta_start;
    for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
      const double beta =
          cfg.sweeps == 1
              ? cfg.beta_end
              : cfg.beta_start *
                    std::pow(ratio, double(sweep) / double(cfg.sweeps - 1));
      for (int step = 0; step < n; ++step) {
        const int v = int(uniform_below(gen, std::uint64_t(n)));
        const double d = table.delta(out.bits, v);
        if (d <= 0.0 || uniform01(gen) < std::exp(-beta * d))
          out.bits[v] ^= 1u;
      }
    }
  }
  out.value = evaluate(m, out.bits);
  return out;
}

void check_config(const SamplerConfig& cfg) {
  if (cfg.num_reads < 1) throw std::invalid_argument("num_reads must be >= 1");
  if (cfg.sweeps < 0) throw std::invalid_argument("sweeps must be >= 0");
  if (!(cfg.beta_start > 0.0) || !(cfg.beta_end >= cfg.beta_start))
    throw std::invalid_argument("need beta_end >= beta_start > 0");
}

}  // namespace

std::vector<SampleRead> sample_serial(const QuboModel& m,
                                      const SamplerConfig& cfg) {
  check_config(cfg);
  FlipTable table(m);
  std::vector<SampleRead> reads(cfg.num_reads);
  for (int r = 0; r < cfg.num_reads; ++r)
    reads[r] = run_read(m, table, cfg,
                        seed_combine({cfg.seed, std::uint64_t(r)}));
  return reads;
}

std::vector<SampleRead> sample(const QuboModel& m, const SamplerConfig& cfg) {
  check_config(cfg);
  FlipTable table(m);
  std::vector<SampleRead> reads(cfg.num_reads);
#pragma omp parallel for schedule(dynamic, 8)
  for (int r = 0; r < cfg.num_reads; ++r)
    reads[r] = run_read(m, table, cfg,
                        seed_combine({cfg.seed, std::uint64_t(r)}));
  return reads;
}

double estimate_success(const std::vector<SampleRead>& reads,
                        double ground_value, double tol) {
  if (reads.empty()) throw std::invalid_argument("no reads");
  std::size_t hits = 0;
  for (const auto& read : reads)
    if (std::fabs(read.value - ground_value) <= tol) ++hits;
  return double(hits) / double(reads.size());
}

TtsEstimate tts(double p_hat, double t_run_us, double alpha) {
  if (!(p_hat >= 0.0 && p_hat <= 1.0))
    throw std::invalid_argument("p_hat must lie in [0, 1]");
  if (!(t_run_us > 0.0)) throw std::invalid_argument("t_run must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  TtsEstimate out;
  out.p_hat = p_hat;
  out.t_run_us = t_run_us;
  out.alpha = alpha;
  if (p_hat == 0.0) {
    out.unbounded = true;
    out.tts_us = std::numeric_limits<double>::infinity();
  } else if (p_hat == 1.0) {
    out.tts_us = t_run_us;  // limit of the ratio as p -> 1
  } else {
    out.tts_us = t_run_us * std::log1p(-alpha) / std::log1p(-p_hat);
  }
  return out;
}

}  // namespace mkcs

#pragma once

#include <cstdint>
#include <vector>

#include "mkcs/qubo.hpp"

namespace mkcs {

/// Metropolis sampler controls. Each read is one independent annealing
/// run over a geometric inverse-temperature ramp from beta_start to
/// beta_end with `sweeps` full passes over the variables. Read r draws
/// from its own stream seeded by (seed, r), so the sample list is a pure
/// function of (model, config), whatever the thread count.
struct SamplerConfig {
  int num_reads = 1000;
  int sweeps = 100;
  double beta_start = 0.1;
  double beta_end = 10.0;
  std::uint64_t seed = 1;
};

struct SampleRead {
  std::vector<std::uint8_t> bits;
  double value = 0.0;
};

std::vector<SampleRead> sample(const QuboModel& m, const SamplerConfig& cfg);
std::vector<SampleRead> sample_serial(const QuboModel& m,
                                      const SamplerConfig& cfg);

/// Fraction of reads whose value is within tol of the reference optimum.
double estimate_success(const std::vector<SampleRead>& reads,
                        double ground_value, double tol = 1e-9);

struct TtsEstimate {
  double p_hat = 0.0;
  /// Expected total anneal time in microseconds; meaningful only when
  /// `unbounded` is false.
  double tts_us = 0.0;
  bool unbounded = false;
  double t_run_us = 20.0;
  double alpha = 0.95;
  double ground_value = 0.0;
};

/// t_run * ln(1 - alpha) / ln(1 - p). p = 0 yields the unbounded outcome;
/// p = 1 yields t_run (one run is still needed).
TtsEstimate tts(double p_hat, double t_run_us = 20.0, double alpha = 0.95);

}  // namespace mkcs

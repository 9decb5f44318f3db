#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "mkcs/ising.hpp"
#include "mkcs/schedule.hpp"

namespace mkcs {

struct SpectrumConfig {
  /// Hard ceiling on the spin count for any method.
  int max_qubits = 20;
  /// Ceiling for materializing the full 2^nq x 2^nq matrix.
  int dense_max_qubits = 14;
  /// At or below this spin count the full dense spectrum is used; above it
  /// the matrix-free block eigensolver computes only the low end.
  int dense_routing_qubits = 9;
  /// Residual tolerance of the iterative eigensolver.
  double tol = 1e-10;
  /// Ceiling on the iterative block size (the number of low eigenpairs
  /// that can be resolved when the bottom of the spectrum is clustered).
  int block_cap = 48;
  int max_iterations = 400;
};

/// Interpolated operator H(s) = (A(s)/2) H_driver + (B(s)/2) H_problem,
/// where H_driver = -sum_v sigma_x(v) flips one spin per off-diagonal
/// entry and H_problem is diagonal with the spin-model energy of each
/// computational basis state (bit v of the basis index is x_v).
class InterpolatedHamiltonian {
 public:
  InterpolatedHamiltonian(const IsingModel& ising,
                          const AnnealSchedule& schedule,
                          const SpectrumConfig& cfg = {});

  int num_qubits() const { return nq_; }
  std::size_t dim() const { return diag_.size(); }
  const SpectrumConfig& config() const { return cfg_; }

  double driver_coeff(double s) const { return schedule_.a(s) / 2.0; }
  double problem_coeff(double s) const { return schedule_.b(s) / 2.0; }

  /// Unscaled basis-state energies of the problem part.
  const std::vector<double>& problem_diagonal() const { return diag_; }

  /// Energy used by the distinct-state test: the basis-state energy at
  /// the end of the anneal, (B(1)/2) * E(b).
  double classical_energy(std::uint64_t b) const {
    return final_problem_coeff_ * diag_[b];
  }

  /// Full matrix at s; refuses above dense_max_qubits.
  Eigen::MatrixXd dense(double s) const;

  /// y = H(s) x, column by column.
  void apply(double s, const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const;

 private:
  AnnealSchedule schedule_;
  SpectrumConfig cfg_;
  int nq_ = 0;
  double final_problem_coeff_ = 0.0;
  std::vector<double> diag_;
};

/// Lowest level and the lowest level that belongs to a different state.
/// Eigenstates are matched to the basis state carrying their largest
/// |amplitude| (ties break toward the lower basis index); two eigenstates
/// count as different when the classical energies of their matched basis
/// states differ by more than eps_ghz. Classically degenerate ground
/// states therefore collapse into one level.
struct TwoLevels {
  double e0 = 0.0;
  /// Lowest distinct excited level; unset when none was identified.
  std::optional<double> e1;
  /// Valid lower bound on the distinct level whenever e1 is unset but a
  /// distinct level may still exist above the resolved part of the
  /// spectrum. +inf means "provably none exists".
  double e1_floor = std::numeric_limits<double>::infinity();
  /// Number of eigenpairs inspected.
  int levels_used = 0;
};

TwoLevels lowest_two_distinct(const InterpolatedHamiltonian& h, double s,
                              double eps_ghz);

struct TracePoint {
  double s = 0.0;
  double e0 = 0.0;
  /// NaN when no distinct excited level was determined at this sample.
  double e1 = std::numeric_limits<double>::quiet_NaN();
};

struct GapResult {
  double delta_min = std::numeric_limits<double>::quiet_NaN();
  double s_star = std::numeric_limits<double>::quiet_NaN();
  /// Count of distinct interpolation points diagonalized; 44 on every
  /// completed run (10 coarse + 2 x 17 refinement).
  int evaluations = 0;
  std::vector<TracePoint> trace;
  /// True when the coarse pass of the lowest level had no interior local
  /// maximum and the refinement interval was chosen around the smallest
  /// coarse gap instead.
  bool fallback_used = false;
  /// True when no sampled point produced a distinct excited level
  /// (fully degenerate problem).
  bool no_distinct = false;
};

/// Two-stage minimum-gap search: 10 equally spaced samples of [0, 1]
/// locate the interval around the interior maximum of the lowest level,
/// then the two flanking subintervals are each refined with a uniform
/// 19-point grid whose endpoints are reused, for exactly 44
/// diagonalizations. delta_min is the smallest determined gap over all
/// samples and s_star its location.
GapResult min_gap(const IsingModel& ising, const AnnealSchedule& schedule,
                  double eps_ghz, const SpectrumConfig& cfg = {});

}  // namespace mkcs

#include "mkcs/spectrum.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "mkcs/rng.hpp"

namespace mkcs {

InterpolatedHamiltonian::InterpolatedHamiltonian(const IsingModel& ising,
                                                 const AnnealSchedule& schedule,
                                                 const SpectrumConfig& cfg)
    : schedule_(schedule), cfg_(cfg), nq_(ising.num_spins) {
  if (nq_ < 1) throw std::invalid_argument("empty spin model");
  if (nq_ > cfg_.max_qubits)
    throw std::invalid_argument("spin count exceeds qubit budget");
  final_problem_coeff_ = schedule.b(1.0) / 2.0;
  diag_ = ising_diagonal(ising);
}

Eigen::MatrixXd InterpolatedHamiltonian::dense(double s) const {
  if (nq_ > cfg_.dense_max_qubits)
    throw std::invalid_argument("dense matrix exceeds dense qubit budget");
  const Eigen::Index n = Eigen::Index(dim());
  const double ca = driver_coeff(s);
  const double cb = problem_coeff(s);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    h(b, b) = cb * diag_[std::size_t(b)];
    for (int v = 0; v < nq_; ++v) h(b ^ (Eigen::Index(1) << v), b) = -ca;
  }
  return h;
}

void InterpolatedHamiltonian::apply(double s, const Eigen::MatrixXd& x,
                                    Eigen::MatrixXd& y) const {
  const double ca = driver_coeff(s);
  const double cb = problem_coeff(s);
  const std::size_t n = dim();
  y.resize(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double* xp = x.col(c).data();
    double* yp = y.col(c).data();
    for (std::size_t b = 0; b < n; ++b) yp[b] = cb * diag_[b] * xp[b];
    if (ca == 0.0) continue;
    for (int v = 0; v < nq_; ++v) {
      const std::size_t mask = std::size_t(1) << v;
      for (std::size_t base = 0; base < n; base += 2 * mask) {
        const double* xl = xp + base;
        const double* xh = xp + base + mask;
        double* yl = yp + base;
        double* yh = yp + base + mask;
        for (std::size_t off = 0; off < mask; ++off) {
          yl[off] -= ca * xh[off];
          yh[off] -= ca * xl[off];
        }
      }
    }
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Orthonormalizes the columns of s via the eigendecomposition of its Gram
/// matrix, dropping near-null directions; the same transform is applied to
/// hs when present. Returns the retained column count.
int svqb_pass(Eigen::MatrixXd& s, Eigen::MatrixXd* hs) {
  if (s.cols() == 0) return 0;
  Eigen::MatrixXd gram = s.transpose() * s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double largest = lam(lam.size() - 1);
  if (!(largest > 0.0)) {
    s.resize(s.rows(), 0);
    if (hs) hs->resize(hs->rows(), 0);
    return 0;
  }
  const double cutoff = largest * 1e-12;
  int kept = 0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) > cutoff) ++kept;
  Eigen::MatrixXd transform(lam.size(), kept);
  int col = 0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) <= cutoff) continue;
    transform.col(col++) =
        es.eigenvectors().col(i) / std::sqrt(lam(i));
  }
  s = s * transform;
  if (hs) *hs = *hs * transform;
  return kept;
}

int orthonormalize(Eigen::MatrixXd& s, Eigen::MatrixXd* hs) {
  int kept = svqb_pass(s, hs);
  if (kept > 0) kept = svqb_pass(s, hs);
  return kept;
}

struct EigenpairBlock {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal, one column per value
  int iterations = 0;
};

bool trace_enabled() {
  static const bool on = std::getenv("MKCS_SPECTRUM_TRACE") != nullptr;
  return on;
}

/// Lowest `want` eigenpairs of H(s) by a block locally-optimal conjugate
/// gradient iteration with joint Rayleigh-Ritz over the current block, the
/// previous search directions, and the preconditioned residuals. The
/// preconditioner is diagonal, (|diag H - theta| clipped from below)^-1,
/// which is close to an exact inverse in the diagonally dominated late
/// stretch of the anneal where the bottom of the spectrum clusters.
/// Deterministic for fixed inputs: the starting block is the warm guess
/// padded with seeded noise, and all arithmetic is serial.
EigenpairBlock lobpcg_lowest(const InterpolatedHamiltonian& h, double s,
                             int want, const Eigen::MatrixXd& warm,
                             std::uint64_t seed) {
  const SpectrumConfig& cfg = h.config();
  const Eigen::Index n = Eigen::Index(h.dim());
  const int guard = 4;
  const int m = int(std::min<Eigen::Index>(want + guard, n));
  if (want > n)
    throw std::invalid_argument("requested more eigenpairs than dimensions");

  std::mt19937_64 gen(splitmix64(seed));
  auto fill_random = [&](Eigen::Ref<Eigen::MatrixXd> block) {
    for (Eigen::Index c = 0; c < block.cols(); ++c)
      for (Eigen::Index r = 0; r < block.rows(); ++r)
        block(r, c) = uniform_real(gen, -1.0, 1.0);
  };

  Eigen::MatrixXd x(n, m);
  const int warm_cols = int(std::min<Eigen::Index>(warm.cols(), m));
  if (warm_cols > 0) x.leftCols(warm_cols) = warm.leftCols(warm_cols);
  if (warm_cols < m) fill_random(x.rightCols(m - warm_cols));
  while (orthonormalize(x, nullptr) < m) {
    // Degenerate start; widen with fresh noise until full rank.
    const int have = int(x.cols());
    x.conservativeResize(n, m);
    fill_random(x.rightCols(m - have));
  }

  Eigen::MatrixXd hx(n, m);
  h.apply(s, x, hx);

  Eigen::VectorXd theta(m);
  {
    Eigen::MatrixXd g = x.transpose() * hx;
    g = 0.5 * (g + g.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    x = (x * es.eigenvectors()).eval();
    hx = (hx * es.eigenvectors()).eval();
    theta = es.eigenvalues();
  }

  // Residual scale: a cheap bound on the operator norm keeps the target
  // meaningful for eigenvalues near zero.
  double max_diag = 0.0;
  for (double d : h.problem_diagonal()) max_diag = std::max(max_diag, std::fabs(d));
  const double scale =
      h.driver_coeff(s) * h.num_qubits() + h.problem_coeff(s) * max_diag;
  const double rtol = cfg.tol * std::max(1.0, scale);
  const double clip = std::max(1e-3 * scale, 1e-12);
  const double cb = h.problem_coeff(s);
  const std::vector<double>& diag = h.problem_diagonal();

  Eigen::MatrixXd p(n, 0), hp(n, 0);
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    Eigen::MatrixXd r = hx - x * theta.asDiagonal();
    int converged = 0;
    while (converged < m && r.col(converged).norm() <= rtol) ++converged;
    if (converged >= want)
      return EigenpairBlock{theta.head(want), x.leftCols(want), iter};

    if (p.cols() > 0) {
      const Eigen::MatrixXd overlap = x.transpose() * p;
      p -= x * overlap;
      hp -= hx * overlap;
      if (orthonormalize(p, &hp) == 0) {
        p.resize(n, 0);
        hp.resize(n, 0);
      }
    }

    // Preconditioned residuals of the pairs that still move.
    Eigen::MatrixXd w(n, m - converged);
    for (int j = converged; j < m; ++j) {
      const double shift = theta(j);
      double* wp = w.col(j - converged).data();
      const double* rp = r.col(j).data();
      for (Eigen::Index b = 0; b < n; ++b) {
        const double denom =
            std::max(std::fabs(cb * diag[std::size_t(b)] - shift), clip);
        wp[b] = rp[b] / denom;
      }
    }
    w -= x * (x.transpose() * w).eval();
    if (p.cols() > 0) w -= p * (p.transpose() * w).eval();
    w -= x * (x.transpose() * w).eval();
    if (orthonormalize(w, nullptr) == 0) {
      w.resize(n, 1);
      fill_random(w);
      w -= x * (x.transpose() * w).eval();
      if (p.cols() > 0) w -= p * (p.transpose() * w).eval();
      if (orthonormalize(w, nullptr) == 0)
        throw std::runtime_error("eigensolver lost its search space");
    }
    Eigen::MatrixXd hw(n, w.cols());
    h.apply(s, w, hw);

    const int mx = m, mp = int(p.cols()), mw = int(w.cols());
    Eigen::MatrixXd basis(n, mx + mp + mw), hbasis(n, mx + mp + mw);
    basis.leftCols(mx) = x;
    hbasis.leftCols(mx) = hx;
    if (mp) {
      basis.middleCols(mx, mp) = p;
      hbasis.middleCols(mx, mp) = hp;
    }
    basis.rightCols(mw) = w;
    hbasis.rightCols(mw) = hw;

    Eigen::MatrixXd g = basis.transpose() * hbasis;
    g = 0.5 * (g + g.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    const Eigen::MatrixXd lead = es.eigenvectors().leftCols(m);

    Eigen::MatrixXd x_new = basis * lead;
    Eigen::MatrixXd hx_new = hbasis * lead;
    Eigen::MatrixXd dir = lead;
    dir.topRows(mx).setZero();
    p = basis * dir;
    hp = hbasis * dir;
    x = std::move(x_new);
    hx = std::move(hx_new);
    theta = es.eigenvalues().head(m);
  }
  throw std::runtime_error("eigensolver failed to converge");
}

/// Basis state carrying the largest |amplitude| of one eigenvector,
/// ties toward the lower index.
std::uint64_t dominant_basis_state(const Eigen::VectorXd& vec) {
  Eigen::Index best = 0;
  double mag = std::fabs(vec(0));
  for (Eigen::Index b = 1; b < vec.size(); ++b) {
    const double m = std::fabs(vec(b));
    if (m > mag) {
      mag = m;
      best = b;
    }
  }
  return std::uint64_t(best);
}

struct LevelScan {
  double e0 = 0.0;
  std::optional<double> e1;
  double e1_floor = kInf;
  int levels_used = 0;
  Eigen::MatrixXd block;  // converged eigenvectors, for warm chaining
};

/// Exact treatment when the driver coefficient vanishes: eigenstates are
/// the basis states themselves.
LevelScan scan_diagonal(const InterpolatedHamiltonian& h, double s,
                        double eps) {
  const std::vector<double>& diag = h.problem_diagonal();
  const double cb = h.problem_coeff(s);
  std::size_t ground = 0;
  for (std::size_t b = 1; b < diag.size(); ++b)
    if (cb * diag[b] < cb * diag[ground]) ground = b;
  LevelScan out;
  out.e0 = cb * diag[ground];
  out.levels_used = 2;
  const double cls0 = h.classical_energy(ground);
  double best_distinct = kInf;
  for (std::size_t b = 0; b < diag.size(); ++b) {
    if (std::fabs(h.classical_energy(b) - cls0) <= eps) continue;
    best_distinct = std::min(best_distinct, cb * diag[b]);
  }
  if (best_distinct < kInf) out.e1 = best_distinct;
  return out;
}

LevelScan scan_dense(const InterpolatedHamiltonian& h, double s, double eps) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense(s));
  const Eigen::VectorXd& ev = es.eigenvalues();
  LevelScan out;
  out.e0 = ev(0);
  const double cls0 =
      h.classical_energy(dominant_basis_state(es.eigenvectors().col(0)));
  for (Eigen::Index j = 1; j < ev.size(); ++j) {
    const double cls =
        h.classical_energy(dominant_basis_state(es.eigenvectors().col(j)));
    if (std::fabs(cls - cls0) > eps) {
      out.e1 = ev(j);
      out.levels_used = int(j) + 1;
      return out;
    }
  }
  out.levels_used = int(ev.size());
  return out;  // provably no distinct level
}

/// Iterative scan: resolve the bottom of the spectrum a block at a time,
/// growing the block while no distinct level has appeared. `stop_above`
/// prunes the growth once the resolved span already exceeds a known gap
/// candidate: the unresolved distinct level can then only be larger, which
/// the floor communicates to the caller.
LevelScan scan_iterative(const InterpolatedHamiltonian& h, double s,
                         double eps, double stop_above,
                         const Eigen::MatrixXd& warm, int start_levels,
                         std::uint64_t seed) {
  const SpectrumConfig& cfg = h.config();
  const int dim_cap = int(std::min<std::size_t>(h.dim(), cfg.block_cap));
  int want = std::clamp(start_levels, 2, dim_cap);
  Eigen::MatrixXd guess = warm;
  for (;;) {
    const double t0 = omp_get_wtime();
    EigenpairBlock blk = lobpcg_lowest(h, s, want, guess, seed);
    if (trace_enabled())
      std::fprintf(stderr, "[spectrum] s=%.5f dim=%zu want=%d iters=%d %.2fs\n",
                   s, h.dim(), want, blk.iterations, omp_get_wtime() - t0);
    LevelScan out;
    out.e0 = blk.values(0);
    out.block = blk.vectors;
    out.levels_used = want;
    const double cls0 =
        h.classical_energy(dominant_basis_state(blk.vectors.col(0)));
    for (int j = 1; j < want; ++j) {
      const double cls =
          h.classical_energy(dominant_basis_state(blk.vectors.col(j)));
      if (std::fabs(cls - cls0) > eps) {
        out.e1 = blk.values(j);
        out.levels_used = j + 1;
        return out;
      }
    }
    out.e1_floor = blk.values(want - 1);
    if (want >= dim_cap) return out;
    if (out.e1_floor - out.e0 > stop_above) return out;
    guess = blk.vectors;
    want = std::min(dim_cap, want * 2);
  }
}

LevelScan scan_point(const InterpolatedHamiltonian& h, double s, double eps,
                     double stop_above, const Eigen::MatrixXd& warm,
                     int start_levels, std::uint64_t seed) {
  if (h.driver_coeff(s) == 0.0) return scan_diagonal(h, s, eps);
  if (h.num_qubits() <= h.config().dense_routing_qubits)
    return scan_dense(h, s, eps);
  return scan_iterative(h, s, eps, stop_above, warm, start_levels, seed);
}

double scan_gap(const LevelScan& scan) {
  return scan.e1 ? *scan.e1 - scan.e0 : kInf;
}

}  // namespace

TwoLevels lowest_two_distinct(const InterpolatedHamiltonian& h, double s,
                              double eps_ghz) {
  const LevelScan scan = scan_point(h, s, eps_ghz, kInf, Eigen::MatrixXd(), 2,
                                    seed_combine({0x73e1u, h.dim()}));
  return TwoLevels{scan.e0, scan.e1, scan.e1_floor, scan.levels_used};
}

GapResult min_gap(const IsingModel& ising, const AnnealSchedule& schedule,
                  double eps_ghz, const SpectrumConfig& cfg) {
  InterpolatedHamiltonian h(ising, schedule, cfg);
  const bool iterative = h.num_qubits() > cfg.dense_routing_qubits;
  const std::uint64_t base_seed =
      seed_combine({0x6a9u, std::uint64_t(h.num_qubits())});

  constexpr int kCoarse = 10;
  std::vector<double> grid(kCoarse);
  for (int i = 0; i < kCoarse; ++i) grid[i] = double(i) / (kCoarse - 1);

  std::vector<LevelScan> coarse(kCoarse);
  int evaluations = 0;
  double candidate = kInf;

  if (!iterative) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < kCoarse; ++i)
      coarse[i] = scan_point(h, grid[i], eps_ghz, kInf, Eigen::MatrixXd(), 2,
                             base_seed);
    evaluations += kCoarse;
    for (const auto& scan : coarse)
      candidate = std::min(candidate, scan_gap(scan));
  } else {
    // The final point is exact and free when the driver vanishes there;
    // doing it first seeds the pruning bound for the chain.
    int chain_end = kCoarse;
    if (h.driver_coeff(1.0) == 0.0) {
      coarse[kCoarse - 1] = scan_diagonal(h, 1.0, eps_ghz);
      ++evaluations;
      candidate = std::min(candidate, scan_gap(coarse[kCoarse - 1]));
      chain_end = kCoarse - 1;
    }
    Eigen::MatrixXd warm;
    int levels = 2;
    for (int i = 0; i < chain_end; ++i) {
      coarse[i] = scan_point(h, grid[i], eps_ghz, candidate, warm, levels,
                             seed_combine({base_seed, std::uint64_t(i)}));
      ++evaluations;
      candidate = std::min(candidate, scan_gap(coarse[i]));
      if (coarse[i].block.size() > 0) {
        warm = coarse[i].block;
        levels = std::max(2, coarse[i].levels_used);
      }
    }
  }

  // Interval selection: the first interior sample whose lowest level
  // exceeds both neighbors; otherwise fall back to the interval around
  // the smallest coarse gap.
  int center = -1;
  for (int i = 1; i + 1 < kCoarse; ++i) {
    if (coarse[i].e0 > coarse[i - 1].e0 && coarse[i].e0 > coarse[i + 1].e0) {
      center = i;
      break;
    }
  }
  bool fallback = false;
  if (center < 0) {
    fallback = true;
    double best_gap = kInf;
    for (int i = 0; i < kCoarse; ++i) {
      const double gap = scan_gap(coarse[i]);
      if (gap < best_gap) {
        best_gap = gap;
        center = i;
      }
    }
    if (center < 0 || best_gap == kInf) {
      // Nothing anywhere produced a distinct level.
      GapResult out;
      out.no_distinct = true;
      out.evaluations = evaluations;
      out.fallback_used = true;
      for (int i = 0; i < kCoarse; ++i)
        out.trace.push_back({grid[i], coarse[i].e0,
                             std::numeric_limits<double>::quiet_NaN()});
      return out;
    }
    center = std::clamp(center, 1, kCoarse - 2);
  }

  // Refinement: a uniform 19-point grid over each flanking interval; the
  // three coarse points are reused, 17 new samples per side, 44 total.
  constexpr int kRefine = 17;
  struct Sample {
    double s;
    LevelScan scan;
  };
  std::vector<Sample> refined;
  refined.reserve(2 * kRefine);
  auto refine_interval = [&](int left, std::uint64_t chain_tag) {
    const double s_left = grid[left];
    const double width = grid[left + 1] - grid[left];
    Eigen::MatrixXd warm = coarse[left].block;
    int levels = std::max(2, coarse[left].levels_used);
    for (int t = 1; t <= kRefine; ++t) {
      const double s = s_left + width * double(t) / (kRefine + 1);
      LevelScan scan =
          scan_point(h, s, eps_ghz, candidate, warm, levels,
                     seed_combine({base_seed, chain_tag, std::uint64_t(t)}));
      ++evaluations;
      candidate = std::min(candidate, scan_gap(scan));
      if (scan.block.size() > 0) {
        warm = scan.block;
        levels = std::max(2, scan.levels_used);
      }
      refined.push_back({s, std::move(scan)});
    }
  };
  if (!iterative) {
    std::vector<double> points;
    for (int side = 0; side < 2; ++side) {
      const int left = center - 1 + side;
      for (int t = 1; t <= kRefine; ++t)
        points.push_back(grid[left] +
                         (grid[left + 1] - grid[left]) * double(t) /
                             (kRefine + 1));
    }
    refined.resize(points.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < int(points.size()); ++i)
      refined[i] = {points[i], scan_point(h, points[i], eps_ghz, kInf,
                                          Eigen::MatrixXd(), 2, base_seed)};
    evaluations += int(points.size());
  } else {
    refine_interval(center - 1, 0xaa);
    refine_interval(center, 0xbb);
  }

  // Assemble every sample, check soundness of pruned points, pick the
  // minimum determined gap.
  std::vector<Sample> all;
  all.reserve(kCoarse + refined.size());
  for (int i = 0; i < kCoarse; ++i) all.push_back({grid[i], coarse[i]});
  for (auto& s : refined) all.push_back(std::move(s));
  std::sort(all.begin(), all.end(),
            [](const Sample& a, const Sample& b) { return a.s < b.s; });

  GapResult out;
  out.evaluations = evaluations;
  out.fallback_used = fallback;
  double best = kInf;
  for (const auto& sample : all) {
    const double gap = scan_gap(sample.scan);
    if (gap < best) {
      best = gap;
      out.s_star = sample.s;
    }
  }
  if (best == kInf) {
    out.no_distinct = true;
  } else {
    out.delta_min = best;
    for (const auto& sample : all) {
      if (!sample.scan.e1 && sample.scan.e1_floor - sample.scan.e0 < best)
        throw std::runtime_error(
            "unresolved clustered spectrum below the gap candidate; raise "
            "block_cap");
    }
  }
  for (const auto& sample : all)
    out.trace.push_back({sample.s, sample.scan.e0,
                         sample.scan.e1
                             ? *sample.scan.e1
                             : std::numeric_limits<double>::quiet_NaN()});
  return out;
}

}  // namespace mkcs

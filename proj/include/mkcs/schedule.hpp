#pragma once

#include <string>
#include <vector>

namespace mkcs {

/// Sampled annealing control curves: tunneling energy A(s) and problem
/// energy B(s) in GHz over the reduced time s in [0, 1], interpolated
/// piecewise linearly between samples. s must be strictly increasing and
/// span exactly [0, 1]; energies must be nonnegative.
class AnnealSchedule {
 public:
  AnnealSchedule(std::vector<double> s, std::vector<double> a,
                 std::vector<double> b);

  /// Default curves: A(s) = a0 * (1 - s), B(s) = b0 * s.
  static AnnealSchedule linear(double a0 = 10.0, double b0 = 10.0);

  /// CSV with header "s,A_GHz,B_GHz" and rows with s ascending.
  static AnnealSchedule from_csv_file(const std::string& path);
  static AnnealSchedule from_csv(const std::string& text);

  double a(double s) const;
  double b(double s) const;
  std::size_t size() const { return s_.size(); }

 private:
  double interp(const std::vector<double>& values, double s) const;

  std::vector<double> s_, a_, b_;
};

}  // namespace mkcs

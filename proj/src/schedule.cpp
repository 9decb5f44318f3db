#include "mkcs/schedule.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mkcs {

AnnealSchedule::AnnealSchedule(std::vector<double> s, std::vector<double> a,
                               std::vector<double> b)
    : s_(std::move(s)), a_(std::move(a)), b_(std::move(b)) {
  if (s_.size() < 2 || s_.size() != a_.size() || s_.size() != b_.size())
    throw std::invalid_argument("schedule needs matched samples, at least 2");
  if (s_.front() != 0.0 || s_.back() != 1.0)
    throw std::invalid_argument("schedule must span s in [0, 1]");
  for (std::size_t i = 1; i < s_.size(); ++i)
    if (!(s_[i] > s_[i - 1]))
      throw std::invalid_argument("schedule s values must strictly increase");
  for (std::size_t i = 0; i < s_.size(); ++i)
    if (a_[i] < 0.0 || b_[i] < 0.0)
      throw std::invalid_argument("schedule energies must be nonnegative");
}

AnnealSchedule AnnealSchedule::linear(double a0, double b0) {
  return AnnealSchedule({0.0, 1.0}, {a0, 0.0}, {0.0, b0});
}

AnnealSchedule AnnealSchedule::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.find("s,A_GHz,B_GHz") != 0)
    throw std::invalid_argument("schedule CSV must start with s,A_GHz,B_GHz");
  std::vector<double> s, a, b;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double sv, av, bv;
    if (!(ls >> sv >> av >> bv))
      throw std::invalid_argument("malformed schedule row: " + line);
    s.push_back(sv);
    a.push_back(av);
    b.push_back(bv);
  }
  return AnnealSchedule(std::move(s), std::move(a), std::move(b));
}

AnnealSchedule AnnealSchedule::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open schedule file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_csv(buffer.str());
}

double AnnealSchedule::interp(const std::vector<double>& values,
                              double s) const {
  if (s <= 0.0) return values.front();
  if (s >= 1.0) return values.back();
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  const std::size_t hi = std::size_t(it - s_.begin());
  const std::size_t lo = hi - 1;
  const double w = (s - s_[lo]) / (s_[hi] - s_[lo]);
  return values[lo] + w * (values[hi] - values[lo]);
}

double AnnealSchedule::a(double s) const { return interp(a_, s); }
double AnnealSchedule::b(double s) const { return interp(b_, s); }

}  // namespace mkcs

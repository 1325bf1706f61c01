#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace impact {

/// Trading times t_0 = 0 < t_1 < ... < t_N = T.
class TimeGrid {
 public:
  /// N + 1 points spaced T / N apart.
  static TimeGrid equidistant(double horizon, std::size_t n_steps);
  /// Arbitrary strictly increasing times starting at 0.
  static TimeGrid from_times(std::vector<double> times);

  std::span<const double> times() const noexcept { return times_; }
  double operator[](std::size_t i) const { return times_[i]; }
  std::size_t n_points() const noexcept { return times_.size(); }
  std::size_t n_steps() const noexcept { return times_.size() - 1; }
  double horizon() const noexcept { return times_.back(); }
  bool equidistant() const noexcept { return equidistant_; }
  /// Spacing of an equidistant grid; throws otherwise.
  double step() const;

  bool operator==(const TimeGrid& other) const = default;

 private:
  explicit TimeGrid(std::vector<double> times);

  std::vector<double> times_;
  bool equidistant_ = false;
};

}  // namespace impact

#include "impact/grid.hpp"

#include <cmath>
#include <string>

#include "impact/error.hpp"

namespace impact {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::LagMismatch: return "lag mismatch";
    case ErrorCode::SingularityRisk: return "singularity risk";
    case ErrorCode::DegenerateKernel: return "degenerate kernel";
    case ErrorCode::NonsingularityViolation: return "nonsingularity violation";
    case ErrorCode::WrongArity: return "wrong arity";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::SingularFlow: return "singular flow";
    case ErrorCode::Scale: return "scale error";
    case ErrorCode::NoLinearSolution: return "no linear solution";
    case ErrorCode::DegenerateSchedule: return "degenerate schedule";
    case ErrorCode::ShermanMorrisonDegeneracy: return "Sherman-Morrison degeneracy";
    case ErrorCode::NotPositiveDefinite: return "not positive definite";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Io: return "io error";
  }
  return "unknown error";
}

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2) throw Error(ErrorCode::InvalidArgument, "time grid needs at least 2 points");
  if (times_.front() != 0.0) throw Error(ErrorCode::InvalidArgument, "time grid must start at 0");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1]) || !std::isfinite(times_[i]))
      throw Error(ErrorCode::InvalidArgument,
                  "time grid must be strictly increasing (index " + std::to_string(i) + ")");
  }
  const double h = times_.back() / static_cast<double>(n_steps());
  equidistant_ = true;
  for (std::size_t i = 1; i < times_.size(); ++i) {
    const double gap = times_[i] - times_[i - 1];
    if (std::abs(gap - h) > 1e-12 * h) {
      equidistant_ = false;
      break;
    }
  }
}

TimeGrid TimeGrid::equidistant(double horizon, std::size_t n_steps) {
  if (!(horizon > 0.0)) throw Error(ErrorCode::InvalidArgument, "horizon must be positive");
  if (n_steps == 0) throw Error(ErrorCode::InvalidArgument, "need at least one step");
  std::vector<double> t(n_steps + 1);
  for (std::size_t k = 0; k <= n_steps; ++k)
    t[k] = horizon * static_cast<double>(k) / static_cast<double>(n_steps);
  t.back() = horizon;
  return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::from_times(std::vector<double> times) { return TimeGrid(std::move(times)); }

double TimeGrid::step() const {
  if (!equidistant_) throw Error(ErrorCode::InvalidArgument, "grid is not equidistant");
  return horizon() / static_cast<double>(n_steps());
}

}  // namespace impact

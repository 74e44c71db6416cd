#pragma once

#include "bsym/closedform.hpp"

#include <array>
#include <limits>
#include <vector>

namespace bsym {

struct OracleConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  long max_steps = 1'000'000;
  double blowup_threshold = 1e12;
  /// Upper bound on |h|. With loose tolerances this pins the step, which is
  /// how the order of the pair is checked.
  double max_step = std::numeric_limits<double>::infinity();

  void validate() const;
};

enum class OracleStatus { Completed, BlowUp };

/// Accepted steps of a direct integration with dense output between them.
class Trajectory {
public:
  struct Sample {
    double t;
    double y;
  };

  OracleStatus status() const noexcept { return status_; }
  /// Last accepted time. Equals t_end when status() is Completed.
  double t_reached() const noexcept { return samples_.back().t; }
  const std::vector<Sample>& samples() const noexcept { return samples_; }

  bool covers(double t) const noexcept;
  /// Dense-output value at t. Throws DomainError outside the integrated range.
  double operator()(double t) const;

private:
  friend Trajectory rk_solve(const ProblemSpec&, double, const OracleConfig&);

  // Continuous extension of one step, y(t0 + theta h) for theta in [0, 1].
  struct Segment {
    double t0;
    double h;
    std::array<double, 5> r;
  };

  std::vector<Sample> samples_;
  std::vector<Segment> segments_;
  OracleStatus status_ = OracleStatus::Completed;
};

/// Integrates y' = a(t) y + b(t) signed_pow(y, n) from (0, d) towards t_end
/// with the Dormand-Prince 5(4) pair. Stops early with status BlowUp once |y|
/// exceeds cfg.blowup_threshold, or when the step size collapses while |y| is
/// already large.
///
/// Throws StepFailure when the step size underflows elsewhere or max_steps is
/// exhausted, and DomainError when y^n leaves its real domain.
Trajectory rk_solve(const ProblemSpec& p, double t_end, const OracleConfig& cfg = {});

} // namespace bsym

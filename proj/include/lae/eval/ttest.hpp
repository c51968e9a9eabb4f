#pragma once

#include <string>
#include <vector>

namespace lae::eval {

struct TTestResult {
  int n = 0;
  double mean = 0.0;
  double sd = 0.0;        // sample standard deviation (ddof=1)
  double t = 0.0;
  double p = 1.0;         // two-sided
  double ci_lo = 0.0;     // 95% CI on the mean
  double ci_hi = 0.0;
  double cohens_d = 0.0;  // mean / sd
  bool degenerate = false;  // all deltas identical (zero variance)

  // Mirrors the reporting convention of flooring tiny p-values.
  std::string p_string() const;
};

// Paired t statistics over per-scenario deltas. Two-sided p from the
// Student-t CDF via the regularized incomplete beta function (Lentz
// continued fraction); the CI critical value is found by bisection on that
// CDF. Requires n >= 2. Zero-variance input sets the degenerate flag
// instead of dividing by zero.
TTestResult paired_ttest(const std::vector<double>& deltas);

// Exposed for oracle tests.
double regularized_incomplete_beta(double a, double b, double x);
double student_t_two_sided_p(double t, double dof);
double student_t_critical(double dof, double two_sided_alpha);

}  // namespace lae::eval

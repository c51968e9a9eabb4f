#include "lae/eval/ttest.hpp"

#include <cmath>
#include <sstream>

#include "lae/common.hpp"

namespace lae::eval {

namespace {

// Lentz's continued fraction for the incomplete beta (Numerical Recipes
// form); converges fast for x < (a+1)/(a+b+2).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof) {
  const double x = dof / (dof + t * t);
  return regularized_incomplete_beta(dof / 2.0, 0.5, x);
}

double student_t_critical(double dof, double two_sided_alpha) {
  double lo = 0.0, hi = 1e3;
  while (student_t_two_sided_p(hi, dof) > two_sided_alpha) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_two_sided_p(mid, dof) > two_sided_alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

TTestResult paired_ttest(const std::vector<double>& deltas) {
  if (deltas.size() < 2)
    fail(ErrorKind::ConfigError, "paired t-test needs at least 2 deltas");
  TTestResult r;
  r.n = static_cast<int>(deltas.size());
  double sum = 0.0;
  for (double d : deltas) sum += d;
  r.mean = sum / r.n;
  double ss = 0.0;
  for (double d : deltas) ss += (d - r.mean) * (d - r.mean);
  const double var = ss / (r.n - 1);
  r.sd = std::sqrt(var);

  if (r.sd == 0.0) {
    r.degenerate = true;
    r.t = 0.0;
    r.p = r.mean == 0.0 ? 1.0 : 0.0;
    r.ci_lo = r.ci_hi = r.mean;
    r.cohens_d = 0.0;
    return r;
  }

  const double se = r.sd / std::sqrt(static_cast<double>(r.n));
  r.t = r.mean / se;
  const double dof = r.n - 1;
  r.p = student_t_two_sided_p(r.t, dof);
  const double crit = student_t_critical(dof, 0.05);
  r.ci_lo = r.mean - crit * se;
  r.ci_hi = r.mean + crit * se;
  r.cohens_d = r.mean / r.sd;
  return r;
}

std::string TTestResult::p_string() const {
  if (degenerate) return mean == 0.0 ? "degenerate (all zero)" : "degenerate";
  if (p < 1e-300) return "< 1e-300";
  std::ostringstream os;
  os.precision(6);
  os << p;
  return os.str();
}

}  // namespace lae::eval

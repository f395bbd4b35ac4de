#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"

namespace ppmbeam {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr long kMaxIterations = 1000000;

// Lanczos g = 7, n = 9 coefficient set.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double ln_gamma_lanczos(double x) {
  // valid for x >= 0.5
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
  const double t = x + 6.5;
  constexpr double half_ln_2pi = 0.91893853320467274178;
  return half_ln_2pi + (x - 0.5) * std::log(t) - t + std::log(acc);
}

// P(s, x) by the power series, valid (and fast) for x < s + 1.
// Returns ln P.
double log_p_series(double s, double x) {
  double ap = s;
  double del = 1.0 / s;
  double sum = del;
  for (long i = 0; i < kMaxIterations; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * std::numeric_limits<double>::epsilon())
      return std::log(sum) + s * std::log(x) - x - ln_gamma(s);
  }
  throw NumericalError("incomplete gamma series did not converge (s=" + std::to_string(s) +
                           ", x=" + std::to_string(x) + ")",
                       kMaxIterations);
}

// Q(s, x) by the modified-Lentz continued fraction, valid for x >= s + 1.
// Returns ln Q.
double log_q_lentz(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (long i = 1; i <= kMaxIterations; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) <= std::numeric_limits<double>::epsilon())
      return std::log(h) + s * std::log(x) - x - ln_gamma(s);
  }
  throw NumericalError("incomplete gamma continued fraction did not converge (s=" +
                           std::to_string(s) + ", x=" + std::to_string(x) + ")",
                       kMaxIterations);
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma requires x > 0, got " + std::to_string(x));
  if (x < 0.5) return ln_gamma_lanczos(x + 1.0) - std::log(x);
  return ln_gamma_lanczos(x);
}

double log_reg_lower_gamma(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0))
    throw DomainError("reg_lower_gamma requires s > 0, x >= 0 (s=" + std::to_string(s) +
                      ", x=" + std::to_string(x) + ")");
  if (x == 0.0) return kNegInf;
  if (x < s + 1.0) return std::min(log_p_series(s, x), 0.0);
  const double lq = log_q_lentz(s, x);
  // P = 1 - Q; Q <= ~0.5 in this branch, so no cancellation.
  return std::log1p(-std::exp(lq));
}

double reg_lower_gamma(double s, double x) {
  return std::exp(log_reg_lower_gamma(s, x));
}

double log_binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n)
    throw DomainError("log_binomial requires 0 <= k <= n, got n=" + std::to_string(n) +
                      ", k=" + std::to_string(k));
  if (k == 0 || k == n) return 0.0;
  if (n <= 64) {
    // C(64, 32) < 2^61: exact in 128-bit via the multiplicative recurrence.
    const long long kk = std::min(k, n - k);
    unsigned __int128 b = 1;
    for (long long j = 1; j <= kk; ++j) {
      b = b * static_cast<unsigned __int128>(n - kk + j);
      b /= static_cast<unsigned __int128>(j);  // exact: partial products are binomials
    }
    return static_cast<double>(std::log(static_cast<long double>(b)));
  }
  return ln_gamma(static_cast<double>(n) + 1.0) - ln_gamma(static_cast<double>(k) + 1.0) -
         ln_gamma(static_cast<double>(n - k) + 1.0);
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) throw DomainError("log_sum_exp requires a non-empty sequence");
  double m = kNegInf;
  for (double v : values) m = std::max(m, v);
  if (m == kNegInf) return kNegInf;  // every term is an exact zero
  if (std::isinf(m)) return m;
  long double acc = 0.0L;
  for (double v : values) acc += std::exp(static_cast<long double>(v - m));
  return m + static_cast<double>(std::log(acc));
}

}  // namespace ppmbeam

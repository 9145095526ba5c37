#include "diffblp/qmc.hpp"

#include <cmath>
#include <ostream>

namespace diffblp {

double generalized_golden_ratio(int d) {
  if (d < 1) throw DomainError("dimension must be >= 1");
  // g(x) = x^(d+1) - x - 1 is increasing on [1, 2] with g(1) < 0 < g(2);
  // bisect to a tight bracket, then polish with Newton
  double lo = 1.0, hi = 2.0;
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    double g = std::pow(mid, d + 1) - mid - 1.0;
    (g > 0 ? hi : lo) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {
    double g = std::pow(x, d + 1) - x - 1.0;
    double gp = (d + 1) * std::pow(x, d) - 1.0;
    double step = g / gp;
    x -= step;
    if (std::abs(step) < 1e-15 * x) break;
  }
  return x;
}

Eigen::MatrixXd rd_sequence(int d, int n, double seed_offset) {
  if (d < 1 || n < 1) throw DomainError("rd_sequence: need d >= 1 and n >= 1");
  if (!(seed_offset >= 0.0 && seed_offset < 1.0))
    throw DomainError("rd_sequence: seed_offset must lie in [0, 1)");
  const double phi = generalized_golden_ratio(d);
  Eigen::VectorXd alpha(d);
  double a = 1.0;
  for (int k = 0; k < d; ++k) {
    a /= phi;
    if (!(a > 0.0) || !std::isfinite(a))
      throw DomainError("rd_sequence: alpha underflows at dimension " +
                        std::to_string(k + 1));
    alpha[k] = a;
  }
  Eigen::MatrixXd out(n, d);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k) {
      double v = seed_offset + (i + 1.0) * alpha[k];
      out(i, k) = v - std::floor(v);
    }
  }
  return out;
}

namespace {

// Acklam's rational approximation to the inverse normal CDF, |rel err| < 1.15e-9.
double inverse_normal_cdf_approx(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  }
  if (p > phigh) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  }
  double q = p - 0.5, r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("inverse_normal_cdf: argument must lie in (0, 1)");
  double x = inverse_normal_cdf_approx(p);
  // one Newton step against the exact CDF
  const double inv_sqrt2 = 0.7071067811865475244;
  const double inv_sqrt2pi = 0.3989422804014326779;
  double cdf = 0.5 * std::erfc(-x * inv_sqrt2);
  double pdf = inv_sqrt2pi * std::exp(-0.5 * x * x);
  if (pdf > 0.0) x -= (cdf - p) / pdf;
  return x;
}

DrawMatrix gaussian_draws(int d, int n, double seed_offset) {
  DrawMatrix out;
  out.nu = rd_sequence(d, n, seed_offset);
  out.nu = out.nu.unaryExpr([](double u) { return inverse_normal_cdf(u); });
  out.kind = DrawMatrix::Kind::Gaussian;
  return out;
}

void write_draws_csv(std::ostream& os, const DrawMatrix& draws) {
  for (int k = 0; k < draws.dims(); ++k) {
    os << (k ? "," : "") << "nu_" << k;
  }
  os << "\n";
  os.precision(17);
  for (int i = 0; i < draws.draws(); ++i) {
    for (int k = 0; k < draws.dims(); ++k) {
      os << (k ? "," : "") << draws.nu(i, k);
    }
    os << "\n";
  }
}

}  // namespace diffblp

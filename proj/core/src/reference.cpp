#include "qwalk/reference.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr double eps = 1e-15;
  constexpr double fpmin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double log_gamma(double x) {
  // Lanczos, g = 7, 9 coefficients; relative error well below 1e-10.
  static const double coef[9] = {
      0.99999999999980993,     676.5203681218851,    -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,  12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (!(x > 0.0)) throw std::invalid_argument("log_gamma needs x > 0");
  if (x < 0.5)  // reflection keeps the series in its accurate range
    return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  const double z = x - 1.0;
  double acc = coef[0];
  for (int i = 1; i < 9; ++i) acc += coef[i] / (z + i);
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t +
         std::log(acc);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double lbt = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                     a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(lbt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

ReferenceDensity::ReferenceDensity(Kind k, double param, double lo, double hi)
    : kind_(k), param_(param), lo_(lo), hi_(hi) {}

ReferenceDensity ReferenceDensity::arcsine() {
  return {Kind::Arcsine, 0.5, -1.0, 1.0};
}

ReferenceDensity ReferenceDensity::uniform() {
  return {Kind::Uniform, 1.0, -1.0, 1.0};
}

ReferenceDensity ReferenceDensity::semicircle() {
  return {Kind::Semicircle, 1.5, -1.0, 1.0};
}

ReferenceDensity ReferenceDensity::beta_symmetric(double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("beta reference needs lambda > 0");
  return {Kind::BetaSymmetric, lambda, -1.0, 1.0};
}

ReferenceDensity ReferenceDensity::gaussian(double variance) {
  if (!(variance > 0.0))
    throw std::invalid_argument("gaussian reference needs variance > 0");
  return {Kind::Gaussian, variance,
          -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity()};
}

ReferenceDensity ReferenceDensity::konno_hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return {Kind::KonnoHadamard, 0.0, -s, s};
}

double ReferenceDensity::pdf(double x) const {
  switch (kind_) {
    case Kind::Gaussian: {
      const double v = param_;
      return std::exp(-x * x / (2.0 * v)) / std::sqrt(2.0 * kPi * v);
    }
    case Kind::KonnoHadamard: {
      if (x <= lo_ || x >= hi_) return 0.0;
      return 1.0 / (kPi * (1.0 + x) * std::sqrt(1.0 - 2.0 * x * x));
    }
    default: {
      if (x < lo_ || x > hi_) return 0.0;
      const double lambda = param_;
      // (1-x^2)^(lambda-1) Gamma(2 lambda) / (2^(2 lambda - 1) Gamma(lambda)^2)
      const double lnorm = log_gamma(2.0 * lambda) -
                           (2.0 * lambda - 1.0) * std::log(2.0) -
                           2.0 * log_gamma(lambda);
      return std::pow(1.0 - x * x, lambda - 1.0) * std::exp(lnorm);
    }
  }
}

double ReferenceDensity::cdf(double x) const {
  switch (kind_) {
    case Kind::Gaussian:
      return 0.5 * std::erfc(-x / std::sqrt(2.0 * param_));
    case Kind::KonnoHadamard: {
      if (x <= lo_) return 0.0;
      if (x >= hi_) return 1.0;
      // Substituting x = sin(theta)/sqrt(2) integrates the density in
      // closed form.
      const double theta = std::asin(std::sqrt(2.0) * x);
      return (2.0 / kPi) *
                 std::atan(std::sqrt(2.0) * std::tan(0.5 * theta) + 1.0) +
             0.25;
    }
    default: {
      if (x <= lo_) return 0.0;
      if (x >= hi_) return 1.0;
      const double lambda = param_;
      return regularized_incomplete_beta(lambda, lambda, 0.5 * (1.0 + x));
    }
  }
}

}  // namespace qwalk

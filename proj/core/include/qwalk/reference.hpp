#pragma once

namespace qwalk {

// ln Gamma(x) for x > 0, Lanczos approximation, relative error below 1e-10.
double log_gamma(double x);

// Regularized incomplete beta I_x(a, b), continued fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

// Continuous limit densities the rescaled walk is compared against.
//  - BetaSymmetric(lambda): (1-x^2)^(lambda-1) * Gamma(2 lambda) /
//    (2^(2 lambda - 1) Gamma(lambda)^2) on [-1, 1]; Arcsine, Uniform and
//    Semicircle are lambda = 1/2, 1, 3/2.
//  - Gaussian(variance) on the whole line.
//  - KonnoHadamard: 1 / (pi (1+x) sqrt(1-2x^2)) on (-1/sqrt2, 1/sqrt2),
//    the weak limit of the x/t rescaled Hadamard walk for one particular
//    initial coin state.
class ReferenceDensity {
 public:
  enum class Kind {
    Arcsine,
    Uniform,
    Semicircle,
    BetaSymmetric,
    Gaussian,
    KonnoHadamard
  };

  static ReferenceDensity arcsine();
  static ReferenceDensity uniform();
  static ReferenceDensity semicircle();
  static ReferenceDensity beta_symmetric(double lambda);
  static ReferenceDensity gaussian(double variance);
  static ReferenceDensity konno_hadamard();

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }  // lambda or variance
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }

  double pdf(double x) const;  // 0 outside the support
  double cdf(double x) const;

 private:
  ReferenceDensity(Kind k, double param, double lo, double hi);

  Kind kind_;
  double param_;
  double lo_, hi_;
};

}  // namespace qwalk

#pragma once

#include <optional>
#include <span>
#include <utility>

namespace qwalk {

// Two-parameter decay models fitted to positive series:
//   Exponential: f(t) = c * exp(-r t)
//   Rational:    f(t) = c * t^(-r)
enum class DecayModel { Exponential, Rational };

const char* to_string(DecayModel m);

struct FitResult {
  DecayModel model = DecayModel::Exponential;
  double c = 0.0;
  double r = 0.0;
  double r_squared = 0.0;
  double rmse = 0.0;
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;  // constant input series
};

// Least squares via Gauss-Newton with multiplicative damping (increase x10
// when the objective goes up, decrease x10 on success). Stops when the
// relative objective decrease falls below 1e-12 or the gradient norm below
// 1e-10, or after 500 iterations. Requires at least 3 points with positive
// values and positive times. Without an explicit start the initial guess is
// c = 1 and the rate matching the last point.
FitResult fit_decay(std::span<const std::pair<double, double>> series,
                    DecayModel model,
                    std::optional<std::pair<double, double>> start = {});

struct Goodness {
  double r_squared = 0.0;
  double rmse = 0.0;  // sqrt(SS_res / (N - 2)), N - 2 for the 2 parameters
};

// Requires more than 2 points. A constant series has SS_tot = 0; a fit
// reproducing it exactly reports r_squared = 1.
Goodness goodness_of_fit(std::span<const std::pair<double, double>> series,
                         DecayModel model, double c, double r);

}  // namespace qwalk

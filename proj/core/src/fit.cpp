#include "qwalk/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qwalk {

const char* to_string(DecayModel m) {
  switch (m) {
    case DecayModel::Exponential:
      return "exponential";
    case DecayModel::Rational:
      return "rational";
  }
  return "?";
}

namespace {

double model_value(DecayModel model, double c, double r, double t) {
  return model == DecayModel::Exponential ? c * std::exp(-r * t)
                                          : c * std::pow(t, -r);
}

// d f / d r; d f / d c is f / c evaluated at c = 1.
double model_dr(DecayModel model, double c, double r, double t) {
  return model == DecayModel::Exponential
             ? -t * c * std::exp(-r * t)
             : -std::log(t) * c * std::pow(t, -r);
}

double objective(std::span<const std::pair<double, double>> series,
                 DecayModel model, double c, double r) {
  double s = 0.0;
  for (const auto& [t, y] : series) {
    const double e = model_value(model, c, r, t) - y;
    s += e * e;
  }
  return 0.5 * s;
}

}  // namespace

FitResult fit_decay(std::span<const std::pair<double, double>> series,
                    DecayModel model,
                    std::optional<std::pair<double, double>> start) {
  if (series.size() < 3)
    throw std::invalid_argument("fit needs at least 3 points");
  for (const auto& [t, y] : series) {
    if (!(t > 0.0) || !std::isfinite(t))
      throw std::invalid_argument("fit needs positive finite times");
    if (!(y > 0.0) || !std::isfinite(y))
      throw std::invalid_argument("fit needs positive finite values");
  }

  FitResult out;
  out.model = model;

  bool constant = true;
  for (const auto& [t, y] : series)
    if (y != series.front().second) {
      constant = false;
      break;
    }
  if (constant) {
    // r = 0 reproduces a constant series exactly for both models.
    out.c = series.front().second;
    out.r = 0.0;
    out.converged = true;
    out.degenerate = true;
    const Goodness g = goodness_of_fit(series, model, out.c, out.r);
    out.r_squared = g.r_squared;
    out.rmse = g.rmse;
    return out;
  }

  double c, r;
  if (start) {
    c = start->first;
    r = start->second;
  } else {
    // Match the last point with c = 1.
    const auto& [tN, yN] = series.back();
    c = 1.0;
    r = model == DecayModel::Exponential ? -std::log(yN) / tN
                                         : -std::log(yN) / std::log(tN);
  }

  double cost = objective(series, model, c, r);
  double nu = 1e-3;
  bool converged = false;
  int iter = 0;
  for (; iter < 500; ++iter) {
    // Normal equations of the linearized problem.
    double a11 = 0.0, a12 = 0.0, a22 = 0.0, g1 = 0.0, g2 = 0.0;
    for (const auto& [t, y] : series) {
      const double f = model_value(model, c, r, t);
      const double jc = c != 0.0 ? f / c : model_value(model, 1.0, r, t);
      const double jr = model_dr(model, c, r, t);
      const double e = f - y;
      a11 += jc * jc;
      a12 += jc * jr;
      a22 += jr * jr;
      g1 += jc * e;
      g2 += jr * e;
    }
    if (std::sqrt(g1 * g1 + g2 * g2) < 1e-10) {
      converged = true;
      break;
    }
    bool stepped = false;
    for (int tries = 0; tries < 60; ++tries) {
      const double b11 = a11 + nu, b22 = a22 + nu;
      const double det = b11 * b22 - a12 * a12;
      if (det != 0.0 && std::isfinite(det)) {
        const double dc = (-g1 * b22 + g2 * a12) / det;
        const double dr = (-g2 * b11 + g1 * a12) / det;
        const double c_new = c + dc, r_new = r + dr;
        const double cost_new = objective(series, model, c_new, r_new);
        if (std::isfinite(cost_new) && cost_new <= cost) {
          const double rel =
              cost > 0.0 ? (cost - cost_new) / cost : 0.0;
          c = c_new;
          r = r_new;
          cost = cost_new;
          nu = std::max(nu * 0.1, 1e-15);
          stepped = true;
          if (rel < 1e-12) converged = true;
          break;
        }
      }
      nu *= 10.0;
      if (nu > 1e15) break;
    }
    if (!stepped || converged) break;
  }

  out.c = c;
  out.r = r;
  out.iterations = iter + 1;
  out.converged = converged;
  const Goodness g = goodness_of_fit(series, model, c, r);
  out.r_squared = g.r_squared;
  out.rmse = g.rmse;
  return out;
}

Goodness goodness_of_fit(std::span<const std::pair<double, double>> series,
                         DecayModel model, double c, double r) {
  const std::size_t n = series.size();
  if (n <= 2)
    throw std::invalid_argument(
        "goodness of fit needs more than 2 points for 2 parameters");
  double mean = 0.0;
  for (const auto& [t, y] : series) mean += y;
  mean /= static_cast<double>(n);
  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& [t, y] : series) {
    const double e = model_value(model, c, r, t) - y;
    ss_res += e * e;
    const double d = y - mean;
    ss_tot += d * d;
  }
  Goodness g;
  g.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  g.rmse = std::sqrt(ss_res / static_cast<double>(n - 2));
  return g;
}

}  // namespace qwalk

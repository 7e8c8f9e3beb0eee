#include "qwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwalk {

const char* to_string(DistanceMetric m) {
  switch (m) {
    case DistanceMetric::TV:
      return "tv";
    case DistanceMetric::KS:
      return "ks";
  }
  return "?";
}

RescaledDistribution rescale(const Distribution& dist, double gamma) {
  return RescaledDistribution(dist, gamma);
}

TailStats tail_epsilon(const Distribution& dist, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("alpha must be in (0, 1)");
  const int t = dist.horizon();
  if (t < 1) throw std::invalid_argument("tail statistics need horizon >= 1");
  const double threshold = 0.5 * (1.0 - alpha);
  double cum = 0.0;
  int k = 2 * t;
  for (int i = 0; i <= 2 * t; ++i) {
    cum += dist.mass(-t + i);
    if (cum >= threshold) {
      k = i;
      break;
    }
  }
  return {alpha, k, static_cast<double>(k) / static_cast<double>(t)};
}

double total_variation(const Distribution& a, const Distribution& b) {
  const int t = std::max(a.horizon(), b.horizon());
  double s = 0.0;
  for (int x = -t; x <= t; ++x) s += std::abs(a.mass(x) - b.mass(x));
  return 0.5 * s;
}

double total_variation(const RescaledDistribution& a,
                       const RescaledDistribution& b) {
  if (a.gamma() != b.gamma() || a.base().horizon() != b.base().horizon())
    throw std::invalid_argument(
        "total variation refused: rescaled supports do not align (gamma or "
        "horizon differ)");
  return total_variation(a.base(), b.base());
}

double ks_distance(const RescaledDistribution& a,
                   const ReferenceDensity& ref) {
  const int t = a.base().horizon();
  double cum = 0.0;
  double worst = 0.0;
  // Walk the whole lattice; between support points the empirical CDF is
  // flat, and the midpoint (x+1)/t^gamma sits halfway to the next site of
  // the same parity.
  for (int x = -t; x <= t; ++x) {
    cum += a.base().mass(x);
    const double mid = static_cast<double>(x + 1) / a.scale();
    worst = std::max(worst, std::abs(cum - ref.cdf(mid)));
  }
  return worst;
}

}  // namespace qwalk

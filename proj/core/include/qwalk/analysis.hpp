#pragma once

#include "qwalk/distribution.hpp"
#include "qwalk/reference.hpp"

namespace qwalk {

enum class DistanceMetric { TV, KS };

const char* to_string(DistanceMetric m);

// Support relabeling x -> x / horizon^gamma; requires gamma > 0.
RescaledDistribution rescale(const Distribution& dist, double gamma);

// Smallest left-tail prefix carrying mass (1 - alpha) / 2:
//   epsilon_t = min{ k >= 0 : sum_{x=-t}^{-t+k} p(x) >= (1 - alpha) / 2 }
// and its normalization alpha_t = epsilon_t / t.
struct TailStats {
  double alpha = 0.0;
  int epsilon_t = 0;
  double alpha_t = 0.0;
};

TailStats tail_epsilon(const Distribution& dist, double alpha);

// Total variation distance (1/2) sum_x |a(x) - b(x)| between two lattice
// distributions.
double total_variation(const Distribution& a, const Distribution& b);

// Rescaled variant; refuses mismatched gamma or horizon since the supports
// would not align.
double total_variation(const RescaledDistribution& a,
                       const RescaledDistribution& b);

// Kolmogorov-Smirnov distance between the rescaled empirical CDF and a
// continuous reference, evaluated at the lattice midpoints (x+1)/t^gamma so
// the two-site parity spacing does not inflate the statistic.
double ks_distance(const RescaledDistribution& a, const ReferenceDensity& ref);

}  // namespace qwalk

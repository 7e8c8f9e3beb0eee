#pragma once

#include <array>

namespace qwalk {

// Coin mixing parameter mu_n = min(lambda * n^(-zeta), 1). The raw value
// lambda * n^(-zeta) can exceed 1 for small n (e.g. lambda = 1.5, n = 1);
// it is clamped so the square roots in the coin stay real. n is 1-based:
// the coin applied in the step from time n-1 to time n has index n.
double coin_parameter(int n, double lambda, double zeta);

// Number of steps n in [1, horizon] where the clamp was active.
int clamp_count(double lambda, double zeta, int horizon);

// The 2x2 real unitary
//   [ sqrt(1-mu)    sqrt(mu)   ]
//   [ sqrt(mu)     -sqrt(1-mu) ]
// acting on kets by columns: C|0> = a|0> + b|1>, C|1> = b|0> - a|1>.
struct CoinOperator {
  double a = 1.0;      // sqrt(1 - mu)
  double b = 0.0;      // sqrt(mu)
  int time_index = 0;  // n

  std::array<std::array<double, 2>, 2> entries() const {
    return {{{a, b}, {b, -a}}};
  }
};

CoinOperator build_coin(int n, double lambda, double zeta);

}  // namespace qwalk

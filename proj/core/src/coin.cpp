#include "qwalk/coin.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

double coin_parameter(int n, double lambda, double zeta) {
  if (n < 1) throw std::invalid_argument("coin time index must be >= 1");
  const double raw = lambda * std::pow(static_cast<double>(n), -zeta);
  return raw < 1.0 ? raw : 1.0;
}

int clamp_count(double lambda, double zeta, int horizon) {
  // The raw parameter is nonincreasing in n (zeta >= 0), so the clamped
  // steps form a prefix.
  int count = 0;
  for (int n = 1; n <= horizon; ++n) {
    if (lambda * std::pow(static_cast<double>(n), -zeta) > 1.0)
      ++count;
    else
      break;
  }
  return count;
}

CoinOperator build_coin(int n, double lambda, double zeta) {
  const double mu = coin_parameter(n, lambda, zeta);
  CoinOperator c;
  c.a = std::sqrt(1.0 - mu);
  c.b = std::sqrt(mu);
  c.time_index = n;
  return c;
}

}  // namespace qwalk

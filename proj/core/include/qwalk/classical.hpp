#pragma once

#include <array>
#include <span>
#include <vector>

#include "qwalk/distribution.hpp"
#include "qwalk/params.hpp"

namespace qwalk {

// Row-stochastic coin transition matrix of the fully measured (p = 1) walk:
//   [ 1-mu_n   mu_n  ]
//   [ mu_n    1-mu_n ]
// Row i gives the law of the next coin given the current coin is i.
std::array<std::array<double, 2>, 2> classical_coin_matrix(int n,
                                                           double lambda,
                                                           double zeta);

// Joint (position, coin) mass at a fixed time, window [-time, time],
// layout mass[2*(x-lo)+coin] as in the amplitude window.
struct ClassicalState {
  int time = 0;
  int lo = 0;
  std::vector<double> mass;  // 2*(x-lo)+coin

  double at(int x, int coin) const;
  double total() const;
};

struct ClassicalResult {
  ClassicalState state;
  Distribution position;
};

// Dynamic program for the p = 1 walk: at step n the coin flips with
// probability mu_n, then the walker moves by the (new) coin. coin_init is
// the coin law at the origin at time 0.
ClassicalResult evolve_classical(const std::array<double, 2>& coin_init,
                                 const WalkParams& params);

std::vector<Distribution> classical_snapshots(
    const std::array<double, 2>& coin_init, const WalkParams& params,
    std::span<const int> times);

}  // namespace qwalk

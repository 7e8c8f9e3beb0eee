#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/distribution.hpp"
#include "qwalk/params.hpp"

namespace qwalk {

namespace detail {

// Amplitudes over the position window [lo, hi], layout amp[2*(x-lo)+coin].
// One step applies the coin at every site and then the conditional shift
// (coin 0 -> x+1, coin 1 -> x-1); the window widens by one on each side.
// Shared by the pure evolution, trajectory sampling and segment kernels.
struct AmplitudeWindow {
  int lo = 0;
  int hi = 0;
  std::vector<std::complex<double>> amp;  // size 2*(hi-lo+1)

  static AmplitudeWindow point(int x, std::complex<double> a0,
                               std::complex<double> a1);

  std::complex<double> get(int x, int c) const;
  double norm_sq() const;
  void step(const CoinOperator& coin);  // in place, no allocation if reserved
  void reset_point(int x, std::complex<double> a0,
                   std::complex<double> a1);  // keeps capacity
  void shrink_to_support();  // drop all-zero margins, keeps capacity
};

}  // namespace detail

// Pure (p = 0) walk state at a fixed time. Support is contained in
// [-time, time] and only sites with x + time even carry mass.
class PureState {
 public:
  PureState(int time, detail::AmplitudeWindow w);
  static PureState from_initial(const InitialState& init);

  int time() const { return time_; }
  std::complex<double> amplitude(int x, int coin) const;
  double norm_sq() const;
  const detail::AmplitudeWindow& window() const { return w_; }

 private:
  int time_;
  detail::AmplitudeWindow w_;
};

// Applies U_n = shift * coin_n; requires state.time() == n - 1.
PureState step_pure(const PureState& state, int n, const WalkParams& params);

// psi_t = U_t ... U_1 psi_0 with t = params.horizon.
PureState evolve_pure(const InitialState& init, const WalkParams& params);

// p_t(x) = sum_c |<x,c|psi>|^2.
Distribution position_distribution(const PureState& state);

// Position distributions at the requested times (ascending, all within
// [0, params.horizon]) from a single evolution pass.
std::vector<Distribution> pure_snapshots(const InitialState& init,
                                         const WalkParams& params,
                                         std::span<const int> times);

}  // namespace qwalk

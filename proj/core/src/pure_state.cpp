#include "qwalk/pure_state.hpp"

#include <stdexcept>

namespace qwalk {
namespace detail {

AmplitudeWindow AmplitudeWindow::point(int x, std::complex<double> a0,
                                       std::complex<double> a1) {
  AmplitudeWindow w;
  w.lo = w.hi = x;
  w.amp = {a0, a1};
  return w;
}

std::complex<double> AmplitudeWindow::get(int x, int c) const {
  if (x < lo || x > hi) return {};
  return amp[2 * static_cast<std::size_t>(x - lo) + c];
}

double AmplitudeWindow::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amp) s += std::norm(a);
  return s;
}

void AmplitudeWindow::step(const CoinOperator& coin) {
  const std::size_t n_old = static_cast<std::size_t>(hi - lo + 1);
  amp.resize(2 * (n_old + 2));
  // In the grown layout (window starts at lo-1) the old site k sits at
  // slots 2k+2, 2k+3; its coin-0 output moves right to slot 2k+4, its
  // coin-1 output left to slot 2k+1. Walking k downward never clobbers a
  // site before it is read.
  for (std::size_t k = n_old; k-- > 0;) {
    const std::complex<double> u = amp[2 * k];
    const std::complex<double> d = amp[2 * k + 1];
    amp[2 * k + 4] = coin.a * u + coin.b * d;
    amp[2 * k + 1] = coin.b * u - coin.a * d;
  }
  amp[0] = 0.0;  // coin-0 slots of the two lowest sites receive nothing
  amp[2] = 0.0;
  --lo;
  ++hi;
}

void AmplitudeWindow::reset_point(int x, std::complex<double> a0,
                                  std::complex<double> a1) {
  lo = hi = x;
  amp.assign({a0, a1});
}

void AmplitudeWindow::shrink_to_support() {
  auto zero_site = [&](int x) {
    const std::size_t k = 2 * static_cast<std::size_t>(x - lo);
    return amp[k] == std::complex<double>{} &&
           amp[k + 1] == std::complex<double>{};
  };
  int new_lo = lo, new_hi = hi;
  while (new_lo < new_hi && zero_site(new_lo)) ++new_lo;
  while (new_hi > new_lo && zero_site(new_hi)) --new_hi;
  if (new_hi < hi) amp.resize(2 * static_cast<std::size_t>(new_hi - lo + 1));
  if (new_lo > lo)
    amp.erase(amp.begin(), amp.begin() + 2 * static_cast<std::size_t>(new_lo - lo));
  lo = new_lo;
  hi = new_hi;
}

}  // namespace detail

PureState::PureState(int time, detail::AmplitudeWindow w)
    : time_(time), w_(std::move(w)) {
  if (time < 0) throw std::invalid_argument("time must be >= 0");
  if (w_.lo < -time || w_.hi > time)
    throw std::invalid_argument("window exceeds [-time, time]");
}

PureState PureState::from_initial(const InitialState& init) {
  init.validate();
  return PureState(0, detail::AmplitudeWindow::point(0, init.a0, init.a1));
}

std::complex<double> PureState::amplitude(int x, int coin) const {
  if (coin != 0 && coin != 1)
    throw std::invalid_argument("coin index must be 0 or 1");
  return w_.get(x, coin);
}

double PureState::norm_sq() const { return w_.norm_sq(); }

PureState step_pure(const PureState& state, int n, const WalkParams& params) {
  if (n != state.time() + 1)
    throw std::invalid_argument("step index must be state.time() + 1");
  detail::AmplitudeWindow w = state.window();
  w.step(build_coin(n, params.lambda, params.zeta));
  return PureState(n, std::move(w));
}

PureState evolve_pure(const InitialState& init, const WalkParams& params) {
  params.validate();
  init.validate();
  detail::AmplitudeWindow w = detail::AmplitudeWindow::point(0, init.a0, init.a1);
  for (int n = 1; n <= params.horizon; ++n)
    w.step(build_coin(n, params.lambda, params.zeta));
  return PureState(params.horizon, std::move(w));
}

Distribution position_distribution(const PureState& state) {
  Distribution d(state.time());
  const auto& w = state.window();
  for (int x = w.lo; x <= w.hi; ++x) {
    const std::size_t k = 2 * static_cast<std::size_t>(x - w.lo);
    d.mass_ref(x) = std::norm(w.amp[k]) + std::norm(w.amp[k + 1]);
  }
  return d;
}

std::vector<Distribution> pure_snapshots(const InitialState& init,
                                         const WalkParams& params,
                                         std::span<const int> times) {
  params.validate();
  init.validate();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0 || times[i] > params.horizon)
      throw std::invalid_argument("snapshot time outside [0, horizon]");
    if (i > 0 && times[i] <= times[i - 1])
      throw std::invalid_argument("snapshot times must be ascending");
  }
  std::vector<Distribution> out;
  out.reserve(times.size());
  detail::AmplitudeWindow w = detail::AmplitudeWindow::point(0, init.a0, init.a1);
  std::size_t next = 0;
  auto emit = [&](int t) {
    while (next < times.size() && times[next] == t) {
      out.push_back(position_distribution(PureState(t, w)));
      ++next;
    }
  };
  emit(0);
  for (int n = 1; n <= params.horizon && next < times.size(); ++n) {
    w.step(build_coin(n, params.lambda, params.zeta));
    emit(n);
  }
  return out;
}

}  // namespace qwalk

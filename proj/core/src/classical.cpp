#include "qwalk/classical.hpp"

#include <cmath>
#include <stdexcept>

#include "qwalk/coin.hpp"

namespace qwalk {

std::array<std::array<double, 2>, 2> classical_coin_matrix(int n,
                                                           double lambda,
                                                           double zeta) {
  const double mu = coin_parameter(n, lambda, zeta);
  return {{{1.0 - mu, mu}, {mu, 1.0 - mu}}};
}

double ClassicalState::at(int x, int coin) const {
  const int hi = lo + static_cast<int>(mass.size() / 2) - 1;
  if (x < lo || x > hi) return 0.0;
  return mass[2 * static_cast<std::size_t>(x - lo) + coin];
}

double ClassicalState::total() const {
  double s = 0.0;
  for (double v : mass) s += v;
  return s;
}

namespace {

void classical_step(std::vector<double>& mass, int& lo, int& hi, double mu) {
  const std::size_t n_old = static_cast<std::size_t>(hi - lo + 1);
  std::vector<double> out(2 * (n_old + 2), 0.0);
  // Coin flips with probability mu, then the walker moves by the new coin:
  // same slot geometry as the amplitude window.
  for (std::size_t k = 0; k < n_old; ++k) {
    const double m0 = mass[2 * k];
    const double m1 = mass[2 * k + 1];
    out[2 * (k + 2)] = (1.0 - mu) * m0 + mu * m1;
    out[2 * k + 1] = mu * m0 + (1.0 - mu) * m1;
  }
  mass = std::move(out);
  --lo;
  ++hi;
}

void validate_coin_init(const std::array<double, 2>& coin_init) {
  if (!(coin_init[0] >= 0.0) || !(coin_init[1] >= 0.0) ||
      std::abs(coin_init[0] + coin_init[1] - 1.0) > 1e-12)
    throw std::invalid_argument(
        "classical coin init must be a probability pair summing to 1");
}

}  // namespace

ClassicalResult evolve_classical(const std::array<double, 2>& coin_init,
                                 const WalkParams& params) {
  params.validate();
  validate_coin_init(coin_init);
  ClassicalState st;
  st.lo = 0;
  st.mass = {coin_init[0], coin_init[1]};
  int lo = 0, hi = 0;
  for (int n = 1; n <= params.horizon; ++n)
    classical_step(st.mass, lo, hi,
                   coin_parameter(n, params.lambda, params.zeta));
  st.time = params.horizon;
  st.lo = lo;

  Distribution d(params.horizon);
  for (int x = lo; x <= hi; ++x)
    d.mass_ref(x) = st.mass[2 * static_cast<std::size_t>(x - lo)] +
                    st.mass[2 * static_cast<std::size_t>(x - lo) + 1];
  return {std::move(st), std::move(d)};
}

std::vector<Distribution> classical_snapshots(
    const std::array<double, 2>& coin_init, const WalkParams& params,
    std::span<const int> times) {
  params.validate();
  validate_coin_init(coin_init);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0 || times[i] > params.horizon)
      throw std::invalid_argument("snapshot time outside [0, horizon]");
    if (i > 0 && times[i] <= times[i - 1])
      throw std::invalid_argument("snapshot times must be ascending");
  }
  std::vector<Distribution> out;
  out.reserve(times.size());
  std::vector<double> mass = {coin_init[0], coin_init[1]};
  int lo = 0, hi = 0;
  std::size_t next = 0;
  auto emit = [&](int t) {
    while (next < times.size() && times[next] == t) {
      Distribution d(t);
      for (int x = lo; x <= hi; ++x)
        d.mass_ref(x) = mass[2 * static_cast<std::size_t>(x - lo)] +
                        mass[2 * static_cast<std::size_t>(x - lo) + 1];
      out.push_back(std::move(d));
      ++next;
    }
  };
  emit(0);
  for (int n = 1; n <= params.horizon && next < times.size(); ++n) {
    classical_step(mass, lo, hi, coin_parameter(n, params.lambda, params.zeta));
    emit(n);
  }
  return out;
}

}  // namespace qwalk

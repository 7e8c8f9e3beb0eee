#include "qwalk/trajectory.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/pure_state.hpp"

namespace qwalk {

namespace {

using detail::AmplitudeWindow;

// Born sample over (x, coin); u is uniform in [0, 1).
std::pair<int, int> born_sample(const AmplitudeWindow& w, double u) {
  const double target = u * w.norm_sq();
  double cum = 0.0;
  for (std::size_t k = 0; k < w.amp.size(); ++k) {
    cum += std::norm(w.amp[k]);
    if (cum > target)
      return {w.lo + static_cast<int>(k / 2), static_cast<int>(k & 1)};
  }
  return {w.hi, 1};
}

void collapse_total(AmplitudeWindow& w, double u) {
  const auto [x, c] = born_sample(w, u);
  w.reset_point(x, c == 0 ? 1.0 : 0.0, c == 1 ? 1.0 : 0.0);
}

void collapse_coin(AmplitudeWindow& w, double u) {
  double m0 = 0.0;
  for (std::size_t k = 0; k < w.amp.size(); k += 2) m0 += std::norm(w.amp[k]);
  const double total = w.norm_sq();
  const int c = u * total < m0 ? 0 : 1;
  const double prob = c == 0 ? m0 : total - m0;
  const double inv = 1.0 / std::sqrt(prob);
  for (std::size_t k = 0; k < w.amp.size(); k += 2) {
    if (c == 0) {
      w.amp[k] *= inv;
      w.amp[k + 1] = 0.0;
    } else {
      w.amp[k] = 0.0;
      w.amp[k + 1] *= inv;
    }
  }
  w.shrink_to_support();
}

void collapse_position(AmplitudeWindow& w, double u) {
  const double target = u * w.norm_sq();
  double cum = 0.0;
  int x = w.hi;
  for (int s = w.lo; s <= w.hi; ++s) {
    const std::size_t k = 2 * static_cast<std::size_t>(s - w.lo);
    cum += std::norm(w.amp[k]) + std::norm(w.amp[k + 1]);
    if (cum > target) {
      x = s;
      break;
    }
  }
  const std::size_t k = 2 * static_cast<std::size_t>(x - w.lo);
  const double prob = std::norm(w.amp[k]) + std::norm(w.amp[k + 1]);
  const double inv = 1.0 / std::sqrt(prob);
  const std::complex<double> a0 = w.amp[k] * inv;
  const std::complex<double> a1 = w.amp[k + 1] * inv;
  w.reset_point(x, a0, a1);
}

}  // namespace

TrajectoryOutcome sample_trajectory(const InitialState& init,
                                    const KrausFamily& kraus,
                                    const WalkParams& params, RngStream& rng) {
  params.validate();
  kraus.validate();
  init.validate();
  const double p = kraus.strength;
  AmplitudeWindow w = AmplitudeWindow::point(0, init.a0, init.a1);
  w.amp.reserve(2 * (2 * static_cast<std::size_t>(params.horizon) + 3));
  for (int n = 1; n <= params.horizon; ++n) {
    w.step(build_coin(n, params.lambda, params.zeta));
    if (p > 0.0 && rng.uniform() < p) {
      switch (kraus.family) {
        case MeasurementFamily::Total:
          collapse_total(w, rng.uniform());
          break;
        case MeasurementFamily::Coin:
          collapse_coin(w, rng.uniform());
          break;
        case MeasurementFamily::Position:
          collapse_position(w, rng.uniform());
          break;
      }
    }
  }
  const auto [x, c] = born_sample(w, rng.uniform());
  return {x, c};
}

Distribution mc_distribution(const InitialState& init,
                             const KrausFamily& kraus,
                             const WalkParams& params,
                             const McOptions& options) {
  params.validate();
  kraus.validate();
  init.validate();
  if (options.samples < 1)
    throw std::invalid_argument("sample count must be >= 1");
  const int t = params.horizon;
  const std::size_t bins = 2 * static_cast<std::size_t>(t) + 1;
  const int threads = std::max(options.threads, 1);

  // Trajectory k always uses substream ("trajectory", k): counts merge to
  // the same totals for every thread count.
  auto worker = [&](std::int64_t first, std::int64_t last,
                    std::vector<std::int64_t>& counts) {
    counts.assign(bins, 0);
    for (std::int64_t k = first; k < last; ++k) {
      RngStream rng(options.seed, "trajectory", static_cast<std::uint64_t>(k));
      const TrajectoryOutcome out = sample_trajectory(init, kraus, params, rng);
      ++counts[static_cast<std::size_t>(out.position + t)];
    }
  };

  std::vector<std::vector<std::int64_t>> partial(
      static_cast<std::size_t>(threads));
  if (threads == 1) {
    worker(0, options.samples, partial[0]);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (options.samples + threads - 1) / threads;
    for (int i = 0; i < threads; ++i) {
      const std::int64_t first = i * chunk;
      const std::int64_t last = std::min(options.samples, first + chunk);
      pool.emplace_back(worker, std::min(first, options.samples), last,
                        std::ref(partial[static_cast<std::size_t>(i)]));
    }
    for (auto& th : pool) th.join();
  }

  std::vector<std::int64_t> counts(bins, 0);
  for (const auto& part : partial)
    for (std::size_t k = 0; k < bins; ++k) counts[k] += part[k];

  const double n = static_cast<double>(options.samples);
  std::vector<double> mass(bins), se(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double phat = static_cast<double>(counts[k]) / n;
    mass[k] = phat;
    se[k] = std::sqrt(phat * (1.0 - phat) / n);
  }
  Distribution d(t, std::move(mass));
  d.set_stderrs(std::move(se));
  return d;
}

}  // namespace qwalk

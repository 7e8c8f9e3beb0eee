#include "qwalk/siy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qwalk/coin.hpp"
#include "qwalk/pure_state.hpp"

namespace qwalk {

MeasurementSchedule sample_schedule(double p, int horizon, RngStream& rng) {
  if (!(p > 0.0) || p > 1.0)
    throw std::invalid_argument("schedule sampling needs p in (0, 1]");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  MeasurementSchedule s;
  s.horizon = horizon;
  std::int64_t at = 0;
  while (true) {
    at += rng.geometric(p);
    if (at > horizon) break;
    s.sigma.push_back(static_cast<int>(at));
  }
  return s;
}

MeasurementSchedule schedule_from_gaps(std::span<const int> gaps,
                                       int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  MeasurementSchedule s;
  s.horizon = horizon;
  std::int64_t at = 0;
  for (int g : gaps) {
    if (g < 1) throw std::invalid_argument("gaps must be >= 1");
    at += g;
    if (at > horizon) return s;
    s.sigma.push_back(static_cast<int>(at));
  }
  if (at < horizon)
    throw std::invalid_argument("gap sequence never overshoots the horizon");
  return s;
}

SegmentKernel::SegmentKernel(int start, int end, double lambda, double zeta)
    : start_(start), end_(end) {
  if (start < 0 || end <= start)
    throw std::invalid_argument("segment needs 0 <= start < end");
  const int len = end - start;
  for (int i = 0; i < 2; ++i) {
    detail::AmplitudeWindow w = detail::AmplitudeWindow::point(
        0, i == 0 ? 1.0 : 0.0, i == 1 ? 1.0 : 0.0);
    w.amp.reserve(2 * (2 * static_cast<std::size_t>(len) + 1));
    for (int n = start + 1; n <= end; ++n)
      w.step(build_coin(n, lambda, zeta));
    auto& mi = mass_[static_cast<std::size_t>(i)];
    mi.assign(2 * (2 * static_cast<std::size_t>(len) + 1), 0.0);
    for (int x = w.lo; x <= w.hi; ++x)
      for (int j = 0; j < 2; ++j)
        mi[2 * static_cast<std::size_t>(x + len) + j] =
            std::norm(w.get(x, j));
  }
}

double SegmentKernel::mass(int x, int i, int j) const {
  const int len = length();
  if (x < -len || x > len) return 0.0;
  return mass_[static_cast<std::size_t>(i)]
              [2 * static_cast<std::size_t>(x + len) + j];
}

int JumpLaw::sample(int i, int j, double u) const {
  // cells are never empty when the transition has positive probability
  return cells_[static_cast<std::size_t>(2 * i + j)].sample(u);
}

std::pair<CoinMarginal, JumpLaw> coin_marginal_and_jump_law(
    const SegmentKernel& kernel) {
  const int len = kernel.length();
  CoinMarginal marginal;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double s = 0.0;
      for (int x = -len; x <= len; ++x) s += kernel.mass(x, i, j);
      marginal.r[i][j] = s;
    }

  JumpLaw law;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto& cell = law.cell(i, j);
      const double total = marginal(i, j);
      if (total <= 0.0) continue;  // empty law, never sampled
      // after len steps the support is -len, -len+2, ..., len
      cell.x0 = -len;
      cell.pmf.reserve(static_cast<std::size_t>(len) + 1);
      cell.cum.reserve(static_cast<std::size_t>(len) + 1);
      double running = 0.0;
      for (int x = -len; x <= len; x += 2) {
        const double v = kernel.mass(x, i, j) / total;
        running += v;
        cell.pmf.push_back(v);
        cell.cum.push_back(running);
      }
      cell.cum.back() = 1.0;  // absorb rounding so sampling cannot fall off
    }
  return {marginal, law};
}

KernelCache::KernelCache(double lambda, double zeta, std::size_t max_entries)
    : lambda_(lambda), zeta_(zeta), max_entries_(max_entries) {}

const KernelCache::Prepared& KernelCache::get(int start, int end) {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(start)) << 32) |
      static_cast<std::uint32_t>(end);
  auto it = map_.find(key);
  if (it != map_.end()) return *it->second;
  if (map_.size() >= max_entries_) map_.clear();
  auto prepared = std::make_unique<Prepared>();
  const SegmentKernel kernel(start, end, lambda_, zeta_);
  auto [marginal, law] = coin_marginal_and_jump_law(kernel);
  prepared->marginal = marginal;
  prepared->law = std::move(law);
  for (int i = 0; i < 2; ++i) {
    const double row = marginal(i, 0) + marginal(i, 1);
    prepared->row_cum0[static_cast<std::size_t>(i)] =
        row > 0.0 ? marginal(i, 0) / row : 1.0;
  }
  auto [pos, inserted] = map_.emplace(key, std::move(prepared));
  return *pos->second;
}

void siy_accumulate(const MeasurementSchedule& schedule, int entry_coin,
                    int n_chains, int n_sums, KernelCache& cache,
                    RngStream& rng, std::span<std::int64_t> counts) {
  const int t = schedule.horizon;
  if (counts.size() != 2 * static_cast<std::size_t>(t) + 1)
    throw std::invalid_argument("counts must have size 2*horizon+1");
  if (entry_coin != 0 && entry_coin != 1)
    throw std::invalid_argument("entry coin must be 0 or 1");
  if (n_chains < 1 || n_sums < 1)
    throw std::invalid_argument("chain and sum counts must be >= 1");

  // Prepared tables per stretch: the measured segments plus the tail
  // (sigma_N, t] when it is nonempty.
  std::vector<const KernelCache::Prepared*> segs;
  segs.reserve(schedule.sigma.size() + 1);
  int prev = 0;
  for (int s : schedule.sigma) {
    segs.push_back(&cache.get(prev, s));
    prev = s;
  }
  const bool tail = prev < t;
  if (tail) segs.push_back(&cache.get(prev, t));
  const std::size_t n_seg = segs.size();

  // Per-chain resolved jump cells: within one chain the coin pair of every
  // stretch is fixed, so the inner loop touches only these cells.
  std::vector<const JumpLaw::Cell*> cells(n_seg);
  std::vector<int> chain(n_seg + 1);

  for (int ci = 0; ci < n_chains; ++ci) {
    chain[0] = entry_coin;
    for (std::size_t k = 0; k < n_seg; ++k) {
      const int i = chain[k];
      const int j =
          rng.uniform() < segs[k]->row_cum0[static_cast<std::size_t>(i)] ? 0
                                                                         : 1;
      chain[k + 1] = j;
      cells[k] = &segs[k]->law.cell(i, j);
    }
    for (int y = 0; y < n_sums; ++y) {
      int sum = 0;
      for (std::size_t k = 0; k < n_seg; ++k) {
        const JumpLaw::Cell* cell = cells[k];
        if (cell->cum.size() == 1)  // deterministic jump, no draw needed
          sum += cell->x0;
        else
          sum += cell->sample(rng.uniform());
      }
      ++counts[static_cast<std::size_t>(sum + t)];
    }
  }
}

Distribution siy_estimate(const InitialState& init, const WalkParams& params,
                          const SiyOptions& options) {
  params.validate();
  init.validate();
  if (!(params.decoherence > 0.0))
    throw std::invalid_argument(
        "the schedule representation needs decoherence > 0; use the pure "
        "evolution for p = 0");
  if (!init.is_coin_basis())
    throw std::invalid_argument(
        "the schedule representation starts from a coin basis state");
  if (options.n_schedules < 1 || options.n_chains < 1 || options.n_sums < 1)
    throw std::invalid_argument("sample counts must be >= 1");

  const int t = params.horizon;
  const int entry_coin = init.basis_coin();
  const std::size_t bins = 2 * static_cast<std::size_t>(t) + 1;
  const int threads = std::max(options.threads, 1);

  auto worker = [&](int first, int last, std::vector<std::int64_t>& counts) {
    counts.assign(bins, 0);
    KernelCache cache(params.lambda, params.zeta);
    for (int s = first; s < last; ++s) {
      RngStream rng(options.seed, "siy", static_cast<std::uint64_t>(s));
      const MeasurementSchedule schedule =
          sample_schedule(params.decoherence, t, rng);
      siy_accumulate(schedule, entry_coin, options.n_chains, options.n_sums,
                     cache, rng, counts);
    }
  };

  std::vector<std::vector<std::int64_t>> partial(
      static_cast<std::size_t>(threads));
  if (threads == 1) {
    worker(0, options.n_schedules, partial[0]);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (options.n_schedules + threads - 1) / threads;
    for (int i = 0; i < threads; ++i) {
      const int first = std::min(i * chunk, options.n_schedules);
      const int last = std::min(first + chunk, options.n_schedules);
      pool.emplace_back(worker, first, last,
                        std::ref(partial[static_cast<std::size_t>(i)]));
    }
    for (auto& th : pool) th.join();
  }

  std::vector<std::int64_t> counts(bins, 0);
  for (const auto& part : partial)
    for (std::size_t k = 0; k < bins; ++k) counts[k] += part[k];

  const double n = static_cast<double>(options.n_schedules) *
                   static_cast<double>(options.n_chains) *
                   static_cast<double>(options.n_sums);
  std::vector<double> mass(bins);
  for (std::size_t k = 0; k < bins; ++k)
    mass[k] = static_cast<double>(counts[k]) / n;
  return Distribution(t, std::move(mass));
}

}  // namespace qwalk

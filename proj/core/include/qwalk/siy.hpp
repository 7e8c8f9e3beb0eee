#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "qwalk/distribution.hpp"
#include "qwalk/params.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

// Random measurement times sigma_1 < sigma_2 < ... <= horizon built from iid
// geometric gaps on {1, 2, ...} with success probability p; the first gap
// overshooting the horizon is discarded.
struct MeasurementSchedule {
  int horizon = 0;
  std::vector<int> sigma;

  int count() const { return static_cast<int>(sigma.size()); }  // N_t
};

MeasurementSchedule sample_schedule(double p, int horizon, RngStream& rng);

// Folds a given gap sequence into a schedule (for tests and replay). The
// gaps must keep overshooting eventually; trailing unused gaps are fine.
MeasurementSchedule schedule_from_gaps(std::span<const int> gaps, int horizon);

// Displacement kernel of one measurement-free stretch (start, end]: the
// squared amplitudes
//   mass(x, i, j) = |<x, j| U_end ... U_{start+1} |0, i>|^2.
// For each entry coin i the masses over (x, j) sum to 1.
class SegmentKernel {
 public:
  SegmentKernel(int start, int end, double lambda, double zeta);

  int start() const { return start_; }
  int end() const { return end_; }
  int length() const { return end_ - start_; }
  double mass(int x, int i, int j) const;

 private:
  int start_, end_;
  // per entry coin i: layout 2*(x+length)+j
  std::array<std::vector<double>, 2> mass_;
};

// Coin marginal R(i, j) = sum_x mass(x, i, j); rows are stochastic.
struct CoinMarginal {
  std::array<std::array<double, 2>, 2> r{};

  double operator()(int i, int j) const { return r[i][j]; }
};

// Conditional displacement laws mass(., i, j) / R(i, j), one per coin pair,
// with cumulative tables ready for inversion sampling. Pairs with R = 0
// carry an empty law and are never sampled.
class JumpLaw {
 public:
  struct Cell {
    int x0 = 0;  // support is x0, x0+2, ... (parity of the segment length)
    std::vector<double> pmf;
    std::vector<double> cum;

    bool empty() const { return pmf.empty(); }

    // Inversion sampling; u in [0, 1). Linear scan for the short tables
    // geometric gaps produce, binary search otherwise.
    int sample(double u) const {
      const std::size_t n = cum.size();
      std::size_t k = 0;
      if (n <= 16) {
        while (k + 1 < n && cum[k] <= u) ++k;
      } else {
        k = static_cast<std::size_t>(
            std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
        if (k >= n) k = n - 1;
      }
      return x0 + 2 * static_cast<int>(k);
    }
  };

  const Cell& cell(int i, int j) const { return cells_[2 * i + j]; }
  Cell& cell(int i, int j) { return cells_[2 * i + j]; }

  int sample(int i, int j, double u) const;

 private:
  std::array<Cell, 4> cells_;
};

std::pair<CoinMarginal, JumpLaw> coin_marginal_and_jump_law(
    const SegmentKernel& kernel);

// Kernel tables prepared for sampling, memoized by (start, end). Segment
// laws depend only on the coin family, so schedules sharing a stretch reuse
// the same tables. The memo clears itself when it exceeds max_entries.
class KernelCache {
 public:
  struct Prepared {
    CoinMarginal marginal;
    std::array<double, 2> row_cum0;  // P(next coin = 0 | current = i)
    JumpLaw law;
  };

  KernelCache(double lambda, double zeta, std::size_t max_entries = 1 << 16);

  const Prepared& get(int start, int end);

 private:
  double lambda_, zeta_;
  std::size_t max_entries_;
  std::unordered_map<std::uint64_t, std::unique_ptr<Prepared>> map_;
};

// Accumulates displacement counts for one schedule into counts (size
// 2*horizon+1, index x+horizon): n_chains coin chains are drawn through the
// segment marginals, and for each chain n_sums independent sums of segment
// jumps are tallied. A nonempty tail stretch (sigma_N, horizon] contributes
// its own jump and final coin transition; an empty one contributes nothing.
void siy_accumulate(const MeasurementSchedule& schedule, int entry_coin,
                    int n_chains, int n_sums, KernelCache& cache,
                    RngStream& rng, std::span<std::int64_t> counts);

struct SiyOptions {
  int n_schedules = 500;
  int n_chains = 2000;
  int n_sums = 500;
  std::uint64_t seed = 1;
  int threads = 1;
};

// Position distribution estimate at params.horizon from the schedule/chain/
// jump representation of the measured walk. Requires decoherence > 0 and a
// coin basis initial state. Schedule s draws from substream ("siy", s), so
// the estimate is identical for any thread count.
Distribution siy_estimate(const InitialState& init, const WalkParams& params,
                          const SiyOptions& options);

}  // namespace qwalk

#pragma once

#include <cstdint>

#include "qwalk/density.hpp"
#include "qwalk/distribution.hpp"
#include "qwalk/params.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

struct TrajectoryOutcome {
  int position = 0;
  int coin = 0;
};

// One stochastic unraveling of the open evolution: after each unitary step a
// measurement of the family fires with probability p and collapses the
// state; at the horizon the position and coin are Born sampled. With p = 0
// this is pure evolution plus a single terminal sample.
TrajectoryOutcome sample_trajectory(const InitialState& init,
                                    const KrausFamily& kraus,
                                    const WalkParams& params, RngStream& rng);

struct McOptions {
  std::int64_t samples = 1;
  std::uint64_t seed = 1;
  int threads = 1;  // values < 1 mean 1
};

// Empirical position distribution over iid trajectories. Trajectory k draws
// from substream ("trajectory", k) of the master seed, so the result is
// identical for any thread count. Per-point standard errors are
// sqrt(phat (1-phat) / n).
Distribution mc_distribution(const InitialState& init,
                             const KrausFamily& kraus,
                             const WalkParams& params,
                             const McOptions& options);

}  // namespace qwalk

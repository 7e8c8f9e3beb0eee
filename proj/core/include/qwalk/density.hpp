#pragma once

#include <complex>
#include <vector>

#include "qwalk/distribution.hpp"
#include "qwalk/params.hpp"

namespace qwalk {

// Measurement channel: with probability `strength` the environment performs
// a projective measurement of the given family after the unitary step, with
// probability 1 - strength it does nothing.
struct KrausFamily {
  MeasurementFamily family = MeasurementFamily::Total;
  double strength = 0.0;  // p in [0, 1]

  void validate() const;
};

// Dense density operator on the window [-time, time] x {0, 1}, row major.
// Composite index of (x, c) is 2*(x+time)+c; dim() is the matrix order.
class DensityOperator {
 public:
  static DensityOperator from_initial(const InitialState& init);

  int time() const { return time_; }
  int dim() const { return 2 * (2 * time_ + 1); }

  std::complex<double> entry(int x, int i, int y, int j) const;
  double trace() const;                // real part of the trace
  double hermiticity_defect() const;   // max |m[r][c] - conj(m[c][r])|
  Distribution position_marginal() const;

  const std::vector<std::complex<double>>& raw() const { return m_; }

  // Applies U_n then the measurement channel:
  //   rho' = (1-p) B + p D(B),  B = U rho U*,
  // where D zeroes the off-diagonal entries the family measures away
  // (Total: everything off the composite diagonal; Coin: i != j;
  // Position: x != y). Requires time() == n - 1.
  DensityOperator stepped(int n, const KrausFamily& kraus,
                          const WalkParams& params) const;

 private:
  DensityOperator(int time, std::vector<std::complex<double>> m);

  int time_;
  std::vector<std::complex<double>> m_;
};

struct ExactOptions {
  // The exact evolution is O(t^3) time and O(t^2) memory; horizons above
  // the cap are refused so a typo cannot eat the machine.
  int horizon_cap = 300;
};

// Evolves the density operator to params.horizon and returns the position
// marginal. Works for any decoherence in [0, 1], including the endpoints.
Distribution evolve_exact(const InitialState& init, const KrausFamily& kraus,
                          const WalkParams& params,
                          const ExactOptions& options = {});

// Final density operator itself (same cap); used by tests and small studies.
DensityOperator evolve_exact_operator(const InitialState& init,
                                      const KrausFamily& kraus,
                                      const WalkParams& params,
                                      const ExactOptions& options = {});

}  // namespace qwalk

#pragma once

#include <complex>

namespace qwalk {

enum class ShiftKind { Standard };

// Which degrees of freedom the environment measures at each step.
enum class MeasurementFamily { Total, Coin, Position };

const char* to_string(ShiftKind s);
const char* to_string(MeasurementFamily f);

// Walk parameters. The coin at step n mixes with strength
// mu_n = min(lambda * n^(-zeta), 1); decoherence is the per-step measurement
// probability p. Coin component 0 shifts the walker to x+1, component 1 to
// x-1.
struct WalkParams {
  double lambda = 0.5;
  double zeta = 1.0;
  double decoherence = 0.0;
  int horizon = 100;
  ShiftKind shift = ShiftKind::Standard;
  MeasurementFamily family = MeasurementFamily::Total;

  void validate() const;  // throws std::invalid_argument on bad values
};

// Initial condition: the walker starts at the origin with coin state
// a0|0> + a1|1>, |a0|^2 + |a1|^2 = 1.
struct InitialState {
  std::complex<double> a0{1.0, 0.0};
  std::complex<double> a1{0.0, 0.0};

  static InitialState basis(int coin);       // coin 0 or 1
  static InitialState symmetric();           // (|0> + |1>)/sqrt(2)
  static InitialState antisymmetric();       // (|0> - |1>)/sqrt(2)
  static InitialState balanced_imaginary();  // (|0> + i|1>)/sqrt(2)

  bool is_coin_basis(double tol = 1e-12) const;
  int basis_coin() const;  // throws if the state is a superposition
  void validate() const;   // unit norm within 1e-12
};

}  // namespace qwalk

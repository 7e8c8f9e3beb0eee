#include "qwalk/params.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

const char* to_string(ShiftKind s) {
  switch (s) {
    case ShiftKind::Standard:
      return "standard";
  }
  return "?";
}

const char* to_string(MeasurementFamily f) {
  switch (f) {
    case MeasurementFamily::Total:
      return "total";
    case MeasurementFamily::Coin:
      return "coin";
    case MeasurementFamily::Position:
      return "position";
  }
  return "?";
}

void WalkParams::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("lambda must be finite and >= 0");
  if (!(zeta >= 0.0) || !std::isfinite(zeta))
    throw std::invalid_argument("zeta must be finite and >= 0");
  if (!(decoherence >= 0.0) || !(decoherence <= 1.0))
    throw std::invalid_argument("decoherence must be in [0, 1]");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
}

InitialState InitialState::basis(int coin) {
  if (coin != 0 && coin != 1)
    throw std::invalid_argument("coin index must be 0 or 1");
  InitialState s;
  s.a0 = coin == 0 ? 1.0 : 0.0;
  s.a1 = coin == 1 ? 1.0 : 0.0;
  return s;
}

InitialState InitialState::symmetric() {
  const double v = 1.0 / std::sqrt(2.0);
  return InitialState{{v, 0.0}, {v, 0.0}};
}

InitialState InitialState::antisymmetric() {
  const double v = 1.0 / std::sqrt(2.0);
  return InitialState{{v, 0.0}, {-v, 0.0}};
}

InitialState InitialState::balanced_imaginary() {
  const double v = 1.0 / std::sqrt(2.0);
  return InitialState{{v, 0.0}, {0.0, v}};
}

bool InitialState::is_coin_basis(double tol) const {
  return std::abs(a0) <= tol || std::abs(a1) <= tol;
}

int InitialState::basis_coin() const {
  if (!is_coin_basis())
    throw std::invalid_argument(
        "initial state is a coin superposition, not a basis state");
  return std::abs(a0) > std::abs(a1) ? 0 : 1;
}

void InitialState::validate() const {
  const double n = std::norm(a0) + std::norm(a1);
  if (std::abs(n - 1.0) > 1e-12)
    throw std::invalid_argument("initial coin state must have unit norm");
}

}  // namespace qwalk

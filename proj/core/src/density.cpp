#include "qwalk/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qwalk/coin.hpp"

namespace qwalk {

void KrausFamily::validate() const {
  if (!(strength >= 0.0) || !(strength <= 1.0))
    throw std::invalid_argument("measurement strength must be in [0, 1]");
}

DensityOperator::DensityOperator(int time, std::vector<std::complex<double>> m)
    : time_(time), m_(std::move(m)) {}

DensityOperator DensityOperator::from_initial(const InitialState& init) {
  init.validate();
  std::vector<std::complex<double>> m(4);
  const std::complex<double> a[2] = {init.a0, init.a1};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m[2 * i + j] = a[i] * std::conj(a[j]);
  return DensityOperator(0, std::move(m));
}

std::complex<double> DensityOperator::entry(int x, int i, int y, int j) const {
  if (x < -time_ || x > time_ || y < -time_ || y > time_) return {};
  const std::size_t n = static_cast<std::size_t>(dim());
  const std::size_t r = 2 * static_cast<std::size_t>(x + time_) + i;
  const std::size_t c = 2 * static_cast<std::size_t>(y + time_) + j;
  return m_[r * n + c];
}

double DensityOperator::trace() const {
  const std::size_t n = static_cast<std::size_t>(dim());
  double s = 0.0;
  for (std::size_t r = 0; r < n; ++r) s += m_[r * n + r].real();
  return s;
}

double DensityOperator::hermiticity_defect() const {
  const std::size_t n = static_cast<std::size_t>(dim());
  double worst = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c)
      worst = std::max(worst,
                       std::abs(m_[r * n + c] - std::conj(m_[c * n + r])));
  return worst;
}

Distribution DensityOperator::position_marginal() const {
  const std::size_t n = static_cast<std::size_t>(dim());
  Distribution d(time_);
  for (int x = -time_; x <= time_; ++x) {
    const std::size_t r0 = 2 * static_cast<std::size_t>(x + time_);
    const double v = m_[r0 * n + r0].real() + m_[(r0 + 1) * n + r0 + 1].real();
    d.mass_ref(x) = std::max(v, 0.0);  // guards tiny negative rounding
  }
  return d;
}

namespace {

// out = U * in, where U = shift * coin_n acts on the row index and rows are
// contiguous. U has two nonzeros per column: source (y, j) feeds
// (y+1, 0) with weight coin column entry C[0][j] and (y-1, 1) with C[1][j].
// in is n_in x n_cols over the window [-t, t]; out is n_out x n_cols over
// [-t-1, t+1].
void apply_left(const std::vector<std::complex<double>>& in, int t,
                std::size_t n_cols, const CoinOperator& coin,
                std::vector<std::complex<double>>& out) {
  const int t_out = t + 1;
  const std::size_t n_out = 2 * static_cast<std::size_t>(2 * t_out + 1);
  out.assign(n_out * n_cols, {});
  const double c00 = coin.a, c01 = coin.b, c10 = coin.b, c11 = -coin.a;
  for (int y = -t; y <= t; ++y) {
    const std::size_t row0 = 2 * static_cast<std::size_t>(y + t);
    const std::size_t up = 2 * static_cast<std::size_t>(y + 1 + t_out);
    const std::size_t dn = 2 * static_cast<std::size_t>(y - 1 + t_out) + 1;
    for (int j = 0; j < 2; ++j) {
      const std::complex<double>* src = &in[(row0 + j) * n_cols];
      const double wu = j == 0 ? c00 : c01;
      const double wd = j == 0 ? c10 : c11;
      std::complex<double>* du = &out[up * n_cols];
      std::complex<double>* dd = &out[dn * n_cols];
      for (std::size_t k = 0; k < n_cols; ++k) {
        du[k] += wu * src[k];
        dd[k] += wd * src[k];
      }
    }
  }
}

std::vector<std::complex<double>> adjoint(
    const std::vector<std::complex<double>>& a, std::size_t rows,
    std::size_t cols) {
  std::vector<std::complex<double>> out(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      out[c * rows + r] = std::conj(a[r * cols + c]);
  return out;
}

}  // namespace

DensityOperator DensityOperator::stepped(int n, const KrausFamily& kraus,
                                         const WalkParams& params) const {
  if (n != time_ + 1)
    throw std::invalid_argument("step index must be time() + 1");
  kraus.validate();
  const CoinOperator coin = build_coin(n, params.lambda, params.zeta);
  const int t = time_;
  const int t_out = t + 1;
  const std::size_t n_in = static_cast<std::size_t>(dim());
  const std::size_t n_out = 2 * static_cast<std::size_t>(2 * t_out + 1);

  // B = U rho U*. Using hermiticity, B = U (U rho)*: two row-contiguous
  // spreads with one materialized adjoint between them.
  std::vector<std::complex<double>> m1;
  apply_left(m_, t, n_in, coin, m1);            // U rho   (n_out x n_in)
  auto m2 = adjoint(m1, n_out, n_in);           // (U rho)* (n_in x n_out)
  std::vector<std::complex<double>> b;
  apply_left(m2, t, n_out, coin, b);            // U (U rho)* (n_out x n_out)

  // rho' = (1-p) B + p D(B): entries D keeps stay intact, the rest shrink
  // by (1-p).
  const double p = kraus.strength;
  if (p > 0.0) {
    const double keep = 1.0 - p;
    for (std::size_t r = 0; r < n_out; ++r) {
      std::complex<double>* row = &b[r * n_out];
      switch (kraus.family) {
        case MeasurementFamily::Total: {
          const std::complex<double> diag = row[r];
          for (std::size_t c = 0; c < n_out; ++c) row[c] *= keep;
          row[r] = diag;
          break;
        }
        case MeasurementFamily::Coin: {
          // kept entries have equal coin indices (same column parity as r)
          for (std::size_t c = 1 - (r & 1); c < n_out; c += 2) row[c] *= keep;
          break;
        }
        case MeasurementFamily::Position: {
          // kept entries lie in the 2x2 block of the row's position
          const std::size_t block = r & ~std::size_t{1};
          for (std::size_t c = 0; c < block; ++c) row[c] *= keep;
          for (std::size_t c = block + 2; c < n_out; ++c) row[c] *= keep;
          break;
        }
      }
    }
  }
  return DensityOperator(t_out, std::move(b));
}

Distribution evolve_exact(const InitialState& init, const KrausFamily& kraus,
                          const WalkParams& params,
                          const ExactOptions& options) {
  return evolve_exact_operator(init, kraus, params, options)
      .position_marginal();
}

DensityOperator evolve_exact_operator(const InitialState& init,
                                      const KrausFamily& kraus,
                                      const WalkParams& params,
                                      const ExactOptions& options) {
  params.validate();
  kraus.validate();
  if (params.horizon > options.horizon_cap)
    throw std::invalid_argument(
        "exact evolution refused: horizon exceeds the cap (" +
        std::to_string(options.horizon_cap) +
        "); raise the cap knowingly or use the trajectory or schedule "
        "samplers");
  DensityOperator rho = DensityOperator::from_initial(init);
  for (int n = 1; n <= params.horizon; ++n)
    rho = rho.stepped(n, kraus, params);
  return rho;
}

}  // namespace qwalk

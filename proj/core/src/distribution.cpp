#include "qwalk/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

Distribution::Distribution(int horizon)
    : horizon_(horizon), mass_(2 * static_cast<std::size_t>(horizon) + 1, 0.0) {
  if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
}

Distribution::Distribution(int horizon, std::vector<double> mass)
    : horizon_(horizon), mass_(std::move(mass)) {
  if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
  if (mass_.size() != 2 * static_cast<std::size_t>(horizon) + 1)
    throw std::invalid_argument("mass vector must have size 2*horizon+1");
}

double Distribution::mass(int x) const {
  if (x < -horizon_ || x > horizon_) return 0.0;
  return mass_[static_cast<std::size_t>(x + horizon_)];
}

double& Distribution::mass_ref(int x) {
  if (x < -horizon_ || x > horizon_)
    throw std::out_of_range("position outside the distribution window");
  return mass_[static_cast<std::size_t>(x + horizon_)];
}

void Distribution::set_stderrs(std::vector<double> se) {
  if (se.size() != mass_.size())
    throw std::invalid_argument("stderr vector must match the mass vector");
  se_ = std::move(se);
}

double Distribution::stderr_at(int x) const {
  if (se_.empty() || x < -horizon_ || x > horizon_) return 0.0;
  return se_[static_cast<std::size_t>(x + horizon_)];
}

double Distribution::total() const {
  double s = 0.0;
  for (double v : mass_) s += v;
  return s;
}

double Distribution::mean() const {
  double s = 0.0;
  for (int x = -horizon_; x <= horizon_; ++x)
    s += x * mass_[static_cast<std::size_t>(x + horizon_)];
  return s;
}

double Distribution::variance() const {
  const double m = mean();
  double s = 0.0;
  for (int x = -horizon_; x <= horizon_; ++x) {
    const double d = x - m;
    s += d * d * mass_[static_cast<std::size_t>(x + horizon_)];
  }
  return s;
}

int Distribution::min_support() const {
  for (int x = -horizon_; x <= horizon_; ++x)
    if (mass_[static_cast<std::size_t>(x + horizon_)] != 0.0) return x;
  return 0;
}

int Distribution::max_support() const {
  for (int x = horizon_; x >= -horizon_; --x)
    if (mass_[static_cast<std::size_t>(x + horizon_)] != 0.0) return x;
  return 0;
}

RescaledDistribution::RescaledDistribution(Distribution base, double gamma)
    : base_(std::move(base)),
      gamma_(gamma),
      scale_(std::pow(static_cast<double>(base_.horizon()), gamma)) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (base_.horizon() < 1)
    throw std::invalid_argument("rescaling needs horizon >= 1");
}

double RescaledDistribution::second_moment() const {
  double s = 0.0;
  for (int x = -base_.horizon(); x <= base_.horizon(); ++x) {
    const double v = point(x);
    s += v * v * base_.mass(x);
  }
  return s;
}

}  // namespace qwalk

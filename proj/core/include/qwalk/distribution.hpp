#pragma once

#include <vector>

namespace qwalk {

// Probability mass function on the integer window [-horizon, horizon],
// stored densely (index x + horizon). Monte Carlo produced distributions
// optionally carry a per-point standard error.
class Distribution {
 public:
  explicit Distribution(int horizon);
  Distribution(int horizon, std::vector<double> mass);

  int horizon() const { return horizon_; }
  double mass(int x) const;   // 0 outside the window
  double& mass_ref(int x);    // x must lie in the window

  void set_stderrs(std::vector<double> se);  // size 2*horizon+1
  bool has_stderrs() const { return !se_.empty(); }
  double stderr_at(int x) const;  // 0 if absent or outside the window

  double total() const;
  double mean() const;
  double variance() const;

  // Window trimmed to nonzero mass. For the zero distribution both return 0.
  int min_support() const;
  int max_support() const;

  const std::vector<double>& raw() const { return mass_; }

 private:
  int horizon_;
  std::vector<double> mass_;
  std::vector<double> se_;
};

// The same masses with support points relabeled x -> x / horizon^gamma.
class RescaledDistribution {
 public:
  RescaledDistribution(Distribution base, double gamma);

  const Distribution& base() const { return base_; }
  double gamma() const { return gamma_; }
  double scale() const { return scale_; }  // horizon^gamma

  double point(int x) const { return static_cast<double>(x) / scale_; }
  double mean() const { return base_.mean() / scale_; }
  double variance() const { return base_.variance() / (scale_ * scale_); }
  double second_moment() const;

 private:
  Distribution base_;
  double gamma_;
  double scale_;
};

}  // namespace qwalk

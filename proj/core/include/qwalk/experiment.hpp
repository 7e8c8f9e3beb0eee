#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/density.hpp"
#include "qwalk/distribution.hpp"
#include "qwalk/fit.hpp"
#include "qwalk/params.hpp"

namespace qwalk {

enum class Method { Pure, Exact, Trajectory, Siy, Classical };

const char* to_string(Method m);
Method parse_method(const std::string& s);
MeasurementFamily parse_family(const std::string& s);
InitialState parse_initial_state(const std::string& s);

// Shortest round-trip decimal form of v (never locale dependent).
std::string format_double(double v);

// One simulation request. `decoherence` is optional so the methods with a
// fixed decoherence level can default it: Pure runs at 0, Classical at 1,
// and a conflicting explicit value is an error rather than silently ignored.
struct ExperimentConfig {
  Method method = Method::Pure;
  double lambda = 0.5;
  double zeta = 1.0;
  std::optional<double> decoherence;
  int horizon = 100;
  MeasurementFamily family = MeasurementFamily::Total;
  InitialState init = InitialState::basis(0);
  std::array<double, 2> classical_coin_init{0.5, 0.5};
  std::int64_t samples = 200000;  // trajectory Monte Carlo
  int n_schedules = 500;          // representation sampler
  int n_chains = 2000;
  int n_sums = 500;
  double gamma = 1.0;
  double alpha = 0.03;
  std::uint64_t seed = 1;
  int exact_cap = 300;
  int threads = 1;
  std::string output_path;

  double resolved_decoherence() const;
  WalkParams walk_params() const;
  void validate() const;
};

// key = value file, one pair per line, '#' comments, blank lines ignored.
// Unknown keys are errors.
ExperimentConfig parse_config_file(const std::string& path);

// Runs the configured method and returns the position distribution at the
// horizon.
Distribution run_method(const ExperimentConfig& config);

struct SimulateOutputs {
  std::string csv_path;
  std::string meta_path;
  Distribution dist;
};

// Runs the method and writes <out>.csv rows "x,rescaled_x,prob,stderr"
// sorted by x (stderr blank for deterministic methods) plus a JSON metadata
// sidecar <out>.meta.json recording the full configuration, the rng
// algorithm, clamp events and wall time.
SimulateOutputs run_simulate(const ExperimentConfig& config);

void write_distribution_csv(const std::string& path, const Distribution& dist,
                            double gamma);

struct CsvDistribution {
  Distribution dist;
  int horizon = 0;
};

// Reads a distribution CSV written by run_simulate. The horizon is taken
// from the metadata sidecar when present, otherwise from horizon_hint;
// refuses when neither is available.
CsvDistribution read_distribution_csv(const std::string& path,
                                      int horizon_hint = -1);

enum class SweepStatistic { AlphaT, Variance };

const char* to_string(SweepStatistic s);

// Grid sweep over (lambda, zeta, p) with a per-point time series. The
// engine is picked from p: 0 uses the pure walk, anything between the exact
// evolution subject to its horizon cap (both from the balanced imaginary
// coin, whose position density is symmetric), and 1 the classical walk with
// a uniform coin. Failures are recorded per grid point and the sweep
// continues.
struct SweepSpec {
  std::vector<double> lambdas{0.5};
  std::vector<double> zetas{1.0};
  std::vector<double> ps{0.0};
  std::vector<int> t_grid;  // default 100, 200, ..., 2000
  SweepStatistic statistic = SweepStatistic::AlphaT;
  std::vector<DecayModel> fit_models;  // empty: no fit output
  double gamma = 1.0;
  double alpha = 0.03;
  std::uint64_t seed = 1;
  int exact_cap = 300;
  std::string output_prefix;  // writes <prefix>_stats.csv, <prefix>_fits.csv
};

struct SweepPointRow {
  double lambda, zeta, p;
  int t;
  double value;
  std::string status;  // "ok" or the error message
};

struct SweepFitRow {
  double lambda, zeta, p;
  DecayModel model;
  FitResult fit;
  std::string status;
};

struct SweepOutputs {
  std::vector<SweepPointRow> points;
  std::vector<SweepFitRow> fits;
  std::string stats_path;  // empty when no prefix was given
  std::string fits_path;
};

SweepOutputs run_sweep(const SweepSpec& spec);

std::vector<int> default_fit_grid();  // 100, 200, ..., 2000

// Reads a "t,value" series (the sweep stats format is accepted when it
// contains a single parameter group).
std::vector<std::pair<double, double>> read_series_csv(
    const std::string& path);

}  // namespace qwalk

// Command line front end: simulate, sweep, fit, compare.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwalk/analysis.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/version.hpp"

namespace {

std::vector<double> parse_grid(const std::string& s, const std::string& what) {
  std::vector<double> out;
  const auto colon_parts = [&] {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
      if (ch == ':') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    parts.push_back(cur);
    return parts;
  }();
  auto to_double = [&](const std::string& v) {
    try {
      std::size_t pos = 0;
      const double d = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("");
      return d;
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse " + what + " entry '" + v +
                                  "'");
    }
  };
  if (colon_parts.size() == 3) {
    const double a = to_double(colon_parts[0]);
    const double b = to_double(colon_parts[1]);
    const double step = to_double(colon_parts[2]);
    if (!(step > 0.0) || b < a)
      throw std::invalid_argument(what + ": range needs lo:hi:step, step > 0");
    const int n = static_cast<int>(std::llround((b - a) / step));
    for (int i = 0; i <= n; ++i) out.push_back(a + i * step);
    return out;
  }
  if (colon_parts.size() != 1)
    throw std::invalid_argument(what + ": expected value, list or lo:hi:step");
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(to_double(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (out.empty()) throw std::invalid_argument(what + ": empty grid");
  return out;
}

std::vector<int> parse_int_grid(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (double v : parse_grid(s, what)) {
    const int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-9)
      throw std::invalid_argument(what + ": entries must be integers");
    out.push_back(i);
  }
  return out;
}

qwalk::ReferenceDensity parse_reference(const std::string& s) {
  if (s == "arcsine") return qwalk::ReferenceDensity::arcsine();
  if (s == "uniform") return qwalk::ReferenceDensity::uniform();
  if (s == "semicircle") return qwalk::ReferenceDensity::semicircle();
  if (s == "konno") return qwalk::ReferenceDensity::konno_hadamard();
  const auto colon = s.find(':');
  if (colon != std::string::npos) {
    const std::string head = s.substr(0, colon);
    const std::string arg = s.substr(colon + 1);
    try {
      std::size_t pos = 0;
      const double v = std::stod(arg, &pos);
      if (pos != arg.size()) throw std::invalid_argument("");
      if (head == "beta") return qwalk::ReferenceDensity::beta_symmetric(v);
      if (head == "gaussian") return qwalk::ReferenceDensity::gaussian(v);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("cannot parse reference '" + s + "'");
    }
  }
  throw std::invalid_argument(
      "unknown reference '" + s +
      "' (expected arcsine, uniform, semicircle, konno, beta:LAMBDA or "
      "gaussian:VARIANCE)");
}

qwalk::DecayModel parse_model(const std::string& s) {
  if (s == "exponential") return qwalk::DecayModel::Exponential;
  if (s == "rational") return qwalk::DecayModel::Rational;
  throw std::invalid_argument("unknown model '" + s +
                              "' (expected exponential or rational)");
}

struct SimulateArgs {
  std::string config_path;
  std::string method, family, init, classical_init;
  double lambda = 0, zeta = 0, p = 0, gamma = 0, alpha = 0;
  std::int64_t samples = 0;
  int t = 0, n_schedules = 0, n_chains = 0, n_sums = 0, exact_cap = 0,
      threads = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_simulate_cmd(const CLI::App& cmd, const SimulateArgs& args) {
  qwalk::ExperimentConfig cfg;
  if (cmd.count("--config")) cfg = qwalk::parse_config_file(args.config_path);
  if (cmd.count("--method")) cfg.method = qwalk::parse_method(args.method);
  if (cmd.count("--lambda")) cfg.lambda = args.lambda;
  if (cmd.count("--zeta")) cfg.zeta = args.zeta;
  if (cmd.count("--p")) cfg.decoherence = args.p;
  if (cmd.count("--t")) cfg.horizon = args.t;
  if (cmd.count("--family")) cfg.family = qwalk::parse_family(args.family);
  if (cmd.count("--init")) cfg.init = qwalk::parse_initial_state(args.init);
  if (cmd.count("--classical-init")) {
    const auto comma = args.classical_init.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--classical-init needs q0,q1");
    cfg.classical_coin_init = {std::stod(args.classical_init.substr(0, comma)),
                               std::stod(args.classical_init.substr(comma + 1))};
  }
  if (cmd.count("--samples")) cfg.samples = args.samples;
  if (cmd.count("--n-schedules")) cfg.n_schedules = args.n_schedules;
  if (cmd.count("--n-chains")) cfg.n_chains = args.n_chains;
  if (cmd.count("--n-sums")) cfg.n_sums = args.n_sums;
  if (cmd.count("--gamma")) cfg.gamma = args.gamma;
  if (cmd.count("--alpha")) cfg.alpha = args.alpha;
  if (cmd.count("--seed")) cfg.seed = args.seed;
  if (cmd.count("--exact-cap")) cfg.exact_cap = args.exact_cap;
  if (cmd.count("--threads")) cfg.threads = args.threads;
  if (cmd.count("--out")) cfg.output_path = args.out;

  const qwalk::SimulateOutputs outputs = qwalk::run_simulate(cfg);
  std::cout << "wrote " << outputs.csv_path << " and " << outputs.meta_path
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-inhomogeneous decoherent walk simulator"};
  app.set_version_flag("--version", qwalk::kVersion);
  app.require_subcommand(1);

  // simulate
  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run one method and write the position distribution");
  simulate->add_option("--config", sim.config_path,
                       "key = value config file; flags override it");
  simulate->add_option("--method", sim.method,
                       "pure | exact | trajectory | siy | classical");
  simulate->add_option("--lambda", sim.lambda, "coin family strength");
  simulate->add_option("--zeta", sim.zeta, "coin family decay exponent");
  simulate->add_option("--p", sim.p, "decoherence strength in [0, 1]");
  simulate->add_option("--t", sim.t, "horizon (number of steps)");
  simulate->add_option("--family", sim.family, "total | coin | position");
  simulate->add_option("--init", sim.init,
                       "basis0 | basis1 | symmetric | antisymmetric | "
                       "imaginary | amp:re0,im0,re1,im1");
  simulate->add_option("--classical-init", sim.classical_init,
                       "initial coin law q0,q1 for the classical method");
  simulate->add_option("--samples", sim.samples, "trajectory sample count");
  simulate->add_option("--n-schedules", sim.n_schedules,
                       "siy: measurement schedule draws");
  simulate->add_option("--n-chains", sim.n_chains,
                       "siy: coin chains per schedule");
  simulate->add_option("--n-sums", sim.n_sums, "siy: jump sums per chain");
  simulate->add_option("--gamma", sim.gamma, "rescaling exponent");
  simulate->add_option("--alpha", sim.alpha, "tail mass level");
  simulate->add_option("--seed", sim.seed, "master seed");
  simulate->add_option("--exact-cap", sim.exact_cap,
                       "largest horizon the exact method accepts");
  simulate->add_option("--threads", sim.threads, "worker threads");
  simulate->add_option("--out", sim.out, "output CSV path");

  // sweep
  std::string sw_lambda = "0.5", sw_zeta = "1", sw_p = "0", sw_tgrid;
  std::string sw_stat = "alpha_t", sw_fit;
  qwalk::SweepSpec sweep_spec;
  std::string sw_out;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Grid sweep producing per-point statistics and decay fits");
  sweep->add_option("--lambda", sw_lambda, "value, list or lo:hi:step");
  sweep->add_option("--zeta", sw_zeta, "value, list or lo:hi:step");
  sweep->add_option("--p", sw_p, "value, list or lo:hi:step");
  sweep->add_option("--t-grid", sw_tgrid,
                    "time grid (default 100:2000:100)");
  sweep->add_option("--statistic", sw_stat, "alpha_t | variance");
  sweep->add_option("--fit", sw_fit,
                    "comma list of decay models to fit (rational, "
                    "exponential)");
  sweep->add_option("--gamma", sweep_spec.gamma, "rescaling exponent");
  sweep->add_option("--alpha", sweep_spec.alpha, "tail mass level");
  sweep->add_option("--seed", sweep_spec.seed, "master seed");
  sweep->add_option("--exact-cap", sweep_spec.exact_cap,
                    "largest horizon the exact engine accepts");
  sweep->add_option("--out", sw_out, "output prefix");

  // fit
  std::string fit_in, fit_model = "rational", fit_out;
  double fit_c0 = 0, fit_r0 = 0;
  CLI::App* fit = app.add_subcommand(
      "fit", "Fit a decay model to a t,value series CSV");
  fit->add_option("--in", fit_in, "series CSV (t,value)")->required();
  fit->add_option("--model", fit_model, "exponential | rational");
  fit->add_option("--c0", fit_c0, "initial amplitude guess");
  fit->add_option("--r0", fit_r0, "initial rate guess");
  fit->add_option("--out", fit_out, "optional CSV to append the result to");

  // compare
  std::string cmp_a, cmp_b, cmp_ref, cmp_metric = "tv";
  double cmp_gamma = 1.0;
  int cmp_t = -1;
  CLI::App* compare = app.add_subcommand(
      "compare", "Distance between a distribution CSV and a second CSV or a "
                 "continuous reference");
  compare->add_option("--a", cmp_a, "distribution CSV")->required();
  compare->add_option("--b", cmp_b, "second distribution CSV (tv)");
  compare->add_option("--ref", cmp_ref,
                      "reference density (ks): arcsine, uniform, semicircle, "
                      "konno, beta:LAMBDA, gaussian:VARIANCE");
  compare->add_option("--metric", cmp_metric,
                      "tv | ks (defaults to match --b / --ref)");
  compare->add_option("--gamma", cmp_gamma, "rescaling exponent (ks)");
  compare->add_option("--t", cmp_t,
                      "horizon when no metadata sidecar is present");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (simulate->parsed()) return run_simulate_cmd(*simulate, sim);

    if (sweep->parsed()) {
      sweep_spec.lambdas = parse_grid(sw_lambda, "--lambda");
      sweep_spec.zetas = parse_grid(sw_zeta, "--zeta");
      sweep_spec.ps = parse_grid(sw_p, "--p");
      if (sweep->count("--t-grid"))
        sweep_spec.t_grid = parse_int_grid(sw_tgrid, "--t-grid");
      if (sw_stat == "alpha_t")
        sweep_spec.statistic = qwalk::SweepStatistic::AlphaT;
      else if (sw_stat == "variance")
        sweep_spec.statistic = qwalk::SweepStatistic::Variance;
      else
        throw std::invalid_argument("unknown statistic '" + sw_stat + "'");
      if (sweep->count("--fit")) {
        std::string cur;
        for (char ch : sw_fit + ",") {
          if (ch == ',') {
            if (!cur.empty()) sweep_spec.fit_models.push_back(parse_model(cur));
            cur.clear();
          } else {
            cur.push_back(ch);
          }
        }
      }
      if (sw_out.empty())
        throw std::invalid_argument("sweep needs --out PREFIX");
      sweep_spec.output_prefix = sw_out;
      const qwalk::SweepOutputs outputs = qwalk::run_sweep(sweep_spec);
      std::size_t failed = 0;
      for (const auto& row : outputs.points)
        if (row.status != "ok") ++failed;
      std::cout << "wrote " << outputs.stats_path;
      if (!outputs.fits_path.empty()) std::cout << " and " << outputs.fits_path;
      std::cout << " (" << outputs.points.size() << " points";
      if (failed > 0) std::cout << ", " << failed << " failed";
      std::cout << ")\n";
      return 0;
    }

    if (fit->parsed()) {
      const auto series = qwalk::read_series_csv(fit_in);
      const qwalk::DecayModel model = parse_model(fit_model);
      std::optional<std::pair<double, double>> start;
      if (fit->count("--c0") || fit->count("--r0")) {
        if (!fit->count("--c0") || !fit->count("--r0"))
          throw std::invalid_argument("--c0 and --r0 must be given together");
        start = {{fit_c0, fit_r0}};
      }
      const qwalk::FitResult res = qwalk::fit_decay(series, model, start);
      std::cout << "model=" << qwalk::to_string(res.model)
                << " c=" << qwalk::format_double(res.c)
                << " r=" << qwalk::format_double(res.r)
                << " r_squared=" << qwalk::format_double(res.r_squared)
                << " rmse=" << qwalk::format_double(res.rmse)
                << " converged=" << (res.converged ? "true" : "false")
                << "\n";
      if (!fit_out.empty()) {
        std::ofstream f(fit_out, std::ios::app);
        if (!f) throw std::runtime_error("cannot write '" + fit_out + "'");
        if (f.tellp() == 0)
          f << "model,c,r,r_squared,rmse,converged\n";
        f << qwalk::to_string(res.model) << ',' << qwalk::format_double(res.c)
          << ',' << qwalk::format_double(res.r) << ','
          << qwalk::format_double(res.r_squared) << ','
          << qwalk::format_double(res.rmse) << ','
          << (res.converged ? "true" : "false") << '\n';
      }
      return 0;
    }

    if (compare->parsed()) {
      const bool have_b = compare->count("--b") > 0;
      const bool have_ref = compare->count("--ref") > 0;
      if (have_b == have_ref)
        throw std::invalid_argument(
            "compare needs exactly one of --b and --ref");
      if (compare->count("--metric") == 0) cmp_metric = have_b ? "tv" : "ks";
      const auto a = qwalk::read_distribution_csv(cmp_a, cmp_t);
      if (cmp_metric == "tv") {
        if (!have_b)
          throw std::invalid_argument(
              "tv compares two lattice distributions; pass --b");
        const auto b = qwalk::read_distribution_csv(cmp_b, cmp_t);
        std::cout << "tv=" << qwalk::format_double(
                                  qwalk::total_variation(a.dist, b.dist))
                  << "\n";
      } else if (cmp_metric == "ks") {
        if (!have_ref)
          throw std::invalid_argument(
              "ks compares against a continuous reference; pass --ref");
        const qwalk::ReferenceDensity ref = parse_reference(cmp_ref);
        const double d =
            qwalk::ks_distance(qwalk::rescale(a.dist, cmp_gamma), ref);
        std::cout << "ks=" << qwalk::format_double(d) << "\n";
      } else {
        throw std::invalid_argument("unknown metric '" + cmp_metric +
                                    "' (expected tv or ks)");
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}

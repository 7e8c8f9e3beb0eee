#include "qwalk/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qwalk/classical.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/pure_state.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/siy.hpp"
#include "qwalk/trajectory.hpp"
#include "qwalk/version.hpp"

namespace qwalk {

const char* to_string(Method m) {
  switch (m) {
    case Method::Pure:
      return "pure";
    case Method::Exact:
      return "exact";
    case Method::Trajectory:
      return "trajectory";
    case Method::Siy:
      return "siy";
    case Method::Classical:
      return "classical";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "pure") return Method::Pure;
  if (s == "exact") return Method::Exact;
  if (s == "trajectory") return Method::Trajectory;
  if (s == "siy") return Method::Siy;
  if (s == "classical") return Method::Classical;
  throw std::invalid_argument(
      "unknown method '" + s +
      "' (expected pure, exact, trajectory, siy or classical)");
}

MeasurementFamily parse_family(const std::string& s) {
  if (s == "total") return MeasurementFamily::Total;
  if (s == "coin") return MeasurementFamily::Coin;
  if (s == "position") return MeasurementFamily::Position;
  throw std::invalid_argument("unknown measurement family '" + s +
                              "' (expected total, coin or position)");
}

const char* to_string(SweepStatistic s) {
  switch (s) {
    case SweepStatistic::AlphaT:
      return "alpha_t";
    case SweepStatistic::Variance:
      return "variance";
  }
  return "?";
}

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s, const std::string& what) {
  // Not std::stod: it refuses values that underflow to subnormal (strtod
  // flags them ERANGE), and tiny tail probabilities are legitimate data.
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw std::invalid_argument("cannot parse " + what + " from '" + s + "'");
  return v;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + " from '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string meta_path_for(const std::string& csv_path) {
  if (csv_path.size() >= 4 &&
      csv_path.compare(csv_path.size() - 4, 4, ".csv") == 0)
    return csv_path.substr(0, csv_path.size() - 4) + ".meta.json";
  return csv_path + ".meta.json";
}

}  // namespace

InitialState parse_initial_state(const std::string& s) {
  if (s == "basis0") return InitialState::basis(0);
  if (s == "basis1") return InitialState::basis(1);
  if (s == "symmetric") return InitialState::symmetric();
  if (s == "antisymmetric") return InitialState::antisymmetric();
  if (s == "imaginary") return InitialState::balanced_imaginary();
  if (s.rfind("amp:", 0) == 0) {
    const auto parts = split(s.substr(4), ',');
    if (parts.size() != 4)
      throw std::invalid_argument(
          "amp: initial state needs 4 numbers re0,im0,re1,im1");
    InitialState st;
    st.a0 = {parse_double(parts[0], "initial amplitude"),
             parse_double(parts[1], "initial amplitude")};
    st.a1 = {parse_double(parts[2], "initial amplitude"),
             parse_double(parts[3], "initial amplitude")};
    st.validate();
    return st;
  }
  throw std::invalid_argument(
      "unknown initial state '" + s +
      "' (expected basis0, basis1, symmetric, antisymmetric, imaginary or "
      "amp:re0,im0,re1,im1)");
}

double ExperimentConfig::resolved_decoherence() const {
  if (decoherence) return *decoherence;
  switch (method) {
    case Method::Classical:
      return 1.0;
    default:
      return 0.0;
  }
}

WalkParams ExperimentConfig::walk_params() const {
  WalkParams p;
  p.lambda = lambda;
  p.zeta = zeta;
  p.decoherence = resolved_decoherence();
  p.horizon = horizon;
  p.family = family;
  return p;
}

void ExperimentConfig::validate() const {
  const WalkParams p = walk_params();
  p.validate();
  init.validate();
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("alpha must be in (0, 1)");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (exact_cap < 1) throw std::invalid_argument("exact_cap must be >= 1");
  switch (method) {
    case Method::Pure:
      if (p.decoherence != 0.0)
        throw std::invalid_argument(
            "the pure method runs at p = 0; drop --p or use exact, "
            "trajectory or siy for p > 0");
      break;
    case Method::Classical:
      if (p.decoherence != 1.0)
        throw std::invalid_argument(
            "the classical method models p = 1; drop --p or set it to 1");
      break;
    case Method::Siy:
      if (!(p.decoherence > 0.0))
        throw std::invalid_argument(
            "siy needs p > 0; use the pure method for p = 0");
      if (!init.is_coin_basis())
        throw std::invalid_argument(
            "siy starts from a coin basis state (basis0 or basis1)");
      if (n_schedules < 1 || n_chains < 1 || n_sums < 1)
        throw std::invalid_argument("siy sample counts must be >= 1");
      break;
    case Method::Trajectory:
      if (samples < 1) throw std::invalid_argument("samples must be >= 1");
      break;
    case Method::Exact:
      if (horizon > exact_cap)
        throw std::invalid_argument(
            "exact evolution refused: t = " + std::to_string(horizon) +
            " exceeds the cap " + std::to_string(exact_cap) +
            "; raise --exact-cap knowingly or use trajectory or siy");
      break;
  }
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      if (key == "method")
        cfg.method = parse_method(value);
      else if (key == "lambda")
        cfg.lambda = parse_double(value, key);
      else if (key == "zeta")
        cfg.zeta = parse_double(value, key);
      else if (key == "p")
        cfg.decoherence = parse_double(value, key);
      else if (key == "t")
        cfg.horizon = static_cast<int>(parse_int(value, key));
      else if (key == "family")
        cfg.family = parse_family(value);
      else if (key == "init")
        cfg.init = parse_initial_state(value);
      else if (key == "classical_init") {
        const auto parts = split(value, ',');
        if (parts.size() != 2)
          throw std::invalid_argument("classical_init needs two numbers");
        cfg.classical_coin_init = {parse_double(trim(parts[0]), key),
                                   parse_double(trim(parts[1]), key)};
      } else if (key == "samples")
        cfg.samples = parse_int(value, key);
      else if (key == "n_schedules")
        cfg.n_schedules = static_cast<int>(parse_int(value, key));
      else if (key == "n_chains")
        cfg.n_chains = static_cast<int>(parse_int(value, key));
      else if (key == "n_sums")
        cfg.n_sums = static_cast<int>(parse_int(value, key));
      else if (key == "gamma")
        cfg.gamma = parse_double(value, key);
      else if (key == "alpha")
        cfg.alpha = parse_double(value, key);
      else if (key == "seed")
        cfg.seed = static_cast<std::uint64_t>(parse_int(value, key));
      else if (key == "exact_cap")
        cfg.exact_cap = static_cast<int>(parse_int(value, key));
      else if (key == "threads")
        cfg.threads = static_cast<int>(parse_int(value, key));
      else if (key == "out")
        cfg.output_path = value;
      else
        throw std::invalid_argument("unknown config key '" + key + "'");
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": " + e.what());
    }
  }
  return cfg;
}

Distribution run_method(const ExperimentConfig& config) {
  config.validate();
  const WalkParams params = config.walk_params();
  const KrausFamily kraus{params.family, params.decoherence};
  switch (config.method) {
    case Method::Pure:
      return position_distribution(evolve_pure(config.init, params));
    case Method::Exact:
      return evolve_exact(config.init, kraus, params, {config.exact_cap});
    case Method::Trajectory:
      return mc_distribution(config.init, kraus, params,
                             {config.samples, config.seed, config.threads});
    case Method::Siy:
      return siy_estimate(config.init, params,
                          {config.n_schedules, config.n_chains, config.n_sums,
                           config.seed, config.threads});
    case Method::Classical:
      return evolve_classical(config.classical_coin_init, params).position;
  }
  throw std::logic_error("unreachable");
}

void write_distribution_csv(const std::string& path, const Distribution& dist,
                            double gamma) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  const double scale =
      std::pow(static_cast<double>(std::max(dist.horizon(), 1)), gamma);
  out << "x,rescaled_x,prob,stderr\n";
  for (int x = -dist.horizon(); x <= dist.horizon(); ++x) {
    const double m = dist.mass(x);
    if (m == 0.0) continue;
    out << x << ',' << format_double(static_cast<double>(x) / scale) << ','
        << format_double(m) << ',';
    if (dist.has_stderrs()) out << format_double(dist.stderr_at(x));
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

SimulateOutputs run_simulate(const ExperimentConfig& config) {
  config.validate();
  if (config.output_path.empty())
    throw std::invalid_argument("simulate needs an output path");
  const auto t0 = std::chrono::steady_clock::now();
  Distribution dist = run_method(config);
  const auto t1 = std::chrono::steady_clock::now();
  const double wall_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();

  const std::string csv_path = config.output_path;
  const std::string meta_path = meta_path_for(csv_path);
  write_distribution_csv(csv_path, dist, config.gamma);

  const WalkParams params = config.walk_params();
  nlohmann::json meta;
  meta["version"] = kVersion;
  meta["method"] = to_string(config.method);
  meta["params"] = {{"lambda", params.lambda}, {"zeta", params.zeta},
                    {"p", params.decoherence}, {"t", params.horizon},
                    {"family", to_string(params.family)},
                    {"shift", to_string(params.shift)}};
  meta["init"] = {{"a0", {config.init.a0.real(), config.init.a0.imag()}},
                  {"a1", {config.init.a1.real(), config.init.a1.imag()}}};
  meta["classical_init"] = config.classical_coin_init;
  meta["sampling"] = {{"samples", config.samples},
                      {"n_schedules", config.n_schedules},
                      {"n_chains", config.n_chains},
                      {"n_sums", config.n_sums},
                      {"seed", config.seed},
                      {"threads", config.threads}};
  meta["analysis"] = {{"gamma", config.gamma}, {"alpha", config.alpha}};
  meta["exact_cap"] = config.exact_cap;
  meta["rng"] = std::string(RngStream::kAlgorithm);
  meta["clamped_steps"] =
      clamp_count(params.lambda, params.zeta, params.horizon);
  meta["wall_ms"] = wall_ms;
  meta["csv"] = csv_path;

  std::ofstream mout(meta_path);
  if (!mout) throw std::runtime_error("cannot write '" + meta_path + "'");
  mout << meta.dump(2) << '\n';
  if (!mout) throw std::runtime_error("failed writing '" + meta_path + "'");

  return {csv_path, meta_path, std::move(dist)};
}

CsvDistribution read_distribution_csv(const std::string& path,
                                      int horizon_hint) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("'" + path + "' is empty");
  if (trim(header) != "x,rescaled_x,prob,stderr")
    throw std::runtime_error("'" + path +
                             "' does not look like a distribution CSV");

  int horizon = horizon_hint;
  {
    std::ifstream meta_in(meta_path_for(path));
    if (meta_in) {
      try {
        nlohmann::json meta;
        meta_in >> meta;
        horizon = meta.at("params").at("t").get<int>();
      } catch (const std::exception&) {
        // fall back to the hint
      }
    }
  }

  std::vector<std::pair<int, std::pair<double, double>>> rows;
  std::string line;
  int max_abs = 0;
  bool any_se = false;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto parts = split(line, ',');
    if (parts.size() != 4)
      throw std::runtime_error("'" + path + "': malformed row '" + line + "'");
    const int x = static_cast<int>(parse_int(trim(parts[0]), "x"));
    const double prob = parse_double(trim(parts[2]), "prob");
    const std::string se_str = trim(parts[3]);
    const double se = se_str.empty() ? 0.0 : parse_double(se_str, "stderr");
    if (!se_str.empty()) any_se = true;
    rows.push_back({x, {prob, se}});
    max_abs = std::max(max_abs, std::abs(x));
  }
  if (horizon < 0)
    throw std::runtime_error(
        "'" + path +
        "': horizon unknown (no metadata sidecar); pass it explicitly");
  if (max_abs > horizon)
    throw std::runtime_error("'" + path +
                             "': rows exceed the stated horizon");

  Distribution dist(horizon);
  std::vector<double> se(2 * static_cast<std::size_t>(horizon) + 1, 0.0);
  for (const auto& [x, pe] : rows) {
    dist.mass_ref(x) = pe.first;
    se[static_cast<std::size_t>(x + horizon)] = pe.second;
  }
  if (any_se) dist.set_stderrs(std::move(se));
  return {std::move(dist), horizon};
}

std::vector<int> default_fit_grid() {
  std::vector<int> g;
  for (int t = 100; t <= 2000; t += 100) g.push_back(t);
  return g;
}

SweepOutputs run_sweep(const SweepSpec& spec) {
  if (spec.lambdas.empty() || spec.zetas.empty() || spec.ps.empty())
    throw std::invalid_argument("sweep grids must be nonempty");
  if (!(spec.gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (!(spec.alpha > 0.0) || !(spec.alpha < 1.0))
    throw std::invalid_argument("alpha must be in (0, 1)");
  std::vector<int> grid = spec.t_grid.empty() ? default_fit_grid() : spec.t_grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) throw std::invalid_argument("t grid entries must be >= 1");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw std::invalid_argument("t grid must be strictly ascending");
  }

  SweepOutputs out;
  for (double lambda : spec.lambdas) {
    for (double zeta : spec.zetas) {
      for (double p : spec.ps) {
        std::vector<std::pair<double, double>> series;
        std::string group_error;
        std::vector<SweepPointRow> group_rows;
        try {
          WalkParams params;
          params.lambda = lambda;
          params.zeta = zeta;
          params.decoherence = p;
          params.horizon = grid.back();
          params.validate();

          std::vector<Distribution> dists;
          if (p == 0.0) {
            // the balanced imaginary coin is the init whose pure-walk
            // density is symmetric under the real coin family
            dists = pure_snapshots(InitialState::balanced_imaginary(), params,
                                   grid);
          } else if (p == 1.0) {
            dists = classical_snapshots({0.5, 0.5}, params, grid);
          } else {
            // exact evolution per point, subject to its horizon cap
            for (int t : grid) {
              WalkParams pt = params;
              pt.horizon = t;
              dists.push_back(evolve_exact(InitialState::balanced_imaginary(),
                                           {params.family, p}, pt,
                                           {spec.exact_cap}));
            }
          }
          for (std::size_t i = 0; i < grid.size(); ++i) {
            const double value =
                spec.statistic == SweepStatistic::AlphaT
                    ? tail_epsilon(dists[i], spec.alpha).alpha_t
                    : rescale(dists[i], spec.gamma).variance();
            series.push_back({static_cast<double>(grid[i]), value});
            group_rows.push_back({lambda, zeta, p, grid[i], value, "ok"});
          }
        } catch (const std::exception& e) {
          group_error = e.what();
          group_rows.clear();
          for (int t : grid)
            group_rows.push_back({lambda, zeta, p, t, 0.0, group_error});
        }
        for (auto& row : group_rows) out.points.push_back(std::move(row));

        for (DecayModel model : spec.fit_models) {
          SweepFitRow row{lambda, zeta, p, model, {}, "ok"};
          if (!group_error.empty()) {
            row.status = group_error;
          } else {
            try {
              row.fit = fit_decay(series, model);
            } catch (const std::exception& e) {
              row.status = e.what();
            }
          }
          out.fits.push_back(std::move(row));
        }
      }
    }
  }

  if (!spec.output_prefix.empty()) {
    out.stats_path = spec.output_prefix + "_stats.csv";
    std::ofstream sf(out.stats_path);
    if (!sf) throw std::runtime_error("cannot write '" + out.stats_path + "'");
    sf << "lambda,zeta,p,t," << to_string(spec.statistic) << ",status\n";
    for (const auto& row : out.points) {
      std::string status = row.status;
      std::replace(status.begin(), status.end(), ',', ';');
      sf << format_double(row.lambda) << ',' << format_double(row.zeta) << ','
         << format_double(row.p) << ',' << row.t << ',';
      if (row.status == "ok") sf << format_double(row.value);
      sf << ',' << status << '\n';
    }
    if (!spec.fit_models.empty()) {
      out.fits_path = spec.output_prefix + "_fits.csv";
      std::ofstream ff(out.fits_path);
      if (!ff) throw std::runtime_error("cannot write '" + out.fits_path + "'");
      ff << "lambda,zeta,p,model,c,r,r_squared,rmse,converged\n";
      for (const auto& row : out.fits) {
        if (row.status != "ok") continue;
        ff << format_double(row.lambda) << ',' << format_double(row.zeta)
           << ',' << format_double(row.p) << ',' << to_string(row.model)
           << ',' << format_double(row.fit.c) << ',' << format_double(row.fit.r)
           << ',' << format_double(row.fit.r_squared) << ','
           << format_double(row.fit.rmse) << ','
           << (row.fit.converged ? "true" : "false") << '\n';
      }
    }
  }
  return out;
}

std::vector<std::pair<double, double>> read_series_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("'" + path + "' is empty");
  const auto cols = split(trim(header), ',');
  int t_col = -1, v_col = -1, status_col = -1;
  std::vector<int> group_cols;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const std::string name = trim(cols[i]);
    if (name == "t")
      t_col = static_cast<int>(i);
    else if (name == "value" || name == "alpha_t" || name == "variance")
      v_col = static_cast<int>(i);
    else if (name == "status")
      status_col = static_cast<int>(i);
    else if (name == "lambda" || name == "zeta" || name == "p")
      group_cols.push_back(static_cast<int>(i));
  }
  if (t_col < 0 || v_col < 0)
    throw std::runtime_error(
        "'" + path + "': need columns t and value (or alpha_t/variance)");

  std::vector<std::pair<double, double>> series;
  std::set<std::string> groups;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto parts = split(line, ',');
    if (static_cast<int>(parts.size()) <= std::max(t_col, v_col))
      throw std::runtime_error("'" + path + "': malformed row '" + line + "'");
    if (status_col >= 0 && status_col < static_cast<int>(parts.size()) &&
        trim(parts[static_cast<std::size_t>(status_col)]) != "ok")
      continue;
    std::string group;
    for (int gc : group_cols)
      group += trim(parts[static_cast<std::size_t>(gc)]) + "|";
    groups.insert(group);
    series.push_back(
        {parse_double(trim(parts[static_cast<std::size_t>(t_col)]), "t"),
         parse_double(trim(parts[static_cast<std::size_t>(v_col)]), "value")});
  }
  if (groups.size() > 1)
    throw std::runtime_error(
        "'" + path +
        "': multiple parameter groups present; filter to one before fitting");
  return series;
}

}  // namespace qwalk

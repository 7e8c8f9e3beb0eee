// Drives the installed command line binary end to end through a shell.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qwalk/experiment.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int status = -1;
  std::string out;  // stdout and stderr interleaved
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QWALK_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult res;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  const int rc = pclose(pipe);
  if (rc >= 0 && WIFEXITED(rc)) res.status = WEXITSTATUS(rc);
  return res;
}

fs::path io_dir() {
  const fs::path d = fs::temp_directory_path() / "qwalk_cli_io";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("help and version") {
  const CmdResult help = run_cli("--help");
  CHECK(help.status == 0);
  CHECK(help.out.find("simulate") != std::string::npos);
  CHECK(help.out.find("sweep") != std::string::npos);
  CHECK(help.out.find("compare") != std::string::npos);

  const CmdResult version = run_cli("--version");
  CHECK(version.status == 0);
  CHECK(version.out.find('.') != std::string::npos);
}

TEST_CASE("simulate writes a normalized distribution") {
  const fs::path out = io_dir() / "pure.csv";
  const CmdResult res = run_cli(
      "simulate --method pure --t 30 --init imaginary --out " + out.string());
  CHECK(res.status == 0);
  CHECK(res.out.find("wrote") != std::string::npos);
  const qwalk::CsvDistribution d = qwalk::read_distribution_csv(out.string());
  CHECK(d.horizon == 30);
  CHECK(d.dist.total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("flags override the config file") {
  const fs::path cfg = io_dir() / "override.cfg";
  {
    std::ofstream f(cfg);
    f << "method = pure\nt = 20\nlambda = 0.75\n";
  }
  const fs::path out = io_dir() / "override.csv";
  const CmdResult res = run_cli("simulate --config " + cfg.string() +
                                " --t 24 --out " + out.string());
  CHECK(res.status == 0);
  const nlohmann::json meta =
      nlohmann::json::parse(slurp(io_dir() / "override.meta.json"));
  CHECK(meta.at("params").at("t") == 24);        // flag wins
  CHECK(meta.at("params").at("lambda") == 0.75);  // config survives
}

TEST_CASE("the same seed reproduces the same bytes") {
  const fs::path a = io_dir() / "mc_a.csv";
  const fs::path b = io_dir() / "mc_b.csv";
  const fs::path c = io_dir() / "mc_c.csv";
  const std::string base =
      "simulate --method trajectory --p 0.4 --t 25 --samples 20000 ";
  CHECK(run_cli(base + "--seed 5 --threads 1 --out " + a.string()).status == 0);
  CHECK(run_cli(base + "--seed 5 --threads 3 --out " + b.string()).status == 0);
  CHECK(run_cli(base + "--seed 6 --threads 1 --out " + c.string()).status == 0);
  CHECK(slurp(a) == slurp(b));  // thread count does not leak into the draw
  CHECK(slurp(a) != slurp(c));
}

TEST_CASE("compare reports zero distance for identical inputs") {
  const fs::path a = io_dir() / "cmp.csv";
  REQUIRE(run_cli("simulate --method pure --t 30 --init imaginary --out " +
                  a.string())
              .status == 0);
  const CmdResult tv = run_cli("compare --a " + a.string() + " --b " +
                               a.string() + " --metric tv");
  CHECK(tv.status == 0);
  CHECK(tv.out.rfind("tv=0", 0) == 0);

  const CmdResult ks = run_cli("compare --a " + a.string() +
                               " --metric ks --ref arcsine --gamma 1");
  CHECK(ks.status == 0);
  CHECK(ks.out.rfind("ks=", 0) == 0);

  // without --metric the argument pair picks the metric
  const CmdResult inferred_tv =
      run_cli("compare --a " + a.string() + " --b " + a.string());
  CHECK(inferred_tv.status == 0);
  CHECK(inferred_tv.out.rfind("tv=0", 0) == 0);
  const CmdResult inferred_ks =
      run_cli("compare --a " + a.string() + " --ref arcsine --gamma 1");
  CHECK(inferred_ks.status == 0);
  CHECK(inferred_ks.out == ks.out);

  // an explicit metric contradicting the argument pair still errors
  const CmdResult clash = run_cli("compare --a " + a.string() + " --b " +
                                  a.string() + " --metric ks");
  CHECK(clash.status != 0);
  CHECK(clash.out.find("pass --ref") != std::string::npos);
}

TEST_CASE("fit recovers a synthetic decay from a series file") {
  const fs::path series = io_dir() / "decay.csv";
  {
    std::ofstream f(series);
    f << "t,value\n";
    for (int i = 1; i <= 12; ++i) {
      const double t = 100.0 * i;
      f << t << ',' << qwalk::format_double(3.0 * std::pow(t, -0.5)) << '\n';
    }
  }
  const fs::path fit_out = io_dir() / "fit_rows.csv";
  fs::remove(fit_out);
  const CmdResult res = run_cli("fit --in " + series.string() +
                                " --model rational --out " + fit_out.string());
  CHECK(res.status == 0);
  const std::size_t rpos = res.out.find(" r=");
  REQUIRE(rpos != std::string::npos);
  CHECK(std::stod(res.out.substr(rpos + 3)) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(res.out.find("converged=true") != std::string::npos);

  const std::string rows = slurp(fit_out);
  CHECK(rows.rfind("model,c,r,r_squared,rmse,converged\n", 0) == 0);
  CHECK(rows.find("rational,") != std::string::npos);
}

TEST_CASE("sweep writes stats and fits files") {
  const std::string prefix = (io_dir() / "sw").string();
  const CmdResult res = run_cli(
      "sweep --lambda 0.5 --zeta 1 --p 0 --t-grid 20:60:20 --fit rational "
      "--out " + prefix);
  CHECK(res.status == 0);
  CHECK(res.out.find("3 points") != std::string::npos);
  CHECK(fs::exists(prefix + "_stats.csv"));
  CHECK(fs::exists(prefix + "_fits.csv"));

  const CmdResult fit = run_cli("fit --in " + prefix + "_stats.csv");
  CHECK(fit.status == 0);
  CHECK(fit.out.rfind("model=rational", 0) == 0);
}

TEST_CASE("errors exit nonzero with a message") {
  const auto expect_error = [](const std::string& args,
                               const std::string& needle) {
    const CmdResult res = run_cli(args);
    CHECK(res.status != 0);
    CHECK(res.out.rfind("error:", 0) == 0);
    CHECK(res.out.find(needle) != std::string::npos);
  };
  const std::string x = (io_dir() / "x.csv").string();
  expect_error("simulate --method quantum --t 10 --out " + x,
               "unknown method");
  expect_error("simulate --method siy --t 10 --out " + x, "siy needs p > 0");
  expect_error("simulate --method exact --t 400 --out " + x,
               "exceeds the cap");
  expect_error("simulate --method pure --p 0.5 --t 10 --out " + x,
               "pure method");
  expect_error("sweep --lambda 0.5 --zeta 1 --p 0 --t-grid 20,40", "--out");
  expect_error("compare --a " + x, "exactly one of");

  const fs::path cfg = io_dir() / "bad.cfg";
  {
    std::ofstream f(cfg);
    f << "method = pure\nbogus = 1\n";
  }
  expect_error("simulate --config " + cfg.string() + " --out " + x,
               "unknown config key");

  const CmdResult unknown_flag = run_cli("simulate --bogus 1");
  CHECK(unknown_flag.status == 2);
  CHECK(unknown_flag.out.rfind("error:", 0) == 0);
}

TEST_CASE("exact method reproduces the stored distribution") {
  const fs::path fresh = io_dir() / "exact_t60.csv";
  const CmdResult res = run_cli(
      "simulate --method exact --p 0.5 --lambda 0.5 --zeta 1 --t 60 "
      "--init basis0 --out " + fresh.string());
  CHECK(res.status == 0);

  const std::string golden_path =
      std::string(QWALK_TEST_DATA_DIR) + "/golden_exact_t60.csv";
  const qwalk::CsvDistribution golden =
      qwalk::read_distribution_csv(golden_path, 60);
  const qwalk::CsvDistribution now =
      qwalk::read_distribution_csv(fresh.string());
  REQUIRE(now.horizon == 60);
  for (int x = -60; x <= 60; ++x)
    CHECK(std::abs(now.dist.mass(x) - golden.dist.mass(x)) < 1e-12);
}

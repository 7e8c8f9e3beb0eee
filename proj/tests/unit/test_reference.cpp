#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "qwalk/reference.hpp"

using namespace qwalk;

TEST_CASE("log_gamma agrees with the standard library") {
  for (double x : {0.1, 0.5, 0.7, 1.0, 1.5, 2.0, 3.7, 10.0, 42.5, 171.0}) {
    const double want = std::lgamma(x);
    const double got = log_gamma(x);
    CHECK(std::abs(got - want) <=
          1e-10 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("incomplete beta endpoints, symmetry and midpoint") {
  CHECK(regularized_incomplete_beta(0.5, 0.5, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(0.5, 0.5, 1.0) == 1.0);
  for (double a : {0.5, 0.7, 1.5, 3.0}) {
    CHECK(regularized_incomplete_beta(a, a, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    for (double x : {0.1, 0.37, 0.8}) {
      const double lhs = regularized_incomplete_beta(a, 2 * a, x);
      const double rhs = 1.0 - regularized_incomplete_beta(2 * a, a, 1.0 - x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
  // I_x(1, b) has the closed form 1 - (1-x)^b
  for (double x : {0.2, 0.6, 0.9})
    CHECK(regularized_incomplete_beta(1.0, 2.5, x) ==
          doctest::Approx(1.0 - std::pow(1.0 - x, 2.5)).epsilon(1e-12));
}

TEST_CASE("named densities are the matching beta family members") {
  const ReferenceDensity arc = ReferenceDensity::arcsine();
  const ReferenceDensity bet = ReferenceDensity::beta_symmetric(0.5);
  for (double x : {-0.9, -0.2, 0.4, 0.77}) {
    CHECK(arc.pdf(x) == doctest::Approx(bet.pdf(x)).epsilon(1e-13));
    CHECK(arc.cdf(x) == doctest::Approx(bet.cdf(x)).epsilon(1e-13));
  }
  CHECK(ReferenceDensity::uniform().pdf(0.3) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(ReferenceDensity::uniform().cdf(0.3) == doctest::Approx(0.65).epsilon(1e-13));
}

TEST_CASE("arcsine cdf frozen values") {
  const ReferenceDensity d = ReferenceDensity::arcsine();
  CHECK(d.cdf(-0.9) == doctest::Approx(0.14356629312870625).epsilon(1e-10));
  CHECK(d.cdf(-0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(d.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d.cdf(0.3) == doctest::Approx(0.5969866840206784).epsilon(1e-10));
  CHECK(d.cdf(0.8) == doctest::Approx(0.7951672353008666).epsilon(1e-10));
  CHECK(d.cdf(-1.5) == 0.0);
  CHECK(d.cdf(2.0) == 1.0);
  CHECK(d.pdf(0.3) == doctest::Approx(0.33367942706514747).epsilon(1e-12));
  CHECK(d.pdf(1.2) == 0.0);
}

TEST_CASE("semicircle cdf frozen values") {
  const ReferenceDensity d = ReferenceDensity::semicircle();
  CHECK(d.cdf(-0.5) == doctest::Approx(0.1955011094778853).epsilon(1e-10));
  CHECK(d.cdf(0.2) == doctest::Approx(0.626469960947669).epsilon(1e-10));
  CHECK(d.cdf(0.9) == doctest::Approx(0.9813069632657506).epsilon(1e-10));
  CHECK(d.pdf(-0.2) == doctest::Approx(0.6237574409869407).epsilon(1e-12));
}

TEST_CASE("beta cdf at a non-special parameter, frozen quadrature values") {
  const ReferenceDensity d = ReferenceDensity::beta_symmetric(0.7);
  CHECK(d.cdf(-0.4) == doctest::Approx(0.3376410232439358).epsilon(1e-8));
  CHECK(d.cdf(0.1) == doctest::Approx(0.5399475479129324).epsilon(1e-8));
  CHECK(d.cdf(0.6) == doctest::Approx(0.7495880926902857).epsilon(1e-8));
  CHECK(d.pdf(0.25) == doctest::Approx(0.4068768483969991).epsilon(1e-12));
  const ReferenceDensity s = ReferenceDensity::beta_symmetric(1.5);
  CHECK(s.cdf(-0.5) == doctest::Approx(0.19550110947788327).epsilon(1e-8));
  CHECK(s.cdf(0.3) == doctest::Approx(0.6880811676094636).epsilon(1e-8));
}

TEST_CASE("gaussian cdf frozen values") {
  const ReferenceDensity d = ReferenceDensity::gaussian(2.2);
  CHECK(d.cdf(-1.0) == doctest::Approx(0.25009212853539725).epsilon(1e-12));
  CHECK(d.cdf(0.5) == doctest::Approx(0.6319792153669606).epsilon(1e-12));
  CHECK(d.pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI * 2.2)).epsilon(1e-13));
}

TEST_CASE("konno density frozen quadrature values") {
  const ReferenceDensity d = ReferenceDensity::konno_hadamard();
  CHECK(d.support_lo() == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(d.support_hi() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(d.pdf(0.25) == doctest::Approx(0.27223006558234353).epsilon(1e-12));
  CHECK(d.pdf(-0.5) == doctest::Approx(0.9003163161571061).epsilon(1e-12));
  CHECK(d.pdf(0.9) == 0.0);
  CHECK(d.cdf(-0.6) == doctest::Approx(0.3849729147792957).epsilon(1e-5));
  CHECK(d.cdf(-0.3) == doctest::Approx(0.6324009361159985).epsilon(1e-5));
  CHECK(d.cdf(0.0) == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(d.cdf(0.25) == doctest::Approx(0.822509543578693).epsilon(1e-5));
  CHECK(d.cdf(0.5) == doctest::Approx(0.8918250431334092).epsilon(1e-5));
  CHECK(d.cdf(0.7) == doctest::Approx(0.9812631529947898).epsilon(1e-5));
  CHECK(d.cdf(-0.8) == 0.0);
  CHECK(d.cdf(0.8) == 1.0);
}

TEST_CASE("pdfs integrate to one") {
  for (const ReferenceDensity& d :
       {ReferenceDensity::arcsine(), ReferenceDensity::beta_symmetric(0.7),
        ReferenceDensity::semicircle(), ReferenceDensity::konno_hadamard()}) {
    // cdf spans [0, 1] across the support
    CHECK(d.cdf(d.support_lo() - 1e-9) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(d.cdf(d.support_hi() + 1e-9) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("cdfs are monotone") {
  for (const ReferenceDensity& d :
       {ReferenceDensity::beta_symmetric(0.6), ReferenceDensity::gaussian(1.0),
        ReferenceDensity::konno_hadamard()}) {
    double prev = -1.0;
    for (int k = -20; k <= 20; ++k) {
      const double c = d.cdf(0.05 * k);
      CHECK(c >= prev - 1e-12);
      prev = c;
    }
  }
}

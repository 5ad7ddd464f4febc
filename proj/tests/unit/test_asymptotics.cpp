#include "bkd/asymptotics.hpp"
#include "bkd/eta_series.hpp"

#include <doctest.h>

#include <cmath>

using namespace bkd;

namespace {

Interval iv(double v) { return Interval::from_double(v); }

// True when |x - ref| <= tol * |ref| for every point of x.
bool near(const Interval& x, double ref, double tol) {
  return std::abs(x.lo_double() - ref) <= tol * std::abs(ref) && std::abs(x.hi_double() - ref) <= tol * std::abs(ref);
}

}  // namespace

TEST_CASE("constants") {
  CHECK(alpha_k(1) == Rational(7, 3));
  CHECK(alpha_k(2) == Rational(12, 5));
  CHECK_THROWS_AS(AsymptoticConstants::get(0), std::invalid_argument);
  CHECK(bessel_remainder_threshold() == Rational(11390625, 7680));
  CHECK(bessel_auto_precision(1000.0) == 1450 + 64);
  CHECK(analytic_auto_precision(1, 10) == kDefaultPrecision);
  // mpmath: pi sqrt(2396) / 6
  CHECK(near(x_k(1, 100), 25.62961185870863756, 1e-15));
  CHECK_THROWS_AS(x_k(1, 0), std::domain_error);
}

TEST_CASE("bessel series") {
  // Reference values from mpmath.besseli.
  CHECK(near(bessel_I(2, iv(1)), 0.13574766976703828118, 1e-15));
  CHECK(near(bessel_I(2, iv(10)), 2281.5189677260035406, 1e-15));
  CHECK(near(bessel_I(2, iv(50)), 281643064024519405478.46, 1e-15));
  CHECK(bessel_I(2, iv(1)).width() < 1e-100);
  CHECK_THROWS_AS(bessel_I(2, iv(-1)), std::domain_error);

  // I_{nu-1} - I_{nu+1} = (2 nu / z) I_nu
  for (int z = 1; z <= 50; ++z) {
    const auto x = Interval::from_long(z);
    const auto lhs = bessel_I(1, x) - bessel_I(3, x);
    const auto rhs = Interval::from_long(4) / x * bessel_I(2, x);
    CHECK((lhs - rhs).contains_zero());
    CHECK(((lhs - rhs) / rhs).width() < 1e-90);
  }
}

TEST_CASE("main term and remainder") {
  const auto z = Interval::from_long(1484);
  // Direct rational evaluation of the six-term expansion.
  const Rational zq(1484);
  const Rational s = 1 - Rational(15, 8) / zq + Rational(105, 128) / (zq * zq) +
                     Rational(315, 1024) / (zq * zq * zq) + Rational(10395, 32768) / (zq * zq * zq * zq) +
                     Rational(135135, 262144) / (zq * zq * zq * zq * zq);
  CHECK(main_term_S2(z).contains(s));
  CHECK(near(main_term_S2(z), 0.99873689549259187645855659, 1e-15));

  const auto c = check_bessel_remainder(z);
  CHECK(c.verdict == Verdict::Pass);
  CHECK(c.margin.certainly_positive());
  // mpmath: (I_2(z) e^-z sqrt(2 pi z) - S(z)) z^6 = 1.12973498100407763919...
  CHECK(near(c.scaled_error, 1.1297349810040776392, 1e-12));
  CHECK_THROWS_AS(check_bessel_remainder(Interval::from_long(1400)), std::domain_error);
}

TEST_CASE("general nu bound") {
  const auto z = Interval::from_long(1484);
  const auto b = general_remainder_bound(2, z);
  // |prod_{j odd <= 11} (4 - j^2/4)| / 720 = 4729725/65536, divided by 2^{3/2}.
  const double product = 4729725.0 / 65536.0 / std::pow(2.0, 1.5) / std::pow(1484.0, 6);
  CHECK(near(b.product_term, product, 1e-14));
  CHECK((b.total - b.incomplete_gamma_term - b.integral_term - b.product_term).contains_zero());
  CHECK(b.incomplete_gamma_term.certainly_positive());
  CHECK(certainly_less(b.integral_term, iv(1e-300)));
  CHECK_THROWS_AS(general_remainder_bound(1, z), std::domain_error);
  // (3 + 11/2)^6 / 120 is about 3143.
  CHECK_THROWS_AS(general_remainder_bound(3, Interval::from_long(3100)), std::domain_error);
  CHECK_NOTHROW(general_remainder_bound(3, Interval::from_long(3200)));
  const auto b8 = general_remainder_bound(8, Interval::from_long(60000));
  CHECK(b8.product_term.certainly_positive());
}

TEST_CASE("envelope orientation") {
  const auto t = Interval::from_long(1000);
  const auto lower = envelope_check(1, t, EnvelopeOrientation::PhiLower);
  const auto upper = envelope_check(1, t, EnvelopeOrientation::PhiUpper);
  CHECK(lower.verdict == Verdict::Fail);
  CHECK(upper.verdict == Verdict::Pass);
  CHECK(envelope_check(1, Interval::from_long(900), EnvelopeOrientation::PhiUpper).verdict ==
        Verdict::OutsideHypothesis);
}

TEST_CASE("main term against exact values") {
  // mpmath reference for M_1(100) and M_2(100).
  CHECK(near(M_k(1, 100), 37387230864201.549930759879, 1e-15));
  CHECK(near(M_k(2, 100), 65558202260092.624624007587, 1e-15));
  const auto t = delta_table(1, 3600);
  const auto d = delta_bounds_check(t, 3512);
  CHECK(d.verdict == Verdict::Pass);
  CHECK(delta_bounds_check(t, 3000).verdict == Verdict::OutsideHypothesis);
  CHECK(theta_exact(t, 2) == Rational(27, 32));
  CHECK(lambda_bounds_check(1, 2).verdict == Verdict::Pass);
  CHECK(lambda_bounds_check(1, 3511).verdict == Verdict::Pass);
  CHECK(theta_bounds_check(t, 3512).verdict == Verdict::OutsideHypothesis);
  CHECK(sandwich_check(t, 3512).verdict == Verdict::Pass);
  const auto b = lambda_theta_bounds(1, 15081);
  CHECK(b.theta_in_hypothesis);
  CHECK_FALSE(lambda_theta_bounds(1, 15080).theta_in_hypothesis);
  CHECK_FALSE(lambda_theta_bounds(3, 20000).theta_in_hypothesis);
}

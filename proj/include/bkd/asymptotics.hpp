#pragma once

#include "bkd/eta_series.hpp"
#include "bkd/interval.hpp"
#include "bkd/polynomial.hpp"
#include "bkd/report.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <utility>

namespace bkd {

/// alpha_k = (5k+2)/(2k+1), exact.
Rational alpha_k(unsigned k);

/// Per-(k, precision) constants, computed once and shared read-only.
struct AsymptoticConstants {
  unsigned k = 0;
  mpfr_prec_t prec = kDefaultPrecision;
  Rational alpha;
  Interval pi;
  Interval sqrt_alpha;
  /// gamma_1..gamma_6 at indices 0..5.
  std::array<Interval, 6> gamma;

  /// Throws std::invalid_argument for k = 0.
  static const AsymptoticConstants& get(unsigned k, mpfr_prec_t prec = kDefaultPrecision);
};

/// Precision rule for quantities built from I_2(z)e^{-z}: ceil(1.45 z) + 64.
mpfr_prec_t bessel_auto_precision(double z);
/// max(kDefaultPrecision, bessel_auto_precision(sqrt(alpha_k) x_k(n))).
mpfr_prec_t analytic_auto_precision(unsigned k, long n);

/// pi sqrt(24n - 2k - 2) / 6. Throws std::domain_error if the radicand is
/// not positive.
Interval x_k(unsigned k, long n, mpfr_prec_t prec = kDefaultPrecision);

/// I_nu(z) by the ascending series. The lower endpoint sums truncated terms at
/// z.lo; the upper one sums at z.hi and adds a geometric tail bound once the
/// term ratio is at most 1/2. Throws std::domain_error if z.lo < 0.
Interval bessel_I(unsigned nu, const Interval& z, mpfr_prec_t prec = kDefaultPrecision);

/// 1 - 15/(8z) + 105/(128z^2) + 315/(1024z^3) + 10395/(32768z^4) + 135135/(262144z^5).
Interval main_term_S2(const Interval& z);

/// Smallest z for the nu = 2 remainder bound: (15/2)^6 / 120.
Rational bessel_remainder_threshold();

struct BesselRemainderCheck {
  Interval z;
  mpfr_prec_t precision = 0;
  /// 73/z^6 - |I_2(z) e^{-z} sqrt(2 pi z) - S(z)|
  Interval margin;
  /// (I_2(z) e^{-z} sqrt(2 pi z) - S(z)) * z^6, signed.
  Interval scaled_error;
  Verdict verdict = Verdict::Inconclusive;
};

/// prec = 0 selects bessel_auto_precision(z.hi). Throws std::domain_error
/// below bessel_remainder_threshold().
BesselRemainderCheck check_bessel_remainder(const Interval& z, mpfr_prec_t prec = 0);

struct GeneralRemainderBound {
  Interval incomplete_gamma_term;
  Interval integral_term;
  Interval product_term;
  Interval total;
};

/// Right-hand side of the general-nu remainder estimate. Throws
/// std::domain_error unless nu >= 2 and z >= (nu + 11/2)^6 / 120.
GeneralRemainderBound general_remainder_bound(unsigned nu, const Interval& z,
                                              mpfr_prec_t prec = kDefaultPrecision);

/// phi_k(t) = 1 - g1/t + g2/t^2 + ... + g5/t^5 + g6/t^6 and Phi_k(t) with
/// -g6/t^6. Throws std::domain_error for t.lo <= 0.
std::pair<Interval, Interval> envelopes_phi(unsigned k, const Interval& t);

enum class EnvelopeOrientation {
  PhiLower,  // phi below, Phi above (the default)
  PhiUpper,    // Phi below, phi above
};

struct EnvelopeCheck {
  Interval scaled_bessel;  // I_2(sqrt(a) t) e^{-sqrt(a) t} sqrt(2 pi sqrt(a) t)
  Interval lower;
  Interval upper;
  Verdict verdict = Verdict::Inconclusive;  // OutsideHypothesis when t < 971
};

EnvelopeCheck envelope_check(unsigned k, const Interval& t, EnvelopeOrientation orientation,
                             mpfr_prec_t prec = 0);

/// alpha pi^3 / (18 x^2) I_2(sqrt(alpha) x), x = x_k(n).
Interval M_k(unsigned k, long n, mpfr_prec_t prec = kDefaultPrecision);

/// M(n-1) M(n+1) / M(n)^2 from M_k enclosures; n >= 2.
Interval lambda_exact(unsigned k, long n, mpfr_prec_t prec = kDefaultPrecision);

/// D(n-1) D(n+1) / D(n)^2, exact.
Rational theta_exact(const PartitionTable& table, long n);

struct LambdaThetaBounds {
  Interval x;
  Interval lambda_lo;
  Interval lambda_hi;
  Interval theta_lo;
  Interval theta_hi;
  bool lambda_in_hypothesis = false;  // k in {1,2}, n >= 2
  bool theta_in_hypothesis = false;   // k in {1,2}, x >= 315
};

LambdaThetaBounds lambda_theta_bounds(unsigned k, long n, mpfr_prec_t prec = kDefaultPrecision);

/// g_k(n), G_k(n) with x(n +- 1) = sqrt(x(n)^2 +- 2 pi^2 / 3).
std::pair<Interval, Interval> g_G(unsigned k, long n, mpfr_prec_t prec = kDefaultPrecision);

struct AnalyticCheck {
  long n = 0;
  Verdict verdict = Verdict::Inconclusive;
  mpfr_prec_t precision = 0;
  Interval lower;
  Interval value;
  Interval upper;
};

// The checks below take prec = 0 for analytic_auto_precision. Outside the
// stated hypotheses the quantities are still evaluated but the verdict is
// OutsideHypothesis.

/// M(1 - x^-6) <= D(n) <= M(1 + x^-6); hypothesis n >= 3512.
AnalyticCheck delta_bounds_check(const PartitionTable& table, long n, mpfr_prec_t prec = 0);

/// lambda_lo < Lambda(n) < lambda_hi; hypothesis n >= 2.
AnalyticCheck lambda_bounds_check(unsigned k, long n, mpfr_prec_t prec = 0);

/// theta_lo < Theta(n) < theta_hi; hypothesis x_k(n) >= 315.
AnalyticCheck theta_bounds_check(const PartitionTable& table, long n, mpfr_prec_t prec = 0);

/// Lambda g <= Theta <= Lambda G; hypothesis n >= 3512.
AnalyticCheck sandwich_check(const PartitionTable& table, long n, mpfr_prec_t prec = 0);

/// Folds per-n analytic outcomes into a report: Fail entries become
/// failures, Inconclusive ones inconclusive; OutsideHypothesis is listed in
/// extras.
VerificationReport analytic_report(const std::string& check, int k, std::span<const AnalyticCheck> rows);

/// n, theta_exact, theta_lo, theta_hi, lambda_lo, lambda_hi, g, G, verdict.
/// Intervals are written as [lo;hi]; a comment line records the precision.
void write_asymptotics_csv(std::ostream& out, const PartitionTable& table, std::span<const long> ns,
                           mpfr_prec_t prec = kDefaultPrecision);

}  // namespace bkd

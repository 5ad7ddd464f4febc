#include "bkd/asymptotics.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bkd {

namespace {

struct Scratch {
  explicit Scratch(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  mpfr_t v;
};

Interval Q(const Rational& q, mpfr_prec_t prec) { return Interval::from_mpq(q, prec); }
Interval L(long v, mpfr_prec_t prec) { return Interval::from_long(v, prec); }

bool analytic_k(unsigned k) { return k == 1 || k == 2; }

void require_positive(const Interval& t, const char* what) {
  if (!t.certainly_positive()) throw std::domain_error(std::string(what) + ": argument must be positive");
}

// Outcome of lower <= value <= upper (strict: lower < value < upper).
Verdict bracket_verdict(const Interval& lower, const Interval& value, const Interval& upper, bool strict) {
  const bool ok = strict ? (certainly_less(lower, value) && certainly_less(value, upper))
                         : (certainly_less_equal(lower, value) && certainly_less_equal(value, upper));
  if (ok) return Verdict::Pass;
  const bool bad = strict ? (certainly_less_equal(value, lower) || certainly_less_equal(upper, value))
                          : (certainly_less(value, lower) || certainly_less(upper, value));
  return bad ? Verdict::Fail : Verdict::Inconclusive;
}

mpfr_prec_t resolve_precision(mpfr_prec_t prec, unsigned k, long n) {
  return prec > 0 ? prec : analytic_auto_precision(k, n);
}

unsigned table_k(const PartitionTable& table) {
  if (table.k() < 1) throw std::invalid_argument("analytic checks need a broken-diamond table with k >= 1");
  return static_cast<unsigned>(table.k());
}

}  // namespace

Rational alpha_k(unsigned k) {
  Rational a(5 * static_cast<long>(k) + 2, 2 * static_cast<long>(k) + 1);
  a.canonicalize();
  return a;
}

const AsymptoticConstants& AsymptoticConstants::get(unsigned k, mpfr_prec_t prec) {
  if (k == 0) throw std::invalid_argument("AsymptoticConstants: k must be >= 1");
  static std::mutex mu;
  static std::map<std::pair<unsigned, mpfr_prec_t>, std::unique_ptr<AsymptoticConstants>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{k, prec}];
  if (!slot) {
    auto c = std::make_unique<AsymptoticConstants>();
    c->k = k;
    c->prec = prec;
    c->alpha = alpha_k(k);
    c->pi = Interval::pi(prec);
    const Interval a = Q(c->alpha, prec);
    c->sqrt_alpha = sqrt(a);
    const Interval& s = c->sqrt_alpha;
    c->gamma[0] = Q(Rational(15, 8), prec) / s;
    c->gamma[1] = Q(Rational(105, 128), prec) / a;
    c->gamma[2] = Q(Rational(315, 1024), prec) / (a * s);
    c->gamma[3] = Q(Rational(10395, 32768), prec) / square(a);
    c->gamma[4] = Q(Rational(135135, 262144), prec) / (square(a) * s);
    c->gamma[5] = L(73, prec) / pow(a, 3);
    slot = std::move(c);
  }
  return *slot;
}

mpfr_prec_t bessel_auto_precision(double z) {
  return static_cast<mpfr_prec_t>(std::ceil(1.45 * std::max(z, 0.0))) + 64;
}

mpfr_prec_t analytic_auto_precision(unsigned k, long n) {
  const double rad = 24.0 * static_cast<double>(n) - 2.0 * k - 2.0;
  if (rad <= 0 || k == 0) return kDefaultPrecision;
  const double x = M_PI * std::sqrt(rad) / 6.0;
  const double z = std::sqrt(alpha_k(k).get_d()) * x;
  return std::max(kDefaultPrecision, bessel_auto_precision(z));
}

Interval x_k(unsigned k, long n, mpfr_prec_t prec) {
  const long rad = 24 * n - 2 * static_cast<long>(k) - 2;
  if (rad <= 0) throw std::domain_error("x_k: 24n - 2k - 2 must be positive");
  return Interval::pi(prec) * sqrt(L(rad, prec)) / L(6, prec);
}

Interval bessel_I(unsigned nu, const Interval& z, mpfr_prec_t prec) {
  if (mpfr_sgn(z.lo()) < 0) throw std::domain_error("bessel_I: z must be nonnegative");
  Scratch q_lo(prec), q_hi(prec), t_lo(prec), t_hi(prec), s_lo(prec), s_hi(prec), f(prec), cut(prec), tmp(prec);

  // q = (z/2)^2 and t_0 = (z/2)^nu / nu!
  mpfr_div_2ui(q_lo.v, z.lo(), 1, MPFR_RNDD);
  mpfr_div_2ui(q_hi.v, z.hi(), 1, MPFR_RNDU);
  mpfr_pow_ui(t_lo.v, q_lo.v, nu, MPFR_RNDD);
  mpfr_pow_ui(t_hi.v, q_hi.v, nu, MPFR_RNDU);
  mpfr_sqr(q_lo.v, q_lo.v, MPFR_RNDD);
  mpfr_sqr(q_hi.v, q_hi.v, MPFR_RNDU);
  mpfr_fac_ui(f.v, nu, MPFR_RNDU);
  mpfr_div(t_lo.v, t_lo.v, f.v, MPFR_RNDD);
  mpfr_fac_ui(f.v, nu, MPFR_RNDD);
  mpfr_div(t_hi.v, t_hi.v, f.v, MPFR_RNDU);

  mpfr_set_zero(s_lo.v, 1);
  mpfr_set_zero(s_hi.v, 1);
  for (unsigned long m = 0;; ++m) {
    mpfr_add(s_lo.v, s_lo.v, t_lo.v, MPFR_RNDD);
    mpfr_add(s_hi.v, s_hi.v, t_hi.v, MPFR_RNDU);
    const unsigned long step = (m + 1) * (m + nu + 1);
    mpfr_mul(t_lo.v, t_lo.v, q_lo.v, MPFR_RNDD);
    mpfr_div_ui(t_lo.v, t_lo.v, step, MPFR_RNDD);
    mpfr_mul(t_hi.v, t_hi.v, q_hi.v, MPFR_RNDU);
    mpfr_div_ui(t_hi.v, t_hi.v, step, MPFR_RNDU);

    // Every ratio after t_{m+1} is at most 1/2 once 2q <= (m+2)(m+nu+2).
    mpfr_mul_2ui(tmp.v, q_hi.v, 1, MPFR_RNDU);
    const bool ratio_ok = mpfr_cmp_ui(tmp.v, (m + 2) * (m + nu + 2)) <= 0;
    mpfr_div_2ui(cut.v, s_hi.v, static_cast<unsigned long>(prec), MPFR_RNDD);
    if (ratio_ok && mpfr_cmp(t_hi.v, cut.v) <= 0) {
      mpfr_add(s_lo.v, s_lo.v, t_lo.v, MPFR_RNDD);
      mpfr_mul_2ui(tmp.v, t_hi.v, 1, MPFR_RNDU);
      mpfr_add(s_hi.v, s_hi.v, tmp.v, MPFR_RNDU);
      break;
    }
  }
  return Interval::from_endpoints(s_lo.v, s_hi.v, prec);
}

Interval main_term_S2(const Interval& z) {
  require_positive(z, "main_term_S2");
  const mpfr_prec_t p = z.precision();
  static const Rational c[6] = {Rational(1),           Rational(-15, 8),       Rational(105, 128),
                                Rational(315, 1024),   Rational(10395, 32768), Rational(135135, 262144)};
  const Interval inv = L(1, p) / z;
  Interval s = L(1, p);
  for (unsigned i = 1; i < 6; ++i) s = s + Q(c[i], p) * pow(inv, i);
  return s;
}

Rational bessel_remainder_threshold() { return Rational(11390625, 7680); }

BesselRemainderCheck check_bessel_remainder(const Interval& z_in, mpfr_prec_t prec) {
  if (mpfr_cmp_q(z_in.lo(), bessel_remainder_threshold().get_mpq_t()) < 0)
    throw std::domain_error("check_bessel_remainder: z below (15/2)^6/120");
  if (prec == 0) prec = bessel_auto_precision(z_in.hi_double());
  BesselRemainderCheck out;
  out.precision = prec;
  out.z = with_precision(z_in, prec);
  const Interval& z = out.z;
  const Interval scaled = bessel_I(2, z, prec) * exp(-z) * sqrt(L(2, prec) * Interval::pi(prec) * z);
  const Interval err = scaled - main_term_S2(z);
  const Interval z6 = pow(z, 6);
  out.scaled_error = err * z6;
  out.margin = L(73, prec) / z6 - abs(err);
  if (out.margin.certainly_positive()) out.verdict = Verdict::Pass;
  else if (out.margin.certainly_negative()) out.verdict = Verdict::Fail;
  else out.verdict = Verdict::Inconclusive;
  return out;
}

GeneralRemainderBound general_remainder_bound(unsigned nu, const Interval& z_in, mpfr_prec_t prec) {
  if (nu < 2) throw std::domain_error("general_remainder_bound: nu must be >= 2");
  Rational h(2 * static_cast<long>(nu) + 11, 2);
  Rational need = h * h * h * h * h * h / 120;
  if (mpfr_cmp_q(z_in.lo(), need.get_mpq_t()) < 0)
    throw std::domain_error("general_remainder_bound: z below (nu + 11/2)^6 / 120");
  const Interval z = with_precision(z_in, prec);
  const Interval pi = Interval::pi(prec);
  const Interval sqrt2 = sqrt(L(2, prec));
  const Interval sqrt_z = sqrt(z);
  const Interval z_nu = pow(z, nu);
  const Interval e = exp(-z);

  // Gamma(nu + 1/2) = (2nu)! / (4^nu nu!) sqrt(pi)
  mpz_class f2, f1, four;
  mpz_fac_ui(f2.get_mpz_t(), 2 * nu);
  mpz_fac_ui(f1.get_mpz_t(), nu);
  mpz_ui_pow_ui(four.get_mpz_t(), 4, nu);
  Rational gamma_ratio(f2, four * f1);
  gamma_ratio.canonicalize();
  const Interval gamma = Q(gamma_ratio, prec) * sqrt(pi);

  // 2^{nu - 1/2}
  mpz_class two_nu;
  mpz_ui_pow_ui(two_nu.get_mpz_t(), 2, nu);
  const Interval two_pow = Interval::from_mpz(two_nu, prec) / sqrt2;

  // sum_{i<=5} |C(nu - 1/2, i)| / 2^i
  const Rational a(2 * static_cast<long>(nu) - 1, 2);
  Rational binom = 1, weighted = 0;
  for (unsigned i = 0; i <= 5; ++i) {
    if (i > 0) binom = binom * (a - (i - 1)) / i;
    Rational term = abs(binom);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, i);
    weighted += term / den;
  }

  GeneralRemainderBound out;
  out.incomplete_gamma_term = Q(Rational(52, 17), prec) * e / gamma * Q(weighted, prec) * z_nu / sqrt_z;
  out.integral_term = e * z_nu * sqrt_z / (two_pow * gamma);

  Rational prod = 1;
  const Rational nu2(static_cast<long>(nu) * static_cast<long>(nu));
  for (long j = 1; j <= 11; j += 2) prod *= nu2 - Rational(j * j, 4);
  Interval third = Q(abs(prod) / 720, prec) / (two_pow * pow(z, 6));
  if (nu >= 7) {
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 2, nu - 6);
    third = third * Interval::from_mpz(big, prec) / sqrt2;
  }
  out.product_term = third;
  out.total = out.incomplete_gamma_term + out.integral_term + out.product_term;
  return out;
}

std::pair<Interval, Interval> envelopes_phi(unsigned k, const Interval& t) {
  require_positive(t, "envelopes_phi");
  const mpfr_prec_t p = t.precision();
  const auto& c = AsymptoticConstants::get(k, p);
  const Interval inv = L(1, p) / t;
  Interval base = L(1, p) - c.gamma[0] * inv;
  for (unsigned i = 2; i <= 5; ++i) base = base + c.gamma[i - 1] * pow(inv, i);
  const Interval last = c.gamma[5] * pow(inv, 6);
  return {base + last, base - last};
}

EnvelopeCheck envelope_check(unsigned k, const Interval& t_in, EnvelopeOrientation orientation,
                             mpfr_prec_t prec) {
  require_positive(t_in, "envelope_check");
  if (prec == 0) prec = std::max(kDefaultPrecision, bessel_auto_precision(std::sqrt(alpha_k(k).get_d()) * t_in.hi_double()));
  const Interval t = with_precision(t_in, prec);
  const auto& c = AsymptoticConstants::get(k, prec);
  const Interval z = c.sqrt_alpha * t;
  EnvelopeCheck out;
  out.scaled_bessel = bessel_I(2, z, prec) * exp(-z) * sqrt(L(2, prec) * c.pi * z);
  auto [phi, Phi] = envelopes_phi(k, t);
  if (orientation == EnvelopeOrientation::PhiLower) {
    out.lower = phi;
    out.upper = Phi;
  } else {
    out.lower = Phi;
    out.upper = phi;
  }
  if (mpfr_cmp_ui(t.lo(), 971) < 0) out.verdict = Verdict::OutsideHypothesis;
  else out.verdict = bracket_verdict(out.lower, out.scaled_bessel, out.upper, false);
  return out;
}

Interval M_k(unsigned k, long n, mpfr_prec_t prec) {
  if (n < 1) throw std::domain_error("M_k: n must be >= 1");
  const auto& c = AsymptoticConstants::get(k, prec);
  const Interval x = x_k(k, n, prec);
  return Q(c.alpha, prec) * pow(c.pi, 3) / (L(18, prec) * square(x)) * bessel_I(2, c.sqrt_alpha * x, prec);
}

Interval lambda_exact(unsigned k, long n, mpfr_prec_t prec) {
  if (n < 2) throw std::domain_error("lambda_exact: n must be >= 2");
  return M_k(k, n - 1, prec) * M_k(k, n + 1, prec) / square(M_k(k, n, prec));
}

Rational theta_exact(const PartitionTable& table, long n) {
  if (n < 1 || n + 1 > table.N()) throw std::out_of_range("theta_exact: index out of table range");
  Rational r(table[n - 1] * table[n + 1], table[n] * table[n]);
  r.canonicalize();
  return r;
}

LambdaThetaBounds lambda_theta_bounds(unsigned k, long n, mpfr_prec_t prec) {
  const auto& c = AsymptoticConstants::get(k, prec);
  LambdaThetaBounds b;
  b.x = x_k(k, n, prec);
  const Interval& x = b.x;
  const Interval a = Q(c.alpha, prec);
  const Interval& sa = c.sqrt_alpha;
  const Interval a3 = pow(a, 3);
  const Interval p4 = pow(c.pi, 4);
  const Interval p8 = pow(c.pi, 8);
  auto xp = [&](unsigned e) { return pow(x, e); };
  auto r = [&](long num, long den) { return Q(Rational(num, den), prec); };

  b.lambda_hi = (L(1, prec) + r(5, 9) * p4 / xp(4) + p8 / (L(3, prec) * xp(8))) *
                (L(1, prec) - sa * p4 / (L(9, prec) * xp(3)) + a * p8 / (L(81, prec) * xp(6))) *
                (L(1, prec) - r(5, 8) * p4 / (sa * xp(5)) + L(292, prec) / (a3 * xp(6)));
  b.lambda_lo = (L(1, prec) + r(5, 9) * p4 / xp(4) + r(5, 18) * p8 / xp(8)) *
                (L(1, prec) - sa * p4 / (L(9, prec) * xp(3)) - r(5, 162) * sa * p8 / xp(7)) *
                (L(1, prec) - r(5, 8) * p4 / (sa * xp(5)) - r(5, 6) * p4 / (a * xp(6)) -
                 L(300, prec) / (a3 * xp(6)));

  const Interval base = L(1, prec) - p4 * sa / (L(9, prec) * xp(3)) + r(5, 9) * p4 / xp(4) -
                        r(5, 8) * p4 / (xp(5) * sa);
  const Interval c_lo = -(L(300, prec) / a3) - L(10, prec) - r(5, 6) * p4 / a;
  const Interval c_hi = p8 * a / L(81, prec) + L(292, prec) / a3 + L(5, prec);
  b.theta_lo = base + c_lo / xp(6);
  b.theta_hi = base + c_hi / xp(6);

  b.lambda_in_hypothesis = analytic_k(k) && n >= 2;
  b.theta_in_hypothesis = analytic_k(k) && mpfr_cmp_ui(x.lo(), 315) >= 0;
  return b;
}

std::pair<Interval, Interval> g_G(unsigned k, long n, mpfr_prec_t prec) {
  const Interval x = x_k(k, n, prec);
  const Interval x2 = square(x);
  const Interval shift = L(2, prec) * square(Interval::pi(prec)) / L(3, prec);
  const Interval below = x2 - shift;
  if (!below.certainly_positive()) throw std::domain_error("g_G: x_k(n)^2 - 2 pi^2/3 must be positive");
  const Interval one = L(1, prec);
  const Interval e0 = one / pow(x2, 3);
  const Interval em = one / pow(below, 3);
  const Interval ep = one / pow(x2 + shift, 3);
  const Interval g = (one - em) * (one - ep) / square(one + e0);
  const Interval G = (one + em) * (one + ep) / square(one - e0);
  return {g, G};
}

AnalyticCheck delta_bounds_check(const PartitionTable& table, long n, mpfr_prec_t prec) {
  const unsigned k = table_k(table);
  (void)table.at(n);
  AnalyticCheck out;
  out.n = n;
  out.precision = resolve_precision(prec, k, n);
  const Interval M = M_k(k, n, out.precision);
  const Interval inv6 = L(1, out.precision) / pow(x_k(k, n, out.precision), 6);
  out.lower = M * (L(1, out.precision) - inv6);
  out.upper = M * (L(1, out.precision) + inv6);
  out.value = Interval::from_mpz(table[n], out.precision);
  out.verdict = (analytic_k(k) && n >= 3512) ? bracket_verdict(out.lower, out.value, out.upper, false)
                                             : Verdict::OutsideHypothesis;
  return out;
}

AnalyticCheck lambda_bounds_check(unsigned k, long n, mpfr_prec_t prec) {
  AnalyticCheck out;
  out.n = n;
  out.precision = resolve_precision(prec, k, n);
  const auto b = lambda_theta_bounds(k, n, out.precision);
  out.lower = b.lambda_lo;
  out.upper = b.lambda_hi;
  out.value = lambda_exact(k, n, out.precision);
  out.verdict = b.lambda_in_hypothesis ? bracket_verdict(out.lower, out.value, out.upper, true)
                                       : Verdict::OutsideHypothesis;
  return out;
}

AnalyticCheck theta_bounds_check(const PartitionTable& table, long n, mpfr_prec_t prec) {
  const unsigned k = table_k(table);
  AnalyticCheck out;
  out.n = n;
  out.precision = prec > 0 ? prec : kDefaultPrecision;
  const auto b = lambda_theta_bounds(k, n, out.precision);
  out.lower = b.theta_lo;
  out.upper = b.theta_hi;
  out.value = Interval::from_mpq(theta_exact(table, n), out.precision);
  out.verdict = b.theta_in_hypothesis ? bracket_verdict(out.lower, out.value, out.upper, true)
                                      : Verdict::OutsideHypothesis;
  return out;
}

AnalyticCheck sandwich_check(const PartitionTable& table, long n, mpfr_prec_t prec) {
  const unsigned k = table_k(table);
  AnalyticCheck out;
  out.n = n;
  out.precision = resolve_precision(prec, k, n);
  out.value = Interval::from_mpq(theta_exact(table, n), out.precision);
  const Interval lambda = lambda_exact(k, n, out.precision);
  const auto [g, G] = g_G(k, n, out.precision);
  out.lower = lambda * g;
  out.upper = lambda * G;
  out.verdict = (analytic_k(k) && n >= 3512) ? bracket_verdict(out.lower, out.value, out.upper, false)
                                             : Verdict::OutsideHypothesis;
  return out;
}

VerificationReport analytic_report(const std::string& check, int k, std::span<const AnalyticCheck> rows) {
  VerificationReport rep;
  rep.check = check;
  rep.k = k;
  if (!rows.empty()) {
    rep.from = rows.front().n;
    rep.to = rows.back().n;
  }
  std::vector<long> samples, outside;
  for (const auto& r : rows) {
    samples.push_back(r.n);
    switch (r.verdict) {
      case Verdict::Fail: rep.failures.push_back(r.n); break;
      case Verdict::Inconclusive: rep.inconclusive.push_back(r.n); break;
      case Verdict::OutsideHypothesis: outside.push_back(r.n); break;
      case Verdict::Pass: break;
    }
  }
  rep.extras["samples"] = samples;
  rep.extras["outside_hypothesis"] = outside;
  return rep;
}

namespace {

std::string cell(const Interval& v) { return "[" + v.lo_string(25) + ";" + v.hi_string(25) + "]"; }

}  // namespace

void write_asymptotics_csv(std::ostream& out, const PartitionTable& table, std::span<const long> ns,
                           mpfr_prec_t prec) {
  const unsigned k = table_k(table);
  out << "# precision_bits=" << prec << '\n';
  out << "n,theta_exact,theta_lo,theta_hi,lambda_lo,lambda_hi,g,G,verdict\n";
  for (long n : ns) {
    const auto check = theta_bounds_check(table, n, prec);
    const auto b = lambda_theta_bounds(k, n, prec);
    const auto [g, G] = g_G(k, n, prec);
    out << n << ',' << theta_exact(table, n).get_str() << ',' << cell(b.theta_lo) << ',' << cell(b.theta_hi)
        << ',' << cell(b.lambda_lo) << ',' << cell(b.lambda_hi) << ',' << cell(g) << ',' << cell(G) << ','
        << to_string(check.verdict) << '\n';
  }
}

}  // namespace bkd

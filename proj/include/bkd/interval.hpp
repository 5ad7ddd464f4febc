#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace bkd {

inline constexpr mpfr_prec_t kDefaultPrecision = 384;

/// Closed interval [lo, hi] of MPFR floats with outward rounding: every
/// operation rounds lo toward -inf and hi toward +inf, so an enclosure of the
/// exact operands yields an enclosure of the exact result.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = kDefaultPrecision);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval from_long(long v, mpfr_prec_t prec = kDefaultPrecision);
  /// The double is taken as an exact binary value.
  static Interval from_double(double v, mpfr_prec_t prec = kDefaultPrecision);
  static Interval from_mpz(const mpz_class& v, mpfr_prec_t prec = kDefaultPrecision);
  static Interval from_mpq(const mpq_class& v, mpfr_prec_t prec = kDefaultPrecision);
  /// [lo, hi] from two rationals, lo <= hi.
  static Interval from_bounds(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec = kDefaultPrecision);
  /// Rounds the two MPFR values outward into an interval; lo <= hi required.
  static Interval from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec = kDefaultPrecision);
  /// Enclosure of pi; computed once per precision and cached.
  static Interval pi(mpfr_prec_t prec = kDefaultPrecision);

  mpfr_prec_t precision() const { return prec_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_double() const;
  mpq_class lo_q() const;
  mpq_class hi_q() const;
  /// hi - lo, rounded up.
  double width() const;

  bool contains(const mpq_class& x) const;
  bool contains(const Interval& other) const;
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws std::domain_error if b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;

  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  /// Decimal rendering "[lo, hi]" with the given significant digits.
  std::string to_string(int digits = 20) const;
  /// Decimal endpoint, rounded outward.
  std::string lo_string(int digits = 30) const;
  std::string hi_string(int digits = 30) const;

 private:
  void set_raw(mpfr_srcptr lo, mpfr_srcptr hi);
  void check_order();

  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;

  friend Interval sqrt(const Interval& x);
  friend Interval exp(const Interval& x);
  friend Interval log(const Interval& x);
  friend Interval abs(const Interval& x);
  friend Interval pow(const Interval& x, unsigned e);
  friend Interval hull(const Interval& a, const Interval& b);
  friend Interval with_precision(const Interval& x, mpfr_prec_t prec);
  friend Interval widen(const Interval& x, const mpq_class& radius);
};

/// Throws std::domain_error on a negative lower endpoint.
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
/// Throws std::domain_error unless x is certainly positive.
Interval log(const Interval& x);
Interval abs(const Interval& x);
Interval pow(const Interval& x, unsigned e);
Interval square(const Interval& x);
Interval hull(const Interval& a, const Interval& b);
/// Re-rounds the endpoints outward to a different precision.
Interval with_precision(const Interval& x, mpfr_prec_t prec);
/// [lo - radius, hi + radius] for radius >= 0.
Interval widen(const Interval& x, const mpq_class& radius);

/// a.hi < b.lo
bool certainly_less(const Interval& a, const Interval& b);
/// a.hi <= b.lo
bool certainly_less_equal(const Interval& a, const Interval& b);

}  // namespace bkd

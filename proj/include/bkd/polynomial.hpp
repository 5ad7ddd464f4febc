#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bkd {

using Rational = mpq_class;

/// Dense univariate polynomial over Q, coefficients in ascending degree.
/// The zero polynomial has no coefficients; otherwise the top one is nonzero.
class PolyQ {
 public:
  PolyQ() = default;
  explicit PolyQ(std::vector<Rational> coeffs);
  static PolyQ monomial(Rational c, unsigned degree);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const;
  Rational coeff(unsigned i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const { return sgn((*this)(x)); }

  PolyQ derivative() const;

  /// Same roots, integer coefficients with gcd 1; scaled by a positive
  /// constant so signs are preserved everywhere.
  PolyQ primitive() const;

  friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const Rational& s, const PolyQ& p);
  PolyQ operator-() const;
  friend bool operator==(const PolyQ&, const PolyQ&) = default;

  /// Euclidean division; throws std::domain_error when dividing by zero.
  static void divmod(const PolyQ& a, const PolyQ& b, PolyQ& quot, PolyQ& rem);
  static PolyQ gcd(const PolyQ& a, const PolyQ& b);

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// A point of the extended real line.
class ExtendedRational {
 public:
  ExtendedRational(const Rational& v) : kind_(Kind::Finite), value_(v) {}  // NOLINT
  ExtendedRational(long v) : kind_(Kind::Finite), value_(v) {}             // NOLINT
  static ExtendedRational neg_inf() { return ExtendedRational(Kind::NegInf); }
  static ExtendedRational pos_inf() { return ExtendedRational(Kind::PosInf); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  const Rational& value() const;
  std::string to_string() const;

 private:
  enum class Kind { NegInf, Finite, PosInf };
  explicit ExtendedRational(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_;
};

/// Sturm chain p, p', -rem(...), ... with primitive-part reduction after each
/// remainder step.
class SturmSequence {
 public:
  explicit SturmSequence(const PolyQ& p);

  /// Sign variations at x, zeros skipped.
  int variations(const ExtendedRational& x) const;

  /// Distinct real roots in (a, b]; a < b required.
  int count(const ExtendedRational& a, const ExtendedRational& b) const;

  const std::vector<PolyQ>& chain() const { return chain_; }

 private:
  std::vector<PolyQ> chain_;
};

/// Distinct real roots of p in (a, b].
int sturm_count(const PolyQ& p, const ExtendedRational& a, const ExtendedRational& b);

/// Real roots counted with multiplicity (via squarefree decomposition).
int real_root_count_with_multiplicity(const PolyQ& p);

/// Raised when an interval substitution for pi cannot settle a sign or count.
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rational bracket pi_lo < pi < pi_hi.
struct PiBracket {
  Rational lo;
  Rational hi;
  /// Bracket from a correctly rounded pi at the given binary precision.
  static PiBracket from_precision(long bits);
};

/// Polynomial whose coefficients are sums of rational multiples of pi powers:
/// sum over terms c * pi^e * t^d.
class PiPoly {
 public:
  struct Term {
    Rational coeff;
    unsigned pi_power = 0;
    unsigned degree = 0;
  };

  PiPoly() = default;
  explicit PiPoly(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  int degree() const;

  /// Exact rational polynomial with pi replaced by `pi`.
  PolyQ substitute(const Rational& pi) const;

  friend PiPoly operator-(const PiPoly& a, const PiPoly& b);

  /// [{"pi_power":e,"numerator":"..","denominator":"..","degree":d}, ...]
  std::string to_json() const;
  static PiPoly from_json(const std::string& text);

 private:
  std::vector<Term> terms_;
};

/// Sturm count with pi replaced by both bracket endpoints; throws
/// InconclusiveError if the two counts disagree.
int sturm_count(const PiPoly& p, const ExtendedRational& a, const ExtendedRational& b,
                const PiBracket& pi);

}  // namespace bkd

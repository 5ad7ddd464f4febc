#pragma once

#include "bkd/interval.hpp"
#include "bkd/polynomial.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bkd {

/// The two degree-24 polynomials bounding g_k and G_k.
PiPoly phi_polynomial();
PiPoly psi_polynomial();

/// Enclosure of p(x) with pi replaced by a rigorous pi enclosure.
Interval evaluate(const PiPoly& p, const Rational& x, mpfr_prec_t prec = kDefaultPrecision);

/// Bracket lo <= c <= hi of a real coefficient.
struct CoefficientBracket {
  Rational lo;
  Rational hi;
  static CoefficientBracket from_interval(const Interval& v);
  static CoefficientBracket exact(const Rational& v) { return {v, v}; }
};

enum class CertificateMethod { Sturm, Domination };

/// Sturm data for one rational substitution of pi.
struct SturmWitness {
  Rational pi_value;  // 0 when the polynomial has no pi terms
  int variations_at_x0 = 0;
  int variations_at_inf = 0;
  Rational value_at_x0;
};

/// A term below the pivot, known only through a bound on its coefficient.
struct DominatedTerm {
  unsigned j = 0;
  Rational bound;  // |c_j| <= bound
};

/// Evidence that a polynomial is positive on [x0, inf). Re-checkable from the
/// stored data alone.
struct PositivityCertificate {
  CertificateMethod method = CertificateMethod::Sturm;
  Rational x0;
  /// STURM: the certified polynomial. DOMINATION: the reduced polynomial h.
  PiPoly polynomial;
  std::optional<PiBracket> pi;
  std::vector<SturmWitness> sturm;

  // DOMINATION only.
  unsigned pivot = 0;
  unsigned count = 0;
  Rational pivot_abs_lo;  // lower bound for |c_pivot|
  std::vector<DominatedTerm> dominated;
  std::vector<CoefficientBracket> top;

  /// {method, x0, witness:{...}}
  std::string to_json() const;
  static PositivityCertificate from_json(const std::string& text);

  /// Recomputes every stored count and sign; true iff all match and still
  /// imply positivity.
  bool reverify() const;
};

enum class PositivityStatus {
  Certified,     // p > 0 on [x0, inf)
  Refuted,       // p(witness) < 0 for some witness >= x0
  ZeroOnRay,     // p >= 0 on [x0, inf) but vanishes somewhere there
  Inconclusive,  // pi substitutions disagree
};

const char* to_string(PositivityStatus s);

struct PositivityResult {
  PositivityStatus status = PositivityStatus::Inconclusive;
  std::optional<PositivityCertificate> certificate;
  std::optional<Rational> witness;
  std::string detail;
};

PositivityResult certify_positive_on_ray(const PolyQ& p, const Rational& x0);

/// Runs the ray analysis with pi replaced by each bracket endpoint; both must
/// agree, and sign claims at specific points are confirmed with an interval
/// pi enclosure.
PositivityResult certify_positive_on_ray(const PiPoly& p, const Rational& x0, const PiBracket& pi);

/// Tail-domination setup: terms below the pivot are bounded by
/// |c_pivot| x^pivot each, `count` of them in all, and the reduced
/// polynomial
///   h(x) = -count |c_pivot| + sum_{i>=1} c_{pivot+i} x^i
/// must be positive. A negative pivot coefficient costs one more |c_pivot|.
struct DominationProblem {
  std::vector<DominatedTerm> lower;          // explicit bounds, j < pivot
  unsigned pivot = 0;
  unsigned count = 0;                        // number of dominated terms
  std::vector<CoefficientBracket> top;       // c_pivot, c_pivot+1, ...
};

struct DominationResult {
  long threshold = 1;    // least integer x* that works
  Rational refined;      // least multiple of 1/1024 in (x*-1, x*] that works
  PolyQ reduced;         // h with lower-endpoint coefficients
  PositivityCertificate certificate;
  /// Dominated indices with no explicit bound (count - lower.size()).
  unsigned unchecked_terms = 0;
};

/// Throws std::domain_error when the reduced polynomial is not eventually
/// positive, std::invalid_argument on malformed input.
DominationResult domination_threshold(const DominationProblem& problem);

/// Leading coefficient data of the J and K polynomials behind the Theta bounds.
DominationProblem j_polynomial_data(unsigned k, mpfr_prec_t prec = 256);
DominationProblem k_polynomial_data(unsigned k, mpfr_prec_t prec = 256);

struct LemmaUV {
  bool hypothesis = false;  // u + (1-u)^{3/2} > v
  bool conclusion = false;  // 4(1-u)(1-v) - (1-uv)^2 > 0
  Rational conclusion_value;
  bool holds() const { return !hypothesis || conclusion; }
};

/// Exact evaluation for 15/16 <= u < v < 1; throws std::invalid_argument
/// outside that domain.
LemmaUV lemma_uv_check(const Rational& u, const Rational& v);

struct RootOrdering {
  int roots_in_0_u = 0;  // on (0, u]
  int roots_in_u_1 = 0;  // on (u, 1]
  bool endpoints_nonzero = false;
  /// 0 < t1 < u < t2 < 1
  bool ordered() const { return endpoints_nonzero && roots_in_0_u == 1 && roots_in_u_1 == 1; }
};

/// f(t) = -u^2 t^2 + (6u-4) t - 4u + 3.
PolyQ lemma_quadratic(const Rational& u);
RootOrdering root_ordering_check(const Rational& u);

/// True iff tau(s) > 0 at every sample; throws std::invalid_argument for s
/// outside (0, 1/4].
bool tau_positivity_check(const std::vector<Rational>& samples);

}  // namespace bkd

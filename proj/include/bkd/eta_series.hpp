#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <vector>

namespace bkd {

using BigInt = mpz_class;

/// One factor prod_{n>=1} (1 - q^{modulus*n})^{exponent} of an eta quotient.
struct EtaFactor {
  long modulus = 1;
  long exponent = 0;

  friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

/// A finite product of eta-type factors. Moduli are distinct and kept sorted.
class EtaQuotientSpec {
 public:
  /// Throws std::invalid_argument on an empty list, a nonpositive modulus,
  /// a zero exponent or a repeated modulus.
  explicit EtaQuotientSpec(std::vector<EtaFactor> factors);

  /// (1-q^2n)(1-q^{(2k+1)n}) / ((1-q^n)^3 (1-q^{(4k+2)n})), the broken
  /// k-diamond generating function.
  static EtaQuotientSpec broken_diamond(unsigned k);

  /// 1/prod(1-q^n), the ordinary partition generating function.
  static EtaQuotientSpec partitions();

  std::span<const EtaFactor> factors() const { return factors_; }

  friend bool operator==(const EtaQuotientSpec&, const EtaQuotientSpec&) = default;

 private:
  std::vector<EtaFactor> factors_;
};

/// First N+1 coefficients of the eta quotient, by sparse binomial passes:
/// a multiplication by (1-q^t) is one backward-difference sweep, a division
/// is one forward cumulative-sum sweep. Division factors are applied last.
std::vector<BigInt> expand_eta_quotient(const EtaQuotientSpec& spec, long N);

/// Same coefficients from the logarithmic-derivative recurrence
///   n f_n = sum_{j=1..n} w_j f_{n-j},  w_j = -sum_m e_m * sigma_m(j),
/// where sigma_m(j) sums the divisors of j that are multiples of m.
/// Shares no code with expand_eta_quotient. Throws std::logic_error if a
/// division by n is inexact.
std::vector<BigInt> eta_quotient_logderiv(const EtaQuotientSpec& spec, long N);

/// Exact values Delta_k(0..N). Immutable once built.
class PartitionTable {
 public:
  /// Wraps arbitrary positive values (used for synthetic sequences). k < 0
  /// marks a table that is not a broken-diamond table.
  static PartitionTable from_values(std::vector<BigInt> values, int k = -1);

  int k() const { return k_; }
  /// Truncation order: the largest stored index.
  long N() const { return static_cast<long>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }

  /// Throws std::out_of_range outside [0, N].
  const BigInt& at(long n) const;
  const BigInt& operator[](long n) const { return coeffs_[static_cast<std::size_t>(n)]; }

  std::span<const BigInt> coeffs() const { return coeffs_; }

 private:
  PartitionTable(int k, std::vector<BigInt> coeffs) : k_(k), coeffs_(std::move(coeffs)) {}
  friend PartitionTable delta_table(unsigned k, long N);

  int k_ = -1;
  std::vector<BigInt> coeffs_;
};

/// Delta_k(0..N) via expand_eta_quotient. Throws std::logic_error if any
/// coefficient is not positive.
PartitionTable delta_table(unsigned k, long N);

/// Delta_k(0..N) via eta_quotient_logderiv; the independent cross-check.
std::vector<BigInt> delta_oracle_logderiv(unsigned k, long N);

}  // namespace bkd

#include "bkd/eta_series.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bkd {

EtaQuotientSpec::EtaQuotientSpec(std::vector<EtaFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("eta quotient: empty factor list");
  for (const auto& f : factors_) {
    if (f.modulus <= 0) throw std::invalid_argument("eta quotient: modulus must be positive");
    if (f.exponent == 0) throw std::invalid_argument("eta quotient: exponent must be nonzero");
  }
  std::sort(factors_.begin(), factors_.end(),
            [](const EtaFactor& a, const EtaFactor& b) { return a.modulus < b.modulus; });
  auto dup = std::adjacent_find(factors_.begin(), factors_.end(),
                                [](const EtaFactor& a, const EtaFactor& b) { return a.modulus == b.modulus; });
  if (dup != factors_.end())
    throw std::invalid_argument("eta quotient: duplicate modulus " + std::to_string(dup->modulus));
}

EtaQuotientSpec EtaQuotientSpec::broken_diamond(unsigned k) {
  const long a = 2L * k + 1;
  const long b = 4L * k + 2;
  if (k == 0) {
    // 2k+1 = 1 and 4k+2 = 2 collide with the other moduli. Merging the
    // exponents leaves prod (1-q^n)^{-2}.
    return EtaQuotientSpec({{1, -2}});
  }
  return EtaQuotientSpec({{1, -3}, {2, 1}, {a, 1}, {b, -1}});
}

EtaQuotientSpec EtaQuotientSpec::partitions() { return EtaQuotientSpec({{1, -1}}); }

std::vector<BigInt> expand_eta_quotient(const EtaQuotientSpec& spec, long N) {
  if (N < 0) throw std::invalid_argument("expand_eta_quotient: negative truncation order");
  const auto len = static_cast<std::size_t>(N) + 1;
  std::vector<BigInt> c(len, 0);
  c[0] = 1;

  auto multiply_pass = [&](std::size_t t) {
    for (std::size_t i = len - 1; i >= t; --i) {
      c[i] -= c[i - t];
      if (i == t) break;
    }
  };
  auto divide_pass = [&](std::size_t t) {
    for (std::size_t i = t; i < len; ++i) c[i] += c[i - t];
  };

  for (const auto& f : spec.factors()) {
    if (f.exponent < 0) continue;
    for (long t = f.modulus; t <= N; t += f.modulus)
      for (long e = 0; e < f.exponent; ++e) multiply_pass(static_cast<std::size_t>(t));
  }
  for (const auto& f : spec.factors()) {
    if (f.exponent > 0) continue;
    for (long t = f.modulus; t <= N; t += f.modulus)
      for (long e = 0; e < -f.exponent; ++e) divide_pass(static_cast<std::size_t>(t));
  }
  return c;
}

std::vector<BigInt> eta_quotient_logderiv(const EtaQuotientSpec& spec, long N) {
  if (N < 0) throw std::invalid_argument("eta_quotient_logderiv: negative truncation order");
  const auto len = static_cast<std::size_t>(N) + 1;

  // w[j] = -sum_m e_m * (sum of divisors t of j with m | t)
  std::vector<std::int64_t> w(len, 0);
  for (const auto& f : spec.factors()) {
    for (long t = f.modulus; t <= N; t += f.modulus)
      for (long j = t; j <= N; j += t) w[static_cast<std::size_t>(j)] -= f.exponent * t;
  }

  std::vector<BigInt> out(len, 0);
  out[0] = 1;
  BigInt acc;
  for (std::size_t n = 1; n < len; ++n) {
    acc = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::int64_t wj = w[j];
      if (wj > 0)
        mpz_addmul_ui(acc.get_mpz_t(), out[n - j].get_mpz_t(), static_cast<unsigned long>(wj));
      else if (wj < 0)
        mpz_submul_ui(acc.get_mpz_t(), out[n - j].get_mpz_t(), static_cast<unsigned long>(-wj));
    }
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), n))
      throw std::logic_error("eta_quotient_logderiv: inexact division at n = " + std::to_string(n));
    mpz_divexact_ui(out[n].get_mpz_t(), acc.get_mpz_t(), n);
  }
  return out;
}

PartitionTable PartitionTable::from_values(std::vector<BigInt> values, int k) {
  if (values.empty()) throw std::invalid_argument("PartitionTable: empty value list");
  for (const auto& v : values)
    if (sgn(v) <= 0) throw std::invalid_argument("PartitionTable: values must be positive");
  return PartitionTable(k, std::move(values));
}

const BigInt& PartitionTable::at(long n) const {
  if (n < 0 || n > N())
    throw std::out_of_range("PartitionTable: index " + std::to_string(n) + " outside [0, " +
                            std::to_string(N()) + "]");
  return coeffs_[static_cast<std::size_t>(n)];
}

PartitionTable delta_table(unsigned k, long N) {
  auto coeffs = expand_eta_quotient(EtaQuotientSpec::broken_diamond(k), N);
  if (coeffs[0] != 1) throw std::logic_error("delta_table: constant term is not 1");
  for (std::size_t n = 0; n < coeffs.size(); ++n)
    if (sgn(coeffs[n]) <= 0)
      throw std::logic_error("delta_table: nonpositive coefficient at n = " + std::to_string(n));
  return PartitionTable(static_cast<int>(k), std::move(coeffs));
}

std::vector<BigInt> delta_oracle_logderiv(unsigned k, long N) {
  return eta_quotient_logderiv(EtaQuotientSpec::broken_diamond(k), N);
}

}  // namespace bkd

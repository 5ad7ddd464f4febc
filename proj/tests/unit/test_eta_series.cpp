#include "bkd/eta_series.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace bkd;

namespace {

// Schoolbook product of truncated series; shares nothing with the library.
std::vector<BigInt> naive_expand(const std::vector<EtaFactor>& factors, long N) {
  std::vector<BigInt> f(static_cast<std::size_t>(N + 1), 0);
  f[0] = 1;
  for (const auto& [m, e] : factors) {
    for (long n = 1; m * n <= N; ++n) {
      const long t = m * n;
      // (1 - q^t)^{-1} = sum_i q^{it}
      std::vector<BigInt> g(static_cast<std::size_t>(N + 1), 0);
      std::vector<BigInt> base(static_cast<std::size_t>(N + 1), 0);
      if (e > 0) {
        base[0] = 1;
        base[static_cast<std::size_t>(t)] = -1;
      } else {
        for (long i = 0; i <= N; i += t) base[static_cast<std::size_t>(i)] = 1;
      }
      for (long rep = 0; rep < (e > 0 ? e : -e); ++rep) {
        std::fill(g.begin(), g.end(), 0);
        for (long i = 0; i <= N; ++i)
          for (long j = 0; i + j <= N; ++j)
            if (base[static_cast<std::size_t>(j)] != 0)
              g[static_cast<std::size_t>(i + j)] += f[static_cast<std::size_t>(i)] * base[static_cast<std::size_t>(j)];
        f = g;
      }
    }
  }
  return f;
}

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("partition numbers") {
  const auto p = expand_eta_quotient(EtaQuotientSpec::partitions(), 10);
  CHECK(p == ints({1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42}));
  CHECK(eta_quotient_logderiv(EtaQuotientSpec::partitions(), 10) == p);
  CHECK(expand_eta_quotient(EtaQuotientSpec::partitions(), 5) == ints({1, 1, 2, 3, 5, 7}));
}

TEST_CASE("single product factor gives a sparse Euler series") {
  const EtaQuotientSpec spec({{2, 1}});
  CHECK(expand_eta_quotient(spec, 2) == ints({1, 0, -1}));
  CHECK(expand_eta_quotient(spec, 14) == ints({1, 0, -1, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1}));
  CHECK(eta_quotient_logderiv(spec, 14) == expand_eta_quotient(spec, 14));
}

TEST_CASE("broken diamond factors") {
  const auto s1 = EtaQuotientSpec::broken_diamond(1);
  REQUIRE(s1.factors().size() == 4);
  CHECK(s1.factors()[0] == EtaFactor{1, -3});
  CHECK(s1.factors()[1] == EtaFactor{2, 1});
  CHECK(s1.factors()[2] == EtaFactor{3, 1});
  CHECK(s1.factors()[3] == EtaFactor{6, -1});
  // k = 0: moduli 1 and 2 coincide with 2k+1 and 4k+2 and cancel down.
  const auto s0 = EtaQuotientSpec::broken_diamond(0);
  REQUIRE(s0.factors().size() == 1);
  CHECK(s0.factors()[0] == EtaFactor{1, -2});
}

TEST_CASE("factor list validation") {
  CHECK_THROWS_AS(EtaQuotientSpec({}), std::invalid_argument);
  CHECK_THROWS_AS(EtaQuotientSpec({{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(EtaQuotientSpec({{2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(EtaQuotientSpec({{2, 1}, {2, -1}}), std::invalid_argument);
}

TEST_CASE("matches schoolbook expansion") {
  for (unsigned k = 0; k <= 3; ++k) {
    const auto spec = EtaQuotientSpec::broken_diamond(k);
    std::vector<EtaFactor> fs(spec.factors().begin(), spec.factors().end());
    CHECK(expand_eta_quotient(spec, 60) == naive_expand(fs, 60));
  }
}

TEST_CASE("hand-expanded small values") {
  // (1+3q+6q^2+10q^3)(1-q^2)(1-q^3)(1+q^6) for k=1 up to q^3.
  const auto d1 = delta_table(1, 3);
  CHECK(std::vector<BigInt>(d1.coeffs().begin(), d1.coeffs().end()) == ints({1, 3, 8, 18}));
  const auto d2 = delta_table(2, 3);
  CHECK(std::vector<BigInt>(d2.coeffs().begin(), d2.coeffs().end()) == ints({1, 3, 8, 19}));
  CHECK(delta_oracle_logderiv(1, 6) == ints({1, 3, 8, 18, 38, 75, 142}));
  CHECK(delta_oracle_logderiv(2, 5) == ints({1, 3, 8, 19, 41, 82}));
}

TEST_CASE("oracle agreement and prefix stability") {
  for (unsigned k = 0; k <= 3; ++k) {
    const auto t = delta_table(k, 400);
    CHECK(t.k() == static_cast<int>(k));
    CHECK(t.N() == 400);
    const auto oracle = delta_oracle_logderiv(k, 400);
    CHECK(std::equal(oracle.begin(), oracle.end(), t.coeffs().begin()));
    const auto short_table = delta_table(k, 123);
    CHECK(std::equal(short_table.coeffs().begin(), short_table.coeffs().end(), t.coeffs().begin()));
  }
}

TEST_CASE("table access") {
  const auto t = delta_table(1, 5);
  CHECK(t.at(5) == 75);
  CHECK_THROWS_AS(t.at(6), std::out_of_range);
  CHECK_THROWS_AS(t.at(-1), std::out_of_range);
  CHECK(delta_table(1, 0).N() == 0);
  CHECK_THROWS(delta_table(1, -1));
}

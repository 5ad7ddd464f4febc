#include "bkd/eta_series.hpp"
#include "bkd/inequalities.hpp"

#include <doctest.h>

using namespace bkd;

namespace {

PartitionTable seq(std::initializer_list<long> v) { return PartitionTable::from_values({v.begin(), v.end()}); }

}  // namespace

TEST_CASE("margins on hand examples") {
  const auto t = delta_table(1, 10);  // 1 3 8 18 38 75 142 ...
  CHECK(logconcave_margin(t, 1) == 9 - 8);
  CHECK(logconcave_margin(t, 2) == 64 - 54);
  // n=2: 4(64-54)(324-304) - (144-114)^2 = 800 - 900
  CHECK(turan3_margin(t, 2) == -100);
  CHECK(turan3_at(t, 2) == Sign::Negative);
  // n=1: 27*18 - 1*512
  CHECK(theta_monotone_margin(t, 1) == 27 * 18 - 512);
  CHECK(dlog_margin(t, 0, 1) == 2);
  CHECK(dlog_margin(t, 0, 2) == 8 - 9);
  CHECK(dlog_sign(t, 0, 2) == Sign::Negative);
}

TEST_CASE("zero margins") {
  CHECK(logconcave_at(seq({1, 1, 1}), 1) == Sign::Zero);
  const auto g = seq({1, 2, 4, 8});
  CHECK(theta_monotone_at(g, 1) == Sign::Zero);
  CHECK(dlog_sign(g, 0, 3) == Sign::Zero);
  CHECK(turan3_at(g, 1) == Sign::Zero);
}

TEST_CASE("third difference of log is the theta monotonicity margin one step later") {
  const auto t = delta_table(2, 40);
  for (long m = 0; m <= 30; ++m) {
    CHECK(dlog_margin(t, m, 3) == theta_monotone_margin(t, m + 1));
    CHECK(dlog_sign(t, m, 3) == theta_monotone_at(t, m + 1));
  }
  // Pinned on a four-term sequence.
  const auto s = seq({1, 3, 8, 18});
  CHECK(dlog_margin(s, 0, 3) == 18 * 27 - 512);
  CHECK(theta_monotone_margin(s, 1) == 18 * 27 - 512);
}

TEST_CASE("range and argument errors") {
  const auto t = delta_table(1, 10);
  CHECK_THROWS_AS(logconcave_margin(t, 0), std::out_of_range);
  CHECK_THROWS_AS(logconcave_margin(t, 10), std::out_of_range);
  CHECK_THROWS_AS(turan3_margin(t, 9), std::out_of_range);
  CHECK_THROWS_AS(dlog_margin(t, 8, 3), std::out_of_range);
  CHECK_THROWS_AS(dlog_margin(t, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(jensen_polynomial(t, 3, 8), std::out_of_range);
}

TEST_CASE("jensen degree two and three agree with the quadratic and cubic checks") {
  for (unsigned k : {1u, 2u}) {
    const auto t = delta_table(k, 300);
    for (long n = 0; n <= 290; ++n) {
      CHECK(jensen_hyperbolic(t, 2, n) == (logconcave_at(t, n + 1) != Sign::Negative));
      CHECK(jensen_hyperbolic(t, 3, n) == (turan3_at(t, n + 1) != Sign::Negative));
    }
  }
  const auto j = jensen_polynomial(seq({1, 3, 8, 18}), 3, 0);
  CHECK(j.coeff(0) == 1);
  CHECK(j.coeff(1) == 9);
  CHECK(j.coeff(2) == 24);
  CHECK(j.coeff(3) == 18);
}

TEST_CASE("scans") {
  const auto t1 = delta_table(1, 600);
  const auto t2 = delta_table(2, 600);
  CHECK(scan_check(t1, CheckKind::ThetaMonotone, 1, 500).failures == std::vector<long>{1, 3});
  CHECK(scan_check(t2, CheckKind::ThetaMonotone, 1, 500).failures == std::vector<long>{5});
  CHECK(scan_check(t1, CheckKind::Turan3, 1, 500).failures == std::vector<long>{2, 4});
  CHECK(scan_check(t2, CheckKind::Turan3, 1, 500).failures == std::vector<long>{4});
  CHECK(scan_check(t1, CheckKind::LogConcave, 1, 500).pass());
  ScanOptions opt;
  opt.workers = 4;
  opt.keep_margins = true;
  const auto par = scan_check(t1, CheckKind::Turan3, 1, 500, opt);
  CHECK(par.failures == std::vector<long>{2, 4});
  CHECK(par.margins.size() == 500);
  CHECK(par.margins.at(2) == "-100");

  const auto c = conjecture_threshold(t1, 3, 500);
  REQUIRE(c.threshold.has_value());
  CHECK(*c.threshold == 3);
  CHECK(c.violations == std::vector<long>{2});
  CHECK(*conjecture_threshold(t1, 2, 500).threshold == 1);
  CHECK(*conjecture_threshold(t1, 1, 500).threshold == 1);

  const auto j2 = jensen_threshold(t1, 2, 500);
  CHECK(*j2.threshold == 0);
}

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "bkd/asymptotics.hpp"
#include "bkd/eta_series.hpp"
#include "bkd/inequalities.hpp"
#include "bkd/parallel.hpp"
#include "bkd/positivity.hpp"
#include "bkd/report.hpp"
#include "bkd/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace bkd;

namespace {

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

const PartitionTable& table(unsigned k, long N) {
  static std::map<unsigned, PartitionTable> tables;
  auto it = tables.find(k);
  if (it == tables.end() || it->second.N() < N) {
    TableCache cache(TableCache::default_directory());
    it = tables.insert_or_assign(k, cache.get_or_build(k, N)).first;
  }
  return it->second;
}

std::string join(const std::vector<long>& v) {
  if (v.empty()) return "none";
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

// Rounded log-spaced integers in [a, b], endpoints included.
std::vector<long> log_spaced(long a, long b, int count) {
  std::vector<long> ns;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    ns.push_back(std::lround(std::exp(std::log(a) + t * (std::log(b) - std::log(a)))));
  }
  ns.front() = a;
  ns.back() = b;
  return ns;
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  Stopwatch clock;
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = static_cast<double>(clock.elapsed_ms()) / 1000.0;
  const bool in_time = secs <= limit_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.1f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), secs, limit_s, in_time ? "" : ", over time");
  std::fflush(stdout);
}

Outcome oracle_equivalence() {
  for (unsigned k = 0; k <= 3; ++k) {
    const auto t = delta_table(k, 500);
    const auto o = delta_oracle_logderiv(k, 500);
    if (!std::equal(o.begin(), o.end(), t.coeffs().begin(), t.coeffs().end()))
      return {false, "mismatch at k=" + std::to_string(k)};
  }
  return {true, "k=0..3, N=500 identical"};
}

Outcome small_values() {
  const std::vector<BigInt> want1{1, 3, 8, 18}, want2{1, 3, 8, 19};
  const auto o1 = delta_oracle_logderiv(1, 3), o2 = delta_oracle_logderiv(2, 3);
  const auto t1 = delta_table(1, 3), t2 = delta_table(2, 3);
  const bool ok = o1 == want1 && o2 == want2 && std::equal(want1.begin(), want1.end(), t1.coeffs().begin()) &&
                  std::equal(want2.begin(), want2.end(), t2.coeffs().begin());
  return {ok, "D1(0..3)=1,3,8,18 D2(0..3)=1,3,8,19"};
}

Outcome turan3() {
  std::string detail;
  bool ok = true;
  for (unsigned k : {1u, 2u}) {
    const auto t = delta_table(k, 5002);
    ScanOptions opt;
    opt.workers = workers();
    const auto rep = scan_check(t, CheckKind::Turan3, 6, 5000, opt);
    ok = ok && rep.pass();
    detail += "k=" + std::to_string(k) + " failures " + join(rep.failures) + "; ";
  }
  return {ok, detail + "n=6..5000"};
}

Outcome theta_monotone() {
  ScanOptions opt;
  opt.workers = workers();
  const auto& t1 = table(1, 5002);
  const auto& t2 = table(2, 5002);
  const auto a = scan_check(t1, CheckKind::ThetaMonotone, 5, 5000, opt);
  const auto b = scan_check(t2, CheckKind::ThetaMonotone, 7, 5000, opt);
  const auto below1 = scan_check(t1, CheckKind::ThetaMonotone, 1, 4, opt);
  const auto below2 = scan_check(t2, CheckKind::ThetaMonotone, 1, 6, opt);
  return {a.pass() && b.pass(), "k=1 n=5..5000 failures " + join(a.failures) + ", k=2 n=7..5000 failures " +
                                    join(b.failures) + "; below threshold: k=1 " + join(below1.failures) +
                                    ", k=2 " + join(below2.failures)};
}

Outcome logconcave() {
  ScanOptions opt;
  opt.workers = workers();
  bool ok = true;
  std::string detail;
  for (unsigned k : {1u, 2u}) {
    const auto rep = scan_check(table(k, 5002), CheckKind::LogConcave, 1, 5000, opt);
    ok = ok && rep.pass();
    detail += "k=" + std::to_string(k) + " failures " + join(rep.failures) + "; ";
  }
  return {ok, detail + "n=1..5000"};
}

Outcome delta_bounds() {
  const auto ns = log_spaced(3512, 20000, 20);
  int pass = 0, other = 0;
  for (unsigned k : {1u, 2u}) {
    const auto& t = table(k, 20001);
    auto rows = parallel_map<AnalyticCheck>(0, static_cast<long>(ns.size()) - 1, workers(), [&](long i) {
      return delta_bounds_check(t, ns[static_cast<std::size_t>(i)]);
    });
    for (const auto& r : rows) (r.verdict == Verdict::Pass ? pass : other)++;
  }
  return {other == 0 && pass == 40,
          std::to_string(pass) + "/40 PASS, " + std::to_string(other) + " other, 20 log-spaced n in [3512,20000]"};
}

Outcome theta_bounds() {
  int pass = 0;
  std::string bad;
  for (unsigned k : {1u, 2u}) {
    const auto& t = table(k, 20001);
    for (long n : {15081L, 16000L, 18000L, 20000L}) {
      const auto r = theta_bounds_check(t, n, kDefaultPrecision);
      if (r.verdict == Verdict::Pass) ++pass;
      else bad += " k=" + std::to_string(k) + ",n=" + std::to_string(n) + ":" + to_string(r.verdict);
    }
  }
  return {pass == 8, std::to_string(pass) + "/8 strict enclosures" + bad};
}

Outcome bessel_grid() {
  std::vector<double> zs;
  for (int i = 0; i < 50; ++i) zs.push_back(std::exp(std::log(1484.0) + i * (std::log(1e4) - std::log(1484.0)) / 49));
  zs.back() = 1e4;
  auto rows = parallel_map<BesselRemainderCheck>(0, 49, workers(), [&](long i) {
    return check_bessel_remainder(Interval::from_double(zs[static_cast<std::size_t>(i)]));
  });
  int ok = 0;
  double worst = 1e300;
  for (const auto& r : rows) {
    if (mpfr_sgn(r.margin.lo()) > 0) ++ok;
    worst = std::min(worst, (r.margin * pow(r.z, 6)).lo_double());
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/50 points with margin.lo > 0, min margin*z^6 = %.4f", ok, worst);
  return {ok == 50, buf};
}

Outcome certificates() {
  const auto pi = PiBracket::from_precision(256);
  const auto psi = certify_positive_on_ray(psi_polynomial(), Rational(6), pi);
  const auto diff = certify_positive_on_ray(phi_polynomial() - psi_polynomial(), Rational(33, 10), pi);
  const bool psi_ok = psi.status == PositivityStatus::Certified && psi.certificate &&
                      PositivityCertificate::from_json(psi.certificate->to_json()).reverify();
  const bool diff_ok = diff.status == PositivityStatus::Certified && diff.certificate &&
                       PositivityCertificate::from_json(diff.certificate->to_json()).reverify();
  return {psi_ok && diff_ok, std::string("psi on [6,inf): ") + to_string(psi.status) +
                                 (psi_ok ? " reverified" : "") + ", phi-psi on [33/10,inf): " +
                                 to_string(diff.status) + (diff_ok ? " reverified" : "")};
}

Outcome lemma_suite() {
  std::mt19937_64 rng(20261016);
  const long scale = 1L << 48;
  std::uniform_int_distribution<long> d(0, scale - 1);
  const Rational base(15, 16), width(1, 16);
  auto draw = [&] {
    Rational x = base + width * Rational(d(rng), scale);
    x.canonicalize();
    return x;
  };
  int pairs = 0, implication_failures = 0, hypothesis_true = 0;
  while (pairs < 10000) {
    Rational u = draw(), v = draw();
    if (u == v) continue;
    if (v < u) std::swap(u, v);
    const auto r = lemma_uv_check(u, v);
    if (r.hypothesis) ++hypothesis_true;
    if (!r.holds()) ++implication_failures;
    ++pairs;
  }
  int ordered = 0;
  for (int i = 0; i < 100; ++i)
    if (root_ordering_check(draw()).ordered()) ++ordered;
  return {implication_failures == 0 && ordered == 100,
          std::to_string(implication_failures) + " implication failures in 10000 pairs (" +
              std::to_string(hypothesis_true) + " with hypothesis true), " + std::to_string(ordered) +
              "/100 root orderings"};
}

Outcome sandwich() {
  const auto ns = log_spaced(3512, 20000, 10);
  int pass = 0, other = 0;
  for (unsigned k : {1u, 2u}) {
    const auto& t = table(k, 20001);
    auto rows = parallel_map<AnalyticCheck>(0, static_cast<long>(ns.size()) - 1, workers(), [&](long i) {
      return sandwich_check(t, ns[static_cast<std::size_t>(i)]);
    });
    for (const auto& r : rows) (r.verdict == Verdict::Pass ? pass : other)++;
  }
  return {other == 0 && pass == 20, std::to_string(pass) + "/20 PASS at 10 log-spaced n in [3512,20000]"};
}

Outcome jensen() {
  std::string detail;
  bool consistent = true;
  for (unsigned k : {1u, 2u}) {
    const auto& t = table(k, 5005);
    const auto d4 = jensen_threshold(t, 4, 5000, 0, workers());
    const auto d5 = jensen_threshold(t, 5, 5000, 0, workers());
    const auto d2 = jensen_threshold(t, 2, 4999, 0, workers());
    const auto d3 = jensen_threshold(t, 3, 4998, 0, workers());
    ScanOptions opt;
    opt.workers = workers();
    const auto lc = scan_check(t, CheckKind::LogConcave, 1, 5000, opt);
    const auto t3 = scan_check(t, CheckKind::Turan3, 1, 4999, opt);
    // Degree 2 at shift n is the quadratic inequality at n+1, degree 3 the cubic one.
    auto shifted = [](const std::vector<long>& v) {
      std::vector<long> s;
      for (long n : v) s.push_back(n - 1);
      return s;
    };
    consistent = consistent && d2.violations == shifted(lc.failures) && d3.violations == shifted(t3.failures);
    auto th = [](const ConjectureScan& s) { return s.threshold ? std::to_string(*s.threshold) : std::string("none"); };
    detail += "k=" + std::to_string(k) + ": d=4 from " + th(d4) + ", d=5 from " + th(d5) + ", d=2 from " + th(d2) +
              ", d=3 from " + th(d3) + "; ";
  }
  return {consistent, detail + (consistent ? "d=2/3 consistent with criteria 5 and 3" : "d=2/3 INCONSISTENT")};
}

}  // namespace

int main() {
  std::printf("cache: %s, workers: %u\n", TableCache::default_directory().c_str(), workers());
  criterion(1, "oracle equivalence", 10, oracle_equivalence);
  criterion(2, "small-value regression", 1, small_values);
  criterion(3, "cubic Turan inequality, n >= 6", 60, turan3);
  criterion(4, "Theta monotonicity, n >= 5 (k=1), n >= 7 (k=2)", 30, theta_monotone);
  criterion(5, "log-concavity, n >= 1", 10, logconcave);
  criterion(6, "Delta bounds M(1 -+ x^-6), n >= 3512", 300, delta_bounds);
  criterion(7, "Theta bounds, x >= 315", 120, theta_bounds);
  criterion(8, "I_2 remainder <= 73/z^6 on [1484, 1e4]", 300, bessel_grid);
  criterion(9, "phi/psi Sturm certificates", 5, certificates);
  criterion(10, "u,v lemma and root ordering", 30, lemma_suite);
  criterion(11, "Lambda g <= Theta <= Lambda G, n >= 3512", 180, sandwich);
  criterion(12, "Jensen degree 4/5 onset scan", 600, jensen);

  // Reported alongside the criteria, not counted.
  const auto c = conjecture_threshold(table(1, 5002), 3, 4999, 1, workers());
  std::printf("info: conjecture scan k=1 r=3 to 4999: candidate %s, violations %s\n",
              c.threshold ? std::to_string(*c.threshold).c_str() : "none", join(c.violations).c_str());

  for (auto o : {EnvelopeOrientation::PhiLower, EnvelopeOrientation::PhiUpper}) {
    int held = 0;
    for (long t : {971L, 2000L, 5000L, 20000L})
      if (envelope_check(1, Interval::from_long(t), o).verdict == Verdict::Pass) ++held;
    std::printf("info: envelope with phi as the %s bound holds at %d/4 sample t in [971, 20000]\n",
                o == EnvelopeOrientation::PhiLower ? "lower" : "upper", held);
  }

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

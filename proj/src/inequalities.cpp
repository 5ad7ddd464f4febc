#include "bkd/inequalities.hpp"

#include "bkd/parallel.hpp"

#include <stdexcept>
#include <string>

namespace bkd {

namespace {

void require_range(const PartitionTable& t, long lo, long hi, const char* what) {
  if (lo < 0 || hi > t.N())
    throw std::out_of_range(std::string(what) + ": needs indices " + std::to_string(lo) + ".." +
                            std::to_string(hi) + " but the table stops at " + std::to_string(t.N()));
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

BigInt power(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

}  // namespace

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Negative: return "NEGATIVE";
    case Sign::Zero: return "ZERO";
    case Sign::Positive: return "POSITIVE";
  }
  return "?";
}

Sign sign_of(const BigInt& v) {
  const int s = sgn(v);
  return s > 0 ? Sign::Positive : (s < 0 ? Sign::Negative : Sign::Zero);
}

BigInt logconcave_margin(const PartitionTable& t, long n) {
  require_range(t, n - 1, n + 1, "logconcave_at");
  if (n < 1) throw std::out_of_range("logconcave_at: n must be >= 1");
  return t[n] * t[n] - t[n - 1] * t[n + 1];
}

Sign logconcave_at(const PartitionTable& t, long n) { return sign_of(logconcave_margin(t, n)); }

BigInt turan3_margin(const PartitionTable& t, long n) {
  if (n < 1) throw std::out_of_range("turan3_at: n must be >= 1");
  require_range(t, n - 1, n + 2, "turan3_at");
  const BigInt& a0 = t[n - 1];
  const BigInt& a1 = t[n];
  const BigInt& a2 = t[n + 1];
  const BigInt& a3 = t[n + 2];
  BigInt left = a1 * a1 - a0 * a2;
  BigInt right = a2 * a2 - a1 * a3;
  BigInt cross = a1 * a2 - a0 * a3;
  return 4 * left * right - cross * cross;
}

Sign turan3_at(const PartitionTable& t, long n) { return sign_of(turan3_margin(t, n)); }

BigInt theta_monotone_margin(const PartitionTable& t, long n) {
  if (n < 1) throw std::out_of_range("theta_monotone_at: n must be >= 1");
  require_range(t, n - 1, n + 2, "theta_monotone_at");
  return power(t[n], 3) * t[n + 2] - t[n - 1] * power(t[n + 1], 3);
}

Sign theta_monotone_at(const PartitionTable& t, long n) { return sign_of(theta_monotone_margin(t, n)); }

BigInt dlog_margin(const PartitionTable& t, long n, unsigned r) {
  if (r == 0) throw std::invalid_argument("dlog_sign: r must be >= 1");
  require_range(t, n, n + static_cast<long>(r), "dlog_sign");
  BigInt plus = 1;
  BigInt minus = 1;
  for (unsigned j = 0; j <= r; ++j) {
    const BigInt term = power(t[n + j], binomial(r, j).get_ui());
    if ((r - j) % 2 == 0) plus *= term;
    else minus *= term;
  }
  return plus - minus;
}

Sign dlog_sign(const PartitionTable& t, long n, unsigned r) { return sign_of(dlog_margin(t, n, r)); }

PolyQ jensen_polynomial(const PartitionTable& t, unsigned d, long n) {
  if (d == 0) throw std::invalid_argument("jensen: degree must be >= 1");
  require_range(t, n, n + static_cast<long>(d), "jensen");
  std::vector<Rational> c;
  c.reserve(d + 1);
  for (unsigned j = 0; j <= d; ++j) c.emplace_back(binomial(d, j) * t[n + j]);
  return PolyQ(std::move(c));
}

bool jensen_hyperbolic(const PartitionTable& t, unsigned d, long n) {
  const PolyQ p = jensen_polynomial(t, d, n);
  return real_root_count_with_multiplicity(p) == static_cast<int>(d);
}

const char* check_name(CheckKind kind) {
  switch (kind) {
    case CheckKind::LogConcave: return "logconcave";
    case CheckKind::Turan3: return "turan3";
    case CheckKind::ThetaMonotone: return "theta-mono";
    case CheckKind::DLog: return "dlog";
    case CheckKind::Jensen: return "jensen";
  }
  return "?";
}

VerificationReport scan_check(const PartitionTable& t, CheckKind kind, long from, long to,
                              const ScanOptions& opt) {
  Stopwatch clock;
  if (from > to) throw std::invalid_argument("scan: from > to");

  // Fail fast on the range instead of inside a worker.
  switch (kind) {
    case CheckKind::LogConcave: logconcave_margin(t, from), logconcave_margin(t, to); break;
    case CheckKind::Turan3:
    case CheckKind::ThetaMonotone: turan3_margin(t, from), turan3_margin(t, to); break;
    case CheckKind::DLog: dlog_margin(t, from, opt.r), dlog_margin(t, to, opt.r); break;
    case CheckKind::Jensen: jensen_polynomial(t, opt.d, from), jensen_polynomial(t, opt.d, to); break;
  }

  struct Point {
    bool ok = true;
    std::string margin;
  };
  const int dlog_flip = (opt.r % 2 == 1) ? 1 : -1;
  auto eval = [&](long n) {
    Point p;
    BigInt m;
    switch (kind) {
      case CheckKind::LogConcave: m = logconcave_margin(t, n); break;
      case CheckKind::Turan3: m = turan3_margin(t, n); break;
      case CheckKind::ThetaMonotone: m = theta_monotone_margin(t, n); break;
      case CheckKind::DLog: m = dlog_flip * dlog_margin(t, n, opt.r); break;
      case CheckKind::Jensen: {
        p.ok = jensen_hyperbolic(t, opt.d, n);
        if (opt.keep_margins) p.margin = p.ok ? "1" : "0";
        return p;
      }
    }
    p.ok = sgn(m) > 0;
    if (opt.keep_margins) p.margin = m.get_str();
    return p;
  };
  auto points = parallel_map<Point>(from, to, opt.workers, eval);

  VerificationReport rep;
  rep.check = check_name(kind);
  rep.k = t.k();
  rep.from = from;
  rep.to = to;
  for (long n = from; n <= to; ++n) {
    auto& p = points[static_cast<std::size_t>(n - from)];
    if (!p.ok) rep.failures.push_back(n);
    if (opt.keep_margins) rep.margins.emplace(n, std::move(p.margin));
  }
  if (kind == CheckKind::DLog) rep.extras["r"] = opt.r;
  if (kind == CheckKind::Jensen) rep.extras["d"] = opt.d;
  rep.elapsed_ms = clock.elapsed_ms();
  return rep;
}

namespace {

ConjectureScan threshold_from(VerificationReport rep, long to) {
  ConjectureScan out;
  out.violations = rep.failures;
  if (rep.failures.empty()) out.threshold = rep.from;
  else if (rep.failures.back() < to) out.threshold = rep.failures.back() + 1;
  if (out.threshold) rep.extras["threshold"] = *out.threshold;
  else rep.extras["threshold"] = nullptr;
  out.report = std::move(rep);
  return out;
}

}  // namespace

ConjectureScan conjecture_threshold(const PartitionTable& t, unsigned r, long to, long from,
                                    unsigned workers) {
  ScanOptions opt;
  opt.r = r;
  opt.workers = workers;
  auto rep = scan_check(t, CheckKind::DLog, from, to, opt);
  rep.check = "conjecture";
  return threshold_from(std::move(rep), to);
}

ConjectureScan jensen_threshold(const PartitionTable& t, unsigned d, long to, long from,
                                unsigned workers) {
  ScanOptions opt;
  opt.d = d;
  opt.workers = workers;
  auto rep = scan_check(t, CheckKind::Jensen, from, to, opt);
  return threshold_from(std::move(rep), to);
}

}  // namespace bkd

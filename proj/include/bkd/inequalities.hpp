#pragma once

#include "bkd/eta_series.hpp"
#include "bkd/polynomial.hpp"
#include "bkd/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bkd {

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

const char* to_string(Sign s);
Sign sign_of(const BigInt& v);

// All index errors throw std::out_of_range.

/// D(n)^2 - D(n-1)D(n+1); needs 1 <= n <= N-1.
BigInt logconcave_margin(const PartitionTable& t, long n);
Sign logconcave_at(const PartitionTable& t, long n);

/// 4(D(n)^2-D(n-1)D(n+1))(D(n+1)^2-D(n)D(n+2)) - (D(n)D(n+1)-D(n-1)D(n+2))^2;
/// needs 1 <= n <= N-2.
BigInt turan3_margin(const PartitionTable& t, long n);
Sign turan3_at(const PartitionTable& t, long n);

/// D(n)^3 D(n+2) - D(n-1) D(n+1)^3, positive iff Theta(n) < Theta(n+1);
/// needs 1 <= n <= N-2.
BigInt theta_monotone_margin(const PartitionTable& t, long n);
Sign theta_monotone_at(const PartitionTable& t, long n);

/// P+ - P-, where P+ (P-) multiplies D(n+j)^C(r,j) over r-j even (odd).
/// Its sign is the sign of the r-th forward difference of log D at n.
/// Needs r >= 1 and 0 <= n, n + r <= N.
BigInt dlog_margin(const PartitionTable& t, long n, unsigned r);
Sign dlog_sign(const PartitionTable& t, long n, unsigned r);

/// J^{d,n}(X) = sum_j C(d,j) D(n+j) X^j.
PolyQ jensen_polynomial(const PartitionTable& t, unsigned d, long n);
/// True iff J^{d,n} has d real roots with multiplicity. Needs d >= 1, n + d <= N.
bool jensen_hyperbolic(const PartitionTable& t, unsigned d, long n);

enum class CheckKind { LogConcave, Turan3, ThetaMonotone, DLog, Jensen };

const char* check_name(CheckKind kind);

struct ScanOptions {
  unsigned r = 3;        // DLog order
  unsigned d = 3;        // Jensen degree
  unsigned workers = 1;
  bool keep_margins = false;
};

/// Checks n in [from, to]. A point passes when its sign is Positive; for
/// DLog the sign is multiplied by (-1)^{r-1} first; for Jensen when the
/// polynomial is hyperbolic.
VerificationReport scan_check(const PartitionTable& t, CheckKind kind, long from, long to,
                              const ScanOptions& opt = {});

struct ConjectureScan {
  /// Least n* >= from with every n in [n*, to] passing; empty when the check
  /// fails at `to` itself.
  std::optional<long> threshold;
  /// Every failing n in [from, to], ascending.
  std::vector<long> violations;
  VerificationReport report;
};

/// Candidate n_k(r) for (-1)^{r-1} D^r log D(n) > 0 on [from, to].
ConjectureScan conjecture_threshold(const PartitionTable& t, unsigned r, long to, long from = 1,
                                    unsigned workers = 1);

/// Least n0 in [from, to] such that jensen_hyperbolic(d, n) holds for every
/// n in [n0, to], with the failures below it.
ConjectureScan jensen_threshold(const PartitionTable& t, unsigned d, long to, long from = 0,
                                unsigned workers = 1);

}  // namespace bkd

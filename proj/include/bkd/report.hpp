#pragma once

#include <json.hpp>

#include <chrono>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace bkd {

/// Outcome of a single interval-decided claim.
enum class Verdict { Pass, Fail, Inconclusive, OutsideHypothesis };

const char* to_string(Verdict v);

/// Per-check record over an index range. A check passes iff `failures` is
/// empty; inconclusive indices are tracked separately.
struct VerificationReport {
  std::string check;
  int k = -1;
  long from = 0;
  long to = 0;
  std::vector<long> failures;
  std::vector<long> inconclusive;
  /// Exact margins as decimal strings, filled on demand.
  std::map<long, std::string> margins;
  long elapsed_ms = 0;
  /// Check-specific fields appended after the fixed ones.
  nlohmann::ordered_json extras = nlohmann::ordered_json::object();

  bool pass() const { return failures.empty(); }

  /// 0 pass, 1 counterexample, 2 inconclusive only.
  int exit_code() const;

  /// {check, k, from, to, pass, failures, inconclusive, elapsed_ms, ...extras}
  nlohmann::ordered_json to_json() const;

  /// `n,margin` rows in increasing n.
  void write_margins_csv(std::ostream& out) const;

  /// Human summary, one line plus failure list.
  std::string to_text() const;
};

/// Wall-clock stopwatch in milliseconds.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long elapsed_ms() const {
    return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start_)
                                 .count());
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace bkd

#include "bkd/report.hpp"

#include <ostream>
#include <sstream>

namespace bkd {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::OutsideHypothesis: return "OUTSIDE_HYPOTHESIS";
  }
  return "?";
}

int VerificationReport::exit_code() const {
  if (!failures.empty()) return 1;
  if (!inconclusive.empty()) return 2;
  return 0;
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["check"] = check;
  j["k"] = k;
  j["from"] = from;
  j["to"] = to;
  j["pass"] = pass();
  j["failures"] = failures;
  j["inconclusive"] = inconclusive;
  j["elapsed_ms"] = elapsed_ms;
  for (const auto& [key, value] : extras.items()) j[key] = value;
  return j;
}

void VerificationReport::write_margins_csv(std::ostream& out) const {
  out << "n,margin\n";
  for (const auto& [n, m] : margins) out << n << ',' << m << '\n';
}

std::string VerificationReport::to_text() const {
  std::ostringstream s;
  s << check;
  if (k >= 0) s << " k=" << k;
  s << " n=" << from << ".." << to << ": " << (pass() ? "PASS" : "FAIL");
  if (!inconclusive.empty()) s << " (" << inconclusive.size() << " inconclusive)";
  s << " [" << elapsed_ms << " ms]\n";
  if (!failures.empty()) {
    s << "  failures:";
    for (long n : failures) s << ' ' << n;
    s << '\n';
  }
  if (!inconclusive.empty()) {
    s << "  inconclusive:";
    for (long n : inconclusive) s << ' ' << n;
    s << '\n';
  }
  return s.str();
}

}  // namespace bkd

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bkd {

/// Bad arguments or a request the data cannot serve; exit code 3.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum ExitCode { kExitPass = 0, kExitCounterexample = 1, kExitInconclusive = 2, kExitUsage = 3 };

struct RunConfig {
  std::string command;  // expand | verify | scan
  std::string check;    // verify check name, or scan target
  int k = 1;
  long n = -1;          // expand truncation order
  std::optional<long> from;
  std::optional<long> to;
  long step = 1;
  unsigned r = 3;
  unsigned d = 3;
  long precision = 0;   // 0 = auto
  std::string format = "text";
  std::string out;
  unsigned workers = 1;
  std::string z_grid;   // a:b:count, logarithmic
  std::string orientation = "phi-lower";
  long samples = 10000;
  unsigned long seed = 1;
  bool use_cache = true;
  std::string cache_dir;  // empty = TableCache::default_directory()
};

/// Validates and dispatches; returns the exit code. Throws UsageError.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line (argv[0] included). Never throws; errors map to exit 3.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a:b:count" to count log-spaced points from a to b.
std::vector<double> parse_log_grid(const std::string& spec);

}  // namespace bkd

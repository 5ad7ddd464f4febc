#pragma once

#include "bkd/eta_series.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace bkd {

/// CSV with header `n,delta`, one decimal row per index.
void write_table_csv(std::ostream& out, const PartitionTable& table);

/// {"k":K,"N":N,"coeffs":["1","3",...]} with decimal strings.
std::string table_to_json(const PartitionTable& table);

/// Inverse of table_to_json. Throws std::invalid_argument on malformed input.
PartitionTable table_from_json(const std::string& text);

/// Hex SHA-256 of the decimal coefficients joined by newlines.
std::string table_digest(const PartitionTable& table);

/// On-disk store of expanded tables keyed by (k, N).
class TableCache {
 public:
  explicit TableCache(std::filesystem::path dir);

  /// BKD_CACHE_DIR if set, else $XDG_CACHE_HOME/bkd, else ~/.cache/bkd.
  static std::filesystem::path default_directory();

  const std::filesystem::path& directory() const { return dir_; }

  /// A cached table for k covering at least N, truncated to N. Entries whose
  /// digest does not match their contents are ignored.
  std::optional<PartitionTable> load(unsigned k, long N) const;

  void store(const PartitionTable& table) const;

  /// load(), falling back to delta_table() and storing the result.
  PartitionTable get_or_build(unsigned k, long N) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace bkd

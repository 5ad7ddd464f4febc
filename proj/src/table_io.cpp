#include "bkd/table_io.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace bkd {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

std::filesystem::path cache_file(const std::filesystem::path& dir, unsigned k, long N) {
  return dir / ("delta_k" + std::to_string(k) + "_N" + std::to_string(N) + ".json");
}

}  // namespace

void write_table_csv(std::ostream& out, const PartitionTable& table) {
  out << "n,delta\n";
  for (long n = 0; n <= table.N(); ++n) out << n << ',' << table[n].get_str() << '\n';
}

std::string table_to_json(const PartitionTable& table) {
  ordered_json j;
  j["k"] = table.k();
  j["N"] = table.N();
  auto& coeffs = j["coeffs"] = ordered_json::array();
  for (const auto& c : table.coeffs()) coeffs.push_back(c.get_str());
  return j.dump();
}

PartitionTable table_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("table json: ") + e.what());
  }
  if (!j.contains("k") || !j.contains("N") || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw std::invalid_argument("table json: missing k, N or coeffs");
  const long N = j["N"].get<long>();
  const auto& arr = j["coeffs"];
  if (static_cast<long>(arr.size()) != N + 1)
    throw std::invalid_argument("table json: coeffs length does not match N");
  std::vector<BigInt> values;
  values.reserve(arr.size());
  for (const auto& s : arr) {
    BigInt v;
    if (!s.is_string() || v.set_str(s.get<std::string>(), 10) != 0)
      throw std::invalid_argument("table json: coefficient is not a decimal string");
    values.push_back(std::move(v));
  }
  return PartitionTable::from_values(std::move(values), j["k"].get<int>());
}

std::string table_digest(const PartitionTable& table) {
  std::string joined;
  for (const auto& c : table.coeffs()) {
    joined += c.get_str();
    joined += '\n';
  }
  return sha256_hex(joined);
}

TableCache::TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path TableCache::default_directory() {
  if (const char* env = std::getenv("BKD_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "bkd";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "bkd";
  return std::filesystem::temp_directory_path() / "bkd-cache";
}

std::optional<PartitionTable> TableCache::load(unsigned k, long N) const {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir_, ec)) return std::nullopt;

  // Smallest cached N' >= N for this k.
  const std::regex name_re("delta_k" + std::to_string(k) + "_N([0-9]+)\\.json");
  std::optional<long> best;
  for (const auto& entry : std::filesystem::directory_iterator(dir_, ec)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (!std::regex_match(name, m, name_re)) continue;
    const long cachedN = std::stol(m[1].str());
    if (cachedN >= N && (!best || cachedN < *best)) best = cachedN;
  }
  if (!best) return std::nullopt;

  std::ifstream in(cache_file(dir_, k, *best));
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    auto j = nlohmann::json::parse(buf.str());
    const std::string digest = j.value("sha256", "");
    j.erase("sha256");
    auto table = table_from_json(j.dump());
    if (table.k() != static_cast<int>(k) || table_digest(table) != digest) return std::nullopt;
    if (table.N() == N) return table;
    std::vector<BigInt> prefix(table.coeffs().begin(), table.coeffs().begin() + N + 1);
    return PartitionTable::from_values(std::move(prefix), table.k());
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void TableCache::store(const PartitionTable& table) const {
  if (table.k() < 0) throw std::invalid_argument("TableCache: only broken-diamond tables are cached");
  std::filesystem::create_directories(dir_);
  auto j = ordered_json::parse(table_to_json(table));
  j["sha256"] = table_digest(table);
  const auto path = cache_file(dir_, static_cast<unsigned>(table.k()), table.N());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("TableCache: cannot write " + tmp);
    out << j.dump();
  }
  std::filesystem::rename(tmp, path);
}

PartitionTable TableCache::get_or_build(unsigned k, long N) const {
  if (auto cached = load(k, N)) return std::move(*cached);
  auto table = delta_table(k, N);
  store(table);
  return table;
}

}  // namespace bkd

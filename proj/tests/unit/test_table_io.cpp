#include "bkd/eta_series.hpp"
#include "bkd/table_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace bkd;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  auto dir = fs::temp_directory_path() / ("bkd-test-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("csv layout") {
  std::ostringstream os;
  write_table_csv(os, delta_table(1, 3));
  CHECK(os.str() == "n,delta\n0,1\n1,3\n2,8\n3,18\n");
}

TEST_CASE("json round trip keeps digest") {
  const auto t = delta_table(2, 200);
  const auto back = table_from_json(table_to_json(t));
  CHECK(back.k() == 2);
  CHECK(back.N() == 200);
  CHECK(table_digest(back) == table_digest(t));
  CHECK(table_digest(t).size() == 64);
  CHECK(table_digest(t) != table_digest(delta_table(1, 200)));
}

TEST_CASE("cache truncates larger tables and rejects tampering") {
  const auto dir = fresh_dir("cache");
  TableCache cache(dir);
  CHECK_FALSE(cache.load(1, 50).has_value());
  const auto big = cache.get_or_build(1, 300);
  const auto small = cache.load(1, 120);
  REQUIRE(small.has_value());
  CHECK(small->N() == 120);
  CHECK(table_digest(*small) == table_digest(delta_table(1, 120)));
  CHECK_FALSE(cache.load(1, 301).has_value());
  CHECK_FALSE(cache.load(2, 10).has_value());

  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path());
    std::string text((std::istreambuf_iterator<char>(in)), {});
    in.close();
    const auto pos = text.find("\"18\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 4, "\"19\"");
    std::ofstream(e.path()) << text;
  }
  CHECK_FALSE(cache.load(1, 120).has_value());
  CHECK(cache.get_or_build(1, 120).at(3) == 18);
  fs::remove_all(dir);
  (void)big;
}

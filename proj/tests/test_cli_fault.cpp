// Linked against the library build with a deliberately wrong maxexpval
// value function, to show the CLI reports invariant failures with exit 3.

#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "bdi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = bdi::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

}  // namespace

TEST_CASE("oracle mismatch under maxexpval") {
  std::string out;
  CHECK(run({"deliberate", bdi::testing::fixture("phil.dtree"), "-p", "maxexpval", "--oracle"},
            &out) == 3);
  CHECK(out.find("oracle disagrees") != std::string::npos);
}

TEST_CASE("verify dumps the counterexample") {
  fs::path dir = fs::path(BDI_TEST_TMP) / "fault_dump";
  fs::remove_all(dir);
  CHECK(run({"verify", "--trials", "5", "--dump-dir", dir.string()}) == 3);
  REQUIRE(fs::exists(dir));
  CHECK(!fs::is_empty(dir));
}

TEST_CASE("maximin is unaffected") {
  CHECK(run({"deliberate", bdi::testing::fixture("phil.dtree"), "-p", "maximin", "--oracle"}) == 0);
}

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fdga/cli.hpp"
#include "fdga/document.hpp"

using namespace fdga;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct GoldenCase {
  const char* name;
  std::vector<std::string> args;
  int exit_code;
};

// Set FDGA_UPDATE_GOLDEN=1 to rewrite the expected files.
void check_golden(const GoldenCase& c) {
  const auto r = run(c.args);
  std::string got = r.out;
  if (!r.err.empty()) got += "--- stderr\n" + r.err;
  const std::filesystem::path path = std::filesystem::path(FDGA_GOLDEN_DIR) / (std::string(c.name) + ".txt");
  if (std::getenv("FDGA_UPDATE_GOLDEN")) {
    std::ofstream(path) << got;
  }
  INFO(c.name);
  CHECK(r.code == c.exit_code);
  REQUIRE(std::filesystem::exists(path));
  CHECK(got == read_text_file(path));
}

}  // namespace

TEST_CASE("golden transcripts") {
  const std::vector<GoldenCase> cases{
      {"validate", {"validate", "NC1", "NC1-broken", "AC2"}, kExitRefuted},
      {"validate-ok", {"validate", "NC1", "AC1", "AC2", "S1", "AN1", "EX14", "SC-AC"}, kExitOk},
      {"validate-json", {"--json", "validate", "NC1-broken"}, kExitRefuted},
      {"diff", {"diff", "NC1", "b1b2"}, kExitOk},
      {"diff-sc", {"diff", "EX14", "b1b2"}, kExitOk},
      {"nu", {"nu", "NC1", "bcbc + b1"}, kExitOk},
      {"divide", {"divide", "NC1", "cbc + bc + 3c", "--by", "c"}, kExitOk},
      {"basis", {"basis", "NC1", "--pairs", "b1:bc", "--pairs", "b2"}, kExitOk},
      {"member", {"member", "NC1", "bcbc", "--cap", "4"}, kExitOk},
      {"member-unknown", {"member", "NC1", "b", "--cap", "6"}, kExitUnknownAtCap},
      {"witness", {"witness", "NC1", "bcbc", "--cert", "NC1-cert"}, kExitOk},
      {"witness-json", {"--json", "witness", "NC1", "bcbc", "--cert", "NC1-cert"}, kExitOk},
      {"witness-bad-cert", {"witness", "NC1", "b1bc", "--cert", "NC1-cert"}, kExitPrecondition},
      {"acyclic", {"acyclic", "AC2", "--cap", "6"}, kExitOk},
      {"acyclic-unknown", {"acyclic", "NC1", "--cap", "8"}, kExitUnknownAtCap},
      {"oracle", {"oracle", "NC1", "bcbc", "--cap", "5"}, kExitOk},
      {"oracle-none", {"oracle", "NC1", "bcbc", "--cap", "4"}, kExitUnknownAtCap},
      {"oracle-sc", {"oracle", "EX14", "bcb2", "--cap", "4"}, kExitUnknownAtCap},
      {"sc-check", {"sc-check", "EX14"}, kExitOk},
      {"sc-trivial", {"sc-check", "SC-AC", "--trivial", "SC-AC-pairs"}, kExitOk},
      {"fixtures", {"fixtures", "list"}, kExitOk},
      {"show", {"fixtures", "show", "S1"}, kExitOk},
      {"parse-error", {"diff", "NC1", "b1 +"}, kExitParse},
      {"missing-file", {"diff", "no-such-document", "b"}, kExitParse},
  };
  for (const auto& c : cases) check_golden(c);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitParse);
  CHECK(run({"bogus"}).code == kExitParse);
  CHECK(run({"diff", "NC1-broken", "b1"}).code == kExitOk);
  CHECK(run({"witness", "NC1", "b1", "--cert", "NC1-cert"}).code == kExitPrecondition);
  CHECK(run({"oracle", "NC1", "b1bc", "--cap", "4"}).code == kExitPrecondition);
  CHECK(run({"diff", "EX14", "b1 + "}).code == kExitParse);
  CHECK(run({"sc-check", "NC1"}).code == kExitParse);
  CHECK(run({"fixtures", "show", "nope"}).code == kExitParse);
}

TEST_CASE("validate output does not depend on --jobs") {
  const std::vector<std::string> files{"NC1", "NC1-broken", "AC1", "AC2", "S1", "AN1", "EX14"};
  std::vector<std::string> serial{"validate"};
  serial.insert(serial.end(), files.begin(), files.end());
  auto parallel = serial;
  parallel.insert(parallel.end(), {"--jobs", "4"});
  const auto a = run(serial);
  const auto b = run(parallel);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
}

TEST_CASE("fixtures show prints the canonical document") {
  const auto r = run({"fixtures", "show", "NC1"});
  CHECK(r.code == kExitOk);
  CHECK(print_document(parse_document(r.out)) == r.out);
}

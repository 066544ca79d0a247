#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nacoh/nacoh.hpp"

using namespace nacoh;
namespace fs = std::filesystem;

namespace {

Error error_of(std::string_view text) {
  try {
    parse_instance(text);
  } catch (Error const& e) {
    return e;
  }
  FAIL("no error thrown");
  return Error(ErrorKind::ShapeMismatch, "");
}

std::string slurp(fs::path const& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path instance_dir() { return fs::path(NACOH_SOURCE_DIR) / "instances" / "catalog"; }

json without_timing(json j) {
  j.erase("timing");
  return j;
}

int cli(std::string const& args) {
  std::string cmd = std::string("\"") + NACOH_CLI + "\" " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

constexpr char minimal[] = R"({"groups": {"G": {"constructor": ["cyclic", 1]}},
 "bimodule": {"construction": "self", "G": "G"}, "task": "h1"})";

}  // namespace

TEST_CASE("syntax errors carry line and column") {
  auto e = error_of("{\n  \"groups\": {,\n}");
  CHECK(e.kind() == ErrorKind::Syntax);
  REQUIRE(e.witness().size() == 2);
  CHECK(e.witness()[0] == 2);
  CHECK(e.witness()[1] == 14);
  CHECK(std::string(e.what()).find("line 2") != std::string::npos);
}

TEST_CASE("unresolved names") {
  auto e = error_of(R"({"groups": {"G": {"constructor": ["cyclic", 2]}},
    "bimodule": {"construction": "self", "G": "H"}})");
  CHECK(e.kind() == ErrorKind::UnresolvedReference);
  auto a = error_of(R"({"groups": {"G": {"constructor": ["cyclic", 2]}},
    "actions": {"x": {"named": "trivial", "actor": "G", "target": "B"}}})");
  CHECK(a.kind() == ErrorKind::UnresolvedReference);
}

TEST_CASE("unknown constructors and tasks") {
  CHECK(error_of(R"({"groups": {"G": {"constructor": ["alternating", 4]}}})").kind() ==
        ErrorKind::UnknownConstructor);
  CHECK(error_of(R"({"groups": {"G": {"constructor": ["cyclic", 2]}}, "task": "h2"})").kind() ==
        ErrorKind::UnknownTask);
}

TEST_CASE("shape mismatches name the offending path") {
  auto e = error_of(R"({"groups": {"G": {"table": [[0, 1], [1]]}}})");
  CHECK(e.kind() == ErrorKind::ShapeMismatch);
  CHECK(std::string(e.what()).find("/groups/G") != std::string::npos);
  CHECK(error_of(R"({"groupz": {}})").kind() == ErrorKind::ShapeMismatch);
  CHECK(error_of("[1, 2]").kind() == ErrorKind::ShapeMismatch);
  CHECK(error_of(R"({"groups": {"G": {"constructor": ["cyclic", -3]}}})").kind() == ErrorKind::ShapeMismatch);
}

TEST_CASE("minimal trivial instance") {
  auto spec = parse_instance(minimal);
  auto res = run_task(spec);
  CHECK(res.exit_code == 0);
  CHECK(res.report["ok"] == true);
  CHECK(res.report["h1"]["class_count"] == 1);
  CHECK(res.report["h1"]["is_group"] == true);
  CHECK(res.report["version"] == version);
}

TEST_CASE("emit then parse round-trips every shipped instance") {
  std::size_t seen = 0;
  for (auto const& entry : fs::directory_iterator(instance_dir())) {
    if (entry.path().extension() != ".json") continue;
    INFO(entry.path().filename());
    auto spec = parse_instance(slurp(entry.path()));
    auto again = parse_instance(emit_instance(spec).dump());
    CHECK(again == spec);
    CHECK(emit_instance(again) == emit_instance(spec));
    ++seen;
  }
  CHECK(seen >= 10);
}

TEST_CASE("reports match the golden files") {
  std::size_t seen = 0;
  for (auto const& entry : fs::directory_iterator(instance_dir())) {
    if (entry.path().extension() != ".json") continue;
    auto golden = instance_dir() / "golden" / entry.path().filename();
    INFO(entry.path().filename());
    REQUIRE(fs::exists(golden));
    auto spec = parse_instance(slurp(entry.path()));
    RunOptions ro;
    ro.lattice = spec.lattice.has_value();
    auto got = without_timing(run_task(spec, ro).report);
    auto want = without_timing(json::parse(slurp(golden)));
    CHECK(got.dump(2) == want.dump(2));
    ++seen;
  }
  CHECK(seen >= 10);
}

TEST_CASE("reports do not depend on the thread count") {
  for (auto name : {"q8_central_quotient.json", "s3_aut_bimodule.json", "z2_on_z4_module.json"}) {
    auto spec = parse_instance(slurp(instance_dir() / name));
    RunOptions one, four;
    one.threads = 1;
    four.threads = 4;
    CHECK(without_timing(run_task(spec, one).report) == without_timing(run_task(spec, four).report));
  }
}

TEST_CASE("bounds turn into structured errors") {
  auto spec = parse_instance(slurp(instance_dir() / "q8_central_quotient.json"));
  RunOptions ro;
  ro.max_der = 1;
  auto res = run_task(spec, ro);
  CHECK(res.exit_code == 1);
  CHECK(res.report["ok"] == false);
  CHECK(res.report["error"]["kind"] == "TooLarge");
}

TEST_CASE("CLI exit codes") {
  auto q8 = (instance_dir() / "q8_central_quotient.json").string();
  auto lat = (instance_dir() / "z2_on_z_lattice.json").string();
  CHECK(cli("--input \"" + q8 + "\"") == 0);
  CHECK(cli("h1 --input \"" + lat + "\" --lattice --json") == 0);
  CHECK(cli("--input \"" + q8 + "\" --task classify --json") == 0);
  CHECK(cli("--input \"" + q8 + "\" --max-der 1") == 1);
  CHECK(cli("--input \"" + q8 + "\" --task nonsense") == 2);
  CHECK(cli("--input /nonexistent/file.json") == 2);
  CHECK(cli("") == 2);
  auto bad = fs::temp_directory_path() / "nacoh_bad_instance.json";
  std::ofstream(bad) << "{ \"groups\": ";
  CHECK(cli("--input \"" + bad.string() + "\"") == 2);
  fs::remove(bad);
}

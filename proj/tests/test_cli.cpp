#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded.
Run run(const std::string& args) {
  const std::string cmd = std::string(EFFGRAPH_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kMod2 = R"('{"kind":"mod-k","seed":0,"params":{"k":2}}')";
const std::string kPath = R"('{"kind":"path-graph","seed":0}')";

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(run("no-such-command").exit_code == 1);
  CHECK(run("").exit_code == 1);
  CHECK(run("ceer-graph adjacent --x 0 --y 1").exit_code == 1);
  CHECK(run("verify --suite nope").exit_code == 1);
  CHECK(run("--format svg verify --suite ''").exit_code == 1);
  CHECK(run("ceer-graph adjacent --ceer " + kMod2 + " --x 3 --y 3").exit_code == 1);
  CHECK(run("lo-code decode --order-table '[1,2' --bits 2").exit_code == 1);
}

TEST_CASE("budget exhaustion exits 2") {
  CHECK(run("ceer-graph connect --ceer " + kMod2 + " --x 0 --y 1 --budget 100").exit_code == 2);
  CHECK(run(R"(struct-code encode --structure '{"kind":"empty","seed":0}' --payload 1 --stages 2)").exit_code ==
        2);
}

TEST_CASE("failed checks exit 3") {
  const Run r = run(
      R"(struct-code trivial-check --structure '{"kind":"even-predicate","seed":0}' --target '{"kind":"odd-predicate","seed":0}' --prefix 10)");
  CHECK(r.exit_code == 3);

  const Run ok = run(
      R"(struct-code trivial-check --structure '{"kind":"even-predicate","seed":0}' --target '{"kind":"even-predicate","seed":0}' --map '{"0":0,"1":1}' --prefix 5)");
  REQUIRE(ok.exit_code == 0);
  CHECK(nlohmann::json::parse(ok.out).at("map") == nlohmann::json({0, 1, 2, 3, 4}));
}

TEST_CASE("ceer-graph") {
  const Run c = run("ceer-graph connect --ceer " + kMod2 + " --x 0 --y 4 --budget 100");
  REQUIRE(c.exit_code == 0);
  const auto j = nlohmann::json::parse(c.out);
  CHECK(j.at("z") == 6);
  CHECK(j.at("bound") == 5);

  const Run dot = run("--format dot ceer-graph adjacent --ceer " + kMod2 + " --x 0 --y 2");
  REQUIRE(dot.exit_code == 0);
  CHECK(dot.out.find("0 -- 2") != std::string::npos);

  CHECK(run("ceer-graph verify --ceer " + kMod2 + " --pairs 20 --budget 200").exit_code == 0);
}

TEST_CASE("lo-code encode then decode") {
  const Run enc = run(R"(lo-code encode --order '{"kind":"omega","seed":0}' --payload 0000 --prefix 4)");
  REQUIRE(enc.exit_code == 0);
  const auto j = nlohmann::json::parse(enc.out);
  CHECK(j.at("isomorphism") == nlohmann::json({0, 1, 3, 2}));
  const Run dec = run("lo-code decode --order-table '" + j.at("order").dump() + "' --bits 2");
  REQUIRE(dec.exit_code == 0);
  CHECK(nlohmann::json::parse(dec.out).at("stream") == "01");
  CHECK(run("lo-code verify --seeds 3 --prefix 50").exit_code == 0);
}

TEST_CASE("struct-code encode to a file and decode from it") {
  const auto dir = std::filesystem::temp_directory_path() / "effgraph_cli_test";
  std::filesystem::create_directories(dir);
  const auto file = (dir / "enc.json").string();
  REQUIRE(run("--out " + file + " struct-code encode --structure " + kPath + " --payload 10101010 --stages 8").exit_code ==
          0);
  std::ifstream in(file);
  const auto enc = nlohmann::json::parse(in);
  const auto bound = enc.at("certificate").at("max_bound").get<unsigned long long>();

  const Run dec = run("struct-code decode --table " + file + " --stages 8 --budget " + std::to_string(bound));
  REQUIRE(dec.exit_code == 0);
  const auto d = nlohmann::json::parse(dec.out);
  CHECK(d.at("payload_bits") == "1010");
  CHECK(d.at("queue") == enc.at("queue"));
  CHECK(run("struct-code decode --table " + file + " --stages 8 --budget 1").exit_code == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("ks-force encode and eval") {
  const Run enc = run(R"(ks-force encode --payload 101 --path '{"kind":"periodic","seed":0,"params":{"cycle":"1"}}' --rounds 3)");
  REQUIRE(enc.exit_code == 0);
  const auto j = nlohmann::json::parse(enc.out);
  const std::string last = j.at("chain").back().dump();
  const Run ev =
      run("ks-force eval --condition '" + last + R"(' --path '{"kind":"periodic","seed":0,"params":{"cycle":"1"}}' --depth 20)");
  REQUIRE(ev.exit_code == 0);
  CHECK(ev.out.find("\"101\"") != std::string::npos);
}

TEST_CASE("verify is deterministic") {
  const Run a = run("verify --suite all --seed 7 --instances 4");
  const Run b = run("verify --suite all --seed 7 --instances 4");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j.at("config").at("seed") == 7);
  CHECK_FALSE(j.at("results").empty());
  CHECK(run("verify --suite ''").exit_code == 0);
}

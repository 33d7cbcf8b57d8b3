#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "depjump/graph.hpp"
#include "depjump/io.hpp"

namespace fs = std::filesystem;

namespace {

struct ScratchDir {
  fs::path path = fs::temp_directory_path() / ("depjump_cli_" + std::to_string(::getpid()));
  ScratchDir() { fs::create_directories(path); }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

fs::path workdir() {
  static const ScratchDir dir;
  return dir.path;
}

std::string write_config(const std::string& name, const std::string& body) {
  const auto path = workdir() / name;
  std::ofstream(path) << body;
  return path.string();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(DEPJUMP_CLI) + " " + args + " 2>" + (workdir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string field(const std::string& csv, const std::string& key) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ",", 0) == 0) return line.substr(key.size() + 1);
  }
  return "";
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_CASE("sample") {
  const auto out = (workdir() / "k8.txt").string();
  const auto cfg = write_config("k8.json", R"({"variant":"ErdosRenyi","n":8,"p":1.0})");
  REQUIRE(run("sample --config " + cfg + " --seed 3 --out " + out) == 0);
  std::ifstream in(out);
  CHECK(depjump::read_graph(in) == depjump::Graph::complete(8));

  const auto xor_cfg = write_config("xor.json", R"({"model":{"variant":"XorBipartite","n":16,"p":0.5}})");
  const auto a = (workdir() / "xa.txt").string();
  const auto b = (workdir() / "xb.txt").string();
  REQUIRE(run("sample --config " + xor_cfg + " --seed 7 --out " + a) == 0);
  REQUIRE(run("sample --config " + xor_cfg + " --seed 7 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());

  const auto bad = write_config("eq.json", R"({"variant":"EqualityClique","n":16,"p":0.3})");
  CHECK(run("sample --config " + bad + " --seed 1") == 1);
  CHECK(slurp(workdir() / "stderr.txt").find("p must be >= 1/2") != std::string::npos);
}

TEST_CASE("usage errors exit with 1") {
  const auto cfg = write_config("er.json", R"({"variant":"ErdosRenyi","n":8,"p":0.5})");
  CHECK(run("sample --config " + cfg) == 1);
  CHECK(run("sample --config " + (workdir() / "missing.json").string() + " --seed 1") == 1);
  CHECK(run("bogus") == 1);
  const auto broken = write_config("broken.json", "{\"variant\":");
  CHECK(run("sample --config " + broken + " --seed 1") == 1);
  const auto unknown = write_config("unknown.json", R"({"variant":"Nope","n":8,"p":0.5})");
  CHECK(run("sample --config " + unknown + " --seed 1") == 1);
}

TEST_CASE("verify") {
  const auto cfg = write_config(
      "verify.json",
      R"({"model":{"variant":"ErdosRenyi","n":32,"p":0.5},"checks":["uncorrelated","janson"],"k":3,"t":0})");
  const auto out = (workdir() / "verify.csv").string();
  REQUIRE(run("verify --config " + cfg + " --seed 5 --trials 200 --out " + out) == 0);
  const auto rows = data_lines(slurp(out));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "name,analytic,empirical,pass,slack,note");
  CHECK(rows[1].rfind("uncorrelated_probability,1,1,pass", 0) == 0);
  CHECK(rows[2].rfind("janson_tail,1,", 0) == 0);
  CHECK(rows[2].find(",pass,") != std::string::npos);

  const auto bip = write_config(
      "bip.json", R"({"model":{"variant":"XorBipartite","n":64,"p":0.5},"checks":["bipartite-certainty"]})");
  REQUIRE(run("verify --config " + bip + " --seed 2 --trials 1000 --out " + out) == 0);
  CHECK(data_lines(slurp(out)).at(1).rfind("bipartite_certainty,1,1,pass", 0) == 0);

  const auto hyp = write_config(
      "hyp.json", R"({"model":{"variant":"VertexColorAnd","n":64,"p":0.5,"d":8},"checks":["uncorrelated"],"k":4})");
  REQUIRE(run("verify --config " + hyp + " --seed 2 --trials 10 --out " + out) == 0);
  CHECK(data_lines(slurp(out)).at(1).find("skipped (hypothesis)") != std::string::npos);
}

TEST_CASE("mpj") {
  const auto out = (workdir() / "mpj.csv").string();
  const auto cfg = write_config("mpj3.json", R"({"protocol":"mpj3","n":64})");
  REQUIRE(run("mpj --config " + cfg + " --seed 1 --out " + out) == 0);
  CHECK(field(slurp(out), "match") == "true");

  const auto hat = write_config("hat4.json", R"({"protocol":"mpjhat4","n":16,"k_bits":4})");
  REQUIRE(run("mpj --config " + hat + " --seed 1 --out " + out) == 0);
  CHECK(field(slurp(out), "phase2_bits") == "4");
  CHECK(field(slurp(out), "match") == "true");

  const auto empty = write_config("empty.json", R"({"protocol":"ph","n":32,"H":"empty"})");
  REQUIRE(run("mpj --config " + empty + " --seed 4 --out " + out) == 0);
  CHECK(field(slurp(out), "bits.alice") == "32");
  CHECK(field(slurp(out), "bits.bob") == "0");
  CHECK(field(slurp(out), "match") == "true");

  const auto inline_inst = write_config(
      "inline.json", R"({"protocol":"ph","H":"complete","instance":{"n":4,"i":2,"f2":[0,1,2,3],"x":"0110"}})");
  REQUIRE(run("mpj --config " + inline_inst + " --seed 1 --out " + out) == 0);
  CHECK(field(slurp(out), "output") == "1");
  CHECK(field(slurp(out), "bits.alice") == "1");
  CHECK(field(slurp(out), "bits.bob") == "4");

  const auto bad = write_config("bad.json", R"({"protocol":"mpj3","n":12})");
  CHECK(run("mpj --config " + bad + " --seed 1") == 1);
}

TEST_CASE("cost-sweep") {
  const auto cfg = write_config("sweep.json", R"({"n":[64,256],"c":[0.5,1,2]})");
  const auto out = (workdir() / "sweep.csv").string();
  REQUIRE(run("cost-sweep --config " + cfg + " --seed 3 --out " + out) == 0);
  const auto rows = data_lines(slurp(out));
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "n,c,protocol,p_H,h_valid,total_bits,normalized");
  for (std::size_t r = 1; r <= 3; ++r) CHECK(rows[r].rfind("64,", 0) == 0);
  for (std::size_t r = 4; r <= 6; ++r) CHECK(rows[r].rfind("256,", 0) == 0);
}

TEST_CASE("byte-identical re-runs") {
  const std::vector<std::pair<std::string, std::string>> runs{
      {"sample", R"({"variant":"BlockLift","n":36,"p":0.4,"d":9})"},
      {"verify", R"({"model":{"variant":"VertexColorAnd","n":256,"p":0.3,"d":8},"checks":["uncorrelated","janson","disjoint-cliques"],"k":2,"t":100,"threads":3})"},
      {"mpj", R"({"protocol":"mpjhat3","n":32})"},
      {"cost-sweep", R"({"n":[64,128],"c":[1],"protocols":["mpj3","mpjhat4"]})"},
  };
  int idx = 0;
  for (const auto& [cmd, body] : runs) {
    const auto cfg = write_config("det" + std::to_string(idx) + ".json", body);
    const auto a = (workdir() / ("det_a" + std::to_string(idx))).string();
    const auto b = (workdir() / ("det_b" + std::to_string(idx))).string();
    REQUIRE(run(cmd + " --config " + cfg + " --seed 21 --trials 50 --out " + a) == 0);
    REQUIRE(run(cmd + " --config " + cfg + " --seed 21 --trials 50 --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    ++idx;
  }
}

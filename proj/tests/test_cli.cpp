// Runs the cafp executable as a subprocess and checks streams and exit codes.
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* kExDoc = R"({"n":2,"rows":[[0,1],[-4,0]],"seq":[1,2,1]})";

fs::path workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::path(CAFP_TEST_TMP) / "cli";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = workdir() / name;
  std::ofstream(p) << text;
  return p;
}

struct Run {
  int status;
  std::string out, err;
};

Run cafp(const std::string& args, const std::string& stdin_text = "", const std::string& env = "") {
  const fs::path in = write("stdin.txt", stdin_text);
  const fs::path out = workdir() / "stdout.txt", err = workdir() / "stderr.txt";
  const std::string cmd = "cd '" + workdir().string() + "' && " + env + " '" CAFP_EXE "' " + args + " < '" +
                          in.string() + "' > '" + out.string() + "' 2> '" + err.string() + "'";
  const int raw = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(raw));
  return {WEXITSTATUS(raw), slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("trace prints only the document on stdout") {
  write("ex.json", kExDoc);
  const Run r = cafp("trace ex.json");
  CHECK(r.status == 0);
  CHECK(r.err.empty());
  const json j = json::parse(r.out);
  CHECK(j["steps"][2]["g"] == json::array({-3, 8}));
  CHECK(cafp("trace --input ex.json").out == r.out);
  CHECK(cafp("trace", kExDoc).out == r.out);
  CHECK(cafp("trace -", kExDoc).out == r.out);
}

TEST_CASE("empty sequence") {
  const Run r = cafp("trace", R"({"rows":[[0,1],[-1,0]],"seq":[]})");
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["steps"].empty());
}

TEST_CASE("exit codes for bad input") {
  const Run invalid = cafp("trace", R"({"rows":[[0,1],[1,0]],"seq":[1]})");
  CHECK(invalid.status == 3);
  CHECK(invalid.out.empty());
  CHECK_FALSE(invalid.err.empty());
  CHECK(cafp("fpoly", R"({"rows":[[0,1],[1,0]],"seq":[1]})").status == 3);
  CHECK(cafp("verify", R"({"rows":[[0,1],[1,0]],"seq":[1]})").status == 3);
  CHECK(cafp("trace", R"({"rows":[[0,1],[-1,0]],"seq":[3]})").status == 2);
  CHECK(cafp("trace", "{not json").status == 2);
  CHECK(cafp("trace missing.json").status == 2);
  CHECK(cafp("trace --bogus", kExDoc).status == 2);
  CHECK(cafp("", kExDoc).status == 2);
  CHECK(cafp("fpoly --method magic", kExDoc).status == 2);
  CHECK(cafp("fpoly --var 3", kExDoc).status == 2);
  CHECK(cafp("trace --seq 1,2", kExDoc).status == 2);
  CHECK(cafp("verify --checks bogus", kExDoc).status == 2);
  CHECK(cafp("bench").status == 2);
  CHECK(cafp("bench --kronecker 5-3").status == 2);
  const Run threads = cafp("fpoly", kExDoc, "CAFP_THREADS=abc");
  CHECK(threads.status == 2);
  CHECK(threads.out.empty());
}

TEST_CASE("help and version") {
  const Run h = cafp("--help");
  CHECK(h.status == 0);
  CHECK(h.out.find("fpoly") != std::string::npos);
  CHECK(cafp("--version").status == 0);
}

TEST_CASE("fpoly from flags") {
  write("m.txt", "0 1\n-4 0\n");
  const Run r = cafp("fpoly --matrix m.txt --seq 1,2,1 --cap 3,4 --method sum");
  CHECK(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["engines"][0]["term_count"] == 11);
  CHECK(j["cap_limited"] == true);
  write("mj.txt", "[[0,1],[-4,0]]");
  const Run all = cafp("fpoly --matrix mj.txt --seq 1,2,1");
  CHECK(all.status == 0);
  CHECK(json::parse(all.out)["verdict"] == "agree");
  CHECK(cafp("fpoly --cap 2,2 -m sum", kExDoc).status == 0);
  CHECK(cafp("fpoly --cap 2 -m sum", kExDoc).status == 2);
  CHECK(cafp("fpoly --matrix m.txt --seq 1,3").status == 2);
}

TEST_CASE("fpoly output is deterministic without --timing") {
  const Run a = cafp("fpoly", kExDoc, "CAFP_THREADS=1");
  const Run b = cafp("fpoly", kExDoc, "CAFP_THREADS=4");
  CHECK(a.out == b.out);
  CHECK(json::parse(cafp("fpoly --timing", kExDoc).out).contains("timing_ms"));
}

TEST_CASE("verify exit codes") {
  CHECK(cafp("verify", kExDoc).status == 0);
  const Run bad = cafp("verify", R"({"rows":[[0,1],[-4,0]],"seq":[1,2,1],
      "seed":{"B":[[0,-1],[4,0]],"C":[[-3,2],[-4,4]],"G":[[-3,-1],[8,3]]}})");
  CHECK(bad.status == 4);
  const json j = json::parse(bad.out);
  CHECK(j["passed"] == false);
  CHECK(j["fixture"]["failures"][0].contains("check"));
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("random verification is seeded and reproducible") {
  const Run a = cafp("verify --random --count 6 --seed 11", "", "CAFP_THREADS=1");
  const Run b = cafp("verify --random --count 6 --seed 11", "", "CAFP_THREADS=3");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.err.find("seed 11") != std::string::npos);
  CHECK(json::parse(a.out)["seed"] == 11);
  CHECK(cafp("verify --random ex.json").status == 2);
}

TEST_CASE("bench formats") {
  const Run csv = cafp("bench --kronecker 4-6 --format csv");
  CHECK(csv.status == 0);
  CHECK(csv.out.rfind("case,n,length,engine,millis,terms,coef_bits,ok\n", 0) == 0);
  std::istringstream lines(csv.out);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(lines, line)) rows += !line.empty();
  CHECK(rows == 1 + 3 * 4);
  write("ex.json", kExDoc);
  const Run js = cafp("bench ex.json --format json");
  CHECK(js.status == 0);
  CHECK(json::parse(js.out)["rows"][0]["terms"] == 11);
  CHECK(cafp("bench --kronecker 4").status == 0);
}

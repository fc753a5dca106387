#include <doctest.h>

#include <json.hpp>
#include <random>

#include "cafp/document.hpp"
#include "cafp/engines.hpp"
#include "cafp/error.hpp"
#include "cafp/verify.hpp"
#include "oracles.hpp"

using namespace cafp;
using nlohmann::json;

namespace {

const char* kExDoc = R"({"n":2,"rows":[[0,1],[-4,0]],"seq":[1,2,1]})";

ErrorKind parse_failure(const std::string& text) {
  try {
    parse_pattern_input(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("accepted: " << text);
  return ErrorKind::Overflow;
}

}  // namespace

TEST_CASE("pattern documents round-trip") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    PatternInput in;
    in.rows = oracle::random_skew(rng, 1 + trial % 4, 3);
    for (auto k : oracle::random_seq(rng, in.n(), 8)) in.seq.push_back(k + 1);
    if (trial % 2) {
      in.cap = ExponentVector(in.n());
      for (auto& x : *in.cap) x = static_cast<std::int64_t>(rng() % 6);
    }
    if (trial % 5 == 0) in.fixture = FixtureSeed{in.rows, IntMatrix::identity(in.n()), IntMatrix::identity(in.n())};
    CHECK(parse_pattern_input(render_pattern_input(in)) == in);
  }
}

TEST_CASE("term lists round-trip") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    SparsePolynomial p = SparsePolynomial::constant(n, 0);
    for (int t = 0; t < 8; ++t) {
      ExponentVector e(n);
      for (auto& x : e) x = static_cast<std::int64_t>(rng() % 5);
      Integer c(std::to_string(rng()));
      c *= Integer(std::to_string(rng()));
      p += SparsePolynomial::monomial(e, trial % 2 ? Integer(-c) : c);
    }
    const std::string text = render_terms(p);
    CHECK(parse_terms(text, n) == p);
    const json j = json::parse(text);
    for (const auto& term : j) CHECK(term["coef"].is_string());
  }
  CHECK(render_terms(SparsePolynomial::one(2)) == R"([{"exp":[0,0],"coef":"1"}])");
  CHECK_THROWS_AS(parse_terms(R"([{"exp":[0],"coef":"1"}])", 2), Error);
  CHECK_THROWS_AS(parse_terms(R"([{"exp":[0,0],"coef":"x"}])", 2), Error);
  // Sorted graded-lex, no duplicates, no zero coefficients.
  CHECK_THROWS_AS(parse_terms(R"([{"exp":[1,0],"coef":"1"},{"exp":[0,0],"coef":"1"}])", 2), Error);
  CHECK_THROWS_AS(parse_terms(R"([{"exp":[1,0],"coef":"1"},{"exp":[1,0],"coef":"1"}])", 2), Error);
  CHECK_THROWS_AS(parse_terms(R"([{"exp":[1,0],"coef":"0"}])", 2), Error);
  CHECK(parse_terms("[]", 2).is_zero());
}

TEST_CASE("malformed pattern documents are parse errors") {
  for (const char* bad : {
           "not json",
           "{}",
           R"({"rows":[[0,1],[-1,0]]})",
           R"({"rows":[[0,1]],"seq":[]})",
           R"({"rows":[[0,1],[-1,0]],"seq":[0]})",
           R"({"rows":[[0,1],[-1,0]],"seq":[3]})",
           R"({"rows":[[0,1],[-1,0]],"seq":[1.5]})",
           R"({"n":3,"rows":[[0,1],[-1,0]],"seq":[]})",
           R"({"rows":[[0,1],[-1,0]],"seq":[],"cap":[1]})",
           R"({"rows":[[0,1],[-1,0]],"seq":[],"cap":[1,-1]})",
           R"({"rows":[[0,1],[-1,0]],"seq":[],"extra":1})",
           R"({"rows":[[0,"1"],[-1,0]],"seq":[]})",
           R"({"rows":[[0,1],[-1,0]],"seq":[],"seed":{"B":[[0]]}})",
       })
    CHECK_MESSAGE(parse_failure(bad) == ErrorKind::Parse, bad);
}

TEST_CASE("matrix text and integer lists") {
  const IntMatrix m{{0, 1}, {-4, 0}};
  CHECK(parse_matrix_text("[[0,1],[-4,0]]") == m);
  CHECK(parse_matrix_text("0 1\n-4 0\n") == m);
  CHECK(parse_matrix_text("  0 1\n\n -4 0") == m);
  CHECK_THROWS_AS(parse_matrix_text("0 1\n-4"), Error);
  CHECK_THROWS_AS(parse_matrix_text("0 a\n-4 0"), Error);
  CHECK(parse_int_list("1,2,1") == std::vector<std::int64_t>{1, 2, 1});
  CHECK(parse_int_list("3") == std::vector<std::int64_t>{3});
  CHECK_THROWS_AS(parse_int_list("1,,2"), Error);
  CHECK_THROWS_AS(parse_int_list("1;2"), Error);
}

TEST_CASE("status codes") {
  CHECK(status_for(Error(ErrorKind::Parse, "")) == kStatusParse);
  CHECK(status_for(Error(ErrorKind::IndexOutOfRange, "")) == kStatusParse);
  CHECK(status_for(Error(ErrorKind::NotSkewSymmetrizable, "")) == kStatusInvalidMatrix);
  CHECK(status_for(Error(ErrorKind::SignCoherenceViolation, "")) == kStatusIdentityViolation);
  CHECK(status_for(Error(ErrorKind::NotDivisible, "")) == kStatusIdentityViolation);
  CHECK(status_for(Error(ErrorKind::CrossCheckMismatch, "")) == kStatusEngineDisagreement);
  CHECK(status_for(std::runtime_error("x")) == kStatusInternal);
}

TEST_CASE("trace document") {
  const CommandResult r = run_trace(parse_pattern_input(kExDoc));
  CHECK(r.status == kStatusOk);
  const json j = json::parse(r.document);
  CHECK(j["d"] == json::array({1, 4}));
  CHECK(j["steps"][2]["c"] == json::array({-3, -4}));
  CHECK(j["steps"][2]["g"] == json::array({-3, 8}));
  CHECK(j["steps"][1]["c_hat_plus"] == json::array({1, -4}));
  CHECK(j["E"][0] == json::array({3, 4, 1}));
  CHECK(j["A"][2] == json::array({-4, -4}));
  const json empty = json::parse(run_trace(parse_pattern_input(R"({"rows":[[0,1],[-1,0]],"seq":[]})")).document);
  CHECK(empty["steps"].empty());
  CHECK_THROWS_AS(run_trace(parse_pattern_input(R"({"rows":[[0,1],[1,0]],"seq":[1]})")), Error);
}

TEST_CASE("fpoly document and verdict") {
  const PatternInput in = parse_pattern_input(kExDoc);
  const CommandResult r = run_fpoly(in, {});
  CHECK(r.status == kStatusOk);
  const json j = json::parse(r.document);
  CHECK(j["verdict"] == "agree");
  CHECK(j["cap"] == json::array({3, 4}));
  CHECK(j["cap_limited"] == true);
  REQUIRE(j["engines"].size() == 4);
  for (const auto& e : j["engines"]) {
    CHECK(e["ok"] == true);
    CHECK(e["term_count"] == 11);
    CHECK(e["terms"] == j["engines"][0]["terms"]);
  }
  CHECK_FALSE(j.contains("timing_ms"));
  // Byte-identical reruns; wall times appear only on request.
  CHECK(run_fpoly(in, {}).document == r.document);
  FpolyOptions timed;
  timed.timing = true;
  CHECK(json::parse(run_fpoly(in, timed).document).contains("timing_ms"));
  for (std::size_t k = 1; k <= 3; ++k) {
    PatternInput single;
    single.rows = IntMatrix{{0, 1, 0}, {-1, 0, 2}, {0, -1, 0}};
    single.seq = {k};
    FpolyOptions o;
    o.method = "recurrence";
    const json s = json::parse(run_fpoly(single, o).document);
    CHECK(s["engines"][0]["text"] == "1 + y" + std::to_string(k));
    CHECK_FALSE(s.contains("verdict"));
  }
  FpolyOptions bad;
  bad.method = "magic";
  CHECK_THROWS_AS(run_fpoly(in, bad), Error);
}

TEST_CASE("engine names") {
  for (const Engine e : kAllEngines) CHECK(parse_engine(to_string(e)) == e);
  CHECK_THROWS_AS(parse_engine("nope"), Error);
}

TEST_CASE("cross-check on the Kronecker pattern") {
  const PatternInput k = kronecker_input(2, 8);
  CHECK(k.seq == std::vector<std::size_t>{1, 2, 1, 2, 1, 2, 1, 2});
  for (const bool parallel : {false, true}) {
    CrossCheckOptions o;
    o.parallel = parallel;
    const CrossCheckReport r = cross_check_engines(k.rows, k.directions(), o);
    CHECK(r.agree);
    CHECK(r.runs.size() == 4);
    CHECK(r.find(Engine::Sum)->f.size() == 37);
  }
}

TEST_CASE("verify documents") {
  const PatternInput in = parse_pattern_input(kExDoc);
  const CommandResult ok = run_verify(in, kSuiteAll);
  CHECK(ok.status == kStatusOk);
  const json j = json::parse(ok.document);
  CHECK(j["passed"] == true);
  CHECK(j["seeds"] == 4);
  CHECK(j["checks_run"].get<int>() > 0);

  // Stored seed from the end of the sequence, with one C entry corrupted.
  PatternInput bad = in;
  bad.fixture = FixtureSeed{IntMatrix{{0, -1}, {4, 0}}, IntMatrix{{-3, 2}, {-4, 3}}, IntMatrix{{-3, -1}, {8, 3}}};
  CHECK(run_verify(bad, kSuiteAll).status == kStatusOk);
  bad.fixture->c(1, 1) = 4;
  const CommandResult r = run_verify(bad, kSuiteAll);
  CHECK(r.status == kStatusIdentityViolation);
  const json f = json::parse(r.document);
  CHECK(f["passed"] == false);
  bool named = false;
  for (const auto& failure : f["fixture"]["failures"]) named = named || failure["check"] == "first_duality";
  CHECK(named);
}

TEST_CASE("suite names") {
  CHECK(parse_suites("all") == kSuiteAll);
  CHECK(parse_suites("dualities,tildec") == (kSuiteDualities | kSuiteTildeC));
  CHECK_THROWS_AS(parse_suites("dualities,bogus"), Error);
  CHECK_THROWS_AS(parse_suites(""), Error);
}

TEST_CASE("random batches are reproducible and independent of thread count") {
  RandomVerifyOptions o;
  o.seed = 9;
  o.count = 12;
  o.patterns.max_volume = 100000;
  o.suites = kSuiteAll;
  o.threads = 1;
  const CommandResult one = run_verify_random(o);
  o.threads = 4;
  const CommandResult four = run_verify_random(o);
  CHECK(one.document == four.document);
  CHECK(one.status == kStatusOk);
  const json j = json::parse(one.document);
  CHECK(j["seed"] == 9);
  CHECK(j["cases"].size() == 12);
  o.seed = 10;
  CHECK(run_verify_random(o).document != one.document);
}

TEST_CASE("bench tables") {
  const std::vector<BenchCase> cases{{"ex", parse_pattern_input(kExDoc)},
                                     {"empty", parse_pattern_input(R"({"rows":[[0,1],[-1,0]],"seq":[]})")}};
  const CommandResult csv = run_bench(cases, BenchFormat::Csv);
  CHECK(csv.document.rfind("case,n,length,engine,millis,terms,coef_bits,ok\n", 0) == 0);
  const json j = json::parse(run_bench(cases, BenchFormat::Json).document);
  for (const auto& row : j["rows"]) {
    CHECK(row["ok"] == true);
    CHECK(row["terms"] == (row["case"] == "ex" ? 11 : 1));
  }
  std::vector<BenchCase> kron;
  for (std::size_t len = 4; len <= 10; ++len) kron.push_back({std::to_string(len), kronecker_input(2, len)});
  const json kj = json::parse(run_bench(kron, BenchFormat::Json).document);
  std::int64_t last = 0;
  for (const auto& row : kj["rows"]) {
    if (row["engine"] != "recurrence") continue;
    CHECK(row["terms"].get<std::int64_t>() > last);
    last = row["terms"].get<std::int64_t>();
  }
  CHECK(last == 56);
  CHECK(run_bench(cases, BenchFormat::Text).document.find("recurrence") != std::string::npos);
}

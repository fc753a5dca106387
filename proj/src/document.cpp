#include "cafp/document.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "cafp/engines.hpp"
#include "cafp/error.hpp"
#include "cafp/trace.hpp"
#include "cafp/verify.hpp"

namespace cafp {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

std::int64_t as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) parse_error(where + ": integer expected");
  return v.get<std::int64_t>();
}

IntMatrix matrix_from_json(const json& v, const std::string& where) {
  if (!v.is_array()) parse_error(where + ": array of rows expected");
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& r : v) {
    if (!r.is_array()) parse_error(where + ": each row must be an array");
    std::vector<std::int64_t> row;
    for (const auto& x : r) row.push_back(as_int(x, where));
    rows.push_back(std::move(row));
  }
  for (const auto& r : rows)
    if (r.size() != rows.size()) parse_error(where + ": matrix must be square");
  return IntMatrix::from_rows(rows);
}

ordered_json matrix_json(const IntMatrix& m) { return m.to_rows(); }

ordered_json vec_json(const ExponentVector& v) { return std::vector<std::int64_t>(v.begin(), v.end()); }

ordered_json terms_json(const SparsePolynomial& p) {
  ordered_json terms = ordered_json::array();
  for (const auto& t : p.terms())
    terms.push_back({{"exp", vec_json(t.exponent)}, {"coef", t.coefficient.get_str()}});
  return terms;
}

ordered_json input_json(const PatternInput& in) {
  ordered_json j;
  j["n"] = in.n();
  j["rows"] = matrix_json(in.rows);
  j["seq"] = in.seq;
  if (in.cap) j["cap"] = vec_json(*in.cap);
  if (in.fixture) j["seed"] = {{"B", matrix_json(in.fixture->b)}, {"C", matrix_json(in.fixture->c)},
                               {"G", matrix_json(in.fixture->g)}};
  return j;
}

ordered_json d_json(const IntMatrix& b0) { return skew_symmetrizer(b0).values(); }

ordered_json failures_json(const VerifyResult& r) {
  ordered_json out = ordered_json::array();
  for (const auto& f : r.failures) {
    ordered_json j{{"suite", f.suite}, {"check", f.check}};
    if (f.seed >= 0) j["seed"] = f.seed;
    j["detail"] = f.detail;
    out.push_back(std::move(j));
  }
  return out;
}

ordered_json suites_json(unsigned suites) {
  ordered_json out = ordered_json::array();
  for (VerifySuite s : {kSuiteDualities, kSuiteSignCoherence, kSuiteEngines, kSuiteInvolution, kSuiteTildeC})
    if (suites & s) out.push_back(suite_name(s));
  return out;
}

// Resolves skew-symmetrizability up front so it maps to its own status.
void require_skew_symmetrizable(const PatternInput& in) { skew_symmetrizer(in.rows); }

}  // namespace

std::vector<std::size_t> PatternInput::directions() const {
  std::vector<std::size_t> out;
  out.reserve(seq.size());
  for (auto k : seq) out.push_back(k - 1);
  return out;
}

void validate_pattern_input(const PatternInput& in) {
  if (!in.rows.is_square()) parse_error("rows: matrix must be square");
  if (in.n() == 0) parse_error("rows: rank must be positive");
  for (auto k : in.seq)
    if (k < 1 || k > in.n())
      parse_error("seq: direction " + std::to_string(k) + " outside 1.." + std::to_string(in.n()));
  if (in.cap) {
    if (in.cap->size() != in.n()) parse_error("cap: length must be n");
    if (!in.cap->is_nonnegative()) parse_error("cap: entries must be nonnegative");
  }
  if (in.fixture) {
    for (const IntMatrix* m : {&in.fixture->b, &in.fixture->c, &in.fixture->g})
      if (m->rows() != in.n() || m->cols() != in.n()) parse_error("seed: B, C and G must be n x n");
  }
}

PatternInput parse_pattern_input(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parse_error(std::string("input is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_error("input must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "n" && key != "rows" && key != "seq" && key != "cap" && key != "seed")
      parse_error("unknown field '" + key + "'");
  if (!doc.contains("rows")) parse_error("missing field 'rows'");

  PatternInput in;
  in.rows = matrix_from_json(doc["rows"], "rows");
  if (doc.contains("n") && as_int(doc["n"], "n") != static_cast<std::int64_t>(in.n()))
    parse_error("n does not match the number of rows");
  if (!doc.contains("seq") || !doc["seq"].is_array()) parse_error("seq: array expected");
  for (const auto& x : doc["seq"]) {
    const std::int64_t k = as_int(x, "seq");
    if (k < 1) parse_error("seq: directions are 1-based");
    in.seq.push_back(static_cast<std::size_t>(k));
  }
  if (doc.contains("cap")) {
    if (!doc["cap"].is_array()) parse_error("cap: array expected");
    ExponentVector cap(doc["cap"].size());
    for (std::size_t i = 0; i < cap.size(); ++i) cap[i] = as_int(doc["cap"][i], "cap");
    in.cap = std::move(cap);
  }
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (!s.is_object() || !s.contains("B") || !s.contains("C") || !s.contains("G"))
      parse_error("seed: object with B, C and G expected");
    in.fixture = FixtureSeed{matrix_from_json(s["B"], "seed.B"), matrix_from_json(s["C"], "seed.C"),
                             matrix_from_json(s["G"], "seed.G")};
  }
  validate_pattern_input(in);
  return in;
}

std::string render_pattern_input(const PatternInput& input) { return dump(input_json(input)); }

IntMatrix parse_matrix_text(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    try {
      return matrix_from_json(json::parse(text), "matrix");
    } catch (const json::exception& e) {
      parse_error(std::string("matrix is not valid JSON: ") + e.what());
    }
  }
  std::vector<std::vector<std::int64_t>> rows;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::vector<std::int64_t> row;
    std::string cell;
    while (cells >> cell) {
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size()) parse_error("matrix: '" + cell + "' is not an integer");
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_error("matrix: no rows");
  for (const auto& r : rows)
    if (r.size() != rows.size()) parse_error("matrix must be square");
  return IntMatrix::from_rows(rows);
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  if (text.find_first_not_of(" \t") == std::string_view::npos) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string item(text.substr(pos, comma - pos));
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) parse_error("'" + item + "' is not an integer");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::string render_terms(const SparsePolynomial& p) { return terms_json(p).dump(); }

SparsePolynomial parse_terms(std::string_view text, std::size_t nvars) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parse_error(std::string("term list is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) parse_error("term list must be an array");
  std::vector<Term> terms;
  for (const auto& t : doc) {
    if (!t.is_object() || !t.contains("exp") || !t.contains("coef") || !t["exp"].is_array() ||
        !t["coef"].is_string())
      parse_error("term must be {\"exp\": [...], \"coef\": \"...\"}");
    if (t["exp"].size() != nvars) parse_error("term exponent has the wrong length");
    ExponentVector e(nvars);
    for (std::size_t i = 0; i < nvars; ++i) e[i] = as_int(t["exp"][i], "exp");
    Integer c;
    if (c.set_str(t["coef"].get<std::string>(), 10) != 0) parse_error("coef is not a decimal integer");
    if (c == 0) parse_error("zero coefficient in term list");
    if (!terms.empty() && !GradedLexLess{}(terms.back().exponent, e))
      parse_error("term list is not strictly increasing in graded-lex order");
    terms.push_back({std::move(e), std::move(c)});
  }
  return SparsePolynomial::from_terms(nvars, std::move(terms));
}

Status status_for(const std::exception& e) noexcept {
  const auto* err = dynamic_cast<const Error*>(&e);
  if (!err) return kStatusInternal;
  switch (err->kind()) {
    case ErrorKind::Parse:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::LengthMismatch: return kStatusParse;
    case ErrorKind::NotSkewSymmetrizable: return kStatusInvalidMatrix;
    case ErrorKind::NotDivisible:
    case ErrorKind::DenominatorVanishes:
    case ErrorKind::SignCoherenceViolation:
    case ErrorKind::ZeroVector:
    case ErrorKind::IntegralityViolation:
    case ErrorKind::ResidualX:
    case ErrorKind::DivisionByZero: return kStatusIdentityViolation;
    case ErrorKind::CrossCheckMismatch: return kStatusEngineDisagreement;
    case ErrorKind::Overflow: return kStatusInternal;
  }
  return kStatusInternal;
}

CommandResult run_trace(const PatternInput& input) {
  require_skew_symmetrizable(input);
  const MutationTrace trace = build_trace(input.rows, input.directions(), false);
  ordered_json doc;
  doc["input"] = input_json(input);
  doc["d"] = trace.d().values();
  ordered_json steps = ordered_json::array();
  for (std::size_t j = 0; j < trace.length(); ++j) {
    const auto& st = trace.step(j);
    steps.push_back({{"step", j + 1},
                     {"direction", st.direction + 1},
                     {"c", vec_json(st.data.c)},
                     {"epsilon", st.data.epsilon},
                     {"c_plus", vec_json(st.data.c_plus)},
                     {"c_hat_plus", vec_json(st.data.c_hat_plus)},
                     {"g", vec_json(st.g)}});
  }
  doc["steps"] = std::move(steps);
  const SeedState& last = trace.final_seed();
  doc["final"] = {{"B", matrix_json(last.b())}, {"C", matrix_json(last.c())}, {"G", matrix_json(last.g())}};
  doc["E"] = trace.e_table();
  doc["A"] = trace.a_table();
  return {dump(doc), kStatusOk};
}

CommandResult run_fpoly(const PatternInput& input, const FpolyOptions& options) {
  require_skew_symmetrizable(input);
  CrossCheckOptions cc;
  if (options.method != "all") cc.engines = {parse_engine(options.method)};
  if (options.variable) {
    if (*options.variable < 1 || *options.variable > input.n())
      parse_error("variable " + std::to_string(*options.variable) + " outside 1.." + std::to_string(input.n()));
    cc.var = *options.variable - 1;
  }
  cc.cap = input.cap;
  cc.parallel = options.parallel;
  const auto dirs = input.directions();
  const CrossCheckReport report = cross_check_engines(input.rows, dirs, cc);

  ordered_json doc;
  doc["input"] = input_json(input);
  doc["d"] = d_json(input.rows);
  doc["variable"] = report.var + 1;
  doc["method"] = options.method;
  const bool uses_sum = std::find(cc.engines.begin(), cc.engines.end(), Engine::Sum) != cc.engines.end();
  if (uses_sum) {
    doc["cap"] = vec_json(report.cap);
    doc["cap_limited"] = report.cap_limited;
  }
  ordered_json engines = ordered_json::array();
  Status status = kStatusOk;
  for (const auto& run : report.runs) {
    ordered_json e{{"engine", to_string(run.engine)}, {"ok", run.ok}};
    if (run.ok) {
      e["text"] = to_string(run.f, y_names(input.n()));
      e["term_count"] = run.f.size();
      e["terms"] = terms_json(run.f);
    } else {
      e["error"] = run.error;
    }
    engines.push_back(std::move(e));
  }
  doc["engines"] = std::move(engines);
  if (options.method == "all") {
    doc["verdict"] = report.agree ? "agree" : "disagree";
    if (!report.agree) {
      doc["detail"] = report.detail;
      status = kStatusEngineDisagreement;
    }
  } else if (!report.runs.empty() && !report.runs.front().ok) {
    doc["detail"] = report.runs.front().error;
    status = kStatusIdentityViolation;
  }
  if (options.timing) {
    ordered_json t;
    for (const auto& run : report.runs) t[to_string(run.engine)] = run.millis;
    doc["timing_ms"] = std::move(t);
  }
  return {dump(doc), status};
}

CommandResult run_verify(const PatternInput& input, unsigned suites) {
  require_skew_symmetrizable(input);
  const VerifyResult r = verify_pattern(input.rows, input.directions(), suites);
  ordered_json doc;
  doc["input"] = input_json(input);
  doc["checks"] = suites_json(suites);
  bool passed = r.passed();
  doc["seeds"] = r.seeds;
  doc["checks_run"] = r.checks;
  doc["failures"] = failures_json(r);
  if (input.fixture) {
    const VerifyResult f = verify_fixture(input.rows, input.fixture->b, input.fixture->c, input.fixture->g, suites);
    doc["fixture"] = {{"passed", f.passed()}, {"checks_run", f.checks}, {"failures", failures_json(f)}};
    passed = passed && f.passed();
  }
  doc["passed"] = passed;
  return {dump(doc), passed ? kStatusOk : kStatusIdentityViolation};
}

CommandResult run_verify_random(const RandomVerifyOptions& options) {
  const auto cases = verify_random(options.seed, options.count, options.patterns, options.suites, options.threads);
  ordered_json doc;
  doc["seed"] = options.seed;
  doc["count"] = options.count;
  doc["bounds"] = {{"min_n", options.patterns.min_n},
                   {"max_n", options.patterns.max_n},
                   {"max_entry", options.patterns.max_entry},
                   {"max_len", options.patterns.max_len},
                   {"max_volume", options.patterns.max_volume}};
  doc["checks"] = suites_json(options.suites);
  std::size_t failed = 0;
  ordered_json list = ordered_json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    if (!c.result.passed()) ++failed;
    std::vector<std::size_t> seq;
    for (auto k : c.pattern.seq) seq.push_back(k + 1);
    list.push_back({{"index", i},
                    {"rows", matrix_json(c.pattern.b0)},
                    {"seq", seq},
                    {"passed", c.result.passed()},
                    {"seeds", c.result.seeds},
                    {"checks_run", c.result.checks},
                    {"failures", failures_json(c.result)}});
  }
  doc["passed"] = failed == 0;
  doc["cases_passed"] = cases.size() - failed;
  doc["cases_failed"] = failed;
  doc["cases"] = std::move(list);
  return {dump(doc), failed == 0 ? kStatusOk : kStatusIdentityViolation};
}

PatternInput kronecker_input(std::int64_t r, std::size_t length) {
  PatternInput in;
  in.rows = IntMatrix{{0, r}, {-r, 0}};
  for (std::size_t k = 0; k < length; ++k) in.seq.push_back(k % 2 + 1);
  return in;
}

CommandResult run_bench(const std::vector<BenchCase>& cases, BenchFormat format, unsigned repeats) {
  struct Row {
    std::string label;
    std::size_t n, length;
    std::string engine;
    double millis;
    std::size_t terms, bits;
    bool ok;
  };
  std::vector<Row> rows;
  Status status = kStatusOk;
  for (const auto& bc : cases) {
    require_skew_symmetrizable(bc.input);
    const auto dirs = bc.input.directions();
    CrossCheckOptions cc;
    cc.cap = bc.input.cap;
    std::vector<double> best(std::size(kAllEngines), std::numeric_limits<double>::infinity());
    CrossCheckReport report;
    for (unsigned r = 0; r < std::max(1u, repeats); ++r) {
      report = cross_check_engines(bc.input.rows, dirs, cc);
      for (std::size_t e = 0; e < report.runs.size(); ++e) best[e] = std::min(best[e], report.runs[e].millis);
    }
    if (!report.agree) status = kStatusEngineDisagreement;
    for (std::size_t e = 0; e < report.runs.size(); ++e) {
      const auto& run = report.runs[e];
      rows.push_back({bc.label, bc.input.n(), bc.input.seq.size(), to_string(run.engine), best[e],
                      run.ok ? run.f.size() : 0, run.ok ? run.f.max_coefficient_bits() : 0, run.ok});
    }
  }

  std::ostringstream os;
  if (format == BenchFormat::Json) {
    ordered_json list = ordered_json::array();
    for (const auto& r : rows)
      list.push_back({{"case", r.label}, {"n", r.n}, {"length", r.length}, {"engine", r.engine},
                      {"millis", r.millis}, {"terms", r.terms}, {"coef_bits", r.bits}, {"ok", r.ok}});
    os << dump(ordered_json{{"rows", list}});
  } else if (format == BenchFormat::Csv) {
    os << "case,n,length,engine,millis,terms,coef_bits,ok\n";
    for (const auto& r : rows)
      os << r.label << ',' << r.n << ',' << r.length << ',' << r.engine << ',' << std::fixed << std::setprecision(3)
         << r.millis << ',' << r.terms << ',' << r.bits << ',' << (r.ok ? "true" : "false") << '\n';
  } else {
    std::size_t w = 4;
    for (const auto& r : rows) w = std::max(w, r.label.size());
    os << std::left << std::setw(static_cast<int>(w)) << "case" << "  " << std::right << std::setw(2) << "n"
       << std::setw(7) << "length" << "  " << std::left << std::setw(10) << "engine" << std::right << std::setw(12)
       << "millis" << std::setw(8) << "terms" << std::setw(10) << "coef_bits" << '\n';
    for (const auto& r : rows)
      os << std::left << std::setw(static_cast<int>(w)) << r.label << "  " << std::right << std::setw(2) << r.n
         << std::setw(7) << r.length << "  " << std::left << std::setw(10) << r.engine << std::right
         << std::setw(12) << std::fixed << std::setprecision(3) << r.millis << std::setw(8) << r.terms
         << std::setw(10) << r.bits << (r.ok ? "" : "  FAILED") << '\n';
  }
  return {os.str(), status};
}

}  // namespace cafp

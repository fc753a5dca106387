#include "cafp/cafp.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "cafp/document.hpp"
#include "cafp/error.hpp"
#include "cafp/verify.hpp"

struct cafp_pattern {
  cafp::PatternInput input;
};

namespace {

thread_local std::string last_error;

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

cafp_status fail(cafp_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs f, translating exceptions into a status and the thread's last error.
template <class F>
cafp_status wrap(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const std::bad_alloc&) {
    return fail(CAFP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(static_cast<cafp_status>(cafp::status_for(e)), e.what());
  }
}

cafp_status emit(const cafp::CommandResult& r, char** out) {
  *out = copy_out(r.document);
  if (!*out) return fail(CAFP_ERR_INTERNAL, "out of memory");
  if (r.status != cafp::kStatusOk) last_error = "command reported a failure; see the document";
  return static_cast<cafp_status>(r.status);
}

}  // namespace

extern "C" {

const char* cafp_version(void) { return "0.1.0"; }

const char* cafp_last_error(void) { return last_error.c_str(); }

void cafp_string_free(char* s) { std::free(s); }

cafp_status cafp_pattern_from_json(const char* json, cafp_pattern** out) {
  if (!json || !out) return fail(CAFP_ERR_PARSE, "null argument");
  *out = nullptr;
  return wrap([&] {
    *out = new cafp_pattern{cafp::parse_pattern_input(json)};
    return CAFP_OK;
  });
}

cafp_status cafp_pattern_create(size_t n, const int64_t* rows, const size_t* seq, size_t len, cafp_pattern** out) {
  if (!out || (n > 0 && !rows) || (len > 0 && !seq)) return fail(CAFP_ERR_PARSE, "null argument");
  *out = nullptr;
  return wrap([&] {
    cafp::PatternInput in;
    in.rows = cafp::IntMatrix(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) in.rows(i, j) = rows[i * n + j];
    in.seq.assign(seq, seq + len);
    cafp::validate_pattern_input(in);
    *out = new cafp_pattern{std::move(in)};
    return CAFP_OK;
  });
}

cafp_status cafp_pattern_from_parts(const char* matrix_text, const char* seq, const char* cap,
                                    cafp_pattern** out) {
  if (!matrix_text || !out) return fail(CAFP_ERR_PARSE, "null argument");
  *out = nullptr;
  return wrap([&] {
    cafp::PatternInput in;
    in.rows = cafp::parse_matrix_text(matrix_text);
    if (seq && *seq) {
      for (const std::int64_t k : cafp::parse_int_list(seq)) {
        if (k < 1) throw cafp::Error(cafp::ErrorKind::Parse, "directions are 1-based");
        in.seq.push_back(static_cast<std::size_t>(k));
      }
    }
    if (cap && *cap) {
      const auto values = cafp::parse_int_list(cap);
      in.cap = cafp::ExponentVector(values.size());
      for (std::size_t i = 0; i < values.size(); ++i) (*in.cap)[i] = values[i];
    }
    cafp::validate_pattern_input(in);
    *out = new cafp_pattern{std::move(in)};
    return CAFP_OK;
  });
}

cafp_status cafp_pattern_kronecker(int64_t r, size_t length, cafp_pattern** out) {
  if (!out) return fail(CAFP_ERR_PARSE, "null argument");
  *out = nullptr;
  return wrap([&] {
    *out = new cafp_pattern{cafp::kronecker_input(r, length)};
    return CAFP_OK;
  });
}

cafp_status cafp_pattern_set_cap(cafp_pattern* p, const int64_t* cap) {
  if (!p) return fail(CAFP_ERR_PARSE, "null pattern");
  return wrap([&] {
    if (!cap) {
      p->input.cap.reset();
      return CAFP_OK;
    }
    cafp::PatternInput next = p->input;
    next.cap = cafp::ExponentVector(p->input.n());
    for (size_t i = 0; i < p->input.n(); ++i) (*next.cap)[i] = cap[i];
    cafp::validate_pattern_input(next);
    p->input = std::move(next);
    return CAFP_OK;
  });
}

cafp_status cafp_pattern_rank(const cafp_pattern* p, size_t* out) {
  if (!p || !out) return fail(CAFP_ERR_PARSE, "null argument");
  last_error.clear();
  *out = p->input.n();
  return CAFP_OK;
}

cafp_status cafp_pattern_to_json(const cafp_pattern* p, char** out) {
  if (!p || !out) return fail(CAFP_ERR_PARSE, "null argument");
  *out = nullptr;
  return wrap([&] { return emit({cafp::render_pattern_input(p->input), cafp::kStatusOk}, out); });
}

void cafp_pattern_free(cafp_pattern* p) { delete p; }

cafp_status cafp_trace(const cafp_pattern* p, char** out) {
  if (!p || !out) return fail(CAFP_ERR_PARSE, "null argument");
  *out = nullptr;
  return wrap([&] { return emit(cafp::run_trace(p->input), out); });
}

cafp_status cafp_fpoly(const cafp_pattern* p, const char* method, size_t variable, unsigned flags, char** out) {
  if (!p || !out) return fail(CAFP_ERR_PARSE, "null argument");
  *out = nullptr;
  return wrap([&] {
    cafp::FpolyOptions o;
    if (method) o.method = method;
    if (variable != 0) o.variable = variable;
    o.timing = flags & CAFP_FPOLY_TIMING;
    o.parallel = flags & CAFP_FPOLY_PARALLEL;
    return emit(cafp::run_fpoly(p->input, o), out);
  });
}

cafp_status cafp_parse_checks(const char* list, unsigned* out) {
  if (!list || !out) return fail(CAFP_ERR_PARSE, "null argument");
  return wrap([&] {
    *out = cafp::parse_suites(list);
    return CAFP_OK;
  });
}

cafp_status cafp_verify(const cafp_pattern* p, unsigned checks, char** out) {
  if (!p || !out) return fail(CAFP_ERR_PARSE, "null argument");
  *out = nullptr;
  return wrap([&] { return emit(cafp::run_verify(p->input, checks), out); });
}

void cafp_random_options_default(cafp_random_options* opts) {
  if (!opts) return;
  const cafp::RandomPatternOptions d;
  opts->seed = 1;
  opts->count = 50;
  opts->min_n = d.min_n;
  opts->max_n = d.max_n;
  opts->max_entry = d.max_entry;
  opts->max_len = d.max_len;
  opts->max_volume = 100000;
  opts->checks = CAFP_CHECK_ALL;
  opts->threads = 1;
}

cafp_status cafp_verify_random(const cafp_random_options* opts, char** out) {
  if (!opts || !out) return fail(CAFP_ERR_PARSE, "null argument");
  *out = nullptr;
  return wrap([&] {
    if (opts->min_n == 0 || opts->min_n > opts->max_n) return fail(CAFP_ERR_PARSE, "invalid rank range");
    if (opts->max_entry < 0) return fail(CAFP_ERR_PARSE, "max_entry must be nonnegative");
    cafp::RandomVerifyOptions o;
    o.seed = opts->seed;
    o.count = opts->count;
    o.patterns.min_n = opts->min_n;
    o.patterns.max_n = opts->max_n;
    o.patterns.max_entry = opts->max_entry;
    o.patterns.max_len = opts->max_len;
    o.patterns.max_volume = opts->max_volume;
    o.suites = opts->checks;
    o.threads = opts->threads;
    return emit(cafp::run_verify_random(o), out);
  });
}

cafp_status cafp_bench(const cafp_pattern* const* patterns, const char* const* labels, size_t count,
                       cafp_bench_format format, unsigned repeats, char** out) {
  if (!out || (count > 0 && !patterns)) return fail(CAFP_ERR_PARSE, "null argument");
  *out = nullptr;
  return wrap([&] {
    std::vector<cafp::BenchCase> cases;
    for (size_t i = 0; i < count; ++i) {
      if (!patterns[i]) return fail(CAFP_ERR_PARSE, "null pattern");
      cases.push_back({labels && labels[i] ? labels[i] : std::to_string(i + 1), patterns[i]->input});
    }
    const auto f = format == CAFP_BENCH_CSV    ? cafp::BenchFormat::Csv
                   : format == CAFP_BENCH_JSON ? cafp::BenchFormat::Json
                                               : cafp::BenchFormat::Text;
    return emit(cafp::run_bench(cases, f, repeats), out);
  });
}

}  // extern "C"

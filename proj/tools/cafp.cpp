// Command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cafp/cafp.h"

namespace {

struct PatternDeleter {
  void operator()(cafp_pattern* p) const noexcept { cafp_pattern_free(p); }
};
using Pattern = std::unique_ptr<cafp_pattern, PatternDeleter>;

// Nonzero status from a C call before any document exists.
struct Failure {
  int status;
  std::string message;
};

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{CAFP_ERR_PARSE, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check(cafp_status s) {
  if (s != CAFP_OK) throw Failure{s, cafp_last_error()};
}

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    try {
      out.push_back(std::stoll(item, &pos));
    } catch (const std::logic_error&) {
      pos = std::string::npos;
    }
    if (pos != item.size()) throw Failure{CAFP_ERR_PARSE, "bad integer list '" + text + "'"};
  }
  return out;
}

struct InputFlags {
  std::string input;
  std::string matrix;
  std::string seq;
  std::string cap;

  void attach(CLI::App* cmd) {
    cmd->add_option("input,--input,-i", input, "Input document (JSON); '-' or omitted reads stdin");
    cmd->add_option("--matrix", matrix, "Exchange matrix file: JSON rows or whitespace-separated rows");
    cmd->add_option("--seq", seq, "Mutation sequence, 1-based, e.g. 1,2,1");
    cmd->add_option("--cap", cap, "Summation cap, e.g. 3,4");
  }

  Pattern load() const {
    cafp_pattern* raw = nullptr;
    if (!matrix.empty()) {
      if (!input.empty()) throw Failure{CAFP_ERR_PARSE, "--matrix and an input document are exclusive"};
      const std::string text = read_source(matrix);
      check(cafp_pattern_from_parts(text.c_str(), seq.c_str(), cap.c_str(), &raw));
      return Pattern(raw);
    }
    if (!seq.empty()) throw Failure{CAFP_ERR_PARSE, "--seq requires --matrix"};
    const std::string text = read_source(input.empty() ? "-" : input);
    check(cafp_pattern_from_json(text.c_str(), &raw));
    Pattern p(raw);
    if (!cap.empty()) {
      const std::vector<std::int64_t> values = parse_list(cap);
      std::size_t n = 0;
      check(cafp_pattern_rank(p.get(), &n));
      if (values.size() != n) throw Failure{CAFP_ERR_PARSE, "--cap needs " + std::to_string(n) + " entries"};
      check(cafp_pattern_set_cap(p.get(), values.data()));
    }
    return p;
  }
};

unsigned thread_budget() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CAFP_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || cap == 0) throw Failure{CAFP_ERR_PARSE, "CAFP_THREADS must be a positive integer"};
    n = std::min<unsigned long>(n, cap);
  }
  return n;
}

// Prints a document produced by the library and converts its status to an
// exit code. Documents go to stdout even when the status is nonzero.
int deliver(cafp_status s, char* doc) {
  if (doc) {
    std::cout << doc;
    if (*doc && doc[std::char_traits<char>::length(doc) - 1] != '\n') std::cout << '\n';
    cafp_string_free(doc);
  }
  std::cout.flush();
  if (s != CAFP_OK) std::cerr << "cafp: " << cafp_last_error() << '\n';
  return s;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dash = text.find('-');
  try {
    std::size_t pos = 0;
    if (dash == std::string::npos) {
      const std::size_t v = std::stoul(text, &pos);
      if (pos != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::size_t lo = std::stoul(text.substr(0, dash), &pos);
    if (pos != dash) throw std::invalid_argument(text);
    const std::string hi_text = text.substr(dash + 1);
    const std::size_t hi = std::stoul(hi_text, &pos);
    if (pos != hi_text.size() || hi < lo) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw Failure{CAFP_ERR_PARSE, "bad length range '" + text + "' (expected N or LO-HI)"};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"F-polynomials of skew-symmetrizable cluster patterns with principal coefficients"};
  app.set_version_flag("--version", std::string(cafp_version()));
  app.require_subcommand(1);

  InputFlags trace_in, fpoly_in, verify_in;

  auto* trace = app.add_subcommand("trace", "Mutation data along the sequence");
  trace_in.attach(trace);

  auto* fpoly = app.add_subcommand("fpoly", "F-polynomial by one engine or all four");
  fpoly_in.attach(fpoly);
  std::string method = "all";
  std::size_t variable = 0;
  bool timing = false;
  fpoly->add_option("--method,-m", method, "recurrence|product|sum|fg|all")
      ->check(CLI::IsMember({"recurrence", "product", "sum", "fg", "all"}));
  fpoly->add_option("--var,-v", variable, "1-based variable index (default: last direction)");
  fpoly->add_flag("--timing", timing, "Include per-engine wall times");

  auto* verify = app.add_subcommand("verify", "Invariant suites along the sequence, or a random batch");
  verify_in.attach(verify);
  std::string checks = "all";
  bool random = false;
  cafp_random_options ropts;
  cafp_random_options_default(&ropts);
  verify->add_option("--checks", checks, "all, or a comma list of dualities,signcoherence,engines,involution,tildec");
  verify->add_flag("--random", random, "Verify a seeded batch of random patterns instead of an input");
  verify->add_option("--seed", ropts.seed, "RNG seed for --random")->capture_default_str();
  verify->add_option("--count", ropts.count, "Number of random patterns")->capture_default_str();
  verify->add_option("--min-n", ropts.min_n, "Smallest rank")->capture_default_str();
  verify->add_option("--max-n", ropts.max_n, "Largest rank")->capture_default_str();
  verify->add_option("--max-entry", ropts.max_entry, "Bound on |b_ij|")->capture_default_str();
  verify->add_option("--max-len", ropts.max_len, "Longest sequence")->capture_default_str();
  verify->add_option("--max-volume", ropts.max_volume, "Reject patterns whose F-polynomial boxes exceed this (0: none)")
      ->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Per-engine timing and term counts");
  std::vector<std::string> bench_inputs;
  std::string kronecker;
  std::int64_t kronecker_rank = 2;
  std::string format = "text";
  unsigned repeats = 1;
  bench->add_option("inputs", bench_inputs, "Input documents");
  bench->add_option("--kronecker", kronecker, "Kronecker lengths, N or LO-HI");
  bench->add_option("--kronecker-entry", kronecker_rank, "r in [[0,r],[-r,0]]")->capture_default_str();
  bench->add_option("--format,-f", format, "text|csv|json")->check(CLI::IsMember({"text", "csv", "json"}));
  bench->add_option("--repeats", repeats, "Runs per case; the minimum time is reported")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return CAFP_ERR_PARSE;
  }

  try {
    char* doc = nullptr;
    if (*trace) {
      const Pattern p = trace_in.load();
      const cafp_status s = cafp_trace(p.get(), &doc);
      return deliver(s, doc);
    }
    if (*fpoly) {
      const Pattern p = fpoly_in.load();
      const unsigned flags = (timing ? CAFP_FPOLY_TIMING : 0u) | (thread_budget() > 1 ? CAFP_FPOLY_PARALLEL : 0u);
      const cafp_status s = cafp_fpoly(p.get(), method.c_str(), variable, flags, &doc);
      return deliver(s, doc);
    }
    if (*verify) {
      unsigned suites = 0;
      check(cafp_parse_checks(checks.c_str(), &suites));
      if (random) {
        if (!verify_in.input.empty() || !verify_in.matrix.empty())
          throw Failure{CAFP_ERR_PARSE, "--random takes no input pattern"};
        ropts.checks = suites;
        ropts.threads = thread_budget();
        std::cerr << "cafp: random batch seed " << ropts.seed << '\n';
        const cafp_status s = cafp_verify_random(&ropts, &doc);
        return deliver(s, doc);
      }
      const Pattern p = verify_in.load();
      const cafp_status s = cafp_verify(p.get(), suites, &doc);
      return deliver(s, doc);
    }
    if (*bench) {
      std::vector<Pattern> owned;
      std::vector<std::string> labels;
      for (const auto& path : bench_inputs) {
        const std::string text = read_source(path);
        cafp_pattern* raw = nullptr;
        check(cafp_pattern_from_json(text.c_str(), &raw));
        owned.emplace_back(raw);
        labels.push_back(path);
      }
      if (!kronecker.empty()) {
        const auto [lo, hi] = parse_range(kronecker);
        for (std::size_t len = lo; len <= hi; ++len) {
          cafp_pattern* raw = nullptr;
          check(cafp_pattern_kronecker(kronecker_rank, len, &raw));
          owned.emplace_back(raw);
          labels.push_back("kronecker" + std::to_string(kronecker_rank) + "-" + std::to_string(len));
        }
      }
      if (owned.empty()) throw Failure{CAFP_ERR_PARSE, "bench needs input documents or --kronecker"};
      std::vector<const cafp_pattern*> ptrs;
      std::vector<const char*> label_ptrs;
      for (std::size_t i = 0; i < owned.size(); ++i) {
        ptrs.push_back(owned[i].get());
        label_ptrs.push_back(labels[i].c_str());
      }
      const cafp_bench_format f = format == "csv" ? CAFP_BENCH_CSV : format == "json" ? CAFP_BENCH_JSON : CAFP_BENCH_TEXT;
      const cafp_status s = cafp_bench(ptrs.data(), label_ptrs.data(), ptrs.size(), f, repeats, &doc);
      return deliver(s, doc);
    }
  } catch (const Failure& f) {
    std::cerr << "cafp: " << f.message << '\n';
    return f.status;
  } catch (const std::exception& e) {
    std::cerr << "cafp: " << e.what() << '\n';
    return CAFP_ERR_INTERNAL;
  }
  return CAFP_ERR_INTERNAL;
}

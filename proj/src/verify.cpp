#include "cafp/verify.hpp"

#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include "cafp/error.hpp"
#include "cafp/fock_goncharov.hpp"
#include "cafp/gupta.hpp"

namespace cafp {

namespace {

constexpr VerifySuite kSuites[] = {kSuiteDualities, kSuiteSignCoherence, kSuiteEngines, kSuiteInvolution,
                                   kSuiteTildeC};

class Recorder {
 public:
  Recorder(VerifyResult& out, VerifySuite suite) : out_(out), suite_(suite_name(suite)) {}

  void check(std::string name, bool ok, std::ptrdiff_t seed, std::string detail = {}) {
    ++out_.checks;
    if (!ok) out_.failures.push_back({suite_, std::move(name), seed, std::move(detail)});
  }

  // Runs f; an exception counts as a failure of `name`.
  template <class F>
  void guard(const std::string& name, std::ptrdiff_t seed, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      check(name, false, seed, e.what());
    }
  }

 private:
  VerifyResult& out_;
  std::string suite_;
};

void seed_checks(const SeedState& s, std::ptrdiff_t j, unsigned suites, VerifyResult& out) {
  const VerificationReport rep = verify_seed(s);
  auto take = [&](VerifySuite suite, const char* name) {
    if (!(suites & suite)) return;
    if (const CheckResult* r = rep.find(name)) Recorder(out, suite).check(name, r->passed, j, r->detail);
  };
  take(kSuiteSignCoherence, "sign_coherence");
  take(kSuiteDualities, "first_duality");
  take(kSuiteDualities, "second_duality");
  take(kSuiteDualities, "skew_symmetrizer");
  take(kSuiteDualities, "chat_plus");
  take(kSuiteEngines, "f_constant_term");
}

ExponentVector random_vector(std::mt19937_64& rng, std::size_t n, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
  ExponentVector v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace

const char* suite_name(VerifySuite s) {
  switch (s) {
    case kSuiteDualities: return "dualities";
    case kSuiteSignCoherence: return "signcoherence";
    case kSuiteEngines: return "engines";
    case kSuiteInvolution: return "involution";
    case kSuiteTildeC: return "tildec";
    default: return "?";
  }
}

unsigned parse_suites(std::string_view list) {
  if (list == "all") return kSuiteAll;
  unsigned out = 0;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    const std::string_view name = list.substr(pos, comma - pos);
    bool found = false;
    for (VerifySuite s : kSuites) {
      if (name == suite_name(s)) {
        out |= s;
        found = true;
      }
    }
    if (!found) throw Error(ErrorKind::Parse, "unknown check suite '" + std::string(name) + "'");
    pos = comma + 1;
  }
  return out;
}

VerifyResult verify_pattern(const IntMatrix& b0, std::span<const std::size_t> seq, unsigned suites,
                            std::uint64_t rng_seed) {
  VerifyResult out;
  const bool need_f = suites & kSuiteEngines;
  MutationTrace trace;
  try {
    trace = build_trace(b0, seq, need_f);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotSkewSymmetrizable || e.kind() == ErrorKind::IndexOutOfRange) throw;
    // Every other failure while building the trace is a violated identity:
    // sign-coherence, integrality of E/A, or an inexact F-update.
    const VerifySuite suite = e.kind() == ErrorKind::SignCoherenceViolation ? kSuiteSignCoherence
                              : e.kind() == ErrorKind::IntegralityViolation ? kSuiteEngines
                                                                            : kSuiteDualities;
    Recorder(out, suite).check(to_string(e.kind()), false, -1, e.what());
    return out;
  }

  const auto& seeds = trace.seeds();
  out.seeds = seeds.size();
  for (std::size_t j = 0; j < seeds.size(); ++j) seed_checks(seeds[j], static_cast<std::ptrdiff_t>(j), suites, out);

  if (suites & kSuiteEngines) {
    Recorder rec(out, kSuiteEngines);
    const std::size_t n = trace.rank();
    const auto last = static_cast<std::ptrdiff_t>(trace.length());
    rec.guard("cross_check", last, [&] {
      const CrossCheckReport r = cross_check_engines(b0, seq);
      rec.check("cross_check", r.agree, last, r.detail);
    });
    for (std::size_t i = 0; i < n; ++i) {
      rec.guard("per_variable_product", last, [&] {
        const SparsePolynomial f = f_product(trace, i);
        rec.check("per_variable_product", f == trace.final_seed().f(i), last,
                  f == trace.final_seed().f(i) ? "" : "variable " + std::to_string(i + 1));
      });
    }
    if (!trace.empty()) {
      const std::size_t l = trace.length() - 1;
      std::string detail;
      for (std::size_t i = 0; i < n && detail.empty(); ++i) {
        const std::int64_t want = i == trace.last_direction() ? 1 : 0;
        if (trace.e(i, l) != want)
          detail = "E[" + std::to_string(i + 1) + "][last] = " + std::to_string(trace.e(i, l));
      }
      rec.check("delta_pairing", detail.empty(), last, detail);
    }
  }

  if (suites & kSuiteInvolution) {
    Recorder rec(out, kSuiteInvolution);
    const auto dirs = trace.directions();
    for (std::size_t j = 0; j < seeds.size(); ++j) {
      // F is carried only through neighbours on the path; an off-path neighbour
      // can have F-polynomials far larger than anything along the sequence.
      const SeedState bare(seeds[j].b0(), seeds[j].d(), seeds[j].b(), seeds[j].c(), seeds[j].g(), {});
      for (std::size_t k = 0; k < trace.rank(); ++k) {
        const bool on_path = (j > 0 && dirs[j - 1] == k) || (j < dirs.size() && dirs[j] == k);
        const SeedState& s = on_path ? seeds[j] : bare;
        rec.guard("double_mutation", static_cast<std::ptrdiff_t>(j), [&] {
          const bool ok = mutate_seed(mutate_seed(s, k), k) == s;
          rec.check("double_mutation", ok, static_cast<std::ptrdiff_t>(j),
                    ok ? "" : "direction " + std::to_string(k + 1));
        });
      }
    }
    std::mt19937_64 rng(rng_seed);
    const auto steps = q_steps(trace);
    for (const QStep& st : steps) {
      const auto j = static_cast<std::ptrdiff_t>(st.index + 1);
      for (int trial = 0; trial < 3; ++trial) {
        const ExponentVector m = random_vector(rng, trace.rank(), 3);
        rec.guard("q_reversal", j, [&] {
          const RationalFunction x = RationalFunction(x_monomial(m));
          const bool ok = equivalent(q_apply(st.reversed(), q_apply(st, x)), x);
          std::ostringstream os;
          if (!ok) os << "monomial x^" << m;
          rec.check("q_reversal", ok, j, os.str());
        });
      }
    }
  }

  if (suites & kSuiteTildeC) {
    Recorder rec(out, kSuiteTildeC);
    rec.guard("tilde_c", -1, [&] {
      tilde_c(trace);
      rec.check("tilde_c", true, -1);
    });
  }
  return out;
}

VerifyResult verify_fixture(const IntMatrix& b0, const IntMatrix& b, const IntMatrix& c, const IntMatrix& g,
                            unsigned suites) {
  const SkewSymmetrizer d = skew_symmetrizer(b0);
  const SeedState s(b0, d, b, c, g, {});
  VerifyResult out;
  out.seeds = 1;
  seed_checks(s, 0, suites & (kSuiteDualities | kSuiteSignCoherence), out);
  return out;
}

std::vector<BatchCase> verify_random(std::uint64_t seed, std::size_t count, const RandomPatternOptions& options,
                                     unsigned suites, unsigned threads) {
  std::mt19937_64 rng(seed);
  std::vector<BatchCase> cases(count);
  for (auto& c : cases) c.pattern = random_pattern(rng, options);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cases.size();) {
      auto& c = cases[i];
      try {
        c.result = verify_pattern(c.pattern.b0, c.pattern.seq, suites, seed + i);
      } catch (const std::exception& e) {
        c.result.failures.push_back({"internal", "exception", -1, e.what()});
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, count))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return cases;
}

}  // namespace cafp

#include "cafp/engines.hpp"

#include <chrono>
#include <future>
#include <sstream>

#include "cafp/error.hpp"
#include "cafp/fock_goncharov.hpp"
#include "cafp/gupta.hpp"

namespace cafp {

const char* to_string(Engine e) {
  switch (e) {
    case Engine::Recurrence: return "recurrence";
    case Engine::Product: return "product";
    case Engine::Sum: return "sum";
    case Engine::FockGoncharov: return "fg";
  }
  return "?";
}

Engine parse_engine(std::string_view name) {
  for (Engine e : kAllEngines)
    if (name == to_string(e)) return e;
  throw Error(ErrorKind::Parse, "unknown engine '" + std::string(name) + "'");
}

const EngineRun* CrossCheckReport::find(Engine e) const {
  for (const auto& r : runs)
    if (r.engine == e) return &r;
  return nullptr;
}

SparsePolynomial run_engine(Engine e, const MutationTrace& trace, std::size_t var, const ExponentVector& cap) {
  if (var >= trace.rank()) throw Error(ErrorKind::IndexOutOfRange, "variable " + std::to_string(var + 1));
  switch (e) {
    case Engine::Recurrence:
      if (!trace.tracks_f()) throw Error(ErrorKind::LengthMismatch, "trace does not carry F-polynomials");
      return trace.final_seed().f(var);
    case Engine::Product: return f_product(trace, var);
    case Engine::Sum: return f_sum(trace, var, cap).poly;
    case Engine::FockGoncharov: return q_composite_f(trace, var);
  }
  throw Error(ErrorKind::Parse, "unknown engine");
}

namespace {

EngineRun timed(Engine e, const MutationTrace& trace, std::size_t var, const ExponentVector& cap,
                bool* cap_limited = nullptr) {
  EngineRun run;
  run.engine = e;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (e == Engine::Sum) {
      SumResult s = f_sum(trace, var, cap);
      if (cap_limited) *cap_limited = s.cap_limited;
      run.f = std::move(s.poly);
    } else {
      run.f = run_engine(e, trace, var, cap);
    }
    run.ok = true;
  } catch (const std::exception& ex) {
    run.error = ex.what();
  }
  run.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace

CrossCheckReport cross_check_engines(const IntMatrix& b0, std::span<const std::size_t> seq,
                                     const CrossCheckOptions& options) {
  const SkewSymmetrizer d = skew_symmetrizer(b0);
  const MutationTrace trace = build_trace(b0, d, seq, false);
  CrossCheckReport report;
  report.var = options.var.value_or(trace.last_direction());
  if (report.var >= trace.rank())
    throw Error(ErrorKind::IndexOutOfRange, "variable " + std::to_string(report.var + 1));

  const auto wants = [&](Engine e) {
    return std::find(options.engines.begin(), options.engines.end(), e) != options.engines.end();
  };
  const auto launch = [&](Engine e) {
    return std::async(options.parallel ? std::launch::async : std::launch::deferred,
                      [&trace, &report, e] { return timed(e, trace, report.var, {}); });
  };

  std::vector<std::pair<Engine, std::future<EngineRun>>> pending;
  for (Engine e : {Engine::Product, Engine::FockGoncharov})
    if (wants(e)) pending.emplace_back(e, launch(e));

  std::optional<EngineRun> recurrence;
  if (wants(Engine::Recurrence) || !options.cap) {
    const auto start = std::chrono::steady_clock::now();
    recurrence = EngineRun{};
    recurrence->engine = Engine::Recurrence;
    try {
      recurrence->f = build_trace(b0, d, seq, true).final_seed().f(report.var);
      recurrence->ok = true;
    } catch (const std::exception& ex) {
      recurrence->error = ex.what();
    }
    recurrence->millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  if (options.cap) {
    report.cap = *options.cap;
  } else if (recurrence->ok) {
    report.cap = recurrence->f.degree_vector();
  }

  std::optional<EngineRun> sum;
  if (wants(Engine::Sum)) {
    if (options.cap || recurrence->ok) {
      sum = timed(Engine::Sum, trace, report.var, report.cap, &report.cap_limited);
    } else {
      sum = EngineRun{Engine::Sum, {}, 0, false, "no cap: the recurrence engine failed"};
    }
  }

  for (Engine e : options.engines) {
    if (e == Engine::Recurrence) report.runs.push_back(*recurrence);
    else if (e == Engine::Sum) report.runs.push_back(*sum);
    else
      for (auto& [pe, fut] : pending)
        if (pe == e && fut.valid()) report.runs.push_back(fut.get());
  }

  report.agree = !report.runs.empty();
  for (const auto& r : report.runs) {
    if (!r.ok) {
      report.agree = false;
      if (report.detail.empty()) report.detail = std::string(to_string(r.engine)) + " failed: " + r.error;
    } else if (r.f != report.runs.front().f && report.runs.front().ok) {
      report.agree = false;
      if (report.detail.empty()) {
        std::ostringstream os;
        os << to_string(r.engine) << " differs from " << to_string(report.runs.front().engine) << ": " << r.f
           << " vs " << report.runs.front().f;
        report.detail = os.str();
      }
    }
  }
  return report;
}

}  // namespace cafp

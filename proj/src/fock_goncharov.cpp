#include "cafp/fock_goncharov.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cafp/error.hpp"
#include "checked.hpp"

namespace cafp {

namespace {

ExponentVector x_part(const ExponentVector& e, std::size_t n) {
  ExponentVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = e[i];
  return v;
}

// Image of a Laurent polynomial under one step as poly * U^shift, with the
// terms grouped by exponent and recombined by Horner's rule in U.
std::pair<SparsePolynomial, std::int64_t> push_through(const QStep& step, const SparsePolynomial& p,
                                                       const SparsePolynomial& unit) {
  const std::size_t n = step.pre_c.size();
  std::map<std::int64_t, std::vector<Term>> groups;
  for (const auto& t : p.terms()) groups[q_exponent(step, x_part(t.exponent, n))].push_back(t);
  if (groups.empty()) return {p, 0};

  const std::int64_t lo = groups.begin()->first;
  SparsePolynomial acc(p.nvars());
  std::int64_t prev = groups.rbegin()->first;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    if (prev != it->first) acc *= unit.pow(static_cast<std::uint64_t>(prev - it->first));
    acc += SparsePolynomial::from_terms(p.nvars(), std::move(it->second));
    prev = it->first;
  }
  if (prev != lo) acc *= unit.pow(static_cast<std::uint64_t>(prev - lo));
  return {std::move(acc), lo};
}

RationalFunction with_unit_power(SparsePolynomial p, const SparsePolynomial& unit, std::int64_t e) {
  if (e >= 0) return RationalFunction(p * unit.pow(static_cast<std::uint64_t>(e)));
  return RationalFunction(std::move(p), unit.pow(static_cast<std::uint64_t>(-e)));
}

// Divides each element by the later, smaller ones while that is exact, moving
// exponent onto the divisor; drops elements left with exponent zero. The
// product prod basis^exps is unchanged.
void refine(std::vector<SparsePolynomial>& basis, std::vector<std::int64_t>& exps) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (exps[i] == 0) continue;
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (basis[j].size() > basis[i].size() || basis[j].is_monomial()) continue;
      while (auto q = try_exact_div(basis[i], basis[j])) {
        basis[i] = std::move(*q);
        exps[j] = checked::add(exps[j], exps[i]);
      }
    }
  }
  std::size_t out = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (exps[i] == 0 || basis[i].is_one()) continue;
    if (out != i) {
      basis[out] = std::move(basis[i]);
      exps[out] = exps[i];
    }
    ++out;
  }
  basis.resize(out);
  exps.resize(out);
}

}  // namespace

QStep QStep::reversed() const {
  QStep r = *this;
  r.pre_c = -pre_c;
  return r;
}

std::vector<QStep> q_steps(const MutationTrace& trace) {
  std::vector<QStep> out;
  out.reserve(trace.length());
  for (std::size_t j = 0; j < trace.length(); ++j) {
    const auto& st = trace.step(j);
    out.push_back({j, st.direction, -st.data.c, st.data.c_plus, st.data.c_hat_plus, trace.d()[st.direction],
                   trace.d()});
  }
  return out;
}

std::int64_t q_exponent(const QStep& step, const ExponentVector& m) {
  return -integral_inner_product_D(m, step.pre_c, step.d, step.d_dir);
}

std::int64_t q_yhat_exponent(const QStep& step, const ExponentVector& n) {
  // B0 c = epsilon * chat^+, epsilon being the sign of c.
  const ExponentVector pre_c_hat = tropical_sign(step.pre_c) * step.c_hat_plus;
  return integral_inner_product_D(n, pre_c_hat, step.d, step.d_dir);
}

SparsePolynomial yhat_monomial(const ExponentVector& n, const IntMatrix& b0) {
  return hat_substitute(SparsePolynomial::monomial(n), b0);
}

SparsePolynomial q_unit(const QStep& step) {
  const std::size_t n = step.c_plus.size();
  ExponentVector e(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = step.c_hat_plus[i];
    e[n + i] = step.c_plus[i];
  }
  return SparsePolynomial::one(2 * n) + SparsePolynomial::monomial(std::move(e));
}

RationalFunction q_apply_monomial(const QStep& step, const ExponentVector& m) {
  return with_unit_power(x_monomial(m), q_unit(step), q_exponent(step, m));
}

RationalFunction q_apply_yhat(const QStep& step, const ExponentVector& n, const IntMatrix& b0) {
  return with_unit_power(yhat_monomial(n, b0), q_unit(step), q_yhat_exponent(step, n));
}

RationalFunction q_apply(const QStep& step, const RationalFunction& f) {
  if (f.nvars() != 2 * step.pre_c.size()) throw Error(ErrorKind::LengthMismatch, "mixed alphabet expected");
  const SparsePolynomial unit = q_unit(step);
  auto [num, sn] = push_through(step, f.num(), unit);
  auto [den, sd] = push_through(step, f.den(), unit);
  const std::int64_t s = checked::add(sn, -sd);
  if (s >= 0) return RationalFunction(num * unit.pow(static_cast<std::uint64_t>(s)), std::move(den));
  return RationalFunction(std::move(num), den * unit.pow(static_cast<std::uint64_t>(-s)));
}

RationalFunction q_composite(const MutationTrace& trace, std::size_t upto, const RationalFunction& f) {
  if (upto > trace.length()) throw Error(ErrorKind::IndexOutOfRange, "composite beyond the trace");
  const auto steps = q_steps(trace);
  RationalFunction acc = f;
  for (std::size_t j = upto; j-- > 0;) acc = q_apply(steps[j], acc);
  return acc;
}

SparsePolynomial collect_yhat(const SparsePolynomial& mixed, const IntMatrix& b0) {
  const std::size_t n = b0.rows();
  if (mixed.nvars() != 2 * n) throw Error(ErrorKind::LengthMismatch, "mixed alphabet expected");
  std::vector<Term> terms;
  terms.reserve(mixed.size());
  for (const auto& t : mixed.terms()) {
    ExponentVector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = t.exponent[n + i];
    const ExponentVector expected = b0.apply(y);
    for (std::size_t i = 0; i < n; ++i) {
      if (t.exponent[i] != expected[i]) {
        std::ostringstream os;
        os << "term with y-exponent " << y << " carries x-exponent " << x_part(t.exponent, n) << ", expected "
           << expected;
        throw Error(ErrorKind::ResidualX, os.str());
      }
    }
    terms.push_back({std::move(y), t.coefficient});
  }
  return SparsePolynomial::from_terms(n, std::move(terms));
}

SparsePolynomial q_composite_f(const MutationTrace& trace, std::size_t var) {
  const std::size_t n = trace.rank();
  if (var >= n) throw Error(ErrorKind::IndexOutOfRange, "variable " + std::to_string(var + 1));
  const ExponentVector g = trace.g_end().column(var);
  const auto steps = q_steps(trace);

  // Invariant: the composite so far maps x^g to x^g prod_i basis[i]^exps[i].
  std::vector<SparsePolynomial> basis;
  std::vector<std::int64_t> exps;
  for (std::size_t j = steps.size(); j-- > 0;) {
    const QStep& st = steps[j];
    const SparsePolynomial unit = q_unit(st);
    std::int64_t unit_exp = q_exponent(st, g);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto [img, shift] = push_through(st, basis[i], unit);
      basis[i] = std::move(img);
      unit_exp = checked::add(unit_exp, checked::mul(exps[i], shift));
    }
    basis.push_back(unit);
    exps.push_back(unit_exp);
    refine(basis, exps);
  }

  std::vector<std::uint64_t> up(basis.size()), down(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    up[i] = static_cast<std::uint64_t>(checked::pos(exps[i]));
    down[i] = static_cast<std::uint64_t>(checked::pos(-exps[i]));
  }
  const SparsePolynomial num = product_of_powers(basis, up, 2 * n);
  const SparsePolynomial den = product_of_powers(basis, down, 2 * n);
  return collect_yhat(laurent_exact_div(num, den), trace.b0());
}

}  // namespace cafp

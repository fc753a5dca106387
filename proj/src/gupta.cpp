#include "cafp/gupta.hpp"

#include <map>
#include <sstream>
#include <unordered_map>

#include "cafp/error.hpp"
#include "checked.hpp"

namespace cafp {

namespace {

std::pair<SparsePolynomial, SparsePolynomial> split_powers(const std::vector<SparsePolynomial>& basis,
                                                           std::span<const std::int64_t> e, std::size_t nvars) {
  std::vector<std::uint64_t> up(e.size()), down(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    up[i] = static_cast<std::uint64_t>(checked::pos(e[i]));
    down[i] = static_cast<std::uint64_t>(checked::pos(-e[i]));
  }
  std::span<const SparsePolynomial> b(basis.data(), e.size());
  return {product_of_powers(b, up, nvars), product_of_powers(b, down, nvars)};
}

}  // namespace

RationalFunction LFactorChain::factor(std::size_t k) const {
  auto [num, den] = split_powers(basis_, exps_.at(k), nvars_);
  return RationalFunction(std::move(num), std::move(den));
}

std::vector<std::int64_t> LFactorChain::combine(std::span<const std::int64_t> h) const {
  if (h.size() != basis_.size()) throw Error(ErrorKind::LengthMismatch, "one exponent per L-factor expected");
  std::vector<std::int64_t> total(basis_.size(), 0);
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (h[j] == 0) continue;
    for (std::size_t i = 0; i < exps_[j].size(); ++i)
      total[i] = checked::add(total[i], checked::mul(h[j], exps_[j][i]));
  }
  return total;
}

RationalFunction LFactorChain::product(std::span<const std::int64_t> h) const {
  const auto e = combine(h);
  auto [num, den] = split_powers(basis_, e, nvars_);
  return RationalFunction(std::move(num), std::move(den));
}

LFactorChain l_factors(const MutationTrace& trace) {
  LFactorChain chain;
  const std::size_t n = trace.rank();
  chain.nvars_ = n;
  for (std::size_t k = 0; k < trace.length(); ++k) {
    std::vector<std::int64_t> beta(k, 0);
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t a = trace.a(k, j);
      if (a == 0) continue;
      for (std::size_t i = 0; i < chain.exps_[j].size(); ++i)
        beta[i] = checked::add(beta[i], checked::mul(a, chain.exps_[j][i]));
    }
    auto [num, den] = split_powers(chain.basis_, beta, n);
    // L_k = 1 + z_k num/den = (den + z_k num) / den
    SparsePolynomial residual = den + num.shifted(trace.step(k).data.c_plus);
    std::vector<std::int64_t> exps(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) exps[i] = -checked::pos(-beta[i]);
    // Refine: strip earlier basis elements out of the new numerator so the
    // basis stays small and products keep cancelling syntactically.
    for (std::size_t i = k; i-- > 0;) {
      const SparsePolynomial& base = chain.basis_[i];
      if (base.is_one() || base.size() > residual.size()) continue;
      while (auto q = try_exact_div(residual, base)) {
        residual = std::move(*q);
        ++exps[i];
      }
    }
    exps[k] = 1;
    chain.basis_.push_back(std::move(residual));
    chain.exps_.push_back(std::move(exps));
  }
  return chain;
}

std::vector<RationalFunction> l_factors_unreduced(const MutationTrace& trace) {
  const std::size_t n = trace.rank();
  std::vector<RationalFunction> out;
  for (std::size_t k = 0; k < trace.length(); ++k) {
    RationalFunction acc(SparsePolynomial::monomial(trace.step(k).data.c_plus));
    for (std::size_t j = 0; j < k; ++j) acc = frac_pow_mul(acc, out[j], trace.a(k, j));
    out.push_back(RationalFunction::one(n) + acc);
  }
  return out;
}

SparsePolynomial f_product(const MutationTrace& trace, std::size_t var) {
  if (var >= trace.rank()) throw Error(ErrorKind::IndexOutOfRange, "variable " + std::to_string(var + 1));
  const LFactorChain chain = l_factors(trace);
  return frac_to_polynomial(chain.product(trace.e_table()[var]));
}

namespace {

// Depth-first enumeration of (m_1..m_l) from m_l down to m_1. At level j the
// upper argument h_j + sum_{k>j} m_k A[k][j] is already fixed, so a
// nonnegative upper argument bounds m_j (the binomial vanishes beyond it) and
// the remaining cap bounds m_j through c_j^+.
class TupleEnumerator {
 public:
  TupleEnumerator(const MutationTrace& trace, std::span<const std::int64_t> h, const ExponentVector& cap)
      : trace_(trace), h_(h.begin(), h.end()), remaining_(cap), shift_(h.size(), 0), m_(h.size(), 0),
        coef_(h.size() + 1) {
    if (h.size() != trace.length()) throw Error(ErrorKind::LengthMismatch, "one exponent per step expected");
    if (cap.size() != trace.rank()) throw Error(ErrorKind::LengthMismatch, "cap length differs from rank");
    if (!cap.is_nonnegative()) throw Error(ErrorKind::LengthMismatch, "cap must be nonnegative");
  }

  // visit(m, exponent, coefficient) is called for every tuple within the cap
  // with nonzero coefficient.
  template <class Visit>
  void run(Visit&& visit) {
    coef_[h_.size()] = 1;
    descend(static_cast<std::ptrdiff_t>(h_.size()) - 1, visit);
  }

  bool cap_limited() const noexcept { return cap_limited_; }
  std::uint64_t tuples() const noexcept { return tuples_; }
  const ExponentVector& cap_used() const noexcept { return used_; }

 private:
  template <class Visit>
  void descend(std::ptrdiff_t level, Visit& visit) {
    if (level < 0) {
      ++tuples_;
      visit(m_, coef_[0]);
      return;
    }
    const auto j = static_cast<std::size_t>(level);
    const ExponentVector& cp = trace_.step(j).data.c_plus;
    const std::int64_t upper = checked::add(h_[j], shift_[j]);

    std::int64_t budget = std::numeric_limits<std::int64_t>::max();
    for (std::size_t v = 0; v < cp.size(); ++v)
      if (cp[v] > 0) budget = std::min(budget, remaining_[v] / cp[v]);
    std::int64_t limit = budget;
    if (upper >= 0) limit = std::min(limit, upper);
    if (upper < 0 || upper > budget) cap_limited_ = true;

    Integer binom = 1;  // binom(upper, m)
    for (std::int64_t m = 0; m <= limit; ++m) {
      if (m > 0) {
        binom *= upper - (m - 1);
        mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(m));
        remaining_ -= cp;
        for (std::size_t i = 0; i < j; ++i) shift_[i] = checked::add(shift_[i], trace_.a(j, i));
      }
      m_[j] = static_cast<std::uint64_t>(m);
      mpz_mul(coef_[j].get_mpz_t(), coef_[j + 1].get_mpz_t(), binom.get_mpz_t());
      descend(level - 1, visit);
    }
    if (limit > 0) {
      remaining_ += limit * cp;
      for (std::size_t i = 0; i < j; ++i) shift_[i] = checked::add(shift_[i], -checked::mul(limit, trace_.a(j, i)));
    }
    m_[j] = 0;
  }

  const MutationTrace& trace_;
  std::vector<std::int64_t> h_;
  ExponentVector remaining_;
  std::vector<std::int64_t> shift_;
  std::vector<std::uint64_t> m_;
  std::vector<Integer> coef_;
  ExponentVector used_;
  bool cap_limited_ = false;
  std::uint64_t tuples_ = 0;
};

ExponentVector tuple_exponent(const MutationTrace& trace, const std::vector<std::uint64_t>& m) {
  ExponentVector e(trace.rank());
  for (std::size_t j = 0; j < m.size(); ++j)
    if (m[j] != 0) e += static_cast<Exponent>(m[j]) * trace.step(j).data.c_plus;
  return e;
}

// Dense accumulator over the cap box when it is small, hash map otherwise.
class CapAccumulator {
 public:
  explicit CapAccumulator(const ExponentVector& cap) : cap_(cap) {
    unsigned __int128 vol = 1;
    for (std::size_t v = cap.size(); v-- > 0;) {
      stride_.insert(stride_.begin(), static_cast<std::uint64_t>(vol));
      vol *= static_cast<unsigned __int128>(cap[v]) + 1;
      if (vol > (1u << 22)) break;
    }
    if (vol <= (1u << 22) && stride_.size() == cap.size()) dense_.resize(static_cast<std::size_t>(vol));
  }

  void add(const ExponentVector& e, const Integer& c) {
    if (!dense_.empty()) {
      std::uint64_t k = 0;
      for (std::size_t v = 0; v < e.size(); ++v) k += static_cast<std::uint64_t>(e[v]) * stride_[v];
      dense_[k] += c;
    } else {
      sparse_[e] += c;
    }
  }

  SparsePolynomial finish() {
    std::vector<Term> terms;
    if (!dense_.empty()) {
      for (std::uint64_t k = 0; k < dense_.size(); ++k) {
        if (sgn(dense_[k]) == 0) continue;
        ExponentVector e(cap_.size());
        std::uint64_t r = k;
        for (std::size_t v = 0; v < e.size(); ++v) {
          e[v] = static_cast<Exponent>(r / stride_[v]);
          r %= stride_[v];
        }
        terms.push_back({std::move(e), std::move(dense_[k])});
      }
    } else {
      for (auto& [e, c] : sparse_)
        if (sgn(c) != 0) terms.push_back({e, std::move(c)});
    }
    return SparsePolynomial::from_terms(cap_.size(), std::move(terms));
  }

 private:
  ExponentVector cap_;
  std::vector<std::uint64_t> stride_;
  std::vector<Integer> dense_;
  std::unordered_map<ExponentVector, Integer, ExponentVectorHash> sparse_;
};

}  // namespace

SumResult expand_product(const MutationTrace& trace, std::span<const std::int64_t> h, const ExponentVector& cap) {
  TupleEnumerator walk(trace, h, cap);
  CapAccumulator acc(cap);
  walk.run([&](const std::vector<std::uint64_t>& m, const Integer& c) { acc.add(tuple_exponent(trace, m), c); });
  return {acc.finish(), walk.cap_limited(), walk.tuples()};
}

SumResult f_sum(const MutationTrace& trace, std::size_t var, const ExponentVector& cap) {
  if (var >= trace.rank()) throw Error(ErrorKind::IndexOutOfRange, "variable " + std::to_string(var + 1));
  return expand_product(trace, trace.e_table()[var], cap);
}

std::vector<TupleFamily> f_sum_families(const MutationTrace& trace, std::size_t var, const ExponentVector& cap) {
  if (var >= trace.rank()) throw Error(ErrorKind::IndexOutOfRange, "variable " + std::to_string(var + 1));
  TupleEnumerator walk(trace, trace.e_table()[var], cap);
  std::map<std::vector<std::uint64_t>, std::vector<Term>> groups;
  walk.run([&](const std::vector<std::uint64_t>& m, const Integer& c) {
    std::vector<std::uint64_t> suffix(m.begin() + (m.empty() ? 0 : 1), m.end());
    groups[suffix].push_back({tuple_exponent(trace, m), c});
  });
  std::vector<TupleFamily> out;
  for (auto& [suffix, terms] : groups)
    out.push_back({suffix, SparsePolynomial::from_terms(trace.rank(), std::move(terms))});
  return out;
}

TildeC tilde_c(const MutationTrace& trace) {
  const std::size_t n = trace.rank();
  const auto& d = trace.d();
  TildeC out;
  for (const auto& st : trace.steps()) {
    ExponentVector t(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t num = checked::mul(d[st.direction], st.data.c[i]);
      if (num % d[i] != 0) {
        std::ostringstream os;
        os << "(d_" << st.direction + 1 << "/d_" << i + 1 << ") * " << st.data.c[i] << " is not an integer";
        throw Error(ErrorKind::IntegralityViolation, os.str());
      }
      t[i] = num / d[i];
    }
    out.via_d.push_back(std::move(t));
  }

  SeedState companion = SeedState::initial(-trace.b0().transpose(), false);
  for (const auto& st : trace.steps()) {
    companion = mutate_seed(companion, st.direction);
    out.via_companion.push_back(companion.c_vector(st.direction));
  }

  auto dot = [](const ExponentVector& a, const ExponentVector& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = checked::add(s, checked::mul(a[i], b[i]));
    return s;
  };
  for (std::size_t j = 0; j < trace.length(); ++j) {
    if (out.via_d[j] != out.via_companion[j]) {
      std::ostringstream os;
      os << "step " << j + 1 << ": D d c = " << out.via_d[j] << " but companion c-vector is " << out.via_companion[j];
      throw Error(ErrorKind::CrossCheckMismatch, os.str());
    }
    for (std::size_t var = 0; var < n; ++var)
      if (dot(out.via_d[j], trace.g_end().column(var)) != trace.e(var, j))
        throw Error(ErrorKind::CrossCheckMismatch, "tilde-c dot g disagrees with the E table at step " +
                                                       std::to_string(j + 1));
    for (std::size_t k = j + 1; k < trace.length(); ++k)
      if (dot(out.via_d[j], trace.step(k).data.c_hat_plus) != trace.a(k, j))
        throw Error(ErrorKind::CrossCheckMismatch, "tilde-c dot chat disagrees with the A table at step " +
                                                       std::to_string(k + 1));
  }
  return out;
}

}  // namespace cafp

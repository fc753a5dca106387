#include <doctest.h>

#include <random>

#include "cafp/gupta.hpp"
#include "cafp/random.hpp"
#include "oracles.hpp"

using namespace cafp;

namespace {

const IntMatrix kEx{{0, 1}, {-4, 0}};
const std::vector<std::size_t> kExSeq{0, 1, 0};

SparsePolynomial y(std::size_t n, std::size_t i) { return SparsePolynomial::variable(n, i); }
SparsePolynomial one(std::size_t n) { return SparsePolynomial::one(n); }

struct Case {
  IntMatrix b0;
  std::vector<std::size_t> seq;
};

Case small_case(std::mt19937_64& rng, std::size_t max_n, std::int64_t max_entry, std::size_t max_len,
                std::uint64_t max_volume = 20000) {
  for (;;) {
    std::uniform_int_distribution<std::size_t> dn(2, max_n);
    Case c{oracle::random_skew(rng, dn(rng), max_entry), {}};
    c.seq = oracle::random_seq(rng, c.b0.rows(), max_len);
    if (max_f_volume(c.b0, c.seq) <= max_volume) return c;
  }
}

// (u, d_{i_j} v)_D recomputed from the recorded vectors.
std::int64_t ip(const MutationTrace& t, const ExponentVector& u, std::size_t j) {
  mpq_class s = 0;
  const std::int64_t dj = t.d()[t.step(j).direction];
  for (std::size_t r = 0; r < t.rank(); ++r) s += mpq_class(u[r] * dj * t.step(j).data.c[r]) / t.d()[r];
  REQUIRE(s.get_den() == 1);
  return s.get_num().get_si();
}

// Power series in y truncated to the box v <= cap.
struct Box {
  ExponentVector cap;

  oracle::Map trunc(oracle::Map m) const {
    for (auto it = m.begin(); it != m.end();) {
      bool inside = true;
      for (std::size_t i = 0; i < cap.size(); ++i) inside = inside && it->first[i] <= cap[i];
      it = inside ? std::next(it) : m.erase(it);
    }
    return m;
  }
  oracle::Map mul(const oracle::Map& a, const oracle::Map& b) const { return trunc(oracle::mul(a, b)); }
  oracle::Map unit() const { return oracle::monomial(oracle::Exps(cap.size(), 0)); }
  // 1/s for s with constant term 1: sum of (1 - s)^k, nilpotent in the box.
  oracle::Map inverse(const oracle::Map& s) const {
    oracle::Map nil = oracle::add(unit(), oracle::mul(s, oracle::monomial(oracle::Exps(cap.size(), 0), -1)));
    oracle::Map term = unit(), sum = unit();
    for (std::int64_t k = 0; k <= cap.total_degree(); ++k) {
      term = mul(term, nil);
      sum = oracle::add(sum, term);
    }
    return sum;
  }
  oracle::Map pow(const oracle::Map& s, std::int64_t e) const {
    const oracle::Map base = e >= 0 ? s : inverse(s);
    oracle::Map r = unit();
    for (std::int64_t i = 0; i < std::abs(e); ++i) r = mul(r, base);
    return r;
  }
};

// prod_j L_j^{h_j} in the box, with the L's rebuilt from test-side A.
oracle::Map series_product(const MutationTrace& t, const std::vector<std::int64_t>& h, const Box& box) {
  std::vector<oracle::Map> L;
  for (std::size_t k = 0; k < t.length(); ++k) {
    const auto& cp = t.step(k).data.c_plus;
    oracle::Map inner = box.trunc(oracle::monomial(oracle::Exps(cp.begin(), cp.end())));
    for (std::size_t j = 0; j < k; ++j) inner = box.mul(inner, box.pow(L[j], ip(t, t.step(k).data.c_hat_plus, j)));
    L.push_back(oracle::add(box.unit(), inner));
  }
  oracle::Map r = box.unit();
  for (std::size_t j = 0; j < t.length(); ++j) r = box.mul(r, box.pow(L[j], h[j]));
  return r;
}

}  // namespace

TEST_CASE("golden L factors") {
  const MutationTrace t = build_trace(kEx, kExSeq, false);
  const LFactorChain chain = l_factors(t);
  REQUIRE(chain.size() == 3);
  const auto y1 = y(2, 0), y2 = y(2, 1);
  const auto f1 = one(2) + y1;
  const auto f2 = one(2) + y1 + y1 * y2;
  CHECK(equivalent(chain.factor(0), RationalFunction(f1)));
  CHECK(equivalent(chain.factor(1), RationalFunction(f2, f1)));
  const auto z3 = SparsePolynomial::monomial(ExponentVector{3, 4});
  CHECK(equivalent(chain.factor(2), RationalFunction(f2.pow(4) + z3, f2.pow(4))));
  const auto h = t.e_table()[0];
  CHECK(h == std::vector<std::int64_t>{3, 4, 1});
  CHECK(equivalent(chain.product(h), RationalFunction(f2.pow(4) + z3, f1)));
  CHECK(f_product(t, 0) == build_trace(kEx, kExSeq).final_seed().f(0));
}

TEST_CASE("refined chain equals the literal factors") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const Case c = small_case(rng, 3, 2, 5, 2000);
    const MutationTrace t = build_trace(c.b0, c.seq, false);
    const LFactorChain chain = l_factors(t);
    const auto literal = l_factors_unreduced(t);
    REQUIRE(literal.size() == chain.size());
    for (std::size_t k = 0; k < chain.size(); ++k) CHECK(equivalent(chain.factor(k), literal[k]));
  }
}

TEST_CASE("product formula agrees with the recurrence, including a mod-p evaluation") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 80; ++trial) {
    const Case c = small_case(rng, 4, 3, 7);
    const MutationTrace t = build_trace(c.b0, c.seq);
    const std::size_t n = c.b0.rows();
    // L_k evaluated in Z/p from test-side exponents.
    const auto pt = oracle::random_point(rng, n);
    std::vector<std::uint64_t> L;
    for (std::size_t k = 0; k < t.length(); ++k) {
      std::uint64_t z = 1;
      for (std::size_t i = 0; i < n; ++i) z = oracle::mulp(z, oracle::powp(pt[i], t.step(k).data.c_plus[i]));
      for (std::size_t j = 0; j < k; ++j) z = oracle::mulp(z, oracle::zpow(L[j], ip(t, t.step(k).data.c_hat_plus, j)));
      L.push_back(oracle::addp(1, z));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const SparsePolynomial f = f_product(t, i);
      CHECK(f == t.final_seed().f(i));
      std::uint64_t v = 1;
      for (std::size_t j = 0; j < t.length(); ++j) v = oracle::mulp(v, oracle::zpow(L[j], ip(t, t.g_end().column(i), j)));
      CHECK(oracle::eval(f, pt) == v);
    }
  }
}

TEST_CASE("expansion matches the truncated series for arbitrary exponents") {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<std::int64_t> dh(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const Case c = small_case(rng, 3, 2, 4, 2000);
    const MutationTrace t = build_trace(c.b0, c.seq, false);
    const std::size_t n = c.b0.rows();
    std::uniform_int_distribution<std::int64_t> dc(0, 4);
    ExponentVector cap(n);
    for (auto& x : cap) x = dc(rng);
    std::vector<std::int64_t> h(t.length());
    for (auto& x : h) x = dh(rng);
    const SumResult r = expand_product(t, h, cap);
    const Box box{cap};
    CHECK(oracle::to_map(r.poly) == series_product(t, h, box));
  }
}

TEST_CASE("sum formula with the degree-vector cap reproduces F") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 80; ++trial) {
    const Case c = small_case(rng, 4, 3, 7);
    const MutationTrace t = build_trace(c.b0, c.seq);
    for (std::size_t i = 0; i < c.b0.rows(); ++i) {
      const SparsePolynomial& f = t.final_seed().f(i);
      CHECK(f_sum(t, i, f.degree_vector()).poly == f);
    }
  }
}

TEST_CASE("a cap below the degree vector truncates exactly") {
  const MutationTrace t = build_trace(kEx, kExSeq);
  const SparsePolynomial& f = t.final_seed().f(0);
  const SumResult r = f_sum(t, 0, ExponentVector{2, 2});
  SparsePolynomial expected = SparsePolynomial::constant(2, 0);
  for (const auto& term : f.terms())
    if (term.exponent[0] <= 2 && term.exponent[1] <= 2) expected += SparsePolynomial::monomial(term.exponent, term.coefficient);
  CHECK(r.poly == expected);
  CHECK(r.cap_limited);
}

TEST_CASE("tuple families at cap (3,4)") {
  const MutationTrace t = build_trace(kEx, kExSeq, false);
  const auto fams = f_sum_families(t, 0, ExponentVector{3, 4});
  const auto y1 = y(2, 0), y2 = y(2, 1);
  const auto f1 = one(2) + y1;
  auto find = [&](std::vector<std::uint64_t> suffix) -> const SparsePolynomial* {
    for (const auto& f : fams)
      if (f.suffix == suffix) return &f.contribution;
    return nullptr;
  };
  const auto* f00 = find({0, 0});
  const auto* f10 = find({1, 0});
  const auto* f20 = find({2, 0});
  const auto* f30 = find({3, 0});
  REQUIRE(f00);
  REQUIRE(f10);
  REQUIRE(f20);
  REQUIRE(f30);
  CHECK(*f00 == f1.pow(3));
  CHECK(*f10 == SparsePolynomial::monomial(ExponentVector{1, 1}, 4) * f1.pow(2));
  CHECK(*f20 == SparsePolynomial::monomial(ExponentVector{2, 2}, 6) * f1);
  CHECK(*f30 == SparsePolynomial::monomial(ExponentVector{3, 3}, 4));
  SparsePolynomial rest = SparsePolynomial::constant(2, 0);
  for (const auto& f : fams) {
    if (f.suffix == std::vector<std::uint64_t>{4, 0} || f.suffix == std::vector<std::uint64_t>{0, 1}) rest += f.contribution;
  }
  CHECK(rest == SparsePolynomial::monomial(ExponentVector{3, 4}));
  // Everything else inside the cap cancels.
  SparsePolynomial total = SparsePolynomial::constant(2, 0);
  for (const auto& f : fams) total += f.contribution;
  CHECK(total == build_trace(kEx, kExSeq).final_seed().f(0));
}

TEST_CASE("tilde-c two ways") {
  const MutationTrace t = build_trace(kEx, kExSeq, false);
  const TildeC tc = tilde_c(t);
  const std::vector<ExponentVector> expected{{-1, 0}, {-4, -1}, {-3, -1}};
  CHECK(tc.via_d == expected);
  CHECK(tc.via_companion == expected);
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const Case c = small_case(rng, 4, 3, 8);
    const MutationTrace rt = build_trace(c.b0, c.seq, false);
    const TildeC r = tilde_c(rt);
    CHECK(r.via_d == r.via_companion);
    for (std::size_t j = 0; j < rt.length(); ++j) {
      for (std::size_t i = 0; i < rt.rank(); ++i) {
        std::int64_t dot = 0;
        for (std::size_t s = 0; s < rt.rank(); ++s) dot += r.via_d[j][s] * rt.g_end()(s, i);
        CHECK(dot == rt.e(i, j));
      }
    }
  }
}

TEST_CASE("coefficients past 64 bits stay exact") {
  // [[0,3],[-3,0]] grows fast enough to leave machine words after a few steps.
  const IntMatrix b{{0, 3}, {-3, 0}};
  const std::vector<std::size_t> seq{0, 1, 0, 1, 0, 1};
  const MutationTrace t = build_trace(b, seq);
  const SparsePolynomial& f = t.final_seed().f(1);
  CHECK(f.max_coefficient_bits() > 64);
  CHECK(f_product(t, 1) == f);
  CHECK(f_sum(t, 1, f.degree_vector()).poly == f);
}

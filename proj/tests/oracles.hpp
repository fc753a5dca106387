// Independent reference implementations used by the tests. Nothing here calls
// the algorithm it is meant to check; polynomials are plain ordered maps.
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "cafp/matrix.hpp"
#include "cafp/polynomial.hpp"
#include "cafp/rational_function.hpp"

namespace oracle {

using Exps = std::vector<std::int64_t>;
using Map = std::map<Exps, mpz_class>;

inline Map to_map(const cafp::SparsePolynomial& p) {
  Map m;
  for (const auto& t : p.terms()) m[Exps(t.exponent.begin(), t.exponent.end())] = t.coefficient;
  return m;
}

inline void prune(Map& m) {
  for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
}

inline cafp::SparsePolynomial from_map(std::size_t nvars, const Map& m) {
  cafp::SparsePolynomial p = cafp::SparsePolynomial::constant(nvars, 0);
  for (const auto& [e, c] : m)
    if (c != 0) p += cafp::SparsePolynomial::monomial(cafp::ExponentVector(e.begin(), e.end()), c);
  return p;
}

inline Map mul(const Map& a, const Map& b) {
  Map r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r[e] += ca * cb;
    }
  prune(r);
  return r;
}

inline Map add(Map a, const Map& b) {
  for (const auto& [e, c] : b) a[e] += c;
  prune(a);
  return a;
}

inline Map monomial(const Exps& e, const mpz_class& c = 1) { return Map{{e, c}}; }

inline Map pow(const Map& a, std::uint64_t k, std::size_t nvars) {
  Map r = monomial(Exps(nvars, 0));
  for (std::uint64_t i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

// Binomial coefficients from Pascal's rule; negative upper index through
// C(h, m) = (-1)^m C(m - h - 1, m).
inline mpz_class binomial(std::int64_t h, std::uint64_t m) {
  if (h < 0) {
    mpz_class r = binomial(static_cast<std::int64_t>(m) - h - 1, m);
    return m % 2 ? mpz_class(-r) : r;
  }
  if (m > static_cast<std::uint64_t>(h)) return 0;
  std::vector<mpz_class> row{1};
  for (std::int64_t n = 1; n <= h; ++n) {
    std::vector<mpz_class> next(row.size() + 1, 0);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = (i < row.size() ? row[i] : mpz_class(0)) + (i > 0 ? row[i - 1] : mpz_class(0));
    row = std::move(next);
  }
  return row[m];
}

// Smallest-sum positive d with d_j b_ij = -d_i b_ji, entries up to bound.
inline std::vector<std::int64_t> brute_min_d(const cafp::IntMatrix& b, std::int64_t bound = 12) {
  const std::size_t n = b.rows();
  std::vector<std::int64_t> d(n, 1), best;
  std::int64_t best_sum = -1;
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) ok = d[j] * b(i, j) == -d[i] * b(j, i);
    std::int64_t sum = 0;
    for (auto x : d) sum += x;
    if (ok && (best_sum < 0 || sum < best_sum)) best = d, best_sum = sum;
    std::size_t i = 0;
    while (i < n && d[i] == bound) d[i++] = 1;
    if (i == n) break;
    ++d[i];
  }
  return best;
}

// Matrix mutation of an m x n extended matrix in column k.
inline cafp::IntMatrix ext_mutate(const cafp::IntMatrix& m, std::size_t k) {
  cafp::IntMatrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i == k || j == k) {
        r(i, j) = -m(i, j);
      } else {
        const std::int64_t a = m(i, k), b = m(k, j);
        if (a > 0 && b > 0) r(i, j) = m(i, j) + a * b;
        if (a < 0 && b < 0) r(i, j) = m(i, j) - a * b;
      }
    }
  return r;
}

inline std::int64_t pos(std::int64_t x) { return x > 0 ? x : 0; }

// Seed data advanced by the extended-matrix rules: [B; C] by matrix mutation,
// g_k' = -g_k + sum_i [b_ik]_+ g_i - sum_j [c_jk]_+ b0_j, and
// F_k' F_k = y^[c_k]_+ prod F_i^[b_ik]_+ + y^[-c_k]_+ prod F_i^[-b_ik]_+.
struct Seed {
  cafp::IntMatrix b0, b, c, g;
  std::vector<Map> f;

  static Seed initial(const cafp::IntMatrix& b0) {
    const std::size_t n = b0.rows();
    Seed s{b0, b0, cafp::IntMatrix::identity(n), cafp::IntMatrix::identity(n), {}};
    for (std::size_t i = 0; i < n; ++i) s.f.push_back(monomial(Exps(n, 0)));
    return s;
  }

  // The two terms of the exchange relation for F_k at this seed.
  Map f_exchange_sum(std::size_t k) const {
    const std::size_t n = b.rows();
    Exps up(n, 0), down(n, 0);
    for (std::size_t j = 0; j < n; ++j) up[j] = pos(c(j, k)), down[j] = pos(-c(j, k));
    Map plus = monomial(up), minus = monomial(down);
    for (std::size_t i = 0; i < n; ++i) {
      plus = mul(plus, pow(f[i], pos(b(i, k)), n));
      minus = mul(minus, pow(f[i], pos(-b(i, k)), n));
    }
    return add(plus, minus);
  }

  // new_f is supplied by the caller; the oracle only checks the relation.
  Seed mutated(std::size_t k, const Map& new_f) const {
    const std::size_t n = b.rows();
    cafp::IntMatrix ext(2 * n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ext(i, j) = b(i, j), ext(n + i, j) = c(i, j);
    const cafp::IntMatrix e2 = ext_mutate(ext, k);
    Seed r = *this;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r.b(i, j) = e2(i, j), r.c(i, j) = e2(n + i, j);
    for (std::size_t row = 0; row < n; ++row) {
      std::int64_t v = -g(row, k);
      for (std::size_t i = 0; i < n; ++i) v += pos(b(i, k)) * g(row, i);
      for (std::size_t j = 0; j < n; ++j) v -= pos(c(j, k)) * b0(row, j);
      r.g(row, k) = v;
    }
    r.f[k] = new_f;
    return r;
  }
};

// Random skew-symmetrizable matrix b_ij = d_i s_ij with s skew-symmetric and
// every |b_ij| <= max_entry.
inline cafp::IntMatrix random_skew(std::mt19937_64& rng, std::size_t n, std::int64_t max_entry) {
  std::uniform_int_distribution<std::int64_t> dd(1, 3);
  std::vector<std::int64_t> d(n);
  for (auto& x : d) x = dd(rng);
  cafp::IntMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int64_t lim = max_entry / std::max(d[i], d[j]);
      std::uniform_int_distribution<std::int64_t> ds(-lim, lim);
      const std::int64_t s = ds(rng);
      b(i, j) = d[i] * s;
      b(j, i) = -d[j] * s;
    }
  return b;
}

inline std::vector<std::size_t> random_seq(std::mt19937_64& rng, std::size_t n, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> dl(0, max_len), dk(0, n - 1);
  std::vector<std::size_t> seq(dl(rng));
  for (auto& k : seq) k = dk(rng);
  return seq;
}

// Arithmetic in Z/p for evaluation oracles.
constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

inline std::uint64_t mulp(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}
inline std::uint64_t addp(std::uint64_t a, std::uint64_t b) { return (a + b) % kPrime; }
inline std::uint64_t powp(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulp(a, a))
    if (e & 1) r = mulp(r, a);
  return r;
}
inline std::uint64_t invp(std::uint64_t a) { return powp(a, kPrime - 2); }
inline std::uint64_t zpow(std::uint64_t a, std::int64_t e) { return e >= 0 ? powp(a, e) : invp(powp(a, -e)); }
inline std::uint64_t reduce(const mpz_class& c) {
  mpz_class r = c % mpz_class(std::to_string(kPrime));
  if (r < 0) r += mpz_class(std::to_string(kPrime));
  return std::stoull(r.get_str());
}

// Laurent polynomial evaluated at a point with nonzero coordinates.
inline std::uint64_t eval(const cafp::SparsePolynomial& p, const std::vector<std::uint64_t>& pt) {
  std::uint64_t s = 0;
  for (const auto& t : p.terms()) {
    std::uint64_t v = reduce(t.coefficient);
    for (std::size_t i = 0; i < pt.size(); ++i) v = mulp(v, zpow(pt[i], t.exponent[i]));
    s = addp(s, v);
  }
  return s;
}

inline std::vector<std::uint64_t> random_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::uint64_t> d(2, kPrime - 1);
  std::vector<std::uint64_t> pt(n);
  for (auto& x : pt) x = d(rng);
  return pt;
}

// Cluster variables by iterating the exchange relation with principal
// coefficients, x_k' x_k = x^[b_k]_+ y^[c_k]_+ + x^[-b_k]_+ y^[-c_k]_+, as exact
// fractions in the mixed alphabet x_1..x_n, y_1..y_n.
inline std::vector<cafp::RationalFunction> x_mutation_exact(const cafp::IntMatrix& b0,
                                                           const std::vector<std::size_t>& seq) {
  const std::size_t n = b0.rows();
  cafp::IntMatrix ext(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ext(i, j) = b0(i, j), ext(n + i, j) = i == j;
  std::vector<cafp::RationalFunction> x;
  for (std::size_t i = 0; i < n; ++i) x.emplace_back(cafp::SparsePolynomial::variable(2 * n, i));
  for (const std::size_t k : seq) {
    cafp::RationalFunction plus = cafp::RationalFunction::one(2 * n), minus = plus;
    cafp::ExponentVector yp(2 * n), ym(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      plus = plus * x[i].pow(pos(ext(i, k)));
      minus = minus * x[i].pow(pos(-ext(i, k)));
      yp[n + i] = pos(ext(n + i, k));
      ym[n + i] = pos(-ext(n + i, k));
    }
    plus = plus * cafp::RationalFunction(cafp::SparsePolynomial::monomial(yp));
    minus = minus * cafp::RationalFunction(cafp::SparsePolynomial::monomial(ym));
    x[k] = (plus + minus) / x[k];
    ext = ext_mutate(ext, k);
  }
  return x;
}

// The same iteration over Z/p at a point (x_1..x_n, y_1..y_n).
inline std::vector<std::uint64_t> x_mutation_values(const cafp::IntMatrix& b0, const std::vector<std::size_t>& seq,
                                                    const std::vector<std::uint64_t>& pt) {
  const std::size_t n = b0.rows();
  cafp::IntMatrix ext(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ext(i, j) = b0(i, j), ext(n + i, j) = i == j;
  std::vector<std::uint64_t> x(pt.begin(), pt.begin() + n);
  for (const std::size_t k : seq) {
    std::uint64_t plus = 1, minus = 1;
    for (std::size_t i = 0; i < n; ++i) {
      plus = mulp(plus, mulp(powp(x[i], pos(ext(i, k))), powp(pt[n + i], pos(ext(n + i, k)))));
      minus = mulp(minus, mulp(powp(x[i], pos(-ext(i, k))), powp(pt[n + i], pos(-ext(n + i, k)))));
    }
    x[k] = mulp(addp(plus, minus), invp(x[k]));
    ext = ext_mutate(ext, k);
  }
  return x;
}

}  // namespace oracle

#include "cafp/seed.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "cafp/error.hpp"
#include "checked.hpp"

namespace cafp {

SkewSymmetrizer::SkewSymmetrizer(std::vector<std::int64_t> d) : d_(std::move(d)) {
  for (auto x : d_)
    if (x <= 0) throw Error(ErrorKind::NotSkewSymmetrizable, "skew-symmetrizer entries must be positive");
}

bool SkewSymmetrizer::symmetrizes(const IntMatrix& b) const {
  if (!b.is_square() || b.rows() != d_.size()) return false;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (checked::mul(d_[j], b(i, j)) != -checked::mul(d_[i], b(j, i))) return false;
  return true;
}

SkewSymmetrizer skew_symmetrizer(const IntMatrix& b) {
  if (!b.is_square()) throw Error(ErrorKind::NotSkewSymmetrizable, "exchange matrix is not square");
  const std::size_t n = b.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (b(i, i) != 0) throw Error(ErrorKind::NotSkewSymmetrizable, "nonzero diagonal entry");
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool zi = b(i, j) == 0, zj = b(j, i) == 0;
      if (zi != zj || (!zi && (b(i, j) > 0) == (b(j, i) > 0)))
        throw Error(ErrorKind::NotSkewSymmetrizable,
                    "entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") and (" +
                        std::to_string(j + 1) + "," + std::to_string(i + 1) + ") are not of opposite sign");
    }
  }

  // d_j / d_i = -b_ji / b_ij along every edge; propagate from one root per
  // component and check every closing edge.
  std::vector<mpq_class> ratio(n);
  std::vector<int> component(n, -1);
  std::vector<std::int64_t> d(n, 1);
  int ncomp = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (component[root] >= 0) continue;
    std::vector<std::size_t> members;
    std::queue<std::size_t> todo;
    component[root] = ncomp;
    ratio[root] = 1;
    todo.push(root);
    while (!todo.empty()) {
      const std::size_t i = todo.front();
      todo.pop();
      members.push_back(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (b(i, j) == 0) continue;
        mpq_class step(mpz_class(static_cast<long>(-b(j, i))), mpz_class(static_cast<long>(b(i, j))));
        step.canonicalize();
        mpq_class want = ratio[i] * step;
        want.canonicalize();
        if (component[j] < 0) {
          component[j] = ncomp;
          ratio[j] = want;
          todo.push(j);
        } else if (ratio[j] != want) {
          throw Error(ErrorKind::NotSkewSymmetrizable, "inconsistent ratio constraints on a cycle");
        }
      }
    }
    mpz_class lcm = 1;
    for (auto i : members) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), ratio[i].get_den_mpz_t());
    mpz_class g = 0;
    std::vector<mpz_class> scaled;
    for (auto i : members) {
      mpz_class v = ratio[i].get_num() * (lcm / ratio[i].get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      scaled.push_back(v);
    }
    for (std::size_t m = 0; m < members.size(); ++m) {
      mpz_class v = scaled[m] / g;
      if (!v.fits_slong_p()) throw Error(ErrorKind::Overflow, "skew-symmetrizer entry");
      d[members[m]] = v.get_si();
    }
    ++ncomp;
  }
  return SkewSymmetrizer(std::move(d));
}

int tropical_sign(const ExponentVector& c) {
  bool pos = false, neg = false;
  for (auto x : c) {
    pos |= x > 0;
    neg |= x < 0;
  }
  if (pos && neg) {
    std::ostringstream os;
    os << "c-vector " << c << " has entries of both signs";
    throw Error(ErrorKind::SignCoherenceViolation, os.str());
  }
  if (!pos && !neg) throw Error(ErrorKind::ZeroVector, "c-vector is zero");
  return pos ? 1 : -1;
}

mpq_class inner_product_D(const ExponentVector& u, const ExponentVector& v, const SkewSymmetrizer& d,
                          std::int64_t scale) {
  if (u.size() != v.size() || u.size() != d.size()) throw Error(ErrorKind::LengthMismatch, "D-inner product");
  mpq_class s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mpq_class term(mpz_class(static_cast<long>(u[i])) * static_cast<long>(v[i]), mpz_class(static_cast<long>(d[i])));
    term.canonicalize();
    s += term;
  }
  return s * static_cast<long>(scale);
}

std::int64_t integral_inner_product_D(const ExponentVector& u, const ExponentVector& v, const SkewSymmetrizer& d,
                                      std::int64_t scale) {
  const mpq_class q = inner_product_D(u, v, d, scale);
  if (q.get_den() != 1) {
    std::ostringstream os;
    os << "(" << u << ", " << scale << "*" << v << ")_D = " << q.get_str();
    throw Error(ErrorKind::IntegralityViolation, os.str());
  }
  if (!q.get_num().fits_slong_p()) throw Error(ErrorKind::Overflow, "inner product");
  return q.get_num().get_si();
}

SeedState::SeedState(IntMatrix b0, SkewSymmetrizer d, IntMatrix b, IntMatrix c, IntMatrix g,
                     std::vector<SparsePolynomial> f)
    : b0_(std::move(b0)), d_(std::move(d)), b_(std::move(b)), c_(std::move(c)), g_(std::move(g)), f_(std::move(f)) {
  const std::size_t n = b0_.rows();
  if (!b0_.is_square() || b_.rows() != n || b_.cols() != n || c_.rows() != n || c_.cols() != n ||
      g_.rows() != n || g_.cols() != n || d_.size() != n || (!f_.empty() && f_.size() != n))
    throw Error(ErrorKind::LengthMismatch, "seed components have inconsistent ranks");
  for (const auto& p : f_)
    if (p.nvars() != n) throw Error(ErrorKind::LengthMismatch, "F-polynomial alphabet");
}

SeedState SeedState::initial(const IntMatrix& b0, bool track_f) {
  return initial(b0, skew_symmetrizer(b0), track_f);
}

SeedState SeedState::initial(const IntMatrix& b0, const SkewSymmetrizer& d, bool track_f) {
  if (!d.symmetrizes(b0)) throw Error(ErrorKind::NotSkewSymmetrizable, "given d does not symmetrize B0");
  const std::size_t n = b0.rows();
  std::vector<SparsePolynomial> f;
  if (track_f) f.assign(n, SparsePolynomial::one(n));
  return SeedState(b0, d, b0, IntMatrix::identity(n), IntMatrix::identity(n), std::move(f));
}

CVectorData SeedState::c_vector_data(std::size_t k) const {
  CVectorData cv;
  cv.c = c_vector(k);
  cv.epsilon = tropical_sign(cv.c);
  cv.c_plus = cv.epsilon * cv.c;
  cv.c_hat_plus = b0_.apply(cv.c_plus);
  return cv;
}

SeedState mutate_seed(const SeedState& s, std::size_t k) {
  const std::size_t n = s.rank();
  if (k >= n) throw Error(ErrorKind::IndexOutOfRange, "mutation direction " + std::to_string(k + 1));
  const IntMatrix& b = s.b();
  const IntMatrix& c = s.c();
  const ExponentVector ck = c.column(k);
  const int eps = tropical_sign(ck);

  IntMatrix c2(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) {
        c2(i, j) = -c(i, j);
      } else {
        const std::int64_t cik = c(i, k), bkj = b(k, j);
        c2(i, j) = checked::add(c(i, j), checked::add(checked::mul(cik, checked::pos(bkj)),
                                                      checked::mul(checked::pos(-cik), bkj)));
      }
    }
  }

  IntMatrix g2 = s.g();
  ExponentVector gk = -s.g_vector(k);
  for (std::size_t j = 0; j < n; ++j) {
    const std::int64_t w = checked::pos(checked::mul(-eps, b(j, k)));
    if (w == 0) continue;
    for (std::size_t r = 0; r < n; ++r) gk[r] = checked::add(gk[r], checked::mul(w, s.g()(r, j)));
  }
  g2.set_column(k, gk);

  std::vector<SparsePolynomial> f2 = s.f();
  if (s.tracks_f()) {
    std::vector<std::uint64_t> up(n), down(n);
    for (std::size_t i = 0; i < n; ++i) {
      up[i] = static_cast<std::uint64_t>(checked::pos(b(i, k)));
      down[i] = static_cast<std::uint64_t>(checked::pos(-b(i, k)));
    }
    SparsePolynomial numer = product_of_powers(s.f(), up, n).shifted(ck.positive_part()) +
                             product_of_powers(s.f(), down, n).shifted(ck.negative_part());
    f2[k] = poly_exact_div(numer, s.f(k));
  }
  return SeedState(s.b0(), s.d(), mutate_matrix(b, k), std::move(c2), std::move(g2), std::move(f2));
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.passed; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& r : checks)
    if (r.name == name) return &r;
  return nullptr;
}

void VerificationReport::add(std::string name, bool passed, std::string detail) {
  checks.push_back({std::move(name), passed, std::move(detail)});
}

VerificationReport verify_seed(const SeedState& s) {
  VerificationReport report;
  const std::size_t n = s.rank();

  {
    std::string detail;
    for (std::size_t k = 0; k < n && detail.empty(); ++k) {
      try {
        tropical_sign(s.c_vector(k));
      } catch (const Error& e) {
        detail = "column " + std::to_string(k + 1) + ": " + e.what();
      }
    }
    report.add("sign_coherence", detail.empty(), detail);
  }

  report.add("first_duality", s.g() * s.b() == s.b0() * s.c());

  {
    std::string detail;
    for (std::size_t i = 0; i < n && detail.empty(); ++i) {
      const ExponentVector gi = s.g_vector(i);
      for (std::size_t j = 0; j < n && detail.empty(); ++j) {
        const mpq_class v = inner_product_D(gi, s.c_vector(j), s.d(), s.d()[j]);
        if (v != (i == j ? 1 : 0))
          detail = "(g_" + std::to_string(i + 1) + ", d_" + std::to_string(j + 1) + " c_" + std::to_string(j + 1) +
                   ")_D = " + v.get_str();
      }
    }
    report.add("second_duality", detail.empty(), detail);
  }

  report.add("skew_symmetrizer", s.d().symmetrizes(s.b()));

  {
    // chat_k = column k of G_t B_t, and chat^+ = epsilon chat = B0 c^+.
    std::string detail;
    const IntMatrix chat = s.g() * s.b();
    for (std::size_t k = 0; k < n && detail.empty(); ++k) {
      try {
        const CVectorData cv = s.c_vector_data(k);
        if (cv.c_hat_plus != cv.epsilon * chat.column(k)) {
          std::ostringstream os;
          os << "column " << k + 1 << ": B0 c^+ = " << cv.c_hat_plus << " but epsilon (G B)_k = "
             << cv.epsilon * chat.column(k);
          detail = os.str();
        }
      } catch (const Error& e) {
        detail = "column " + std::to_string(k + 1) + ": " + e.what();
      }
    }
    report.add("chat_plus", detail.empty(), detail);
  }

  if (s.tracks_f()) {
    std::string detail;
    for (std::size_t i = 0; i < n && detail.empty(); ++i) {
      const auto& f = s.f(i);
      if (!f.is_polynomial()) detail = "F_" + std::to_string(i + 1) + " has a negative exponent";
      else if (f.constant_term() != 1) detail = "F_" + std::to_string(i + 1) + " has constant term " + f.constant_term().get_str();
    }
    report.add("f_constant_term", detail.empty(), detail);
  }
  return report;
}

SparsePolynomial hat_substitute(const SparsePolynomial& f, const IntMatrix& b0) {
  const std::size_t n = b0.rows();
  if (f.nvars() != n) throw Error(ErrorKind::LengthMismatch, "hat substitution alphabet");
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    const ExponentVector xpart = b0.apply(t.exponent);
    ExponentVector e(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = xpart[i];
      e[n + i] = t.exponent[i];
    }
    terms.push_back({std::move(e), t.coefficient});
  }
  return SparsePolynomial::from_terms(2 * n, std::move(terms));
}

SparsePolynomial x_monomial(const ExponentVector& m) {
  ExponentVector e(2 * m.size());
  std::copy(m.begin(), m.end(), e.begin());
  return SparsePolynomial::monomial(std::move(e));
}

SparsePolynomial cluster_variable(const SeedState& s, std::size_t i) {
  if (i >= s.rank()) throw Error(ErrorKind::IndexOutOfRange, "cluster variable index " + std::to_string(i + 1));
  if (!s.tracks_f()) throw Error(ErrorKind::LengthMismatch, "seed does not carry F-polynomials");
  return hat_substitute(s.f(i), s.b0()) * x_monomial(s.g_vector(i));
}

ExponentVector x_denominator(const SparsePolynomial& mixed, std::size_t n) {
  if (mixed.nvars() != 2 * n) throw Error(ErrorKind::LengthMismatch, "mixed alphabet");
  ExponentVector lo = mixed.min_exponents();
  ExponentVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::max<Exponent>(0, -lo[i]);
  return v;
}

}  // namespace cafp

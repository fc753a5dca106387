#include "cafp/polynomial.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "cafp/error.hpp"

namespace cafp {

namespace detail {
namespace {
std::atomic<bool> g_packing{true};
}
void set_packing_enabled(bool enabled) noexcept { g_packing.store(enabled); }
bool packing_enabled() noexcept { return g_packing.load(); }
}  // namespace detail

Integer gen_binomial(std::int64_t h, std::uint64_t m) {
  Integer n(static_cast<long>(h));
  Integer r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

namespace {

constexpr unsigned __int128 kMaxVolume = static_cast<unsigned __int128>(1) << 62;
constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 21;

// Kronecker packing of a box [lo, hi] into a single integer key. The first
// variable is most significant, so key order is lexicographic order. Keys of
// two factors packed with offsets loA and loB add up to the key of the
// product packed with offset loA + loB.
struct Packing {
  ExponentVector lo;
  std::vector<std::uint64_t> stride;
  std::uint64_t volume = 1;

  static std::optional<Packing> make(const ExponentVector& lo, const ExponentVector& hi) {
    if (!detail::packing_enabled()) return std::nullopt;
    Packing p;
    p.lo = lo;
    const std::size_t n = lo.size();
    p.stride.assign(n, 0);
    unsigned __int128 vol = 1;
    for (std::size_t v = n; v-- > 0;) {
      p.stride[v] = static_cast<std::uint64_t>(vol);
      vol *= static_cast<unsigned __int128>(hi[v] - lo[v]) + 1;
      if (vol > kMaxVolume) return std::nullopt;
    }
    p.volume = static_cast<std::uint64_t>(vol);
    return p;
  }

  std::uint64_t pack(const ExponentVector& e, const ExponentVector& offset) const {
    std::uint64_t k = 0;
    for (std::size_t v = 0; v < stride.size(); ++v)
      k += static_cast<std::uint64_t>(e[v] - offset[v]) * stride[v];
    return k;
  }
  std::uint64_t pack(const ExponentVector& e) const { return pack(e, lo); }

  ExponentVector unpack(std::uint64_t k) const {
    ExponentVector e(stride.size());
    for (std::size_t v = 0; v < stride.size(); ++v) {
      const std::uint64_t q = k / stride[v];
      k -= q * stride[v];
      e[v] = lo[v] + static_cast<Exponent>(q);
    }
    return e;
  }
};

void sort_graded_lex(std::vector<Term>& terms) {
  std::vector<std::pair<Exponent, std::size_t>> order(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) order[i] = {terms[i].exponent.total_degree(), i};
  std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return terms[a.second].exponent < terms[b.second].exponent;
  });
  std::vector<Term> sorted;
  sorted.reserve(terms.size());
  for (const auto& [deg, i] : order) sorted.push_back(std::move(terms[i]));
  terms = std::move(sorted);
}

void require_same_nvars(const SparsePolynomial& a, const SparsePolynomial& b) {
  if (a.nvars() != b.nvars())
    throw Error(ErrorKind::LengthMismatch, "polynomials in " + std::to_string(a.nvars()) + " and " +
                                               std::to_string(b.nvars()) + " variables");
}

bool in_box(const ExponentVector& e, const ExponentVector& lo, const ExponentVector& hi) {
  for (std::size_t v = 0; v < e.size(); ++v)
    if (e[v] < lo[v] || e[v] > hi[v]) return false;
  return true;
}

}  // namespace

SparsePolynomial SparsePolynomial::constant(std::size_t nvars, const Integer& c) {
  SparsePolynomial p(nvars);
  if (c != 0) p.terms_.push_back({ExponentVector(nvars), c});
  return p;
}

SparsePolynomial SparsePolynomial::monomial(ExponentVector e, const Integer& c) {
  SparsePolynomial p(e.size());
  if (c != 0) p.terms_.push_back({std::move(e), c});
  return p;
}

SparsePolynomial SparsePolynomial::variable(std::size_t nvars, std::size_t i) {
  return monomial(ExponentVector::unit(nvars, i));
}

SparsePolynomial SparsePolynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  for (const auto& t : terms)
    if (t.exponent.size() != nvars)
      throw Error(ErrorKind::LengthMismatch, "term exponent length differs from variable count");
  sort_graded_lex(terms);
  SparsePolynomial p(nvars);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exponent == t.exponent) {
      p.terms_.back().coefficient += t.coefficient;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coefficient == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coefficient == 0) p.terms_.pop_back();
  return p;
}

bool SparsePolynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].exponent.is_zero() && terms_[0].coefficient == 1;
}

bool SparsePolynomial::is_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.exponent.is_nonnegative(); });
}

Integer SparsePolynomial::coefficient(const ExponentVector& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const Term& t, const ExponentVector& key) {
    return GradedLexLess{}(t.exponent, key);
  });
  if (it != terms_.end() && it->exponent == e) return it->coefficient;
  return 0;
}

ExponentVector SparsePolynomial::degree_vector() const {
  if (terms_.empty()) return ExponentVector(nvars_);
  ExponentVector d = terms_.front().exponent;
  for (const auto& t : terms_)
    for (std::size_t v = 0; v < nvars_; ++v) d[v] = std::max(d[v], t.exponent[v]);
  return d;
}

ExponentVector SparsePolynomial::min_exponents() const {
  if (terms_.empty()) return ExponentVector(nvars_);
  ExponentVector d = terms_.front().exponent;
  for (const auto& t : terms_)
    for (std::size_t v = 0; v < nvars_; ++v) d[v] = std::min(d[v], t.exponent[v]);
  return d;
}

std::size_t SparsePolynomial::max_coefficient_bits() const {
  std::size_t bits = 0;
  for (const auto& t : terms_) bits = std::max(bits, mpz_sizeinbase(t.coefficient.get_mpz_t(), 2));
  return bits;
}

SparsePolynomial SparsePolynomial::pow(std::uint64_t e) const {
  SparsePolynomial result = one(nvars_);
  SparsePolynomial base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

SparsePolynomial SparsePolynomial::shifted(const ExponentVector& shift) const {
  if (shift.size() != nvars_) throw Error(ErrorKind::LengthMismatch, "shift length differs from variable count");
  SparsePolynomial p = *this;
  for (auto& t : p.terms_) t.exponent += shift;
  // A uniform shift preserves lex order but not graded-lex ties.
  sort_graded_lex(p.terms_);
  return p;
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& o) {
  require_same_nvars(*this, o);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  GradedLexLess less;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && less(terms_[i].exponent, o.terms_[j].exponent))) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || less(o.terms_[j].exponent, terms_[i].exponent)) {
      merged.push_back(o.terms_[j++]);
    } else {
      Integer c = terms_[i].coefficient + o.terms_[j].coefficient;
      if (c != 0) merged.push_back({std::move(terms_[i].exponent), std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator-=(const SparsePolynomial& o) { return *this += -o; }

SparsePolynomial& SparsePolynomial::operator*=(const SparsePolynomial& o) { return *this = *this * o; }

SparsePolynomial& SparsePolynomial::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= c;
  return *this;
}

SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
  require_same_nvars(a, b);
  const std::size_t n = a.nvars();
  if (a.is_zero() || b.is_zero()) return SparsePolynomial(n);
  if (a.size() == 1) return b.shifted(a.terms_[0].exponent) * a.terms_[0].coefficient;
  if (b.size() == 1) return a.shifted(b.terms_[0].exponent) * b.terms_[0].coefficient;

  const ExponentVector loA = a.min_exponents(), loB = b.min_exponents();
  const auto packing = Packing::make(loA + loB, a.degree_vector() + b.degree_vector());
  std::vector<Term> out;

  if (packing) {
    std::vector<std::uint64_t> ka(a.size()), kb(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) ka[i] = packing->pack(a.terms_[i].exponent, loA);
    for (std::size_t j = 0; j < b.size(); ++j) kb[j] = packing->pack(b.terms_[j].exponent, loB);
    const std::uint64_t pairs = static_cast<std::uint64_t>(a.size()) * b.size();
    if (packing->volume <= kDenseLimit && packing->volume <= 16 * pairs + 4096) {
      std::vector<Integer> acc(packing->volume);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const mpz_srcptr ca = a.terms_[i].coefficient.get_mpz_t();
        for (std::size_t j = 0; j < b.size(); ++j)
          mpz_addmul(acc[ka[i] + kb[j]].get_mpz_t(), ca, b.terms_[j].coefficient.get_mpz_t());
      }
      for (std::uint64_t k = 0; k < packing->volume; ++k)
        if (sgn(acc[k]) != 0) out.push_back({packing->unpack(k), std::move(acc[k])});
    } else {
      std::unordered_map<std::uint64_t, Integer> acc;
      acc.reserve(std::min<std::uint64_t>(pairs, std::uint64_t{1} << 22));
      for (std::size_t i = 0; i < a.size(); ++i) {
        const mpz_srcptr ca = a.terms_[i].coefficient.get_mpz_t();
        for (std::size_t j = 0; j < b.size(); ++j)
          mpz_addmul(acc[ka[i] + kb[j]].get_mpz_t(), ca, b.terms_[j].coefficient.get_mpz_t());
      }
      out.reserve(acc.size());
      for (auto& [k, c] : acc)
        if (sgn(c) != 0) out.push_back({packing->unpack(k), std::move(c)});
    }
  } else {
    std::unordered_map<ExponentVector, Integer, ExponentVectorHash> acc;
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        mpz_addmul(acc[ta.exponent + tb.exponent].get_mpz_t(), ta.coefficient.get_mpz_t(),
                   tb.coefficient.get_mpz_t());
      }
    }
    out.reserve(acc.size());
    for (auto& [e, c] : acc)
      if (sgn(c) != 0) out.push_back({e, std::move(c)});
  }
  sort_graded_lex(out);
  SparsePolynomial p(n);
  p.terms_ = std::move(out);
  return p;
}

bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exponent != b.terms_[i].exponent || a.terms_[i].coefficient != b.terms_[i].coefficient)
      return false;
  }
  return true;
}

namespace {

// Remainder stores for the division loop. pop_max removes and returns the
// lex-largest nonzero entry; sub performs rem[e] -= q * d.
struct DenseRemainder {
  const Packing& pk;
  std::vector<Integer> cells;
  std::uint64_t cursor;

  DenseRemainder(const Packing& p, const SparsePolynomial& num) : pk(p), cells(p.volume), cursor(p.volume) {
    for (const auto& t : num.terms()) cells[pk.pack(t.exponent)] = t.coefficient;
  }
  bool pop_max(ExponentVector& e, Integer& c) {
    while (cursor > 0) {
      --cursor;
      if (sgn(cells[cursor]) != 0) {
        e = pk.unpack(cursor);
        c = std::move(cells[cursor]);
        cells[cursor] = 0;
        return true;
      }
    }
    return false;
  }
  void sub(const ExponentVector& e, const Integer& q, const Integer& d) {
    mpz_submul(cells[pk.pack(e)].get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());
  }
};

struct PackedMapRemainder {
  const Packing& pk;
  std::map<std::uint64_t, Integer> cells;

  PackedMapRemainder(const Packing& p, const SparsePolynomial& num) : pk(p) {
    for (const auto& t : num.terms()) cells.emplace(pk.pack(t.exponent), t.coefficient);
  }
  bool pop_max(ExponentVector& e, Integer& c) {
    if (cells.empty()) return false;
    auto it = std::prev(cells.end());
    e = pk.unpack(it->first);
    c = std::move(it->second);
    cells.erase(it);
    return true;
  }
  void sub(const ExponentVector& e, const Integer& q, const Integer& d) {
    auto it = cells.try_emplace(pk.pack(e)).first;
    mpz_submul(it->second.get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());
    if (sgn(it->second) == 0) cells.erase(it);
  }
};

struct GenericRemainder {
  std::map<ExponentVector, Integer> cells;

  explicit GenericRemainder(const SparsePolynomial& num) {
    for (const auto& t : num.terms()) cells.emplace(t.exponent, t.coefficient);
  }
  bool pop_max(ExponentVector& e, Integer& c) {
    if (cells.empty()) return false;
    auto it = std::prev(cells.end());
    e = it->first;
    c = std::move(it->second);
    cells.erase(it);
    return true;
  }
  void sub(const ExponentVector& e, const Integer& q, const Integer& d) {
    auto it = cells.try_emplace(e).first;
    mpz_submul(it->second.get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());
    if (sgn(it->second) == 0) cells.erase(it);
  }
};

// Leading-term elimination under lex order. Every product q_t * den_s of an
// exact quotient lies in the per-variable box of num, so leaving that box (or
// the quotient box) proves non-divisibility and also bounds the loop in the
// Laurent case.
template <class Remainder>
std::vector<Term> eliminate(Remainder& rem, const SparsePolynomial& den, const ExponentVector& num_lo,
                            const ExponentVector& num_hi, const ExponentVector& q_lo,
                            const ExponentVector& q_hi) {
  const auto& dterms = den.terms();
  const auto lead_it = std::max_element(dterms.begin(), dterms.end(),
                                        [](const Term& x, const Term& y) { return x.exponent < y.exponent; });
  const ExponentVector& lead = lead_it->exponent;
  const Integer& lc = lead_it->coefficient;

  std::vector<Term> quotient;
  ExponentVector er;
  Integer cr;
  while (rem.pop_max(er, cr)) {
    ExponentVector eq = er - lead;
    if (!in_box(eq, q_lo, q_hi) || !mpz_divisible_p(cr.get_mpz_t(), lc.get_mpz_t()))
      throw Error(ErrorKind::NotDivisible, "remainder term does not cancel");
    Integer cq;
    mpz_divexact(cq.get_mpz_t(), cr.get_mpz_t(), lc.get_mpz_t());
    for (auto it = dterms.begin(); it != dterms.end(); ++it) {
      if (it == lead_it) continue;
      ExponentVector target = eq + it->exponent;
      if (!in_box(target, num_lo, num_hi)) throw Error(ErrorKind::NotDivisible, "quotient leaves the support box");
      rem.sub(target, cq, it->coefficient);
    }
    quotient.push_back({std::move(eq), std::move(cq)});
  }
  return quotient;
}

SparsePolynomial divide(const SparsePolynomial& num, const SparsePolynomial& den, bool polynomial_ring) {
  require_same_nvars(num, den);
  const std::size_t n = num.nvars();
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "exact division by the zero polynomial");
  if (num.is_zero()) return SparsePolynomial(n);

  const ExponentVector num_lo = num.min_exponents(), num_hi = num.degree_vector();
  ExponentVector q_lo = num_lo - den.min_exponents();
  const ExponentVector q_hi = num_hi - den.degree_vector();
  if (polynomial_ring)
    for (auto& x : q_lo) x = std::max<Exponent>(x, 0);
  for (std::size_t v = 0; v < n; ++v)
    if (q_lo[v] > q_hi[v]) throw Error(ErrorKind::NotDivisible, "degree bounds admit no quotient");

  std::vector<Term> q;
  if (auto pk = Packing::make(num_lo, num_hi)) {
    if (pk->volume <= kDenseLimit && pk->volume <= 16 * (num.size() + den.size()) + 4096) {
      DenseRemainder rem(*pk, num);
      q = eliminate(rem, den, num_lo, num_hi, q_lo, q_hi);
    } else {
      PackedMapRemainder rem(*pk, num);
      q = eliminate(rem, den, num_lo, num_hi, q_lo, q_hi);
    }
  } else {
    GenericRemainder rem(num);
    q = eliminate(rem, den, num_lo, num_hi, q_lo, q_hi);
  }
  return SparsePolynomial::from_terms(n, std::move(q));
}

}  // namespace

SparsePolynomial poly_exact_div(const SparsePolynomial& num, const SparsePolynomial& den) {
  return divide(num, den, num.is_polynomial() && den.is_polynomial());
}

SparsePolynomial laurent_exact_div(const SparsePolynomial& num, const SparsePolynomial& den) {
  return divide(num, den, false);
}

std::optional<SparsePolynomial> try_exact_div(const SparsePolynomial& num, const SparsePolynomial& den) {
  try {
    return poly_exact_div(num, den);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotDivisible) throw;
    return std::nullopt;
  }
}

SparsePolynomial product_of_powers(std::span<const SparsePolynomial> bases,
                                   std::span<const std::uint64_t> exponents, std::size_t nvars) {
  if (bases.size() != exponents.size()) throw Error(ErrorKind::LengthMismatch, "bases and exponents differ in length");
  SparsePolynomial acc = SparsePolynomial::one(nvars);
  for (std::size_t i = 0; i < bases.size(); ++i)
    if (exponents[i] != 0) acc *= bases[i].pow(exponents[i]);
  return acc;
}

std::vector<std::string> y_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
  return names;
}

std::vector<std::string> xy_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
  return names;
}

std::string to_string(const SparsePolynomial& p, std::span<const std::string> names) {
  std::vector<std::string> fallback;
  if (names.empty()) {
    fallback = y_names(p.nvars());
    names = fallback;
  }
  if (names.size() != p.nvars()) throw Error(ErrorKind::LengthMismatch, "variable name count");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    std::string mono;
    for (std::size_t v = 0; v < p.nvars(); ++v) {
      const Exponent e = t.exponent[v];
      if (e == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[v];
      if (e != 1) mono += '^' + std::to_string(e);
    }
    const bool negative = sgn(t.coefficient) < 0;
    const Integer mag = abs(t.coefficient);
    std::string body;
    if (mono.empty()) body = mag.get_str();
    else if (mag == 1) body = mono;
    else body = mag.get_str() + '*' + mono;
    if (first) out += negative ? "-" + body : body;
    else out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const SparsePolynomial& p) { return os << to_string(p); }

namespace {

class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, std::size_t nvars, std::span<const std::string> names)
      : nvars_(nvars), names_(names) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_ += ch;
  }

  SparsePolynomial parse() {
    if (s_.empty()) fail("empty input");
    std::vector<Term> terms;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      Term t = term();
      if (sign < 0) t.coefficient = -t.coefficient;
      terms.push_back(std::move(t));
      first = false;
    }
    return SparsePolynomial::from_terms(nvars_, std::move(terms));
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::Parse, "polynomial text at offset " + std::to_string(pos_) + ": " + why);
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }

  Term term() {
    Term t{ExponentVector(nvars_), 1};
    for (;;) {
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        t.coefficient *= Integer(digits());
      } else {
        std::size_t best = names_.size(), best_len = 0;
        for (std::size_t v = 0; v < names_.size(); ++v) {
          const auto& nm = names_[v];
          if (nm.size() > best_len && s_.compare(pos_, nm.size(), nm) == 0) {
            best = v;
            best_len = nm.size();
          }
        }
        if (best == names_.size()) fail("unknown variable");
        pos_ += best_len;
        Exponent e = 1;
        if (peek() == '^') {
          ++pos_;
          bool neg = false;
          if (peek() == '-') {
            neg = true;
            ++pos_;
          }
          e = std::stoll(digits());
          if (neg) e = -e;
        }
        t.exponent[best] += e;
      }
      if (peek() != '*') break;
      ++pos_;
    }
    return t;
  }

  std::string s_;
  std::size_t pos_ = 0;
  std::size_t nvars_;
  std::span<const std::string> names_;
};

}  // namespace

SparsePolynomial parse_polynomial(std::string_view text, std::size_t nvars, std::span<const std::string> names) {
  std::vector<std::string> fallback;
  if (names.empty()) {
    fallback = y_names(nvars);
    names = fallback;
  }
  if (names.size() != nvars) throw Error(ErrorKind::LengthMismatch, "variable name count");
  return PolynomialParser(text, nvars, names).parse();
}

}  // namespace cafp

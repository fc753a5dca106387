#include "cafp/modp.hpp"

#include "cafp/error.hpp"

namespace cafp {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(ErrorKind::DenominatorVanishes, "inverse of zero residue");
  return powmod(a, p - 2, p);
}

std::uint64_t eval_mod_p(const SparsePolynomial& f, std::span<const std::uint64_t> point, std::uint64_t p) {
  if (point.size() != f.nvars()) throw Error(ErrorKind::LengthMismatch, "evaluation point length");
  std::uint64_t acc = 0;
  for (const auto& t : f.terms()) {
    Integer c;
    mpz_fdiv_r_ui(c.get_mpz_t(), t.coefficient.get_mpz_t(), static_cast<unsigned long>(p));
    std::uint64_t v = c.get_ui();
    for (std::size_t i = 0; i < point.size(); ++i) {
      const Exponent e = t.exponent[i];
      if (e > 0) v = mulmod(v, powmod(point[i], static_cast<std::uint64_t>(e), p), p);
      else if (e < 0) v = mulmod(v, powmod(invmod(point[i], p), static_cast<std::uint64_t>(-e), p), p);
    }
    acc = (acc + v) % p;
  }
  return acc;
}

std::uint64_t eval_mod_p(const RationalFunction& f, std::span<const std::uint64_t> point, std::uint64_t p) {
  const std::uint64_t d = eval_mod_p(f.den(), point, p);
  if (d == 0) throw Error(ErrorKind::DenominatorVanishes, "denominator is zero at the sample point");
  return mulmod(eval_mod_p(f.num(), point, p), invmod(d, p), p);
}

bool probably_equal(const RationalFunction& a, const RationalFunction& b, std::mt19937_64& rng, int trials,
                    std::uint64_t p) {
  if (a.nvars() != b.nvars()) return false;
  std::uniform_int_distribution<std::uint64_t> dist(1, p - 1);
  std::vector<std::uint64_t> point(a.nvars());
  int done = 0, attempts = 0;
  while (done < trials) {
    if (++attempts > 50 * trials) throw Error(ErrorKind::DenominatorVanishes, "no usable sample point");
    for (auto& x : point) x = dist(rng);
    try {
      if (eval_mod_p(a, point, p) != eval_mod_p(b, point, p)) return false;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DenominatorVanishes) continue;
      throw;
    }
    ++done;
  }
  return true;
}

}  // namespace cafp

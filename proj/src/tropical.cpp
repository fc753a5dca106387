#include "cafp/tropical.hpp"

#include <algorithm>

#include "cafp/error.hpp"

namespace cafp {

namespace {
void require_same_length(const TropicalElement& a, const TropicalElement& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "tropical elements of different rank");
}
}  // namespace

TropicalElement operator*(const TropicalElement& a, const TropicalElement& b) {
  require_same_length(a, b);
  return TropicalElement(a.v_ + b.v_);
}

TropicalElement operator/(const TropicalElement& a, const TropicalElement& b) {
  require_same_length(a, b);
  return TropicalElement(a.v_ - b.v_);
}

TropicalElement trop_add(const TropicalElement& a, const TropicalElement& b) {
  require_same_length(a, b);
  ExponentVector m(a.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(a.exponents()[i], b.exponents()[i]);
  return TropicalElement(std::move(m));
}

}  // namespace cafp

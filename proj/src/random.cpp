#include "cafp/random.hpp"

#include <algorithm>
#include <limits>

#include "cafp/error.hpp"
#include "cafp/seed.hpp"
#include "checked.hpp"

namespace cafp {

namespace {

RandomPattern draw_pattern(std::mt19937_64& rng, const RandomPatternOptions& options);

// One max-plus F-recurrence step in direction k, updating the degree columns.
void mutate_degrees(const SeedState& s, IntMatrix& deg, std::size_t k) {
  const std::size_t n = s.rank();
  const ExponentVector ck = s.c_vector(k);
  ExponentVector up(n), down(n);
  for (std::size_t v = 0; v < n; ++v) {
    up[v] = checked::pos(ck[v]);
    down[v] = checked::pos(-ck[v]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t b = s.b()(i, k);
    for (std::size_t v = 0; v < n; ++v) {
      if (b > 0) up[v] = checked::add(up[v], checked::mul(b, deg(v, i)));
      if (b < 0) down[v] = checked::add(down[v], checked::mul(-b, deg(v, i)));
    }
  }
  for (std::size_t v = 0; v < n; ++v) deg(v, k) = std::max(up[v], down[v]) - deg(v, k);
}

std::uint64_t volume(const IntMatrix& deg) {
  std::uint64_t worst = 0;
  for (std::size_t i = 0; i < deg.cols(); ++i) {
    unsigned __int128 vol = 1;
    for (std::size_t v = 0; v < deg.rows(); ++v) {
      vol *= static_cast<unsigned __int128>(deg(v, i)) + 1;
      if (vol > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    worst = std::max(worst, static_cast<std::uint64_t>(vol));
  }
  return worst;
}

std::uint64_t walk(const IntMatrix& b0, std::span<const std::size_t> seq, IntMatrix* final_deg) {
  SeedState s = SeedState::initial(b0, false);
  IntMatrix deg(b0.rows(), b0.rows());
  std::uint64_t worst = 1;
  for (std::size_t k : seq) {
    mutate_degrees(s, deg, k);
    s = mutate_seed(s, k);
    worst = std::max(worst, volume(deg));
  }
  if (final_deg) *final_deg = deg;
  return worst;
}

}  // namespace

IntMatrix f_degree_vectors(const IntMatrix& b0, std::span<const std::size_t> seq) {
  IntMatrix deg;
  walk(b0, seq, &deg);
  return deg;
}

std::uint64_t max_f_volume(const IntMatrix& b0, std::span<const std::size_t> seq) {
  try {
    return walk(b0, seq, nullptr);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Overflow) throw;
    return std::numeric_limits<std::uint64_t>::max();
  }
}

RandomPattern random_pattern(std::mt19937_64& rng, const RandomPatternOptions& options) {
  for (;;) {
    RandomPattern p = draw_pattern(rng, options);
    if (options.max_volume == 0 || max_f_volume(p.b0, p.seq) <= options.max_volume) return p;
  }
}

namespace {

RandomPattern draw_pattern(std::mt19937_64& rng, const RandomPatternOptions& options) {
  if (options.min_n == 0 || options.min_n > options.max_n)
    throw Error(ErrorKind::LengthMismatch, "empty rank range");
  const std::size_t n = std::uniform_int_distribution<std::size_t>(options.min_n, options.max_n)(rng);
  std::vector<std::int64_t> d(n);
  for (auto& v : d) v = std::uniform_int_distribution<std::int64_t>(1, 3)(rng);

  RandomPattern out{IntMatrix(n, n), {}};
  const std::int64_t m = options.max_entry;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // d_j b_ij = -d_i b_ji
      std::vector<std::int64_t> admissible;
      for (std::int64_t b = -m; b <= m; ++b) {
        if ((d[j] * b) % d[i] != 0) continue;
        const std::int64_t back = -(d[j] * b) / d[i];
        if (back >= -m && back <= m) admissible.push_back(b);
      }
      const std::int64_t b = admissible[std::uniform_int_distribution<std::size_t>(0, admissible.size() - 1)(rng)];
      out.b0(i, j) = b;
      out.b0(j, i) = -(d[j] * b) / d[i];
    }
  }

  const std::size_t len = std::uniform_int_distribution<std::size_t>(0, options.max_len)(rng);
  std::bernoulli_distribution repeat(options.repeat_probability);
  std::uniform_int_distribution<std::size_t> dir(0, n - 1);
  for (std::size_t k = 0; k < len; ++k)
    out.seq.push_back(!out.seq.empty() && repeat(rng) ? out.seq.back() : dir(rng));
  return out;
}

}  // namespace

}  // namespace cafp

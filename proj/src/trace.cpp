#include "cafp/trace.hpp"

#include "cafp/error.hpp"

namespace cafp {

std::vector<std::size_t> MutationTrace::directions() const {
  std::vector<std::size_t> out;
  for (const auto& s : steps_) out.push_back(s.direction);
  return out;
}

MutationTrace build_trace(const IntMatrix& b0, std::span<const std::size_t> seq, bool track_f) {
  return build_trace(b0, skew_symmetrizer(b0), seq, track_f);
}

MutationTrace build_trace(const IntMatrix& b0, const SkewSymmetrizer& d, std::span<const std::size_t> seq,
                          bool track_f) {
  MutationTrace trace;
  trace.seeds_.push_back(SeedState::initial(b0, d, track_f));
  for (std::size_t k : seq) {
    trace.seeds_.push_back(mutate_seed(trace.seeds_.back(), k));
    const SeedState& s = trace.seeds_.back();
    trace.steps_.push_back({k, s.c_vector_data(k), s.g_vector(k)});
  }

  const std::size_t n = b0.rows();
  const std::size_t len = trace.steps_.size();
  std::vector<ExponentVector> cs;
  for (const auto& st : trace.steps_) cs.push_back(st.data.c);

  trace.e_.assign(n, std::vector<std::int64_t>(len));
  for (std::size_t i = 0; i < n; ++i) {
    const ExponentVector gi = trace.g_end().column(i);
    for (std::size_t j = 0; j < len; ++j)
      trace.e_[i][j] = integral_inner_product_D(gi, cs[j], d, d[trace.steps_[j].direction]);
  }
  trace.a_.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    trace.a_[k].resize(k);
    for (std::size_t j = 0; j < k; ++j)
      trace.a_[k][j] = integral_inner_product_D(trace.steps_[k].data.c_hat_plus, cs[j], d,
                                                d[trace.steps_[j].direction]);
  }
  return trace;
}

}  // namespace cafp

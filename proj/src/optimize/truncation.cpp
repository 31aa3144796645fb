#include "rqichan/optimize/truncation.hpp"

#include <algorithm>
#include <cmath>

namespace rqichan::optimize {

TruncationResult adaptive_truncation(const std::function<double(Index)>& evaluator, Index k0, double eps,
                                     Index k_max, double floor) {
  if (!(eps > 0.0)) throw std::invalid_argument("adaptive_truncation: eps must be positive");
  if (k0 < 1 || k_max <= k0) throw std::invalid_argument("adaptive_truncation: need 1 <= k0 < k_max");
  TruncationResult res;
  double prev = evaluator(k0);
  res.evaluations = 1;
  for (Index k = k0; k + 1 <= k_max; ++k) {
    const double next = evaluator(k + 1);
    ++res.evaluations;
    res.value = next;
    res.cutoff_used = k + 1;
    if (std::abs(next - prev) / std::max(std::abs(next), floor) < eps) return res;
    prev = next;
  }
  throw TruncationError("adaptive_truncation: no convergence below cutoff " + std::to_string(k_max), res);
}

Index squeezed_tail_cutoff(double r, int N, double tail_mass) {
  if (N < 0) throw std::invalid_argument("squeezed_tail_cutoff: N must be >= 0");
  if (!(tail_mass > 0.0 && tail_mass < 1.0)) throw std::invalid_argument("squeezed_tail_cutoff: tail_mass in (0,1)");
  if (r == 0.0) return N + 1;
  // P(p) = C(p+N, p) t^{2p} / cosh^{2(N+1)}, a negative binomial in p
  const double t2 = std::pow(std::tanh(r), 2);
  double logp = -2.0 * (N + 1) * std::log(std::cosh(r));
  double cumulative = 0.0;
  for (Index p = 0;; ++p) {
    if (p > 0) logp += std::log(t2 * static_cast<double>(p + N) / static_cast<double>(p));
    cumulative += std::exp(logp);
    if (1.0 - cumulative < tail_mass) return N + p + 1;
    if (p > 100000000) throw std::overflow_error("squeezed_tail_cutoff: cutoff too large");
  }
}

}  // namespace rqichan::optimize

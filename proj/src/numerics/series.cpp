#include "rqichan/numerics/series.hpp"

#include <cmath>

namespace rqichan::numerics {

void ConvergenceConfig::validate() const {
  if (!(eps_tail > 0.0) || !(eps_pc > 0.0)) {
    throw std::invalid_argument("convergence tolerances must be positive");
  }
  if (max_terms < 2) {
    throw std::invalid_argument("max_terms must be at least 2");
  }
}

SeriesResult sum_series(const TermGenerator& term, const ConvergenceConfig& config) {
  config.validate();

  std::size_t k = 0;
  double prev = term(k++);
  double sum = prev;
  while (prev == 0.0 && k < config.max_terms) {
    prev = term(k++);
    sum += prev;
  }

  double last_tail = 0.0;
  double prev_total = 0.0;
  bool have_prev_total = false;
  int zero_run = 0;

  for (; k < config.max_terms; ++k) {
    const double u = term(k);
    sum += u;
    if (u == 0.0) {
      have_prev_total = false;
      prev = 0.0;
      if (++zero_run >= 3) {
        return {sum, k + 1, 0.0, true};
      }
      continue;
    }
    zero_run = 0;

    const double ratio = u / prev;
    prev = u;
    if (!(ratio > 0.0 && ratio < 1.0)) {
      have_prev_total = false;
      continue;
    }

    const double tail = u * ratio / (1.0 - ratio);
    const double total = sum + tail;
    last_tail = tail;
    const bool tail_ok = std::abs(tail) < config.eps_tail * std::abs(sum);
    const bool step_ok =
        have_prev_total && std::abs(total - prev_total) < config.eps_pc * std::abs(total);
    prev_total = total;
    have_prev_total = true;
    if (tail_ok && step_ok) {
      return {total, k + 1, tail, true};
    }
  }
  return {sum, k, last_tail, false};
}

double sum_series_or_throw(const TermGenerator& term, const ConvergenceConfig& config,
                           const std::string& what) {
  SeriesResult res = sum_series(term, config);
  if (!res.converged) {
    throw ConvergenceError(what + ": series did not converge within " +
                               std::to_string(config.max_terms) + " terms",
                           res);
  }
  return res.value;
}

}  // namespace rqichan::numerics

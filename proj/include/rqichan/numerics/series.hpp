#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace rqichan::numerics {

/// Tolerances for the ratio/tail convergence test.
struct ConvergenceConfig {
  double eps_tail = 1e-10;  ///< relative size of the geometric tail estimate
  double eps_pc = 1e-10;    ///< relative change of the tail-corrected sum between steps
  std::size_t max_terms = 100000;

  /// Throws std::invalid_argument unless eps_tail, eps_pc > 0 and max_terms >= 2.
  void validate() const;
};

struct SeriesResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  double tail_estimate = 0.0;
  bool converged = false;
};

/// Thrown when a caller needs a converged value and the series did not deliver one.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, SeriesResult best)
      : std::runtime_error(what), best_(best) {}
  const SeriesResult& best() const noexcept { return best_; }

 private:
  SeriesResult best_;
};

using TermGenerator = std::function<double(std::size_t)>;

/// Sums term(0) + term(1) + ... with a geometric tail estimate.
///
/// At step i the ratio rho = u_i / u_{i-1} must satisfy 0 < rho < 1; the tail
/// is then T_i = u_i rho / (1 - rho). The sum is accepted once
/// T_i / S_i < eps_tail and |S_i + T_i - (S_{i-1} + T_{i-1})| / (S_i + T_i) < eps_pc.
/// Steps whose ratio falls outside (0, 1) never report success. Leading zero
/// terms are skipped before ratio testing. A run of three exactly-zero terms
/// after a nonzero one ends a terminating series with tail 0.
///
/// The returned value is the tail-corrected sum when converged, otherwise the
/// plain partial sum after the budget ran out.
SeriesResult sum_series(const TermGenerator& term, const ConvergenceConfig& config = {});

/// Same as sum_series but throws ConvergenceError when not converged.
double sum_series_or_throw(const TermGenerator& term, const ConvergenceConfig& config,
                           const std::string& what);

}  // namespace rqichan::numerics

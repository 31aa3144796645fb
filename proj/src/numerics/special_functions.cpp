#include "rqichan/numerics/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rqichan::numerics {

namespace {

bool non_positive_integer(double b) { return b <= 0.0 && std::floor(b) == b; }

}  // namespace

SeriesResult polylog(double s, double z, const ConvergenceConfig& config) {
  if (!(z >= 0.0 && z < 1.0)) {
    throw std::domain_error("polylog: z must lie in [0,1)");
  }
  if (z == 0.0) {
    return {0.0, 1, 0.0, true};
  }
  const double lz = std::log(z);
  return sum_series(
      [&](std::size_t i) {
        const double k = static_cast<double>(i + 1);
        return std::exp(k * lz - s * std::log(k));
      },
      config);
}

SeriesResult lerch_phi(double z, double s, double a, const ConvergenceConfig& config) {
  if (!(z >= 0.0 && z < 1.0)) {
    throw std::domain_error("lerch_phi: z must lie in [0,1)");
  }
  if (!(a > 0.0)) {
    throw std::domain_error("lerch_phi: a must be positive");
  }
  if (z == 0.0) {
    return {std::pow(a, -s), 1, 0.0, true};
  }
  const double lz = std::log(z);
  return sum_series(
      [&](std::size_t i) {
        const double k = static_cast<double>(i);
        return std::exp(k * lz - s * std::log(a + k));
      },
      config);
}

SeriesResult hypergeometric_pfq(std::span<const double> a, std::span<const double> b, double x,
                                const ConvergenceConfig& config) {
  for (double bj : b) {
    if (non_positive_integer(bj)) {
      throw std::domain_error("hypergeometric_pfq: b contains a non-positive integer");
    }
  }
  if (!(std::abs(x) < 1.0)) {
    throw std::domain_error("hypergeometric_pfq: |x| must be below 1");
  }
  if (x == 0.0) {
    return {1.0, 1, 0.0, true};
  }

  // sum_series asks for terms in order, so the running term is carried along;
  // an out-of-order request restarts the recurrence.
  std::size_t last_k = 0;
  double last_term = 1.0;
  auto term = [&](std::size_t k) {
    if (k < last_k) {
      last_k = 0;
      last_term = 1.0;
    }
    while (last_k < k) {
      const double kk = static_cast<double>(last_k);
      double ratio = x / (kk + 1.0);
      for (double ai : a) ratio *= ai + kk;
      for (double bj : b) ratio /= bj + kk;
      last_term *= ratio;
      ++last_k;
    }
    return last_term;
  };
  return sum_series(term, config);
}

}  // namespace rqichan::numerics

#include "rqichan/channel/bogoliubov.hpp"

#include <cmath>
#include <stdexcept>

namespace rqichan::channel {

std::vector<std::complex<double>> bogoliubov_vacuum_coefficients(std::complex<double> alpha,
                                                                  std::complex<double> beta, int p_max) {
  if (alpha == std::complex<double>(0.0, 0.0)) {
    throw std::invalid_argument("bogoliubov_vacuum_coefficients: alpha must be nonzero");
  }
  if (p_max < 0) throw std::invalid_argument("bogoliubov_vacuum_coefficients: p_max must be >= 0");
  std::vector<std::complex<double>> v(static_cast<std::size_t>(p_max) + 1, 0.0);
  v[0] = 1.0;
  const std::complex<double> ratio = -std::conj(beta) / std::conj(alpha);
  for (int p = 0; p + 2 <= p_max; p += 2) {
    v[static_cast<std::size_t>(p + 2)] =
        ratio * std::sqrt(static_cast<double>(p + 1) / static_cast<double>(p + 2)) * v[static_cast<std::size_t>(p)];
  }
  double norm2 = 0.0;
  for (const auto& c : v) norm2 += std::norm(c);
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& c : v) c *= scale;
  return v;
}

}  // namespace rqichan::channel

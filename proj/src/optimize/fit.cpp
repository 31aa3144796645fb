#include "rqichan/optimize/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace rqichan::optimize {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: x and y differ in length");
  if (x.size() < 2) throw std::invalid_argument("fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: x values are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.slope * x[i] + f.intercept);
    ss += e * e;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

FitResult fit_noon_decay(std::span<const std::pair<int, double>> samples, double r) {
  if (samples.size() < 3) throw std::invalid_argument("fit_noon_decay: need at least three samples");
  std::vector<double> x, y;
  for (const auto& [N, F] : samples) {
    if (N < 1) throw std::invalid_argument("fit_noon_decay: N must be >= 1");
    if (!(F > 0.0)) throw std::domain_error("fit_noon_decay: Fisher information must be positive");
    x.push_back(static_cast<double>(N));
    y.push_back(std::log(F / (static_cast<double>(N) * N)));
  }
  const LineFit line = fit_line(x, y);
  return {-line.slope, line.intercept, line.rms, {r, r}};
}

}  // namespace rqichan::optimize

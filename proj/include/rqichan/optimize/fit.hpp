#pragma once

#include <span>
#include <utility>
#include <vector>

namespace rqichan::optimize {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;  // root-mean-square residual
};

/// Ordinary least squares y = slope x + intercept; needs two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct FitResult {
  double a_r = 0.0;
  double b_r = 0.0;
  double residual = 0.0;
  std::pair<double, double> window{0.0, 0.0};  // r range the samples came from
};

/// Fits ln(F / N^2) = -a N + b to (N, F) samples taken at squeezing r.
FitResult fit_noon_decay(std::span<const std::pair<int, double>> samples, double r);

}  // namespace rqichan::optimize

#pragma once

#include <span>

#include "rqichan/numerics/series.hpp"

namespace rqichan::numerics {

/// Li_s(z) = sum_{k>=1} z^k / k^s for z in [0,1).
SeriesResult polylog(double s, double z, const ConvergenceConfig& config = {});

/// Lerch transcendent Phi(z, s, a) = sum_{k>=0} z^k / (a+k)^s.
/// Only z in [0,1) and a > 0 are supported; anything else is a domain error.
SeriesResult lerch_phi(double z, double s, double a, const ConvergenceConfig& config = {});

/// pFq(a; b; x). Term ratios are updated incrementally, so large Pochhammer
/// symbols never appear on their own.
SeriesResult hypergeometric_pfq(std::span<const double> a, std::span<const double> b, double x,
                                const ConvergenceConfig& config = {});

}  // namespace rqichan::numerics

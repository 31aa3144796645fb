#pragma once

#include <vector>

#include "rqichan/channel/channel.hpp"
#include "rqichan/optimize/quantities.hpp"

namespace rqichan::optimize {

struct CapacityConfig {
  double coarse_step = 0.05;
  double fine_step = 0.005;
  double fine_half_width = 0.025;
  TruncationConfig truncation;
  Index cutoff = 0;  // 0 -> adaptive truncation at the grid centre
};

struct GridValue {
  double alpha2 = 0.0;
  double q_R = 0.0;
  double value = 0.0;
};

struct CapacityOptimum {
  double alpha2 = 0.0;
  double q_R = 0.0;
  double value = 0.0;
  Index cutoff_used = 0;
  std::vector<GridValue> coarse;  // every coarse point, q_R major
};

/// Holevo information maximised over (alpha2, q_R) by a coarse grid and one
/// finer grid around the best coarse point. Ties go to larger q_R, then larger alpha2.
/// Only the single rail is supported.
CapacityOptimum optimize_capacity_2d(double r, channel::Rail rail = channel::Rail::single,
                                     const CapacityConfig& config = {});

}  // namespace rqichan::optimize

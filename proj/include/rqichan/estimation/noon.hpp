#pragma once

#include "rqichan/channel/channel.hpp"
#include "rqichan/estimation/fisher.hpp"

namespace rqichan::estimation {

inline constexpr double kNoonDefaultTheta = 0.65;

struct NoonConfig {
  double eps = 1e-6;
  double tail_mass = 1e-8;  // first cutoff leaves this much squeezed weight out
  Index k0 = 0;             // 0 -> derive from tail_mass
  Index k_max = 20000;
  QfiConfig qfi;
};

/// Rob's state (Rbar traced out) for a NOON probe, with the analytic derivative.
ParametrizedState noon_state(int N, channel::Rail rail, double r, double theta, Index cutoff);

FisherResult noon_qfi_at_cutoff(int N, channel::Rail rail, double r, double theta, Index cutoff,
                                const QfiConfig& config = {});

/// Adaptive truncation over the per-mode cutoff. Throws optimize::TruncationError
/// with the partial result when k_max is reached.
FisherResult noon_qfi(int N, channel::Rail rail, double r, double theta = kNoonDefaultTheta,
                      const NoonConfig& config = {});

}  // namespace rqichan::estimation

#pragma once

#include "rqichan/channel/channel.hpp"
#include "rqichan/optimize/sweep.hpp"
#include "rqichan/optimize/truncation.hpp"

namespace rqichan::optimize {

struct TruncationConfig {
  double eps = 1e-6;
  double tail_mass = 1e-7;  // picks the first cutoff tried
  Index k_max = 20000;
};

/// Holevo information (bits) of the classical bit with P(0) = alpha2 sent over the
/// rail and read by Rob alone. q_R is the real wedge weight, q_L = sqrt(1 - q_R^2).
double holevo_at_cutoff(channel::Rail rail, double r, double q_R, double alpha2, Index cutoff);
Evaluation holevo_numeric(channel::Rail rail, double r, double q_R, double alpha2,
                          const TruncationConfig& config = {});

/// Coherent information A -> R (ebits) of the maximally entangled qubit input.
double coherent_at_cutoff(channel::Rail rail, double r, double q_R, Index cutoff);
Evaluation coherent_numeric(channel::Rail rail, double r, double q_R, const TruncationConfig& config = {});

/// Uhlmann fidelity between Rob's images of logical 0 and 1 under the single wedge mapping.
double fidelity_at_cutoff(channel::Rail rail, double r, Index cutoff);
Evaluation fidelity_numeric(channel::Rail rail, double r, const TruncationConfig& config = {});

/// First cutoff for a one-excitation payload at squeezing r.
Index first_cutoff(double r, double tail_mass);

}  // namespace rqichan::optimize

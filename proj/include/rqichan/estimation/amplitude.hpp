#pragma once

#include <string_view>

#include "rqichan/channel/channel.hpp"
#include "rqichan/estimation/fisher.hpp"
#include "rqichan/numerics/series.hpp"

namespace rqichan::estimation {

/// Who measures, and over which rail, when estimating theta in cos(theta)|0> + sin(theta)|1>.
/// The _rob setups trace Alice out; classical_joint sends the cos^2/sin^2 mixture on one rail.
enum class AmplitudeSetup { single_rob, dual_rob, single_joint, dual_joint, classical_joint };

std::string_view amplitude_setup_name(AmplitudeSetup s);
AmplitudeSetup parse_amplitude_setup(std::string_view name);

/// Series/closed-form value. The _rob variants throw std::domain_error at
/// theta on a multiple of pi/2; at r = 0 every setup gives 4.
double qfi_closed_form_amplitude(AmplitudeSetup setup, double r, double theta,
                                 const numerics::ConvergenceConfig& config = {});

struct AmplitudeConfig {
  double eps = 1e-6;
  double tail_mass = 1e-9;  // sets the first cutoff tried
  Index k_max = 20000;
  QfiConfig qfi;
};

/// Channel state of the setup at a fixed cutoff, with its analytic theta derivative.
ParametrizedState amplitude_state(AmplitudeSetup setup, double r, double theta, Index cutoff);

/// qfi on the truncated state, cutoff chosen by adaptive truncation.
FisherResult qfi_numeric_amplitude(AmplitudeSetup setup, double r, double theta, const AmplitudeConfig& config = {});

}  // namespace rqichan::estimation

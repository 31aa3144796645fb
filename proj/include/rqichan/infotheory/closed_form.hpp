#pragma once

#include <string_view>

#include "rqichan/numerics/series.hpp"

namespace rqichan::infotheory {

enum class ClosedForm {
  holevo_single_classical,
  holevo_dual_classical,
  cond_entropy_single_quantum,
  cond_entropy_dual_quantum,
  fidelity_single,
  fidelity_dual,
};

std::string_view closed_form_name(ClosedForm q);

/// Series value of the chosen quantity under the single wedge mapping.
/// alpha2 is ignored by the dual-rail quantities, which use alpha2 = 1/2.
/// Throws numerics::ConvergenceError when the series does not settle.
double closed_form(ClosedForm quantity, double r, double alpha2 = 0.5,
                   const numerics::ConvergenceConfig& config = {});

/// As above but returns the raw series result instead of throwing.
numerics::SeriesResult closed_form_series(ClosedForm quantity, double r, double alpha2 = 0.5,
                                          const numerics::ConvergenceConfig& config = {});

}  // namespace rqichan::infotheory

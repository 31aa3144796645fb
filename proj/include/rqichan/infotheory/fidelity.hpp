#pragma once

#include "rqichan/fock/states.hpp"

namespace rqichan::infotheory {

/// Uhlmann fidelity (Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2, clamped to [0,1].
/// Commuting inputs (max |[rho1,rho2]| < 1e-12) use (Tr sqrt(rho1 rho2))^2 instead.
double fidelity(const fock::DensityMatrix& rho1, const fock::DensityMatrix& rho2);

inline double distinguishability(const fock::DensityMatrix& rho1, const fock::DensityMatrix& rho2) {
  return 1.0 - fidelity(rho1, rho2);
}

}  // namespace rqichan::infotheory

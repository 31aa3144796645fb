#pragma once

#include <complex>
#include <vector>

namespace rqichan::channel {

/// Fock coefficients v_0..v_{p_max} of the transformed vacuum, from
/// v_1 = 0 and v_{p+2} = -(conj(beta)/conj(alpha)) sqrt(p+1)/sqrt(p+2) v_p,
/// normalised over the returned range with v_0 real and positive.
std::vector<std::complex<double>> bogoliubov_vacuum_coefficients(std::complex<double> alpha,
                                                                  std::complex<double> beta, int p_max);

}  // namespace rqichan::channel

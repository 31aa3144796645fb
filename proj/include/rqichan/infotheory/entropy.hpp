#pragma once

#include <span>
#include <vector>

#include "rqichan/fock/states.hpp"

namespace rqichan::infotheory {

using fock::DensityMatrix;
using fock::Mode;

/// Spectrum entries below this contribute nothing to an entropy.
inline constexpr double kEigenvalueFloor = 1e-15;

/// -sum p lb p. The distribution must be non-negative and sum to 1 within 1e-10.
double shannon_entropy(std::span<const double> p);

/// Same sum over a spectrum that may be sub-normalised by truncation. Values
/// in [-1e-10, 0) are clamped; lower ones throw fock::NegativeEigenvalueError.
double spectrum_entropy(std::span<const double> eigenvalues);

double von_neumann_entropy(const DensityMatrix& rho);

struct EntropyReport {
  double s_a = 0.0;
  double s_b = 0.0;
  double s_ab = 0.0;
  double mutual = 0.0;
  double conditional_a_given_b = 0.0;
  double coherent_a_to_b = 0.0;
};

/// The two groups must cover every mode of rho exactly once.
EntropyReport entropy_report(const DensityMatrix& rho_ab, std::span<const Mode> modes_a,
                             std::span<const Mode> modes_b);

/// S(sum p_x sigma_x) - sum p_x S(sigma_x), with the states given on a common layout.
double holevo_information(std::span<const double> probabilities, std::span<const DensityMatrix> states);

struct SubadditivityResult {
  double sum_conditional = 0.0;
  bool satisfied = false;
};

/// [S(A Rbar) - S(Rbar)] + [S(A R) - S(R)] over the three mode groups.
SubadditivityResult subadditivity_check(const DensityMatrix& rho, std::span<const Mode> alice,
                                        std::span<const Mode> rob, std::span<const Mode> antirob,
                                        double tolerance = 1e-8);

}  // namespace rqichan::infotheory

#pragma once

#include <functional>

#include "rqichan/fock/states.hpp"

namespace rqichan::estimation {

using fock::DensityMatrix;
using fock::Index;

struct ParametrizedState {
  std::function<DensityMatrix(double)> builder;
  std::function<DensityMatrix(double)> derivative;  // empty -> central finite difference
  double theta = 0.0;
};

enum class FisherPath { diagonal, general };

struct FisherResult {
  double value = 0.0;
  FisherPath path = FisherPath::general;
  Index cutoff_used = 0;
  double fd_step = 0.0;  // nonzero when the derivative was taken numerically
};

struct QfiConfig {
  double fd_step = 1e-5;
  double support_floor = 1e-12;     // lambda_j + lambda_k below this contributes nothing
  double diagonal_threshold = 1e-12;  // off-diagonal mass that still counts as diagonal
};

/// Entries 2 B_jk / (lambda_j + lambda_k), zero where the sum is below floor.
Eigen::MatrixXcd lowering_superoperator(const Eigen::VectorXd& eigs, const Eigen::MatrixXcd& B,
                                        double floor = 1e-12);

/// Tr[rho' L(rho')] in the eigenbasis of rho. Throws std::invalid_argument when
/// rho' is not hermitian.
FisherResult qfi(const ParametrizedState& state, const QfiConfig& config = {});

/// Same evaluation for an already built pair (rho, rho').
FisherResult qfi_from_pair(const DensityMatrix& rho, const DensityMatrix& drho, const QfiConfig& config = {});

/// 1/(n F). Throws std::domain_error for fisher <= 0 (unbounded variance).
double cramer_rao_bound(double fisher, long n_measurements);

}  // namespace rqichan::estimation

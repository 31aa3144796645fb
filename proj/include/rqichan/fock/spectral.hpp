#pragma once

#include <stdexcept>
#include <vector>

#include "rqichan/fock/states.hpp"

namespace rqichan::fock {

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kNegativeEigenvalueFloor = -1e-10;

/// Eigenpairs of one connected block of a sparse hermitian matrix.
/// Path-shaped blocks (tridiagonal after reordering) keep real eigenvectors plus
/// a diagonal phase; other blocks keep complex eigenvectors.
struct EigenBlock {
  std::vector<Index> indices;  // global indices in the order the vectors use
  Eigen::VectorXd values;      // ascending
  Eigen::VectorXcd phases;     // non-empty for path-shaped blocks
  Eigen::MatrixXd real_vectors;
  Eigen::MatrixXcd vectors;

  bool is_path() const { return phases.size() > 0; }
  bool has_vectors() const { return real_vectors.size() > 0 || vectors.size() > 0; }
  Eigen::MatrixXcd complex_vectors() const;
};

struct Eigensystem {
  Index dim = 0;
  std::vector<EigenBlock> blocks;  // indices never touched by a nonzero are left out (eigenvalue 0)

  /// All dim eigenvalues, descending.
  std::vector<double> eigenvalues() const;
  /// Dense dim x dim eigenvector matrix with columns in the order of eigenvalues().
  /// Only sensible for small dimensions.
  Eigen::MatrixXcd dense_vectors() const;
};

using Partition = std::vector<std::vector<Index>>;

/// Connected components of the union of the nonzero patterns of a and b (b optional).
/// Indices that carry no nonzero at all are omitted. Components are sorted by
/// their smallest index, and each component is ascending.
Partition block_partition(const SparseMatrix& a, const SparseMatrix* b = nullptr);

/// Eigendecomposition block by block; the partition must not split any nonzero.
Eigensystem block_eigendecomposition(const SparseMatrix& m, const Partition& blocks, bool with_vectors);

/// Throws std::invalid_argument when rho is not hermitian to kHermitianTolerance.
Eigensystem hermitian_eigendecomposition(const DensityMatrix& rho);
std::vector<double> eigenvalues(const DensityMatrix& rho);

class NegativeEigenvalueError : public std::runtime_error {
 public:
  explicit NegativeEigenvalueError(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Sets eigenvalues in [floor, 0) to 0; anything below floor throws.
std::vector<double> clamp_spectrum(std::vector<double> values, double floor = kNegativeEigenvalueFloor);

/// Rows/cols `idx` of m as a dense matrix.
Eigen::MatrixXcd dense_block(const SparseMatrix& m, const std::vector<Index>& idx);

}  // namespace rqichan::fock

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "rqichan/fock/mode_layout.hpp"

namespace rqichan::fock {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor, Index>;
using SparseVector = Eigen::SparseVector<Complex, Eigen::ColMajor, Index>;
using Triplet = Eigen::Triplet<Complex, Index>;

/// Operator on a truncated multi-mode Fock space. Storage is sparse since the
/// channel outputs are banded and the cutoffs get large at strong squeezing.
/// Construction does not check positivity; see spectral.hpp for that.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(Layout layout, SparseMatrix m);

  static DensityMatrix from_triplets(Layout layout, const std::vector<Triplet>& triplets);
  static DensityMatrix from_dense(Layout layout, const Eigen::MatrixXcd& m);
  static DensityMatrix diagonal(Layout layout, std::span<const double> values);

  const Layout& layout() const { return layout_; }
  const SparseMatrix& matrix() const { return m_; }
  Index dim() const { return layout_.dim(); }
  Complex coeff(Index row, Index col) const { return m_.coeff(row, col); }

  Complex trace() const;
  /// max |rho_ij - conj(rho_ji)|
  double hermiticity_error() const;
  DensityMatrix renormalized() const;
  Eigen::MatrixXcd to_dense() const;

  DensityMatrix& operator+=(const DensityMatrix& other);
  DensityMatrix& operator*=(Complex s);

 private:
  Layout layout_;
  SparseMatrix m_;
};

DensityMatrix operator+(DensityMatrix a, const DensityMatrix& b);
DensityMatrix operator-(DensityMatrix a, const DensityMatrix& b);
DensityMatrix operator*(Complex s, DensityMatrix a);

class PureState {
 public:
  PureState() = default;
  PureState(Layout layout, SparseVector amplitudes);

  static PureState from_dense(Layout layout, const Eigen::VectorXcd& amplitudes);
  /// Single basis vector given by per-mode occupations.
  static PureState basis(Layout layout, std::span<const Index> occupations);

  const Layout& layout() const { return layout_; }
  const SparseVector& amplitudes() const { return v_; }
  Index dim() const { return layout_.dim(); }

  double norm() const;
  PureState normalized() const;
  DensityMatrix projector() const;

  PureState& operator+=(const PureState& other);
  PureState& operator*=(Complex s);

 private:
  Layout layout_;
  SparseVector v_;
};

PureState operator+(PureState a, const PureState& b);
PureState operator*(Complex s, PureState a);

/// Kronecker product; the layouts must not share mode labels.
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor_product(const PureState& a, const PureState& b);

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Mode> discard);
DensityMatrix partial_trace(const PureState& psi, std::span<const Mode> discard);

/// Tr_discard |ket><bra|. Both states must share a layout.
DensityMatrix partial_trace_cross(const PureState& ket, const PureState& bra,
                                  std::span<const Mode> discard);

/// Reorders the modes to `order`, which must be a permutation of the current labels.
DensityMatrix permute_modes(const DensityMatrix& rho, std::span<const Mode> order);
/// Renames modes pairwise (from[i] -> to[i]) without moving any data.
DensityMatrix relabel(const DensityMatrix& rho, std::span<const Mode> from, std::span<const Mode> to);

}  // namespace rqichan::fock

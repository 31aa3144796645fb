#include "rqichan/estimation/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rqichan/fock/spectral.hpp"

namespace rqichan::estimation {

namespace {

using fock::Complex;
using fock::SparseMatrix;

constexpr double kDerivativeHermitianTolerance = 1e-10;
constexpr Index kColumnChunk = 256;

double offdiagonal_mass(const SparseMatrix& m) {
  double s = 0.0;
  for (Index j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      if (it.row() != j) s += std::abs(it.value());
    }
  }
  return s;
}

double diagonal_fisher(const SparseMatrix& rho, const SparseMatrix& drho, double floor) {
  const Eigen::VectorXcd p = rho.diagonal();
  const Eigen::VectorXcd dp = drho.diagonal();
  double f = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    const double lam = p(i).real();
    if (2.0 * lam < floor) continue;
    f += dp(i).real() * dp(i).real() / lam;
  }
  return f;
}

// Sum 2|B_jk|^2/(l_j+l_k) over one column chunk of B.
double weighted_chunk(const Eigen::VectorXd& lam, Index c0, const Eigen::MatrixXd& bre, const Eigen::MatrixXd* bim,
                      double floor) {
  double f = 0.0;
  for (Index k = 0; k < bre.cols(); ++k) {
    const double lk = lam(c0 + k);
    for (Index j = 0; j < bre.rows(); ++j) {
      const double den = lam(j) + lk;
      if (den < floor) continue;
      double m2 = bre(j, k) * bre(j, k);
      if (bim) m2 += (*bim)(j, k) * (*bim)(j, k);
      f += 2.0 * m2 / den;
    }
  }
  return f;
}

double path_block_fisher(const fock::EigenBlock& blk, const std::vector<std::pair<Index, Index>>& local,
                         const SparseMatrix& drho, double floor) {
  // B = U^T (D^dag rho' D) U with U real and D the stored phases
  const Index n = static_cast<Index>(blk.indices.size());
  std::vector<Eigen::Triplet<double, Index>> tre, tim;
  for (Index c = 0; c < n; ++c) {
    const Index g = blk.indices[static_cast<std::size_t>(c)];
    for (SparseMatrix::InnerIterator it(drho, g); it; ++it) {
      auto pos = std::lower_bound(local.begin(), local.end(), std::make_pair(it.row(), Index{-1}));
      if (pos == local.end() || pos->first != it.row()) continue;
      const Index r = pos->second;
      const Complex v = std::conj(blk.phases(r)) * it.value() * blk.phases(c);
      if (v.real() != 0.0) tre.emplace_back(r, c, v.real());
      if (v.imag() != 0.0) tim.emplace_back(r, c, v.imag());
    }
  }
  if (tre.empty() && tim.empty()) return 0.0;
  Eigen::SparseMatrix<double, Eigen::ColMajor, Index> pre(n, n), pim(n, n);
  pre.setFromTriplets(tre.begin(), tre.end());
  pim.setFromTriplets(tim.begin(), tim.end());
  const Eigen::MatrixXd& u = blk.real_vectors;
  const bool has_re = !tre.empty(), has_im = !tim.empty();
  double f = 0.0;
  for (Index c0 = 0; c0 < n; c0 += kColumnChunk) {
    const Index w = std::min(kColumnChunk, n - c0);
    Eigen::MatrixXd bre, bim;
    if (has_re) bre = u.transpose() * (pre * u.middleCols(c0, w));
    if (has_im) bim = u.transpose() * (pim * u.middleCols(c0, w));
    if (has_re) {
      f += weighted_chunk(blk.values, c0, bre, has_im ? &bim : nullptr, floor);
    } else {
      f += weighted_chunk(blk.values, c0, bim, nullptr, floor);
    }
  }
  return f;
}

double dense_block_fisher(const fock::EigenBlock& blk, const SparseMatrix& drho, double floor) {
  const Eigen::MatrixXcd v = blk.vectors;
  const Eigen::MatrixXcd b = v.adjoint() * fock::dense_block(drho, blk.indices) * v;
  const Eigen::MatrixXcd l = lowering_superoperator(blk.values, b, floor);
  // Tr[B L(B)]
  return (b.transpose().array() * l.array()).sum().real();
}

}  // namespace

Eigen::MatrixXcd lowering_superoperator(const Eigen::VectorXd& eigs, const Eigen::MatrixXcd& B, double floor) {
  if (B.rows() != eigs.size() || B.cols() != eigs.size()) {
    throw std::invalid_argument("lowering_superoperator: size mismatch");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(B.rows(), B.cols());
  for (Index k = 0; k < B.cols(); ++k) {
    for (Index j = 0; j < B.rows(); ++j) {
      const double den = eigs(j) + eigs(k);
      if (den >= floor) out(j, k) = 2.0 * B(j, k) / den;
    }
  }
  return out;
}

FisherResult qfi_from_pair(const DensityMatrix& rho, const DensityMatrix& drho, const QfiConfig& config) {
  if (!(rho.layout() == drho.layout())) throw std::invalid_argument("qfi: rho and rho' live on different layouts");
  const double herr = drho.hermiticity_error();
  if (herr > kDerivativeHermitianTolerance) {
    throw std::invalid_argument("qfi: derivative is not hermitian (deviation " + std::to_string(herr) + ")");
  }
  const double rerr = rho.hermiticity_error();
  if (rerr > fock::kHermitianTolerance) {
    throw std::invalid_argument("qfi: state is not hermitian (deviation " + std::to_string(rerr) + ")");
  }

  FisherResult res;
  for (const auto& m : rho.layout().modes()) res.cutoff_used = std::max(res.cutoff_used, m.cutoff);

  const SparseMatrix& a = rho.matrix();
  const SparseMatrix& b = drho.matrix();
  if (offdiagonal_mass(a) + offdiagonal_mass(b) < config.diagonal_threshold) {
    res.path = FisherPath::diagonal;
    res.value = diagonal_fisher(a, b, config.support_floor);
    return res;
  }

  res.path = FisherPath::general;
  const fock::Eigensystem sys = fock::block_eigendecomposition(a, fock::block_partition(a, &b), true);
  double f = 0.0;
  for (const auto& blk : sys.blocks) {
    if (blk.values.size() > 0 && blk.values.minCoeff() < fock::kNegativeEigenvalueFloor) {
      throw fock::NegativeEigenvalueError(blk.values.minCoeff());
    }
    if (blk.is_path()) {
      std::vector<std::pair<Index, Index>> local(blk.indices.size());
      for (std::size_t k = 0; k < blk.indices.size(); ++k) local[k] = {blk.indices[k], static_cast<Index>(k)};
      std::sort(local.begin(), local.end());
      f += path_block_fisher(blk, local, b, config.support_floor);
    } else {
      f += dense_block_fisher(blk, b, config.support_floor);
    }
  }
  res.value = std::max(f, 0.0);
  return res;
}

FisherResult qfi(const ParametrizedState& state, const QfiConfig& config) {
  if (!state.builder) throw std::invalid_argument("qfi: state has no builder");
  const DensityMatrix rho = state.builder(state.theta);
  if (state.derivative) return qfi_from_pair(rho, state.derivative(state.theta), config);
  const double h = config.fd_step;
  if (!(h > 0.0)) throw std::invalid_argument("qfi: finite-difference step must be positive");
  DensityMatrix d = state.builder(state.theta + h) - state.builder(state.theta - h);
  d *= Complex(0.5 / h, 0.0);
  FisherResult res = qfi_from_pair(rho, d, config);
  res.fd_step = h;
  return res;
}

double cramer_rao_bound(double fisher, long n_measurements) {
  if (n_measurements < 1) throw std::invalid_argument("cramer_rao_bound: need at least one measurement");
  if (!(fisher > 0.0)) throw std::domain_error("cramer_rao_bound: Fisher information <= 0, variance is unbounded");
  return 1.0 / (static_cast<double>(n_measurements) * fisher);
}

}  // namespace rqichan::estimation

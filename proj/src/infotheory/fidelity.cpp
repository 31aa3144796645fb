#include "rqichan/infotheory/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rqichan/fock/spectral.hpp"

namespace rqichan::infotheory {

using fock::Complex;
using fock::Index;
using fock::SparseMatrix;

namespace {

constexpr double kCommuteTolerance = 1e-12;

bool is_diagonal(const SparseMatrix& m) {
  for (Index j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      if (it.row() != j && it.value() != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

double max_abs(const SparseMatrix& m) {
  double w = 0.0;
  for (Index j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) w = std::max(w, std::abs(it.value()));
  }
  return w;
}

double finish(double root_fidelity) { return std::clamp(root_fidelity * root_fidelity, 0.0, 1.0); }

}  // namespace

double fidelity(const fock::DensityMatrix& rho1, const fock::DensityMatrix& rho2) {
  if (!(rho1.layout() == rho2.layout())) throw std::invalid_argument("fidelity: layouts differ");
  const SparseMatrix& a = rho1.matrix();
  const SparseMatrix& b = rho2.matrix();

  if (is_diagonal(a) && is_diagonal(b)) {
    double s = 0.0;
    const auto da = a.diagonal(), db = b.diagonal();
    for (Index i = 0; i < da.size(); ++i) s += std::sqrt(std::max(0.0, da(i).real() * db(i).real()));
    return finish(s);
  }

  const SparseMatrix ab = a * b;
  const SparseMatrix ba = b * a;
  if (max_abs(ab - ba) < kCommuteTolerance) {
    // commuting: rho1 rho2 is hermitian positive, so Tr sqrt is a sum over its spectrum
    const SparseMatrix sym = 0.5 * (ab + SparseMatrix(ab.adjoint()));
    const auto sys = fock::block_eigendecomposition(sym, fock::block_partition(sym), false);
    double s = 0.0;
    for (double v : sys.eigenvalues()) s += std::sqrt(std::max(0.0, v));
    return finish(s);
  }

  double s = 0.0;
  for (const auto& block : fock::block_partition(a, &b)) {
    const Eigen::MatrixXcd a_b = fock::dense_block(a, block);
    const Eigen::MatrixXcd b_b = fock::dense_block(b, block);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a_b);
    const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXcd sqrt_a = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
    const Eigen::MatrixXcd m = sqrt_a * b_b * sqrt_a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    for (Index k = 0; k < inner.eigenvalues().size(); ++k) s += std::sqrt(std::max(0.0, inner.eigenvalues()(k)));
  }
  return finish(s);
}

}  // namespace rqichan::infotheory

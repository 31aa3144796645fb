#include "rqichan/infotheory/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rqichan/fock/spectral.hpp"

namespace rqichan::infotheory {

namespace {

double plogp_sum(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) {
    if (v > kEigenvalueFloor) s -= v * std::log2(v);
  }
  return s;
}

void check_cover(const fock::Layout& layout, std::span<const Mode> a, std::span<const Mode> b) {
  std::vector<Mode> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  if (all.size() != layout.size()) throw std::invalid_argument("partition does not cover the state's modes");
  for (std::size_t i = 0; i < all.size(); ++i) {
    layout.require(all[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (all[i] == all[j]) throw std::invalid_argument("partition lists a mode twice");
    }
  }
}

}  // namespace

double shannon_entropy(std::span<const double> p) {
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw std::invalid_argument("probabilities must be non-negative");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-10) throw std::invalid_argument("probabilities must sum to 1");
  double s = 0.0;
  for (double v : p) {
    if (v > 0.0) s -= v * std::log2(v);
  }
  return s;
}

double spectrum_entropy(std::span<const double> eigenvalues) {
  std::vector<double> v = fock::clamp_spectrum({eigenvalues.begin(), eigenvalues.end()});
  return plogp_sum(v);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const std::vector<double> ev = fock::eigenvalues(rho);
  return spectrum_entropy(ev);
}

EntropyReport entropy_report(const DensityMatrix& rho_ab, std::span<const Mode> modes_a,
                             std::span<const Mode> modes_b) {
  check_cover(rho_ab.layout(), modes_a, modes_b);
  EntropyReport rep;
  rep.s_ab = von_neumann_entropy(rho_ab);
  rep.s_a = von_neumann_entropy(fock::partial_trace(rho_ab, modes_b));
  rep.s_b = von_neumann_entropy(fock::partial_trace(rho_ab, modes_a));
  rep.mutual = rep.s_a + rep.s_b - rep.s_ab;
  rep.conditional_a_given_b = rep.s_ab - rep.s_b;
  rep.coherent_a_to_b = -rep.conditional_a_given_b;
  return rep;
}

double holevo_information(std::span<const double> probabilities, std::span<const DensityMatrix> states) {
  if (probabilities.size() != states.size() || states.empty()) {
    throw std::invalid_argument("holevo_information: need one probability per state");
  }
  fock::SparseMatrix avg(states[0].dim(), states[0].dim());
  double weighted = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!(states[i].layout() == states[0].layout())) throw std::invalid_argument("holevo_information: layouts differ");
    if (probabilities[i] == 0.0) continue;
    avg += fock::Complex(probabilities[i], 0.0) * states[i].matrix();
    weighted += probabilities[i] * von_neumann_entropy(states[i]);
  }
  return von_neumann_entropy(DensityMatrix(states[0].layout(), std::move(avg))) - weighted;
}

SubadditivityResult subadditivity_check(const DensityMatrix& rho, std::span<const Mode> alice,
                                        std::span<const Mode> rob, std::span<const Mode> antirob,
                                        double tolerance) {
  std::vector<Mode> ar(alice.begin(), alice.end());
  ar.insert(ar.end(), rob.begin(), rob.end());
  check_cover(rho.layout(), ar, antirob);

  const DensityMatrix rho_a_rbar = fock::partial_trace(rho, rob);
  const DensityMatrix rho_ar = fock::partial_trace(rho, antirob);
  const double s_a_rbar = von_neumann_entropy(rho_a_rbar);
  const double s_rbar = von_neumann_entropy(fock::partial_trace(rho_a_rbar, alice));
  const double s_ar = von_neumann_entropy(rho_ar);
  const double s_r = von_neumann_entropy(fock::partial_trace(rho_ar, alice));

  SubadditivityResult out;
  out.sum_conditional = (s_a_rbar - s_rbar) + (s_ar - s_r);
  out.satisfied = out.sum_conditional >= -tolerance;
  return out;
}

}  // namespace rqichan::infotheory

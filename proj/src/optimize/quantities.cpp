#include "rqichan/optimize/quantities.hpp"

#include <array>
#include <stdexcept>

#include "rqichan/infotheory/entropy.hpp"
#include "rqichan/infotheory/fidelity.hpp"

namespace rqichan::optimize {

namespace {

channel::LogicalImages images_for(channel::Rail rail, double r, double q_R, Index cutoff,
                                  channel::Payload payload) {
  const auto params = channel::ChannelParams::with_real_weights(r, q_R, cutoff);
  channel::Encoding enc;
  enc.rail = rail;
  enc.payload = payload;
  return channel::logical_images(params, enc, false);
}

Evaluation adaptive(const std::function<double(Index)>& f, double r, const TruncationConfig& config) {
  const TruncationResult t = adaptive_truncation(f, first_cutoff(r, config.tail_mass), config.eps, config.k_max);
  return {t.value, t.cutoff_used, true};
}

}  // namespace

Index first_cutoff(double r, double tail_mass) { return squeezed_tail_cutoff(r, 1, tail_mass) + 1; }

double holevo_at_cutoff(channel::Rail rail, double r, double q_R, double alpha2, Index cutoff) {
  if (!(alpha2 >= 0.0 && alpha2 <= 1.0)) throw std::invalid_argument("alpha2 must lie in [0,1]");
  const auto img = images_for(rail, r, q_R, cutoff, channel::ClassicalBit{alpha2});
  const std::array<double, 2> p{alpha2, 1.0 - alpha2};
  const std::array<fock::DensityMatrix, 2> states{img.out[0][0], img.out[1][1]};
  return infotheory::holevo_information(p, states);
}

Evaluation holevo_numeric(channel::Rail rail, double r, double q_R, double alpha2, const TruncationConfig& config) {
  return adaptive([&](Index k) { return holevo_at_cutoff(rail, r, q_R, alpha2, k); }, r, config);
}

double coherent_at_cutoff(channel::Rail rail, double r, double q_R, Index cutoff) {
  const double h = std::sqrt(0.5);
  const auto img = images_for(rail, r, q_R, cutoff, channel::QuantumQubit{h, h});
  channel::Encoding enc;
  enc.rail = rail;
  enc.payload = channel::QuantumQubit{h, h};
  const fock::DensityMatrix rho = channel::assemble(img, channel::payload_matrix(enc));
  const fock::DensityMatrix rob = 0.5 * (img.out[0][0] + img.out[1][1]);
  return infotheory::von_neumann_entropy(rob) - infotheory::von_neumann_entropy(rho);
}

Evaluation coherent_numeric(channel::Rail rail, double r, double q_R, const TruncationConfig& config) {
  return adaptive([&](Index k) { return coherent_at_cutoff(rail, r, q_R, k); }, r, config);
}

double fidelity_at_cutoff(channel::Rail rail, double r, Index cutoff) {
  const auto img = images_for(rail, r, 1.0, cutoff, channel::ClassicalBit{0.5});
  return infotheory::fidelity(img.out[0][0], img.out[1][1]);
}

Evaluation fidelity_numeric(channel::Rail rail, double r, const TruncationConfig& config) {
  return adaptive([&](Index k) { return fidelity_at_cutoff(rail, r, k); }, r, config);
}

}  // namespace rqichan::optimize

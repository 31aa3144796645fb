#include "rqichan/estimation/noon.hpp"

#include <memory>
#include <stdexcept>

#include "rqichan/optimize/truncation.hpp"

namespace rqichan::estimation {

namespace {

channel::Encoding noon_encoding(int N, channel::Rail rail, double theta) {
  channel::Encoding enc;
  enc.rail = rail;
  enc.payload = channel::Noon{N, theta,
                              rail == channel::Rail::single ? channel::NoonMode::single_rail
                                                            : channel::NoonMode::dual_rail};
  return enc;
}

}  // namespace

ParametrizedState noon_state(int N, channel::Rail rail, double r, double theta, Index cutoff) {
  if (N < 1) throw std::invalid_argument("noon_state: N must be >= 1");
  channel::ChannelParams params;
  params.r = r;
  params.cutoff = cutoff;
  // images do not depend on theta, so build them once and share
  auto images = std::make_shared<const channel::LogicalImages>(
      channel::logical_images(params, noon_encoding(N, rail, theta), false));
  ParametrizedState st;
  st.theta = theta;
  st.builder = [images, N, rail](double th) {
    return channel::assemble(*images, channel::payload_matrix(noon_encoding(N, rail, th)));
  };
  st.derivative = [images, N, rail](double th) {
    return channel::assemble(*images, channel::payload_matrix_derivative(noon_encoding(N, rail, th)));
  };
  return st;
}

FisherResult noon_qfi_at_cutoff(int N, channel::Rail rail, double r, double theta, Index cutoff,
                                const QfiConfig& config) {
  FisherResult res = qfi(noon_state(N, rail, r, theta, cutoff), config);
  res.cutoff_used = cutoff;
  return res;
}

FisherResult noon_qfi(int N, channel::Rail rail, double r, double theta, const NoonConfig& config) {
  if (N < 1) throw std::invalid_argument("noon_qfi: N must be >= 1");
  if (!(r >= 0.0)) throw std::invalid_argument("noon_qfi: r must be >= 0");
  const Index k0 = config.k0 > 0 ? config.k0 : optimize::squeezed_tail_cutoff(r, N, config.tail_mass);
  FisherResult last;
  auto eval = [&](Index k) {
    last = noon_qfi_at_cutoff(N, rail, r, theta, k, config.qfi);
    return last.value;
  };
  const optimize::TruncationResult t = optimize::adaptive_truncation(eval, k0, config.eps, config.k_max);
  last.value = t.value;
  last.cutoff_used = t.cutoff_used;
  return last;
}

}  // namespace rqichan::estimation

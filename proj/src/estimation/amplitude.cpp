#include "rqichan/estimation/amplitude.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rqichan/numerics/special_functions.hpp"
#include "rqichan/optimize/truncation.hpp"

namespace rqichan::estimation {

namespace {

constexpr double kAngleGuard = 1e-12;

double converged(const numerics::SeriesResult& s, const char* what) {
  if (!s.converged) throw numerics::ConvergenceError(std::string(what) + " did not converge", s);
  return s.value;
}

void require_interior_angle(double theta) {
  const double k = theta / (0.5 * std::numbers::pi);
  if (std::abs(k - std::round(k)) < kAngleGuard) {
    throw std::domain_error("amplitude QFI closed form is singular at theta = k pi/2");
  }
}

double hyp(std::initializer_list<double> a, std::initializer_list<double> b, double x,
           const numerics::ConvergenceConfig& cfg) {
  return converged(numerics::hypergeometric_pfq(std::span<const double>(a.begin(), a.size()),
                                                std::span<const double>(b.begin(), b.size()), x, cfg),
                   "hypergeometric_pfq");
}

double single_rob(double r, double theta, const numerics::ConvergenceConfig& cfg) {
  const double s = std::sin(theta), c = std::cos(theta);
  const double s2 = s * s, c2 = c * c;
  const double sh2 = std::pow(std::sinh(r), 2), ch2 = std::pow(std::cosh(r), 2);
  const double csch2 = 1.0 / sh2, sech2 = 1.0 / ch2;
  const double t2 = sh2 / ch2;
  const double x = c2 / s2 * sh2;
  const double pre = 4.0 * c2 / (csch2 * s2 + c2);
  const double br = sech2 * sech2 * s2 * (csch2 * hyp({2.0, 2.0, x + 1.0}, {1.0, x + 2.0}, t2, cfg) -
                                          2.0 * hyp({2.0, x + 1.0}, {x + 2.0}, t2, cfg)) +
                    converged(numerics::lerch_phi(t2, 1.0, x, cfg), "lerch_phi") * (t2 * c2 + sech2 * s2);
  return pre * br;
}

double dual_rob(double r, double theta, const numerics::ConvergenceConfig& cfg) {
  const double s = std::sin(theta), c = std::cos(theta);
  const double s2 = s * s, c2 = c * c;
  const double sh2 = std::pow(std::sinh(r), 2), ch2 = std::pow(std::cosh(r), 2);
  const double csch2 = 1.0 / sh2, sech2 = 1.0 / ch2;
  const double t2 = sh2 / ch2;
  const double tan2 = s2 / c2;
  const double sin2t = std::pow(std::sin(2.0 * theta), 2);
  auto term = [&](std::size_t idx) {
    const double n = static_cast<double>(idx);
    const double y = n * tan2;
    const double pre = -sech2 * sech2 * std::pow(t2, n) / (c2 + n * s2);
    double br = -hyp({2.0, 2.0, 1.0 + y}, {1.0, 2.0 + y}, t2, cfg) * sech2 * sin2t;
    if (idx > 0) {
      br += 2.0 * n *
            (-2.0 * hyp({1.0, y}, {1.0 + y}, t2, cfg) * c2 * csch2 * (c2 + n * s2) +
             hyp({2.0, 1.0 + y}, {2.0 + y}, t2, cfg) * sech2 * sin2t);
    }
    return pre * br;
  };
  return numerics::sum_series_or_throw(term, cfg, "dual-rail amplitude Fisher series");
}

channel::Encoding amplitude_encoding(AmplitudeSetup setup, double theta) {
  channel::Encoding enc;
  enc.rail = (setup == AmplitudeSetup::dual_rob || setup == AmplitudeSetup::dual_joint) ? channel::Rail::dual
                                                                                          : channel::Rail::single;
  enc.payload = channel::AmplitudeParam{theta, setup != AmplitudeSetup::classical_joint};
  return enc;
}

bool traces_alice(AmplitudeSetup setup) {
  return setup == AmplitudeSetup::single_rob || setup == AmplitudeSetup::dual_rob;
}

}  // namespace

std::string_view amplitude_setup_name(AmplitudeSetup s) {
  switch (s) {
    case AmplitudeSetup::single_rob: return "single_rob";
    case AmplitudeSetup::dual_rob: return "dual_rob";
    case AmplitudeSetup::single_joint: return "single_joint";
    case AmplitudeSetup::dual_joint: return "dual_joint";
    case AmplitudeSetup::classical_joint: return "classical_joint";
  }
  return "?";
}

AmplitudeSetup parse_amplitude_setup(std::string_view name) {
  for (auto s : {AmplitudeSetup::single_rob, AmplitudeSetup::dual_rob, AmplitudeSetup::single_joint,
                 AmplitudeSetup::dual_joint, AmplitudeSetup::classical_joint}) {
    if (amplitude_setup_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown amplitude setup '" + std::string(name) + "'");
}

double qfi_closed_form_amplitude(AmplitudeSetup setup, double r, double theta,
                                 const numerics::ConvergenceConfig& config) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("amplitude QFI: r must be finite and >= 0");
  if (!std::isfinite(theta)) throw std::invalid_argument("amplitude QFI: theta must be finite");
  if (!traces_alice(setup)) return 4.0;
  require_interior_angle(theta);
  if (r == 0.0) return 4.0;
  return setup == AmplitudeSetup::single_rob ? single_rob(r, theta, config) : dual_rob(r, theta, config);
}

ParametrizedState amplitude_state(AmplitudeSetup setup, double r, double theta, Index cutoff) {
  channel::ChannelParams params;
  params.r = r;
  params.cutoff = cutoff;
  auto images = std::make_shared<channel::LogicalImages>(
      channel::logical_images(params, amplitude_encoding(setup, theta), false));
  const bool drop_alice = traces_alice(setup);
  if (drop_alice) images->has_alice = false;
  auto matrix = [setup, drop_alice](double th, bool derivative) {
    const auto enc = amplitude_encoding(setup, th);
    Eigen::Matrix2cd m = derivative ? channel::payload_matrix_derivative(enc) : channel::payload_matrix(enc);
    // tracing Alice keeps only the diagonal of her logical block
    if (drop_alice) m(0, 1) = m(1, 0) = 0.0;
    return m;
  };
  ParametrizedState st;
  st.theta = theta;
  st.builder = [images, matrix](double th) { return channel::assemble(*images, matrix(th, false)); };
  st.derivative = [images, matrix](double th) { return channel::assemble(*images, matrix(th, true)); };
  return st;
}

FisherResult qfi_numeric_amplitude(AmplitudeSetup setup, double r, double theta, const AmplitudeConfig& config) {
  if (!(r >= 0.0)) throw std::invalid_argument("amplitude QFI: r must be >= 0");
  const Index k0 = optimize::squeezed_tail_cutoff(r, 1, config.tail_mass) + 1;
  FisherResult last;
  auto eval = [&](Index k) {
    last = qfi(amplitude_state(setup, r, theta, k), config.qfi);
    return last.value;
  };
  const optimize::TruncationResult t = optimize::adaptive_truncation(eval, k0, config.eps, config.k_max);
  last.value = t.value;
  last.cutoff_used = t.cutoff_used;
  return last;
}

}  // namespace rqichan::estimation

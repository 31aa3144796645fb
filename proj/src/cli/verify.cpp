#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "rqichan/channel/bogoliubov.hpp"
#include "rqichan/channel/channel.hpp"
#include "rqichan/cli/commands.hpp"
#include "rqichan/estimation/amplitude.hpp"
#include "rqichan/estimation/noon.hpp"
#include "rqichan/infotheory/closed_form.hpp"
#include "rqichan/infotheory/entropy.hpp"
#include "rqichan/numerics/special_functions.hpp"
#include "rqichan/optimize/fit.hpp"
#include "rqichan/optimize/quantities.hpp"

namespace rqichan::cli {

namespace {

struct Check {
  double deviation;
  double tolerance;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

SuiteResult run_suite(const std::string& name, const std::function<Check()>& body) {
  SuiteResult s{name, false, ""};
  try {
    const Check c = body();
    s.passed = c.deviation <= c.tolerance;
    s.detail = "deviation " + sci(c.deviation) + " (tolerance " + sci(c.tolerance) + ")";
  } catch (const std::exception& e) {
    s.detail = std::string("threw: ") + e.what();
  }
  return s;
}

}  // namespace

std::vector<SuiteResult> run_verify_suites() {
  using std::numbers::ln2;
  using std::numbers::pi;
  std::vector<SuiteResult> out;

  out.push_back(run_suite("numerics.special_functions", [] {
    const double li2 = numerics::polylog(2.0, 0.5).value - (pi * pi / 12.0 - ln2 * ln2 / 2.0);
    const double phi = numerics::lerch_phi(0.5, 1.0, 1.0).value - 2.0 * ln2;
    const double a[] = {1.0, 1.0}, b[] = {2.0};
    const double f21 = numerics::hypergeometric_pfq(a, b, 0.5).value - 2.0 * ln2;
    return Check{std::max({std::abs(li2), std::abs(phi), std::abs(f21)}), 1e-9};
  }));

  out.push_back(run_suite("fock.partial_trace", [] {
    const auto psi = channel::squeeze_fock(1, 0.7, 60);
    const fock::Mode drop[] = {fock::Mode::Rbar};
    const auto rho = fock::partial_trace(psi, drop);
    return Check{std::abs(rho.trace().real() - psi.norm() * psi.norm()), 1e-12};
  }));

  out.push_back(run_suite("channel.trace_and_hermiticity", [] {
    channel::ChannelParams p;
    p.r = 1.0;
    p.cutoff = 120;
    channel::Encoding enc;
    enc.payload = channel::QuantumQubit{std::sqrt(0.5), std::sqrt(0.5)};
    const auto rho = channel::build_channel_state(p, enc, false);
    return Check{std::abs(rho.trace().real() - 1.0) + rho.hermiticity_error(), 1e-8};
  }));

  out.push_back(run_suite("channel.bogoliubov_parity", [] {
    const auto v = channel::bogoliubov_vacuum_coefficients(std::cosh(0.5), std::sinh(0.5), 20);
    double odd = 0.0;
    for (std::size_t k = 1; k < v.size(); k += 2) odd = std::max(odd, std::abs(v[k]));
    return Check{odd, 0.0};
  }));

  out.push_back(run_suite("infotheory.closed_vs_numeric", [] {
    const double closed = infotheory::closed_form(infotheory::ClosedForm::holevo_single_classical, 1.0, 0.5);
    const double numeric = optimize::holevo_numeric(channel::Rail::single, 1.0, 1.0, 0.5).value;
    return Check{std::abs(closed - numeric), 1e-5};
  }));

  out.push_back(run_suite("infotheory.subadditivity", [] {
    const auto p = channel::ChannelParams::with_real_weights(0.5, 0.7, 40);
    channel::Encoding enc;
    enc.payload = channel::QuantumQubit{std::sqrt(0.5), std::sqrt(0.5)};
    const auto rho = channel::build_channel_state(p, enc, true);
    const fock::Mode a[] = {fock::Mode::A}, r[] = {fock::Mode::R}, rb[] = {fock::Mode::Rbar};
    const auto res = infotheory::subadditivity_check(rho, a, r, rb);
    return Check{std::max(0.0, -res.sum_conditional), 1e-8};
  }));

  out.push_back(run_suite("infotheory.fidelity_squaring", [] {
    const double s = infotheory::closed_form(infotheory::ClosedForm::fidelity_single, 1.0);
    const double d = infotheory::closed_form(infotheory::ClosedForm::fidelity_dual, 1.0);
    return Check{std::abs(d - s * s), 1e-10};
  }));

  out.push_back(run_suite("estimation.joint_amplitude_qfi", [] {
    const auto f = estimation::qfi_numeric_amplitude(estimation::AmplitudeSetup::single_joint, 1.0, 0.7);
    return Check{std::abs(f.value - 4.0), 1e-3};
  }));

  out.push_back(run_suite("estimation.noon_noiseless", [] {
    const auto f = estimation::noon_qfi(3, channel::Rail::single, 0.0);
    return Check{std::abs(f.value - 9.0), 1e-9};
  }));

  out.push_back(run_suite("optimize.decay_fit", [] {
    std::vector<std::pair<int, double>> samples;
    for (int n = 1; n <= 6; ++n) samples.emplace_back(n, n * n * std::exp(-0.3 * n + 0.1));
    const auto fit = optimize::fit_noon_decay(samples, 2.0);
    return Check{std::abs(fit.a_r - 0.3) + std::abs(fit.b_r - 0.1) + fit.residual, 1e-12};
  }));

  return out;
}

}  // namespace rqichan::cli

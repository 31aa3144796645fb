#include "rqichan/infotheory/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rqichan/numerics/special_functions.hpp"

namespace rqichan::infotheory {

using numerics::ConvergenceConfig;
using numerics::SeriesResult;

namespace {

double lb(double x) { return std::log2(x); }
double lb1p(double x) { return std::log1p(x) / std::numbers::ln2; }

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * lb(p);
  if (p < 1.0) h -= (1.0 - p) * lb(1.0 - p);
  return h;
}

SeriesResult exact(double v) { return {v, 1, 0.0, true}; }

SeriesResult holevo_single(double r, double a2, const ConvergenceConfig& cfg) {
  const double b2 = 1.0 - a2;
  const double h = binary_entropy(a2);
  if (r == 0.0 || a2 == 0.0 || b2 == 0.0) return exact(r == 0.0 ? h : 0.0);
  const double t2 = std::pow(std::tanh(r), 2), c2 = std::pow(std::cosh(r), 2), s2 = std::pow(std::sinh(r), 2);
  auto term = [&](std::size_t i) {
    const double n = static_cast<double>(i);
    double u = a2 / c2 * std::pow(t2, n) * lb1p(n * b2 / (a2 * s2));
    if (i > 0) u += n * b2 * std::pow(t2, n - 1.0) / (c2 * c2) * lb1p(a2 * s2 / (n * b2));
    return u;
  };
  SeriesResult res = numerics::sum_series(term, cfg);
  res.value = h - res.value;
  return res;
}

SeriesResult holevo_dual(double r, const ConvergenceConfig& cfg) {
  if (r == 0.0) return exact(1.0);
  const double t2 = std::pow(std::tanh(r), 2), c6 = std::pow(std::cosh(r), 6);
  // inner sum over q equals lb(p+1)(p+1)(p+2)/2 - sum_{j<=p+1} j lb j
  std::size_t next = 0;
  double jlogj = 0.0;
  auto term = [&](std::size_t p) {
    if (p < next) {
      next = 0;
      jlogj = 0.0;
    }
    while (next <= p) {
      const double j = static_cast<double>(next + 1);
      jlogj += j * lb(j);
      ++next;
    }
    const double pp = static_cast<double>(p);
    const double inner = lb(pp + 1.0) * (pp + 1.0) * (pp + 2.0) / 2.0 - jlogj;
    return std::pow(t2, pp) / c6 * inner;
  };
  SeriesResult res = numerics::sum_series(term, cfg);
  res.value = 1.0 - res.value;
  return res;
}

SeriesResult cond_single(double r, double a2, const ConvergenceConfig& cfg) {
  const double b2 = 1.0 - a2;
  if (r == 0.0) return exact(-binary_entropy(a2));
  if (b2 == 0.0) return exact(0.0);
  const double t = std::tanh(r);
  const double t2 = t * t, c2 = std::pow(std::cosh(r), 2), s2 = std::pow(std::sinh(r), 2);
  auto term = [&](std::size_t i) {
    const double n = static_cast<double>(i);
    const double tn = std::pow(t2, n);
    double u = 0.0;
    if (a2 > 0.0) u += a2 / c2 * tn * lb(t2 * (a2 * c2 + b2 * (n + 1.0)) / (a2 * s2 + b2 * n));
    if (i > 0) {
      const double tn1 = std::pow(t2, n - 1.0);  // tanh^{2n}/sinh^2 = tanh^{2n-2}/cosh^2
      u += 2.0 * n * b2 / c2 * ((n + 1.0) * tn / c2 - n * tn1 / c2) * lb(t);
      u -= b2 * n * tn1 / (c2 * c2) * lb(a2 / c2 + b2 * n / (s2 * c2));
    }
    u += b2 / c2 * tn * (n + 1.0) / c2 * lb(a2 / c2 + b2 * (n + 1.0) / (c2 * c2));
    return u;
  };
  SeriesResult res = numerics::sum_series(term, cfg);
  res.value = -res.value;
  return res;
}

SeriesResult cond_dual(double r, const ConvergenceConfig& cfg) {
  if (r == 0.0) return exact(-1.0);
  const double t2 = std::pow(std::tanh(r), 2), c6 = std::pow(std::cosh(r), 6);
  auto term = [&](std::size_t i) {
    const double p = static_cast<double>(i);
    return std::pow(t2, p) / c6 * lb((p + 2.0) / (p + 1.0)) * (p + 1.0) * (p + 2.0) / 2.0;
  };
  SeriesResult res = numerics::sum_series(term, cfg);
  res.value = -res.value;
  return res;
}

SeriesResult fidelity_closed(double r, int power, const ConvergenceConfig& cfg) {
  if (r == 0.0) return exact(0.0);
  const double t2 = std::pow(std::tanh(r), 2);
  SeriesResult res = numerics::polylog(-0.5, t2, cfg);
  const double root = res.value / (std::sinh(r) * std::cosh(r) * std::cosh(r));
  res.value = std::pow(root, power);
  return res;
}

}  // namespace

std::string_view closed_form_name(ClosedForm q) {
  switch (q) {
    case ClosedForm::holevo_single_classical: return "holevo_single_classical";
    case ClosedForm::holevo_dual_classical: return "holevo_dual_classical";
    case ClosedForm::cond_entropy_single_quantum: return "cond_entropy_single_quantum";
    case ClosedForm::cond_entropy_dual_quantum: return "cond_entropy_dual_quantum";
    case ClosedForm::fidelity_single: return "fidelity_single";
    case ClosedForm::fidelity_dual: return "fidelity_dual";
  }
  return "?";
}

SeriesResult closed_form_series(ClosedForm quantity, double r, double alpha2, const ConvergenceConfig& config) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::domain_error("closed_form: r must be finite and >= 0");
  if (!(alpha2 >= 0.0 && alpha2 <= 1.0)) throw std::domain_error("closed_form: alpha2 must lie in [0,1]");
  switch (quantity) {
    case ClosedForm::holevo_single_classical: return holevo_single(r, alpha2, config);
    case ClosedForm::holevo_dual_classical: return holevo_dual(r, config);
    case ClosedForm::cond_entropy_single_quantum: return cond_single(r, alpha2, config);
    case ClosedForm::cond_entropy_dual_quantum: return cond_dual(r, config);
    case ClosedForm::fidelity_single: return fidelity_closed(r, 2, config);
    case ClosedForm::fidelity_dual: return fidelity_closed(r, 4, config);
  }
  throw std::invalid_argument("closed_form: unknown quantity");
}

double closed_form(ClosedForm quantity, double r, double alpha2, const ConvergenceConfig& config) {
  SeriesResult res = closed_form_series(quantity, r, alpha2, config);
  if (!res.converged) {
    throw numerics::ConvergenceError(std::string(closed_form_name(quantity)) + ": series did not converge", res);
  }
  return res.value;
}

}  // namespace rqichan::infotheory

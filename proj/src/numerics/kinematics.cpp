#include "rqichan/numerics/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rqichan::numerics {

double squeezing_from_acceleration(double omega, double a) {
  if (!(omega > 0.0) || !(a > 0.0)) {
    throw std::domain_error("squeezing_from_acceleration: omega and a must be positive");
  }
  return std::atanh(std::exp(-omega * std::numbers::pi / a));
}

double acceleration_from_squeezing(double omega, double r) {
  if (!(omega > 0.0) || !(r > 0.0)) {
    throw std::domain_error("acceleration_from_squeezing: omega and r must be positive");
  }
  return -omega * std::numbers::pi / std::log(std::tanh(r));
}

RindlerApproximation acceleration_from_schwarzschild(double r_s, double r0, double threshold) {
  if (!(r_s > 0.0)) {
    throw std::domain_error("acceleration_from_schwarzschild: r_s must be positive");
  }
  if (r0 < r_s) {
    throw std::domain_error("acceleration_from_schwarzschild: r0 lies inside the horizon");
  }
  RindlerApproximation out;
  out.acceleration = 2.0 * r_s * std::sqrt(1.0 - r_s / r0);
  out.valid = (r0 - r_s) < threshold * 2.0 * r_s;
  return out;
}

}  // namespace rqichan::numerics

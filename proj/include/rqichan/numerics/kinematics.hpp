#pragma once

namespace rqichan::numerics {

// tanh r = exp(-omega*pi/a)
double squeezing_from_acceleration(double omega, double a);
double acceleration_from_squeezing(double omega, double r);

struct RindlerApproximation {
  double acceleration = 0.0;
  bool valid = false;
};

/// Rindler approximation near a Schwarzschild horizon, a = 2 r_s sqrt(1 - r_s/r0).
/// `valid` holds when the hover height r0 - r_s is below threshold * 2 r_s.
/// r0 == r_s is accepted and gives a = 0.
RindlerApproximation acceleration_from_schwarzschild(double r_s, double r0,
                                                     double threshold = 0.1);

}  // namespace rqichan::numerics

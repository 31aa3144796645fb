#include "rqichan/optimize/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rqichan/infotheory/entropy.hpp"

namespace rqichan::optimize {

namespace {

// Rob's two conditional states for one q_R, with their entropies.
struct Branches {
  fock::DensityMatrix s0, s1;
  double h0 = 0.0, h1 = 0.0;
};

class HolevoSurface {
 public:
  HolevoSurface(double r, Index cutoff) : r_(r), cutoff_(cutoff) {}

  double operator()(double alpha2, double q_R) {
    const Branches& b = branches(q_R);
    if (alpha2 <= 0.0 || alpha2 >= 1.0) return 0.0;
    fock::DensityMatrix mix = alpha2 * b.s0 + (1.0 - alpha2) * b.s1;
    return infotheory::von_neumann_entropy(mix) - alpha2 * b.h0 - (1.0 - alpha2) * b.h1;
  }

 private:
  const Branches& branches(double q_R) {
    // grid values are rebuilt from integers, so equal q_R compare equal
    auto it = cache_.find(q_R);
    if (it != cache_.end()) return it->second;
    const auto params = channel::ChannelParams::with_real_weights(r_, q_R, cutoff_);
    channel::Encoding enc;
    enc.payload = channel::ClassicalBit{0.5};
    const auto img = channel::logical_images(params, enc, false);
    Branches b{img.out[0][0], img.out[1][1]};
    b.h0 = infotheory::von_neumann_entropy(b.s0);
    b.h1 = infotheory::von_neumann_entropy(b.s1);
    return cache_.emplace(q_R, std::move(b)).first->second;
  }

  double r_;
  Index cutoff_;
  std::map<double, Branches> cache_;
};

bool better(const GridValue& c, const GridValue& best) {
  if (c.value != best.value) return c.value > best.value;
  if (c.q_R != best.q_R) return c.q_R > best.q_R;
  return c.alpha2 > best.alpha2;
}

std::vector<double> unit_grid(double step) {
  const auto n = static_cast<long>(std::floor(1.0 / step + 0.5));
  std::vector<double> v;
  for (long i = 0; i <= n; ++i) v.push_back(std::min(1.0, static_cast<double>(i) * step));
  return v;
}

std::vector<double> window(double centre, double half, double step) {
  const auto n = static_cast<long>(std::floor(half / step + 0.5));
  std::vector<double> v;
  for (long i = -n; i <= n; ++i) {
    // snap to the fine lattice so coarse points reappear bit for bit
    const double x = std::round((centre + static_cast<double>(i) * step) / step) * step;
    if (x >= -1e-12 && x <= 1.0 + 1e-12) v.push_back(std::clamp(x, 0.0, 1.0));
  }
  return v;
}

}  // namespace

CapacityOptimum optimize_capacity_2d(double r, channel::Rail rail, const CapacityConfig& config) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("optimize_capacity_2d: r must be >= 0");
  if (rail != channel::Rail::single) throw std::invalid_argument("optimize_capacity_2d: only the single rail is supported");
  if (!(config.coarse_step > 0.0 && config.fine_step > 0.0 && config.fine_half_width >= 0.0)) {
    throw std::invalid_argument("optimize_capacity_2d: grid steps must be positive");
  }

  CapacityOptimum out;
  if (config.cutoff > 0) {
    out.cutoff_used = config.cutoff;
  } else {
    const auto t = adaptive_truncation([&](Index k) { return holevo_at_cutoff(rail, r, 0.5, 0.5, k); },
                                       first_cutoff(r, config.truncation.tail_mass), config.truncation.eps,
                                       config.truncation.k_max);
    out.cutoff_used = t.cutoff_used;
  }

  HolevoSurface surface(r, out.cutoff_used);
  GridValue best{0.0, 0.0, -1.0};
  for (double q : unit_grid(config.coarse_step)) {
    for (double a : unit_grid(config.coarse_step)) {
      const GridValue g{a, q, surface(a, q)};
      out.coarse.push_back(g);
      if (better(g, best)) best = g;
    }
  }
  const GridValue centre = best;
  for (double q : window(centre.q_R, config.fine_half_width, config.fine_step)) {
    for (double a : window(centre.alpha2, config.fine_half_width, config.fine_step)) {
      const GridValue g{a, q, surface(a, q)};
      if (better(g, best)) best = g;
    }
  }
  out.alpha2 = best.alpha2;
  out.q_R = best.q_R;
  out.value = best.value;
  return out;
}

}  // namespace rqichan::optimize

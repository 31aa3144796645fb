#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "rqichan/fock/mode_layout.hpp"

namespace rqichan::optimize {

using fock::Index;

struct TruncationResult {
  double value = 0.0;      // f(k+1)
  Index cutoff_used = 0;   // k+1, the cutoff that produced value
  Index evaluations = 0;
};

class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, TruncationResult best)
      : std::runtime_error(what), best_(best) {}
  const TruncationResult& best() const noexcept { return best_; }

 private:
  TruncationResult best_;
};

/// Walks k = k0, k0+1, ... until |f(k+1) - f(k)| / max(|f(k+1)|, floor) < eps.
/// Throws TruncationError (carrying the last value) once k+1 would pass k_max.
TruncationResult adaptive_truncation(const std::function<double(Index)>& evaluator, Index k0, double eps,
                                     Index k_max, double floor = 1e-300);

/// Smallest cutoff K for which N excitations squeezed by r leave less than
/// `tail_mass` of probability on Rob's mode at occupations >= K.
Index squeezed_tail_cutoff(double r, int N, double tail_mass);

}  // namespace rqichan::optimize

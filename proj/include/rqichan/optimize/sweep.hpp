#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rqichan/fock/mode_layout.hpp"

namespace rqichan::optimize {

using fock::Index;

struct Axis {
  std::string name;
  std::vector<double> values;
};

/// start, start+step, ... up to stop, stop included when within half a step.
std::vector<double> make_grid(double start, double stop, double step);

struct Evaluation {
  double value = 0.0;
  Index cutoff_used = 0;
  bool converged = true;
  std::vector<double> extra;  // further outputs of the same evaluation
};

using Evaluator = std::function<Evaluation(std::span<const double> point)>;

struct NamedEvaluator {
  std::string name;
  Evaluator fn;
};

struct SweepRow {
  std::vector<double> point;  // one value per axis
  std::string quantity;
  double value = 0.0;  // partial value (or NaN) when not converged
  Index cutoff_used = 0;
  bool converged = true;
  std::vector<double> extra;
  std::string error;  // empty unless the evaluator threw
};

struct SweepTable {
  std::vector<Axis> axes;
  std::vector<SweepRow> rows;  // lexicographic in axis order, last axis fastest
};

struct SweepConfig {
  unsigned threads = 0;  // 0 -> RQICHAN_THREADS, else hardware concurrency
};

/// Worker count after applying RQICHAN_THREADS and the hardware limit.
unsigned worker_count(unsigned requested);

/// Evaluates every grid point. Failures become rows with converged = false and
/// the error text; the sweep carries on.
SweepTable parameter_sweep(const NamedEvaluator& quantity, const std::vector<Axis>& axes,
                           const SweepConfig& config = {});

}  // namespace rqichan::optimize

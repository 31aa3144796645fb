#include "rqichan/optimize/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "rqichan/numerics/series.hpp"
#include "rqichan/optimize/truncation.hpp"

namespace rqichan::optimize {

std::vector<double> make_grid(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw std::invalid_argument("grid bounds must be finite");
  }
  if (stop < start) throw std::invalid_argument("grid stop must not be below start");
  if (stop == start) return {start};
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  const double span = (stop - start) / step;
  if (span > 1e7) throw std::invalid_argument("grid has too many points");
  const auto n = static_cast<std::size_t>(std::floor(span + 0.5)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

unsigned worker_count(unsigned requested) {
  unsigned n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("RQICHAN_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) n = static_cast<unsigned>(v);
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

SweepTable parameter_sweep(const NamedEvaluator& quantity, const std::vector<Axis>& axes, const SweepConfig& config) {
  if (!quantity.fn) throw std::invalid_argument("parameter_sweep: evaluator is empty");
  std::size_t total = axes.empty() ? 0 : 1;
  for (const auto& a : axes) {
    if (a.values.empty()) throw std::invalid_argument("parameter_sweep: axis '" + a.name + "' is empty");
    for (double v : a.values) {
      if (!std::isfinite(v)) throw std::invalid_argument("parameter_sweep: axis '" + a.name + "' is not finite");
    }
    total *= a.values.size();
  }

  SweepTable table;
  table.axes = axes;
  table.rows.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    auto& row = table.rows[i];
    row.quantity = quantity.name;
    row.point.resize(axes.size());
    std::size_t rem = i;
    for (std::size_t a = axes.size(); a-- > 0;) {
      row.point[a] = axes[a].values[rem % axes[a].values.size()];
      rem /= axes[a].values.size();
    }
  }

  auto run_row = [&](SweepRow& row) {
    try {
      const Evaluation e = quantity.fn(row.point);
      row.value = e.value;
      row.cutoff_used = e.cutoff_used;
      row.converged = e.converged && std::isfinite(e.value);
      row.extra = e.extra;
    } catch (const TruncationError& err) {
      row.value = err.best().value;
      row.cutoff_used = err.best().cutoff_used;
      row.converged = false;
      row.error = err.what();
    } catch (const numerics::ConvergenceError& err) {
      row.value = err.best().value;
      row.converged = false;
      row.error = err.what();
    } catch (const std::exception& err) {
      row.value = std::numeric_limits<double>::quiet_NaN();
      row.converged = false;
      row.error = err.what();
    }
  };

  const unsigned workers = std::min<std::size_t>(worker_count(config.threads), std::max<std::size_t>(total, 1));
  if (workers <= 1) {
    for (auto& row : table.rows) run_row(row);
    return table;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < total; i = next++) run_row(table.rows[i]);
    });
  }
  for (auto& t : pool) t.join();
  return table;
}

}  // namespace rqichan::optimize

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "rqichan/infotheory/closed_form.hpp"
#include "rqichan/optimize/capacity.hpp"
#include "rqichan/optimize/fit.hpp"
#include "rqichan/optimize/quantities.hpp"
#include "rqichan/optimize/sweep.hpp"
#include "rqichan/optimize/truncation.hpp"

using namespace rqichan::optimize;
using rqichan::channel::Rail;
using rqichan::infotheory::ClosedForm;

TEST_CASE("adaptive truncation") {
  SUBCASE("constant evaluator stops after one comparison") {
    int calls = 0;
    const auto res = adaptive_truncation([&](Index) { ++calls; return 2.5; }, 5, 1e-6, 100);
    CHECK(res.value == 2.5);
    CHECK(res.cutoff_used == 6);
    CHECK(calls == 2);
  }
  SUBCASE("geometric tail converges where the increment drops below eps") {
    // f(k) = 1 - 2^-k, relative increment 2^-(k+1)/f(k+1)
    const auto res = adaptive_truncation([](Index k) { return 1.0 - std::ldexp(1.0, -static_cast<int>(k)); }, 1,
                                         1e-6, 100);
    Index k = 1;
    while (std::ldexp(1.0, -static_cast<int>(k + 1)) / (1.0 - std::ldexp(1.0, -static_cast<int>(k + 1))) >= 1e-6) ++k;
    CHECK(res.cutoff_used == k + 1);
  }
  SUBCASE("budget exhausted") {
    try {
      adaptive_truncation([](Index k) { return static_cast<double>(k); }, 2, 1e-6, 10);
      FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
      CHECK(e.best().cutoff_used == 10);
      CHECK(e.best().value == 10.0);
    }
    CHECK_THROWS_AS(adaptive_truncation([](Index) { return 1.0; }, 0, 1e-6, 10), std::invalid_argument);
  }
  SUBCASE("tail cutoff") {
    CHECK(squeezed_tail_cutoff(0.0, 3, 1e-9) == 4);
    // negative binomial tail: P(n >= K) for the N-excitation amplitude at r
    const double r = 1.2, t2 = std::pow(std::tanh(r), 2);
    for (int N : {1, 3}) {
      const Index K = squeezed_tail_cutoff(r, N, 1e-6);
      auto tail_from = [&](Index from) {
        double below = 0.0;
        for (Index n = N; n < from; ++n) {
          const int p = static_cast<int>(n) - N;
          below += std::exp(std::lgamma(p + N + 1.0) - std::lgamma(p + 1.0) - std::lgamma(N + 1.0)) *
                   std::pow(t2, p) * std::pow(1.0 - t2, N + 1);
        }
        return 1.0 - below;
      };
      CHECK(tail_from(K) < 1e-6);
      CHECK(tail_from(K - 1) >= 1e-6);
    }
  }
}

TEST_CASE("truncated quantities agree with closed forms") {
  for (double r : {0.5, 1.0}) {
    const auto h = holevo_numeric(Rail::single, r, 1.0, 0.5);
    CHECK(h.converged);
    CHECK(std::abs(h.value - rqichan::infotheory::closed_form(ClosedForm::holevo_single_classical, r)) < 1e-6);
    const auto f = fidelity_numeric(Rail::single, r);
    CHECK(std::abs(f.value - rqichan::infotheory::closed_form(ClosedForm::fidelity_single, r)) < 1e-6);
  }
  const auto hd = holevo_numeric(Rail::dual, 1.5, 1.0, 0.5);
  CHECK(std::abs(hd.value - holevo_at_cutoff(Rail::dual, 1.5, 1.0, 0.5, 60)) < 1e-4);
  CHECK(first_cutoff(0.0, 1e-7) == 3);
  CHECK_THROWS(holevo_at_cutoff(Rail::single, 1.0, 1.5, 0.5, 10));
}

TEST_CASE("grids and sweeps") {
  CHECK(make_grid(0.0, 1.0, 0.25) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(make_grid(0.3, 0.3, 0.1).size() == 1);
  const auto g = make_grid(0.0, 1.0, 0.05);
  CHECK(g.size() == 21);
  CHECK(g.back() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS(make_grid(1.0, 0.0, 0.1));
  CHECK_THROWS(make_grid(0.0, 1.0, 0.0));

  const NamedEvaluator sum{"sum", [](std::span<const double> p) {
                             Evaluation e;
                             e.value = p[0] + 10 * p[1];
                             e.cutoff_used = 7;
                             return e;
                           }};
  const std::vector<Axis> axes{{"x", {1, 2, 3}}, {"y", {0, 1}}};
  const auto t1 = parameter_sweep(sum, axes, {1});
  REQUIRE(t1.rows.size() == 6);
  CHECK(t1.rows[1].point == std::vector<double>{1, 1});
  CHECK(t1.rows[2].point == std::vector<double>{2, 0});
  CHECK(t1.rows[5].value == 13.0);
  CHECK(t1.rows[0].quantity == "sum");
  const auto t4 = parameter_sweep(sum, axes, {4});
  for (std::size_t i = 0; i < 6; ++i) CHECK(t4.rows[i].value == t1.rows[i].value);

  const NamedEvaluator picky{"picky", [](std::span<const double> p) -> Evaluation {
                               if (p[0] > 1.5) throw std::domain_error("too big");
                               return {p[0], 1, true, {}};
                             }};
  const auto te = parameter_sweep(picky, {{"x", {1, 2}}}, {2});
  CHECK(te.rows[0].converged);
  CHECK_FALSE(te.rows[1].converged);
  CHECK(te.rows[1].error.find("too big") != std::string::npos);

  const NamedEvaluator slow{"fid", [](std::span<const double> p) { return fidelity_numeric(Rail::single, p[0]); }};
  // outputs for 0 and 1 become harder to tell apart as r grows
  const auto tf = parameter_sweep(slow, {{"r", make_grid(0.0, 2.0, 0.25)}}, {3});
  for (std::size_t i = 1; i < tf.rows.size(); ++i) CHECK(tf.rows[i].value > tf.rows[i - 1].value);
  CHECK(worker_count(3) >= 1);
}

TEST_CASE("capacity optimisation") {
  const auto opt = optimize_capacity_2d(2.0);
  CHECK(opt.value >= holevo_at_cutoff(Rail::single, 2.0, 1.0, 0.5, opt.cutoff_used) - 1e-12);
  CHECK(opt.value >= holevo_at_cutoff(Rail::single, 2.0, 0.5, 0.5, opt.cutoff_used));
  for (const auto& c : opt.coarse) CHECK(c.value <= opt.value + 1e-12);
  CHECK(opt.coarse.size() == 21 * 21);
  CHECK(opt.alpha2 == doctest::Approx(0.465).epsilon(1e-12));
  CHECK(opt.q_R == doctest::Approx(0.72).epsilon(1e-12));
  // maximiser: nearby fine-grid neighbours are no better
  for (double da : {-0.005, 0.005})
    for (double dq : {-0.005, 0.0, 0.005}) {
      const double q = opt.q_R + dq;
      if (q > 1.0) continue;
      CHECK(holevo_at_cutoff(Rail::single, 2.0, q, opt.alpha2 + da, opt.cutoff_used) <= opt.value + 1e-12);
    }
  const auto low = optimize_capacity_2d(0.5);
  CHECK(low.q_R == 1.0);
  CHECK_THROWS(optimize_capacity_2d(1.0, Rail::dual));
}

TEST_CASE("decay fit") {
  std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  const auto lf = fit_line(x, y);
  CHECK(lf.slope == doctest::Approx(2.0));
  CHECK(lf.intercept == doctest::Approx(1.0));
  CHECK(lf.rms < 1e-12);

  std::mt19937 gen(5);
  std::normal_distribution<double> noise(0.0, 1e-4);
  std::vector<std::pair<int, double>> s;
  for (int N = 1; N <= 18; ++N) s.emplace_back(N, N * N * std::exp(-0.12 * N + 0.3 + noise(gen)));
  const auto f = fit_noon_decay(s, 2.5);
  CHECK(f.a_r == doctest::Approx(0.12).epsilon(1e-3));
  CHECK(f.b_r == doctest::Approx(0.3).epsilon(1e-2));
  CHECK(f.residual < 1e-3);

  std::vector<std::pair<int, double>> two{{1, 1.0}, {2, 2.0}};
  CHECK_THROWS_AS(fit_noon_decay(two, 1.0), std::invalid_argument);
  std::vector<std::pair<int, double>> bad{{1, 1.0}, {2, 0.0}, {3, 1.0}};
  CHECK_THROWS_AS(fit_noon_decay(bad, 1.0), std::domain_error);
}

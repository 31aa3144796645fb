#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rqichan/numerics/kinematics.hpp"
#include "rqichan/numerics/series.hpp"
#include "rqichan/numerics/special_functions.hpp"

using namespace rqichan::numerics;

namespace {

// plain long-double partial sums, the oracle for the series below
long double brute(const std::function<long double(long)>& term, long n) {
  long double s = 0.0L;
  for (long k = n - 1; k >= 0; --k) s += term(k);  // smallest first
  return s;
}

}  // namespace

TEST_CASE("config validation") {
  ConvergenceConfig c;
  CHECK_NOTHROW(c.validate());
  c.eps_tail = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.eps_pc = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.max_terms = 1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("geometric series") {
  const auto r = sum_series([](std::size_t k) { return std::ldexp(1.0, -static_cast<int>(k)); });
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.terms_used <= ConvergenceConfig{}.max_terms);
  CHECK(r.tail_estimate / r.value < 1e-10);
}

TEST_CASE("thermal weights sum to one") {
  const double t2 = std::pow(std::tanh(1.0), 2), c2 = std::pow(std::cosh(1.0), 2);
  const auto r = sum_series([&](std::size_t k) { return std::pow(t2, static_cast<double>(k)) / c2; });
  const long double oracle =
      brute([&](long k) { return std::pow(static_cast<long double>(t2), k) / c2; }, 10000);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 1.0) < 1e-10);
  CHECK(std::abs(r.value - static_cast<double>(oracle)) < 1e-10);
}

TEST_CASE("ratio at or above one never converges") {
  ConvergenceConfig c;
  c.max_terms = 50;
  const auto grow = sum_series([](std::size_t k) { return static_cast<double>(k + 1); }, c);
  CHECK_FALSE(grow.converged);
  CHECK(grow.terms_used <= 50);
  const auto flat = sum_series([](std::size_t) { return 1.0; }, c);
  CHECK_FALSE(flat.converged);
  CHECK(flat.value == doctest::Approx(50.0));
  CHECK_THROWS_AS(sum_series_or_throw([](std::size_t) { return 1.0; }, c, "flat"), ConvergenceError);
  try {
    sum_series_or_throw([](std::size_t) { return 1.0; }, c, "flat");
  } catch (const ConvergenceError& e) {
    CHECK_FALSE(e.best().converged);
    CHECK(e.best().value > 0.0);
  }
}

TEST_CASE("leading zeros and terminating series") {
  const auto lead = sum_series([](std::size_t k) { return k < 3 ? 0.0 : std::ldexp(1.0, -static_cast<int>(k)); });
  CHECK(lead.converged);
  CHECK(lead.value == doctest::Approx(0.25).epsilon(1e-10));
  const auto fin = sum_series([](std::size_t k) { return k < 4 ? 1.0 / static_cast<double>(k + 1) : 0.0; });
  CHECK(fin.converged);
  CHECK(fin.value == doctest::Approx(1.0 + 0.5 + 1.0 / 3 + 0.25).epsilon(1e-14));
}

TEST_CASE("brute-force agreement on eventually geometric series") {
  for (double q : {0.3, 0.7, 0.95}) {
    auto term = [q](std::size_t k) { return (static_cast<double>(k) + 1.0) * std::pow(q, static_cast<double>(k)); };
    const auto r = sum_series(term);
    const long double oracle = brute([q](long k) { return (k + 1.0L) * std::pow(static_cast<long double>(q), k); }, 100000);
    CHECK(r.converged);
    CHECK(std::abs(r.value - static_cast<double>(oracle)) / r.value < 1e-9);
  }
}

TEST_CASE("polylog") {
  CHECK(polylog(1.0, 0.5).value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(polylog(2.5, 0.0).value == 0.0);
  CHECK(polylog(-3.0, 0.0).value == 0.0);
  CHECK(std::abs(polylog(1.0, 0.3).value + std::log(0.7)) < 1e-10);
  const double z = std::pow(std::tanh(1.0), 2);
  const long double oracle =
      brute([z](long k) { return std::pow(static_cast<long double>(z), k + 1) * std::sqrt(k + 1.0L); }, 20000);
  const auto li = polylog(-0.5, z);
  CHECK(li.converged);
  CHECK(std::abs(li.value - static_cast<double>(oracle)) / li.value < 1e-12);
  CHECK_THROWS_AS(polylog(2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(polylog(2.0, -0.1), std::domain_error);
}

TEST_CASE("lerch transcendent") {
  for (double s : {1.0, 2.0, 0.5}) {
    const double z = 0.4;
    CHECK(std::abs(lerch_phi(z, s, 1.0).value - polylog(s, z).value / z) < 1e-10);
  }
  CHECK(lerch_phi(0.0, 2.0, 3.0).value == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  const long double oracle = brute([](long k) { return std::pow(0.5L, k) / (2.0L + k); }, 10000);
  CHECK(std::abs(lerch_phi(0.5, 1.0, 2.0).value - static_cast<double>(oracle)) < 1e-12);
  CHECK_THROWS_AS(lerch_phi(0.5, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(lerch_phi(0.5, 1.0, -2.0), std::domain_error);
  CHECK_THROWS_AS(lerch_phi(1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("generalised hypergeometric") {
  const std::vector<double> a{1.0, 1.0}, b{2.0};
  CHECK(hypergeometric_pfq(a, b, 0.0).value == 1.0);
  CHECK(hypergeometric_pfq(a, b, 0.5).value == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

  // 3F2(2,2,1.7;1,2.7;0.4) against a direct sum with explicit Pochhammer products
  const std::vector<double> a3{2.0, 2.0, 1.7}, b3{1.0, 2.7};
  long double oracle = 0.0L;
  for (int k = 0; k < 400; ++k) {
    long double t = std::pow(0.4L, k);
    for (int j = 0; j < k; ++j) t *= (2.0L + j) * (2.0L + j) * (1.7L + j) / ((1.0L + j) * (2.7L + j) * (j + 1.0L));
    oracle += t;
  }
  const auto h = hypergeometric_pfq(a3, b3, 0.4);
  CHECK(h.converged);
  CHECK(std::abs(h.value - static_cast<double>(oracle)) / h.value < 1e-10);

  // terminating: 2F1(-2, 1; 1; x) = (1-x)^2
  const std::vector<double> at{-2.0, 1.0}, bt{1.0};
  CHECK(hypergeometric_pfq(at, bt, 0.3).value == doctest::Approx(0.49).epsilon(1e-14));

  const std::vector<double> bad{-1.0};
  CHECK_THROWS_AS(hypergeometric_pfq(a, bad, 0.2), std::domain_error);
  CHECK_THROWS_AS(hypergeometric_pfq(a, b, 1.0), std::domain_error);
}

TEST_CASE("acceleration and squeezing") {
  CHECK(squeezing_from_acceleration(1.0, std::numbers::pi) == doctest::Approx(0.3859684).epsilon(1e-7));
  CHECK(squeezing_from_acceleration(1.0, 1e-3) < 1e-100);
  double prev = 0.0;
  for (double a = 0.5; a < 50.0; a *= 1.5) {
    const double r = squeezing_from_acceleration(2.0, a);
    CHECK(r > prev);
    CHECK(std::abs(acceleration_from_squeezing(2.0, r) - a) / a < 1e-10);
    prev = r;
  }
  CHECK_THROWS_AS(squeezing_from_acceleration(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(squeezing_from_acceleration(1.0, -1.0), std::domain_error);
}

TEST_CASE("Rindler approximation of a Schwarzschild hover") {
  CHECK(acceleration_from_schwarzschild(1.0, 1.0).acceleration == 0.0);
  CHECK(acceleration_from_schwarzschild(1.0, 1.01).valid);
  CHECK_FALSE(acceleration_from_schwarzschild(1.0, 3.0).valid);
  CHECK(acceleration_from_schwarzschild(1.0, 1.05).acceleration ==
        doctest::Approx(2.0 * std::sqrt(1.0 - 1.0 / 1.05)).epsilon(1e-14));
  CHECK_FALSE(acceleration_from_schwarzschild(1.0, 1.2, 0.05).valid);
  CHECK_THROWS_AS(acceleration_from_schwarzschild(1.0, 0.9), std::domain_error);
}

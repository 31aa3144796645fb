#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "rqichan/estimation/amplitude.hpp"
#include "rqichan/estimation/fisher.hpp"
#include "rqichan/estimation/noon.hpp"
#include "rqichan/optimize/truncation.hpp"

using namespace rqichan::estimation;
using rqichan::channel::Rail;
using rqichan::fock::Complex;
using rqichan::fock::Layout;
using rqichan::fock::Mode;

namespace {

Eigen::MatrixXcd random_matrix(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(d(gen), d(gen));
  return m;
}

Eigen::MatrixXcd random_density(int n, unsigned seed) {
  const Eigen::MatrixXcd g = random_matrix(n, seed);
  Eigen::MatrixXcd rho = g * g.adjoint();
  return rho / rho.trace();
}

Eigen::MatrixXcd random_unitary(int n, unsigned seed) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(n, seed));
  return qr.householderQ();
}

// Fisher information from the symmetric logarithmic derivative, found by
// solving rho L + L rho = 2 rho' as a linear system (full-rank rho only).
double sld_fisher(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& drho) {
  const int n = static_cast<int>(rho.rows());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(n * n, n * n);
  // column-major vec: vec(A X) = (I ⊗ A) vec X, vec(X A) = (A^T ⊗ I) vec X
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      sys.block(i * n, j * n, n, n) += id(i, j) * rho;
      sys.block(i * n, j * n, n, n) += rho(j, i) * id;
    }
  Eigen::VectorXcd rhs = 2.0 * Eigen::Map<const Eigen::VectorXcd>(drho.data(), n * n);
  Eigen::VectorXcd l = sys.fullPivLu().solve(rhs);
  Eigen::Map<Eigen::MatrixXcd> L(l.data(), n, n);
  return (rho * L * L).trace().real();
}

DensityMatrix dense_state(const Eigen::MatrixXcd& m) {
  return DensityMatrix::from_dense(Layout({{Mode::R, static_cast<rqichan::fock::Index>(m.rows())}}), m);
}

// rho(theta) = exp(-i H theta) rho0 exp(i H theta)
ParametrizedState rotating(const Eigen::MatrixXcd& rho0, const Eigen::MatrixXcd& h, double theta) {
  ParametrizedState s;
  s.theta = theta;
  s.builder = [=](double th) {
    const Eigen::MatrixXcd u = (Complex(0, -th) * h).exp();
    return dense_state(u * rho0 * u.adjoint());
  };
  s.derivative = [=](double th) {
    const Eigen::MatrixXcd u = (Complex(0, -th) * h).exp();
    const Eigen::MatrixXcd r = u * rho0 * u.adjoint();
    return dense_state(Complex(0, -1) * (h * r - r * h));
  };
  return s;
}

}  // namespace

TEST_CASE("lowering superoperator") {
  Eigen::VectorXd lam(3);
  lam << 0.5, 0.3, 0.2;
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(3, 3);
  b.diagonal() << 0.1, -0.2, 0.1;
  const Eigen::MatrixXcd l = lowering_superoperator(lam, b);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(l(j, j) - b(j, j) / lam(j)) < 1e-15);

  // random 4x4 against the element-wise formula, with one eigenvalue off the support
  Eigen::VectorXd e(4);
  e << 0.6, 0.3, 0.1, 0.0;
  const Eigen::MatrixXcd B = random_matrix(4, 1);
  const Eigen::MatrixXcd L = lowering_superoperator(e, B);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      const Complex want = (j == 3 && k == 3) ? Complex(0, 0) : 2.0 * B(j, k) / (e(j) + e(k));
      CHECK(std::abs(L(j, k) - want) < 1e-14);
    }
  // raising (rho X + X rho)/2 undoes lowering on the support
  double dev = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      if (e(j) + e(k) > 0) dev = std::max(dev, std::abs((e(j) + e(k)) / 2.0 * L(j, k) - B(j, k)));
  CHECK(dev < 1e-14);
  CHECK_THROWS(lowering_superoperator(e, Eigen::MatrixXcd::Zero(3, 3)));
}

TEST_CASE("qfi basics") {
  const Eigen::MatrixXcd rho0 = random_density(4, 2);
  SUBCASE("theta-independent state") {
    ParametrizedState s;
    s.builder = [=](double) { return dense_state(rho0); };
    s.theta = 0.3;
    const auto f = qfi(s);
    CHECK(f.value == 0.0);
    CHECK(f.fd_step == 1e-5);
  }
  SUBCASE("rotation family against the SLD oracle") {
    const Eigen::MatrixXcd h0 = random_matrix(4, 3);
    const Eigen::MatrixXcd h = (h0 + h0.adjoint()) / 2.0;
    const auto s = rotating(rho0, h, 0.4);
    const auto f = qfi(s);
    CHECK(f.path == FisherPath::general);
    const double oracle = sld_fisher(s.builder(0.4).to_dense(), s.derivative(0.4).to_dense());
    CHECK(f.value == doctest::Approx(oracle).epsilon(1e-9));
    // finite differences agree with the analytic derivative
    ParametrizedState fd = s;
    fd.derivative = nullptr;
    const auto g = qfi(fd);
    CHECK(std::abs(g.value - f.value) / f.value < 1e-5);
    // a fixed unitary on top changes nothing
    const Eigen::MatrixXcd v = random_unitary(4, 9);
    ParametrizedState w;
    w.theta = 0.4;
    w.builder = [=](double th) { return dense_state(v * s.builder(th).to_dense() * v.adjoint()); };
    w.derivative = [=](double th) { return dense_state(v * s.derivative(th).to_dense() * v.adjoint()); };
    CHECK(qfi(w).value == doctest::Approx(f.value).epsilon(1e-10));
  }
  SUBCASE("diagonal path is the classical Fisher information") {
    ParametrizedState s;
    s.theta = 0.7;
    const Layout l({{Mode::A, 2}});
    s.builder = [=](double th) {
      const double p[] = {std::pow(std::cos(th), 2), std::pow(std::sin(th), 2)};
      return DensityMatrix::diagonal(l, p);
    };
    s.derivative = [=](double th) {
      const double p[] = {-std::sin(2 * th), std::sin(2 * th)};
      return DensityMatrix::diagonal(l, p);
    };
    const auto f = qfi(s);
    CHECK(f.path == FisherPath::diagonal);
    CHECK(f.value == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("non-hermitian derivative is rejected") {
    ParametrizedState s;
    s.builder = [=](double) { return dense_state(rho0); };
    s.derivative = [=](double) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
      m(0, 1) = 1.0;
      return dense_state(m);
    };
    CHECK_THROWS_AS(qfi(s), std::invalid_argument);
  }
}

TEST_CASE("amplitude estimation") {
  using S = AmplitudeSetup;
  for (double r : {0.0, 0.7, 1.5}) {
    for (double th : {0.2, 0.9, 1.4}) {
      CHECK(qfi_closed_form_amplitude(S::single_joint, r, th) == 4.0);
      CHECK(qfi_closed_form_amplitude(S::dual_joint, r, th) == 4.0);
      CHECK(qfi_closed_form_amplitude(S::classical_joint, r, th) == 4.0);
    }
  }
  const auto joint = qfi_numeric_amplitude(S::single_joint, 1.3, 0.7);
  CHECK(std::abs(joint.value - 4.0) < 1e-3);
  CHECK(std::abs(qfi_numeric_amplitude(S::classical_joint, 0.8, 0.3).value - 4.0) < 1e-3);
  CHECK(std::abs(qfi_numeric_amplitude(S::dual_joint, 0.8, 0.3).value - 4.0) < 1e-3);

  const double cf = qfi_closed_form_amplitude(S::single_rob, 1.0, 0.9);
  const auto num = qfi_numeric_amplitude(S::single_rob, 1.0, 0.9);
  CHECK(num.path == FisherPath::diagonal);
  CHECK(std::abs(cf - num.value) < 1e-3);
  CHECK(cf == doctest::Approx(1.465862831648615).epsilon(1e-9));
  CHECK(qfi_closed_form_amplitude(S::single_rob, 0.5, 0.3) == doctest::Approx(1.079178553845545).epsilon(1e-9));
  CHECK(qfi_closed_form_amplitude(S::single_rob, 2.0, 1.2) == doctest::Approx(0.687964954470021).epsilon(1e-9));
  CHECK(qfi_closed_form_amplitude(S::dual_rob, 1.0, 0.65) == doctest::Approx(2.107874505783545).epsilon(1e-9));
  CHECK(qfi_closed_form_amplitude(S::dual_rob, 0.5, 0.3) == doctest::Approx(3.168465942787761).epsilon(1e-9));
  CHECK(std::abs(qfi_closed_form_amplitude(S::dual_rob, 1.0, 0.65) - qfi_numeric_amplitude(S::dual_rob, 1.0, 0.65).value) < 1e-3);

  // noiseless limit approached from inside the domain
  CHECK(qfi_closed_form_amplitude(S::single_rob, 1e-3, std::numbers::pi / 2 - 1e-3) == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(qfi_closed_form_amplitude(S::single_rob, 0.0, 0.4) == 4.0);
  CHECK_THROWS_AS(qfi_closed_form_amplitude(S::single_rob, 1.0, std::numbers::pi / 2), std::domain_error);
  CHECK_THROWS_AS(qfi_closed_form_amplitude(S::dual_rob, 1.0, 0.0), std::domain_error);
  // the truncated path still answers at the singular angle, where Rob's state no longer moves
  CHECK(qfi_numeric_amplitude(S::single_rob, 1.0, std::numbers::pi / 2).value < 1e-9);
  CHECK(parse_amplitude_setup("dual_rob") == S::dual_rob);
  CHECK_THROWS(parse_amplitude_setup("nope"));
}

TEST_CASE("NOON phase estimation") {
  for (int N : {1, 2, 3, 5}) {
    const auto s = noon_qfi(N, Rail::single, 0.0);
    CHECK(s.value == doctest::Approx(N * N).epsilon(1e-12));
    CHECK(s.cutoff_used == N + 2);
    CHECK(noon_qfi(N, Rail::dual, 0.0).value == doctest::Approx(N * N).epsilon(1e-12));
  }
  CHECK(std::abs(noon_qfi(2, Rail::single, 0.8, 0.3).value - noon_qfi(2, Rail::single, 0.8, 0.65).value) < 1e-6);

  SUBCASE("N = 2, r = 0.5 against a dense pipeline at cutoff 40") {
    const int N = 2, K = 40;
    const double r = 0.5, th = 0.65, t = std::tanh(r), c = std::cosh(r);
    // amplitudes on (R, Rbar) of the two squeezed branches
    Eigen::MatrixXcd psi0 = Eigen::MatrixXcd::Zero(K, K), psi1 = Eigen::MatrixXcd::Zero(K, K);
    for (int p = 0; p < K; ++p) psi0(p, p) = std::pow(t, p) / c;
    for (int p = 0; p + N < K; ++p) {
      psi1(N + p, p) = std::pow(t, p) / std::pow(c, N + 1) * std::sqrt((p + 1.0) * (p + 2.0) / 2.0);
    }
    const Complex ph = std::polar(1.0, N * th);
    const Eigen::MatrixXcd psi = (psi0 + ph * psi1) / std::sqrt(2.0);
    const Eigen::MatrixXcd rho = psi * psi.adjoint();  // traces Rbar: rows are R
    const Eigen::MatrixXcd dpsi = Complex(0, N) * ph * psi1 / std::sqrt(2.0);
    const Eigen::MatrixXcd drho = dpsi * psi.adjoint() + psi * dpsi.adjoint();
    // rho is rank deficient only through truncation; compare on the support through the same formula
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    const Eigen::MatrixXcd b = es.eigenvectors().adjoint() * drho * es.eigenvectors();
    double oracle = 0.0;
    for (int j = 0; j < K; ++j)
      for (int k = 0; k < K; ++k) {
        const double den = es.eigenvalues()(j) + es.eigenvalues()(k);
        if (den > 1e-12) oracle += 2.0 * std::norm(b(j, k)) / den;
      }
    const auto f = noon_qfi_at_cutoff(N, Rail::single, r, th, K);
    CHECK(f.value == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(noon_qfi(N, Rail::single, r, th).value == doctest::Approx(3.55003261485).epsilon(1e-8));
  }

  SUBCASE("degrades with r, single rail ahead of dual") {
    for (int N : {1, 2, 3}) {
      double prev_s = 1e9, prev_d = 1e9;
      for (double r : {0.2, 0.5, 0.8, 1.1}) {
        const double s = noon_qfi(N, Rail::single, r).value;
        const double d = noon_qfi(N, Rail::dual, r).value;
        CHECK(s <= prev_s);
        CHECK(d <= prev_d);
        CHECK(s >= d);
        prev_s = s;
        prev_d = d;
      }
    }
  }

  NoonConfig tight;
  tight.k0 = 4;
  tight.k_max = 6;
  CHECK_THROWS_AS(noon_qfi(2, Rail::single, 1.5, 0.65, tight), rqichan::optimize::TruncationError);
  CHECK_THROWS(noon_qfi(0, Rail::single, 0.5));
}

TEST_CASE("Cramer-Rao bound") {
  CHECK(cramer_rao_bound(4.0, 1) == 0.25);
  CHECK(cramer_rao_bound(4.0, 2) == 0.125);
  CHECK(cramer_rao_bound(noon_qfi(3, Rail::single, 0.0).value, 10) == doctest::Approx(1.0 / 90.0).epsilon(1e-12));
  CHECK_THROWS_AS(cramer_rao_bound(0.0, 3), std::domain_error);
  CHECK_THROWS_AS(cramer_rao_bound(1.0, 0), std::invalid_argument);
}

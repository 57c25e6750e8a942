#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qrefrig/errors.hpp"
#include "qrefrig/oracle.hpp"
#include "qrefrig/thermo.hpp"

using namespace qrefrig;
using namespace qrefrig::oracle;
using doctest::Approx;

TEST_CASE("position matrix elements") {
  const auto x2 = position_matrix(1.0, 2);
  CHECK(x2(0, 1) == Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(x2(1, 0) == x2(0, 1));
  CHECK(x2(0, 0) == 0.0);

  const auto x3 = position_matrix(2.0, 3);
  CHECK(x3(0, 1) == Approx(0.5).epsilon(1e-15));
  CHECK(x3(1, 2) == Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
  CHECK(x3(0, 2) == 0.0);
  CHECK_THROWS_AS(position_matrix(1.0, 1), ValidationError);
}

TEST_CASE("quartic Hamiltonian has bandwidth 4 and exact x^4 elements") {
  const double w = 1.5, lam = 0.3;
  const auto h = quartic_hamiltonian(w, lam, 40);
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 40; ++j) {
      if (std::abs(i - j) > 4 || (i - j) % 2 != 0) CHECK(h(i, j) == 0.0);
      CHECK(h(i, j) == h(j, i));
    }
  }
  // <k|x^4|k> = 3 (2k^2 + 2k + 1) / (4 w^2); the last rows need padding to be exact.
  for (int k : {0, 1, 5, 39}) {
    const double x4 = 3.0 * (2.0 * k * k + 2.0 * k + 1) / (4 * w * w);
    CHECK(h(k, k) == Approx((k + 0.5) * w + lam * x4).epsilon(1e-14));
  }
  // <k|x^4|k+4> = sqrt((k+1)(k+2)(k+3)(k+4)) / (4 w^2).
  CHECK(h(35, 39) == Approx(lam * std::sqrt(36.0 * 37 * 38 * 39) / (4 * w * w)).epsilon(1e-14));
}

TEST_CASE("exact spectrum: harmonic limit") {
  const auto s = ao_exact_spectrum({1.0, 0.0});
  REQUIRE(s.size() >= 10);
  for (std::size_t n = 0; n < s.size(); ++n) CHECK(std::abs(s.levels[n] - (n + 0.5)) < 1e-10);
}

TEST_CASE("exact spectrum: quartic ground states") {
  // Frozen from an mpmath diagonalization at N = 256 (stable between N = 64 and 128).
  const auto a = ao_exact_spectrum({1.0, 0.1});
  CHECK(a.levels[0] == Approx(0.55914633).epsilon(1e-8));
  CHECK(a.levels[1] == Approx(1.76950264).epsilon(1e-8));
  CHECK(a.levels[0] < 0.575);

  BasisConfig small;
  small.size = 64;
  const double e64 = diagonalize(1.0, 0.1, 64)(0);
  const double e128 = diagonalize(1.0, 0.1, 128)(0);
  CHECK(std::abs(e64 - e128) < 1e-6);
  CHECK(ao_exact_spectrum({1.0, 0.1}, small).levels[0] == Approx(a.levels[0]).epsilon(1e-10));

  // λ/ω³ = 4.8e-3: first-order 2.518, exact 2.5177085.
  CHECK(ao_exact_spectrum({5.0, 0.6}).levels[0] == Approx(2.5177085).epsilon(1e-7));
}

TEST_CASE("exact spectrum: every returned level is converged and ascending") {
  const auto s = ao_exact_spectrum({2.0, 0.4});
  REQUIRE(s.converged.size() == s.size());
  CHECK(s.size() <= 128);
  for (std::size_t n = 0; n < s.size(); ++n) {
    CHECK(s.converged[n]);
    if (n > 0) CHECK(s.levels[n] > s.levels[n - 1]);
  }
}

TEST_CASE("eigensolver determinism and variational direction") {
  const auto a = diagonalize(1.0, 0.2, 128);
  const auto b = diagonalize(1.0, 0.2, 128);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);

  const auto big = diagonalize(1.0, 0.2, 256);
  for (int k = 0; k < 64; ++k) CHECK(a(k) >= big(k) - 1e-8);
}

TEST_CASE("exact ground state lies below the first-order value") {
  for (double lam = 0.01; lam <= 0.5 + 1e-12; lam += 0.07) {
    const MediumParams p{1.0, lam};
    CHECK(ao_exact_spectrum(p).levels[0] < ao_level(0, p));
  }
}

TEST_CASE("basis doubling stops with ConvergenceError") {
  BasisConfig cfg;
  cfg.size = 8;
  cfg.max_size = 16;
  CHECK_THROWS_AS(ao_exact_spectrum({1.0, 0.5}, cfg, 14), ConvergenceError);
  BasisConfig bad;
  bad.size = 4;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad.size = 16;
  bad.trust_fraction = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("exact Gibbs sums") {
  const auto harmonic = ao_exact_thermal_spectrum({1.0, 0.0}, 1.0);
  CHECK(gibbs_sum_exact(harmonic, 1.0) == Approx(std::exp(-0.5) / (1 - std::exp(-1.0))).epsilon(1e-12));

  const auto cold = ao_exact_spectrum({1.0, 0.1});
  CHECK(gibbs_sum_exact(cold, 40.0) == Approx(std::exp(-40.0 * cold.levels[0])).epsilon(1e-12));

  auto err = [](double lam) {
    const MediumParams p{5.0, lam};
    return std::abs(ao_partition_first_order(1.0, p) - gibbs_sum_exact(ao_exact_thermal_spectrum(p, 1.0), 1.0));
  };
  CHECK(err(0.03) / err(0.015) == Approx(4.0).epsilon(0.1));

  const Spectrum truncated{{0.5, 1.5}, 2, {true, true}, false};
  CHECK_THROWS_AS(gibbs_sum_exact(truncated, 1.0), TruncationError);
}

TEST_CASE("classical phase-space quadrature") {
  CHECK(classical_partition_quadrature(1.0, {1.0, 0.0}) == Approx(1.0).epsilon(1e-10));
  for (double beta : {0.3, 2.0}) {
    for (double w : {0.5, 5.0}) {
      CHECK(classical_partition_quadrature(beta, {w, 0.0}) == Approx(1 / (beta * w)).epsilon(1e-10));
    }
  }
  // 0.9740486 from mpmath quad; the first-order form gives 0.97.
  CHECK(classical_partition_quadrature(1.0, {1.0, 0.01}) == Approx(0.9740486).epsilon(1e-7));
  CHECK(classical_partition_quadrature(2.0, {5.0, 0.6}) ==
        Approx(static_cast<double>(ref::classical_z(2, 5, 0.6L))).epsilon(1e-10));

  auto err = [](double lam) {
    const MediumParams p{5.0, lam};
    return std::abs(classical_partition(2.0, p) - classical_partition_quadrature(2.0, p));
  };
  CHECK(err(0.6) / err(0.3) == Approx(4.0).epsilon(0.1));

  QuadratureConfig starved;
  starved.max_levels = 3;
  CHECK_THROWS_AS(classical_partition_quadrature(1.0, {1.0, 0.1}, starved), ConvergenceError);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "qfimeter/errors.hpp"
#include "qfimeter/spin_model.hpp"
#include "test_helpers.hpp"

using namespace qfimeter;
using qfimeter::testing::max_abs;

TEST_CASE("basis layout") {
  const SpinBasis b(4);
  CHECK(b.dim() == 5);
  CHECK(b.j() == 2.0);
  CHECK(b.m_values() == std::vector<double>{2, 1, 0, -1, -2});
  CHECK(SpinBasis(0).dim() == 1);
  CHECK(SpinBasis(1).m_values() == std::vector<double>{0.5, -0.5});
  CHECK_THROWS_AS(SpinBasis(-1), InvalidParams);
}

TEST_CASE("J_x on small spins") {
  ComplexMatrix half(2, 2);
  half << 0, 0.5, 0.5, 0;
  CHECK(max_abs(build_jx(SpinBasis(1)).matrix() - half) == 0.0);

  ComplexMatrix one(3, 3);
  one << 0, 1, 0, 1, 0, 1, 0, 1, 0;
  one /= std::sqrt(2.0);
  CHECK(max_abs(build_jx(SpinBasis(2)).matrix() - one) < 1e-15);

  CHECK(build_jx(SpinBasis(0)).matrix() == ComplexMatrix::Zero(1, 1));
}

TEST_CASE("J_z and J_y on small spins") {
  CHECK(build_jz(SpinBasis(2)).matrix().diagonal().real() == Eigen::Vector3d(1, 0, -1));
  CHECK(build_jz(SpinBasis(1)).matrix().diagonal().real() == Eigen::Vector2d(0.5, -0.5));
  Eigen::VectorXd four(5);
  four << 2, 1, 0, -1, -2;
  CHECK(build_jz(SpinBasis(4)).matrix().diagonal().real() == four);

  ComplexMatrix y(2, 2);
  y << 0, Complex(0, -0.5), Complex(0, 0.5), 0;
  CHECK(max_abs(build_jy(SpinBasis(1)).matrix() - y) == 0.0);
  CHECK(build_jy(SpinBasis(0)).matrix() == ComplexMatrix::Zero(1, 1));
}

TEST_CASE("angular momentum algebra up to N = 64") {
  const Complex i(0.0, 1.0);
  for (int n = 0; n <= 64; ++n) {
    const SpinBasis b(n);
    const ComplexMatrix x = build_jx(b).matrix();
    const ComplexMatrix y = build_jy(b).matrix();
    const ComplexMatrix z = build_jz(b).matrix();
    CAPTURE(n);
    CHECK(max_abs(x * y - y * x - i * z) <= 1e-12);
    CHECK(max_abs(y * z - z * y - i * x) <= 1e-12);
    CHECK(max_abs(z * x - x * z - i * y) <= 1e-12);
    const ComplexMatrix casimir = x * x + y * y + z * z;
    const double jj = b.j() * (b.j() + 1.0);
    CHECK(max_abs(casimir - jj * ComplexMatrix::Identity(b.dim(), b.dim())) <= 1e-12);
    // Entries are built, not symmetrized: exactly Hermitian.
    CHECK(hermiticity_defect(x) == 0.0);
    CHECK(hermiticity_defect(y) == 0.0);
  }
}

TEST_CASE("Hamiltonian examples") {
  CHECK(build_hamiltonian({0, 1, 0, 2}).matrix().diagonal().real() == Eigen::Vector3d(1, 0, -1));

  ComplexMatrix tunnel(2, 2);
  tunnel << 0, -0.5, -0.5, 0;
  CHECK(max_abs(build_hamiltonian({1, 0, 0, 1}).matrix() - tunnel) == 0.0);

  // u = 2, N = 2: U = 1, J_z^2 on spin 1.
  const ComplexMatrix k = build_hamiltonian({0, 0, 2, 2}).matrix();
  CHECK(max_abs(k - ComplexMatrix(Eigen::Vector3cd(1, 0, 1).asDiagonal())) == 0.0);

  CHECK(build_hamiltonian({0, 0, 0, 0}).matrix() == ComplexMatrix::Zero(1, 1));
  CHECK_THROWS_AS(build_hamiltonian({0, 0, 1, 0}), InvalidParams);
  CHECK_THROWS_AS(build_hamiltonian({NAN, 0, 0, 2}), InvalidParams);
  CHECK_THROWS_AS(build_hamiltonian({0, INFINITY, 0, 2}), InvalidParams);
}

TEST_CASE("bare interaction is u / N") {
  CHECK(HamiltonianParams{0, 0, 6, 3}.bare_interaction() == 2.0);
  CHECK(HamiltonianParams{0, 0, 0, 0}.bare_interaction() == 0.0);
}

TEST_CASE("K' is J_z bit for bit") {
  for (int n : {0, 1, 2, 7, 32}) {
    CHECK(build_kprime(SpinBasis(n)).matrix() == build_jz(SpinBasis(n)).matrix());
  }
}

TEST_CASE("Hamiltonian is linear in each parameter") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int trial = 0; trial < 25; ++trial) {
    HamiltonianParams p{dist(rng), dist(rng), dist(rng), 1 + trial % 9};
    const double a = dist(rng), b = dist(rng);
    for (double HamiltonianParams::*field :
         {&HamiltonianParams::tau, &HamiltonianParams::eps, &HamiltonianParams::u}) {
      HamiltonianParams pa = p, pb = p, mid = p;
      pa.*field = a;
      pb.*field = b;
      mid.*field = 0.5 * (a + b);
      const ComplexMatrix avg =
          0.5 * (build_hamiltonian(pa).matrix() + build_hamiltonian(pb).matrix());
      CHECK(max_abs(build_hamiltonian(mid).matrix() - avg) <= 1e-12);
    }
  }
}

TEST_CASE("HermitianMatrix rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m << 1, 2, 3, 4;
  CHECK_THROWS_AS(HermitianMatrix{m}, PreconditionError);
  CHECK_THROWS_AS(HermitianMatrix{ComplexMatrix(2, 3)}, PreconditionError);
  m << 1, Complex(0, 1), Complex(0, -1), 4;
  CHECK_NOTHROW(HermitianMatrix{m});
}

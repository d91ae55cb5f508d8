#include <doctest.h>

#include <cmath>
#include <limits>

#include "seqbell/linalg.hpp"
#include "seqbell/quantum.hpp"
#include "support.hpp"

using namespace seqbell;
using testing::max_abs;

TEST_CASE("tensor of identities is the identity") {
  CHECK(max_abs(tensor(identity(2), identity(2)) - identity(4)) == 0.0);
  CHECK(tensor(identity(2), identity(3)).rows() == 6);
}

TEST_CASE("tensor block layout") {
  std::mt19937_64 rng(7);
  const ComplexMatrix a = testing::random_matrix(2, rng);
  const ComplexMatrix b = testing::random_matrix(3, rng);
  const ComplexMatrix t = tensor(a, b);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(max_abs(t.block(3 * i, 3 * j, 3, 3) - a(i, j) * b) < 1e-15);
    }
  }
}

TEST_CASE("sx (x) sx correlator on Phi+") {
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix rho = phi * phi.adjoint();
  CHECK(expectation(tensor(pauli_x(), pauli_x()), rho) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("mixed product and associativity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = testing::random_matrix(2, rng);
    const ComplexMatrix b = testing::random_matrix(2, rng);
    const ComplexMatrix c = testing::random_matrix(2, rng);
    const ComplexMatrix d = testing::random_matrix(2, rng);
    CHECK(max_abs(tensor(a, b) * tensor(c, d) - tensor(a * c, b * d)) < 1e-12);
    CHECK(max_abs(tensor(tensor(a, b), c) - tensor(a, tensor(b, c))) < 1e-12);
  }
}

TEST_CASE("state_norm") {
  std::mt19937_64 rng(3);
  const ComplexMatrix rho = testing::random_density(4, rng);
  CHECK(state_norm(identity(4), rho) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(state_norm(ComplexMatrix::Zero(4, 4), rho) == 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix o = testing::random_matrix(4, rng);
    const double direct = (o.adjoint() * o * rho).trace().real();
    CHECK(std::abs(std::pow(state_norm(o, rho), 2) - direct) < 1e-12);
  }
  CHECK_THROWS_AS(state_norm(identity(2), rho), DimensionError);
}

TEST_CASE("state_norm of the normalized Alice combinations on the canonical state") {
  const auto real = canonical_realization();
  for (const auto& s : alice_combinations(real.alice)) {
    CHECK(state_norm(tensor(s, identity(2)), real.rho) == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("state_norm vanishes off the support") {
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  ComplexMatrix o = ComplexMatrix::Zero(2, 2);
  o(1, 1) = 3.0;
  CHECK(state_norm(o, rho) == 0.0);
}

TEST_CASE("operator_norm") {
  CHECK(operator_norm(pauli_x() + pauli_z()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(operator_norm(identity(5)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(operator_norm(2.0 * pauli_x()) == doctest::Approx(2.0).epsilon(1e-15));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = testing::random_hermitian(4, rng);
    const ComplexMatrix b = testing::random_hermitian(4, rng);
    CHECK(std::abs(operator_norm(a) - testing::norm_via_eigen(a)) < 1e-9);
    CHECK(std::abs(operator_norm(-3.5 * a) - 3.5 * operator_norm(a)) < 1e-9);
    CHECK(operator_norm(a + b) <= operator_norm(a) + operator_norm(b) + 1e-9);
  }

  ComplexMatrix bad = identity(2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(operator_norm(bad), NumericalError);
}

TEST_CASE("commutators") {
  CHECK(max_abs(anticommutator(pauli_x(), pauli_z())) == 0.0);
  std::mt19937_64 rng(1);
  const ComplexMatrix m = testing::random_matrix(3, rng);
  CHECK(max_abs(commutator(identity(3), m)) < 1e-15);
  CHECK(max_abs(commutator(pauli_x(), pauli_y()) - Complex(0, 2) * pauli_z()) < 1e-15);
  CHECK_THROWS_AS(commutator(identity(2), identity(3)), DimensionError);

  const auto real = canonical_realization();
  const ComplexMatrix ac = anticommutator(real.alice.matrix(0), real.alice.matrix(1));
  CHECK(expectation(tensor(ac, identity(2)), real.rho.matrix()) ==
        doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("partial traces") {
  std::mt19937_64 rng(9);
  const ComplexMatrix a = testing::random_density(2, rng);
  const ComplexMatrix b = testing::random_density(3, rng);
  const ComplexMatrix joint = tensor(a, b);
  CHECK(max_abs(partial_trace_a(joint, 2, 3) - b) < 1e-14);
  CHECK(max_abs(partial_trace_b(joint, 2, 3) - a) < 1e-14);
  CHECK_THROWS_AS(partial_trace_a(joint, 3, 3), DimensionError);
}

TEST_CASE("spectral sign, square root, rotation") {
  std::mt19937_64 rng(2);
  const ComplexMatrix h = testing::random_hermitian(4, rng);
  const ComplexMatrix s = spectral_sign(h);
  CHECK(max_abs(s * s - identity(4)) < 1e-12);
  CHECK(max_abs(commutator(s, h)) < 1e-10);
  CHECK(max_abs(spectral_sign(ComplexMatrix::Zero(2, 2)) - identity(2)) == 0.0);

  const ComplexMatrix rho = testing::random_density(3, rng);
  const ComplexMatrix r = psd_sqrt(rho);
  CHECK(max_abs(r * r - rho) < 1e-12);

  const ComplexMatrix u = qubit_rotation(M_PI, 0, 0, 1);
  CHECK(max_abs(u * pauli_x() * u.adjoint() + pauli_x()) < 1e-15);
  CHECK(max_abs(u * u.adjoint() - identity(2)) < 1e-15);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(require_valid(ComplexMatrix::Zero(2, 3)), DimensionError);
  ComplexMatrix inf = identity(2);
  inf(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(require_valid(inf), NumericalError);
  CHECK(is_hermitian(pauli_y()));
  CHECK_FALSE(is_hermitian(Complex(0, 1) * pauli_y() + pauli_x() * Complex(0, 1)));
}

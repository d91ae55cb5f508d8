#include <doctest.h>

#include <cmath>

#include "seqbell/chain.hpp"
#include "seqbell/incompatibility.hpp"
#include "support.hpp"

using namespace seqbell;

TEST_CASE("degree_pair") {
  const auto r = degree_pair(DichotomicObservable(pauli_x()), DichotomicObservable(pauli_z()));
  CHECK(std::abs(r.degree - (2.0 * std::sqrt(2.0) - 2.0)) < 1e-12);
  CHECK(r.incompatible);
  CHECK(r.kind == IncompatibilityKind::pair);

  const auto same = degree_pair(pauli_z(), pauli_z());
  CHECK(std::abs(same.degree) < 1e-15);
  CHECK_FALSE(same.incompatible);

  const ComplexMatrix h = (pauli_x() + pauli_z()) / std::sqrt(2.0);
  const double oracle = std::sqrt(2.0 + std::sqrt(2.0)) + std::sqrt(2.0 - std::sqrt(2.0)) - 2.0;
  CHECK(std::abs(degree_pair(pauli_x(), h).degree - oracle) < 1e-12);

  CHECK_THROWS_AS(degree_pair(pauli_x(), identity(3)), DimensionError);
}

namespace {

// n . sigma for a random unit vector n.
ComplexMatrix random_qubit_observable(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const double x = normal(rng), y = normal(rng), z = normal(rng);
  const double n = std::sqrt(x * x + y * y + z * z);
  return (x * pauli_x() + y * pauli_y() + z * pauli_z()) / n;
}

}  // namespace

TEST_CASE("ceilings hold for traceless qubit observables") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix a = random_qubit_observable(rng);
    const ComplexMatrix b = random_qubit_observable(rng);
    const ComplexMatrix c = random_qubit_observable(rng);
    const auto pair = degree_pair(a, b);
    CHECK(pair.degree <= 2.0 * std::sqrt(2.0) - 2.0 + 1e-9);
    CHECK(pair.degree >= -1e-12);
    CHECK(degree_triple({a, b, c}).degree <= 4.0 * std::sqrt(3.0) - 4.0 + 1e-9);
  }
}

TEST_CASE("ceilings do not bound degenerate or higher-dimensional observables") {
  // Block diag: B1 = B2 on one block, B1 = -B2 on the other. Each norm reaches 2.
  ComplexMatrix b1 = identity(2);
  ComplexMatrix b2 = identity(2);
  b2(1, 1) = -1.0;
  CHECK(degree_pair(b1, b2).degree == doctest::Approx(2.0));
  CHECK(degree_pair(b1, b2).degree > 2.0 * std::sqrt(2.0) - 2.0);

  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    worst = std::max(worst, degree_triple({testing::random_dichotomic(4, rng),
                                           testing::random_dichotomic(4, rng),
                                           testing::random_dichotomic(4, rng)})
                                .degree);
  }
  CHECK(worst > 4.0 * std::sqrt(3.0) - 4.0);
  CHECK(worst <= 8.0 + 1e-9);
}

TEST_CASE("degree_triple") {
  const auto r = degree_triple({pauli_x(), pauli_y(), pauli_z()});
  CHECK(std::abs(r.degree - (4.0 * std::sqrt(3.0) - 4.0)) < 1e-12);
  CHECK(r.kind == IncompatibilityKind::triple);

  // Three equal observables: ||3 sz|| + 3 ||sz|| - 4 = 2.
  const auto equal = degree_triple({pauli_z(), pauli_z(), pauli_z()});
  CHECK(std::abs(equal.degree - 2.0) < 1e-12);
  CHECK(equal.incompatible);

  // Commuting diagonal patterns: norms add entrywise.
  const ComplexMatrix id = identity(2);
  CHECK(std::abs(degree_triple({id, id, -id}).degree - 2.0) < 1e-12);
  CHECK(std::abs(degree_triple({pauli_z(), -pauli_z(), id}).degree - 4.0) < 1e-12);
  CHECK_THROWS_AS(degree_triple({pauli_x(), pauli_y(), identity(3)}), DimensionError);
}

TEST_CASE("degree_trine") {
  const auto bob = canonical_bob();
  const auto r = degree_trine(bob);
  CHECK(std::abs(r.degree - 2.0) < 1e-12);
  CHECK(r.kind == IncompatibilityKind::trine);
  for (std::size_t y = 0; y < 3; ++y) {
    // With B1+B2+B3 = 0 each signed sum is -2 B_y, of norm 2.
    CHECK(operator_norm(bob.sum() - 2.0 * bob.matrix(y)) == doctest::Approx(2.0));
  }

  const ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  CHECK(degree_trine({zero, zero, zero}).degree == -4.0);
  CHECK_FALSE(degree_trine({zero, zero, zero}).incompatible);

  CHECK_THROWS_AS(degree_trine(ObservableTriple::from_matrices({pauli_x(), pauli_y(), pauli_z()})),
                  DomainError);

  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix u = testing::random_dichotomic(2, rng) * qubit_rotation(0.3 * trial, 0, 1, 0);
    const auto m = bob.matrices();
    const auto rotated = ObservableTriple::from_matrices(
        {u * m[0] * u.adjoint(), u * m[1] * u.adjoint(), u * m[2] * u.adjoint()});
    CHECK(std::abs(degree_trine(rotated).degree - 2.0) < 1e-12);
  }
}

TEST_CASE("sequential trine bounds") {
  const double v = 120.0 / 29.0;
  const auto b = sequential_trine_bounds({v, v, v}, {20.0 / 29.0, 0.8, 1.0});
  for (const auto& x : b) {
    CHECK(std::abs(x.lower_bound - 2.0) < 1e-12);
    CHECK(x.bell_violation);
    CHECK(x.incompatible_certified);
  }

  const auto threshold = sequential_trine_bounds({4.0, 1.0, 1.0}, {2.0 / 3.0, 1.0, 1.0});
  CHECK(std::abs(threshold[0].lower_bound - 2.0) < 1e-12);
  CHECK_FALSE(threshold[0].bell_violation);

  const auto sharp = sequential_trine_bounds({6.0, 3.0, 1.5}, {1.0, 1.0, 1.0});
  CHECK(sharp[0].lower_bound == 2.0);

  CHECK_THROWS_AS(sequential_trine_bounds({v, v, v}, {0.0, 0.8, 1.0}), DomainError);
  CHECK_THROWS_AS(sequential_trine_bounds({0.0, v, v}, {0.5, 0.8, 1.0}), DomainError);
}

TEST_CASE("sequential bounds never exceed the actual trine degree") {
  for (int a = 1; a <= 20; ++a) {
    for (int b = 1; b <= 20; ++b) {
      for (int c = 1; c <= 20; ++c) {
        const std::array<double, 3> etas{0.05 * a, 0.05 * b, 0.05 * c};
        const auto cfg = canonical_chain(etas);
        const auto v = run_chain(cfg).bell_values;
        const auto bounds = sequential_trine_bounds({v[0], v[1], v[2]}, etas);
        for (std::size_t k = 0; k < 3; ++k) {
          CHECK(bounds[k].lower_bound <= degree_trine(cfg.bobs[k].triple).degree + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("equal incompatibility locus") {
  const auto p = equal_incompatibility_point(1.0);
  CHECK(std::abs(p.eta1 - 20.0 / 29.0) < 1e-12);
  CHECK(std::abs(p.eta2 - 0.8) < 1e-12);
  CHECK(std::abs(p.bell_value - 120.0 / 29.0) < 1e-12);
  CHECK(p.bell_value == doctest::Approx(4.1379).epsilon(1e-4));

  const double lo = eta3_floor();
  for (int i = 0; i <= 10; ++i) {
    const double eta3 = lo + (1.0 - lo) * i / 10.0;
    const auto q = equal_incompatibility_point(eta3);
    const auto v = predicted_values(std::vector<double>{q.eta1, q.eta2, eta3});
    CHECK(std::abs(v[0] - v[1]) < 1e-12);
    CHECK(std::abs(v[1] - v[2]) < 1e-12);
    const double s = eta3 * eta3;
    CHECK(std::abs(q.bell_value - 24.0 * eta3 * (4.0 + s) / (16.0 + 12.0 * s + s * s)) < 1e-12);
  }
  // At the floor the common value sits exactly on the noncontextual bound.
  CHECK(equal_incompatibility_point(lo).bell_value == doctest::Approx(4.0));
  CHECK_THROWS_AS(equal_incompatibility_point(0.9), DomainError);
  CHECK_THROWS_AS(equal_incompatibility_point(1.1), DomainError);
}

TEST_CASE("CHSH baseline") {
  const auto sharp = chsh_baseline(1.0, 1.0);
  CHECK(std::abs(sharp.c1 - 2.0 * std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(sharp.bound1 - (2.0 * std::sqrt(2.0) - 2.0)) < 1e-12);
  CHECK(sharp.window_lo == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(sharp.window_hi == doctest::Approx(std::sqrt(2.0 * (std::sqrt(2.0) - 1.0))));
  CHECK(sharp.window_hi == doctest::Approx(0.9102).epsilon(1e-4));
  CHECK_FALSE(sharp.in_window);

  const auto r = chsh_baseline(0.8, 1.0);
  CHECK(std::abs(r.c2 - std::sqrt(2.0) * 1.6) < 1e-12);
  CHECK(std::abs(r.c2 - r.c2_closed) < 1e-12);
  CHECK(std::abs(r.c1 - r.c1_closed) < 1e-12);
  CHECK(std::abs(r.bound2 - (2.0 * std::sqrt(2.0) - 2.0)) < 1e-12);
  CHECK(r.in_window);

  for (int i = 1; i <= 20; ++i) {
    const auto s = chsh_baseline(0.05 * i, 0.7);
    CHECK(std::abs(s.c1 - s.c1_closed) < 1e-12);
    CHECK(std::abs(s.c2 - s.c2_closed) < 1e-12);
  }
  CHECK_THROWS_AS(chsh_baseline(0.0, 1.0), DomainError);
}

TEST_CASE("CHSH trade-off at fixed observed values") {
  const double c1 = 2.3;
  const double c2 = 2.1;
  double prev1 = 1e9, prev2 = -1e9;
  for (int i = 0; i <= 20; ++i) {
    const double eta1 = 0.71 + i * (0.91 - 0.71) / 20.0;
    const double b1 = chsh_bob1_bound(c1, eta1);
    const double b2 = chsh_bob2_bound(c2, eta1);
    CHECK(b1 < prev1);
    CHECK(b2 > prev2);
    prev1 = b1;
    prev2 = b2;
  }
}

TEST_CASE("joint measurability thresholds") {
  CHECK(anticommuting_triple_compatible(1.0 / std::sqrt(3.0)));
  CHECK_FALSE(anticommuting_triple_compatible(0.58));
  CHECK(trine_triple_compatible(2.0 / 3.0));
  CHECK_FALSE(trine_triple_compatible(0.67));

  const auto xyz = ObservableTriple::from_matrices({pauli_x(), pauli_y(), pauli_z()});
  CHECK(jointly_measurable(xyz, 0.5));
  CHECK_FALSE(jointly_measurable(xyz, 0.6));
  CHECK(jointly_measurable(canonical_bob(), 0.6));
  CHECK_FALSE(jointly_measurable(canonical_bob(), 0.7));
  const auto zzz = ObservableTriple::from_matrices({pauli_z(), pauli_z(), pauli_z()});
  CHECK_THROWS_AS(jointly_measurable(zzz, 0.5), DomainError);

  set_joint_measurability_oracle([](const ObservableTriple&, double) { return true; });
  CHECK(jointly_measurable(zzz, 0.9));
  set_joint_measurability_oracle(nullptr);
  CHECK_THROWS_AS(jointly_measurable(zzz, 0.5), DomainError);
}

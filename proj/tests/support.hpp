#pragma once

#include <random>

#include <Eigen/Eigenvalues>

#include "seqbell/linalg.hpp"

namespace testing {

using seqbell::Complex;
using seqbell::ComplexMatrix;

inline ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(normal(rng), normal(rng));
  return m;
}

inline ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(n, rng);
  return 0.5 * (g + g.adjoint());
}

inline ComplexMatrix random_density(int n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(n, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

// U diag(+-1) U^dagger with a random unitary from the QR of a Gaussian matrix.
inline ComplexMatrix random_dichotomic(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(n, rng));
  const ComplexMatrix u = qr.householderQ();
  std::bernoulli_distribution coin;
  Eigen::VectorXcd d(n);
  for (int i = 0; i < n; ++i) d(i) = coin(rng) ? 1.0 : -1.0;
  return u * d.asDiagonal() * u.adjoint();
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Spectral norm through the Hermitian eigensolver, independent of the SVD path.
inline double norm_via_eigen(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.adjoint() * m);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace testing

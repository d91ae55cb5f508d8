#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace seqbell {

using Complex = std::complex<double>;

/// Dense square complex matrix. Every operator and density matrix in the
/// toolkit is one of these; dimensions stay small (a few hundred at most).
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Default absolute tolerance for "equals" checks.
inline constexpr double kDefaultTol = 1e-9;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuantumState;

// Pauli matrices and identity.
ComplexMatrix identity(int dim);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Throws DimensionError unless m is square and NumericalError unless all
/// entries are finite.
void require_valid(const ComplexMatrix& m, const char* what = "matrix");
bool is_finite(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTol);

/// Kronecker product; block (i,j) of the result is a(i,j) * b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Real part of Tr[o * rho]. Dimensions must agree.
double expectation(const ComplexMatrix& o, const ComplexMatrix& rho);

/// State-weighted norm sqrt(Tr[O^dagger O rho]).
double state_norm(const ComplexMatrix& o, const ComplexMatrix& rho);
double state_norm(const ComplexMatrix& o, const QuantumState& rho);

/// Spectral norm (largest singular value).
double operator_norm(const ComplexMatrix& o);

/// Partial traces of a (dim_a * dim_b) joint operator.
ComplexMatrix partial_trace_a(const ComplexMatrix& joint, int dim_a, int dim_b);
ComplexMatrix partial_trace_b(const ComplexMatrix& joint, int dim_a, int dim_b);

/// Spectral sign of a Hermitian matrix; zero eigenvalues map to +1.
ComplexMatrix spectral_sign(const ComplexMatrix& hermitian);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues below zero (rounding) are clipped.
ComplexMatrix psd_sqrt(const ComplexMatrix& hermitian);

double min_eigenvalue(const ComplexMatrix& hermitian);

/// exp(-i * angle/2 * (n . sigma)) for a unit axis n; handy for rotating
/// qubit observables in tests and configs.
ComplexMatrix qubit_rotation(double angle, double nx, double ny, double nz);

}  // namespace seqbell

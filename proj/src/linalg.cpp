#include "seqbell/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "seqbell/quantum.hpp"

namespace seqbell {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.rows()) +
                         " vs " + std::to_string(b.rows()) + ")");
  }
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> hermitian_eigen(const ComplexMatrix& h) {
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigendecomposition did not converge");
  }
  return solver;
}

}  // namespace

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

bool is_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_valid(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + " must be a non-empty square matrix");
  }
  if (!is_finite(m)) throw NumericalError(std::string(what) + " has non-finite entries");
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

double expectation(const ComplexMatrix& o, const ComplexMatrix& rho) {
  require_same_dim(o, rho, "expectation");
  // Tr[o rho] = sum_ij o_ij rho_ji, without forming the product.
  return o.cwiseProduct(rho.transpose()).sum().real();
}

double state_norm(const ComplexMatrix& o, const ComplexMatrix& rho) {
  require_same_dim(o, rho, "state_norm");
  const double v = expectation(o.adjoint() * o, rho);
  return std::sqrt(std::max(v, 0.0));
}

double state_norm(const ComplexMatrix& o, const QuantumState& rho) {
  return state_norm(o, rho.matrix());
}

double operator_norm(const ComplexMatrix& o) {
  if (!is_finite(o)) throw NumericalError("operator_norm: non-finite entries");
  if (o.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(o);
  if (svd.info() != Eigen::Success) throw NumericalError("operator_norm: SVD did not converge");
  return svd.singularValues()(0);
}

ComplexMatrix partial_trace_a(const ComplexMatrix& joint, int dim_a, int dim_b) {
  if (joint.rows() != dim_a * dim_b || joint.cols() != dim_a * dim_b) {
    throw DimensionError("partial_trace_a: joint dimension does not match dA*dB");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_a; ++i) out += joint.block(i * dim_b, i * dim_b, dim_b, dim_b);
  return out;
}

ComplexMatrix partial_trace_b(const ComplexMatrix& joint, int dim_a, int dim_b) {
  if (joint.rows() != dim_a * dim_b || joint.cols() != dim_a * dim_b) {
    throw DimensionError("partial_trace_b: joint dimension does not match dA*dB");
  }
  ComplexMatrix out(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i) {
    for (int j = 0; j < dim_a; ++j) {
      out(i, j) = joint.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    }
  }
  return out;
}

ComplexMatrix spectral_sign(const ComplexMatrix& hermitian) {
  const auto solver = hermitian_eigen(hermitian);
  Eigen::VectorXd signs = solver.eigenvalues().unaryExpr([](double x) { return x >= 0.0 ? 1.0 : -1.0; });
  const ComplexMatrix& v = solver.eigenvectors();
  return v * signs.cast<Complex>().asDiagonal() * v.adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& hermitian) {
  const auto solver = hermitian_eigen(hermitian);
  Eigen::VectorXd roots = solver.eigenvalues().unaryExpr([](double x) { return std::sqrt(std::max(x, 0.0)); });
  const ComplexMatrix& v = solver.eigenvectors();
  return v * roots.cast<Complex>().asDiagonal() * v.adjoint();
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  return hermitian_eigen(hermitian).eigenvalues()(0);
}

ComplexMatrix qubit_rotation(double angle, double nx, double ny, double nz) {
  const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (len == 0.0) throw DomainError("qubit_rotation: zero axis");
  const ComplexMatrix n_sigma = (nx * pauli_x() + ny * pauli_y() + nz * pauli_z()) / len;
  return std::cos(angle / 2) * identity(2) - Complex(0.0, std::sin(angle / 2)) * n_sigma;
}

}  // namespace seqbell

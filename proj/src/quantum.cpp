#include "seqbell/quantum.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace seqbell {

StateCheck check_state(const ComplexMatrix& rho, double tol) {
  StateCheck c;
  if (rho.rows() != rho.cols() || rho.size() == 0 || !is_finite(rho)) return c;
  c.hermitian = is_hermitian(rho, tol);
  c.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  c.min_eigenvalue = min_eigenvalue(rho);
  return c;
}

QuantumState::QuantumState(ComplexMatrix rho, int dim_a, int dim_b, double tol)
    : rho_(std::move(rho)), dim_a_(dim_a), dim_b_(dim_b) {
  require_valid(rho_, "density matrix");
  if (dim_a < 1 || dim_b < 1 || rho_.rows() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    throw DimensionError("density matrix dimension " + std::to_string(rho_.rows()) +
                         " does not match dims (" + std::to_string(dim_a) + ", " +
                         std::to_string(dim_b) + ")");
  }
  const StateCheck c = check_state(rho_, tol);
  if (!c.hermitian) throw DomainError("density matrix is not Hermitian");
  if (c.trace_error > tol) throw DomainError("density matrix trace differs from 1");
  if (c.min_eigenvalue < -kPositivityFloor) {
    throw DomainError("density matrix has negative eigenvalue " + std::to_string(c.min_eigenvalue));
  }
}

QuantumState QuantumState::local(ComplexMatrix rho, double tol) {
  const int d = static_cast<int>(rho.rows());
  return QuantumState(std::move(rho), d, 1, tol);
}

QuantumState QuantumState::clip_and_renormalize(const ComplexMatrix& rho, int dim_a, int dim_b) {
  require_valid(rho, "density matrix");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (rho + rho.adjoint()));
  if (solver.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  Eigen::VectorXd ev = solver.eigenvalues().cwiseMax(0.0);
  const double total = ev.sum();
  if (total <= 0.0) throw DomainError("clip_and_renormalize: no positive weight left");
  ev /= total;
  const ComplexMatrix& v = solver.eigenvectors();
  ComplexMatrix repaired = v * ev.cast<Complex>().asDiagonal() * v.adjoint();
  return QuantumState(std::move(repaired), dim_a, dim_b);
}

double QuantumState::purity() const { return expectation(rho_, rho_); }

DichotomicObservable::DichotomicObservable(ComplexMatrix m, double tol) : m_(std::move(m)) {
  require_valid(m_, "observable");
  if (!is_hermitian(m_, tol)) throw DomainError("observable is not Hermitian");
  const auto d = m_.rows();
  if (operator_norm(m_ * m_ - ComplexMatrix::Identity(d, d)) > tol) {
    throw DomainError("observable is not dichotomic (O^2 != 1)");
  }
}

ObservableTriple::ObservableTriple(DichotomicObservable b1, DichotomicObservable b2,
                                   DichotomicObservable b3, bool require_trine, double tol)
    : obs_{std::move(b1), std::move(b2), std::move(b3)} {
  if (obs_[0].dim() != obs_[1].dim() || obs_[0].dim() != obs_[2].dim()) {
    throw DimensionError("observable triple members have different dimensions");
  }
  if (require_trine && !is_trine(tol)) throw DomainError("triple does not satisfy B1+B2+B3 = 0");
}

ObservableTriple ObservableTriple::from_matrices(const std::array<ComplexMatrix, 3>& ms,
                                                 bool require_trine, double tol) {
  return ObservableTriple(DichotomicObservable(ms[0], tol), DichotomicObservable(ms[1], tol),
                          DichotomicObservable(ms[2], tol), require_trine, tol);
}

std::array<ComplexMatrix, 3> ObservableTriple::matrices() const {
  return {obs_[0].matrix(), obs_[1].matrix(), obs_[2].matrix()};
}

ComplexMatrix ObservableTriple::sum() const {
  return obs_[0].matrix() + obs_[1].matrix() + obs_[2].matrix();
}

bool ObservableTriple::is_trine(double tol) const { return operator_norm(sum()) <= tol; }

UnsharpSetting::UnsharpSetting(double eta) : eta_(eta), xi_(0.0) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("unsharpness eta must lie in [0, 1], got " + std::to_string(eta));
  }
  xi_ = std::sqrt(1.0 - eta * eta);
}

std::pair<ComplexMatrix, ComplexMatrix> make_povm(const UnsharpSetting& s,
                                                  const DichotomicObservable& b) {
  const ComplexMatrix id = identity(b.dim());
  ComplexMatrix plus = 0.5 * (id + s.eta() * b.matrix());
  ComplexMatrix minus = id - plus;
  return {std::move(plus), std::move(minus)};
}

KrausPair kraus_pair(const UnsharpSetting& s, const DichotomicObservable& b) {
  const double rp = std::sqrt((1.0 + s.eta()) / 2.0);
  const double rm = std::sqrt((1.0 - s.eta()) / 2.0);
  const double even = 0.5 * (rp + rm);
  const double odd = 0.5 * (rp - rm);
  const ComplexMatrix id = identity(b.dim());
  return {even * id + odd * b.matrix(), even * id - odd * b.matrix()};
}

QuantumState luders_update(const QuantumState& rho, const UnsharpSetting& s,
                           std::span<const DichotomicObservable> observables,
                           std::span<const double> weights) {
  if (observables.size() != weights.size() || observables.empty()) {
    throw DimensionError("luders_update: need one weight per observable");
  }
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(wsum - 1.0) > kDefaultTol) throw DomainError("luders_update: weights must sum to 1");
  const int da = rho.dim_a();
  const ComplexMatrix id_a = identity(da);
  ComplexMatrix conj = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (std::size_t y = 0; y < observables.size(); ++y) {
    if (weights[y] < 0.0) throw DomainError("luders_update: negative weight");
    if (observables[y].dim() != rho.dim_b()) {
      throw DimensionError("luders_update: observable does not act on Bob's subsystem");
    }
    const ComplexMatrix lifted = tensor(id_a, observables[y].matrix());
    conj += weights[y] * (lifted * rho.matrix() * lifted);
  }
  ComplexMatrix out = 0.5 * (1.0 + s.xi()) * rho.matrix() + 0.5 * (1.0 - s.xi()) * conj;
  return QuantumState(std::move(out), da, rho.dim_b());
}

QuantumState luders_update(const QuantumState& rho, const UnsharpSetting& s,
                           const ObservableTriple& triple, std::span<const double, 3> weights) {
  const std::array<DichotomicObservable, 3> obs{triple[0], triple[1], triple[2]};
  return luders_update(rho, s, std::span<const DichotomicObservable>(obs),
                       std::span<const double>(weights.data(), 3));
}

ComplexMatrix luders_adjoint(const ComplexMatrix& x, const UnsharpSetting& s,
                             const ObservableTriple& triple, std::span<const double, 3> weights) {
  if (x.rows() != triple.dim()) throw DimensionError("luders_adjoint: dimension mismatch");
  ComplexMatrix conj = ComplexMatrix::Zero(x.rows(), x.cols());
  for (std::size_t y = 0; y < 3; ++y) conj += weights[y] * (triple.matrix(y) * x * triple.matrix(y));
  return 0.5 * (1.0 + s.xi()) * x + 0.5 * (1.0 - s.xi()) * conj;
}

ObservableTriple canonical_alice() {
  const double r3 = std::sqrt(3.0);
  const ComplexMatrix a1 = 0.5 * (pauli_x() + r3 * pauli_z());
  const ComplexMatrix a2 = 0.5 * (pauli_x() - r3 * pauli_z());
  const ComplexMatrix a3 = -pauli_x();
  return ObservableTriple::from_matrices({a1, a2, a3}, true);
}

ObservableTriple canonical_bob() {
  const ObservableTriple a = canonical_alice();
  // B1 = -A3, B2 = -A2, B3 = -A1.
  return ObservableTriple::from_matrices({-a.matrix(2), -a.matrix(1), -a.matrix(0)}, true);
}

QuantumState canonical_state() {
  const ComplexMatrix rho = 0.25 * (identity(4) + tensor(pauli_x(), pauli_x()) -
                                    tensor(pauli_y(), pauli_y()) + tensor(pauli_z(), pauli_z()));
  return QuantumState(rho, 2, 2);
}

Realization canonical_realization() {
  return Realization{canonical_state(), canonical_alice(), canonical_bob()};
}

std::array<ComplexMatrix, 3> alice_combinations(const ObservableTriple& alice) {
  const ComplexMatrix& a1 = alice.matrix(0);
  const ComplexMatrix& a2 = alice.matrix(1);
  const ComplexMatrix& a3 = alice.matrix(2);
  return {a1 + a2 - a3, a1 - a2 + a3, -a1 + a2 + a3};
}

std::array<ComplexMatrix, 3> correlation_operators(const ObservableTriple& alice,
                                                   const ObservableTriple& bob,
                                                   const QuantumState& rho) {
  if (!alice.is_trine() || !bob.is_trine()) {
    throw DomainError("correlation_operators: both triples must be trine");
  }
  if (rho.dim_a() != alice.dim() || rho.dim_b() != bob.dim()) {
    throw DimensionError("correlation_operators: state dims do not match the triples");
  }
  const auto s = alice_combinations(alice);
  const ComplexMatrix marginal = rho.marginal_a();
  std::array<ComplexMatrix, 3> a;
  for (std::size_t y = 0; y < 3; ++y) {
    const double omega = state_norm(s[y], marginal);
    if (omega <= kDefaultTol) throw DomainError("correlation_operators: degenerate omega");
    a[y] = s[y] / omega;
  }
  const ComplexMatrix& b1 = bob.matrix(0);
  const ComplexMatrix& b2 = bob.matrix(1);
  const ComplexMatrix& b3 = bob.matrix(2);
  ComplexMatrix c1 = tensor(a[0], b1);
  ComplexMatrix c2 = (tensor(a[1], b2) + tensor(a[2], b3) - tensor(a[2], b2) - tensor(a[1], b3)) / 3.0;
  ComplexMatrix c3 = (tensor(a[1] * a[0], b2 * b1) - tensor(a[1] * a[0], b3 * b1) -
                      tensor(a[2] * a[0], b2 * b1) + tensor(a[2] * a[0], b3 * b1)) /
                     3.0;
  return {std::move(c1), std::move(c2), std::move(c3)};
}

std::array<ComplexMatrix, 3> correlation_operators(const ObservableTriple& alice,
                                                   const ObservableTriple& bob) {
  const int da = alice.dim();
  const int db = bob.dim();
  const ComplexMatrix mixed = identity(da * db) / static_cast<double>(da * db);
  return correlation_operators(alice, bob, QuantumState(mixed, da, db));
}

}  // namespace seqbell

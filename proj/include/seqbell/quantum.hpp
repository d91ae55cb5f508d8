#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "seqbell/linalg.hpp"

namespace seqbell {

/// Tolerance used when validating density operators. Negative eigenvalues
/// above -kPositivityFloor are accepted as rounding noise.
inline constexpr double kPositivityFloor = 1e-10;

/// Density operator on C^dA (x) C^dB.
///
/// Construction validates Hermiticity, unit trace and positivity and throws
/// DomainError on violation. Nothing is silently repaired; callers that want
/// repair must ask for it via clip_and_renormalize().
class QuantumState {
 public:
  QuantumState(ComplexMatrix rho, int dim_a, int dim_b, double tol = kDefaultTol);

  /// Single-party state (dim_b = 1).
  static QuantumState local(ComplexMatrix rho, double tol = kDefaultTol);

  /// Eigenvalue clipping at zero followed by trace renormalization.
  static QuantumState clip_and_renormalize(const ComplexMatrix& rho, int dim_a, int dim_b);

  const ComplexMatrix& matrix() const noexcept { return rho_; }
  int dim_a() const noexcept { return dim_a_; }
  int dim_b() const noexcept { return dim_b_; }
  int dim() const noexcept { return dim_a_ * dim_b_; }

  ComplexMatrix marginal_a() const { return partial_trace_b(rho_, dim_a_, dim_b_); }
  ComplexMatrix marginal_b() const { return partial_trace_a(rho_, dim_a_, dim_b_); }
  double purity() const;

 private:
  ComplexMatrix rho_;
  int dim_a_;
  int dim_b_;
};

/// Result of checking a candidate density matrix without constructing it.
struct StateCheck {
  bool hermitian = false;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  bool ok(double tol = kDefaultTol) const {
    return hermitian && trace_error <= tol && min_eigenvalue >= -kPositivityFloor;
  }
};
StateCheck check_state(const ComplexMatrix& rho, double tol = kDefaultTol);

/// Hermitian operator with O^2 = 1 (eigenvalues +-1).
class DichotomicObservable {
 public:
  explicit DichotomicObservable(ComplexMatrix m, double tol = kDefaultTol);
  const ComplexMatrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }

 private:
  ComplexMatrix m_;
};

/// Three dichotomic observables of one party on a common space.
class ObservableTriple {
 public:
  ObservableTriple(DichotomicObservable b1, DichotomicObservable b2, DichotomicObservable b3,
                   bool require_trine = false, double tol = kDefaultTol);

  /// Convenience: validate raw matrices.
  static ObservableTriple from_matrices(const std::array<ComplexMatrix, 3>& ms,
                                        bool require_trine = false, double tol = kDefaultTol);

  const DichotomicObservable& operator[](std::size_t y) const { return obs_[y]; }
  const ComplexMatrix& matrix(std::size_t y) const { return obs_[y].matrix(); }
  std::array<ComplexMatrix, 3> matrices() const;
  int dim() const noexcept { return obs_[0].dim(); }

  ComplexMatrix sum() const;
  /// B1 + B2 + B3 = 0 within tol (spectral norm).
  bool is_trine(double tol = kDefaultTol) const;

 private:
  std::array<DichotomicObservable, 3> obs_;
};

/// Unsharpness eta in [0, 1] with xi = sqrt(1 - eta^2).
///
/// eta = 0 is admitted as the no-measurement limit of the instrument.
class UnsharpSetting {
 public:
  explicit UnsharpSetting(double eta);
  double eta() const noexcept { return eta_; }
  double xi() const noexcept { return xi_; }

 private:
  double eta_;
  double xi_;
};

struct KrausPair {
  ComplexMatrix k_plus;
  ComplexMatrix k_minus;
};

/// Effects 1/2 (1 +- eta B).
std::pair<ComplexMatrix, ComplexMatrix> make_povm(const UnsharpSetting& s,
                                                  const DichotomicObservable& b);

/// Square-root Kraus operators of the unsharp POVM.
KrausPair kraus_pair(const UnsharpSetting& s, const DichotomicObservable& b);

/// Uniform weights over three settings.
inline constexpr std::array<double, 3> kUniformWeights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

/// Lueders update of a bipartite state after Bob measures one of his
/// observables (chosen with the given weights) with unsharpness s, outcome
/// discarded:
///   rho' = (1+xi)/2 rho + (1-xi)/2 sum_y w_y (1 (x) B_y) rho (1 (x) B_y).
QuantumState luders_update(const QuantumState& rho, const UnsharpSetting& s,
                           std::span<const DichotomicObservable> observables,
                           std::span<const double> weights);

QuantumState luders_update(const QuantumState& rho, const UnsharpSetting& s,
                           const ObservableTriple& triple,
                           std::span<const double, 3> weights = kUniformWeights);

/// Heisenberg-picture adjoint of luders_update acting on Bob's operator x.
ComplexMatrix luders_adjoint(const ComplexMatrix& x, const UnsharpSetting& s,
                             const ObservableTriple& triple,
                             std::span<const double, 3> weights = kUniformWeights);

struct Realization {
  QuantumState rho;
  ObservableTriple alice;
  ObservableTriple bob;
};

/// The explicit two-qubit optimal realization:
///   A1 = -B3 = (sx + sqrt3 sz)/2, A2 = -B2 = (sx - sqrt3 sz)/2, A3 = -B1 = -sx,
///   rho = (1 + sx sx - sy sy + sz sz)/4.
Realization canonical_realization();
ObservableTriple canonical_alice();
ObservableTriple canonical_bob();
QuantumState canonical_state();

/// Unnormalized Alice combinations S_1 = A1+A2-A3, S_2 = A1-A2+A3,
/// S_3 = -A1+A2+A3 that pair with B_1, B_2, B_3 in the Bell operator.
std::array<ComplexMatrix, 3> alice_combinations(const ObservableTriple& alice);

/// The joint operators C_i (x) C_i built from the normalized Alice
/// combinations and Bob's observables. omega_y is taken as state_norm of
/// S_y on rho (marginal on Alice's side); the overload without a state uses
/// the maximally mixed state, which gives omega_y = 2 for any trine triple.
/// Throws DomainError for non-trine input.
std::array<ComplexMatrix, 3> correlation_operators(const ObservableTriple& alice,
                                                   const ObservableTriple& bob,
                                                   const QuantumState& rho);
std::array<ComplexMatrix, 3> correlation_operators(const ObservableTriple& alice,
                                                   const ObservableTriple& bob);

}  // namespace seqbell

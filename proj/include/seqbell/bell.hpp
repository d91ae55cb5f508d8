#pragma once

#include <array>
#include <cstdint>

#include "seqbell/quantum.hpp"

namespace seqbell {

/// Reference values of the three-setting Bell functional.
inline constexpr double kLocalBound = 5.0;
inline constexpr double kNoncontextualBound = 4.0;
inline constexpr double kQuantumOptimum = 6.0;

/// Bell operator (A1+A2-A3) (x) B1 + (A1-A2+A3) (x) B2 + (-A1+A2+A3) (x) B3.
ComplexMatrix bell_operator(const ObservableTriple& alice, const ObservableTriple& bob);

/// eta * Tr[I rho]. Bob's correlators carry the unsharpness factor eta in (0, 1].
double bell_value(const QuantumState& rho, const ObservableTriple& alice,
                  const ObservableTriple& bob, double eta = 1.0);

/// Bell functional evaluated on scalar expectations (e_x for Alice, b_y for Bob).
double bell_functional(const std::array<double, 3>& alice, const std::array<double, 3>& bob);

/// Maximum over all 64 deterministic +-1 assignments.
double local_bound();

/// Maximum over Bob's 8 deterministic outputs and Alice expectation vectors
/// with e1+e2+e3 = 0, |e_x| <= 1, by enumerating the vertices of that
/// hexagon (permutations of (1,-1,0)) plus the origin.
double pnc_bound();

/// Vertices used by pnc_bound().
std::array<std::array<double, 3>, 7> parity_oblivious_vertices();

struct SosDecomposition {
  std::array<double, 3> omega{};
  std::array<ComplexMatrix, 3> script_a;
  std::array<double, 3> l_residuals{};
  double gamma_value = 0.0;
  /// Set when some omega_y vanishes (S_y annihilates the support of rho);
  /// the corresponding term is dropped.
  bool singular = false;

  bool optimal(double tol = 1e-12) const { return !singular && gamma_value <= tol; }
};

/// SOS diagnostics: omega_y = ||S_y||_rho, script_a_y = S_y/omega_y,
/// L_y = script_a_y (x) 1 - 1 (x) B_y, residuals Tr[L_y rho] and
/// <gamma> = 1/2 sum omega_y Tr[L_y^dag L_y rho] (= sum omega - I).
SosDecomposition sos_diagnose(const QuantumState& rho, const ObservableTriple& alice,
                              const ObservableTriple& bob);

/// Largest entry magnitude of the Bob-side operator
///   (1/3) sum_x (Tr_A[rho (Pi+_x (x) 1)] - Tr_A[rho (Pi-_x (x) 1)]),
/// i.e. the setting-averaged difference between Bob's conditional
/// preparations for Alice outcome +1 and -1. Zero iff the parity-oblivious
/// constraint holds; 1 for a maximally parity-revealing preparation.
double parity_oblivious_residual(const QuantumState& rho, const ObservableTriple& alice);

struct SeesawOptions {
  int dim = 2;
  int restarts = 50;
  std::uint64_t seed = 1;
  int max_iterations = 2000;
  double tolerance = 1e-13;  // stop once a full sweep improves by less than this
  int threads = 1;
};

struct SeesawResult {
  double value = 0.0;
  bool converged = true;
  int best_restart = -1;
  std::array<ComplexMatrix, 3> alice;
  std::array<ComplexMatrix, 3> bob;
  ComplexVector state;
};

/// Alternating optimization of the Bell value over pure states and
/// dichotomic observables in local dimension d. The state step takes the top
/// eigenvector of the Bell operator; each observable step replaces A_x (B_y)
/// with the spectral sign of its effective operator. restarts = 0 returns the
/// value at a single random starting point.
SeesawResult seesaw(const SeesawOptions& opts);
double seesaw_max(int dim, int restarts, std::uint64_t seed);

}  // namespace seqbell

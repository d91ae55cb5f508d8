#pragma once

#include <array>
#include <functional>
#include <optional>

#include "seqbell/certification.hpp"
#include "seqbell/quantum.hpp"

namespace seqbell {

enum class IncompatibilityKind { pair, triple, trine };

const char* to_string(IncompatibilityKind kind);

struct IncompatibilityReport {
  double degree = 0.0;
  IncompatibilityKind kind = IncompatibilityKind::pair;
  std::optional<double> lower_bound_from_bell;
  bool incompatible = false;  // degree > tol
};

/// ||B1 + B2|| + ||B1 - B2|| - 2. Maximum 2 sqrt2 - 2.
IncompatibilityReport degree_pair(const ComplexMatrix& b1, const ComplexMatrix& b2,
                                  double tol = kDefaultTol);
IncompatibilityReport degree_pair(const DichotomicObservable& b1, const DichotomicObservable& b2,
                                  double tol = kDefaultTol);

/// ||B1+B2+B3|| + ||B1-B2+B3|| + ||B1+B2-B3|| + ||-B1+B2+B3|| - 4.
/// Maximum 4 sqrt3 - 4, reached by pairwise anticommuting triples.
IncompatibilityReport degree_triple(const std::array<ComplexMatrix, 3>& b, double tol = kDefaultTol);
IncompatibilityReport degree_triple(const ObservableTriple& b, double tol = kDefaultTol);

/// ||B1-B2+B3|| + ||B1+B2-B3|| + ||-B1+B2+B3|| - 4 for B1+B2+B3 = 0.
/// Maximum 2. Throws DomainError when the sum is not zero within tol.
IncompatibilityReport degree_trine(const std::array<ComplexMatrix, 3>& b, double tol = kDefaultTol);
IncompatibilityReport degree_trine(const ObservableTriple& b, double tol = kDefaultTol);

struct SequentialBound {
  double lower_bound = 0.0;
  bool bell_violation = false;          // I^k > 4
  bool incompatible_certified = false;  // lower_bound > tol
};

/// Lower bounds on D_T of each Bob's trine from the observed tuple:
///   I1/eta1 - 4,  2 I2/(eta2 (1+xi1)) - 4,  4 I3/(eta3 (1+xi1)(1+xi2)) - 4.
std::array<SequentialBound, 3> sequential_trine_bounds(const BellTuple& tuple,
                                                       const std::array<double, 3>& etas,
                                                       double tol = kDefaultTol);

struct EqualIncompatibilityPoint {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double bell_value = 0.0;  // common I^1 = I^2 = I^3
};

/// Unsharpness values for which all three sequential Bell values (and hence
/// the three trine bounds) coincide. eta3 must lie in [eta3_floor(), 1].
EqualIncompatibilityPoint equal_incompatibility_point(double eta3);

struct ChshReport {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double c1 = 0.0;  // simulated
  double c2 = 0.0;  // simulated
  double c1_closed = 0.0;  // 2 sqrt2 eta1
  double c2_closed = 0.0;  // sqrt2 eta2 (1 + xi1)
  double bound1 = 0.0;
  double bound2 = 0.0;
  double window_lo = 0.0;  // 1/sqrt2
  double window_hi = 0.0;  // sqrt(2 (sqrt2 - 1))
  bool in_window = false;
};

/// D(B1^1, B2^1) >= C1/eta1 - 2.
double chsh_bob1_bound(double c1, double eta1);
/// D(B1^2, B2^2) >= 2 C2/(1 + xi1) - 2 (Bob^2's own unsharpness is not divided out).
double chsh_bob2_bound(double c2, double eta1);

/// Two-Bob CHSH chain on the maximally entangled state with Alice
/// (sx +- sz)/sqrt2 and Bob sx, sz, each Bob picking a setting with weight 1/2.
ChshReport chsh_baseline(double eta1, double eta2);

/// Joint measurability of smeared observables, from the known qubit thresholds.
bool anticommuting_triple_compatible(double eta);  // eta <= 1/sqrt3
bool trine_triple_compatible(double eta);          // eta <= 2/3

/// Optional external decision procedure for joint measurability of the
/// smeared triple; when unset, the threshold predicates above are used.
using JointMeasurabilityOracle = std::function<bool(const ObservableTriple&, double eta)>;
void set_joint_measurability_oracle(JointMeasurabilityOracle oracle);
/// Uses the installed oracle if any; otherwise the thresholds for trine or
/// pairwise anticommuting qubit triples. Throws DomainError for other input.
bool jointly_measurable(const ObservableTriple& triple, double eta);

}  // namespace seqbell

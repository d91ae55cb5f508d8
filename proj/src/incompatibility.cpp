#include "seqbell/incompatibility.hpp"

#include <cmath>
#include <mutex>
#include <string>

namespace seqbell {

namespace {

double xi_of(double eta) { return std::sqrt(1.0 - eta * eta); }

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  require_valid(a, what);
  require_valid(b, what);
  if (a.rows() != b.rows()) throw DimensionError(std::string(what) + ": dimension mismatch");
}

IncompatibilityReport make_report(double degree, IncompatibilityKind kind, double tol) {
  return IncompatibilityReport{degree, kind, std::nullopt, degree > tol};
}

void require_eta(double eta, const char* what) {
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError(std::string(what) + ": eta must lie in (0, 1]");
}

std::mutex& oracle_mutex() {
  static std::mutex m;
  return m;
}

JointMeasurabilityOracle& oracle_slot() {
  static JointMeasurabilityOracle oracle;
  return oracle;
}

}  // namespace

const char* to_string(IncompatibilityKind kind) {
  switch (kind) {
    case IncompatibilityKind::pair: return "pair";
    case IncompatibilityKind::triple: return "triple";
    case IncompatibilityKind::trine: return "trine";
  }
  return "unknown";
}

IncompatibilityReport degree_pair(const ComplexMatrix& b1, const ComplexMatrix& b2, double tol) {
  require_same_dim(b1, b2, "degree_pair");
  const double d = operator_norm(b1 + b2) + operator_norm(b1 - b2) - 2.0;
  return make_report(d, IncompatibilityKind::pair, tol);
}

IncompatibilityReport degree_pair(const DichotomicObservable& b1, const DichotomicObservable& b2,
                                  double tol) {
  return degree_pair(b1.matrix(), b2.matrix(), tol);
}

IncompatibilityReport degree_triple(const std::array<ComplexMatrix, 3>& b, double tol) {
  require_same_dim(b[0], b[1], "degree_triple");
  require_same_dim(b[0], b[2], "degree_triple");
  const double d = operator_norm(b[0] + b[1] + b[2]) + operator_norm(b[0] - b[1] + b[2]) +
                   operator_norm(b[0] + b[1] - b[2]) + operator_norm(-b[0] + b[1] + b[2]) - 4.0;
  return make_report(d, IncompatibilityKind::triple, tol);
}

IncompatibilityReport degree_triple(const ObservableTriple& b, double tol) {
  return degree_triple(b.matrices(), tol);
}

IncompatibilityReport degree_trine(const std::array<ComplexMatrix, 3>& b, double tol) {
  require_same_dim(b[0], b[1], "degree_trine");
  require_same_dim(b[0], b[2], "degree_trine");
  if (operator_norm(b[0] + b[1] + b[2]) > tol) {
    throw DomainError("degree_trine: observables do not sum to zero");
  }
  const double d = operator_norm(b[0] - b[1] + b[2]) + operator_norm(b[0] + b[1] - b[2]) +
                   operator_norm(-b[0] + b[1] + b[2]) - 4.0;
  return make_report(d, IncompatibilityKind::trine, tol);
}

IncompatibilityReport degree_trine(const ObservableTriple& b, double tol) {
  return degree_trine(b.matrices(), tol);
}

std::array<SequentialBound, 3> sequential_trine_bounds(const BellTuple& tuple,
                                                       const std::array<double, 3>& etas,
                                                       double tol) {
  for (double eta : etas) require_eta(eta, "sequential_trine_bounds");
  if (!(tuple.i1 > 0.0 && tuple.i2 > 0.0 && tuple.i3 > 0.0)) {
    throw DomainError("sequential_trine_bounds: Bell values must be positive");
  }
  const double a1 = 1.0 + xi_of(etas[0]);
  const double a2 = 1.0 + xi_of(etas[1]);
  const std::array<double, 3> bounds{tuple.i1 / etas[0] - 4.0,
                                     2.0 * tuple.i2 / (etas[1] * a1) - 4.0,
                                     4.0 * tuple.i3 / (etas[2] * a1 * a2) - 4.0};
  const auto violated = tuple.violations();
  std::array<SequentialBound, 3> out;
  for (std::size_t k = 0; k < 3; ++k) out[k] = {bounds[k], violated[k], bounds[k] > tol};
  return out;
}

EqualIncompatibilityPoint equal_incompatibility_point(double eta3) {
  if (!(eta3 >= eta3_floor() - 1e-12 && eta3 <= 1.0)) {
    throw DomainError("equal_incompatibility_point: eta3 below the admissible floor or above 1");
  }
  const double s = eta3 * eta3;
  const double eta1 = 4.0 * eta3 * (4.0 + s) / (16.0 + 12.0 * s + s * s);
  const double eta2 = 4.0 * eta3 / (4.0 + s);
  return {eta1, eta2, 6.0 * eta1};
}

double chsh_bob1_bound(double c1, double eta1) {
  require_eta(eta1, "chsh_bob1_bound");
  return c1 / eta1 - 2.0;
}

double chsh_bob2_bound(double c2, double eta1) {
  require_eta(eta1, "chsh_bob2_bound");
  return 2.0 * c2 / (1.0 + xi_of(eta1)) - 2.0;
}

ChshReport chsh_baseline(double eta1, double eta2) {
  require_eta(eta1, "chsh_baseline");
  require_eta(eta2, "chsh_baseline");
  const double r2 = std::sqrt(2.0);
  const ComplexMatrix sx = pauli_x();
  const ComplexMatrix sz = pauli_z();

  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / r2;
  const QuantumState rho(phi * phi.adjoint(), 2, 2);

  const std::array<ComplexMatrix, 2> alice{(sx + sz) / r2, (sx - sz) / r2};
  const std::array<DichotomicObservable, 2> bob{DichotomicObservable(sx), DichotomicObservable(sz)};
  auto chsh = [&](const QuantumState& s) {
    const ComplexMatrix op = tensor(alice[0], bob[0].matrix() + bob[1].matrix()) +
                             tensor(alice[1], bob[0].matrix() - bob[1].matrix());
    return expectation(op, s.matrix());
  };

  ChshReport r;
  r.eta1 = eta1;
  r.eta2 = eta2;
  r.c1 = eta1 * chsh(rho);
  const std::array<double, 2> weights{0.5, 0.5};
  const QuantumState next = luders_update(rho, UnsharpSetting(eta1), bob, weights);
  r.c2 = eta2 * chsh(next);
  r.c1_closed = 2.0 * r2 * eta1;
  r.c2_closed = r2 * eta2 * (1.0 + xi_of(eta1));
  r.bound1 = chsh_bob1_bound(r.c1, eta1);
  r.bound2 = chsh_bob2_bound(r.c2, eta1);
  r.window_lo = 1.0 / r2;
  r.window_hi = std::sqrt(2.0 * (r2 - 1.0));
  r.in_window = eta1 > r.window_lo && eta1 < r.window_hi;
  return r;
}

bool anticommuting_triple_compatible(double eta) { return eta <= 1.0 / std::sqrt(3.0); }

bool trine_triple_compatible(double eta) { return eta <= 2.0 / 3.0; }

void set_joint_measurability_oracle(JointMeasurabilityOracle oracle) {
  std::lock_guard<std::mutex> lock(oracle_mutex());
  oracle_slot() = std::move(oracle);
}

bool jointly_measurable(const ObservableTriple& triple, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("jointly_measurable: eta must lie in [0, 1]");
  JointMeasurabilityOracle oracle;
  {
    std::lock_guard<std::mutex> lock(oracle_mutex());
    oracle = oracle_slot();
  }
  if (oracle) return oracle(triple, eta);

  if (triple.dim() != 2) throw DomainError("jointly_measurable: thresholds cover qubits only");
  if (triple.is_trine()) return trine_triple_compatible(eta);
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      worst = std::max(worst, operator_norm(anticommutator(triple.matrix(i), triple.matrix(j))));
    }
  }
  if (worst <= kDefaultTol) return anticommuting_triple_compatible(eta);
  throw DomainError("jointly_measurable: no threshold known for this triple");
}

}  // namespace seqbell

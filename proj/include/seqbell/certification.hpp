#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace seqbell {

/// Observed sequential Bell values of Bob^1, Bob^2, Bob^3.
struct BellTuple {
  double i1 = 0.0;
  double i2 = 0.0;
  double i3 = 0.0;

  /// Violation of the noncontextual bound, per Bob (strict: I^k > 4).
  std::array<bool, 3> violations() const;
};

/// Endpoint tolerance for interval containment.
inline constexpr double kEndpointTol = 5e-10;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = true;
  bool hi_open = true;
  std::string lo_expr;
  std::string hi_expr;

  bool contains(double x, double tol = kEndpointTol) const;
  /// Interval notation, e.g. "(2/3, sqrt5/3)".
  std::string str() const;
};

/// eta_3 lower bound when all three Bobs violate: (3 + sqrt5 - sqrt(6 sqrt5 - 2)) / 2.
double eta3_floor();

/// Lower edge of eta_2 for Bob^2 to violate, given eta_1: 4 / (3 (1 + xi_1)).
double eta2_lower(double eta1);
/// Upper edge of eta_2 that still lets Bob^3 violate, given eta_1:
/// 4 sqrt(3 xi_1 - 1) / (3 (1 + xi_1)). Returns 0 when 3 xi_1 <= 1.
double eta2_upper(double eta1);
/// Lower edge of eta_3 for Bob^3 to violate: 8 / (3 (1 + xi_1)(1 + xi_2)).
double eta3_lower(double eta1, double eta2);

enum class TupleStatus { consistent, inconsistent };

struct CertificationResult {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta3_min = 0.0;
  Interval eta1_interval;
  /// eta_2 interval at the estimated eta_1 (lower and upper edges above).
  Interval eta2_interval;
  /// The eta_1-independent range (3 - sqrt5, 4/5) quoted for the all-violation case.
  Interval eta2_interval_quoted;
  std::array<bool, 3> violations{};
  TupleStatus status = TupleStatus::consistent;
  /// How far I^2 and I^3 exceed their ceilings at the inferred eta values
  /// (I^2 <= 3 (1 + xi_1), I^3 <= 3/2 (1 + xi_1)(1 + xi_2)); 0 on the manifold.
  double manifold_distance = 0.0;
  bool valid = false;
};

/// Infers eta_1, eta_2 and the minimal eta_3 from an observed tuple.
/// Throws DomainError when i1 lies outside (0, 6]. Tuples above the closed-form
/// ceilings are flagged inconsistent, never clamped.
CertificationResult invert_tuple(const BellTuple& t);

struct RangeReport {
  Interval eta1;
  std::optional<Interval> eta2;         // present once Bob^2 violates
  std::optional<Interval> eta2_quoted;  // present when all three violate
  std::optional<Interval> eta3;         // present when all three violate
};

/// Admissible ranges implied by which Bobs violate. flags must be {1,0,0},
/// {1,1,0} or {1,1,1}; anything else throws DomainError.
RangeReport certify_ranges(const std::array<bool, 3>& flags);

/// I^3 at eta_3 = 1 as a function of (I^1, I^2).
double trade_off_exact(double i1, double i2);
/// 6 - 3/2 ((I^1/6)^2 + (I^2/6)^2).
double trade_off_paraboloid(double i1, double i2);
/// Largest I^2 that still allows I^3 > 4: 4 sqrt(sqrt(36 - I1^2)/2 - 1).
double i2_upper_edge(double i1);
/// Largest I^1 compatible with I^2 and I^3 violating: 2 sqrt5.
double i1_upper_edge();

struct SurfaceRow {
  double i1 = 0.0;
  double i2 = 0.0;
  double i3_exact = 0.0;
  double i3_paraboloid = 0.0;
};

/// Samples the violation region 4 < I^1 < 2 sqrt5, 4 < I^2 < i2_upper_edge(I^1)
/// at I = 4 + n * step, n >= 1, ordered by I^1 then I^2. Throws DomainError for
/// step outside (0, 0.5] or when no grid point falls inside the region.
std::vector<SurfaceRow> surface_sweep(double step, int threads = 1);

}  // namespace seqbell

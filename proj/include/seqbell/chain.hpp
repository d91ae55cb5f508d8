#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "seqbell/quantum.hpp"

namespace seqbell {

/// One Bob in the sequence: his observables, unsharpness, and the
/// distribution over his three settings (uniform unless overridden).
struct SequentialBob {
  ObservableTriple triple;
  UnsharpSetting setting;
  std::array<double, 3> weights = kUniformWeights;
};

/// Chains longer than this are simulated but flagged: no Bob beyond the
/// third can violate the noncontextual bound.
inline constexpr std::size_t kMaxChainLength = 4;

struct ChainConfig {
  QuantumState initial_state;
  ObservableTriple alice;
  std::vector<SequentialBob> bobs;

  /// Throws on empty chains and dimension mismatches.
  void validate() const;
  bool exceeds_length_cap() const { return bobs.size() > kMaxChainLength; }
};

/// Canonical optimal state and Alice triple, with every Bob using the
/// canonical trine triple and the given unsharpness values.
ChainConfig canonical_chain(std::span<const double> etas);

struct EffectiveObservable {
  /// Bob^k's observable pulled back one step to rho_{k-1}.
  ComplexMatrix matrix;
  /// ||1 (x) matrix||_{rho_{k-1}}.
  double omega = 1.0;
};

struct ChainResult {
  std::vector<double> bell_values;
  /// states[k] is the state shared by Alice and Bob^(k+1).
  std::vector<QuantumState> states;
  /// effective_observables[k][y]; for the first Bob this is B_y itself with
  /// omega evaluated on rho_1.
  std::vector<std::array<EffectiveObservable, 3>> effective_observables;
  bool length_flagged = false;
};

/// Simulates the sequence: I^k = eta_k Tr[I_k rho_k], rho_{k+1} from the
/// Lueders update with Bob^k's instrument.
ChainResult run_chain(const ChainConfig& cfg);

/// Closed forms for the canonical chain:
///   I^k = 6 eta_k prod_{j<k} (1 + sqrt(1 - eta_j^2)) / 2.
/// Every eta must lie in (0, 1].
std::vector<double> predicted_values(std::span<const double> etas);

/// Upper estimate of the fourth Bob's value with eta_4 = 1 when Bobs 1-3
/// are only required to satisfy 2/3 < eta_1 <= eta_2 <= eta_3:
/// 3/4 (1 + sqrt(1 - eta1_floor^2))^3. With the default floor 2/3 this is
/// 3/4 (1 + sqrt5/3)^3 ~ 3.9876.
double max_fourth_value(double eta1_floor = 2.0 / 3.0);

struct FourthValueBound {
  std::array<double, 3> etas{};  // infimal eta_1, eta_2, eta_3
  double value = 0.0;            // supremum of I^4 with eta_4 = 1
};

/// Supremum of I^4 (eta_4 = 1) over the region where I^1, I^2, I^3 > 4,
/// approached with every eta at its lower boundary. Returns nullopt when
/// the floor on eta_1 leaves no such region.
std::optional<FourthValueBound> constrained_fourth_value(double eta1_floor = 2.0 / 3.0);

/// Operator residuals (spectral norms) of the algebraic conditions behind
/// the sequential closed forms, for one Bob.
struct BobResiduals {
  int index = 0;  // 1-based Bob number
  double trine_sum = 0.0;             // ||B1 + B2 + B3||
  double anticommutator = 0.0;        // max_{y != y'} ||{B_y, B_y'} + 1||
  // Present for k >= 2.
  std::optional<double> conjugation_total;  // ||sum_{y,y'} B^{k-1}_{y'} B^k_y B^{k-1}_{y'}||
  std::optional<double> conjugation_each;   // max_y ||sum_{y'} B^{k-1}_{y'} B^k_y B^{k-1}_{y'}||
  std::optional<double> proportionality;    // max_y ||Btilde^k_y - c_k B^k_y||, pulled back to rho_1
  // Present for k >= 3.
  std::optional<double> first_conjugation_each;  // max_y ||sum_{y'} B^1_{y'} B^k_y B^1_{y'}||
  std::optional<double> nested_total;   // ||sum_{y,y',y''} B^{k-2}_{y''} B^{k-1}_{y'} B^k_y B^{k-1}_{y'} B^{k-2}_{y''}||
  std::optional<double> nested_each;    // max_y of the same without the y sum

  double max_residual() const;
};

struct TheoremReport {
  std::vector<BobResiduals> bobs;
  double max_residual() const;
};

TheoremReport verify_theorem_conditions(const ChainConfig& cfg);

/// Operator residuals for the optimal-realization identities: pairwise
/// commutators of the C_i (x) C_i, |Tr[(C_i (x) C_i) rho] - 1|, and
/// ||C_3 (x) C_3 - (C_2 (x) C_2)(C_1 (x) C_1)||.
struct CorrelationIdentityReport {
  double commutators = 0.0;
  double traces = 0.0;
  double product = 0.0;
  double max_residual() const;
};
CorrelationIdentityReport verify_correlation_identities(const QuantumState& rho,
                                                        const ObservableTriple& alice,
                                                        const ObservableTriple& bob);

}  // namespace seqbell

#include "seqbell/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seqbell/bell.hpp"

namespace seqbell {

namespace {

double xi_of(double eta) { return std::sqrt(1.0 - eta * eta); }

void require_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError("unsharpness must lie in (0, 1], got " + std::to_string(eta));
  }
}

// sum_{y'} outer_{y'} x outer_{y'}
ComplexMatrix conjugation_sum(const ObservableTriple& outer, const ComplexMatrix& x) {
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (std::size_t y = 0; y < 3; ++y) out += outer.matrix(y) * x * outer.matrix(y);
  return out;
}

}  // namespace

void ChainConfig::validate() const {
  if (bobs.empty()) throw DomainError("chain needs at least one Bob");
  if (initial_state.dim_a() != alice.dim()) {
    throw DimensionError("Alice's triple does not match the state's first subsystem");
  }
  for (const auto& bob : bobs) {
    if (bob.triple.dim() != initial_state.dim_b()) {
      throw DimensionError("a Bob triple does not match the state's second subsystem");
    }
  }
}

ChainConfig canonical_chain(std::span<const double> etas) {
  std::vector<SequentialBob> bobs;
  bobs.reserve(etas.size());
  for (double eta : etas) bobs.push_back(SequentialBob{canonical_bob(), UnsharpSetting(eta)});
  return ChainConfig{canonical_state(), canonical_alice(), std::move(bobs)};
}

ChainResult run_chain(const ChainConfig& cfg) {
  cfg.validate();
  ChainResult out;
  out.length_flagged = cfg.exceeds_length_cap();
  const int da = cfg.initial_state.dim_a();
  const ComplexMatrix id_a = identity(da);

  QuantumState rho = cfg.initial_state;
  for (std::size_t k = 0; k < cfg.bobs.size(); ++k) {
    const SequentialBob& bob = cfg.bobs[k];
    require_eta(bob.setting.eta());
    out.bell_values.push_back(bell_value(rho, cfg.alice, bob.triple, bob.setting.eta()));

    std::array<EffectiveObservable, 3> eff;
    const QuantumState& previous = k == 0 ? rho : out.states[k - 1];
    for (std::size_t y = 0; y < 3; ++y) {
      ComplexMatrix m = k == 0 ? bob.triple.matrix(y)
                               : luders_adjoint(bob.triple.matrix(y), cfg.bobs[k - 1].setting,
                                                cfg.bobs[k - 1].triple, cfg.bobs[k - 1].weights);
      const double omega = state_norm(tensor(id_a, m), previous);
      eff[y] = EffectiveObservable{std::move(m), omega};
    }
    out.effective_observables.push_back(std::move(eff));
    out.states.push_back(rho);

    if (k + 1 < cfg.bobs.size()) rho = luders_update(rho, bob.setting, bob.triple, bob.weights);
  }
  return out;
}

std::vector<double> predicted_values(std::span<const double> etas) {
  if (etas.empty()) throw DomainError("predicted_values: need at least one eta");
  std::vector<double> out;
  out.reserve(etas.size());
  double carried = 1.0;
  for (double eta : etas) {
    require_eta(eta);
    out.push_back(6.0 * eta * carried);
    carried *= 0.5 * (1.0 + xi_of(eta));
  }
  return out;
}

double max_fourth_value(double eta1_floor) {
  require_eta(eta1_floor);
  // I^4 is decreasing in each of eta_1..eta_3, so the supremum over
  // eta1_floor <= eta_1 <= eta_2 <= eta_3 sits at the common floor.
  const std::array<double, 4> etas{eta1_floor, eta1_floor, eta1_floor, 1.0};
  return predicted_values(etas)[3];
}

std::optional<FourthValueBound> constrained_fourth_value(double eta1_floor) {
  require_eta(eta1_floor);
  // Lower boundaries: I^1 > 4 at eta_1 = 2/3; I^2 > 4 gives
  // eta_2 > 4 / (3 (1 + xi_1)); I^3 > 4 gives eta_3 > 8 / (3 (1 + xi_1)(1 + xi_2)).
  const double eta1 = std::max(eta1_floor, 2.0 / 3.0);
  const double xi1 = xi_of(eta1);
  const double eta2 = 4.0 / (3.0 * (1.0 + xi1));
  if (eta2 > 1.0) return std::nullopt;
  const double xi2 = xi_of(eta2);
  const double eta3 = 8.0 / (3.0 * (1.0 + xi1) * (1.0 + xi2));
  if (eta3 > 1.0) return std::nullopt;
  const std::array<double, 4> etas{eta1, eta2, eta3, 1.0};
  return FourthValueBound{{eta1, eta2, eta3}, predicted_values(etas)[3]};
}

double BobResiduals::max_residual() const {
  double m = std::max(trine_sum, anticommutator);
  for (const auto& r : {conjugation_total, conjugation_each, proportionality,
                        first_conjugation_each, nested_total, nested_each}) {
    if (r) m = std::max(m, *r);
  }
  return m;
}

double TheoremReport::max_residual() const {
  double m = 0.0;
  for (const auto& b : bobs) m = std::max(m, b.max_residual());
  return m;
}

TheoremReport verify_theorem_conditions(const ChainConfig& cfg) {
  cfg.validate();
  TheoremReport report;
  const int d = cfg.initial_state.dim_b();
  const ComplexMatrix id = identity(d);

  for (std::size_t k = 0; k < cfg.bobs.size(); ++k) {
    const ObservableTriple& bk = cfg.bobs[k].triple;
    BobResiduals r;
    r.index = static_cast<int>(k + 1);
    r.trine_sum = operator_norm(bk.sum());
    for (std::size_t y = 0; y < 3; ++y) {
      for (std::size_t z = y + 1; z < 3; ++z) {
        r.anticommutator = std::max(
            r.anticommutator, operator_norm(anticommutator(bk.matrix(y), bk.matrix(z)) + id));
      }
    }

    if (k >= 1) {
      const ObservableTriple& prev = cfg.bobs[k - 1].triple;
      ComplexMatrix total = ComplexMatrix::Zero(d, d);
      double each = 0.0;
      double prop = 0.0;
      double scale = 1.0;
      for (std::size_t j = 0; j < k; ++j) scale *= 0.5 * (1.0 + cfg.bobs[j].setting.xi());
      for (std::size_t y = 0; y < 3; ++y) {
        const ComplexMatrix c = conjugation_sum(prev, bk.matrix(y));
        total += c;
        each = std::max(each, operator_norm(c));

        ComplexMatrix pulled = bk.matrix(y);
        for (std::size_t j = k; j-- > 0;) {
          pulled = luders_adjoint(pulled, cfg.bobs[j].setting, cfg.bobs[j].triple, cfg.bobs[j].weights);
        }
        prop = std::max(prop, operator_norm(pulled - scale * bk.matrix(y)));
      }
      r.conjugation_total = operator_norm(total);
      r.conjugation_each = each;
      r.proportionality = prop;
    }

    if (k >= 2) {
      const ObservableTriple& first = cfg.bobs[0].triple;
      const ObservableTriple& outer = cfg.bobs[k - 2].triple;
      const ObservableTriple& inner = cfg.bobs[k - 1].triple;
      ComplexMatrix total = ComplexMatrix::Zero(d, d);
      double each = 0.0;
      double first_each = 0.0;
      for (std::size_t y = 0; y < 3; ++y) {
        const ComplexMatrix nested = conjugation_sum(outer, conjugation_sum(inner, bk.matrix(y)));
        total += nested;
        each = std::max(each, operator_norm(nested));
        first_each = std::max(first_each, operator_norm(conjugation_sum(first, bk.matrix(y))));
      }
      r.nested_total = operator_norm(total);
      r.nested_each = each;
      r.first_conjugation_each = first_each;
    }
    report.bobs.push_back(r);
  }
  return report;
}

double CorrelationIdentityReport::max_residual() const {
  return std::max({commutators, traces, product});
}

CorrelationIdentityReport verify_correlation_identities(const QuantumState& rho,
                                                        const ObservableTriple& alice,
                                                        const ObservableTriple& bob) {
  const auto c = correlation_operators(alice, bob, rho);
  CorrelationIdentityReport r;
  for (std::size_t i = 0; i < 3; ++i) {
    r.traces = std::max(r.traces, std::abs(expectation(c[i], rho.matrix()) - 1.0));
    for (std::size_t j = i + 1; j < 3; ++j) {
      r.commutators = std::max(r.commutators, operator_norm(commutator(c[i], c[j])));
    }
  }
  r.product = operator_norm(c[2] - c[1] * c[0]);
  return r;
}

}  // namespace seqbell

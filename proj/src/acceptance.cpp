#include "seqbell/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "seqbell/bell.hpp"
#include "seqbell/certification.hpp"
#include "seqbell/chain.hpp"
#include "seqbell/incompatibility.hpp"

namespace seqbell {

namespace {

class Recorder {
 public:
  explicit Recorder(const AcceptanceOptions& opts) : override_(opts.tolerance) {}

  void check(const std::string& label, double measured, double expected, double tol,
             Relation rel = Relation::equal) {
    const double t = override_ ? *override_ : tol;
    bool pass = false;
    switch (rel) {
      case Relation::equal: pass = std::abs(measured - expected) <= t; break;
      case Relation::at_most: pass = measured <= expected + t; break;
      case Relation::at_least: pass = measured >= expected - t; break;
      case Relation::less_than: pass = measured < expected; break;
    }
    if (!std::isfinite(measured)) pass = false;
    current_.checks.push_back({label, measured, expected, t, rel, pass});
  }

  void begin(int id, std::string name) {
    current_ = AcceptanceCriterion{id, std::move(name), {}};
  }
  void end() { done_.push_back(std::move(current_)); }
  std::vector<AcceptanceCriterion> take() { return std::move(done_); }

 private:
  std::optional<double> override_;
  AcceptanceCriterion current_;
  std::vector<AcceptanceCriterion> done_;
};

ComplexMatrix random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = Complex(normal(rng), normal(rng));
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

void optimal_value(Recorder& r) {
  r.begin(1, "optimal quantum value and SOS certificate");
  const auto real = canonical_realization();
  r.check("bell_value(canonical)", bell_value(real.rho, real.alice, real.bob), 6.0, 1e-12);
  const auto sos = sos_diagnose(real.rho, real.alice, real.bob);
  r.check("<gamma>", sos.gamma_value, 0.0, 1e-12, Relation::at_most);
  for (std::size_t y = 0; y < 3; ++y) {
    r.check("omega_" + std::to_string(y + 1), sos.omega[y], 2.0, 1e-12);
  }
  r.end();
}

void local(Recorder& r) {
  r.begin(2, "local bound by 64-assignment enumeration");
  r.check("local_bound", local_bound(), 5.0, 0.0);
  r.end();
}

void pnc(Recorder& r) {
  r.begin(3, "parity-oblivious bound");
  r.check("pnc_bound (vertices)", pnc_bound(), 4.0, 0.0);
  double best = -1e300;
  for (int i = -100; i <= 100; ++i) {
    for (int j = -100; j <= 100; ++j) {
      const int k = -i - j;
      if (k < -100 || k > 100) continue;
      const std::array<double, 3> e{i / 100.0, j / 100.0, k / 100.0};
      for (unsigned mask = 0; mask < 8; ++mask) {
        std::array<double, 3> b{};
        for (int t = 0; t < 3; ++t) b[t] = (mask >> t) & 1u ? -1.0 : 1.0;
        best = std::max(best, bell_functional(e, b));
      }
    }
  }
  r.check("pnc grid maximum (step 0.01)", best, 4.0, 1e-9);
  r.end();
}

void closed_forms(Recorder& r) {
  r.begin(4, "sequential closed forms on a 20x20x20 grid");
  double worst = 0.0;
  for (int a = 1; a <= 20; ++a) {
    for (int b = 1; b <= 20; ++b) {
      for (int c = 1; c <= 20; ++c) {
        const std::array<double, 3> etas{0.05 * a, 0.05 * b, 0.05 * c};
        const auto sim = run_chain(canonical_chain(etas)).bell_values;
        const auto closed = predicted_values(etas);
        for (std::size_t k = 0; k < 3; ++k) worst = std::max(worst, std::abs(sim[k] - closed[k]));
      }
    }
  }
  r.check("max |simulated - closed form|", worst, 0.0, 1e-9, Relation::at_most);
  r.end();
}

void black_point(Recorder& r) {
  r.begin(5, "black point inversion");
  const double v = 120.0 / 29.0;
  const auto cert = invert_tuple({v, v, v});
  r.check("eta1", cert.eta1, 20.0 / 29.0, 1e-12);
  r.check("eta2", cert.eta2, 0.8, 1e-12);
  r.end();
}

void fourth_observer(Recorder& r) {
  r.begin(6, "fourth-observer ceiling");
  const double expected = 0.75 * std::pow(1.0 + std::sqrt(5.0) / 3.0, 3);
  const double value = max_fourth_value();
  r.check("max_fourth_value", value, expected, 1e-9);
  r.check("max_fourth_value < 4", value, 4.0, 0.0, Relation::less_than);
  double best = 0.0;
  const int n = 200;
  for (int a = 1; a <= n; ++a) {
    const double e1 = static_cast<double>(a) / n;
    const double x1 = std::sqrt(1.0 - e1 * e1);
    if (!(6.0 * e1 > 4.0)) continue;
    for (int b = 1; b <= n; ++b) {
      const double e2 = static_cast<double>(b) / n;
      const double x2 = std::sqrt(1.0 - e2 * e2);
      if (!(3.0 * e2 * (1.0 + x1) > 4.0)) continue;
      for (int c = 1; c <= n; ++c) {
        const double e3 = static_cast<double>(c) / n;
        const double x3 = std::sqrt(1.0 - e3 * e3);
        if (!(1.5 * e3 * (1.0 + x1) * (1.0 + x2) > 4.0)) continue;
        best = std::max(best, 0.75 * (1.0 + x1) * (1.0 + x2) * (1.0 + x3));
      }
    }
  }
  r.check("feasible grid maximum of I4", best, value, 1e-9, Relation::at_most);
  r.end();
}

void robust_ranges(Recorder& r) {
  r.begin(7, "robust ranges");
  const double s5 = std::sqrt(5.0);
  const auto one = certify_ranges({true, false, false});
  const auto two = certify_ranges({true, true, false});
  const auto all = certify_ranges({true, true, true});
  r.check("eta1 lower", one.eta1.lo, 2.0 / 3.0, 1e-12);
  r.check("eta1 upper, two violations", two.eta1.hi, 2.0 * std::sqrt(2.0) / 3.0, 1e-12);
  r.check("eta1 upper, three violations", all.eta1.hi, s5 / 3.0, 1e-12);
  r.check("eta2 lower", all.eta2_quoted->lo, 3.0 - s5, 1e-12);
  r.check("eta2 upper (quoted)", all.eta2_quoted->hi, 0.8, 1e-12);
  r.check("eta3 minimum", all.eta3->lo, 0.5 * (3.0 + s5 - std::sqrt(6.0 * s5 - 2.0)), 1e-12);
  r.end();
}

void ceilings(Recorder& r) {
  r.begin(8, "incompatibility ceilings");
  r.check("D(sx, sz)", degree_pair(pauli_x(), pauli_z()).degree, 2.0 * std::sqrt(2.0) - 2.0, 1e-12);
  r.check("D(sx, sy, sz)", degree_triple({pauli_x(), pauli_y(), pauli_z()}).degree,
          4.0 * std::sqrt(3.0) - 4.0, 1e-12);
  r.check("D_T(canonical trine)", degree_trine(canonical_bob()).degree, 2.0, 1e-12);
  r.end();
}

void equal_locus(Recorder& r) {
  r.begin(9, "equal-incompatibility locus");
  const auto p = equal_incompatibility_point(1.0);
  r.check("eta1(1)", p.eta1, 20.0 / 29.0, 1e-12);
  r.check("eta2(1)", p.eta2, 0.8, 1e-12);
  r.check("common value(1)", p.bell_value, 120.0 / 29.0, 1e-12);
  const double lo = eta3_floor();
  double spread = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double eta3 = lo + (1.0 - lo) * i / 9.0;
    const auto q = equal_incompatibility_point(eta3);
    const std::array<double, 3> etas{q.eta1, q.eta2, eta3};
    const auto v = predicted_values(etas);
    spread = std::max({spread, std::abs(v[0] - v[1]), std::abs(v[1] - v[2]),
                       std::abs(v[0] - q.bell_value)});
  }
  r.check("max spread over 10 sampled eta3", spread, 0.0, 1e-12, Relation::at_most);
  r.end();
}

void identities(Recorder& r) {
  r.begin(10, "operator identities on the canonical realization");
  const auto real = canonical_realization();
  const auto c = verify_correlation_identities(real.rho, real.alice, real.bob);
  r.check("commutators of C_i (x) C_i", c.commutators, 0.0, 1e-12, Relation::at_most);
  r.check("|Tr[(C_i (x) C_i) rho] - 1|", c.traces, 0.0, 1e-12, Relation::at_most);
  r.check("C3 - C2 C1", c.product, 0.0, 1e-12, Relation::at_most);
  const std::array<double, 3> etas{20.0 / 29.0, 0.8, 1.0};
  const auto rep = verify_theorem_conditions(canonical_chain(etas));
  double trine = 0.0, conj = 0.0, nested = 0.0, prop = 0.0;
  for (const auto& b : rep.bobs) {
    trine = std::max(trine, b.trine_sum);
    if (b.conjugation_total) conj = std::max({conj, *b.conjugation_total, *b.conjugation_each});
    if (b.proportionality) prop = std::max(prop, *b.proportionality);
    if (b.nested_total) {
      nested = std::max({nested, *b.nested_total, *b.nested_each, *b.first_conjugation_each});
    }
  }
  r.check("sum_y B_y", trine, 0.0, 1e-12, Relation::at_most);
  r.check("sum_y' B_y' B_y B_y'", conj, 0.0, 1e-12, Relation::at_most);
  r.check("nested double conjugation sums", nested, 0.0, 1e-12, Relation::at_most);
  r.check("pulled-back proportionality", prop, 0.0, 1e-12, Relation::at_most);
  r.end();
}

void properties(Recorder& r, const AcceptanceOptions& opts) {
  r.begin(11, "property suite");
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto bob = canonical_bob();
  const auto alice = canonical_alice();

  double trace_err = 0.0, linearity = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const QuantumState rho(random_density(4, rng), 2, 2);
    const UnsharpSetting s(unit(rng));
    const auto out = luders_update(rho, s, bob);
    trace_err = std::max(trace_err, std::abs(out.matrix().trace().real() - 1.0));
    min_eig = std::min(min_eig, min_eigenvalue(out.matrix()));
    const double eta = 1.0 - unit(rng);
    linearity = std::max(linearity, std::abs(bell_value(rho, alice, bob, eta) -
                                             eta * bell_value(rho, alice, bob, 1.0)));
  }
  r.check("channel trace error", trace_err, 0.0, 1e-12, Relation::at_most);
  r.check("channel output min eigenvalue", min_eig, 0.0, 1e-12, Relation::at_least);
  r.check("eta-linearity of bell_value", linearity, 0.0, 1e-12, Relation::at_most);

  // Largest increase of I^2 when eta_1 grows, over a 20x20 grid (negative = strictly decreasing).
  double worst_step = -1e300;
  for (int b = 1; b <= 20; ++b) {
    double previous = 0.0;
    for (int a = 1; a <= 20; ++a) {
      const std::array<double, 2> etas{0.05 * a, 0.05 * b};
      const double i2 = run_chain(canonical_chain(etas)).bell_values[1];
      if (a > 1) worst_step = std::max(worst_step, i2 - previous);
      previous = i2;
    }
  }
  r.check("max step of I2 as eta1 grows", worst_step, 0.0, 0.0, Relation::less_than);

  SeesawOptions so;
  so.restarts = 50;
  so.seed = opts.seed;
  so.threads = opts.threads;
  so.dim = 2;
  const double d2 = seesaw(so).value;
  so.dim = 3;
  const double d3 = seesaw(so).value;
  r.check("see-saw d=2 reaches optimum", d2, 6.0, 1e-6, Relation::at_least);
  r.check("see-saw d=2 below optimum", d2, 6.0, 1e-6, Relation::at_most);
  r.check("see-saw d=3 below optimum", d3, 6.0, 1e-6, Relation::at_most);
  r.end();
}

}  // namespace

bool AcceptanceCriterion::pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::equal: return "==";
    case Relation::at_most: return "<=";
    case Relation::less_than: return "<";
    case Relation::at_least: return ">=";
  }
  return "?";
}

std::vector<AcceptanceCriterion> run_acceptance(const AcceptanceOptions& opts) {
  Recorder r(opts);
  optimal_value(r);
  local(r);
  pnc(r);
  closed_forms(r);
  black_point(r);
  fourth_observer(r);
  robust_ranges(r);
  ceilings(r);
  equal_locus(r);
  identities(r);
  properties(r, opts);
  return r.take();
}

}  // namespace seqbell

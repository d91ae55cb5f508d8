#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "seqbell/acceptance.hpp"
#include "seqbell/bell.hpp"
#include "seqbell/certification.hpp"
#include "seqbell/chain.hpp"
#include "seqbell/incompatibility.hpp"
#include "seqbell/parallel.hpp"
#include "seqbell/scenario.hpp"

using nlohmann::json;
using namespace seqbell;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Manifest {
  std::string config;
  std::string out;
  double tolerance = 0.0;  // 0 = use the stated tolerances
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = SEQBELL_THREADS or 1
  double step = 0.0;
  std::optional<double> eta1, eta2, eta3;
  std::optional<double> i1, i2, i3;
  std::string mode = "trine";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SEQBELL_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw UsageError("SEQBELL_THREADS must be a positive integer");
  }
  return 1;
}

std::string g17(double x) { return fmt::format("{:.17g}", x); }

void emit(const Manifest& m, const std::string& text) {
  if (m.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(m.out);
  if (!out) throw std::runtime_error("cannot write " + m.out);
  out << text;
}

void emit_json(const Manifest& m, const json& j) { emit(m, j.dump(2) + "\n"); }

json interval_json(const Interval& iv) {
  return {{"lo", iv.lo},
          {"hi", iv.hi},
          {"lo_open", iv.lo_open},
          {"hi_open", iv.hi_open},
          {"lo_expr", iv.lo_expr},
          {"hi_expr", iv.hi_expr},
          {"notation", iv.str()}};
}

std::vector<double> etas_or(const Manifest& m, std::vector<double> fallback) {
  std::vector<double> etas;
  for (const auto& e : {m.eta1, m.eta2, m.eta3}) {
    if (!e) break;
    etas.push_back(*e);
  }
  return etas.empty() ? fallback : etas;
}

ChainConfig chain_from(const Manifest& m) {
  if (!m.config.empty()) return load_scenario(m.config);
  const auto etas = etas_or(m, {20.0 / 29.0, 0.8, 1.0});
  return canonical_chain(etas);
}

int cmd_bounds(const Manifest& m) {
  json seesaw_rows = json::array();
  for (int d : {2, 3}) {
    SeesawOptions opts;
    opts.dim = d;
    opts.seed = m.seed;
    opts.threads = resolve_threads(m.threads);
    const auto r = seesaw(opts);
    seesaw_rows.push_back({{"dim", d},
                           {"value", r.value},
                           {"converged", r.converged},
                           {"best_restart", r.best_restart},
                           {"restarts", opts.restarts}});
  }
  emit_json(m, {{"local", local_bound()},
                {"pnc", pnc_bound()},
                {"quantum_optimum", kQuantumOptimum},
                {"seesaw", seesaw_rows}});
  return kExitOk;
}

int cmd_chain(const Manifest& m) {
  const auto cfg = chain_from(m);
  json j = to_json(run_chain(cfg));
  j["max_chain_length"] = kMaxChainLength;
  emit_json(m, j);
  return kExitOk;
}

int cmd_sweep(const Manifest& m) {
  const double step = m.step > 0.0 ? m.step : 0.05;
  if (step > 0.5) throw UsageError("--step must lie in (0, 0.5]");
  std::vector<double> grid;
  for (long n = 1; static_cast<double>(n) * step <= 1.0 + 1e-12; ++n) {
    grid.push_back(std::min(1.0, static_cast<double>(n) * step));
  }
  std::vector<std::string> blocks(grid.size());
  parallel_for(grid.size(), resolve_threads(m.threads), [&](std::size_t a) {
    std::string block;
    for (double e2 : grid) {
      for (double e3 : grid) {
        const std::array<double, 4> etas{grid[a], e2, e3, 1.0};
        const auto v = run_chain(canonical_chain(etas)).bell_values;
        block += fmt::format("{},{},{},{},{},{},{}\n", g17(grid[a]), g17(e2), g17(e3), g17(v[0]),
                             g17(v[1]), g17(v[2]), g17(v[3]));
      }
    }
    blocks[a] = std::move(block);
  });
  std::string csv = "eta1,eta2,eta3,I1,I2,I3,I4\n";
  for (const auto& b : blocks) csv += b;
  emit(m, csv);
  return kExitOk;
}

int cmd_certify(const Manifest& m) {
  if (!m.i1 || !m.i2 || !m.i3) throw UsageError("certify needs --i1, --i2 and --i3");
  const auto r = invert_tuple({*m.i1, *m.i2, *m.i3});
  emit_json(m, {{"eta1", r.eta1},
                {"eta2", r.eta2},
                {"eta3_min", r.eta3_min},
                {"eta1_interval", interval_json(r.eta1_interval)},
                {"eta2_interval", interval_json(r.eta2_interval)},
                {"eta2_interval_quoted", interval_json(r.eta2_interval_quoted)},
                {"violations", r.violations},
                {"consistent", r.status == TupleStatus::consistent},
                {"manifold_distance", r.manifold_distance},
                {"valid", r.valid}});
  return kExitOk;
}

int cmd_surface(const Manifest& m) {
  const auto rows = surface_sweep(m.step > 0.0 ? m.step : 0.01, resolve_threads(m.threads));
  std::string csv = "I1,I2,I3_exact,I3_paraboloid,abs_error\n";
  for (const auto& r : rows) {
    csv += fmt::format("{},{},{},{},{}\n", g17(r.i1), g17(r.i2), g17(r.i3_exact),
                       g17(r.i3_paraboloid), g17(std::abs(r.i3_exact - r.i3_paraboloid)));
  }
  emit(m, csv);
  return kExitOk;
}

json report_json(const IncompatibilityReport& r) {
  json j{{"kind", to_string(r.kind)}, {"degree", r.degree}, {"incompatible", r.incompatible}};
  if (r.lower_bound_from_bell) j["lower_bound_from_bell"] = *r.lower_bound_from_bell;
  return j;
}

std::vector<ComplexMatrix> observables_from_config(const Manifest& m) {
  std::ifstream in(m.config);
  if (!in) throw std::runtime_error("cannot open " + m.config);
  json j;
  in >> j;
  std::vector<ComplexMatrix> out;
  for (const auto& e : j.at("observables")) out.push_back(matrix_from_json(e));
  return out;
}

int cmd_incompat(const Manifest& m) {
  const double tol = m.tolerance > 0.0 ? m.tolerance : kDefaultTol;
  if (m.mode == "pair" || m.mode == "triple" || m.mode == "trine") {
    std::vector<ComplexMatrix> obs;
    if (!m.config.empty()) {
      obs = observables_from_config(m);
    } else if (m.mode == "pair") {
      obs = {pauli_x(), pauli_z()};
    } else if (m.mode == "triple") {
      obs = {pauli_x(), pauli_y(), pauli_z()};
    } else {
      const auto b = canonical_bob().matrices();
      obs.assign(b.begin(), b.end());
    }
    const std::size_t need = m.mode == "pair" ? 2 : 3;
    if (obs.size() != need) throw UsageError(fmt::format("--mode {} needs {} observables", m.mode, need));
    IncompatibilityReport r;
    if (m.mode == "pair") {
      r = degree_pair(DichotomicObservable(obs[0]), DichotomicObservable(obs[1]), tol);
    } else if (m.mode == "triple") {
      r = degree_triple(ObservableTriple::from_matrices({obs[0], obs[1], obs[2]}), tol);
    } else {
      r = degree_trine(ObservableTriple::from_matrices({obs[0], obs[1], obs[2]}), tol);
    }
    emit_json(m, report_json(r));
    return kExitOk;
  }

  if (m.mode == "sequential") {
    const double eta3 = m.eta3.value_or(1.0);
    const auto ref = equal_incompatibility_point(eta3);
    const std::array<double, 3> ref_etas{ref.eta1, ref.eta2, eta3};
    const double step = m.step > 0.0 ? m.step : 0.05;
    if (step > 0.5) throw UsageError("--step must lie in (0, 0.5]");
    std::string csv = "eta1,eta2,eta3,I1,I2,I3,DT1,DT2,DT3\n";
    for (long a = 1; static_cast<double>(a) * step <= 1.0 + 1e-12; ++a) {
      for (long b = 1; static_cast<double>(b) * step <= 1.0 + 1e-12; ++b) {
        const std::array<double, 3> etas{std::min(1.0, a * step), std::min(1.0, b * step), eta3};
        const auto v = predicted_values(etas);
        const auto d = sequential_trine_bounds({v[0], v[1], v[2]}, ref_etas, tol);
        csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", g17(etas[0]), g17(etas[1]), g17(eta3),
                           g17(v[0]), g17(v[1]), g17(v[2]), g17(d[0].lower_bound),
                           g17(d[1].lower_bound), g17(d[2].lower_bound));
      }
    }
    emit(m, csv);
    return kExitOk;
  }

  if (m.mode == "chsh") {
    const auto r = chsh_baseline(m.eta1.value_or(0.8), m.eta2.value_or(1.0));
    emit_json(m, {{"eta1", r.eta1},
                  {"eta2", r.eta2},
                  {"C1", r.c1},
                  {"C2", r.c2},
                  {"C1_closed_form", r.c1_closed},
                  {"C2_closed_form", r.c2_closed},
                  {"bob1_lower_bound", r.bound1},
                  {"bob2_lower_bound", r.bound2},
                  {"eta1_window", {r.window_lo, r.window_hi}},
                  {"eta1_in_window", r.in_window}});
    return kExitOk;
  }
  throw UsageError("unknown --mode " + m.mode);
}

int cmd_verify(const Manifest& m) {
  const double tol = m.tolerance > 0.0 ? m.tolerance : 1e-12;
  const auto cfg = chain_from(m);
  const auto rep = verify_theorem_conditions(cfg);
  json bobs = json::array();
  for (const auto& b : rep.bobs) {
    json j{{"index", b.index}, {"trine_sum", b.trine_sum}, {"anticommutator", b.anticommutator}};
    auto put = [&](const char* key, const std::optional<double>& v) {
      if (v) j[key] = *v;
    };
    put("conjugation_total", b.conjugation_total);
    put("conjugation_each", b.conjugation_each);
    put("proportionality", b.proportionality);
    put("first_conjugation_each", b.first_conjugation_each);
    put("nested_total", b.nested_total);
    put("nested_each", b.nested_each);
    bobs.push_back(std::move(j));
  }
  const auto ids = verify_correlation_identities(cfg.initial_state, cfg.alice, cfg.bobs.front().triple);
  const double worst = std::max(rep.max_residual(), ids.max_residual());
  emit_json(m, {{"bobs", bobs},
                {"correlation_identities",
                 {{"commutators", ids.commutators}, {"traces", ids.traces}, {"product", ids.product}}},
                {"max_residual", worst},
                {"tolerance", tol},
                {"pass", worst <= tol}});
  return worst <= tol ? kExitOk : kExitFailure;
}

int cmd_reproduce(const Manifest& m) {
  AcceptanceOptions opts;
  if (m.tolerance > 0.0) opts.tolerance = m.tolerance;
  opts.seed = m.seed;
  opts.threads = resolve_threads(m.threads);
  const auto results = run_acceptance(opts);

  bool all = true;
  std::ostringstream table;
  json rows = json::array();
  for (const auto& c : results) {
    all = all && c.pass();
    table << fmt::format("[{}] {:>2} {}\n", c.pass() ? "PASS" : "FAIL", c.id, c.name);
    for (const auto& k : c.checks) {
      table << fmt::format("       {:<4} {:<40} measured {:<24} {} expected {:<24} tol {:g}\n",
                           k.pass ? "ok" : "FAIL", k.label, g17(k.measured), to_string(k.relation),
                           g17(k.expected), k.tol);
      rows.push_back({{"criterion", c.id},
                      {"name", c.name},
                      {"check", k.label},
                      {"measured", k.measured},
                      {"expected", k.expected},
                      {"relation", to_string(k.relation)},
                      {"tolerance", k.tol},
                      {"pass", k.pass}});
    }
  }
  std::cout << table.str() << (all ? "all criteria passed\n" : "some criteria FAILED\n");
  if (!m.out.empty()) emit_json(m, {{"pass", all}, {"checks", rows}});
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential Bell / preparation-contextuality toolkit"};
  app.require_subcommand(1);
  Manifest m;

  app.add_option("--config", m.config, "Scenario or observable JSON file");
  app.add_option("--out", m.out, "Output file (default: stdout)");
  app.add_option("--tolerance", m.tolerance, "Override tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", m.seed, "RNG seed");
  app.add_option("--threads", m.threads, "Worker threads (default: $SEQBELL_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--step", m.step, "Grid step for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--eta1", m.eta1, "Unsharpness of Bob 1");
  app.add_option("--eta2", m.eta2, "Unsharpness of Bob 2");
  app.add_option("--eta3", m.eta3, "Unsharpness of Bob 3");
  app.add_option("--i1", m.i1, "Observed Bell value of Bob 1");
  app.add_option("--i2", m.i2, "Observed Bell value of Bob 2");
  app.add_option("--i3", m.i3, "Observed Bell value of Bob 3");
  app.fallthrough();

  auto* bounds = app.add_subcommand("bounds", "Local, noncontextual and see-saw quantum bounds");
  auto* chain = app.add_subcommand("chain", "Simulate a sequential chain");
  auto* sweep = app.add_subcommand("sweep", "CSV of I1..I4 over an eta grid");
  auto* certify = app.add_subcommand("certify", "Invert an observed Bell tuple");
  auto* surface = app.add_subcommand("surface", "CSV of the I3(I1, I2) trade-off surface");
  auto* incompat = app.add_subcommand("incompat", "Degrees of incompatibility");
  incompat->add_option("--mode", m.mode, "pair|triple|trine|sequential|chsh")
      ->check(CLI::IsMember({"pair", "triple", "trine", "sequential", "chsh"}));
  auto* verify = app.add_subcommand("verify", "Operator residuals of the chain conditions");
  auto* reproduce = app.add_subcommand("reproduce", "Run every acceptance check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*bounds) return cmd_bounds(m);
    if (*chain) return cmd_chain(m);
    if (*sweep) return cmd_sweep(m);
    if (*certify) return cmd_certify(m);
    if (*surface) return cmd_surface(m);
    if (*incompat) return cmd_incompat(m);
    if (*verify) return cmd_verify(m);
    if (*reproduce) return cmd_reproduce(m);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // Invalid input values (dimension, domain) are reported as usage errors.
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

#include "seqbell/bell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "seqbell/parallel.hpp"

namespace seqbell {

namespace {

// coefficient[y][x] of A_x in the combination paired with B_y.
constexpr int kCoefficient[3][3] = {{1, 1, -1}, {1, -1, 1}, {-1, 1, 1}};

using Triple = std::array<ComplexMatrix, 3>;

std::array<ComplexMatrix, 3> combinations(const Triple& a) {
  return {a[0] + a[1] - a[2], a[0] - a[1] + a[2], -a[0] + a[1] + a[2]};
}

ComplexMatrix bell_operator_raw(const Triple& a, const Triple& b) {
  const auto s = combinations(a);
  ComplexMatrix op = tensor(s[0], b[0]);
  op += tensor(s[1], b[1]);
  op += tensor(s[2], b[2]);
  return op;
}

}  // namespace

ComplexMatrix bell_operator(const ObservableTriple& alice, const ObservableTriple& bob) {
  return bell_operator_raw(alice.matrices(), bob.matrices());
}

double bell_value(const QuantumState& rho, const ObservableTriple& alice,
                  const ObservableTriple& bob, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("bell_value: eta must lie in (0, 1]");
  if (rho.dim_a() != alice.dim() || rho.dim_b() != bob.dim()) {
    throw DimensionError("bell_value: state dims do not match the observables");
  }
  return eta * expectation(bell_operator(alice, bob), rho.matrix());
}

double bell_functional(const std::array<double, 3>& alice, const std::array<double, 3>& bob) {
  double total = 0.0;
  for (int y = 0; y < 3; ++y) {
    double s = 0.0;
    for (int x = 0; x < 3; ++x) s += kCoefficient[y][x] * alice[x];
    total += s * bob[y];
  }
  return total;
}

double local_bound() {
  double best = -std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::array<double, 3> a{}, b{};
    for (int i = 0; i < 3; ++i) {
      a[i] = (mask >> i) & 1u ? -1.0 : 1.0;
      b[i] = (mask >> (i + 3)) & 1u ? -1.0 : 1.0;
    }
    best = std::max(best, bell_functional(a, b));
  }
  return best;
}

std::array<std::array<double, 3>, 7> parity_oblivious_vertices() {
  return {{{1, -1, 0}, {1, 0, -1}, {0, 1, -1}, {-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}, {0, 0, 0}}};
}

double pnc_bound() {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& e : parity_oblivious_vertices()) {
    for (unsigned mask = 0; mask < 8; ++mask) {
      std::array<double, 3> b{};
      for (int i = 0; i < 3; ++i) b[i] = (mask >> i) & 1u ? -1.0 : 1.0;
      best = std::max(best, bell_functional(e, b));
    }
  }
  return best;
}

SosDecomposition sos_diagnose(const QuantumState& rho, const ObservableTriple& alice,
                              const ObservableTriple& bob) {
  if (rho.dim_a() != alice.dim() || rho.dim_b() != bob.dim()) {
    throw DimensionError("sos_diagnose: state dims do not match the observables");
  }
  const int da = alice.dim();
  const int db = bob.dim();
  const ComplexMatrix id_a = identity(da);
  const ComplexMatrix id_b = identity(db);
  const auto s = alice_combinations(alice);

  SosDecomposition out;
  ComplexMatrix gamma = ComplexMatrix::Zero(da * db, da * db);
  for (std::size_t y = 0; y < 3; ++y) {
    const ComplexMatrix lifted_s = tensor(s[y], id_b);
    const double omega = state_norm(lifted_s, rho);
    const ComplexMatrix bob_side = tensor(id_a, bob.matrix(y));
    if (omega <= kDefaultTol) {
      out.singular = true;
      out.omega[y] = 0.0;
      out.script_a[y] = ComplexMatrix::Zero(da, da);
      out.l_residuals[y] = -expectation(bob_side, rho.matrix());
      continue;
    }
    out.omega[y] = omega;
    out.script_a[y] = s[y] / omega;
    const ComplexMatrix l = tensor(out.script_a[y], id_b) - bob_side;
    out.l_residuals[y] = expectation(l, rho.matrix());
    gamma += 0.5 * omega * (l.adjoint() * l);
  }
  out.gamma_value = expectation(gamma, rho.matrix());
  return out;
}

double parity_oblivious_residual(const QuantumState& rho, const ObservableTriple& alice) {
  if (rho.dim_a() != alice.dim()) throw DimensionError("parity_oblivious_residual: dim mismatch");
  const int da = rho.dim_a();
  const int db = rho.dim_b();
  const ComplexMatrix id_a = identity(da);
  const ComplexMatrix id_b = identity(db);
  ComplexMatrix diff = ComplexMatrix::Zero(db, db);
  for (std::size_t x = 0; x < 3; ++x) {
    const ComplexMatrix plus = 0.5 * (id_a + alice.matrix(x));
    const ComplexMatrix minus = 0.5 * (id_a - alice.matrix(x));
    diff += partial_trace_a(rho.matrix() * tensor(plus, id_b), da, db);
    diff -= partial_trace_a(rho.matrix() * tensor(minus, id_b), da, db);
  }
  return (diff / 3.0).cwiseAbs().maxCoeff();
}

namespace {

ComplexMatrix random_dichotomic(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(d, d);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = Complex(normal(rng), normal(rng));
  return spectral_sign(g + g.adjoint());
}

ComplexVector random_pure_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v.normalized();
}

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  bool converged = true;
  Triple alice;
  Triple bob;
  ComplexVector state;
};

std::mt19937_64 restart_rng(std::uint64_t seed, std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), static_cast<std::uint32_t>(restart >> 32)};
  return std::mt19937_64(seq);
}

std::pair<double, ComplexVector> top_eigenpair(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (hermitian + hermitian.adjoint()));
  if (solver.info() != Eigen::Success) throw NumericalError("seesaw: eigensolver failed");
  const auto last = solver.eigenvalues().size() - 1;
  return {solver.eigenvalues()(last), solver.eigenvectors().col(last)};
}

Candidate run_restart(const SeesawOptions& opts, std::mt19937_64 rng) {
  const int d = opts.dim;
  Candidate c;
  for (int i = 0; i < 3; ++i) c.alice[i] = random_dichotomic(d, rng);
  for (int i = 0; i < 3; ++i) c.bob[i] = random_dichotomic(d, rng);

  auto [value, state] = top_eigenpair(bell_operator_raw(c.alice, c.bob));
  c.converged = false;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const ComplexMatrix rho = state * state.adjoint();

    // Alice: A_x <- sign(Tr_B[(1 (x) K_x) rho]), K_x = sum_y c[y][x] B_y.
    for (int x = 0; x < 3; ++x) {
      ComplexMatrix k = ComplexMatrix::Zero(d, d);
      for (int y = 0; y < 3; ++y) k += static_cast<double>(kCoefficient[y][x]) * c.bob[y];
      const ComplexMatrix eff = partial_trace_b(tensor(identity(d), k) * rho, d, d);
      c.alice[x] = spectral_sign(0.5 * (eff + eff.adjoint()));
    }
    // Bob: B_y <- sign(Tr_A[(S_y (x) 1) rho]).
    const auto s = combinations(c.alice);
    for (int y = 0; y < 3; ++y) {
      const ComplexMatrix eff = partial_trace_a(tensor(s[y], identity(d)) * rho, d, d);
      c.bob[y] = spectral_sign(0.5 * (eff + eff.adjoint()));
    }

    auto [next_value, next_state] = top_eigenpair(bell_operator_raw(c.alice, c.bob));
    const double gain = next_value - value;
    value = next_value;
    state = std::move(next_state);
    if (gain < opts.tolerance) {
      c.converged = true;
      break;
    }
  }
  c.value = value;
  c.state = std::move(state);
  return c;
}

}  // namespace

SeesawResult seesaw(const SeesawOptions& opts) {
  if (opts.dim < 2 || opts.dim > 8) throw DomainError("seesaw: dimension must lie in [2, 8]");
  if (opts.restarts < 0) throw DomainError("seesaw: restarts must be non-negative");

  SeesawResult result;
  if (opts.restarts == 0) {
    auto rng = restart_rng(opts.seed, 0);
    for (int i = 0; i < 3; ++i) result.alice[i] = random_dichotomic(opts.dim, rng);
    for (int i = 0; i < 3; ++i) result.bob[i] = random_dichotomic(opts.dim, rng);
    result.state = random_pure_state(opts.dim * opts.dim, rng);
    const ComplexMatrix op = bell_operator_raw(result.alice, result.bob);
    result.value = (result.state.adjoint() * op * result.state)(0, 0).real();
    return result;
  }

  std::vector<Candidate> runs(static_cast<std::size_t>(opts.restarts));
  parallel_for(runs.size(), opts.threads, [&](std::size_t i) {
    runs[i] = run_restart(opts, restart_rng(opts.seed, i));
  });

  // Ties resolve to the lowest restart index so results are thread-count independent.
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].value > runs[best].value) best = i;
  }
  result.value = runs[best].value;
  result.converged = runs[best].converged;
  result.best_restart = static_cast<int>(best);
  result.alice = runs[best].alice;
  result.bob = runs[best].bob;
  result.state = runs[best].state;
  return result;
}

double seesaw_max(int dim, int restarts, std::uint64_t seed) {
  SeesawOptions opts;
  opts.dim = dim;
  opts.restarts = restarts;
  opts.seed = seed;
  return seesaw(opts).value;
}

}  // namespace seqbell

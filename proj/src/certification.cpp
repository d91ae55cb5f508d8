#include "seqbell/certification.hpp"

#include <cmath>
#include <sstream>

#include "seqbell/linalg.hpp"
#include "seqbell/parallel.hpp"

namespace seqbell {

namespace {

constexpr double kTupleTol = 1e-9;

double xi_of(double eta) { return std::sqrt(std::max(0.0, 1.0 - eta * eta)); }

Interval make_interval(double lo, const char* lo_expr, bool lo_open, double hi, const char* hi_expr,
                       bool hi_open) {
  return Interval{lo, hi, lo_open, hi_open, lo_expr, hi_expr};
}

Interval quoted_eta2() {
  return make_interval(3.0 - std::sqrt(5.0), "3-sqrt5", true, 0.8, "4/5", true);
}

}  // namespace

std::array<bool, 3> BellTuple::violations() const {
  return {i1 > 4.0, i2 > 4.0, i3 > 4.0};
}

bool Interval::contains(double x, double tol) const {
  const bool above = lo_open ? x > lo - tol : x >= lo - tol;
  const bool below = hi_open ? x < hi + tol : x <= hi + tol;
  return above && below;
}

std::string Interval::str() const {
  std::ostringstream os;
  os << (lo_open ? '(' : '[') << lo_expr << ", " << hi_expr << (hi_open ? ')' : ']');
  return os.str();
}

double eta3_floor() {
  return 0.5 * (3.0 + std::sqrt(5.0) - std::sqrt(6.0 * std::sqrt(5.0) - 2.0));
}

double eta2_lower(double eta1) { return 4.0 / (3.0 * (1.0 + xi_of(eta1))); }

double eta2_upper(double eta1) {
  const double xi1 = xi_of(eta1);
  const double radicand = 3.0 * xi1 - 1.0;
  if (radicand <= 0.0) return 0.0;
  return 4.0 * std::sqrt(radicand) / (3.0 * (1.0 + xi1));
}

double eta3_lower(double eta1, double eta2) {
  return 8.0 / (3.0 * (1.0 + xi_of(eta1)) * (1.0 + xi_of(eta2)));
}

CertificationResult invert_tuple(const BellTuple& t) {
  if (!std::isfinite(t.i1) || !std::isfinite(t.i2) || !std::isfinite(t.i3)) {
    throw DomainError("invert_tuple: non-finite Bell value");
  }
  if (!(t.i1 > 0.0) || t.i1 > 6.0 + kTupleTol) {
    throw DomainError("invert_tuple: infeasible tuple, I1 must lie in (0, 6]");
  }

  CertificationResult r;
  r.violations = t.violations();
  r.eta1 = t.i1 / 6.0;
  const double xi1 = xi_of(r.eta1);

  const double i2_ceiling = 3.0 * (1.0 + xi1);
  r.eta2 = t.i2 / i2_ceiling;
  if (t.i2 > i2_ceiling + kTupleTol) {
    r.status = TupleStatus::inconsistent;
    r.manifold_distance += t.i2 - i2_ceiling;
  }
  const double xi2 = xi_of(r.eta2);
  const double i3_ceiling = 1.5 * (1.0 + xi1) * (1.0 + xi2);
  r.eta3_min = t.i3 / i3_ceiling;
  if (t.i3 > i3_ceiling + kTupleTol) {
    r.status = TupleStatus::inconsistent;
    r.manifold_distance += t.i3 - i3_ceiling;
  }

  const auto& v = r.violations;
  if (!v[0]) {
    r.eta1_interval = make_interval(0.0, "0", true, 2.0 / 3.0, "2/3", false);
  } else if (v[1] && v[2]) {
    r.eta1_interval = certify_ranges({true, true, true}).eta1;
  } else if (v[1]) {
    r.eta1_interval = certify_ranges({true, true, false}).eta1;
  } else {
    r.eta1_interval = certify_ranges({true, false, false}).eta1;
  }

  const char* lower_expr = "4/(3(1+sqrt(1-eta1^2)))";
  if (!v[1]) {
    r.eta2_interval = make_interval(0.0, "0", true, eta2_lower(r.eta1), lower_expr, false);
  } else if (v[2]) {
    r.eta2_interval = make_interval(eta2_lower(r.eta1), lower_expr, true, eta2_upper(r.eta1),
                                    "4 sqrt(3 sqrt(1-eta1^2)-1)/(3(1+sqrt(1-eta1^2)))", true);
  } else {
    r.eta2_interval = make_interval(eta2_lower(r.eta1), lower_expr, true, 1.0, "1", false);
  }
  r.eta2_interval_quoted = quoted_eta2();

  auto unit = [](double x) { return x > 0.0 && x <= 1.0 + kTupleTol; };
  r.valid = v[0] && v[1] && v[2] && r.status == TupleStatus::consistent && unit(r.eta1) &&
            unit(r.eta2) && unit(r.eta3_min);
  return r;
}

RangeReport certify_ranges(const std::array<bool, 3>& flags) {
  const double sqrt5 = std::sqrt(5.0);
  if (flags[0] && !flags[1] && !flags[2]) {
    return RangeReport{make_interval(2.0 / 3.0, "2/3", true, 1.0, "1", false), {}, {}, {}};
  }
  if (flags[0] && flags[1] && !flags[2]) {
    return RangeReport{
        make_interval(2.0 / 3.0, "2/3", true, 2.0 * std::sqrt(2.0) / 3.0, "2 sqrt2/3", true),
        make_interval(3.0 - sqrt5, "3-sqrt5", true, 1.0, "1", false), {}, {}};
  }
  if (flags[0] && flags[1] && flags[2]) {
    return RangeReport{
        make_interval(2.0 / 3.0, "2/3", true, sqrt5 / 3.0, "sqrt5/3", true),
        make_interval(3.0 - sqrt5, "3-sqrt5", true, eta2_upper(2.0 / 3.0),
                      "4 sqrt(sqrt5-1)/(3+sqrt5)", true),
        quoted_eta2(),
        make_interval(eta3_floor(), "(3+sqrt5-sqrt(6 sqrt5-2))/2", false, 1.0, "1", false)};
  }
  throw DomainError("certify_ranges: flags must be {I1}, {I1,I2} or {I1,I2,I3}");
}

double trade_off_exact(double i1, double i2) {
  if (!(i1 >= 0.0 && i1 <= 6.0)) throw DomainError("trade_off_exact: I1 must lie in [0, 6]");
  const double a = 1.0 + xi_of(i1 / 6.0);
  const double r = i2 / (3.0 * a);
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("trade_off_exact: I2 exceeds its ceiling");
  return 1.5 * a * (1.0 + std::sqrt(1.0 - r * r));
}

double trade_off_paraboloid(double i1, double i2) {
  return 6.0 - 1.5 * ((i1 / 6.0) * (i1 / 6.0) + (i2 / 6.0) * (i2 / 6.0));
}

double i2_upper_edge(double i1) {
  if (!(i1 >= 0.0 && i1 <= 6.0)) throw DomainError("i2_upper_edge: I1 must lie in [0, 6]");
  return 4.0 * std::sqrt(std::max(0.0, 0.5 * std::sqrt(36.0 - i1 * i1) - 1.0));
}

double i1_upper_edge() { return 2.0 * std::sqrt(5.0); }

std::vector<SurfaceRow> surface_sweep(double step, int threads) {
  if (!(step > 0.0 && step <= 0.5)) throw DomainError("surface_sweep: step must lie in (0, 0.5]");
  std::vector<double> i1_values;
  for (long n = 1;; ++n) {
    const double i1 = 4.0 + static_cast<double>(n) * step;
    if (i1 >= i1_upper_edge()) break;
    i1_values.push_back(i1);
  }

  std::vector<std::vector<SurfaceRow>> rows(i1_values.size());
  parallel_for(rows.size(), threads, [&](std::size_t r) {
    const double i1 = i1_values[r];
    const double edge = i2_upper_edge(i1);
    for (long m = 1;; ++m) {
      const double i2 = 4.0 + static_cast<double>(m) * step;
      if (i2 >= edge) break;
      rows[r].push_back({i1, i2, trade_off_exact(i1, i2), trade_off_paraboloid(i1, i2)});
    }
  });

  std::vector<SurfaceRow> out;
  for (auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  if (out.empty()) throw DomainError("surface_sweep: step too coarse, no point inside the region");
  return out;
}

}  // namespace seqbell

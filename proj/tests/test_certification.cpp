#include <doctest.h>

#include <cmath>

#include "seqbell/certification.hpp"
#include "seqbell/chain.hpp"
#include "seqbell/linalg.hpp"

using namespace seqbell;

namespace {
const double kS5 = std::sqrt(5.0);
}

TEST_CASE("black point inversion") {
  const double v = 120.0 / 29.0;
  const auto r = invert_tuple({v, v, v});
  CHECK(std::abs(r.eta1 - 20.0 / 29.0) < 1e-12);
  CHECK(std::abs(r.eta2 - 0.8) < 1e-12);
  CHECK(std::abs(r.eta3_min - 1.0) < 1e-12);
  CHECK(r.valid);
  CHECK(r.status == TupleStatus::consistent);
  CHECK(r.eta1_interval.contains(r.eta1));
  CHECK(r.eta2_interval.contains(r.eta2));
  CHECK(r.eta1_interval.hi == doctest::Approx(kS5 / 3.0));
  CHECK(r.eta2_interval_quoted.lo == doctest::Approx(3.0 - kS5));
  CHECK(r.eta2_interval_quoted.hi == 0.8);
}

TEST_CASE("sharp first Bob caps the second") {
  const auto ok = invert_tuple({6.0, 3.0, 1.0});
  CHECK(ok.eta1 == 1.0);
  CHECK(ok.status == TupleStatus::consistent);
  const auto bad = invert_tuple({6.0, 3.5, 1.0});
  CHECK(bad.status == TupleStatus::inconsistent);
  CHECK(bad.eta2 > 1.0);  // flagged, not clamped
  CHECK(bad.manifold_distance == doctest::Approx(0.5));
  CHECK_FALSE(bad.valid);
}

TEST_CASE("infeasible tuples throw") {
  CHECK_THROWS_AS(invert_tuple({6.5, 4.0, 4.0}), DomainError);
  CHECK_THROWS_AS(invert_tuple({0.0, 4.0, 4.0}), DomainError);
  CHECK_THROWS_AS(invert_tuple({-1.0, 4.0, 4.0}), DomainError);
  CHECK_THROWS_AS(invert_tuple({NAN, 4.0, 4.0}), DomainError);
}

TEST_CASE("round trip through the closed forms") {
  int feasible = 0;
  for (int a = 1; a <= 40; ++a) {
    for (int b = 1; b <= 40; ++b) {
      for (int c = 1; c <= 40; ++c) {
        const std::vector<double> etas{0.025 * a, 0.025 * b, 0.025 * c};
        const auto v = predicted_values(etas);
        const auto r = invert_tuple({v[0], v[1], v[2]});
        CHECK(std::abs(r.eta1 - etas[0]) < 1e-12);
        CHECK(std::abs(r.eta2 - etas[1]) < 1e-12);
        CHECK(r.eta3_min <= etas[2] + 1e-12);
        CHECK(r.status == TupleStatus::consistent);
        if (v[0] > 4.0 && v[1] > 4.0 && v[2] > 4.0) {
          ++feasible;
          CHECK(r.valid);
          CHECK(r.eta1_interval.contains(r.eta1));
          CHECK(r.eta2_interval.contains(r.eta2));
          CHECK(r.eta3_min >= eta3_floor() - 1e-12);
          // The eta_1-dependent eta_2 range stays inside the union envelope.
          CHECK(r.eta2_interval.lo >= 3.0 - kS5 - 1e-12);
          CHECK(r.eta2_interval.hi <= eta2_upper(2.0 / 3.0) + 1e-12);
        }
      }
    }
  }
  CHECK(feasible > 0);
}

TEST_CASE("certify_ranges") {
  const auto one = certify_ranges({true, false, false});
  CHECK(one.eta1.lo == doctest::Approx(2.0 / 3.0));
  CHECK(one.eta1.lo_open);
  CHECK(one.eta1.hi == 1.0);
  CHECK_FALSE(one.eta1.hi_open);
  CHECK_FALSE(one.eta2.has_value());

  const auto two = certify_ranges({true, true, false});
  CHECK(std::abs(two.eta1.hi - 2.0 * std::sqrt(2.0) / 3.0) < 1e-12);
  REQUIRE(two.eta2.has_value());
  CHECK(std::abs(two.eta2->lo - (3.0 - kS5)) < 1e-12);
  CHECK(two.eta1.str() == "(2/3, 2 sqrt2/3)");

  const auto all = certify_ranges({true, true, true});
  CHECK(std::abs(all.eta1.hi - kS5 / 3.0) < 1e-12);
  REQUIRE(all.eta3.has_value());
  CHECK(std::abs(all.eta3->lo - 0.5 * (3.0 + kS5 - std::sqrt(6.0 * kS5 - 2.0))) < 1e-12);
  CHECK(all.eta3->lo == doctest::Approx(0.92863).epsilon(1e-4));
  REQUIRE(all.eta2_quoted.has_value());
  CHECK(all.eta2_quoted->hi == 0.8);
  CHECK(all.eta2_quoted->hi_expr == "4/5");
  CHECK(all.eta2->hi == doctest::Approx(0.8493).epsilon(1e-4));

  CHECK_THROWS_AS(certify_ranges({false, false, false}), DomainError);
  CHECK_THROWS_AS(certify_ranges({true, false, true}), DomainError);
}

TEST_CASE("eta edges agree with the violation conditions") {
  for (int i = 0; i <= 50; ++i) {
    const double e1 = 2.0 / 3.0 + i * (kS5 / 3.0 - 2.0 / 3.0) / 50.0;
    const double lo = eta2_lower(e1);
    CHECK(predicted_values(std::vector<double>{e1, lo})[1] == doctest::Approx(4.0));
    const double hi = eta2_upper(e1);
    if (hi > 0.0 && hi <= 1.0) {
      CHECK(predicted_values(std::vector<double>{e1, hi, 1.0})[2] == doctest::Approx(4.0));
    }
    const double e3 = eta3_lower(e1, lo);
    if (e3 <= 1.0) CHECK(predicted_values(std::vector<double>{e1, lo, e3})[2] == doctest::Approx(4.0));
  }
  // The two eta_2 edges meet at eta_1 = sqrt5/3 and bracket 4/5 there.
  CHECK(eta2_upper(kS5 / 3.0) == doctest::Approx(0.8));
  CHECK(eta2_lower(kS5 / 3.0) == doctest::Approx(0.8));
}

TEST_CASE("interval containment tolerance") {
  const Interval iv{0.0, 1.0, true, false, "0", "1"};
  CHECK(iv.contains(0.5));
  CHECK(iv.contains(1.0));
  CHECK(iv.contains(1.0 + 4e-10));
  CHECK_FALSE(iv.contains(1.0 + 1e-9));
  CHECK_FALSE(iv.contains(-1e-9));
  CHECK(iv.str() == "(0, 1]");
}

TEST_CASE("trade-off surface") {
  const double v = 120.0 / 29.0;
  CHECK(std::abs(trade_off_exact(v, v) - v) < 1e-12);
  CHECK(std::abs(trade_off_paraboloid(4.0, 4.0) - 14.0 / 3.0) < 1e-12);
  CHECK(std::abs(i1_upper_edge() - 2.0 * kS5) < 1e-15);
  CHECK(std::abs(i2_upper_edge(4.0) - 4.0 * std::sqrt(kS5 - 1.0)) < 1e-12);
  CHECK(i2_upper_edge(2.0 * kS5) == doctest::Approx(4.0));
  CHECK(trade_off_exact(4.0, i2_upper_edge(4.0)) == doctest::Approx(4.0));
  CHECK_THROWS_AS(trade_off_exact(6.0, 3.5), DomainError);
  CHECK_THROWS_AS(trade_off_exact(7.0, 1.0), DomainError);
}

TEST_CASE("surface_sweep") {
  const auto rows = surface_sweep(0.01);
  REQUIRE_FALSE(rows.empty());
  for (const auto& r : rows) {
    CHECK(r.i1 > 4.0);
    CHECK(r.i1 < i1_upper_edge());
    CHECK(r.i2 > 4.0);
    CHECK(r.i2 < i2_upper_edge(r.i1));
    CHECK(r.i3_exact > 4.0 - 1e-12);
    CHECK(r.i3_paraboloid == doctest::Approx(trade_off_paraboloid(r.i1, r.i2)));
  }
  // I3 decreases along both axes.
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].i1 == rows[k - 1].i1) CHECK(rows[k].i3_exact < rows[k - 1].i3_exact);
  }
  for (const auto& r : rows) {
    const double next = r.i1 + 0.01;
    if (next < i1_upper_edge() && r.i2 < i2_upper_edge(next)) {
      CHECK(trade_off_exact(next, r.i2) < r.i3_exact);
    }
  }

  const auto threaded = surface_sweep(0.01, 3);
  REQUIRE(threaded.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) CHECK(threaded[k].i3_exact == rows[k].i3_exact);

  CHECK_THROWS_AS(surface_sweep(0.0), DomainError);
  CHECK_THROWS_AS(surface_sweep(0.6), DomainError);
  CHECK_THROWS_AS(surface_sweep(0.5), DomainError);  // no grid point inside the region
}

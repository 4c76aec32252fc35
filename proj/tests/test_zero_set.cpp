#include "doctest.h"

#include "levy/zero_set.hpp"
#include "support/catalog.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace levy;
using catalog::q;
using std::numbers::pi;

TEST_SUITE("zero set examples") {
  TEST_CASE("zero_set_exact") {
    CHECK(zero_set_exact(catalog::brownian1d()).is_trivial());
    CHECK(zero_set_exact(catalog::poisson1d()).to_string() == "2π·ℤ");
    const auto z = zero_set_exact(catalog::mixed2d());
    CHECK(z == ClosedSubgroup::make(2, {}, {{0, 1}}, Scale::TwoPi));
    CHECK(std::abs(eval_triplet(catalog::mixed2d(), {0, 2 * pi})) < 1e-14);
    CHECK(zero_set_exact(catalog::compensated()).to_string() == "2π·2ℤ");
    CHECK(zero_set_exact(catalog::compensated_negative()).is_trivial());
    CHECK(zero_set_exact(catalog::smalljumps()).to_string() == "2π·6ℤ");
  }

  TEST_CASE("zero_set_exact brute-force oracle on [-10, 10]") {
    // 1 - e^{i xi} vanishes exactly at 2 pi Z: scan for sign of near-zeros.
    const auto s = SymbolHandle::from_triplet(catalog::poisson1d());
    int        zeros = 0;
    for (int i = -10000; i <= 10000; ++i) {
      const double xi = i * 1e-3;
      const double r  = std::abs(eval_symbol(s, {xi}));
      if (r < 1e-3) {
        CHECK(std::abs(xi - 2 * pi * std::round(xi / (2 * pi))) < 1.001e-3);  // distance = 2 asin(r / 2)
        ++zeros;
      }
    }
    CHECK(zeros >= 3);
  }

  TEST_CASE("decide_liouville") {
    const auto v = decide_liouville(SymbolHandle::stable(2, 0.5));
    CHECK(v.holds);
    CHECK(v.periodicity_group->is_full());
    const auto p = decide_liouville(catalog::poisson1d());
    CHECK_FALSE(p.holds);
    REQUIRE(p.witnesses.size() == 1);
    CHECK(p.witnesses[0].location[0] == doctest::Approx(2 * pi));
    CHECK(p.witnesses[0].residual <= p.witnesses[0].tolerance);
    CHECK(p.method == VerdictMethod::Exact);
  }

  TEST_CASE("numeric mode for incommensurable atoms") {
    const LevyTriplet t({0}, {0}, std::vector<Atom>{{1, {1}}, {1, {std::sqrt(2.0)}}});
    CHECK_THROWS_AS(zero_set_exact(t), NotExactError);
    const auto v = decide_liouville(t);
    CHECK(v.method == VerdictMethod::NumericHeuristic);
    CHECK(v.holds);
    CHECK(v.min_residual_off_origin > 1e-6);
    CHECK(std::isfinite(v.min_residual_off_origin));
  }

  TEST_CASE("triplet_characterization") {
    const auto a = triplet_characterization(catalog::poisson1d());
    CHECK(a.g_nu.to_string() == "ℤ");
    CHECK(a.v_nu.empty());
    CHECK(is_zero(a.c_nu));
    CHECK(a.w.empty());
    CHECK(a.rhs_group.to_string() == "ℤ");
    const auto b = triplet_characterization(catalog::mixed2d());
    CHECK(b.w == std::vector<RationalVector>{{1, 0}});
    CHECK(b.rhs_group == ClosedSubgroup::make(2, {{1, 0}}, {{0, 1}}, Scale::Unit));
    const auto c = triplet_characterization(catalog::drift2d());
    CHECK(c.g_nu.is_trivial());
    CHECK(c.w == std::vector<RationalVector>{{1, 0}});
  }

  TEST_CASE("crosscheck_corollary2") {
    const auto a = crosscheck_corollary2(catalog::poisson1d());
    CHECK(a.equal);
    CHECK(a.lhs.to_string() == "ℤ");
    const auto b = crosscheck_corollary2(catalog::brownian2d());
    CHECK(b.equal);
    CHECK(b.lhs.is_full());
    CHECK(crosscheck_corollary2(catalog::mixed2d()).equal);
  }

  TEST_CASE("truncation_zero_set_check") {
    const auto t = catalog::exact({0}, catalog::zeros(1), {{q(1), {q(1)}}, {q(1), {q(3)}}});
    CHECK(truncation_zero_set_check(t, {2, 4}));
    CHECK(truncation_zero_set_check(catalog::brownian1d(), {1, 2}));
    CHECK(truncation_zero_set_check(catalog::poisson1d(), {2}));
  }

  TEST_CASE("zero_scan_numeric") {
    const auto r = zero_scan_numeric(SymbolHandle::from_triplet(catalog::poisson1d()), {10, 0.01});
    std::vector<double> found;
    for (const auto& c : r.candidates)
      if (c.residual < 1e-10) found.push_back(c.location[0]);
    std::sort(found.begin(), found.end());
    REQUIRE(found.size() == 5);  // 0, +-2pi, +-4pi inside [-10, 10]
    CHECK(found[2] == doctest::Approx(0).epsilon(1e-8));
    CHECK(found[3] == doctest::Approx(2 * pi));
    const auto b = zero_scan_numeric(SymbolHandle::brownian({0}, {1}), {10, 0.01});
    REQUIRE(b.candidates.size() == 1);
    CHECK(std::abs(b.candidates[0].location[0]) < 1e-6);
  }
}

TEST_SUITE("zero set properties") {
  TEST_CASE("exact generators are zeros; numeric zeros lie on the exact group") {
    for (const auto& m : catalog::all()) {
      const auto z = zero_set_exact(m.triplet);
      const auto s = SymbolHandle::from_triplet(m.triplet);
      for (const auto& g : z.lattice_basis()) CHECK(std::abs(eval_symbol_turns(s, to_double(g))) <= 1e-10);
      for (const auto& g : z.subspace_basis()) CHECK(std::abs(eval_symbol_turns(s, to_double(g))) <= 1e-10);
      if (m.triplet.dimension() > 2) continue;
      const auto r = zero_scan_numeric(s, {8, m.triplet.dimension() == 1 ? 0.01 : 0.05});
      for (const auto& c : r.candidates)
        if (c.residual <= 1e-10) CHECK(distance_to_group(z, c.location) <= 1e-6);
    }
  }

  TEST_CASE("verdict holds iff the zero set is trivial") {
    for (const auto& m : catalog::all()) {
      const auto v = decide_liouville(m.triplet);
      CHECK(v.holds == v.zero_set->is_trivial());
      CHECK(v.holds == m.liouville);
      CHECK(*v.periodicity_group == orthogonal_subgroup(*v.zero_set));
    }
  }

  TEST_CASE("periodicity group matches the triplet data on the whole catalog") {
    for (const auto& m : catalog::all()) CHECK_MESSAGE(crosscheck_corollary2(m.triplet).equal, m.name);
  }

  TEST_CASE("parallel and serial scans agree") {
    const auto s = SymbolHandle::from_triplet(catalog::lattice2d());
    const auto a = zero_scan_numeric(s, {7, 0.05});
    const auto b = serial::zero_scan_numeric(s, {7, 0.05});
    REQUIRE(a.candidates.size() == b.candidates.size());
    for (std::size_t i = 0; i < a.candidates.size(); ++i) {
      CHECK(a.candidates[i].location == b.candidates[i].location);
      CHECK(a.candidates[i].residual == b.candidates[i].residual);
    }
  }

  TEST_CASE("zero set of the truncations intersects to the zero set") {
    for (const auto& m : catalog::all()) CHECK(truncation_zero_set_check(m.triplet, {1, 2, 4, 8}));
  }
}

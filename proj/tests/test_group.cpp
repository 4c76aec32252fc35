#include "doctest.h"

#include "levy/group.hpp"
#include "support/random_groups.hpp"

#include <functional>
#include <numbers>

using namespace levy;

namespace {
Rational q(long p, long d = 1) { return Rational(p, d); }
const auto unit  = Scale::Unit;
const auto twopi = Scale::TwoPi;
}  // namespace

TEST_SUITE("group examples") {
  TEST_CASE("subgroup_from_generators") {
    CHECK(subgroup_from_generators({{1, 0}, {0, 1}}, 2) == ClosedSubgroup::make(2, {}, {{1, 0}, {0, 1}}, unit));
    const auto g = subgroup_from_generators({{2}, {3}}, 1);
    CHECK(g.lattice_basis() == std::vector<RationalVector>{{1}});
    CHECK(subgroup_from_generators({}, 3).is_trivial());
  }

  TEST_CASE("orthogonal_subgroup") {
    CHECK(orthogonal_subgroup(ClosedSubgroup::trivial(3)).is_full());
    const auto z2 = ClosedSubgroup::make(2, {}, {{1, 0}, {0, 1}}, twopi);
    CHECK(orthogonal_subgroup(z2) == ClosedSubgroup::make(2, {}, {{1, 0}, {0, 1}}, unit));
    // R x {0} (+) {0} x 2piZ  ->  {0} x Z.
    const auto g = ClosedSubgroup::make(2, {{1, 0}}, {{0, 1}}, twopi);
    const auto d = orthogonal_subgroup(g);
    CHECK(d.subspace_basis().empty());
    CHECK(d.lattice_basis() == std::vector<RationalVector>{{0, 1}});
    CHECK(d.scale() == unit);
  }

  TEST_CASE("lattice_preimage") {
    CHECK(lattice_preimage({{1}}, {{1}}, 1).to_string() == "2π·ℤ");
    const auto g = lattice_preimage({{1, 0}}, {{1, 0}, {0, 1}}, 2);
    CHECK(g.subspace_basis() == std::vector<RationalVector>{{0, 1}});
    CHECK(g.lattice_basis() == std::vector<RationalVector>{{1, 0}});
    CHECK(g.scale() == twopi);
    // 2piZ ∩ piZ = 2piZ; brute force over multiples of pi up to 10 pi.
    const auto h = lattice_preimage({{1}, {2}}, {{1}}, 1);
    for (int m = -10; m <= 10; ++m) {
      const bool expected = m % 2 == 0;  // xi = m*pi; xi in 2piZ and 2xi in 2piZ
      CHECK(member(h, {q(m, 2)}, twopi) == expected);
    }
  }

  TEST_CASE("group_sum_closure") {
    const auto z2 = ClosedSubgroup::make(2, {}, {{1, 0}, {0, 1}}, unit);
    CHECK(group_sum_closure(z2, ClosedSubgroup::trivial(2)) == z2);
    const auto l = ClosedSubgroup::make(2, {}, {{1, 0}}, unit);
    const auto e = ClosedSubgroup::make(2, {{0, 1}}, {}, unit);
    CHECK(group_sum_closure(l, e) == ClosedSubgroup::make(2, {{0, 1}}, {{1, 0}}, unit));
    const auto diag = ClosedSubgroup::make(2, {{1, 1}}, {}, unit);
    const auto s    = group_sum_closure(l, diag);
    CHECK(s == ClosedSubgroup::make(2, {{1, 1}}, {{q(1, 2), q(-1, 2)}}, unit));
    CHECK(member(s, {1, 0}));
    CHECK_THROWS_AS(group_sum_closure(ClosedSubgroup::make(1, {}, {{1}}, unit),
                                      ClosedSubgroup::make(1, {}, {{1}}, twopi)),
                    std::domain_error);
  }

  TEST_CASE("member / equals / intersect_subspace") {
    CHECK(member(ClosedSubgroup::make(1, {}, {{1}}, twopi), {2}, twopi));  // 4 pi in 2 pi Z
    CHECK_FALSE(member(ClosedSubgroup::make(2, {}, {{1, 0}, {0, 1}}, unit), {q(1, 2), 0}));
    const auto z2 = ClosedSubgroup::make(2, {}, {{1, 0}, {0, 1}}, unit);
    const auto d  = intersect_subspace(z2, {{1, 1}});
    CHECK(d == ClosedSubgroup::make(2, {}, {{1, 1}}, unit));
    // Brute force: diagonal lattice points with |k| <= 5 are multiples of (1,1).
    for (int a = -5; a <= 5; ++a)
      for (int b = -5; b <= 5; ++b)
        if (a == b) CHECK(member(d, {a, b}));
    CHECK(equals(z2, ClosedSubgroup::make(2, {}, {{1, 1}, {0, 1}}, unit)));
  }

  TEST_CASE("printing") {
    CHECK(ClosedSubgroup::trivial(2).to_string() == "{0}");
    CHECK(ClosedSubgroup::full(1).to_string() == "ℝ");
    CHECK(ClosedSubgroup::full(3).to_string() == "ℝ^3");
    CHECK(ClosedSubgroup::make(1, {}, {{2}}, twopi).to_string() == "2π·2ℤ");
    CHECK(ClosedSubgroup::make(1, {}, {{q(1, 2)}}, unit).to_string() == "(1/2)ℤ");
  }
}

TEST_SUITE("group properties") {
  TEST_CASE("double dual on random groups") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 1 + t % 4;
      const auto        g = testing::random_group(rng, n, t % 2 ? unit : twopi);
      const auto        d = orthogonal_subgroup(g);
      CHECK(orthogonal_subgroup(d) == g);
      // e^{i xi.g} = 1 on generators: xi.g in Z for every pair of generators.
      for (const auto& x : d.lattice_basis())
        for (const auto& y : g.lattice_basis()) CHECK(is_integral(dot(x, y)));
    }
  }

  TEST_CASE("orthogonal_subgroup reverses inclusion") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n  = 1 + t % 3;
      const auto        g1 = testing::random_group(rng, n);
      // g2 = g1 + extra generator contains g1.
      auto extra = testing::random_independent(rng, n, 1);
      const auto g2 = group_sum_closure(g1, ClosedSubgroup::make(n, {}, extra, unit));
      REQUIRE(contains(g2, g1));
      CHECK(contains(orthogonal_subgroup(g1), orthogonal_subgroup(g2)));
    }
  }

  TEST_CASE("subgroup_from_generators is idempotent") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + t % 4;
      std::vector<RationalVector> gens(1 + t % 5, RationalVector(n));
      for (auto& v : gens)
        for (auto& x : v) x = testing::random_rational(rng);
      const auto g = subgroup_from_generators(gens, n);
      CHECK(subgroup_from_generators(g.lattice_basis(), n) == g);
    }
  }

  TEST_CASE("member agrees with brute-force enumeration") {
    std::mt19937_64                    rng(4);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n    = 1 + t % 3;
      const std::size_t r    = 1 + (t / 3) % n;
      const auto        gens = testing::random_independent(rng, n, r);
      const auto        g    = ClosedSubgroup::make(n, {}, gens, unit);
      // Members: integer combinations.
      RationalVector x(n);
      for (const auto& v : gens) x = axpy(Rational(coef(rng)), v, x);
      CHECK(member(g, x));
      // Perturbed points: with independent generators the coefficients are
      // unique, so enumeration over |k| <= 6 decides membership.
      const RationalVector y = axpy(Rational(1, 2 + t % 3), gens[0], x);
      std::function<bool(std::size_t, RationalVector)> search = [&](std::size_t i, RationalVector acc) {
        if (i == r) return acc == y;
        for (int k = -7; k <= 7; ++k)
          if (search(i + 1, axpy(Rational(k), gens[i], acc))) return true;
        return false;
      };
      CHECK(member(g, y) == search(0, RationalVector(n)));
    }
  }

  TEST_CASE("group_sum_closure is commutative and associative") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 1 + t % 3;
      const auto a = testing::random_group(rng, n), b = testing::random_group(rng, n),
                 c = testing::random_group(rng, n);
      CHECK(group_sum_closure(a, b) == group_sum_closure(b, a));
      CHECK(group_sum_closure(group_sum_closure(a, b), c) == group_sum_closure(a, group_sum_closure(b, c)));
    }
  }

  TEST_CASE("lattice_preimage membership on generators and combinations") {
    std::mt19937_64                    rng(6);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n    = 1 + t % 3;
      const auto        rows = testing::random_independent(rng, n, 1 + t % n);
      const auto        g    = lattice_preimage(rows, RationalMatrix::identity(n).row_list(), n);
      RationalVector    x(n);
      for (const auto& v : g.lattice_basis()) x = axpy(Rational(coef(rng)), v, x);
      for (const auto& v : g.subspace_basis()) x = axpy(testing::random_rational(rng), v, x);
      // A (2 pi x) in 2 pi Z  <=>  A x integral.
      for (const auto& r : rows) CHECK(is_integral(dot(r, x)));
    }
  }
}

#include "doctest.h"

#include "levy/operator_lab.hpp"
#include "levy/spectral.hpp"
#include "levy/zero_set.hpp"
#include "support/catalog.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace levy;
using std::numbers::pi;

namespace {

TrigPolynomial harmonic(std::size_t n, RealVector u, Complex c = 1.0) {
  return TrigPolynomial{n, {std::move(u)}, {c}};
}

TrigPolynomial cos_x() {
  return TrigPolynomial{1, {{1 / (2 * pi)}, {-1 / (2 * pi)}}, {0.5, 0.5}};
}

TrigPolynomial random_poly(std::mt19937_64& rng, std::size_t n, double L, int terms) {
  std::uniform_int_distribution<int>     k(-4, 4);
  std::uniform_real_distribution<double> c(-1, 1);
  TrigPolynomial                         p;
  p.dimension = n;
  for (int t = 0; t < terms; ++t) {
    RealVector u(n);
    for (auto& x : u) x = k(rng) / L;
    p.frequencies.push_back(u);
    p.coefficients.emplace_back(c(rng), c(rng));
  }
  return p;
}

double sup_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("FFT agrees with the direct DFT") {
    std::mt19937_64                        rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    for (std::size_t n : {1u, 2u, 3u}) {
      const TorusGrid      g(n, 2.0, n == 3 ? 8 : 16);
      std::vector<Complex> v(g.size());
      for (auto& x : v) x = {u(rng), u(rng)};
      const auto a = forward_transform(g, v), b = serial::forward_transform(g, v);
      CHECK(sup_diff(a, b) <= 1e-13);
      CHECK(sup_diff(inverse_transform(g, a), v) <= 1e-13);
      CHECK(sup_diff(serial::inverse_transform(g, b), v) <= 1e-13);
    }
  }

  TEST_CASE("forward transform picks out the grid harmonic") {
    const TorusGrid g(2, 3.0, 8);
    const auto      f = harmonic(2, {1 / 3.0, -2 / 3.0}).sample(g);
    const auto      c = forward_transform(g, f.values);
    const auto      j = g.linear_of_frequency({1, -2});
    CHECK(std::abs(c[j] - 1.0) <= 1e-14);
  }
}

TEST_SUITE("operator examples") {
  TEST_CASE("apply_generator_fourier") {
    const TorusGrid g(1, 1.0, 64);
    const auto      one = GridFunction(g, std::vector<Complex>(g.size(), 1.0));
    CHECK(apply_generator_fourier(one, SymbolHandle::from_triplet(catalog::poisson1d())).sup_norm() <= 1e-15);

    // e^{i xi0 x}, Brownian: eigenvalue -xi0^2/2.
    const TorusGrid g2(1, 2 * pi, 32);
    const auto      e = harmonic(1, {3 / (2 * pi)}).sample(g2);
    const auto      r = apply_generator_fourier(e, SymbolHandle::brownian({0}, {1}));
    for (std::size_t i = 0; i < g2.size(); ++i) CHECK(std::abs(r.values[i] + 4.5 * e.values[i]) <= 1e-12);

    // cos(2 pi x), nu = delta_1, L = 1: psi(+-2pi) = 0.
    const auto c = TrigPolynomial{1, {{1}, {-1}}, {0.5, 0.5}}.sample(g);
    CHECK(apply_generator_fourier(c, SymbolHandle::from_triplet(catalog::poisson1d())).sup_norm() <= 1e-12);
  }

  TEST_CASE("apply_generator_direct") {
    const SmoothFunction quad{[](const RealVector& x) { return Complex(0.5 * x[0] * x[0]); },
                              [](const RealVector& x) { return std::vector<Complex>{x[0]}; },
                              [](const RealVector&) { return std::vector<Complex>{1.0}; }};
    for (double x : {-1.0, 0.0, 2.5}) CHECK(std::abs(apply_generator_direct(quad, catalog::brownian1d(), {x}) - 0.5) <= 1e-15);

    const auto c2 = TrigPolynomial{1, {{1}, {-1}}, {0.5, 0.5}};
    CHECK(std::abs(apply_generator_direct(c2.smooth(), catalog::poisson1d(), {0})) <= 1e-15);

    // e^{ix}: L u = (e^{i} - 1) u = -psi(1) u.
    const auto eix = harmonic(1, {1 / (2 * pi)});
    const auto psi = eval_symbol(SymbolHandle::from_triplet(catalog::poisson1d()), {1});
    for (double x : {0.0, 0.3, 1.7})
      CHECK(std::abs(apply_generator_direct(eix.smooth(), catalog::poisson1d(), {x}) + psi * eix.value({x})) <= 1e-14);
  }

  TEST_CASE("direct application errors and finite differences") {
    DensityMeasure d;
    d.density = [](double x) { return std::exp(-x * x); };
    const LevyTriplet dens({0}, {0}, d);
    CHECK_THROWS(apply_generator_direct(cos_x().smooth(), dens, {0}));
    SmoothFunction bare{[](const RealVector& x) { return Complex(std::sin(x[0])); }, {}, {}};
    CHECK_THROWS_AS(apply_generator_direct(bare, catalog::brownian1d(), {0.3}), MissingDerivativeError);
    bare.finite_difference_fallback = true;
    CHECK(std::abs(apply_generator_direct(bare, catalog::brownian1d(), {0.3}) + 0.5 * std::sin(0.3)) <= 1e-5);
    // Pure jumps with |b| >= 1 need no derivatives at all.
    SmoothFunction value_only{[](const RealVector& x) { return Complex(x[0]); }, {}, {}};
    CHECK(std::abs(apply_generator_direct(value_only, catalog::poisson1d(), {0.3}) - 1.0) <= 1e-15);
  }

  TEST_CASE("crosscheck_applications") {
    const TorusGrid g(1, 1.0, 32);
    CHECK(crosscheck_applications(harmonic(1, {3}), catalog::poisson1d(), g) <= 1e-10);
    CHECK(crosscheck_applications(harmonic(1, {0}), catalog::poisson1d(), g) == 0);
    std::mt19937_64 rng(2);
    const TorusGrid g2(2, 2.0, 16);
    CHECK(crosscheck_applications(random_poly(rng, 2, 2.0, 5), catalog::mixed2d(), g2) <= 1e-8);
    CHECK_THROWS(crosscheck_applications(harmonic(1, {0.3}), catalog::poisson1d(), g));
  }

  TEST_CASE("make_harmonic") {
    const auto c = make_harmonic(zero_set_exact(catalog::poisson1d()));
    const auto f = c.realization();
    for (double x : {0.0, 0.1, 0.77}) CHECK(std::abs(f.value({x}) - (1 + std::cos(2 * pi * x))) <= 1e-14);
    CHECK(c.least_period() == Rational(1));
    CHECK_THROWS_AS(make_harmonic(ClosedSubgroup::trivial(2)), NoCounterexample);
    const auto m = make_harmonic(zero_set_exact(catalog::mixed2d())).realization();
    for (double x1 : {0.0, 0.4, 3.0})
      for (double x2 : {0.0, 0.25, 0.6})
        CHECK(std::abs(m.value({x1, x2}) - 1.0 - std::cos(2 * pi * x2)) <= 1e-14);
  }

  TEST_CASE("make_harmonic with random seeds stays on the group") {
    for (const auto& model : catalog::all()) {
      const auto z = zero_set_exact(model.triplet);
      if (z.is_trivial()) continue;
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto c = make_harmonic(z, seed);
        CHECK(c.frequencies.size() >= 2);
        CHECK(c.frequencies.size() <= 5);
        for (const auto& u : c.frequencies) CHECK(member(z, u, Scale::TwoPi));
        const auto g = harmonic_grid(c);
        const auto f = c.realization().sample(g);
        CHECK(f.max_imag() <= 1e-12);
        CHECK(verify_harmonic(c, model.triplet, g).pass);
      }
    }
  }

  TEST_CASE("verify_harmonic") {
    const auto h = verify_harmonic(make_harmonic(zero_set_exact(catalog::poisson1d())), catalog::poisson1d(),
                                   TorusGrid(1, 1.0, 16));
    CHECK(h.pass);
    const TorusGrid g(1, 2 * pi, 256);
    const auto      r = verify_harmonic(cos_x(), catalog::poisson1d(), g);
    CHECK_FALSE(r.pass);
    CHECK(r.fourier_residual == doctest::Approx(2 * std::sin(0.5)).epsilon(1e-3));
    CHECK(r.direct_residual == doctest::Approx(2 * std::sin(0.5)).epsilon(1e-3));
    CHECK(verify_harmonic(harmonic(1, {0}, 3.0), catalog::brownian1d(), g).pass);
  }

  TEST_CASE("resolvent_fixed_point") {
    const TorusGrid g1(1, 1.0, 16);
    const auto      f = make_harmonic(zero_set_exact(catalog::poisson1d())).realization().sample(g1);
    CHECK(resolvent_fixed_point(f, catalog::poisson1d(), 1) <= 1e-10);
    const TorusGrid g(1, 2 * pi, 64);
    const auto      psi1 = eval_symbol(SymbolHandle::from_triplet(catalog::poisson1d()), {1});
    // sup_x |Re((m - 1) e^{ix})| = |m - 1| with m = 1/(1 + psi(1)).
    const double expected = std::abs(1.0 - 1.0 / (1.0 + psi1));
    const double r        = resolvent_fixed_point(cos_x().sample(g), catalog::poisson1d(), 1);
    CHECK(r == doctest::Approx(expected).epsilon(1e-3));
    CHECK(r > 1e-2);
    const GridFunction c(g, std::vector<Complex>(g.size(), 2.5));
    CHECK(resolvent_fixed_point(c, catalog::poisson1d(), 3) <= 1e-15);
    CHECK_THROWS(resolvent_fixed_point(c, catalog::poisson1d(), 0));
  }

  TEST_CASE("semigroup_fixed_point and transition_density") {
    const TorusGrid g1(1, 1.0, 16);
    const auto      f = make_harmonic(zero_set_exact(catalog::symmetric1d())).realization().sample(g1);
    const auto      s = semigroup_fixed_point(f, catalog::symmetric1d(), 1);
    CHECK(s.residual <= 1e-10);
    CHECK(s.conclusive);
    const TorusGrid g(1, 2 * pi, 64);
    CHECK_FALSE(semigroup_fixed_point(cos_x().sample(g), catalog::poisson1d(), 1).conclusive);
    const GridFunction c(g, std::vector<Complex>(g.size(), 1.0));
    CHECK(semigroup_fixed_point(c, catalog::poisson1d(), 2).residual <= 1e-15);

    const auto d = transition_density(catalog::brownian1d(), 1, TorusGrid(1, 8, 64));
    CHECK(d.strictly_positive);
    CHECK(d.max_imag <= 1e-10);
    // Periodized Gaussian oracle at x = 0: sum_m N(mL; 0, 1).
    double expected = 0;
    for (int m = -3; m <= 3; ++m) expected += std::exp(-0.5 * 64.0 * m * m) / std::sqrt(2 * pi);
    CHECK(d.density.values[0].real() == doctest::Approx(expected).epsilon(1e-10));
    // Total mass one.
    double mass = 0;
    for (const auto& v : d.density.values) mass += v.real() * d.density.grid.cell_volume();
    CHECK(mass == doctest::Approx(1).epsilon(1e-12));
  }
}

TEST_SUITE("operator properties") {
  TEST_CASE("linearity of both paths") {
    std::mt19937_64 rng(3);
    const TorusGrid g(2, 2.0, 16);
    const auto      t   = catalog::mixed2d();
    const auto      psi = SymbolHandle::from_triplet(t);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_poly(rng, 2, 2.0, 1), b = random_poly(rng, 2, 2.0, 1);
      const Complex alpha(0.7, -0.2);
      TrigPolynomial sum{2, {a.frequencies[0], b.frequencies[0]}, {alpha * a.coefficients[0], b.coefficients[0]}};
      const auto la = apply_generator_fourier(a.sample(g), psi), lb = apply_generator_fourier(b.sample(g), psi);
      const auto ls = apply_generator_fourier(sum.sample(g), psi);
      double scale = 1;
      for (std::size_t i = 0; i < g.size(); ++i) scale = std::max(scale, std::abs(ls.values[i]));
      for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(std::abs(ls.values[i] - alpha * la.values[i] - lb.values[i]) <= 1e-10 * scale);
        const auto x  = g.point(i);
        const auto ds = apply_generator_direct(sum.smooth(), t, x);
        const auto da = apply_generator_direct(a.smooth(), t, x), db = apply_generator_direct(b.smooth(), t, x);
        CHECK(std::abs(ds - alpha * da - db) <= 1e-10 * scale);
      }
    }
  }

  TEST_CASE("eigen-relation at grid frequencies") {
    const TorusGrid g(2, 1.0, 16);
    for (const auto& m : catalog::all()) {
      if (m.triplet.dimension() != 2) continue;
      const auto psi = SymbolHandle::from_triplet(m.triplet);
      for (const RealVector u : {RealVector{1, 0}, RealVector{3, -2}, RealVector{-5, 7}}) {
        const auto f   = harmonic(2, u).sample(g);
        const auto lf  = apply_generator_fourier(f, psi);
        const auto lam = eval_symbol_turns(psi, u);
        for (std::size_t i = 0; i < g.size(); ++i)
          CHECK(std::abs(lf.values[i] + lam * f.values[i]) <= 1e-12 * (1 + std::abs(lam)));
      }
    }
  }

  TEST_CASE("constants are harmonic on every path") {
    for (const auto& m : catalog::all()) {
      const std::size_t n = m.triplet.dimension();
      const TorusGrid   g(n, 1.5, 8);
      const auto        one = harmonic(n, RealVector(n), 2.0);
      CHECK(apply_generator_fourier(one.sample(g), SymbolHandle::from_triplet(m.triplet)).sup_norm() <= 1e-12 * 2);
      CHECK(std::abs(apply_generator_direct(one.smooth(), m.triplet, RealVector(n, 0.3))) <= 1e-12 * 2);
    }
  }

  TEST_CASE("pairing: constants vanish, adjointness against direct quadrature") {
    const TorusGrid g(1, 4.0, 512);
    for (const auto& m : catalog::all()) {
      if (m.triplet.dimension() != 1) continue;
      const GridFunction c(g, std::vector<Complex>(g.size(), 1.0));
      CHECK(std::abs(distributional_pairing(c, TestBump({1.3}, 0.9, 4.0), m.triplet)) <= 1e-8);
    }
    // <L f, phi> = int (L f) phi for a smooth trigonometric polynomial f.
    std::mt19937_64 rng(4);
    const auto      f   = random_poly(rng, 1, 4.0, 4);
    const TestBump  phi({2.1}, 1.2, 4.0);
    for (const auto& t : {catalog::symmetric1d(), catalog::compensated(), catalog::brownian_poisson1d()}) {
      const auto pairing = distributional_pairing(f.sample(g), phi, t);
      const auto lf      = apply_generator_fourier(f.sample(g), SymbolHandle::from_triplet(t));
      Complex    direct  = 0;
      for (std::size_t i = 0; i < g.size(); ++i) direct += lf.values[i] * phi.value(g.point(i));
      direct *= g.cell_volume();
      CHECK(std::abs(pairing - direct) <= 1e-8 * (1 + std::abs(direct)));
    }
  }

  TEST_CASE("bump derivatives match finite differences") {
    const TestBump b({0.2, -0.1}, 0.8, 3.0);
    const RealVector x{0.5, 0.1};
    const double     h = 1e-5;
    const auto       g = b.gradient(x);
    const auto       H = b.hessian(x);
    for (std::size_t a = 0; a < 2; ++a) {
      auto p = x, m = x;
      p[a] += h;
      m[a] -= h;
      CHECK(std::abs(g[a] - (b.value(p) - b.value(m)) / (2 * h)) <= 1e-8);
      const auto gp = b.gradient(p), gm = b.gradient(m);
      for (std::size_t c = 0; c < 2; ++c) CHECK(std::abs(H[c * 2 + a] - (gp[c] - gm[c]) / (2 * h)) <= 1e-7);
    }
    CHECK_THROWS(TestBump({0.0}, 2.0, 3.0));
  }

  TEST_CASE("fixed point iff spectrum in the zero set") {
    const TorusGrid g(1, 2.0, 32);
    const auto      t = catalog::poisson1d();
    for (int k = -6; k <= 6; ++k) {
      const auto   f        = harmonic(1, {k / 2.0}).sample(g);
      const bool   on_group = k % 2 == 0;
      const double r        = resolvent_fixed_point(f, t, 1.0);
      CHECK((r <= 1e-10) == on_group);
    }
  }

  TEST_CASE("serial references agree with the parallel kernels") {
    std::mt19937_64 rng(5);
    const TorusGrid g(2, 2.0, 16);
    const auto      t = catalog::lattice2d();
    const auto      f = random_poly(rng, 2, 2.0, 5).sample(g);
    const auto      s = SymbolHandle::from_triplet(t);
    CHECK(sup_diff(apply_generator_fourier(f, s).values, serial::apply_generator_fourier(f, s).values) <= 1e-12);
    CHECK(std::abs(resolvent_fixed_point(f, t, 1.5) - serial::resolvent_fixed_point(f, t, 1.5)) <= 1e-12);
    CHECK(std::abs(semigroup_fixed_point(f, t, 0.5).residual - serial::semigroup_fixed_point(f, t, 0.5).residual) <= 1e-12);
    const auto d1 = transition_density(catalog::brownian2d(), 1, TorusGrid(2, 8, 16));
    const auto d2 = serial::transition_density(catalog::brownian2d(), 1, TorusGrid(2, 8, 16));
    CHECK(sup_diff(d1.density.values, d2.density.values) <= 1e-14);
  }

  TEST_CASE("pairing oracle for cos(x) against direct quadrature") {
    // (L cos)(x) = cos(x + 1) - cos(x) for nu = delta_1.
    const double   r = 1.0, c = 0.4;
    const TestBump phi({c}, r, 2 * pi);
    const TorusGrid g(1, 2 * pi, 1024);
    const auto      p = distributional_pairing(cos_x().sample(g), phi, catalog::poisson1d());
    const double    q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double x) { return (std::cos(x + 1) - std::cos(x)) * phi.value({x}).real(); }, c - r, c + r, 15, 1e-14);
    CHECK(std::abs(p - q) <= 1e-8);
  }
}

#include "levy/operator_lab.hpp"

#include "levy/detail/complex_math.hpp"
#include "levy/detail/parallel.hpp"
#include "levy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace levy {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double fd_step = 1e-5;

// Spectral backend: FFT with OpenMP loops, or the direct DFT serially.
struct Backend {
  bool parallel;
  std::vector<Complex> multiplier(const SymbolHandle& s, const TorusGrid& g,
                                  const std::function<Complex(Complex)>& f) const {
    return parallel ? symbol_multiplier(s, g, f) : serial::symbol_multiplier(s, g, f);
  }
  std::vector<Complex> apply(const TorusGrid& g, const std::vector<Complex>& v,
                             const std::vector<Complex>& m) const {
    return parallel ? apply_multiplier(g, v, m) : serial::apply_multiplier(g, v, m);
  }
  std::vector<Complex> inverse(const TorusGrid& g, std::vector<Complex> c) const {
    return parallel ? inverse_transform(g, std::move(c)) : serial::inverse_transform(g, std::move(c));
  }
};

double sup_abs(const std::vector<Complex>& v) {
  double m = 0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

template <class F>
std::vector<Complex> map_grid(const TorusGrid& grid, bool parallel, F&& f) {
  std::vector<Complex>  out(grid.size());
  detail::ExceptionSlot slot;
#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < detail::as_loop_bound(grid.size()); ++i)
    slot.run([&] {
      const auto j = static_cast<std::size_t>(i);
      out[j]       = f(grid.point(j));
    });
  slot.rethrow();
  return out;
}

void require_matching(const GridFunction& f, const LevyTriplet& triplet) {
  if (f.grid.dimension() != triplet.dimension())
    throw DimensionError("grid and triplet dimensions differ");
  if (f.values.size() != f.grid.size()) throw std::invalid_argument("grid function size mismatch");
}

std::vector<Complex> fd_gradient(const SmoothFunction& u, const RealVector& x) {
  std::vector<Complex> g(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) {
    auto p = x, m = x;
    p[a] += fd_step;
    m[a] -= fd_step;
    g[a] = (u.value(p) - u.value(m)) / (2 * fd_step);
  }
  return g;
}

std::vector<Complex> fd_hessian(const SmoothFunction& u, const RealVector& x) {
  const std::size_t    n = x.size();
  std::vector<Complex> h(n * n);
  const Complex        u0 = u.value(x);
  for (std::size_t a = 0; a < n; ++a) {
    auto p = x, m = x;
    p[a] += fd_step;
    m[a] -= fd_step;
    h[a * n + a] = (u.value(p) - 2.0 * u0 + u.value(m)) / (fd_step * fd_step);
    for (std::size_t b = a + 1; b < n; ++b) {
      auto pp = p, pm = p, mp = m, mm = m;
      pp[b] += fd_step;
      pm[b] -= fd_step;
      mp[b] += fd_step;
      mm[b] -= fd_step;
      h[a * n + b] = h[b * n + a] =
          (u.value(pp) - u.value(pm) - u.value(mp) + u.value(mm)) / (4 * fd_step * fd_step);
    }
  }
  return h;
}

// Atoms with their small-jump flag (exact comparison when rational data exists).
struct DirectAtom {
  double     mass;
  RealVector location;
  bool       small;
};

std::vector<DirectAtom> direct_atoms(const LevyTriplet& triplet) {
  std::vector<DirectAtom> out;
  if (const auto& e = triplet.exact()) {
    for (const auto& a : e->atoms)
      out.push_back({to_double(a.mass), to_double(a.location), dot(a.location, a.location) < 1});
    return out;
  }
  for (const auto& a : triplet.atoms()) {
    double r2 = 0;
    for (double v : a.location) r2 += v * v;
    out.push_back({a.mass, a.location, r2 < 1});
  }
  return out;
}

GridFunction fourier_impl(const GridFunction& u, const SymbolHandle& psi, const Backend& be) {
  if (u.grid.dimension() != psi.dimension())
    throw DimensionError("grid and symbol dimensions differ");
  const auto m = be.multiplier(psi, u.grid, [](Complex z) { return -z; });
  return GridFunction(u.grid, be.apply(u.grid, u.values, m));
}

double resolvent_impl(const GridFunction& f, const LevyTriplet& triplet, double tau,
                      const Backend& be) {
  require_matching(f, triplet);
  if (!(tau > 0)) throw std::invalid_argument("resolvent parameter tau must be positive");
  const auto psi = SymbolHandle::from_triplet(triplet);
  // tau/(tau + psi) - 1 = -psi/(tau + psi): exactly zero where psi is.
  const auto m = be.multiplier(psi, f.grid, [tau](Complex z) { return -z / (tau + z); });
  return sup_abs(be.apply(f.grid, f.values, m));
}

SemigroupCheck semigroup_impl(const GridFunction& f, const LevyTriplet& triplet, double t,
                              const Backend& be) {
  require_matching(f, triplet);
  if (!(t >= 0)) throw std::invalid_argument("semigroup time must be non-negative");
  const auto psi = SymbolHandle::from_triplet(triplet);
  const auto raw = be.multiplier(psi, f.grid, [](Complex z) { return z; });
  bool       real = true;
  for (const auto& z : raw)
    if (std::abs(z.imag()) > 1e-12 * (1 + std::abs(z))) real = false;
  const auto m = be.multiplier(psi, f.grid, [t](Complex z) { return detail::expm1(-t * z); });
  return {sup_abs(be.apply(f.grid, f.values, m)), real};
}

DensityReport density_impl(const LevyTriplet& triplet, double t, const TorusGrid& grid,
                           const Backend& be) {
  if (grid.dimension() != triplet.dimension())
    throw DimensionError("grid and triplet dimensions differ");
  if (!(t > 0)) throw std::invalid_argument("density time must be positive");
  const auto   psi   = SymbolHandle::from_triplet(triplet);
  const double scale = std::pow(grid.period(), -static_cast<double>(grid.dimension()));
  // Coefficient of e^{+i xi_k x} is L^{-n} e^{-t psi(-xi_k)} = L^{-n} e^{-t conj psi(xi_k)}.
  auto c = be.multiplier(psi, grid, [t, scale](Complex z) { return scale * std::exp(-t * std::conj(z)); });
  GridFunction density(grid, be.inverse(grid, std::move(c)));
  double       lo = std::numeric_limits<double>::infinity(), im = 0;
  for (const auto& v : density.values) {
    lo = std::min(lo, v.real());
    im = std::max(im, std::abs(v.imag()));
  }
  return {std::move(density), lo, im, lo > 0};
}

}  // namespace

// ---------------------------------------------------------------------------
// Trigonometric polynomials

Complex TrigPolynomial::value(const RealVector& x) const {
  Complex s = 0;
  for (std::size_t t = 0; t < frequencies.size(); ++t) {
    double p = 0;
    for (std::size_t i = 0; i < dimension; ++i) p += frequencies[t][i] * x[i];
    p -= std::round(p);
    s += coefficients[t] * Complex(std::cos(two_pi * p), std::sin(two_pi * p));
  }
  return s;
}

std::vector<Complex> TrigPolynomial::gradient(const RealVector& x) const {
  std::vector<Complex> g(dimension);
  for (std::size_t t = 0; t < frequencies.size(); ++t) {
    double p = 0;
    for (std::size_t i = 0; i < dimension; ++i) p += frequencies[t][i] * x[i];
    p -= std::round(p);
    const Complex e = coefficients[t] * Complex(std::cos(two_pi * p), std::sin(two_pi * p));
    for (std::size_t a = 0; a < dimension; ++a)
      g[a] += Complex(0, two_pi * frequencies[t][a]) * e;
  }
  return g;
}

std::vector<Complex> TrigPolynomial::hessian(const RealVector& x) const {
  std::vector<Complex> h(dimension * dimension);
  for (std::size_t t = 0; t < frequencies.size(); ++t) {
    double p = 0;
    for (std::size_t i = 0; i < dimension; ++i) p += frequencies[t][i] * x[i];
    p -= std::round(p);
    const Complex e = coefficients[t] * Complex(std::cos(two_pi * p), std::sin(two_pi * p));
    for (std::size_t a = 0; a < dimension; ++a)
      for (std::size_t b = 0; b < dimension; ++b)
        h[a * dimension + b] -= two_pi * two_pi * frequencies[t][a] * frequencies[t][b] * e;
  }
  return h;
}

SmoothFunction TrigPolynomial::smooth() const {
  return {[p = *this](const RealVector& x) { return p.value(x); },
          [p = *this](const RealVector& x) { return p.gradient(x); },
          [p = *this](const RealVector& x) { return p.hessian(x); }};
}

GridFunction TrigPolynomial::sample(const TorusGrid& grid) const {
  if (grid.dimension() != dimension) throw DimensionError("polynomial and grid dimensions differ");
  return GridFunction(grid, map_grid(grid, true, [this](const RealVector& x) { return value(x); }));
}

void TrigPolynomial::require_on_grid(const TorusGrid& grid) const {
  if (grid.dimension() != dimension) throw DimensionError("polynomial and grid dimensions differ");
  if (frequencies.size() != coefficients.size())
    throw std::invalid_argument("frequency and coefficient counts differ");
  const double half = static_cast<double>(grid.points() / 2);
  for (const auto& u : frequencies) {
    if (u.size() != dimension) throw DimensionError("frequency dimension mismatch");
    for (double ui : u) {
      const double k = ui * grid.period();
      if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, std::abs(k)) ||
          std::abs(std::round(k)) >= half)
        throw std::invalid_argument("frequency is not a grid frequency");
    }
  }
}

// ---------------------------------------------------------------------------
// Applications

GridFunction apply_generator_fourier(const GridFunction& u, const SymbolHandle& psi) {
  return fourier_impl(u, psi, Backend{true});
}

Complex apply_generator_direct(const SmoothFunction& u, const LevyTriplet& triplet,
                               const RealVector& x) {
  if (triplet.has_density())
    throw std::invalid_argument("direct application needs a finite atomic measure");
  const std::size_t n = triplet.dimension();
  if (x.size() != n) throw DimensionError("point and triplet dimensions differ");
  if (!u.value) throw std::invalid_argument("function value missing");

  const auto atoms = direct_atoms(triplet);
  bool need_grad = std::any_of(atoms.begin(), atoms.end(), [](const auto& a) { return a.small; });
  for (double b : triplet.drift()) need_grad = need_grad || b != 0;
  bool need_hess = false;
  for (double q : triplet.covariance()) need_hess = need_hess || q != 0;

  auto derivative = [&](const auto& analytic, auto fallback, const char* what) {
    if (analytic) return analytic(x);
    if (!u.finite_difference_fallback)
      throw MissingDerivativeError(std::string(what) + " missing and finite differences disabled");
    return fallback(u, x);
  };

  const Complex u0 = u.value(x);
  Complex       out = 0;
  std::vector<Complex> grad;
  if (need_grad) {
    grad = derivative(u.gradient, fd_gradient, "gradient");
    for (std::size_t a = 0; a < n; ++a) out += triplet.drift()[a] * grad[a];
  }
  if (need_hess) {
    const auto hess = derivative(u.hessian, fd_hessian, "hessian");
    Complex    tr   = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) tr += triplet.covariance(a, b) * hess[b * n + a];
    out += 0.5 * tr;
  }
  for (const auto& a : atoms) {
    RealVector y = x;
    for (std::size_t i = 0; i < n; ++i) y[i] += a.location[i];
    Complex jump = u.value(y) - u0;
    if (a.small)
      for (std::size_t i = 0; i < n; ++i) jump -= a.location[i] * grad[i];
    out += a.mass * jump;
  }
  return out;
}

double crosscheck_applications(const TrigPolynomial& u, const LevyTriplet& triplet,
                               const TorusGrid& grid) {
  u.require_on_grid(grid);
  const auto psi     = SymbolHandle::from_triplet(triplet);
  const auto fourier = apply_generator_fourier(u.sample(grid), psi);
  const auto smooth  = u.smooth();
  const auto direct  = map_grid(grid, true, [&](const RealVector& x) {
    return apply_generator_direct(smooth, triplet, x);
  });
  double diff = 0;
  for (std::size_t i = 0; i < direct.size(); ++i)
    diff = std::max(diff, std::abs(fourier.values[i] - direct[i]));
  return diff / (1 + sup_abs(direct));
}

// ---------------------------------------------------------------------------
// Test bump and pairing

TestBump::TestBump(RealVector centre, double radius, double period)
    : centre_(std::move(centre)), radius_(radius), period_(period) {
  if (!(radius > 0) || !(period > 0)) throw std::invalid_argument("bump radius and period must be positive");
  if (2 * radius > period) throw std::invalid_argument("bump support exceeds the period");
}

RealVector TestBump::offset(const RealVector& x) const {
  if (x.size() != centre_.size()) throw DimensionError("point and bump dimensions differ");
  RealVector d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = x[i] - centre_[i];
    d[i]           = v - period_ * std::round(v / period_);
  }
  return d;
}

Complex TestBump::value(const RealVector& x) const {
  const auto d = offset(x);
  double     s = 0;
  for (double v : d) s += v * v;
  s /= radius_ * radius_;
  return s < 1 ? std::exp(1 - 1 / (1 - s)) : 0.0;
}

std::vector<Complex> TestBump::gradient(const RealVector& x) const {
  const auto d = offset(x);
  double     s = 0;
  for (double v : d) s += v * v;
  s /= radius_ * radius_;
  std::vector<Complex> g(d.size());
  if (s >= 1) return g;
  const double phi = std::exp(1 - 1 / (1 - s));
  const double h   = -1 / ((1 - s) * (1 - s));
  for (std::size_t i = 0; i < d.size(); ++i) g[i] = 2 / (radius_ * radius_) * phi * h * d[i];
  return g;
}

std::vector<Complex> TestBump::hessian(const RealVector& x) const {
  const auto        d = offset(x);
  const std::size_t n = d.size();
  const double      r2 = radius_ * radius_;
  double            s  = 0;
  for (double v : d) s += v * v;
  s /= r2;
  std::vector<Complex> H(n * n);
  if (s >= 1) return H;
  const double phi = std::exp(1 - 1 / (1 - s));
  const double h   = -1 / ((1 - s) * (1 - s));
  const double dh  = -2 / ((1 - s) * (1 - s) * (1 - s));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      H[i * n + j] = 2 / r2 * ((i == j ? phi * h : 0.0) + 2 / r2 * d[i] * d[j] * (phi * h * h + phi * dh));
  return H;
}

SmoothFunction TestBump::smooth() const {
  return {[b = *this](const RealVector& x) { return b.value(x); },
          [b = *this](const RealVector& x) { return b.gradient(x); },
          [b = *this](const RealVector& x) { return b.hessian(x); }};
}

Complex distributional_pairing(const GridFunction& f, const TestBump& phi,
                               const LevyTriplet& triplet) {
  require_matching(f, triplet);
  if (phi.centre().size() != triplet.dimension()) throw DimensionError("bump dimension mismatch");
  if (std::abs(phi.period() - f.grid.period()) > 1e-12 * f.grid.period())
    throw std::invalid_argument("bump period differs from the grid period");
  const auto conj   = triplet.conjugate();
  const auto smooth = phi.smooth();
  const auto lphi   = map_grid(f.grid, true, [&](const RealVector& x) {
    return apply_generator_direct(smooth, conj, x);
  });
  // Serial sum keeps the result independent of the thread count.
  Complex s = 0;
  for (std::size_t i = 0; i < lphi.size(); ++i) s += f.values[i] * lphi[i];
  return s * f.grid.cell_volume();
}

// ---------------------------------------------------------------------------
// Harmonic counterexamples

TrigPolynomial HarmonicCandidate::realization() const {
  TrigPolynomial p;
  p.dimension        = dimension;
  const double scale = std::pow(two_pi, -static_cast<double>(dimension));
  for (std::size_t t = 0; t < frequencies.size(); ++t) {
    p.frequencies.push_back(to_double(scaled(frequencies[t], Rational(-1))));
    p.coefficients.push_back(coefficients[t] * scale);
  }
  return p;
}

Rational HarmonicCandidate::least_period() const {
  Integer den = 1, num = 0;
  for (const auto& u : frequencies)
    for (const auto& q : u) {
      if (q == 0) continue;
      den = lcm(den, boost::multiprecision::denominator(q));
      num = gcd(num, abs(boost::multiprecision::numerator(q)));
    }
  return num == 0 ? Rational(1) : Rational(den, num);
}

HarmonicCandidate make_harmonic(const ClosedSubgroup& zero_set, std::uint64_t seed) {
  if (zero_set.is_trivial())
    throw NoCounterexample("no counterexample: the zero set is {0}, so the model is Liouville");
  if (!zero_set.lattice_basis().empty() && zero_set.scale() != Scale::TwoPi)
    throw std::invalid_argument("make_harmonic expects a zero set with lattice in 2*pi units");

  std::vector<RationalVector> gens = zero_set.lattice_basis();
  for (const auto& v : zero_set.subspace_basis()) gens.push_back(v);

  const std::size_t n     = zero_set.dimension();
  const double      scale = std::pow(two_pi, static_cast<double>(n));
  HarmonicCandidate c;
  c.dimension = n;
  auto add    = [&](const RationalVector& u, Complex coef) {
    c.frequencies.push_back(u);
    c.coefficients.push_back(coef * scale);
    if (!is_zero(u)) {
      c.frequencies.push_back(scaled(u, Rational(-1)));
      c.coefficients.push_back(std::conj(coef) * scale);
    }
  };

  if (seed == 0) {
    add(RationalVector(n, Rational(0)), 1.0);
    add(gens.front(), 0.5);
  } else {
    std::mt19937_64                        rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const auto                             a = gens[rng() % gens.size()];
    const auto first = scaled(a, Rational(static_cast<long>(1 + rng() % 2)));
    add(RationalVector(n, Rational(0)), coef(rng));
    add(first, {coef(rng), coef(rng)});
    if (rng() % 2 == 0) {
      RationalVector second = gens.size() > 1 ? axpy(1, first, gens[rng() % gens.size()])
                                              : scaled(first, Rational(2));
      if (is_zero(second) || second == first || scaled(second, Rational(-1)) == first)
        second = scaled(first, Rational(3));
      add(second, {coef(rng), coef(rng)});
    }
  }
  for (const auto& u : c.frequencies)
    if (!member(zero_set, u, Scale::TwoPi))
      throw std::logic_error("make_harmonic produced a frequency outside the zero set");
  return c;
}

TorusGrid harmonic_grid(const HarmonicCandidate& candidate, std::size_t min_points) {
  const Rational L    = candidate.least_period();
  Rational       maxk = 0;
  for (const auto& u : candidate.frequencies)
    for (const auto& q : u) maxk = std::max(maxk, abs(q * L));
  std::size_t N = 2;
  while (N < min_points || Rational(static_cast<long>(N / 2)) <= maxk) N *= 2;
  return TorusGrid(candidate.dimension, to_double(L), N);
}

HarmonicReport verify_harmonic(const TrigPolynomial& f, const LevyTriplet& triplet,
                               const TorusGrid& grid) {
  f.require_on_grid(grid);
  const auto psi     = SymbolHandle::from_triplet(triplet);
  const auto samples = f.sample(grid);
  const auto fourier = apply_generator_fourier(samples, psi);
  const auto smooth  = f.smooth();
  const auto direct  = map_grid(grid, true, [&](const RealVector& x) {
    return apply_generator_direct(smooth, triplet, x);
  });
  HarmonicReport r{};
  r.fourier_residual = fourier.sup_norm();
  r.direct_residual  = sup_abs(direct);
  r.norm             = samples.sup_norm();
  r.tolerance        = 1e-10 * (1 + r.norm);
  r.pass             = r.fourier_residual <= r.tolerance && r.direct_residual <= r.tolerance;
  return r;
}

HarmonicReport verify_harmonic(const HarmonicCandidate& candidate, const LevyTriplet& triplet,
                               const TorusGrid& grid) {
  return verify_harmonic(candidate.realization(), triplet, grid);
}

// ---------------------------------------------------------------------------
// Fixed points and densities

double resolvent_fixed_point(const GridFunction& f, const LevyTriplet& triplet, double tau) {
  return resolvent_impl(f, triplet, tau, Backend{true});
}

SemigroupCheck semigroup_fixed_point(const GridFunction& f, const LevyTriplet& triplet, double t) {
  return semigroup_impl(f, triplet, t, Backend{true});
}

DensityReport transition_density(const LevyTriplet& triplet, double t, const TorusGrid& grid) {
  return density_impl(triplet, t, grid, Backend{true});
}

namespace serial {

GridFunction apply_generator_fourier(const GridFunction& u, const SymbolHandle& psi) {
  return fourier_impl(u, psi, Backend{false});
}
double resolvent_fixed_point(const GridFunction& f, const LevyTriplet& triplet, double tau) {
  return resolvent_impl(f, triplet, tau, Backend{false});
}
SemigroupCheck semigroup_fixed_point(const GridFunction& f, const LevyTriplet& triplet, double t) {
  return semigroup_impl(f, triplet, t, Backend{false});
}
DensityReport transition_density(const LevyTriplet& triplet, double t, const TorusGrid& grid) {
  return density_impl(triplet, t, grid, Backend{false});
}

}  // namespace serial

}  // namespace levy

#include "levy/symbol.hpp"

#include "levy/bernstein.hpp"
#include "levy/detail/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace levy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dot(const RealVector& a, const RealVector& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const RealVector& a) { return dot(a, a); }

double quadratic_form(const std::vector<double>& q, const RealVector& x) {
  const std::size_t n = x.size();
  double            s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += x[i] * q[i * n + j] * x[j];
  return s;
}

void require_dimension(std::size_t expected, std::size_t got) {
  if (expected != got)
    throw DimensionError("frequency has dimension " + std::to_string(got) + ", symbol has " +
                         std::to_string(expected));
}

// sum_j a_j (1 - e^{i theta_j}) with the real part written as 2 sin^2(theta/2).
Complex jump_term(double mass, double theta) {
  const double s = std::sin(0.5 * theta);
  return {mass * 2.0 * s * s, -mass * std::sin(theta)};
}

double theta_minus_sin(double t) {
  if (std::abs(t) < 1e-3) {
    const double t2 = t * t;
    return t * t2 / 6.0 * (1.0 - t2 / 20.0);
  }
  return t - std::sin(t);
}

// w(x) * density(x) near the singularity at 0. tanh-sinh samples x so small
// that w underflows while the density overflows; w = O(x^2) makes the
// dropped piece below 1e-100 negligible for any Levy density.
template <class W, class D>
double damped(double x, W w, D density) {
  return x < 1e-100 ? 0.0 : w(x) * density(x);
}

struct DensityIntegral {
  Complex value;
  double  error;
};

DensityIntegral integrate_density(const DensityMeasure& m, double xi) {
  using boost::math::quadrature::gauss_kronrod;
  using boost::math::quadrature::tanh_sinh;
  const auto& f = m.density;
  double      err_total = 0;

  tanh_sinh<double> inner;
  double            err = 0, l1 = 0;
  std::size_t       levels = 0;
  const double      re_in = inner.integrate(
      [&](double x) {
        return damped(
            x, [&](double y) { const double s = std::sin(0.5 * y * xi); return 2.0 * s * s; },
            [&](double y) { return f(y) + f(-y); });
      },
      0.0, 1.0, m.tolerance, &err, &l1, &levels);
  err_total += err;
  const double im_in = inner.integrate(
      [&](double x) {
        return damped(
            x, [&](double y) { return theta_minus_sin(y * xi); }, [&](double y) { return f(y) - f(-y); });
      },
      0.0, 1.0,
      m.tolerance, &err, &l1, &levels);
  err_total += err;

  double re_out = 0, im_out = 0;
  const double radius = m.tail_radius;
  if (radius > 1.0) {
    const double span = radius - 1.0;
    const auto   pieces =
        static_cast<int>(std::clamp(std::ceil(span * std::abs(xi) / kTwoPi), 1.0, 4096.0));
    const double h = span / pieces;
    for (int p = 0; p < pieces; ++p) {
      const double a = 1.0 + p * h, b = a + h;
      double       e = 0;
      re_out += gauss_kronrod<double, 31>::integrate(
          [&](double x) {
            const double s = std::sin(0.5 * x * xi);
            return 2.0 * s * s * (f(x) + f(-x));
          },
          a, b, static_cast<unsigned>(m.depth), m.tolerance, &e);
      err_total += e;
      im_out -= gauss_kronrod<double, 31>::integrate(
          [&](double x) { return std::sin(x * xi) * (f(x) - f(-x)); }, a, b,
          static_cast<unsigned>(m.depth), m.tolerance, &e);
      err_total += e;
    }
  }
  return {{re_in + re_out, im_in + im_out}, err_total};
}

double density_mass_between(const DensityMeasure& m, double lo, double hi) {
  if (hi <= lo) return 0;
  double e = 0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double x) { return m.density(x) + m.density(-x); }, lo, hi,
      static_cast<unsigned>(m.depth), m.tolerance, &e);
}

SymbolValue eval_triplet_detailed(const LevyTriplet& t, const RealVector& xi) {
  require_dimension(t.dimension(), xi.size());
  if (const auto* d = std::get_if<DensityMeasure>(&t.measure())) {
    const auto   integral = integrate_density(*d, xi[0]);
    const double base_re  = 0.5 * quadratic_form(t.covariance(), xi);
    const double base_im  = -dot(t.drift(), xi);
    SymbolValue  out{Complex(base_re, base_im) + integral.value, integral.error,
                    2.0 * d->tail_mass};
    if (!(integral.error <= 100.0 * d->tolerance * (1.0 + std::abs(out.value))))
      throw QuadratureError("density quadrature did not converge (error estimate " +
                                std::to_string(integral.error) + ")",
                            integral.error);
    return out;
  }
  return {eval_triplet(t, xi), 0.0, 0.0};
}

Complex eval_closed_form(const ClosedForm& cf, const RealVector& xi) {
  return std::visit(
      [&](const auto& f) -> Complex {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, IsotropicStable>) {
          return {f.scale * std::pow(std::sqrt(norm2(xi)), f.alpha), 0.0};
        } else if constexpr (std::is_same_v<T, BrownianWithDrift>) {
          return {0.5 * quadratic_form(f.covariance, xi), -dot(f.drift, xi)};
        } else {
          return {0.0, -dot(f.drift, xi)};
        }
      },
      cf);
}

Complex clamp_right_halfplane(Complex z) {
  if (z.real() < 0 && z.real() > -1e-12 * (1.0 + std::abs(z))) return {0.0, z.imag()};
  return z;
}

}  // namespace

// ---------------------------------------------------------------------------
// LevyTriplet

LevyTriplet::LevyTriplet(RealVector drift, std::vector<double> covariance_row_major,
                         LevyMeasure measure)
    : drift_(std::move(drift)),
      covariance_(std::move(covariance_row_major)),
      measure_(std::move(measure)) {
  finish();
}

LevyTriplet LevyTriplet::from_exact(ExactTriplet exact) {
  const std::size_t n = exact.drift.size();
  if (exact.covariance.rows() != n || exact.covariance.cols() != n)
    throw DimensionError("covariance must be n x n");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational s             = (exact.covariance(i, j) + exact.covariance(j, i)) / 2;
      exact.covariance(i, j) = s;
      exact.covariance(j, i) = s;
    }
  LevyTriplet t;
  t.drift_ = to_double(exact.drift);
  t.covariance_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t.covariance_[i * n + j] = to_double(exact.covariance(i, j));
  if (exact.atoms.empty()) {
    t.measure_ = NullMeasure{};
  } else {
    std::vector<Atom> atoms;
    for (const auto& a : exact.atoms) atoms.push_back({to_double(a.mass), to_double(a.location)});
    t.measure_ = std::move(atoms);
  }
  t.exact_ = std::move(exact);
  t.finish();
  return t;
}

void LevyTriplet::finish() {
  const std::size_t n = drift_.size();
  if (covariance_.size() != n * n)
    throw DimensionError("covariance has " + std::to_string(covariance_.size()) +
                         " entries, expected " + std::to_string(n * n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s          = 0.5 * (covariance_[i * n + j] + covariance_[j * n + i]);
      covariance_[i * n + j] = s;
      covariance_[j * n + i] = s;
    }
  effective_drift_ = drift_;
  if (exact_) {
    RationalVector b = exact_->drift;
    for (const auto& a : exact_->atoms)
      if (a.location.size() == n && dot(a.location, a.location) < 1)
        b = axpy(-a.mass, a.location, std::move(b));
    effective_drift_ = to_double(b);
  } else if (const auto* atoms = std::get_if<std::vector<Atom>>(&measure_)) {
    for (const auto& a : *atoms)
      if (a.location.size() == n && norm2(a.location) < 1.0)
        for (std::size_t i = 0; i < n; ++i) effective_drift_[i] -= a.mass * a.location[i];
  }
}

const std::vector<Atom>& LevyTriplet::atoms() const {
  static const std::vector<Atom> empty;
  if (std::holds_alternative<NullMeasure>(measure_)) return empty;
  if (const auto* a = std::get_if<std::vector<Atom>>(&measure_)) return *a;
  throw std::logic_error("atoms(): measure is a density");
}

LevyTriplet LevyTriplet::conjugate() const {
  if (exact_) {
    ExactTriplet e = *exact_;
    for (auto& q : e.drift) q = -q;
    for (auto& a : e.atoms)
      for (auto& q : a.location) q = -q;
    return from_exact(std::move(e));
  }
  RealVector b = drift_;
  for (auto& x : b) x = -x;
  LevyMeasure m = measure_;
  if (auto* atoms = std::get_if<std::vector<Atom>>(&m)) {
    for (auto& a : *atoms)
      for (auto& x : a.location) x = -x;
  } else if (auto* d = std::get_if<DensityMeasure>(&m)) {
    auto f     = d->density;
    d->density = [f](double x) { return f(-x); };
  }
  return LevyTriplet(std::move(b), covariance_, std::move(m));
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::ok() const {
  return std::all_of(items.begin(), items.end(), [](const auto& i) { return i.passed; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& i : items) {
    os << (i.passed ? "pass " : "FAIL ") << i.invariant;
    if (!i.detail.empty()) os << ": " << i.detail;
    os << "\n";
  }
  return os.str();
}

ValidationReport validate_triplet(const LevyTriplet& t) {
  ValidationReport  r;
  const std::size_t n = t.dimension();
  r.items.push_back({"dimension", n > 0, n > 0 ? "" : "empty drift vector"});

  bool finite = std::all_of(t.drift().begin(), t.drift().end(), [](double x) { return std::isfinite(x); }) &&
                std::all_of(t.covariance().begin(), t.covariance().end(),
                            [](double x) { return std::isfinite(x); });
  r.items.push_back({"finite coefficients", finite, finite ? "" : "non-finite drift or covariance"});

  // Positive semidefinite covariance.
  if (n > 0 && finite) {
    Eigen::MatrixXd q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t.covariance(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q, Eigen::EigenvaluesOnly);
    const double lo   = es.eigenvalues().minCoeff();
    const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
    const bool   psd  = lo >= -1e-12 * norm;
    std::ostringstream d;
    if (!psd) d << "not positive semidefinite (eigenvalue " << lo << ")";
    r.items.push_back({"covariance positive semidefinite", psd, d.str()});
  }

  if (const auto* atoms = std::get_if<std::vector<Atom>>(&t.measure())) {
    std::string bad_dim, bad_mass, bad_loc;
    for (std::size_t j = 0; j < atoms->size(); ++j) {
      const auto& a = (*atoms)[j];
      if (a.location.size() != n) bad_dim += " atom[" + std::to_string(j) + "]";
      if (!(a.mass > 0) || !std::isfinite(a.mass))
        bad_mass += " atom[" + std::to_string(j) + "] mass " + std::to_string(a.mass);
      if (a.location.size() == n && norm2(a.location) == 0.0) bad_loc += " atom[" + std::to_string(j) + "]";
    }
    if (t.exact())
      for (std::size_t j = 0; j < t.exact()->atoms.size(); ++j)
        if (t.exact()->atoms[j].mass <= 0 && bad_mass.find("atom[" + std::to_string(j) + "]") == std::string::npos)
          bad_mass += " atom[" + std::to_string(j) + "]";
    r.items.push_back({"atom dimensions", bad_dim.empty(), bad_dim.empty() ? "" : "wrong dimension:" + bad_dim});
    r.items.push_back({"atom masses positive", bad_mass.empty(),
                       bad_mass.empty() ? "" : "nonpositive mass:" + bad_mass});
    r.items.push_back({"atom locations nonzero", bad_loc.empty(),
                       bad_loc.empty() ? "" : "atom at the origin:" + bad_loc});
    bool distinct = true;
    if (t.exact()) {
      std::set<std::string> seen;
      for (const auto& a : t.exact()->atoms) distinct &= seen.insert(to_string(a.location)).second;
    } else {
      std::set<RealVector> seen;
      for (const auto& a : *atoms) distinct &= seen.insert(a.location).second;
    }
    r.items.push_back({"atom locations distinct", distinct, distinct ? "" : "repeated atom location"});
    r.items.push_back({"Levy integrability", true, "finite atom list"});
  } else if (const auto* d = std::get_if<DensityMeasure>(&t.measure())) {
    const bool one_d = n == 1;
    r.items.push_back({"density dimension", one_d,
                       one_d ? "" : "density measures are supported in dimension 1 only"});
    bool ok = static_cast<bool>(d->density) && d->tail_radius >= 1.0 &&
              std::isfinite(d->tail_mass) && d->tail_mass >= 0;
    std::string detail;
    if (ok) {
      try {
        boost::math::quadrature::tanh_sinh<double> ts;
        const double inner = ts.integrate(
            [&](double x) {
              return damped(
                  x, [](double y) { return y * y; }, [&](double y) { return d->density(y) + d->density(-y); });
            },
            0.0, 1.0);
        const double outer = density_mass_between(*d, 1.0, d->tail_radius);
        ok                 = std::isfinite(inner) && std::isfinite(outer);
        std::ostringstream os;
        os << "int min(x^2,1) nu(dx) ~ " << inner + outer + d->tail_mass
           << ", tail mass beyond R=" << d->tail_radius << " is " << d->tail_mass;
        detail = os.str();
      } catch (const std::exception& e) {
        ok     = false;
        detail = e.what();
      }
    } else {
      detail = "density missing, R < 1, or invalid tail mass";
    }
    r.items.push_back({"Levy integrability", ok, detail});
  }
  return r;
}

// ---------------------------------------------------------------------------
// SymbolHandle

SymbolHandle::SymbolHandle(Source s, std::size_t n) : source_(std::move(s)), dimension_(n) {
  if (dimension_ == 0) throw DimensionError("symbol dimension must be positive");
  const RealVector zero(dimension_, 0.0);
  if (eval_symbol(*this, zero) != Complex(0.0, 0.0))
    throw std::logic_error("symbol does not vanish at the origin");
}

SymbolHandle SymbolHandle::from_triplet(LevyTriplet triplet) {
  auto report = validate_triplet(triplet);
  if (!report.ok()) throw std::invalid_argument("invalid Levy triplet:\n" + report.summary());
  const auto n = triplet.dimension();
  return SymbolHandle(std::move(triplet), n);
}

SymbolHandle SymbolHandle::stable(std::size_t dimension, double alpha, double scale) {
  if (!(alpha > 0 && alpha <= 2)) throw std::invalid_argument("stable index must lie in (0, 2]");
  if (!(scale > 0)) throw std::invalid_argument("stable scale must be positive");
  return SymbolHandle(ClosedForm{IsotropicStable{dimension, alpha, scale}}, dimension);
}

SymbolHandle SymbolHandle::brownian(RealVector drift, std::vector<double> covariance) {
  LevyTriplet check(drift, covariance, NullMeasure{});
  auto        report = validate_triplet(check);
  if (!report.ok()) throw std::invalid_argument("invalid Brownian symbol:\n" + report.summary());
  const auto n = drift.size();
  return SymbolHandle(ClosedForm{BrownianWithDrift{std::move(drift), check.covariance()}}, n);
}

SymbolHandle SymbolHandle::pure_drift(RealVector drift) {
  const auto n = drift.size();
  return SymbolHandle(ClosedForm{PureDrift{std::move(drift)}}, n);
}

SymbolHandle SymbolHandle::subordinate(const BernsteinFunction& g, const SymbolHandle& inner) {
  return SymbolHandle(Subordinated{std::make_shared<const BernsteinFunction>(g),
                                   std::make_shared<const SymbolHandle>(inner)},
                      inner.dimension());
}

std::optional<LevyTriplet> SymbolHandle::triplet() const {
  if (const auto* t = std::get_if<LevyTriplet>(&source_)) return *t;
  if (const auto* cf = std::get_if<ClosedForm>(&source_)) {
    if (const auto* b = std::get_if<BrownianWithDrift>(cf))
      return LevyTriplet(b->drift, b->covariance, NullMeasure{});
    if (const auto* d = std::get_if<PureDrift>(cf))
      return LevyTriplet(d->drift, std::vector<double>(d->drift.size() * d->drift.size(), 0.0),
                         NullMeasure{});
  }
  return std::nullopt;
}

std::string SymbolHandle::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LevyTriplet>) {
          os << "triplet (n=" << s.dimension() << (s.is_exact() ? ", exact" : "") << ")";
        } else if constexpr (std::is_same_v<T, ClosedForm>) {
          std::visit(
              [&](const auto& f) {
                using F = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<F, IsotropicStable>)
                  os << "isotropic stable alpha=" << f.alpha << " scale=" << f.scale;
                else if constexpr (std::is_same_v<F, BrownianWithDrift>)
                  os << "Brownian motion with drift";
                else
                  os << "pure drift";
              },
              s);
        } else {
          os << s.outer->describe() << " o [" << s.inner->describe() << "]";
        }
      },
      source_);
  return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation

Complex eval_triplet(const LevyTriplet& t, const RealVector& xi) {
  require_dimension(t.dimension(), xi.size());
  if (t.has_density()) return eval_triplet_detailed(t, xi).value;
  double re = 0.5 * quadratic_form(t.covariance(), xi);
  double im = -dot(t.effective_drift(), xi);
  Complex s(re, im);
  for (const auto& a : t.atoms()) s += jump_term(a.mass, dot(a.location, xi));
  return s;
}

Complex eval_triplet_turns(const LevyTriplet& t, const RealVector& u) {
  require_dimension(t.dimension(), u.size());
  if (t.has_density()) {
    RealVector xi = u;
    for (auto& x : xi) x *= kTwoPi;
    return eval_triplet(t, xi);
  }
  double  re = 0.5 * kTwoPi * kTwoPi * quadratic_form(t.covariance(), u);
  double  im = -kTwoPi * dot(t.effective_drift(), u);
  Complex s(re, im);
  for (const auto& a : t.atoms()) {
    const double turns = dot(a.location, u);
    const double r     = turns - std::nearbyint(turns);
    s += jump_term(a.mass, kTwoPi * r);
  }
  return s;
}

Complex eval_symbol(const SymbolHandle& symbol, const RealVector& xi) {
  require_dimension(symbol.dimension(), xi.size());
  return std::visit(
      [&](const auto& s) -> Complex {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LevyTriplet>) {
          return eval_triplet(s, xi);
        } else if constexpr (std::is_same_v<T, ClosedForm>) {
          return eval_closed_form(s, xi);
        } else {
          return eval_halfplane(*s.outer, clamp_right_halfplane(eval_symbol(*s.inner, xi)));
        }
      },
      symbol.source());
}

Complex eval_symbol_turns(const SymbolHandle& symbol, const RealVector& u) {
  require_dimension(symbol.dimension(), u.size());
  return std::visit(
      [&](const auto& s) -> Complex {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LevyTriplet>) {
          return eval_triplet_turns(s, u);
        } else if constexpr (std::is_same_v<T, ClosedForm>) {
          RealVector xi = u;
          for (auto& x : xi) x *= kTwoPi;
          return eval_closed_form(s, xi);
        } else {
          return eval_halfplane(*s.outer, clamp_right_halfplane(eval_symbol_turns(*s.inner, u)));
        }
      },
      symbol.source());
}

SymbolValue eval_symbol_detailed(const SymbolHandle& symbol, const RealVector& xi) {
  if (const auto* t = std::get_if<LevyTriplet>(&symbol.source()))
    return eval_triplet_detailed(*t, xi);
  return {eval_symbol(symbol, xi), 0.0, 0.0};
}

std::vector<Complex> eval_symbol_grid(const SymbolHandle& symbol, const TorusGrid& grid) {
  require_dimension(symbol.dimension(), grid.dimension());
  std::vector<Complex>  out(grid.size());
  detail::ExceptionSlot slot;
  const long            count = detail::as_loop_bound(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) {
    slot.run([&] {
      const auto k = static_cast<std::size_t>(i);
      out[k]       = eval_symbol_turns(symbol, grid.frequency_turns(k));
    });
  }
  slot.rethrow();
  return out;
}

namespace serial {
std::vector<Complex> eval_symbol_grid(const SymbolHandle& symbol, const TorusGrid& grid) {
  require_dimension(symbol.dimension(), grid.dimension());
  std::vector<Complex> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    out[k] = eval_symbol_turns(symbol, grid.frequency_turns(k));
  return out;
}
}  // namespace serial

// ---------------------------------------------------------------------------
// Truncation and bounded reduction

TruncatedTriplet truncate_measure(const LevyTriplet& triplet, double radius) {
  if (!(radius >= 1.0))
    throw std::invalid_argument("truncation radius must be >= 1 (compensator region must stay intact)");
  if (std::holds_alternative<NullMeasure>(triplet.measure())) return {triplet, 0.0};

  if (const auto* d = std::get_if<DensityMeasure>(&triplet.measure())) {
    DensityMeasure cut = *d;
    if (radius < d->tail_radius) {
      cut.tail_mass   = d->tail_mass + density_mass_between(*d, radius, d->tail_radius);
      cut.tail_radius = radius;
    }
    return {LevyTriplet(triplet.drift(), triplet.covariance(), cut), 2.0 * cut.tail_mass};
  }

  if (triplet.exact()) {
    const Rational r2 = Rational(radius) * Rational(radius);
    ExactTriplet   kept{triplet.exact()->drift, triplet.exact()->covariance, {}};
    Rational       removed = 0;
    for (const auto& a : triplet.exact()->atoms) {
      if (dot(a.location, a.location) < r2)
        kept.atoms.push_back(a);
      else
        removed += a.mass;
    }
    return {LevyTriplet::from_exact(std::move(kept)), 2.0 * to_double(removed)};
  }

  std::vector<Atom> kept;
  double            removed = 0;
  for (const auto& a : triplet.atoms()) {
    if (norm2(a.location) < radius * radius)
      kept.push_back(a);
    else
      removed += a.mass;
  }
  LevyMeasure m = kept.empty() ? LevyMeasure{NullMeasure{}} : LevyMeasure{std::move(kept)};
  return {LevyTriplet(triplet.drift(), triplet.covariance(), std::move(m)), 2.0 * removed};
}

BoundedReduction bounded_reduction(const LevyTriplet& t) {
  BoundedReduction out;
  if (t.has_density()) {
    out.violated = "measure is a density (only finite atom lists reduce)";
    return out;
  }
  bool q_zero = true, drift_zero = true;
  if (t.exact()) {
    const auto& e = *t.exact();
    for (std::size_t i = 0; i < e.covariance.rows(); ++i)
      for (std::size_t j = 0; j < e.covariance.cols(); ++j) q_zero &= e.covariance(i, j) == 0;
    RationalVector b = e.drift;
    for (const auto& a : e.atoms)
      if (dot(a.location, a.location) < 1) b = axpy(-a.mass, a.location, std::move(b));
    drift_zero = is_zero(b);
  } else {
    q_zero     = std::all_of(t.covariance().begin(), t.covariance().end(), [](double x) { return x == 0.0; });
    drift_zero = std::all_of(t.effective_drift().begin(), t.effective_drift().end(),
                             [](double x) { return x == 0.0; });
  }
  out.drift_cancels = drift_zero;
  if (!q_zero) {
    out.violated = "Q != 0 (Gaussian part present)";
    return out;
  }
  if (!drift_zero) {
    out.violated = "effective drift b - sum_{|b_j|<1} a_j b_j is nonzero";
    return out;
  }
  out.measure = t.atoms();
  return out;
}

}  // namespace levy

#include "levy/bernstein.hpp"

#include "levy/detail/complex_math.hpp"
#include "levy/zero_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace levy {

namespace {

Complex one_minus_exp_neg(Complex w) { return -detail::expm1(-w); }

// log(1 + z), accurate near z = 0.
Complex log1p_complex(Complex z) {
  const Complex u = 1.0 + z;
  if (u == 1.0) return z;
  return std::log(u) * z / (u - 1.0);
}

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

BernsteinFunction BernsteinFunction::power(double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("Power exponent must lie in (0, 1)");
  BernsteinFunction g;
  g.family_    = BernsteinFamily::Power;
  g.parameter_ = alpha;
  return g;
}

BernsteinFunction BernsteinFunction::log() {
  BernsteinFunction g;
  g.family_ = BernsteinFamily::Log;
  return g;
}

BernsteinFunction BernsteinFunction::resolvent(double tau) {
  require_positive(tau, "resolvent tau");
  BernsteinFunction g;
  g.family_    = BernsteinFamily::Resolvent;
  g.parameter_ = tau;
  return g;
}

BernsteinFunction BernsteinFunction::semigroup_complement(double t) {
  require_positive(t, "semigroup time t");
  BernsteinFunction g;
  g.family_    = BernsteinFamily::SemigroupComplement;
  g.parameter_ = t;
  g.atoms_     = {{1.0, t}};
  return g;
}

BernsteinFunction BernsteinFunction::semigroup_complement(const Rational& t) {
  auto g             = semigroup_complement(to_double(t));
  g.exact_locations_ = std::vector<Rational>{t};
  return g;
}

BernsteinFunction BernsteinFunction::linear(double a) {
  require_positive(a, "linear coefficient");
  BernsteinFunction g;
  g.family_ = BernsteinFamily::Linear;
  g.a_      = a;
  return g;
}

BernsteinFunction BernsteinFunction::custom(double a, std::vector<BernsteinAtom> atoms) {
  if (!(a >= 0) || !std::isfinite(a)) throw std::invalid_argument("linear coefficient must be >= 0");
  for (const auto& at : atoms) {
    require_positive(at.mass, "Bernstein atom mass");
    require_positive(at.location, "Bernstein atom location");
  }
  if (a == 0 && atoms.empty()) throw std::invalid_argument("Bernstein function is identically zero");
  BernsteinFunction g;
  g.family_ = BernsteinFamily::Custom;
  g.a_      = a;
  g.atoms_  = std::move(atoms);
  return g;
}

BernsteinFunction BernsteinFunction::custom(double a, std::vector<std::pair<double, Rational>> atoms) {
  std::vector<BernsteinAtom> numeric;
  std::vector<Rational>      exact;
  for (const auto& [m, s] : atoms) {
    numeric.push_back({m, to_double(s)});
    exact.push_back(s);
  }
  auto g             = custom(a, std::move(numeric));
  g.exact_locations_ = std::move(exact);
  return g;
}

bool BernsteinFunction::continuous_measure() const noexcept {
  return family_ == BernsteinFamily::Power || family_ == BernsteinFamily::Log ||
         family_ == BernsteinFamily::Resolvent;
}

std::string BernsteinFunction::describe() const {
  std::ostringstream os;
  switch (family_) {
    case BernsteinFamily::Power: os << "lambda^" << parameter_; break;
    case BernsteinFamily::Log: os << "log(1+lambda)"; break;
    case BernsteinFamily::Resolvent: os << "lambda/(" << parameter_ << "+lambda)"; break;
    case BernsteinFamily::SemigroupComplement: os << "1-exp(-" << parameter_ << " lambda)"; break;
    case BernsteinFamily::Linear: os << a_ << " lambda"; break;
    case BernsteinFamily::Custom:
      os << a_ << " lambda";
      for (const auto& at : atoms_) os << " + " << at.mass << "(1-exp(-" << at.location << " lambda))";
      break;
  }
  return os.str();
}

double eval_bernstein(const BernsteinFunction& g, double lambda) {
  if (!(lambda >= 0)) throw std::domain_error("Bernstein functions are evaluated at lambda >= 0");
  switch (g.family()) {
    case BernsteinFamily::Power: return std::pow(lambda, g.parameter());
    case BernsteinFamily::Log: return std::log1p(lambda);
    case BernsteinFamily::Resolvent: return lambda / (g.parameter() + lambda);
    case BernsteinFamily::SemigroupComplement: return -std::expm1(-lambda * g.parameter());
    case BernsteinFamily::Linear: return g.linear_coefficient() * lambda;
    case BernsteinFamily::Custom: {
      double s = g.linear_coefficient() * lambda;
      for (const auto& at : g.atoms()) s += at.mass * -std::expm1(-lambda * at.location);
      return s;
    }
  }
  return 0;
}

Complex eval_halfplane(const BernsteinFunction& g, Complex zeta) {
  if (zeta.real() < 0) throw std::domain_error("zeta must lie in the closed right half-plane");
  if (zeta == Complex(0.0, 0.0)) return {0.0, 0.0};
  switch (g.family()) {
    case BernsteinFamily::Power: return std::exp(g.parameter() * std::log(zeta));
    case BernsteinFamily::Log: return log1p_complex(zeta);
    case BernsteinFamily::Resolvent: return zeta / (g.parameter() + zeta);
    case BernsteinFamily::SemigroupComplement: return one_minus_exp_neg(zeta * g.parameter());
    case BernsteinFamily::Linear: return g.linear_coefficient() * zeta;
    case BernsteinFamily::Custom: {
      Complex s = g.linear_coefficient() * zeta;
      for (const auto& at : g.atoms()) s += at.mass * one_minus_exp_neg(zeta * at.location);
      return s;
    }
  }
  return {};
}

HalfplaneZeros halfplane_zero_classification(const BernsteinFunction& g, double scan_halfwidth,
                                             double scan_step) {
  using Kind = HalfplaneZeros::Kind;
  if (g.linear_coefficient() > 0 || g.continuous_measure() || g.atoms().empty())
    return {Kind::OnlyZeroAtOrigin, std::nullopt, {}};

  // a = 0 and pi atomic: zeros are i*eta with eta*s_k in 2*pi*Z for every atom.
  if (g.exact_locations()) {
    std::vector<RationalVector> rows;
    for (const auto& s : *g.exact_locations()) rows.push_back({s});
    auto lattice = lattice_preimage(rows, {{Rational(1)}}, 1);
    if (lattice.is_trivial()) return {Kind::OnlyZeroAtOrigin, std::nullopt, {}};
    return {Kind::ImaginaryAxisLattice, std::move(lattice), {}};
  }

  if (!(scan_step > 0) || !(scan_halfwidth > 0))
    throw std::invalid_argument("scan step and half-width must be positive");
  HalfplaneZeros out{Kind::Heuristic, std::nullopt, {}};
  const auto     count = static_cast<long>(std::floor(2 * scan_halfwidth / scan_step)) + 1;
  std::vector<double> v(static_cast<std::size_t>(count));
  auto eta_at = [&](long i) { return -scan_halfwidth + scan_step * static_cast<double>(i); };
  for (long i = 0; i < count; ++i)
    v[static_cast<std::size_t>(i)] = std::abs(eval_halfplane(g, {0.0, eta_at(i)}));
  for (long i = 1; i + 1 < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!(v[k] <= v[k - 1] && v[k] <= v[k + 1])) continue;
    // Golden-section refinement on the bracketing cells.
    double a = eta_at(i - 1), b = eta_at(i + 1);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
      const double c = b - phi * (b - a), d = a + phi * (b - a);
      if (std::abs(eval_halfplane(g, {0.0, c})) < std::abs(eval_halfplane(g, {0.0, d})))
        b = d;
      else
        a = c;
    }
    const double eta = 0.5 * (a + b);
    if (std::abs(eta) <= 10 * scan_step) continue;
    const double r = std::abs(eval_halfplane(g, {0.0, eta}));
    if (r < 1e-3) out.evidence.emplace_back(eta, r);
  }
  return out;
}

SymbolHandle subordinate_symbol(const BernsteinFunction& g, const SymbolHandle& psi) {
  return SymbolHandle::subordinate(g, psi);
}

Corollary1Check corollary1_equivalence_check(const BernsteinFunction& g,
                                             const LevyTriplet&       triplet,
                                             const Corollary1Options& options) {
  Corollary1Check out{};
  out.condition_met =
      halfplane_zero_classification(g).kind == HalfplaneZeros::Kind::OnlyZeroAtOrigin;

  const auto zero_set  = zero_set_exact(triplet);
  const auto psi       = SymbolHandle::from_triplet(triplet);
  const auto composite = subordinate_symbol(g, psi);
  const std::size_t n  = triplet.dimension();

  // Exact zeros: generators, their negatives, pairwise sums (in turns).
  std::vector<RationalVector> zeros;
  for (const auto& v : zero_set.lattice_basis()) zeros.push_back(v);
  for (const auto& v : zero_set.subspace_basis()) zeros.push_back(v);
  const std::size_t base = zeros.size();
  for (std::size_t i = 0; i < base; ++i) {
    zeros.push_back(scaled(zeros[i], Rational(-1)));
    for (std::size_t j = i + 1; j < base; ++j) zeros.push_back(axpy(1, zeros[i], zeros[j]));
  }
  out.max_residual_on_zero_set = 0;
  for (const auto& z : zeros)
    out.max_residual_on_zero_set =
        std::max(out.max_residual_on_zero_set, std::abs(eval_symbol_turns(composite, to_double(z))));

  // Non-zeros: half generators of the lattice part.
  out.min_residual_off_zero_set = std::numeric_limits<double>::infinity();
  for (const auto& v : zero_set.lattice_basis()) {
    const auto half = scaled(v, Rational(1, 2));
    out.min_residual_off_zero_set = std::min(
        out.min_residual_off_zero_set, std::abs(eval_symbol_turns(composite, to_double(half))));
  }

  // Numeric zeros of g o psi must lie in {psi = 0}.
  const auto scan = zero_scan_numeric(
      composite, ScanOptions{options.scan_halfwidth, options.scan_step, 1'000'000, 1e-14});
  std::size_t stray = 0;
  for (const auto& c : scan.candidates) {
    if (c.residual > options.residual_tolerance) continue;
    if (distance_to_group(zero_set, c.location) > 1e-6) ++stray;
  }

  const bool on_ok  = out.max_residual_on_zero_set <= options.residual_tolerance;
  const bool off_ok = zero_set.lattice_basis().empty() ||
                      out.min_residual_off_zero_set > options.residual_tolerance;
  out.zero_sets_equal = on_ok && off_ok && stray == 0;
  std::ostringstream os;
  os << "zero set " << zero_set.to_string() << "; max |g(psi)| on zeros "
     << out.max_residual_on_zero_set << "; min |g(psi)| at half-generators "
     << out.min_residual_off_zero_set << "; numeric zeros outside the group: " << stray
     << " (dimension " << n << ")";
  out.detail = os.str();
  return out;
}

}  // namespace levy

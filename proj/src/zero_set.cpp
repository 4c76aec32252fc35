#include "levy/zero_set.hpp"

#include "levy/detail/parallel.hpp"
#include "levy/exact_linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace levy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const ExactTriplet& require_exact(const LevyTriplet& t) {
  if (t.has_density()) throw NotExactError("exact zero-set analysis needs a finite atom list");
  if (!t.exact())
    throw NotExactError("exact zero-set analysis needs rational drift, covariance and atoms");
  return *t.exact();
}

double norm(const RealVector& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Magnitude of the individual terms of psi at xi, used to scale residual tolerances.
double local_scale(const LevyTriplet& t, const RealVector& xi) {
  const double r = norm(xi);
  double       q = 0;
  for (double x : t.covariance()) q = std::max(q, std::abs(x));
  double s = norm(t.effective_drift()) * r + 0.5 * q * static_cast<double>(t.dimension()) * r * r;
  for (const auto& a : t.atoms()) s += a.mass;
  return s;
}

RationalVector exact_from_double(const RealVector& v) {
  RationalVector out;
  for (double x : v) out.emplace_back(x);
  return out;
}

// --- numeric scan ----------------------------------------------------------

struct Polished {
  RealVector x;
  double     residual;
};

Polished polish(const SymbolHandle& symbol, RealVector x, double tol) {
  const std::size_t n = x.size();
  auto              residual_vec = [&](const RealVector& p) {
    const Complex z = eval_symbol(symbol, p);
    return Eigen::Vector2d(z.real(), z.imag());
  };
  Eigen::Vector2d r    = residual_vec(x);
  double          cost = r.squaredNorm();
  double          mu   = 1e-3;
  for (int it = 0; it < 200 && std::sqrt(cost) > tol; ++it) {
    Eigen::MatrixXd j(2, static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
      const double h  = 1e-7 * std::max(1.0, std::abs(x[k]));
      RealVector   xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      j.col(static_cast<Eigen::Index>(k)) = (residual_vec(xp) - residual_vec(xm)) / (2 * h);
    }
    const Eigen::MatrixXd jtj = j.transpose() * j;
    const Eigen::VectorXd g   = j.transpose() * r;
    bool                  improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::MatrixXd a = jtj;
      a.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd delta = a.ldlt().solve(-g);
      RealVector            xn    = x;
      for (std::size_t k = 0; k < n; ++k) xn[k] += delta(static_cast<Eigen::Index>(k));
      const Eigen::Vector2d rn = residual_vec(xn);
      if (rn.squaredNorm() < cost) {
        x        = std::move(xn);
        r        = rn;
        cost     = rn.squaredNorm();
        mu       = std::max(mu / 10.0, 1e-15);
        improved = true;
        break;
      }
      mu *= 10.0;
    }
    if (!improved) break;
  }
  return {std::move(x), std::sqrt(cost)};
}

ScanResult scan_impl(const SymbolHandle& symbol, const ScanOptions& opt, bool parallel) {
  if (!(opt.step > 0) || !(opt.halfwidth > 0))
    throw std::invalid_argument("scan step and half-width must be positive");
  const std::size_t n     = symbol.dimension();
  const double      width = 2.0 * opt.halfwidth;
  auto              per_axis = static_cast<std::size_t>(std::floor(width / opt.step)) + 1;
  const auto        cap =
      static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(opt.max_points), 1.0 / static_cast<double>(n))));
  per_axis        = std::max<std::size_t>(3, std::min(per_axis, cap));
  const double  h = width / static_cast<double>(per_axis - 1);
  std::size_t   total = 1;
  for (std::size_t a = 0; a < n; ++a) total *= per_axis;

  auto coords = [&](std::size_t linear) {
    RealVector x(n);
    for (std::size_t a = n; a-- > 0;) {
      x[a] = -opt.halfwidth + h * static_cast<double>(linear % per_axis);
      linear /= per_axis;
    }
    return x;
  };

  std::vector<double>   value(total);
  detail::ExceptionSlot slot;
  const long            count = static_cast<long>(total);
#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < count; ++i)
    slot.run([&] { value[static_cast<std::size_t>(i)] = std::norm(eval_symbol(symbol, coords(static_cast<std::size_t>(i)))); });
  slot.rethrow();

  // Axis-neighbour local minima.
  std::vector<char> is_min(total, 0);
#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < count; ++i) {
    const auto  li     = static_cast<std::size_t>(i);
    std::size_t stride = 1;
    bool        minimum = true;
    for (std::size_t a = n; a-- > 0 && minimum;) {
      const std::size_t idx = (li / stride) % per_axis;
      if (idx > 0 && value[li - stride] < value[li]) minimum = false;
      if (idx + 1 < per_axis && value[li + stride] < value[li]) minimum = false;
      stride *= per_axis;
    }
    is_min[li] = minimum ? 1 : 0;
  }
  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < total; ++i)
    if (is_min[i]) minima.push_back(i);

  std::vector<Polished> polished(minima.size());
  const long            mcount = static_cast<long>(minima.size());
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (long k = 0; k < mcount; ++k)
    slot.run([&] {
      const auto kk = static_cast<std::size_t>(k);
      polished[kk]  = polish(symbol, coords(minima[kk]), opt.polish_tolerance);
    });
  slot.rethrow();

  std::stable_sort(polished.begin(), polished.end(),
                   [](const Polished& a, const Polished& b) { return a.residual < b.residual; });
  ScanResult out{{}, h};
  const double radius = 10.0 * h;
  for (auto& p : polished) {
    bool near = false;
    for (const auto& c : out.candidates) {
      double d = 0;
      for (std::size_t a = 0; a < n; ++a) d += (c.location[a] - p.x[a]) * (c.location[a] - p.x[a]);
      if (std::sqrt(d) <= radius) {
        near = true;
        break;
      }
    }
    if (!near) out.candidates.push_back({std::move(p.x), p.residual});
  }
  return out;
}

}  // namespace

ZeroConstraints zero_constraints(const LevyTriplet& triplet) {
  const auto&       e = require_exact(triplet);
  const std::size_t n = triplet.dimension();
  ZeroConstraints   c;
  std::vector<RationalVector> annihilators = e.covariance.row_list();
  RationalVector              b_eff        = e.drift;
  for (const auto& a : e.atoms) {
    c.atom_rows.push_back(a.location);
    if (dot(a.location, a.location) < 1) b_eff = axpy(-a.mass, a.location, std::move(b_eff));
  }
  annihilators.push_back(std::move(b_eff));
  c.admissible = exact::nullspace(annihilators, n);
  return c;
}

ClosedSubgroup zero_set_exact(const LevyTriplet& triplet) {
  const auto c = zero_constraints(triplet);
  return lattice_preimage(c.atom_rows, c.admissible, triplet.dimension());
}

std::optional<LevyTriplet> exact_triplet_of(const SymbolHandle& symbol) {
  if (const auto* t = std::get_if<LevyTriplet>(&symbol.source()))
    return t->is_exact() ? std::optional<LevyTriplet>(*t) : std::nullopt;
  if (const auto* cf = std::get_if<ClosedForm>(&symbol.source())) {
    const std::size_t n = symbol.dimension();
    RealVector        drift;
    std::vector<double> cov(n * n, 0.0);
    if (const auto* b = std::get_if<BrownianWithDrift>(cf)) {
      drift = b->drift;
      cov   = b->covariance;
    } else if (const auto* d = std::get_if<PureDrift>(cf)) {
      drift = d->drift;
    } else {
      return std::nullopt;
    }
    // Doubles are rationals; the zero set of exactly these coefficients is computed.
    ExactTriplet e{exact_from_double(drift), RationalMatrix(n, n), {}};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e.covariance(i, j) = Rational(cov[i * n + j]);
    return LevyTriplet::from_exact(std::move(e));
  }
  return std::nullopt;
}

LiouvilleVerdict decide_liouville(const LevyTriplet& triplet, const DecideOptions& options) {
  if (!options.force_numeric && triplet.is_exact() && !triplet.has_density()) {
    LiouvilleVerdict v;
    v.method            = VerdictMethod::Exact;
    v.zero_set          = zero_set_exact(triplet);
    v.periodicity_group = orthogonal_subgroup(*v.zero_set);
    v.holds             = v.zero_set->is_trivial();
    auto add_witness = [&](const RationalVector& turns) {
      const auto u  = to_double(turns);
      RealVector xi = u;
      for (auto& x : xi) x *= kTwoPi;
      const double res = std::abs(eval_triplet_turns(triplet, u));
      v.witnesses.push_back({xi, res, 1e-10 * (1.0 + local_scale(triplet, xi))});
    };
    // Stored lattice vectors of a TwoPi-scaled group are turns; subspace vectors
    // are scale free, so the same vector read as turns is also a zero.
    for (const auto& g : v.zero_set->lattice_basis()) add_witness(g);
    for (const auto& s : v.zero_set->subspace_basis()) add_witness(s);
    return v;
  }
  return decide_liouville(SymbolHandle::from_triplet(triplet), DecideOptions{true, options.scan, options.zero_threshold});
}

LiouvilleVerdict decide_liouville(const SymbolHandle& symbol, const DecideOptions& options) {
  if (!options.force_numeric) {
    if (auto t = exact_triplet_of(symbol)) return decide_liouville(*t, options);
    if (const auto* cf = std::get_if<ClosedForm>(&symbol.source());
        cf && std::holds_alternative<IsotropicStable>(*cf)) {
      // c |xi|^alpha vanishes only at the origin.
      LiouvilleVerdict v;
      v.method            = VerdictMethod::Exact;
      v.zero_set          = ClosedSubgroup::trivial(symbol.dimension());
      v.periodicity_group = ClosedSubgroup::full(symbol.dimension());
      v.holds             = true;
      return v;
    }
  }
  LiouvilleVerdict v;
  v.method                  = VerdictMethod::NumericHeuristic;
  const auto scan           = zero_scan_numeric(symbol, options.scan);
  const double origin_ball  = 10.0 * scan.effective_step;
  v.min_residual_off_origin = std::numeric_limits<double>::infinity();
  for (const auto& c : scan.candidates) {
    if (norm(c.location) <= origin_ball) continue;
    v.min_residual_off_origin = std::min(v.min_residual_off_origin, c.residual);
    if (c.residual <= options.zero_threshold)
      v.witnesses.push_back({c.location, c.residual, options.zero_threshold});
  }
  v.holds = v.witnesses.empty();
  if (v.holds) {
    v.zero_set          = ClosedSubgroup::trivial(symbol.dimension());
    v.periodicity_group = ClosedSubgroup::full(symbol.dimension());
  }
  return v;
}

TripletCharacterization triplet_characterization(const LevyTriplet& triplet) {
  const auto&       e = require_exact(triplet);
  const std::size_t n = triplet.dimension();
  TripletCharacterization tc{ClosedSubgroup::trivial(n), {}, RationalVector(n), {},
                             ClosedSubgroup::trivial(n), {}};

  std::vector<RationalVector> support;
  for (const auto& a : e.atoms) support.push_back(a.location);
  tc.g_nu = subgroup_from_generators(support, n);
  tc.v_nu = tc.g_nu.subspace_basis();

  for (const auto& a : e.atoms) {
    if (!(dot(a.location, a.location) < 1)) continue;
    if (is_zero(exact::project_off(a.location, tc.v_nu))) continue;  // b_j in V_nu
    tc.c_nu = axpy(-a.mass, a.location, std::move(tc.c_nu));
  }

  // span of the columns of Sigma = range(Sigma) = range(Q).
  std::vector<RationalVector> w_gens = e.covariance.transpose().row_list();
  RationalVector              drift  = e.drift;
  for (std::size_t i = 0; i < n; ++i) drift[i] += tc.c_nu[i];
  w_gens.push_back(std::move(drift));
  tc.w = exact::canonical_span(w_gens, n);

  tc.rhs_group = group_sum_closure(tc.g_nu, ClosedSubgroup::make(n, tc.w, {}, Scale::Unit));

  Eigen::MatrixXd q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = triplet.covariance(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd sigma = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
  tc.sigma.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      tc.sigma[i * n + j] = sigma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return tc;
}

Corollary2Check crosscheck_corollary2(const LevyTriplet& triplet) {
  auto lhs = orthogonal_subgroup(zero_set_exact(triplet));
  auto rhs = triplet_characterization(triplet).rhs_group;
  const bool eq = equals(lhs, rhs);
  return {std::move(lhs), std::move(rhs), eq};
}

bool truncation_zero_set_check(const LevyTriplet& triplet, const std::vector<double>& radii) {
  require_exact(triplet);
  if (radii.empty()) throw std::invalid_argument("truncation_zero_set_check: no radii");
  if (!std::is_sorted(radii.begin(), radii.end()))
    throw std::invalid_argument("truncation_zero_set_check: radii must be increasing");
  double largest = 0;
  for (const auto& a : triplet.atoms()) largest = std::max(largest, norm(a.location));
  if (!(radii.back() > largest))
    throw std::invalid_argument("truncation_zero_set_check: final radius must exceed the largest atom");

  const std::size_t           n = triplet.dimension();
  std::vector<RationalVector> rows;
  std::vector<RationalVector> admissible = ClosedSubgroup::full(n).subspace_basis();
  for (double r : radii) {
    const auto c = zero_constraints(truncate_measure(triplet, r).triplet);
    rows.insert(rows.end(), c.atom_rows.begin(), c.atom_rows.end());
    admissible = exact::intersect_spans(admissible, c.admissible, n);
  }
  return equals(lattice_preimage(rows, admissible, n), zero_set_exact(triplet));
}

ScanResult zero_scan_numeric(const SymbolHandle& symbol, const ScanOptions& options) {
  return scan_impl(symbol, options, true);
}

namespace serial {
ScanResult zero_scan_numeric(const SymbolHandle& symbol, const ScanOptions& options) {
  return scan_impl(symbol, options, false);
}
}  // namespace serial

}  // namespace levy

#pragma once

/// \file symbol.hpp
/// \brief Lévy triplets and evaluation of characteristic exponents.
///
/// Convention (consistent with the generator's integro-differential form):
///
///   psi(xi) = -i b.xi + 1/2 Q xi.xi
///             + int (1 - e^{i x.xi} + i x.xi 1_{0<|x|<1}) nu(dx)
///
/// so that L e^{i x.xi} = -psi(xi) e^{i x.xi}. For finitely many atoms this is
///
///   psi(xi) = -i b_eff.xi + 1/2 Q xi.xi + sum_j a_j (1 - e^{i b_j.xi}),
///   b_eff   = b - sum_{|b_j|<1} a_j b_j,
///
/// which is the form used for evaluation.

#include "levy/grid.hpp"
#include "levy/rational.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace levy {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate)
      : std::runtime_error(what), error_estimate(estimate) {}
  double error_estimate;
};

struct Atom {
  double     mass;
  RealVector location;
};

struct ExactAtom {
  Rational       mass;
  RationalVector location;
};

/// Absolutely continuous Lévy measure nu(dx) = density(x) dx in dimension 1.
struct DensityMeasure {
  std::function<double(double)> density;
  int    depth       = 15;    ///< maximal adaptive refinement depth
  double tail_radius = 50.0;  ///< integration cutoff R
  double tail_mass   = 0.0;   ///< estimate of nu(|x| > R), feeds the error certificate
  double tolerance   = 1e-10;
};

struct NullMeasure {};

using LevyMeasure = std::variant<NullMeasure, std::vector<Atom>, DensityMeasure>;

/// Rational copy of a triplet with finitely many atoms.
struct ExactTriplet {
  RationalVector         drift;
  RationalMatrix         covariance;
  std::vector<ExactAtom> atoms;
};

/// (b, Q, nu). Q is symmetrized as (Q + Q^T)/2 on construction; no other
/// invariant is enforced here (see validate_triplet).
class LevyTriplet {
 public:
  LevyTriplet(RealVector drift, std::vector<double> covariance_row_major, LevyMeasure measure);
  static LevyTriplet from_exact(ExactTriplet exact);

  std::size_t                dimension() const noexcept { return drift_.size(); }
  const RealVector&          drift() const noexcept { return drift_; }
  const std::vector<double>& covariance() const noexcept { return covariance_; }
  double                     covariance(std::size_t i, std::size_t j) const {
    return covariance_[i * dimension() + j];
  }
  const LevyMeasure&                 measure() const noexcept { return measure_; }
  const std::optional<ExactTriplet>& exact() const noexcept { return exact_; }
  bool                               is_exact() const noexcept { return exact_.has_value(); }

  /// Atoms, or an empty list for Null; throws for density measures.
  const std::vector<Atom>& atoms() const;
  bool                     has_density() const noexcept {
    return std::holds_alternative<DensityMeasure>(measure_);
  }
  bool finite_atoms() const noexcept { return !has_density(); }

  /// b - sum_{|b_j|<1} a_j b_j (exact when rational data is available).
  const RealVector& effective_drift() const noexcept { return effective_drift_; }

  /// Triplet of conj(psi): (-b, Q, nu reflected through the origin).
  LevyTriplet conjugate() const;

 private:
  LevyTriplet() = default;
  void finish();

  RealVector                  drift_;
  std::vector<double>         covariance_;
  LevyMeasure                 measure_;
  std::optional<ExactTriplet> exact_;
  RealVector                  effective_drift_;
};

struct ValidationItem {
  std::string invariant;
  bool        passed;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  bool        ok() const;
  std::string summary() const;
};

ValidationReport validate_triplet(const LevyTriplet& triplet);

class BernsteinFunction;

/// c |xi|^alpha.
struct IsotropicStable {
  std::size_t dimension;
  double      alpha;
  double      scale = 1.0;
};
/// -i b.xi + 1/2 Q xi.xi.
struct BrownianWithDrift {
  RealVector          drift;
  std::vector<double> covariance;
};
/// -i b.xi.
struct PureDrift {
  RealVector drift;
};

class SymbolHandle;

struct Subordinated {
  std::shared_ptr<const BernsteinFunction> outer;
  std::shared_ptr<const SymbolHandle>      inner;
};

using ClosedForm = std::variant<IsotropicStable, BrownianWithDrift, PureDrift>;

/// Evaluable characteristic exponent.
class SymbolHandle {
 public:
  using Source = std::variant<LevyTriplet, ClosedForm, Subordinated>;

  /// Throws std::invalid_argument with the report summary if validation fails.
  static SymbolHandle from_triplet(LevyTriplet triplet);
  static SymbolHandle stable(std::size_t dimension, double alpha, double scale = 1.0);
  static SymbolHandle brownian(RealVector drift, std::vector<double> covariance);
  static SymbolHandle pure_drift(RealVector drift);
  static SymbolHandle subordinate(const BernsteinFunction& g, const SymbolHandle& inner);

  std::size_t   dimension() const noexcept { return dimension_; }
  const Source& source() const noexcept { return source_; }

  /// Triplet view for triplet-backed, Brownian and drift symbols.
  std::optional<LevyTriplet> triplet() const;
  std::string                describe() const;

 private:
  SymbolHandle(Source s, std::size_t n);
  Source      source_;
  std::size_t dimension_;
};

Complex eval_symbol(const SymbolHandle& symbol, const RealVector& xi);
/// psi(2*pi*u); atom phases are reduced modulo one full turn before scaling,
/// so psi vanishes exactly at exact lattice zeros.
Complex eval_symbol_turns(const SymbolHandle& symbol, const RealVector& u);

/// Direct triplet evaluation (validation is the caller's business).
Complex eval_triplet(const LevyTriplet& triplet, const RealVector& xi);
Complex eval_triplet_turns(const LevyTriplet& triplet, const RealVector& u);

struct SymbolValue {
  Complex value;
  double  quadrature_error = 0;  ///< estimate from adaptive quadrature
  double  tail_bound       = 0;  ///< 2 nu(|x| > R), certified truncation error
};
SymbolValue eval_symbol_detailed(const SymbolHandle& symbol, const RealVector& xi);

/// psi at every grid frequency, in grid frequency layout (OpenMP-parallel).
std::vector<Complex> eval_symbol_grid(const SymbolHandle& symbol, const TorusGrid& grid);

struct TruncatedTriplet {
  LevyTriplet triplet;
  double      bound;  ///< sup_xi |psi - psi_n| <= 2 nu(B_n^c)
};

/// (b, Q, 1_{B_radius} nu). Requires radius >= 1.
TruncatedTriplet truncate_measure(const LevyTriplet& triplet, double radius);

struct BoundedReduction {
  std::optional<std::vector<Atom>> measure;  ///< set iff psi = sum a_j (1 - e^{i b_j.xi})
  bool        drift_cancels = false;
  std::string violated;  ///< the failing condition when `measure` is empty
};

BoundedReduction bounded_reduction(const LevyTriplet& triplet);

namespace serial {
std::vector<Complex> eval_symbol_grid(const SymbolHandle& symbol, const TorusGrid& grid);
}

}  // namespace levy

#pragma once

/// \file bernstein.hpp
/// \brief Bernstein functions g(l) = a l + int (1 - e^{-l s}) pi(ds), their
/// extension to the closed right half-plane, and subordination of symbols.

#include "levy/group.hpp"
#include "levy/symbol.hpp"

#include <optional>
#include <string>
#include <vector>

namespace levy {

enum class BernsteinFamily { Power, Log, Resolvent, SemigroupComplement, Linear, Custom };

struct BernsteinAtom {
  double mass;
  double location;  ///< s_k > 0
};

class BernsteinFunction {
 public:
  /// l^alpha, alpha in (0,1); pi(ds) = alpha/Gamma(1-alpha) s^{-1-alpha} ds.
  static BernsteinFunction power(double alpha);
  /// log(1 + l); pi(ds) = s^{-1} e^{-s} ds.
  static BernsteinFunction log();
  /// l/(tau + l); pi(ds) = tau e^{-tau s} ds.
  static BernsteinFunction resolvent(double tau);
  /// 1 - e^{-l t}; pi = delta_t.
  static BernsteinFunction semigroup_complement(double t);
  static BernsteinFunction semigroup_complement(const Rational& t);
  /// a l, a > 0.
  static BernsteinFunction linear(double a);
  /// a l + sum_k m_k (1 - e^{-l s_k}).
  static BernsteinFunction custom(double a, std::vector<BernsteinAtom> atoms);
  /// Same with exact rational atom locations (masses stay real).
  static BernsteinFunction custom(double a, std::vector<std::pair<double, Rational>> atoms);

  BernsteinFamily family() const noexcept { return family_; }
  /// alpha, tau or t for the parametrized families, 0 otherwise.
  double parameter() const noexcept { return parameter_; }
  double linear_coefficient() const noexcept { return a_; }
  /// Atoms of pi for SemigroupComplement and Custom.
  const std::vector<BernsteinAtom>&            atoms() const noexcept { return atoms_; }
  const std::optional<std::vector<Rational>>& exact_locations() const noexcept {
    return exact_locations_;
  }
  /// True when pi has a continuous density (Power, Log, Resolvent).
  bool        continuous_measure() const noexcept;
  std::string describe() const;

 private:
  BernsteinFunction() = default;
  BernsteinFamily                      family_    = BernsteinFamily::Linear;
  double                               parameter_ = 0;
  double                               a_         = 0;
  std::vector<BernsteinAtom>           atoms_;
  std::optional<std::vector<Rational>> exact_locations_;
};

/// g(lambda) for lambda >= 0.
double eval_bernstein(const BernsteinFunction& g, double lambda);

/// Analytic extension to Re zeta >= 0 (principal branches).
Complex eval_halfplane(const BernsteinFunction& g, Complex zeta);

struct HalfplaneZeros {
  enum class Kind { OnlyZeroAtOrigin, ImaginaryAxisLattice, Heuristic };
  Kind kind;
  /// For ImaginaryAxisLattice: {eta : g(i eta) = 0} as a 1-D group.
  std::optional<ClosedSubgroup> lattice;
  /// For Heuristic: scanned near-zeros eta != 0 with |g(i eta)|.
  std::vector<std::pair<double, double>> evidence;
};

HalfplaneZeros halfplane_zero_classification(const BernsteinFunction& g,
                                             double scan_halfwidth = 50.0,
                                             double scan_step      = 1e-3);

/// g o psi as an evaluation composite.
SymbolHandle subordinate_symbol(const BernsteinFunction& g, const SymbolHandle& psi);

struct Corollary1Check {
  bool condition_met;     ///< a > 0 or supp pi not discrete (only zero at the origin)
  bool zero_sets_equal;   ///< {g o psi = 0} agrees with {psi = 0}
  double max_residual_on_zero_set;   ///< max |g o psi| over tested exact zeros
  double min_residual_off_zero_set;  ///< min |g o psi| over tested non-zeros
  std::string detail;
};

struct Corollary1Options {
  double residual_tolerance = 1e-10;
  double scan_halfwidth     = 20.0;
  double scan_step          = 0.01;
};

Corollary1Check corollary1_equivalence_check(const BernsteinFunction& g,
                                             const LevyTriplet&       triplet,
                                             const Corollary1Options& options = {});

}  // namespace levy

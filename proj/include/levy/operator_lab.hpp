#pragma once

/// \file operator_lab.hpp
/// \brief The generator L_psi applied two ways (Fourier multiplier -psi on a
/// torus grid, and the integro-differential form pointwise), the
/// distributional pairing, harmonic counterexamples and fixed-point checks.

#include "levy/grid.hpp"
#include "levy/group.hpp"
#include "levy/symbol.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace levy {

/// Function with value and (optionally) analytic first and second derivatives.
struct SmoothFunction {
  std::function<Complex(const RealVector&)> value;
  std::function<std::vector<Complex>(const RealVector&)> gradient;  ///< may be empty
  std::function<std::vector<Complex>(const RealVector&)> hessian;   ///< row-major, may be empty
  /// Central differences at h = 1e-5 (error O(h^2)) when a derivative is missing.
  bool finite_difference_fallback = false;
};

class MissingDerivativeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite sum of terms c e^{2 pi i u.x}; frequencies u are in turns.
struct TrigPolynomial {
  std::size_t          dimension = 0;
  std::vector<RealVector> frequencies;
  std::vector<Complex>    coefficients;

  Complex              value(const RealVector& x) const;
  std::vector<Complex> gradient(const RealVector& x) const;
  std::vector<Complex> hessian(const RealVector& x) const;
  SmoothFunction       smooth() const;
  GridFunction         sample(const TorusGrid& grid) const;
  /// Throws if some frequency is not a grid frequency (|k| < N/2 required).
  void require_on_grid(const TorusGrid& grid) const;
};

/// Generator through the spectrum: inverse(-psi(xi_k) transform(u)).
GridFunction apply_generator_fourier(const GridFunction& u, const SymbolHandle& psi);

/// b.grad u + 1/2 tr(Q D^2 u) + sum a_j (u(x+b_j) - u(x) - b_j.grad u 1_{|b_j|<1}).
Complex apply_generator_direct(const SmoothFunction& u, const LevyTriplet& triplet,
                               const RealVector& x);

/// sup_x |fourier - direct| / (1 + sup_x |direct|) over the grid points.
double crosscheck_applications(const TrigPolynomial& u, const LevyTriplet& triplet,
                               const TorusGrid& grid);

/// phi(x) = exp(1 - 1/(1 - |x - c|^2/r^2)) on |x - c| < r, periodized by the
/// minimal image on the torus [0, L)^n.
class TestBump {
 public:
  TestBump(RealVector centre, double radius, double period);

  Complex              value(const RealVector& x) const;
  std::vector<Complex> gradient(const RealVector& x) const;
  std::vector<Complex> hessian(const RealVector& x) const;
  SmoothFunction       smooth() const;

  const RealVector& centre() const noexcept { return centre_; }
  double            radius() const noexcept { return radius_; }
  double            period() const noexcept { return period_; }

 private:
  RealVector offset(const RealVector& x) const;
  RealVector centre_;
  double     radius_;
  double     period_;
};

/// <L_psi f, phi> := sum_j f(x_j) (L_{conj psi} phi)(x_j) |cell|, with the
/// conjugate generator taken from the triplet (-b, Q, reflected nu).
Complex distributional_pairing(const GridFunction& f, const TestBump& phi,
                               const LevyTriplet& triplet);

class NoCounterexample : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// f(x) = (2 pi)^{-n} sum c_g e^{-i g.x}, g = 2 pi u with u exact (turns).
struct HarmonicCandidate {
  std::size_t                 dimension = 0;
  std::vector<RationalVector> frequencies;
  std::vector<Complex>        coefficients;

  TrigPolynomial realization() const;
  /// Least L > 0 with L u integral for every frequency.
  Rational least_period() const;
};

/// Seed 0 gives 1 + cos(g.x) for the first generator g; other seeds draw
/// 3 or 5 frequencies {0, +-g, +-h} with conjugate coefficients.
/// Throws NoCounterexample for the trivial group.
HarmonicCandidate make_harmonic(const ClosedSubgroup& zero_set, std::uint64_t seed = 0);

/// Grid on one least period with room for every frequency of the candidate.
TorusGrid harmonic_grid(const HarmonicCandidate& candidate, std::size_t min_points = 8);

struct HarmonicReport {
  double fourier_residual;  ///< sup |L f| along the spectral path
  double direct_residual;   ///< sup |L f| along the pointwise path
  double norm;              ///< sup |f|
  double tolerance;         ///< 1e-10 (1 + norm)
  bool   pass;
};

HarmonicReport verify_harmonic(const TrigPolynomial& f, const LevyTriplet& triplet,
                               const TorusGrid& grid);
HarmonicReport verify_harmonic(const HarmonicCandidate& candidate, const LevyTriplet& triplet,
                               const TorusGrid& grid);

/// sup |tau R_tau f - f| with R_tau the multiplier 1/(tau + psi).
double resolvent_fixed_point(const GridFunction& f, const LevyTriplet& triplet, double tau);

struct SemigroupCheck {
  double residual;    ///< sup |P_t f - f|
  bool   conclusive;  ///< psi real on the grid
};
SemigroupCheck semigroup_fixed_point(const GridFunction& f, const LevyTriplet& triplet, double t);

/// Periodized surrogate p_t(x) = L^{-n} sum_k e^{-t psi(xi_k)} e^{-i xi_k x}.
struct DensityReport {
  GridFunction density;
  double       min_value;
  double       max_imag;
  bool         strictly_positive;  ///< heuristic evidence only
};
DensityReport transition_density(const LevyTriplet& triplet, double t, const TorusGrid& grid);

namespace serial {
GridFunction   apply_generator_fourier(const GridFunction& u, const SymbolHandle& psi);
double         resolvent_fixed_point(const GridFunction& f, const LevyTriplet& triplet, double tau);
SemigroupCheck semigroup_fixed_point(const GridFunction& f, const LevyTriplet& triplet, double t);
DensityReport  transition_density(const LevyTriplet& triplet, double t, const TorusGrid& grid);
}  // namespace serial

}  // namespace levy

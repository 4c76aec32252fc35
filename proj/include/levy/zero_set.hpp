#pragma once

/// \file zero_set.hpp
/// \brief The zero set {psi = 0}, the Liouville decision, and the
/// triplet-side characterization of its orthogonal group.
///
/// For a rational model with finitely many atoms
///
///   psi(xi) = 0  <=>  Q xi = 0,  b_j.xi in 2*pi*Z for every atom,  b_eff.xi = 0,
///
/// since the real part is 1/2 Q xi.xi + sum a_j (1 - cos b_j.xi) and, once every
/// cosine equals one, the imaginary part reduces to -b_eff.xi. Hence
/// {psi = 0} = lattice_preimage(atoms, ker Q ∩ b_eff^perp).

#include "levy/group.hpp"
#include "levy/symbol.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace levy {

/// Raised when exact analysis is requested for non-rational or density data.
class NotExactError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class VerdictMethod { Exact, NumericHeuristic };

struct Witness {
  RealVector location;  ///< g (radians)
  double     residual;  ///< |psi(g)|
  double     tolerance; ///< 1e-10 * (1 + local scale)
};

struct LiouvilleVerdict {
  bool                          holds;
  std::optional<ClosedSubgroup> zero_set;           ///< absent for numeric non-Liouville
  std::optional<ClosedSubgroup> periodicity_group;  ///< {psi = 0}^perp
  VerdictMethod                 method;
  std::vector<Witness>          witnesses;          ///< nonzero zeros for non-Liouville models
  /// Numeric mode: smallest polished |psi| found away from the origin (inf if none).
  double min_residual_off_origin = 0;
};

struct ZeroCandidate {
  RealVector location;
  double     residual;
};

struct ScanOptions {
  double      halfwidth        = 10.0;
  double      step             = 0.01;
  std::size_t max_points       = 4'000'000;  ///< step is coarsened to respect this
  double      polish_tolerance = 1e-12;
};

struct ScanResult {
  std::vector<ZeroCandidate> candidates;  ///< sorted by residual
  double                     effective_step;
};

struct DecideOptions {
  bool        force_numeric = false;
  ScanOptions scan{50.0, 1e-3};
  double      zero_threshold = 1e-10;  ///< numeric witness threshold
};

struct TripletCharacterization {
  ClosedSubgroup              g_nu;      ///< closure of the group generated by supp nu
  std::vector<RationalVector> v_nu;      ///< subspace part of closure(G_nu)
  RationalVector              c_nu;      ///< -sum_{|b_j|<1, b_j not in V_nu} a_j b_j
  std::vector<RationalVector> w;         ///< span{sigma_1..sigma_n, b + c_nu}
  ClosedSubgroup              rhs_group; ///< closure(G_nu + W)
  std::vector<double>         sigma;     ///< PSD square root of Q (row-major, numeric)
};

struct Corollary2Check {
  ClosedSubgroup lhs;  ///< {psi = 0}^perp
  ClosedSubgroup rhs;  ///< closure(G_nu + W)
  bool           equal;
};

/// Linear data of the zero set: rows b_j and the admissible subspace ker Q ∩ b_eff^perp.
struct ZeroConstraints {
  std::vector<RationalVector> atom_rows;
  std::vector<RationalVector> admissible;
};
ZeroConstraints zero_constraints(const LevyTriplet& triplet);

ClosedSubgroup zero_set_exact(const LevyTriplet& triplet);

LiouvilleVerdict decide_liouville(const LevyTriplet& triplet, const DecideOptions& options = {});
LiouvilleVerdict decide_liouville(const SymbolHandle& symbol, const DecideOptions& options = {});

TripletCharacterization triplet_characterization(const LevyTriplet& triplet);
Corollary2Check         crosscheck_corollary2(const LevyTriplet& triplet);

/// {psi = 0} == intersection of the zero sets of the truncations at `radii`.
bool truncation_zero_set_check(const LevyTriplet& triplet, const std::vector<double>& radii);

/// Grid scan of |psi|^2 over [-h, h]^n, local-minimum polish, clustering
/// within 10 steps. Residuals are reported, nothing is certified.
ScanResult zero_scan_numeric(const SymbolHandle& symbol, const ScanOptions& options);

/// Exact triplet view of closed-form Brownian / drift symbols and exact triplets.
std::optional<LevyTriplet> exact_triplet_of(const SymbolHandle& symbol);

namespace serial {
ScanResult zero_scan_numeric(const SymbolHandle& symbol, const ScanOptions& options);
}

}  // namespace levy

#pragma once

/// \file group.hpp
/// \brief Closed additive subgroups of R^n in "subspace (+) relative lattice"
/// normal form, over exact rationals.
///
/// A group is E (+) s*L where E is a rational subspace, L a rational lattice
/// inside E^perp, and s is either 1 or 2*pi (the only irrational scale that
/// arises from exponential constraints e^{i xi.g} = 1). The canonical form is
/// E in reduced row echelon form and L in Hermite normal form; two groups are
/// equal iff their canonical forms are structurally equal.

#include "levy/rational.hpp"

#include <string>
#include <vector>

namespace levy {

/// Scale carried by lattice generators: stored vector v represents s*v.
enum class Scale { Unit, TwoPi };

class ClosedSubgroup {
 public:
  /// Canonicalizes arbitrary generators: subspace spanned by `subspace`,
  /// plus the Z-span of `lattice` (times the scale), closed.
  /// Lattice generators are projected off the subspace before reduction.
  static ClosedSubgroup make(std::size_t n, const std::vector<RationalVector>& subspace,
                             const std::vector<RationalVector>& lattice, Scale scale);
  static ClosedSubgroup trivial(std::size_t n);
  static ClosedSubgroup full(std::size_t n);

  std::size_t                        dimension() const noexcept { return n_; }
  const std::vector<RationalVector>& subspace_basis() const noexcept { return subspace_; }
  const std::vector<RationalVector>& lattice_basis() const noexcept { return lattice_; }
  Scale                              scale() const noexcept { return scale_; }

  bool is_trivial() const noexcept { return subspace_.empty() && lattice_.empty(); }
  bool is_full() const noexcept { return subspace_.size() == n_; }
  bool is_discrete() const noexcept { return subspace_.empty(); }

  /// Lattice generators as real vectors, the 2*pi scale applied.
  std::vector<std::vector<double>> lattice_numeric() const;
  std::vector<std::vector<double>> subspace_numeric() const;

  /// Human-readable form, e.g. "2π·ℤ", "ℝ^2", "span{(1, 0)} ⊕ 2π·ℤ⟨(0, 1)⟩".
  std::string to_string() const;

  friend bool operator==(const ClosedSubgroup&, const ClosedSubgroup&) = default;

 private:
  std::size_t                 n_ = 0;
  std::vector<RationalVector> subspace_;
  std::vector<RationalVector> lattice_;
  Scale                       scale_ = Scale::Unit;
};

/// Closure of the Z-span of rational generators (a pure lattice, unit scale).
ClosedSubgroup subgroup_from_generators(const std::vector<RationalVector>& vectors,
                                        std::size_t n);

/// {xi : e^{i xi.g} = 1 for all g in G}. Flips the scale flag.
ClosedSubgroup orthogonal_subgroup(const ClosedSubgroup& group);

/// {xi in span(admissible) : A xi in 2*pi Z^m}, `rows` are the rows of A.
/// Solved through the Smith normal form of the integer-scaled restriction.
ClosedSubgroup lattice_preimage(const std::vector<RationalVector>& rows,
                                const std::vector<RationalVector>& admissible, std::size_t n);

/// Same constraint set without the 2*pi: {xi in S : A xi in Z^m}.
ClosedSubgroup lattice_preimage_unit(const std::vector<RationalVector>& rows,
                                     const std::vector<RationalVector>& admissible,
                                     std::size_t n);

/// Closure of G1 + G2. Throws std::domain_error if both carry lattices of
/// different scales (the closure then contains irrational dense directions).
ClosedSubgroup group_sum_closure(const ClosedSubgroup& a, const ClosedSubgroup& b);

/// Exact membership of `scale * x` in the group.
bool member(const ClosedSubgroup& group, const RationalVector& x, Scale scale = Scale::Unit);

bool equals(const ClosedSubgroup& a, const ClosedSubgroup& b);

/// inner ⊆ outer.
bool contains(const ClosedSubgroup& outer, const ClosedSubgroup& inner);

/// {x in G : x in span(subspace)}.
ClosedSubgroup intersect_subspace(const ClosedSubgroup& group,
                                  const std::vector<RationalVector>& subspace);

/// Euclidean distance from a real point to (approximately) the nearest group
/// element, by rounding lattice coordinates. Used only for numeric evidence.
double distance_to_group(const ClosedSubgroup& group, const std::vector<double>& x);

}  // namespace levy

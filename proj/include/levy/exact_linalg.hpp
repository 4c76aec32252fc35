#pragma once

/// \file exact_linalg.hpp
/// \brief Exact linear algebra over Q and Z: echelon forms, kernels,
/// Hermite and Smith normal forms.

#include "levy/rational.hpp"

#include <optional>
#include <vector>

namespace levy::exact {

using IntegerRows = std::vector<IntegerVector>;

struct Echelon {
  std::vector<RationalVector> rows;     ///< nonzero rows of the RREF
  std::vector<std::size_t>    pivots;   ///< pivot column of each row
};

/// Reduced row echelon form of the span of `vectors` (each of length n).
Echelon rref(const std::vector<RationalVector>& vectors, std::size_t n);

/// Basis of the row space in RREF (canonical for the subspace).
std::vector<RationalVector> canonical_span(const std::vector<RationalVector>& vectors,
                                           std::size_t n);

/// Basis (as rows) of {x in Q^n : <r, x> = 0 for every row r}.
std::vector<RationalVector> nullspace(const std::vector<RationalVector>& rows, std::size_t n);

/// Basis of the span of `vectors` intersected with the span of `others`.
std::vector<RationalVector> intersect_spans(const std::vector<RationalVector>& a,
                                            const std::vector<RationalVector>& b,
                                            std::size_t n);

/// Coefficients c with sum_i c_i basis[i] = x, if x lies in the span.
/// `basis` must be linearly independent.
std::optional<RationalVector> coordinates(const std::vector<RationalVector>& basis,
                                          const RationalVector& x);

/// x minus its orthogonal projection onto span(basis).
RationalVector project_off(const RationalVector& x, const std::vector<RationalVector>& basis);

/// Some x with rows * x = rhs (rows have length n), if the system is consistent.
std::optional<RationalVector> particular_solution(const std::vector<RationalVector>& rows,
                                                  const RationalVector& rhs, std::size_t n);

std::size_t rank(const std::vector<RationalVector>& vectors, std::size_t n);

/// Least common multiple of all denominators (1 for an empty list).
Integer common_denominator(const std::vector<RationalVector>& vectors);

/// Row-style Hermite normal form of the Z-module spanned by `rows`:
/// echelon, positive pivots, entries above a pivot reduced into [0, pivot).
/// Zero rows are dropped, so the result is a basis.
IntegerRows hermite_normal_form(IntegerRows rows, std::size_t n);

struct Smith {
  IntegerRows diagonal_matrix;   ///< D = U * M * V (m x k)
  IntegerRows left;              ///< U (m x m), unimodular
  IntegerRows right;             ///< V (k x k), unimodular
  std::vector<Integer> invariants;  ///< nonzero diagonal entries d_1 | d_2 | ...
};

/// Smith normal form of an m x k integer matrix with both transforms.
Smith smith_normal_form(const IntegerRows& m, std::size_t cols);

/// Basis of the integer kernel {k in Z^c : M k = 0} of a rational matrix.
IntegerRows integer_kernel(const std::vector<RationalVector>& rows, std::size_t cols);

}  // namespace levy::exact

#pragma once

/// \file rational.hpp
/// \brief Exact rational scalars, vectors and matrices.
///
/// Every lattice computation in the library runs on these types. Fractions
/// are kept reduced with positive denominators by Boost.Multiprecision.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace levy {

// Expression templates off: keeps `auto` and generic code safe.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

using RationalVector = std::vector<Rational>;
using IntegerVector  = std::vector<Integer>;

/// num/den for any sign of den (the backend rejects negative denominators).
inline Rational ratio(Integer num, Integer den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

/// Dense row-major rational matrix.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Builds a matrix whose rows are the given vectors (all of length `cols`).
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows,
                                  std::size_t cols);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational&       operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  RationalVector              row(std::size_t i) const;
  std::vector<RationalVector> row_list() const;
  RationalMatrix              transpose() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t           rows_ = 0;
  std::size_t           cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalVector operator*(const RationalMatrix& a, const RationalVector& x);

Rational       dot(const RationalVector& a, const RationalVector& b);
RationalVector axpy(const Rational& alpha, const RationalVector& x, RationalVector y);
RationalVector scaled(const RationalVector& x, const Rational& alpha);
RationalVector subtract(const RationalVector& a, const RationalVector& b);
bool           is_zero(const RationalVector& v);
bool           is_integral(const Rational& q);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Parses "p", "p/q", or a decimal like "-0.25" / "1.5e-3" exactly.
/// Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical text: "p" or "p/q".
std::string to_string(const Rational& q);
std::string to_string(const RationalVector& v);

double              to_double(const Rational& q);
std::vector<double> to_double(const RationalVector& v);

}  // namespace levy

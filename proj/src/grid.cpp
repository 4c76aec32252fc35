#include "levy/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levy {

TorusGrid::TorusGrid(std::size_t dimension, double period, std::size_t points)
    : n_(dimension), period_(period), points_(points), size_(1) {
  if (dimension == 0) throw std::invalid_argument("TorusGrid: dimension must be positive");
  if (!(period > 0) || !std::isfinite(period))
    throw std::invalid_argument("TorusGrid: period must be positive");
  if (points < 2 || (points & (points - 1)) != 0)
    throw std::invalid_argument("TorusGrid: points per axis must be a power of two >= 2");
  for (std::size_t i = 0; i < n_; ++i) size_ *= points_;
}

std::vector<std::size_t> TorusGrid::unravel(std::size_t linear) const {
  std::vector<std::size_t> idx(n_);
  for (std::size_t a = n_; a-- > 0;) {
    idx[a] = linear % points_;
    linear /= points_;
  }
  return idx;
}

std::size_t TorusGrid::ravel(const std::vector<std::size_t>& index) const {
  std::size_t linear = 0;
  for (std::size_t a = 0; a < n_; ++a) linear = linear * points_ + index[a];
  return linear;
}

std::vector<long> TorusGrid::frequency_index(std::size_t linear) const {
  const auto        idx  = unravel(linear);
  const long        half = static_cast<long>(points_ / 2);
  std::vector<long> k(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    const long m = static_cast<long>(idx[a]);
    k[a]         = m < half ? m : m - static_cast<long>(points_);
  }
  return k;
}

std::size_t TorusGrid::linear_of_frequency(const std::vector<long>& k) const {
  if (k.size() != n_) throw std::invalid_argument("linear_of_frequency: dimension mismatch");
  const long               half = static_cast<long>(points_ / 2);
  std::vector<std::size_t> idx(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    if (k[a] < -half || k[a] >= half)
      throw std::out_of_range("linear_of_frequency: frequency not representable on grid");
    idx[a] = static_cast<std::size_t>(k[a] < 0 ? k[a] + static_cast<long>(points_) : k[a]);
  }
  return ravel(idx);
}

RealVector TorusGrid::frequency(std::size_t linear) const {
  auto u = frequency_turns(linear);
  for (auto& x : u) x *= 2.0 * std::numbers::pi;
  return u;
}

RealVector TorusGrid::frequency_turns(std::size_t linear) const {
  const auto k = frequency_index(linear);
  RealVector u(n_);
  for (std::size_t a = 0; a < n_; ++a) u[a] = static_cast<double>(k[a]) / period_;
  return u;
}

RealVector TorusGrid::point(std::size_t linear) const {
  const auto idx = unravel(linear);
  RealVector x(n_);
  for (std::size_t a = 0; a < n_; ++a)
    x[a] = static_cast<double>(idx[a]) * period_ / static_cast<double>(points_);
  return x;
}

double TorusGrid::cell_volume() const {
  return std::pow(period_ / static_cast<double>(points_), static_cast<double>(n_));
}

GridFunction::GridFunction(TorusGrid g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw std::invalid_argument("GridFunction: size mismatch");
}

double GridFunction::sup_norm() const {
  double m = 0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::max_imag() const {
  double m = 0;
  for (const auto& v : values) m = std::max(m, std::abs(v.imag()));
  return m;
}

}  // namespace levy

#pragma once

/// \file grid.hpp
/// \brief Periodic torus grids and complex samples on them.

#include <complex>
#include <cstddef>
#include <vector>

namespace levy {

using Complex    = std::complex<double>;
using RealVector = std::vector<double>;

/// n-dimensional torus [0, L)^n sampled at N points per axis (N a power of
/// two). Frequencies are xi_k = 2*pi*k / L with signed k in [-N/2, N/2).
/// Linear indices are row-major with axis 0 slowest; along each axis the
/// frequency layout is the usual FFT layout (0, 1, ..., N/2-1, -N/2, ..., -1).
class TorusGrid {
 public:
  TorusGrid(std::size_t dimension, double period, std::size_t points);

  std::size_t dimension() const noexcept { return n_; }
  double      period() const noexcept { return period_; }
  std::size_t points() const noexcept { return points_; }
  std::size_t size() const noexcept { return size_; }

  /// Per-axis index tuple of a linear index.
  std::vector<std::size_t> unravel(std::size_t linear) const;
  std::size_t              ravel(const std::vector<std::size_t>& index) const;

  /// Signed frequency multi-index k of a linear index in frequency layout.
  std::vector<long> frequency_index(std::size_t linear) const;
  /// Linear index holding signed frequency k (each |k_i| < N/2 or k_i = -N/2).
  std::size_t linear_of_frequency(const std::vector<long>& k) const;
  /// xi_k = 2*pi*k/L.
  RealVector frequency(std::size_t linear) const;
  /// u_k = k/L, so xi_k = 2*pi*u_k.
  RealVector frequency_turns(std::size_t linear) const;
  /// x_j = j*L/N.
  RealVector point(std::size_t linear) const;
  double     cell_volume() const;

  bool operator==(const TorusGrid&) const = default;

 private:
  std::size_t n_;
  double      period_;
  std::size_t points_;
  std::size_t size_;
};

/// Complex samples of a function on a torus grid.
struct GridFunction {
  TorusGrid            grid;
  std::vector<Complex> values;

  explicit GridFunction(TorusGrid g) : grid(g), values(g.size()) {}
  GridFunction(TorusGrid g, std::vector<Complex> v);

  double sup_norm() const;
  double max_imag() const;
};

}  // namespace levy

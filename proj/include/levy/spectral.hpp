#pragma once

/// \file spectral.hpp
/// \brief Discrete Fourier transforms on a TorusGrid and symbol multipliers.
///
/// Convention: u(x_j) = sum_k c_k e^{i xi_k . x_j}, so the forward transform
/// returns c_k = N^{-n} sum_j u(x_j) e^{-i xi_k . x_j} in frequency layout.

#include "levy/grid.hpp"
#include "levy/symbol.hpp"

#include <functional>
#include <vector>

namespace levy {

std::vector<Complex> forward_transform(const TorusGrid& grid, std::vector<Complex> values);
std::vector<Complex> inverse_transform(const TorusGrid& grid, std::vector<Complex> coefficients);

/// F(psi(xi_k)) at every grid frequency. At frequencies on the Nyquist edge
/// (k_i = -N/2) the value is averaged over the sign flips of those axes: that
/// is what the operator does to the aliased cosine the grid actually carries.
std::vector<Complex> symbol_multiplier(const SymbolHandle& symbol, const TorusGrid& grid,
                                       const std::function<Complex(Complex)>& f);

/// Multiply the spectrum of `values` by `multiplier` and transform back.
std::vector<Complex> apply_multiplier(const TorusGrid& grid, const std::vector<Complex>& values,
                                      const std::vector<Complex>& multiplier);

namespace serial {
/// Separable direct DFT, O(n N^{n+1}); the oracle for the FFT path.
std::vector<Complex> forward_transform(const TorusGrid& grid, std::vector<Complex> values);
std::vector<Complex> inverse_transform(const TorusGrid& grid, std::vector<Complex> coefficients);
std::vector<Complex> symbol_multiplier(const SymbolHandle& symbol, const TorusGrid& grid,
                                       const std::function<Complex(Complex)>& f);
std::vector<Complex> apply_multiplier(const TorusGrid& grid, const std::vector<Complex>& values,
                                      const std::vector<Complex>& multiplier);
}  // namespace serial

}  // namespace levy

#include "levy/spectral.hpp"

#include "levy/detail/parallel.hpp"

#include <fftw3.h>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace levy {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void init_threads() {
  static const bool done = [] {
    fftw_init_threads();
    return true;
  }();
  (void)done;
}

void check_size(const TorusGrid& grid, std::size_t size) {
  if (size != grid.size()) throw std::invalid_argument("grid function size does not match grid");
}

// FFTW's sign convention: FFTW_FORWARD multiplies by e^{-2 pi i jk/N}.
void fftw_transform(const TorusGrid& grid, std::vector<Complex>& data, int sign) {
  init_threads();
  std::vector<int> dims(grid.dimension(), static_cast<int>(grid.points()));
  auto*            ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan        plan;
  {
    // Planning is not thread-safe; execution is.
    std::lock_guard lock(planner_mutex());
#ifdef _OPENMP
    fftw_plan_with_nthreads(omp_get_max_threads());
#endif
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), ptr, ptr, sign, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("FFTW planning failed");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

// Indices along the Nyquist edge: axes with k_i = -N/2.
std::vector<std::size_t> nyquist_axes(const std::vector<long>& k, long half) {
  std::vector<std::size_t> axes;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] == -half) axes.push_back(i);
  return axes;
}

Complex multiplier_at(const SymbolHandle& symbol, const TorusGrid& grid, std::size_t linear,
                      const std::function<Complex(Complex)>& f) {
  const auto k    = grid.frequency_index(linear);
  const long half = static_cast<long>(grid.points() / 2);
  auto       u    = grid.frequency_turns(linear);
  const auto axes = nyquist_axes(k, half);
  if (axes.empty()) return f(eval_symbol_turns(symbol, u));
  Complex sum = 0;
  const std::size_t flips = std::size_t{1} << axes.size();
  for (std::size_t mask = 0; mask < flips; ++mask) {
    auto v = u;
    for (std::size_t b = 0; b < axes.size(); ++b)
      if (mask & (std::size_t{1} << b)) v[axes[b]] = -v[axes[b]];
    sum += f(eval_symbol_turns(symbol, v));
  }
  return sum / static_cast<double>(flips);
}

}  // namespace

std::vector<Complex> forward_transform(const TorusGrid& grid, std::vector<Complex> values) {
  check_size(grid, values.size());
  fftw_transform(grid, values, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : values) v *= scale;
  return values;
}

std::vector<Complex> inverse_transform(const TorusGrid& grid, std::vector<Complex> coefficients) {
  check_size(grid, coefficients.size());
  fftw_transform(grid, coefficients, FFTW_BACKWARD);
  return coefficients;
}

std::vector<Complex> symbol_multiplier(const SymbolHandle& symbol, const TorusGrid& grid,
                                       const std::function<Complex(Complex)>& f) {
  if (symbol.dimension() != grid.dimension())
    throw DimensionError("symbol and grid dimensions differ");
  std::vector<Complex>  out(grid.size());
  detail::ExceptionSlot slot;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < detail::as_loop_bound(grid.size()); ++i)
    slot.run([&] {
      out[static_cast<std::size_t>(i)] = multiplier_at(symbol, grid, static_cast<std::size_t>(i), f);
    });
  slot.rethrow();
  return out;
}

std::vector<Complex> apply_multiplier(const TorusGrid& grid, const std::vector<Complex>& values,
                                      const std::vector<Complex>& multiplier) {
  check_size(grid, multiplier.size());
  auto c = forward_transform(grid, values);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < detail::as_loop_bound(c.size()); ++i)
    c[static_cast<std::size_t>(i)] *= multiplier[static_cast<std::size_t>(i)];
  return inverse_transform(grid, std::move(c));
}

namespace serial {

namespace {

void dft_axes(const TorusGrid& grid, std::vector<Complex>& data, double sign) {
  const std::size_t N = grid.points();
  std::vector<Complex> twiddle(N);
  for (std::size_t m = 0; m < N; ++m) {
    const double a = sign * 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(N);
    twiddle[m]     = {std::cos(a), std::sin(a)};
  }
  std::size_t stride = grid.size();
  std::vector<Complex> line(N), out(N);
  for (std::size_t axis = 0; axis < grid.dimension(); ++axis) {
    stride /= N;
    for (std::size_t base = 0; base < grid.size(); ++base) {
      // Visit each line once: from entries whose axis coordinate is zero.
      if ((base / stride) % N != 0) continue;
      for (std::size_t j = 0; j < N; ++j) line[j] = data[base + j * stride];
      for (std::size_t k = 0; k < N; ++k) {
        Complex s = 0;
        for (std::size_t j = 0; j < N; ++j) s += line[j] * twiddle[(j * k) % N];
        out[k] = s;
      }
      for (std::size_t k = 0; k < N; ++k) data[base + k * stride] = out[k];
    }
  }
}

}  // namespace

std::vector<Complex> forward_transform(const TorusGrid& grid, std::vector<Complex> values) {
  check_size(grid, values.size());
  dft_axes(grid, values, -1.0);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : values) v *= scale;
  return values;
}

std::vector<Complex> inverse_transform(const TorusGrid& grid, std::vector<Complex> coefficients) {
  check_size(grid, coefficients.size());
  dft_axes(grid, coefficients, 1.0);
  return coefficients;
}

std::vector<Complex> symbol_multiplier(const SymbolHandle& symbol, const TorusGrid& grid,
                                       const std::function<Complex(Complex)>& f) {
  if (symbol.dimension() != grid.dimension())
    throw DimensionError("symbol and grid dimensions differ");
  std::vector<Complex> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = multiplier_at(symbol, grid, i, f);
  return out;
}

std::vector<Complex> apply_multiplier(const TorusGrid& grid, const std::vector<Complex>& values,
                                      const std::vector<Complex>& multiplier) {
  check_size(grid, multiplier.size());
  auto c = serial::forward_transform(grid, values);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= multiplier[i];
  return serial::inverse_transform(grid, std::move(c));
}

}  // namespace serial

}  // namespace levy

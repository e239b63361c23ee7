#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace adcue::dsp {

std::vector<double> hamming(std::size_t n);

// r[k] = sum_i x[i] x[i+k] for k = 0..max_lag.
std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag);

struct LpcResult {
  std::vector<double> a;  // a[0] = 1; A(z) = sum_k a[k] z^-k
  double error = 0.0;     // final prediction error power
};

// Levinson-Durbin recursion. r must hold at least order + 1 lags. A zero
// r[0] yields the identity predictor.
LpcResult levinson_durbin(std::span<const double> r, std::size_t order);

// Hamming-windowed autocorrelation LPC.
LpcResult lpc(std::span<const double> frame, std::size_t order);

// Roots of A(z) given its coefficients a[0..p] (a[0] != 0).
std::vector<std::complex<double>> polynomial_roots(std::span<const double> a);

// y[n] = sum_k a[k] x[n-k] with x[n<0] = 0.
std::vector<double> fir_filter(std::span<const double> a, std::span<const double> x);

// y[n] = (x[n] - sum_{k>=1} a[k] y[n-k]) / a[0].
std::vector<double> allpole_filter(std::span<const double> a, std::span<const double> x);

// y[n] = x[n] + leak * y[n-1].
std::vector<double> leaky_integrate(std::span<const double> x, double leak = 0.999);

// y[n] = x[n] - coeff * x[n-1].
std::vector<double> pre_emphasis(std::span<const double> x, double coeff = 0.97);

double mean_square(std::span<const double> x);

// 10 log10(ms + 1e-10).
double energy_db(double mean_square);

}  // namespace adcue::dsp

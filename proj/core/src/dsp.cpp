#include "adcue/dsp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "adcue/error.hpp"

namespace adcue::dsp {

std::vector<double> hamming(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                  static_cast<double>(n - 1));
  }
  return w;
}

std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag) {
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t k = 0; k <= max_lag && k < x.size(); ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i + k < x.size(); ++i) acc += x[i] * x[i + k];
    r[k] = acc;
  }
  return r;
}

LpcResult levinson_durbin(std::span<const double> r, std::size_t order) {
  if (r.size() < order + 1) {
    throw Error(ErrorKind::kInvalidArgument, "levinson_durbin: need order + 1 autocorrelation lags");
  }
  LpcResult out;
  out.a.assign(order + 1, 0.0);
  out.a[0] = 1.0;
  double err = r[0];
  if (err <= 0.0) return out;
  std::vector<double> prev(order + 1);
  for (std::size_t i = 1; i <= order; ++i) {
    double acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc += out.a[j] * r[i - j];
    const double k = -acc / err;
    prev = out.a;
    for (std::size_t j = 1; j < i; ++j) out.a[j] = prev[j] + k * prev[i - j];
    out.a[i] = k;
    err *= (1.0 - k * k);
    if (err <= 1e-300) {
      err = 0.0;
      break;
    }
  }
  out.error = err;
  return out;
}

LpcResult lpc(std::span<const double> frame, std::size_t order) {
  const auto w = hamming(frame.size());
  std::vector<double> xw(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) xw[i] = frame[i] * w[i];
  auto r = autocorrelation(xw, order);
  // Slight lag window keeps the recursion stable on near-periodic frames.
  r[0] *= 1.0 + 1e-9;
  return levinson_durbin(r, order);
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> a) {
  std::size_t p = a.size();
  while (p > 1 && a[p - 1] == 0.0) --p;
  if (p <= 1) return {};
  const std::size_t n = p - 1;
  if (a[0] == 0.0) throw Error(ErrorKind::kInvalidArgument, "polynomial_roots: leading coefficient is 0");
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) companion(0, static_cast<Eigen::Index>(j)) = -a[j + 1] / a[0];
  for (std::size_t i = 1; i < n; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> roots(n);
  for (std::size_t i = 0; i < n; ++i) roots[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  return roots;
}

std::vector<double> fir_filter(std::span<const double> a, std::span<const double> x) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size() && k <= n; ++k) acc += a[k] * x[n - k];
    y[n] = acc;
  }
  return y;
}

std::vector<double> allpole_filter(std::span<const double> a, std::span<const double> x) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = x[n];
    for (std::size_t k = 1; k < a.size() && k <= n; ++k) acc -= a[k] * y[n - k];
    y[n] = acc / a[0];
  }
  return y;
}

std::vector<double> leaky_integrate(std::span<const double> x, double leak) {
  std::vector<double> y(x.size());
  double state = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    state = x[i] + leak * state;
    y[i] = state;
  }
  return y;
}

std::vector<double> pre_emphasis(std::span<const double> x, double coeff) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - (i > 0 ? coeff * x[i - 1] : 0.0);
  return y;
}

double mean_square(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc / static_cast<double>(x.size());
}

double energy_db(double ms) { return 10.0 * std::log10(ms + 1e-10); }

}  // namespace adcue::dsp

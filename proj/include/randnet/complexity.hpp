#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "randnet/connectivity.hpp"
#include "randnet/parallel.hpp"
#include "randnet/rng.hpp"
#include "randnet/sigmoid.hpp"
#include "randnet/spectra.hpp"
#include "randnet/stats.hpp"

namespace randnet {

struct ComplexityEstimate {
  enum class Method { closed_form, quadrature, kac_rice_mc };

  double sigma = 0.0;
  int n = 0;  // 0 for analytic values
  double value = 0.0;
  double stderr_ = 0.0;
  Method method = Method::closed_form;
  std::int64_t samples = 0;
  int excluded = 0;  // singular draws dropped from a Monte-Carlo ensemble

  static const char* method_name(Method m) {
    switch (m) {
      case Method::closed_form: return "closed_form";
      case Method::quadrature: return "quadrature";
      case Method::kac_rice_mc: return "kac_rice_mc";
    }
    return "?";
  }
};

/// Topological complexity in nats per neuron: 0 for sigma <= 1, otherwise
/// log(sigma) + (1/sigma^2 - 1)/2. Continuous at sigma = 1 with vanishing
/// slope, and ~ (sigma - 1)^2 just above the transition.
inline double c_closed_form(double sigma) {
  if (sigma <= 0) throw std::invalid_argument("c_closed_form: sigma must be > 0");
  if (sigma <= 1.0) return 0.0;
  return std::log(sigma) + 0.5 * (1.0 / (sigma * sigma) - 1.0);
}

/// Monte-Carlo evaluation of the disc average of log|z - 1| over the uniform
/// law on the disc of radius sigma. Polar sampling with the area-correct
/// radial law r = sigma * sqrt(u).
inline ComplexityEstimate c_quadrature(double sigma, std::int64_t n_points, std::uint64_t seed) {
  if (n_points < 100) throw std::invalid_argument("c_quadrature: need n_points >= 100");
  Counter64 rng(seed);
  RunningStat stat;
  const double two_pi = 6.283185307179586476925286766559;
  for (std::int64_t i = 0; i < n_points; ++i) {
    const double r = sigma * std::sqrt(rng.next_uniform());
    const double th = two_pi * rng.next_uniform();
    const double re = r * std::cos(th) - 1.0;
    const double im = r * std::sin(th);
    stat.add(0.5 * std::log(re * re + im * im));
  }
  ComplexityEstimate e;
  e.sigma = sigma;
  e.value = stat.mean();
  e.stderr_ = stat.stderr_of_mean();
  e.method = ComplexityEstimate::Method::quadrature;
  e.samples = n_points;
  return e;
}

/// Quadrature of the circle integral of log|a - b e^{i theta}| over a full
/// period. Midpoint nodes keep the integrable singularity at a = b off the
/// grid. By the mean-value property of log|.| the limit is 2*pi*log(max(a,b)).
inline double harmonic_circle_integral(double a, double b, int n_points) {
  if (a <= 0 || b <= 0)
    throw std::invalid_argument("harmonic_circle_integral: a, b must be > 0");
  if (n_points < 1) throw std::invalid_argument("harmonic_circle_integral: n_points must be >= 1");
  const double two_pi = 6.283185307179586476925286766559;
  const double h = two_pi / n_points;
  double acc = 0.0;
  for (int k = 0; k < n_points; ++k) {
    const double th = (k + 0.5) * h;
    const double re = a - b * std::cos(th);
    const double im = -b * std::sin(th);
    acc += 0.5 * std::log(re * re + im * im);
  }
  return acc * h;
}

/// Radius of the critical ball: the unique positive solution of
/// x/sigma = S(x), by bisection. Zero for sigma <= 1, where the origin is the
/// only solution.
inline double rho_of_epsilon(double sigma, const SigmoidSpec& s = SigmoidSpec::base()) {
  if (s.kind != SigmoidSpec::Kind::Base)
    throw std::invalid_argument("rho_of_epsilon: defined for base sigmoids");
  if (sigma <= 1.0) return 0.0;
  // g(x) = S(x) - x/sigma: positive just right of 0, negative once S saturates.
  auto g = [&](double x) { return sigmoid_eval(s, x) - x / sigma; };
  double lo = 0.0, hi = 10.0;
  while (g(hi) > 0) hi *= 2;  // sigma huge: push the bracket out
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

/// Modified sigmoid for the given disorder: exactly linear with slope 1/sigma
/// on |x| < rho(eps), exactly tanh beyond rho(eps) + eta, C1 Hermite blend
/// between. eta <= 0 selects the default 0.1 * rho.
inline SigmoidSpec build_modified_sigmoid(double sigma, double eta = 0.0) {
  if (sigma <= 1.0) throw std::invalid_argument("build_modified_sigmoid: sigma must be > 1");
  SigmoidSpec s;
  s.kind = SigmoidSpec::Kind::Modified;
  s.sigma = sigma;
  s.rho = rho_of_epsilon(sigma);
  s.eta = eta > 0 ? eta : 0.1 * s.rho;
  s.gain = 1.0 / sigma;
  return s;
}

/// Monte-Carlo estimate of the per-neuron log-complexity: sample mean and
/// standard error of (1/n) log |det(-I + J)| over independent couplings.
/// This is the self-averaging quantity whose large-n limit is c(sigma);
/// near criticality it also gives the growth rate of the expected number of
/// equilibria. Exactly singular draws are excluded and counted.
inline ComplexityEstimate kac_rice_mc(int n, double sigma, int n_matrices, std::uint64_t seed,
                                      int n_threads = 1) {
  if (n < 2) throw std::invalid_argument("kac_rice_mc: n must be >= 2");
  if (n_matrices < 2) throw std::invalid_argument("kac_rice_mc: need >= 2 matrices");

  std::vector<double> vals(static_cast<std::size_t>(n_matrices));
  std::vector<char> ok(static_cast<std::size_t>(n_matrices), 0);
  parallel_tasks(n_matrices, n_threads, [&](int i) {
    const auto J = sample_matrix(n, sigma, derive_seed(seed, static_cast<std::uint64_t>(i)));
    const LogDet ld = log_abs_det_shifted(J);
    if (!ld.singular) {
      vals[static_cast<std::size_t>(i)] = ld.value;
      ok[static_cast<std::size_t>(i)] = 1;
    }
  });

  RunningStat stat;
  int excluded = 0;
  for (int i = 0; i < n_matrices; ++i) {
    if (ok[static_cast<std::size_t>(i)])
      stat.add(vals[static_cast<std::size_t>(i)]);
    else
      ++excluded;
  }
  if (stat.count() < 2)
    throw std::runtime_error("kac_rice_mc: fewer than 2 non-singular samples");

  ComplexityEstimate e;
  e.sigma = sigma;
  e.n = n;
  e.value = stat.mean();
  e.stderr_ = stat.stderr_of_mean();
  e.method = ComplexityEstimate::Method::kac_rice_mc;
  e.samples = stat.count();
  e.excluded = excluded;
  return e;
}

/// The sigma > 1 at which n*(sigma-1)^2 reaches the given nat count:
/// 1 + sqrt(target/n). Quantifies the O(n^{-1/2}) thickness of the edge.
inline double edge_thickness(int n, double target_nats) {
  if (n < 1 || target_nats <= 0)
    throw std::invalid_argument("edge_thickness: need n >= 1 and target > 0");
  return 1.0 + std::sqrt(target_nats / static_cast<double>(n));
}

}  // namespace randnet

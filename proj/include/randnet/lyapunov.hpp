#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "randnet/connectivity.hpp"
#include "randnet/network.hpp"
#include "randnet/parallel.hpp"
#include "randnet/rng.hpp"
#include "randnet/stats.hpp"

namespace randnet {

struct BenettinParams {
  double dt = 0.01;
  double transient = 200.0;
  double t_total = 2000.0;
  double renorm_every = 1.0;
};

/// Maximal Lyapunov exponent per unit time. The susceptibility convention of
/// the growth rate of Psi^2 (a squared Frobenius norm) runs at exactly twice
/// the Benettin tangent-vector rate; both are stored, the critical exponent
/// is the same in either.
struct LyapunovEstimate {
  enum class Convention { benettin, susceptibility };

  double lambda = 0.0;                 // Benettin convention, primary
  double lambda_susceptibility = 0.0;  // = 2 * lambda
  double stderr_ = 0.0;                // across realizations; 0 for one run
  double sigma = 0.0;
  int n = 0;
  BenettinParams params;
  Convention convention = Convention::benettin;
};

/// Benettin estimator for a generic smooth field: co-integrates the state and
/// one tangent vector delta' = Df(x) delta with RK4, renormalizing the
/// tangent every renorm_every time units. `field(x)` is the velocity,
/// `tangent(x, v)` the Jacobian-vector product at x.
template <class Field, class Tangent>
double benettin_generic(Field&& field, Tangent&& tangent, Vec x, Vec delta,
                        const BenettinParams& p) {
  if (!(p.t_total > p.transient && p.transient >= 0))
    throw std::invalid_argument("benettin: need t_total > transient >= 0");
  if (p.dt <= 0 || p.renorm_every <= 0)
    throw std::invalid_argument("benettin: dt and renorm_every must be > 0");

  delta.normalize();
  const long steps_per_renorm = std::max(1L, std::lround(p.renorm_every / p.dt));
  const long total_steps = std::lround(p.t_total / p.dt);
  const long transient_steps = std::lround(p.transient / p.dt);

  double log_growth = 0.0;
  long accum_steps = 0;
  Vec k1x, k2x, k3x, k4x, k1v, k2v, k3v, k4v;
  for (long step = 1; step <= total_steps; ++step) {
    k1x = field(x);
    k1v = tangent(x, delta);
    const Vec x2 = x + (0.5 * p.dt) * k1x;
    k2x = field(x2);
    k2v = tangent(x2, Vec(delta + (0.5 * p.dt) * k1v));
    const Vec x3 = x + (0.5 * p.dt) * k2x;
    k3x = field(x3);
    k3v = tangent(x3, Vec(delta + (0.5 * p.dt) * k2v));
    const Vec x4 = x + p.dt * k3x;
    k4x = field(x4);
    k4v = tangent(x4, Vec(delta + p.dt * k3v));
    x += (p.dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    delta += (p.dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

    if (!x.allFinite()) throw BlowupError(static_cast<double>(step) * p.dt);

    if (step % steps_per_renorm == 0) {
      const double g = delta.norm();
      if (g == 0.0) throw std::runtime_error("benettin: tangent vector collapsed to zero");
      if (step > transient_steps) {
        log_growth += std::log(g);
        accum_steps += steps_per_renorm;
      }
      delta /= g;
    }
  }
  if (accum_steps == 0) throw std::runtime_error("benettin: no accumulation window");
  return log_growth / (static_cast<double>(accum_steps) * p.dt);
}

/// Benettin estimator specialized to the network dynamics. Equivalent to the
/// generic version but shares the sigmoid evaluations between the state and
/// tangent stages, which dominates the cost at large n.
inline LyapunovEstimate max_lyapunov_benettin(const Mat& J, const SigmoidSpec& s, const Vec& x0,
                                              const BenettinParams& p) {
  if (J.rows() != J.cols() || J.cols() != x0.size())
    throw std::invalid_argument("max_lyapunov_benettin: dimension mismatch");
  if (!(p.t_total > p.transient && p.transient >= 0))
    throw std::invalid_argument("max_lyapunov_benettin: need t_total > transient >= 0");
  const auto n = x0.size();

  // stage derivative of the pair (x, v): kx = -xs + J*S(xs), kv = -vs + J*(S'(xs).*vs)
  Vec sx(n), gx(n), tmp(n);
  auto stage = [&](const Vec& xs, const Vec& vs, Vec& kx, Vec& kv) {
    for (Eigen::Index i = 0; i < n; ++i) {
      sx[i] = sigmoid_eval(s, xs[i]);
      gx[i] = sigmoid_deriv(s, xs[i]);
    }
    kx = -xs;
    kx.noalias() += J * sx;
    tmp = gx.cwiseProduct(vs);
    kv = -vs;
    kv.noalias() += J * tmp;
  };

  Counter64 dir_rng(0x7ab2c3d4e5f60718ULL ^ static_cast<std::uint64_t>(n));
  Vec x = x0;
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = dir_rng.next_normal();
  v.normalize();

  const long steps_per_renorm = std::max(1L, std::lround(p.renorm_every / p.dt));
  const long total_steps = std::lround(p.t_total / p.dt);
  const long transient_steps = std::lround(p.transient / p.dt);

  double log_growth = 0.0;
  long accum_steps = 0;
  Vec k1x(n), k2x(n), k3x(n), k4x(n), k1v(n), k2v(n), k3v(n), k4v(n), xs(n), vs(n);
  for (long step = 1; step <= total_steps; ++step) {
    stage(x, v, k1x, k1v);
    xs = x + (0.5 * p.dt) * k1x;
    vs = v + (0.5 * p.dt) * k1v;
    stage(xs, vs, k2x, k2v);
    xs = x + (0.5 * p.dt) * k2x;
    vs = v + (0.5 * p.dt) * k2v;
    stage(xs, vs, k3x, k3v);
    xs = x + p.dt * k3x;
    vs = v + p.dt * k3v;
    stage(xs, vs, k4x, k4v);
    x += (p.dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += (p.dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

    if (!x.allFinite()) throw BlowupError(static_cast<double>(step) * p.dt);

    if (step % steps_per_renorm == 0) {
      const double g = v.norm();
      if (g == 0.0) throw std::runtime_error("max_lyapunov_benettin: tangent collapsed");
      if (step > transient_steps) {
        log_growth += std::log(g);
        accum_steps += steps_per_renorm;
      }
      v /= g;
    }
  }

  LyapunovEstimate est;
  est.lambda = log_growth / (static_cast<double>(accum_steps) * p.dt);
  est.lambda_susceptibility = 2.0 * est.lambda;
  est.n = static_cast<int>(n);
  est.params = p;
  return est;
}

/// Mean-square susceptibility Psi^2(tau) = (1/n) |M(t0+tau, t0)|_F^2 from the
/// full fundamental matrix of the variational equation, propagated by RK4
/// from M = I after a transient of length t0. O(n^2) state per step, so n is
/// capped at 300.
inline std::vector<std::pair<double, double>> susceptibility_trace(
    const Mat& J, const SigmoidSpec& s, const Vec& x0, double dt, double t0, double tau_max) {
  const auto n = x0.size();
  if (n > 300) throw std::invalid_argument("susceptibility_trace: n capped at 300");
  if (dt <= 0 || tau_max <= 0)
    throw std::invalid_argument("susceptibility_trace: dt and tau_max must be > 0");

  auto field = [&](const Vec& x) { return vector_field(J, s, x); };
  Vec x = x0;
  const long warmup = std::lround(t0 / dt);
  for (long k = 0; k < warmup; ++k) {
    x = rk4_step(field, x, dt);
    if (!x.allFinite()) throw BlowupError(static_cast<double>(k + 1) * dt);
  }

  Mat M = Mat::Identity(n, n);
  std::vector<std::pair<double, double>> trace;
  const long steps = std::lround(tau_max / dt);
  trace.reserve(static_cast<std::size_t>(steps) + 1);
  trace.emplace_back(0.0, 1.0);  // (1/n) |I|_F^2 = 1

  Vec gx(n);
  Mat K1(n, n), K2(n, n), K3(n, n), K4(n, n), Ms(n, n);
  auto mat_stage = [&](const Vec& xs, const Mat& Mstage, Mat& K) {
    for (Eigen::Index i = 0; i < n; ++i) gx[i] = sigmoid_deriv(s, xs[i]);
    K = gx.asDiagonal() * Mstage;
    K = J * K;
    K -= Mstage;
  };

  for (long k = 1; k <= steps; ++k) {
    const Vec f1 = field(x);
    const Vec x2 = x + (0.5 * dt) * f1;
    const Vec f2 = field(x2);
    const Vec x3 = x + (0.5 * dt) * f2;
    const Vec f3 = field(x3);
    const Vec x4 = x + dt * f3;
    const Vec f4 = field(x4);

    mat_stage(x, M, K1);
    Ms = M + (0.5 * dt) * K1;
    mat_stage(x2, Ms, K2);
    Ms = M + (0.5 * dt) * K2;
    mat_stage(x3, Ms, K3);
    Ms = M + dt * K3;
    mat_stage(x4, Ms, K4);

    M += (dt / 6.0) * (K1 + 2.0 * K2 + 2.0 * K3 + K4);
    x += (dt / 6.0) * (f1 + 2.0 * f2 + 2.0 * f3 + f4);

    const double tau = static_cast<double>(k) * dt;
    const double psi2 = M.squaredNorm() / static_cast<double>(n);
    if (!std::isfinite(psi2) || psi2 > 1e290) throw BlowupError(tau);
    trace.emplace_back(tau, psi2);
  }
  return trace;
}

struct LyapunovCurveRow {
  double sigma = 0.0;
  double mean = 0.0;
  double stderr_ = 0.0;
  std::vector<double> lambdas;
  std::vector<std::uint64_t> seeds;
};

struct LyapunovCurve {
  int n = 0;
  BenettinParams params;
  std::vector<LyapunovCurveRow> rows;
};

/// Mean Lyapunov exponent over n_realizations fresh couplings per sigma.
/// Initial conditions are uniform in [-1, 1]^n per realization; seeds are
/// derived per (sigma, realization) task so results do not depend on the
/// worker count.
inline LyapunovCurve lyapunov_curve(const std::vector<double>& sigma_list, int n,
                                    int n_realizations, const BenettinParams& p,
                                    std::uint64_t seed, int n_threads = 1) {
  if (sigma_list.empty()) throw std::invalid_argument("lyapunov_curve: empty sigma list");
  if (n_realizations < 1) throw std::invalid_argument("lyapunov_curve: need realizations >= 1");

  LyapunovCurve curve;
  curve.n = n;
  curve.params = p;
  curve.rows.resize(sigma_list.size());
  for (std::size_t si = 0; si < sigma_list.size(); ++si) {
    curve.rows[si].sigma = sigma_list[si];
    curve.rows[si].lambdas.resize(static_cast<std::size_t>(n_realizations));
    curve.rows[si].seeds.resize(static_cast<std::size_t>(n_realizations));
  }

  const int total = static_cast<int>(sigma_list.size()) * n_realizations;
  parallel_tasks(total, n_threads, [&](int task) {
    const std::size_t si = static_cast<std::size_t>(task / n_realizations);
    const std::size_t r = static_cast<std::size_t>(task % n_realizations);
    const std::uint64_t task_seed = derive_seed(seed, static_cast<std::uint64_t>(task));
    const auto J = sample_matrix(n, sigma_list[si], task_seed);
    Counter64 rng(derive_seed(task_seed, 1));
    Vec x0(n);
    for (int i = 0; i < n; ++i) x0[i] = rng.next_uniform(-1.0, 1.0);
    auto est = max_lyapunov_benettin(J.entries, SigmoidSpec::base(), x0, p);
    curve.rows[si].lambdas[r] = est.lambda;
    curve.rows[si].seeds[r] = task_seed;
  });

  for (auto& row : curve.rows) {
    const RunningStat stat = accumulate_stats(row.lambdas);
    row.mean = stat.mean();
    row.stderr_ = stat.stderr_of_mean();
  }
  return curve;
}

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r2 = 0.0;
};

/// Least squares in log-log coordinates: v ~ prefactor * u^exponent.
inline PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("fit_power_law: need >= 3 points");
  std::vector<double> lu, lv;
  lu.reserve(points.size());
  lv.reserve(points.size());
  for (const auto& [u, v] : points) {
    if (u <= 0 || v <= 0) throw std::invalid_argument("fit_power_law: inputs must be positive");
    lu.push_back(std::log(u));
    lv.push_back(std::log(v));
  }
  const LinearFit f = fit_linear(lu, lv);
  return PowerLawFit{f.slope, std::exp(f.intercept), f.r2};
}

}  // namespace randnet

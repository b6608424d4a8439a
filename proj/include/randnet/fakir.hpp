#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "randnet/network.hpp"  // BlowupError
#include "randnet/parallel.hpp"
#include "randnet/rng.hpp"
#include "randnet/stats.hpp"

namespace randnet {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Fakir-bed landscape: a frictionless point particle, H = |p|^2/2 + U(q),
/// scattering off k soft Gaussian hills inside a smooth confinement wall.
/// The wall is a potential rather than a hard reflection so the variational
/// (tangent) flow is defined everywhere.
struct FakirParams {
  double hill_amp = 1.0;         // A
  double hill_width = 0.3;       // w
  double placement_radius = 5.0; // hills land uniformly in this disc
  double confine_radius = 6.0;   // R of the wall term A_w (|q|^2/R^2)^m
  double confine_amp = 10.0;     // A_w
  int confine_m = 4;             // wall stiffness exponent
  double energy0 = 0.5;          // initial energy; below hill_amp the tops are off-limits
};

struct FakirLandscape {
  int k = 0;
  Eigen::Matrix2Xd centers;  // one column per hill
  FakirParams prm;
  std::uint64_t seed = 0;
};

struct ParticleState {
  Vec2 q = Vec2::Zero();
  Vec2 p = Vec2::Zero();
  double t = 0.0;
};

inline FakirLandscape sample_landscape(int k, const FakirParams& prm, std::uint64_t seed) {
  if (k < 0) throw std::invalid_argument("sample_landscape: k must be >= 0");
  FakirLandscape l;
  l.k = k;
  l.prm = prm;
  l.seed = seed;
  l.centers.resize(2, k);
  Counter64 rng(seed);
  for (int a = 0; a < k; ++a) {
    // uniform in the disc: area-correct radial law
    const double r = prm.placement_radius * std::sqrt(rng.next_uniform());
    const double th = 6.283185307179586476925286766559 * rng.next_uniform();
    l.centers(0, a) = r * std::cos(th);
    l.centers(1, a) = r * std::sin(th);
  }
  return l;
}

struct PotentialEval {
  double U = 0.0;
  Vec2 grad = Vec2::Zero();
};

namespace detail {

// U, grad U and optionally the Hessian in one pass over the hills.
inline PotentialEval potential_impl(const FakirLandscape& l, const Vec2& q, Mat2* hess) {
  const auto& prm = l.prm;
  const double inv_w2 = 1.0 / (prm.hill_width * prm.hill_width);
  PotentialEval out;
  if (hess) hess->setZero();
  for (int a = 0; a < l.k; ++a) {
    const Vec2 d = q - l.centers.col(a);
    const double e = prm.hill_amp * std::exp(-0.5 * d.squaredNorm() * inv_w2);
    out.U += e;
    out.grad -= (e * inv_w2) * d;
    if (hess) *hess += (e * inv_w2) * (inv_w2 * d * d.transpose() - Mat2::Identity());
  }
  // wall: A_w * (|q|^2 / R^2)^m
  const double r2 = q.squaredNorm();
  const double R2 = prm.confine_radius * prm.confine_radius;
  const int m = prm.confine_m;
  const double u = r2 / R2;
  const double um1 = std::pow(u, m - 1);
  out.U += prm.confine_amp * um1 * u;
  const double c = prm.confine_amp / R2;
  out.grad += (2.0 * m * c * um1) * q;
  if (hess) {
    *hess += (2.0 * m * c * um1) * Mat2::Identity();
    if (m >= 2) {
      const double um2 = (r2 > 0) ? um1 / u : 0.0;
      *hess += (4.0 * m * (m - 1) * c / R2 * um2) * q * q.transpose();
    }
  }
  return out;
}

}  // namespace detail

inline PotentialEval potential(const FakirLandscape& l, const Vec2& q) {
  return detail::potential_impl(l, q, nullptr);
}

inline Mat2 potential_hessian(const FakirLandscape& l, const Vec2& q) {
  Mat2 h;
  detail::potential_impl(l, q, &h);
  return h;
}

inline double total_energy(const FakirLandscape& l, const ParticleState& s) {
  return 0.5 * s.p.squaredNorm() + potential(l, s.q).U;
}

/// Initial condition at energy prm.energy0: position rejection-sampled in the
/// low-potential holes between hills, momentum direction uniform.
inline ParticleState random_initial_state(const FakirLandscape& l, std::uint64_t seed) {
  Counter64 rng(seed);
  const auto& prm = l.prm;
  const double u_cap = 0.1 * prm.energy0;
  ParticleState st;
  Vec2 best = Vec2::Zero();
  double best_u = detail::potential_impl(l, best, nullptr).U;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const double r = prm.placement_radius * std::sqrt(rng.next_uniform());
    const double th = 6.283185307179586476925286766559 * rng.next_uniform();
    const Vec2 q(r * std::cos(th), r * std::sin(th));
    const double u = potential(l, q).U;
    if (u < best_u) {
      best = q;
      best_u = u;
    }
    if (u <= u_cap) break;
  }
  st.q = best;
  const double kinetic = std::max(prm.energy0 - best_u, 1e-6 * prm.energy0);
  const double speed = std::sqrt(2.0 * kinetic);
  const double phi = 6.283185307179586476925286766559 * rng.next_uniform();
  st.p = speed * Vec2(std::cos(phi), std::sin(phi));
  return st;
}

/// Velocity-Verlet (symplectic, time-reversible) integration of
/// qdot = p, pdot = -grad U.
inline std::vector<ParticleState> integrate_particle(const FakirLandscape& l, ParticleState s0,
                                                     double dt, double t_end,
                                                     int store_every = 1) {
  if (dt <= 0 || t_end <= 0)
    throw std::invalid_argument("integrate_particle: dt and t_end must be > 0");
  if (store_every < 1) store_every = 1;
  const long steps = std::lround(std::ceil(t_end / dt - 1e-12));
  std::vector<ParticleState> traj;
  traj.reserve(static_cast<std::size_t>(steps / store_every) + 2);
  traj.push_back(s0);

  Vec2 g = potential(l, s0.q).grad;
  Vec2 q = s0.q, p = s0.p;
  for (long k = 1; k <= steps; ++k) {
    const Vec2 p_half = p - (0.5 * dt) * g;
    q += dt * p_half;
    g = potential(l, q).grad;
    p = p_half - (0.5 * dt) * g;
    const double t = s0.t + static_cast<double>(k) * dt;
    if (!q.allFinite() || !p.allFinite()) throw BlowupError(t);
    if (k % store_every == 0 || k == steps) traj.push_back(ParticleState{q, p, t});
  }
  return traj;
}

/// Maximal Lyapunov exponent of the 4-D phase-space flow, Benettin scheme.
/// The tangent pair (dq, dp) is advanced with the exact derivative of the
/// Verlet map, using the analytic Hessian of U.
inline double fakir_lyapunov(const FakirLandscape& l, const ParticleState& s0, double dt,
                             double transient, double t_total, double renorm_every) {
  if (!(t_total > transient && transient >= 0))
    throw std::invalid_argument("fakir_lyapunov: need t_total > transient >= 0");
  if (dt <= 0 || renorm_every <= 0)
    throw std::invalid_argument("fakir_lyapunov: dt and renorm_every must be > 0");

  Vec2 q = s0.q, p = s0.p;
  Mat2 hess;
  PotentialEval pe = detail::potential_impl(l, q, &hess);
  Vec2 g = pe.grad;

  Counter64 rng(l.seed ^ 0x9e3779b97f4a7c15ULL);
  Eigen::Vector4d delta;
  for (int i = 0; i < 4; ++i) delta[i] = rng.next_normal();
  delta.normalize();

  const long steps_per_renorm = std::max(1L, std::lround(renorm_every / dt));
  const long total_steps = std::lround(t_total / dt);
  const long transient_steps = std::lround(transient / dt);

  double log_growth = 0.0;
  long accum_steps = 0;
  for (long step = 1; step <= total_steps; ++step) {
    // state half-kick / drift, tangent follows the same map
    const Vec2 p_half = p - (0.5 * dt) * g;
    Eigen::Vector2d dq = delta.head<2>(), dp = delta.tail<2>();
    const Vec2 dp_half = dp - (0.5 * dt) * (hess * dq);
    q += dt * p_half;
    dq += dt * dp_half;
    pe = detail::potential_impl(l, q, &hess);
    g = pe.grad;
    p = p_half - (0.5 * dt) * g;
    dp = dp_half - (0.5 * dt) * (hess * dq);
    delta.head<2>() = dq;
    delta.tail<2>() = dp;

    if (!q.allFinite() || !p.allFinite()) throw BlowupError(static_cast<double>(step) * dt);

    if (step % steps_per_renorm == 0) {
      const double growth = delta.norm();
      if (growth == 0.0) throw std::runtime_error("fakir_lyapunov: tangent collapsed");
      if (step > transient_steps) {
        log_growth += std::log(growth);
        accum_steps += steps_per_renorm;
      }
      delta /= growth;
    }
  }
  if (accum_steps == 0) throw std::runtime_error("fakir_lyapunov: no accumulation window");
  return log_growth / (static_cast<double>(accum_steps) * dt);
}

/// Unstable critical points of U inside the confinement disc: multi-start
/// Newton on grad U = 0, deduplicated, keeping points whose Hessian has at
/// least one negative eigenvalue (hill tops and saddles).
inline int count_critical_points(const FakirLandscape& l, int n_starts, std::uint64_t seed) {
  Counter64 rng(seed);
  const double span = l.prm.placement_radius + 2.0 * l.prm.hill_width;
  std::vector<Vec2> found;
  const double dedup = 1e-5;
  const double grad_tol = 1e-11 * std::max(1.0, l.prm.hill_amp / l.prm.hill_width);

  for (int s = 0; s < n_starts; ++s) {
    const double r = span * std::sqrt(rng.next_uniform());
    const double th = 6.283185307179586476925286766559 * rng.next_uniform();
    Vec2 q(r * std::cos(th), r * std::sin(th));
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      Mat2 h;
      const PotentialEval pe = detail::potential_impl(l, q, &h);
      if (pe.grad.lpNorm<Eigen::Infinity>() <= grad_tol) {
        ok = true;
        break;
      }
      const double det = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
      if (std::abs(det) < 1e-300) break;
      Vec2 step = -h.inverse() * pe.grad;
      // crude damping: do not jump more than a hill width at a time
      const double sn = step.norm();
      if (sn > l.prm.hill_width) step *= l.prm.hill_width / sn;
      q += step;
      if (q.norm() > 2.0 * l.prm.confine_radius) break;
    }
    if (!ok || q.norm() >= l.prm.confine_radius) continue;
    bool dup = false;
    for (const auto& f : found)
      if ((f - q).norm() < dedup) {
        dup = true;
        break;
      }
    if (dup) continue;
    const Mat2 h = potential_hessian(l, q);
    Eigen::SelfAdjointEigenSolver<Mat2> es(h);
    if (es.eigenvalues().minCoeff() < -1e-9) found.push_back(q);
  }
  return static_cast<int>(found.size());
}

struct SlopeExperiment {
  std::vector<int> k_list;
  std::vector<double> mean;     // mean lambda per k
  std::vector<double> stderr_;  // stderr per k
  std::vector<std::vector<double>> lambdas;        // per k, per landscape
  std::vector<std::vector<std::uint64_t>> seeds;   // per k, per landscape
  double slope = 0.0;      // of mean lambda against log k
  double intercept = 0.0;
  double r2 = 0.0;
};

struct FakirRunParams {
  FakirParams landscape;
  double dt = 1e-3;
  double transient = 50.0;
  double t_total = 1050.0;
  double renorm_every = 1.0;
};

/// Fig-1-style experiment: mean Lyapunov exponent over fresh landscapes for
/// each hill count k, then ordinary least squares of the mean against log k.
inline SlopeExperiment slope_experiment(const std::vector<int>& k_list, int n_landscapes,
                                        const FakirRunParams& rp, std::uint64_t seed,
                                        int n_threads = 1) {
  if (k_list.empty() || n_landscapes < 2)
    throw std::invalid_argument("slope_experiment: need k values and >= 2 landscapes");

  SlopeExperiment ex;
  ex.k_list = k_list;
  ex.lambdas.assign(k_list.size(), std::vector<double>(static_cast<std::size_t>(n_landscapes)));
  ex.seeds.assign(k_list.size(),
                  std::vector<std::uint64_t>(static_cast<std::size_t>(n_landscapes)));

  const int total = static_cast<int>(k_list.size()) * n_landscapes;
  parallel_tasks(total, n_threads, [&](int task) {
    const std::size_t ki = static_cast<std::size_t>(task / n_landscapes);
    const std::size_t li = static_cast<std::size_t>(task % n_landscapes);
    const std::uint64_t lseed = derive_seed(seed, static_cast<std::uint64_t>(task));
    const FakirLandscape l = sample_landscape(k_list[ki], rp.landscape, lseed);
    const ParticleState s0 = random_initial_state(l, derive_seed(lseed, 7));
    ex.lambdas[ki][li] = fakir_lyapunov(l, s0, rp.dt, rp.transient, rp.t_total, rp.renorm_every);
    ex.seeds[ki][li] = lseed;
  });

  std::vector<double> logk, means;
  for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
    const RunningStat st = accumulate_stats(ex.lambdas[ki]);
    ex.mean.push_back(st.mean());
    ex.stderr_.push_back(st.stderr_of_mean());
    logk.push_back(std::log(static_cast<double>(k_list[ki])));
    means.push_back(st.mean());
  }
  const LinearFit f = fit_linear(logk, means);
  ex.slope = f.slope;
  ex.intercept = f.intercept;
  ex.r2 = f.r2;
  return ex;
}

}  // namespace randnet

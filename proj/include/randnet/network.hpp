#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "randnet/sigmoid.hpp"

namespace randnet {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Thrown when a trajectory leaves the representable range; carries the time
/// at which the first non-finite state appeared.
struct BlowupError : std::runtime_error {
  double t;
  explicit BlowupError(double time)
      : std::runtime_error("non-finite state at t = " + std::to_string(time)), t(time) {}
};

inline Vec apply_sigmoid(const SigmoidSpec& s, const Vec& x) {
  Vec y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = sigmoid_eval(s, x[i]);
  return y;
}

inline Vec apply_sigmoid_deriv(const SigmoidSpec& s, const Vec& x) {
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = sigmoid_deriv(s, x[i]);
  return g;
}

/// Right-hand side of the network dynamics: -x + J * S(x).
template <class DerivedJ, class DerivedX>
Vec vector_field(const Eigen::MatrixBase<DerivedJ>& J, const SigmoidSpec& s,
                 const Eigen::MatrixBase<DerivedX>& x) {
  if (J.rows() != J.cols() || J.cols() != x.size())
    throw std::invalid_argument("vector_field: dimension mismatch");
  const Vec sx = apply_sigmoid(s, x);
  Vec f = -x;
  f.noalias() += J * sx;
  return f;
}

/// Jacobian of the vector field at x: -I + J * diag(S'(x)). Column j of the
/// product is column j of J scaled by S'(x_j).
template <class DerivedJ, class DerivedX>
Mat jacobian_at(const Eigen::MatrixBase<DerivedJ>& J, const SigmoidSpec& s,
                const Eigen::MatrixBase<DerivedX>& x) {
  if (J.rows() != J.cols() || J.cols() != x.size())
    throw std::invalid_argument("jacobian_at: dimension mismatch");
  const Vec g = apply_sigmoid_deriv(s, x);
  Mat A = J * g.asDiagonal();
  A.diagonal().array() -= 1.0;
  return A;
}

struct NetworkState {
  Vec x;
  double t = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  double dt = 0.0;
  int store_every = 1;
  std::string method = "rk4";

  const Vec& final_state() const { return states.back(); }
  double final_time() const { return times.back(); }
};

/// One classical RK4 step of a generic autonomous field. `f` maps Vec -> Vec.
template <class Field>
Vec rk4_step(Field&& f, const Vec& x, double dt) {
  const Vec k1 = f(x);
  const Vec k2 = f(Vec(x + 0.5 * dt * k1));
  const Vec k3 = f(Vec(x + 0.5 * dt * k2));
  const Vec k4 = f(Vec(x + dt * k3));
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Fixed-step RK4 integration of the network dynamics from x0 to at least
/// t_end. States are recorded every `store_every` steps (plus the final one).
inline Trajectory integrate(const Mat& J, const SigmoidSpec& s, Vec x0, double dt,
                            double t_end, int store_every = 1) {
  if (dt <= 0 || t_end <= 0) throw std::invalid_argument("integrate: dt and t_end must be > 0");
  if (store_every < 1) store_every = 1;
  if (J.rows() != J.cols() || J.cols() != x0.size())
    throw std::invalid_argument("integrate: dimension mismatch");

  const auto n_steps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
  Trajectory traj;
  traj.dt = dt;
  traj.store_every = store_every;
  traj.times.reserve(static_cast<std::size_t>(n_steps / store_every + 2));
  traj.states.reserve(static_cast<std::size_t>(n_steps / store_every + 2));
  traj.times.push_back(0.0);
  traj.states.push_back(x0);

  auto field = [&](const Vec& x) { return vector_field(J, s, x); };
  Vec x = std::move(x0);
  for (long k = 1; k <= n_steps; ++k) {
    x = rk4_step(field, x, dt);
    const double t = static_cast<double>(k) * dt;
    if (!x.allFinite()) throw BlowupError(t);
    if (k % store_every == 0 || k == n_steps) {
      traj.times.push_back(t);
      traj.states.push_back(x);
    }
  }
  return traj;
}

}  // namespace randnet

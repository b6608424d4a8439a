#pragma once

#include <cmath>
#include <stdexcept>

namespace randnet {

/// Synaptic nonlinearity. The base kind is tanh: odd, saturating, unit slope
/// at the origin, derivative even and decreasing on x > 0. The modified kind
/// is exactly x/sigma inside |x| < rho, exactly tanh(x) outside
/// |x| > rho + eta, and a C1 cubic Hermite bridge in between; it is the
/// auxiliary nonlinearity whose slope never exceeds 1/sigma, which confines
/// all equilibria of the network to the ball of radius rho.
struct SigmoidSpec {
  enum class Kind { Base, Modified };

  Kind kind = Kind::Base;
  double sigma = 1.0;  // Modified: total gain 1 + eps
  double eta = 0.0;    // Modified: blend width
  double rho = 0.0;    // Modified: radius of the exactly-linear zone
  double gain = 1.0;   // slope at the origin

  static SigmoidSpec base() { return SigmoidSpec{}; }

  double saturation() const { return 1.0; }  // |tanh| < 1, linear zone below it
};

namespace detail {

struct HermiteBlend {
  double a, b;      // blend interval [a, b] = [rho, rho + eta]
  double v0, m0;    // value/slope at a
  double v1, m1;    // value/slope at b

  double eval(double x) const {
    const double h = b - a;
    const double u = (x - a) / h;
    const double u2 = u * u, u3 = u2 * u;
    return v0 * (2 * u3 - 3 * u2 + 1) + m0 * h * (u3 - 2 * u2 + u) +
           v1 * (-2 * u3 + 3 * u2) + m1 * h * (u3 - u2);
  }

  double deriv(double x) const {
    const double h = b - a;
    const double u = (x - a) / h;
    const double u2 = u * u;
    return (v0 * (6 * u2 - 6 * u) + m1 * h * (3 * u2 - 2 * u) +
            v1 * (-6 * u2 + 6 * u) + m0 * h * (3 * u2 - 4 * u + 1)) / h;
  }
};

inline HermiteBlend modified_blend(const SigmoidSpec& s) {
  const double a = s.rho, b = s.rho + s.eta;
  return HermiteBlend{a, b, a / s.sigma, 1.0 / s.sigma,
                      std::tanh(b), 1.0 - std::tanh(b) * std::tanh(b)};
}

}  // namespace detail

inline double sigmoid_eval(const SigmoidSpec& s, double x) {
  if (s.kind == SigmoidSpec::Kind::Base) return std::tanh(x);
  const double ax = std::abs(x);
  double v;
  if (ax < s.rho)
    v = ax / s.sigma;
  else if (ax > s.rho + s.eta)
    v = std::tanh(ax);
  else
    v = detail::modified_blend(s).eval(ax);
  return x < 0 ? -v : v;  // odd extension
}

inline double sigmoid_deriv(const SigmoidSpec& s, double x) {
  if (s.kind == SigmoidSpec::Kind::Base) {
    const double t = std::tanh(x);
    return 1.0 - t * t;
  }
  const double ax = std::abs(x);
  if (ax < s.rho) return 1.0 / s.sigma;
  if (ax > s.rho + s.eta) {
    const double t = std::tanh(ax);
    return 1.0 - t * t;
  }
  return detail::modified_blend(s).deriv(ax);  // derivative is even
}

}  // namespace randnet

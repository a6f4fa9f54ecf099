#pragma once

// Brute-force reference evaluations used by the tests. These work from
// explicit sample times and std::exp, independent of the library kernels.

#include "ddop/signal.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace oracle {

using cd = std::complex<double>;
using Signal = ddop::SampledSignal<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Value of s at time t (nearest sample when t is on the grid, zero outside).
inline cd value_at(const Signal& s, double t) {
  const double k = (t - s.t0()) / s.dt();
  const long long i = std::llround(k);
  if (std::abs(k - static_cast<double>(i)) > 1e-6) return 0.0;
  if (i < 0 || i >= s.size()) return 0.0;
  return s.samples()[i];
}

/// integral g(t) conj(gamma(t - tau)) e^{-j 2 pi nu (t - tau)} dt by Riemann sum on g's grid.
inline cd ambiguity(const Signal& g, const Signal& gamma, double tau, double nu) {
  cd acc = 0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double t = g.t0() + static_cast<double>(i) * g.dt();
    const cd other = value_at(gamma, t - tau);
    if (other == cd(0)) continue;
    acc += g.samples()[i] * std::conj(other) * std::exp(cd(0, -kTwoPi * nu * (t - tau)));
  }
  return acc * g.dt();
}

/// integral x(t) conj(y(t)) dt on x's grid.
inline cd inner(const Signal& x, const Signal& y) { return ambiguity(x, y, 0.0, 0.0); }

inline Signal random_signal(std::mt19937_64& rng, Eigen::Index len, double dt, double t0) {
  std::normal_distribution<double> g;
  Signal::Samples v(len);
  for (auto& z : v) z = {g(rng), g(rng)};
  return Signal(std::move(v), dt, t0);
}

}  // namespace oracle

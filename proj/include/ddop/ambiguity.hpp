#pragma once

#include "ddop/signal.hpp"

#include <vector>

namespace ddop {

// Cross-ambiguity convention used throughout:
//   A_{g,gamma}(tau, nu) = integral g(t) conj(gamma(t - tau)) e^{-j 2 pi nu (t - tau)} dt
// i.e. the Doppler phase is referenced to the delayed pulse.

/// Ambiguity values on the lattice (mbar * delay_step, nbar * doppler_step)
/// with |mbar| <= M-1, |nbar| <= N-1.
template <typename Scalar = double>
struct AmbiguityGrid {
  ComplexMatrix<Scalar> values;  // (2M-1) x (2N-1), row M-1 / column N-1 is the origin
  int M = 1;
  int N = 1;
  Scalar delay_step = 0;
  Scalar doppler_step = 0;

  std::complex<Scalar> at(int mbar, int nbar) const { return values(mbar + M - 1, nbar + N - 1); }
  std::complex<Scalar>& at(int mbar, int nbar) { return values(mbar + M - 1, nbar + N - 1); }
};

namespace detail {

/// Non-zero products g(t) conj(gamma(t - tau)) on g's grid, with the local
/// time t - tau of each product.
template <typename Scalar>
struct DelayProduct {
  std::vector<std::complex<Scalar>> values;
  std::vector<Scalar> local_times;
  Scalar dt = 0;
};

template <typename Scalar>
DelayProduct<Scalar> delay_product(const SampledSignal<Scalar>& g,
                                   const SampledSignal<Scalar>& gamma, Index shift) {
  // gamma sample j sits at g sample j + offset; t - tau maps g sample i to gamma sample i - offset - shift.
  const Index offset = grid_offset(g, gamma);
  const Index lag = offset + shift;
  const Index begin = std::max<Index>(0, lag);
  const Index end = std::min<Index>(g.size(), lag + gamma.size());
  DelayProduct<Scalar> out;
  out.dt = g.dt();
  for (Index i = begin; i < end; ++i) {
    const Index j = i - lag;
    const std::complex<Scalar> v = g.samples()[i] * std::conj(gamma.samples()[j]);
    if (v == std::complex<Scalar>(0)) continue;
    out.values.push_back(v);
    out.local_times.push_back(gamma.time(j));
  }
  return out;
}

template <typename Scalar>
std::complex<Scalar> doppler_sum(const DelayProduct<Scalar>& prod, Scalar nu) {
  std::complex<Scalar> acc(0);
  if (nu == Scalar(0)) {
    for (const auto& v : prod.values) acc += v;
  } else {
    for (std::size_t k = 0; k < prod.values.size(); ++k) {
      acc += prod.values[k] * unit_phasor(-nu * prod.local_times[k]);
    }
  }
  return acc * prod.dt;
}

}  // namespace detail

template <typename Scalar>
std::complex<Scalar> cross_ambiguity(const SampledSignal<Scalar>& g,
                                     const SampledSignal<Scalar>& gamma, Scalar tau,
                                     Scalar nu) {
  const Index shift = whole_steps(tau, g.dt(), "cross_ambiguity delay");
  return detail::doppler_sum(detail::delay_product(g, gamma, shift), nu);
}

template <typename Scalar>
AmbiguityGrid<Scalar> ambiguity_grid(const SampledSignal<Scalar>& g,
                                     const SampledSignal<Scalar>& gamma, Scalar T_res,
                                     Scalar F_res, int M, int N) {
  if (M < 1 || N < 1) throw std::invalid_argument("ambiguity_grid: M and N must be >= 1");
  const Index step = whole_steps(T_res, g.dt(), "ambiguity_grid delay step");
  grid_offset(g, gamma);

  AmbiguityGrid<Scalar> grid;
  grid.M = M;
  grid.N = N;
  grid.delay_step = T_res;
  grid.doppler_step = F_res;
  grid.values.resize(2 * M - 1, 2 * N - 1);
  for (int m = -(M - 1); m <= M - 1; ++m) {
    const auto prod = detail::delay_product(g, gamma, static_cast<Index>(m) * step);
    for (int n = -(N - 1); n <= N - 1; ++n) {
      grid.at(m, n) = detail::doppler_sum(prod, static_cast<Scalar>(n) * F_res);
    }
  }
  return grid;
}

/// <g_{m,n}, gamma_{mdot,ndot}> evaluated directly from the shifted pulses,
/// where g_{m,n}(t) = g(t - m T_res) e^{j 2 pi n F_res (t - m T_res)}.
template <typename Scalar>
std::complex<Scalar> shifted_inner_product(const SampledSignal<Scalar>& g,
                                           const SampledSignal<Scalar>& gamma, int m, int n,
                                           int mdot, int ndot, Scalar T_res, Scalar F_res) {
  const auto lhs = tf_shift(g, m * T_res, n * F_res);
  const auto rhs = tf_shift(gamma, mdot * T_res, ndot * F_res);
  return inner_product(lhs, rhs);
}

/// Phase factor e^{j 2 pi n mbar F_res T_res} linking shifted_inner_product
/// to cross_ambiguity(g, gamma, mbar T_res, nbar F_res).
template <typename Scalar>
std::complex<Scalar> lattice_phase(int n, int mbar, Scalar T_res, Scalar F_res) {
  return unit_phasor(static_cast<Scalar>(n) * mbar * F_res * T_res);
}

}  // namespace ddop

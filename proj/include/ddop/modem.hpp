#pragma once

#include "ddop/pulses.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ddop {

/// M x N block of information symbols, X(m, n) = X_{m,n}.
template <typename Scalar = double>
using Frame = ComplexMatrix<Scalar>;

namespace detail {

/// Column n holds e^{j 2 pi n F_res tau_k} for each local time tau_k of g.
template <typename Scalar>
ComplexMatrix<Scalar> subcarrier_phasors(const SampledSignal<Scalar>& g, Scalar F_res, int N) {
  ComplexMatrix<Scalar> P(g.size(), N);
  for (int n = 0; n < N; ++n) {
    for (Index k = 0; k < g.size(); ++k) {
      P(k, n) = unit_phasor(static_cast<Scalar>(n) * F_res * g.time(k));
    }
  }
  return P;
}

}  // namespace detail

/// x(t) = sum_{m,n} X_{m,n} g(t - m T_res) e^{j 2 pi n F_res (t - m T_res)}.
template <typename Scalar>
SampledSignal<Scalar> mc_synthesize(const Frame<Scalar>& X, const SampledSignal<Scalar>& g,
                                    Scalar T_res, Scalar F_res) {
  if (X.rows() < 1 || X.cols() < 1) throw std::invalid_argument("mc_synthesize: empty frame");
  if (!X.allFinite()) throw std::invalid_argument("mc_synthesize: non-finite symbol");
  const Index step = whole_steps(T_res, g.dt(), "mc_synthesize delay step");
  const Index M = X.rows();
  const auto P = detail::subcarrier_phasors(g, F_res, static_cast<int>(X.cols()));

  typename SampledSignal<Scalar>::Samples x =
      SampledSignal<Scalar>::Samples::Zero((M - 1) * step + g.size());
  for (Index m = 0; m < M; ++m) {
    x.segment(m * step, g.size()) += g.samples().cwiseProduct(P * X.row(m).transpose());
  }
  return SampledSignal<Scalar>(std::move(x), g.dt(), g.t0());
}

/// ODDM frame without frame-wise CP. `extended` selects u_c as transmit
/// pulse (u when the extension depth resolves to 0).
template <typename Scalar>
SampledSignal<Scalar> oddm_modulate(const Frame<Scalar>& X, const DdopParams<Scalar>& p,
                                    bool extended) {
  p.validate();
  if (X.rows() != p.M || X.cols() != p.N) {
    throw std::invalid_argument("oddm_modulate: frame must be M x N");
  }
  const auto g = (extended && p.extension_depth() > 0) ? make_ddop_extended(p) : make_ddop(p);
  return mc_synthesize(X, g, p.delay_resolution(), p.doppler_resolution());
}

/// Matched-filter bank projection Y(m, n) = <y, u_{m,n}> / energy(u), with the
/// bank placed where oddm_modulate puts its pulses.
template <typename Scalar>
Frame<Scalar> mc_demodulate(const SampledSignal<Scalar>& y, const SampledSignal<Scalar>& gamma,
                            Scalar T_res, Scalar F_res, int M, int N) {
  const Index step = whole_steps(T_res, gamma.dt(), "mc_demodulate delay step");
  const Index offset = grid_offset(gamma, y);  // y sample 0 sits at gamma sample `offset`
  const auto P = detail::subcarrier_phasors(gamma, F_res, N);
  const Scalar scale = gamma.dt() / energy(gamma);

  Frame<Scalar> Y(M, N);
  typename SampledSignal<Scalar>::Samples seg(gamma.size());
  for (int m = 0; m < M; ++m) {
    for (Index k = 0; k < gamma.size(); ++k) {
      seg[k] = y.at(k + m * step - offset) * std::conj(gamma.samples()[k]);
    }
    Y.row(m) = (P.adjoint() * seg).transpose() * scale;
  }
  return Y;
}

/// Receiver for oddm_modulate: projects onto the u pulse bank.
template <typename Scalar>
Frame<Scalar> oddm_demodulate(const SampledSignal<Scalar>& y, const DdopParams<Scalar>& p) {
  const auto u = make_ddop(p);
  return mc_demodulate(y, u, p.delay_resolution(), p.doppler_resolution(), p.M, p.N);
}

/// Gray-mapped square QAM with unit average energy. order is 4, 16 or 64;
/// bits.size() must be a multiple of log2(order). MSB-first per symbol, the
/// first half of each group drives the in-phase axis.
ComplexVector<double> qam_map(std::span<const std::uint8_t> bits, int order);

/// Nearest-neighbour inverse of qam_map.
std::vector<std::uint8_t> qam_demap(const ComplexVector<double>& symbols, int order);

int bits_per_symbol(int order);

/// M x N frame of uniformly random QPSK symbols, deterministic per seed.
Frame<double> random_qpsk_frame(int M, int N, std::uint64_t seed);

}  // namespace ddop

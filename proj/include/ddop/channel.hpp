#pragma once

#include "ddop/pulses.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace ddop {

/// Sparse delay-Doppler channel h(tau, nu) = sum_p h_p delta(tau - l_p/W0) delta(nu - k_p/T0).
template <typename Scalar = double>
struct DdChannel {
  struct Path {
    std::complex<Scalar> gain{1, 0};
    int delay_tap = 0;    // l_p >= 0
    int doppler_tap = 0;  // k_p
  };

  std::vector<Path> paths;
  Scalar W0 = 1;  // delay resolution is 1/W0
  Scalar T0 = 1;  // Doppler resolution is 1/T0

  Scalar delay(const Path& p) const { return p.delay_tap / W0; }
  Scalar doppler(const Path& p) const { return p.doppler_tap / T0; }

  void validate() const {
    if (!(W0 > 0) || !(T0 > 0)) throw std::invalid_argument("DdChannel: W0 and T0 must be positive");
    for (const auto& p : paths) {
      if (p.delay_tap < 0) throw std::invalid_argument("DdChannel: negative delay tap");
    }
  }
};

/// Channel whose resolutions match the ODDM lattice of p (W0 = M/T, T0 = NT).
template <typename Scalar>
DdChannel<Scalar> lattice_channel(const DdopParams<Scalar>& p,
                                  std::vector<typename DdChannel<Scalar>::Path> paths = {}) {
  DdChannel<Scalar> ch;
  ch.paths = std::move(paths);
  ch.W0 = p.M / p.T;
  ch.T0 = p.N * p.T;
  return ch;
}

/// y(t) = sum_p h_p x(t - tau_p) e^{j 2 pi nu_p (t - tau_p)}. The output keeps
/// x's start time and grows by the largest path delay.
template <typename Scalar>
SampledSignal<Scalar> apply(const DdChannel<Scalar>& ch, const SampledSignal<Scalar>& x) {
  ch.validate();
  std::vector<Index> shifts;
  Index max_shift = 0;
  for (const auto& p : ch.paths) {
    shifts.push_back(whole_steps(ch.delay(p), x.dt(), "channel path delay"));
    max_shift = std::max(max_shift, shifts.back());
  }
  using Complex = std::complex<Scalar>;
  // -0 is the exact additive identity, so a lone unit path reproduces x bit for bit.
  typename SampledSignal<Scalar>::Samples y =
      SampledSignal<Scalar>::Samples::Constant(x.size() + max_shift, Complex(-0.0, -0.0));
  for (std::size_t q = 0; q < ch.paths.size(); ++q) {
    const auto& p = ch.paths[q];
    const Scalar nu = ch.doppler(p);
    for (Index k = 0; k < x.size(); ++k) {
      Complex v = x.samples()[k];
      if (nu != Scalar(0)) v *= unit_phasor(nu * x.time(k));
      if (p.gain != Complex(1, 0)) v *= p.gain;
      y[shifts[q] + k] += v;
    }
  }
  return SampledSignal<Scalar>(std::move(y), x.dt(), x.t0());
}

/// P paths with uniform taps l in [0, l_max], k in [-k_max, k_max] and
/// complex Gaussian gains scaled to unit total power. Deterministic per seed.
template <typename Scalar = double>
DdChannel<Scalar> random_channel(int P, int l_max, int k_max, std::uint64_t seed,
                                 Scalar W0 = 1, Scalar T0 = 1) {
  if (P < 1) throw std::invalid_argument("random_channel: P must be >= 1");
  if (l_max < 0 || k_max < 0) throw std::invalid_argument("random_channel: tap bounds must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> delay(0, l_max);
  std::uniform_int_distribution<int> doppler(-k_max, k_max);
  std::normal_distribution<Scalar> gauss(0, 1);

  DdChannel<Scalar> ch;
  ch.W0 = W0;
  ch.T0 = T0;
  Scalar power = 0;
  for (int i = 0; i < P; ++i) {
    typename DdChannel<Scalar>::Path path;
    path.delay_tap = delay(rng);
    path.doppler_tap = doppler(rng);
    do {
      path.gain = {gauss(rng), gauss(rng)};
    } while (std::norm(path.gain) == 0);
    power += std::norm(path.gain);
    ch.paths.push_back(path);
  }
  const Scalar scale = 1 / std::sqrt(power);
  for (auto& p : ch.paths) p.gain *= scale;
  return ch;
}

}  // namespace ddop

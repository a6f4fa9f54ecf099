#pragma once

#include "ddop/pulses.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace ddop {

template <typename Scalar = double>
struct Spectrum {
  RealVector<Scalar> freqs;      // strictly increasing, Hz
  ComplexVector<Scalar> values;  // same length as freqs
};

template <typename Scalar>
Scalar sinc(Scalar x) {
  if (x == 0) return 1;
  const Scalar px = kPi<Scalar> * x;
  return std::sin(px) / px;
}

/// Uniform grid lo, lo + step, ..., up to hi (inclusive when on the grid).
template <typename Scalar>
RealVector<Scalar> frequency_grid(Scalar lo, Scalar hi, Scalar step) {
  if (!(step > 0) || !(hi >= lo)) throw std::invalid_argument("frequency_grid: bad range");
  const Index count = static_cast<Index>(std::floor((hi - lo) / step + Scalar(1e-9))) + 1;
  RealVector<Scalar> f(count);
  for (Index i = 0; i < count; ++i) f[i] = lo + static_cast<Scalar>(i) * step;
  return f;
}

/// Default analysis grid for a DDOP: |f| <= 2M/T with step 1/(4NT).
template <typename Scalar>
RealVector<Scalar> ddop_frequency_grid(const DdopParams<Scalar>& p) {
  const Index half = 2 * static_cast<Index>(p.M) * 4 * p.N;  // (2M/T) / (1/(4NT))
  const Scalar step = 1 / (4 * p.N * p.T);
  RealVector<Scalar> f(2 * half + 1);
  for (Index i = 0; i < f.size(); ++i) f[i] = static_cast<Scalar>(i - half) * step;
  return f;
}

namespace detail {
template <typename Scalar>
void check_increasing(const RealVector<Scalar>& freqs) {
  if (!freqs.allFinite()) throw std::invalid_argument("spectrum: non-finite frequency");
  for (Index i = 1; i < freqs.size(); ++i) {
    if (!(freqs[i] > freqs[i - 1])) throw std::invalid_argument("spectrum: frequencies must be strictly increasing");
  }
}
}  // namespace detail

/// S(f) = sum_k s(t_k) e^{-j 2 pi f t_k} dt at each requested frequency.
template <typename Scalar>
Spectrum<Scalar> transform(const SampledSignal<Scalar>& s, const RealVector<Scalar>& freqs) {
  detail::check_increasing(freqs);
  Spectrum<Scalar> out{freqs, ComplexVector<Scalar>(freqs.size())};
  for (Index i = 0; i < freqs.size(); ++i) {
    std::complex<Scalar> acc(0);
    for (Index k = 0; k < s.size(); ++k) acc += s.samples()[k] * unit_phasor(-freqs[i] * s.time(k));
    out.values[i] = acc * s.dt();
  }
  return out;
}

/// Closed-form transform of the untruncated root-raised-cosine with the given
/// energy.
template <typename Scalar>
Spectrum<Scalar> rrc_spectrum(Scalar T_sym, Scalar rho, Scalar energy,
                              const RealVector<Scalar>& freqs) {
  if (!(rho >= 0 && rho <= 1)) throw std::invalid_argument("rrc_spectrum: rho must lie in [0, 1]");
  if (!(T_sym > 0) || !(energy > 0)) throw std::invalid_argument("rrc_spectrum: T_sym and energy must be positive");
  detail::check_increasing(freqs);
  const Scalar flat = std::sqrt(energy * T_sym);
  const Scalar edge_lo = (1 - rho) / (2 * T_sym);
  const Scalar edge_hi = (1 + rho) / (2 * T_sym);
  Spectrum<Scalar> out{freqs, ComplexVector<Scalar>(freqs.size())};
  for (Index i = 0; i < freqs.size(); ++i) {
    const Scalar f = std::abs(freqs[i]);
    Scalar v = 0;
    if (f <= edge_lo) {
      v = flat;
    } else if (f <= edge_hi) {
      v = flat * std::sqrt((1 + std::cos(kPi<Scalar> * T_sym / rho * (f - edge_lo))) / 2);
    }
    out.values[i] = v;
  }
  return out;
}

/// DDOP spectrum from the windowed impulse-train construction:
///   U(f) = N e^{-j 2 pi f Ttilde} A(f) sum_{|n|<=n_max} e^{j pi n (N-1)} sinc(f N T - n N)
/// with Ttilde = (T_a + (N-1)T)/2. This is the transform of the pulse laid out
/// on [0, T_u], i.e. make_ddop(p) delayed by T_a/2.
template <typename Scalar>
Spectrum<Scalar> ddop_spectrum_closed_form(const DdopParams<Scalar>& p,
                                           const RealVector<Scalar>& freqs, int n_max) {
  p.validate();
  if (n_max < 1) throw std::invalid_argument("ddop_spectrum_closed_form: n_max must be >= 1");
  const auto A = rrc_spectrum(p.delay_resolution(), p.rho, Scalar(1) / p.N, freqs);
  const Scalar centre = (p.subpulse_duration() + (p.N - 1) * p.T) / 2;
  const Scalar NT = p.N * p.T;
  Spectrum<Scalar> out{freqs, ComplexVector<Scalar>(freqs.size())};
  for (Index i = 0; i < freqs.size(); ++i) {
    const Scalar f = freqs[i];
    if (A.values[i] == std::complex<Scalar>(0)) {
      out.values[i] = 0;
      continue;
    }
    Scalar series = 0;
    for (int n = -n_max; n <= n_max; ++n) {
      // e^{j pi n (N-1)} is +-1
      const Scalar sign = ((static_cast<long long>(n) * (p.N - 1)) % 2 == 0) ? 1 : -1;
      series += sign * sinc(f * NT - static_cast<Scalar>(n) * p.N);
    }
    out.values[i] = static_cast<Scalar>(p.N) * unit_phasor(-f * centre) * A.values[i] * series;
  }
  return out;
}

/// Per-point frequency weights (half the distance to each neighbour).
template <typename Scalar>
RealVector<Scalar> frequency_weights(const RealVector<Scalar>& freqs) {
  const Index n = freqs.size();
  RealVector<Scalar> w = RealVector<Scalar>::Zero(n);
  if (n < 2) return w;
  for (Index i = 0; i < n; ++i) {
    const Scalar lo = freqs[std::max<Index>(0, i - 1)];
    const Scalar hi = freqs[std::min<Index>(n - 1, i + 1)];
    w[i] = (hi - lo) / 2;
  }
  return w;
}

template <typename Scalar>
Scalar spectral_energy(const Spectrum<Scalar>& sp) {
  return frequency_weights(sp.freqs).dot(sp.values.cwiseAbs2());
}

/// Full width B of the smallest symmetric band [-B/2, B/2] holding at least
/// `fraction` of the captured spectral energy.
template <typename Scalar>
Scalar essential_bandwidth(const Spectrum<Scalar>& sp, Scalar fraction) {
  if (!(fraction > 0 && fraction < 1)) throw std::invalid_argument("essential_bandwidth: fraction must lie in (0, 1)");
  detail::check_increasing(sp.freqs);
  const auto w = frequency_weights(sp.freqs);
  const RealVector<Scalar> e = w.cwiseProduct(sp.values.cwiseAbs2());
  const Scalar total = e.sum();
  if (!(total > 0)) throw std::invalid_argument("essential_bandwidth: zero spectral energy");

  std::vector<Index> order(static_cast<std::size_t>(sp.freqs.size()));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::abs(sp.freqs[a]) < std::abs(sp.freqs[b]);
  });
  Scalar acc = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    acc += e[order[i]];
    const Scalar half = std::abs(sp.freqs[order[i]]);
    // include every point at the same |f| before testing
    if (i + 1 < order.size() && std::abs(sp.freqs[order[i + 1]]) == half) continue;
    if (acc >= fraction * total) return 2 * half;
  }
  return 2 * std::abs(sp.freqs[order.back()]);
}

/// ||a - b||_2 / ||b||_2 over matching frequency points.
template <typename Scalar>
Scalar relative_l2(const ComplexVector<Scalar>& a, const ComplexVector<Scalar>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("relative_l2: size mismatch");
  return (a - b).norm() / b.norm();
}

}  // namespace ddop

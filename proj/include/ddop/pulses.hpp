#pragma once

#include "ddop/signal.hpp"

#include <optional>
#include <string>

namespace ddop {

/// Parameters of the delay-Doppler plane orthogonal pulse.
///
/// The sub-pulse a(t) is a root-raised-cosine for symbol interval T/M with
/// half-length Q symbol intervals, so T_a = 2QT/M. Sub-pulses are spaced by T
/// and the delay/Doppler lattice is (T/M, 1/(NT)). Sampling uses O samples per
/// symbol interval, which puts every lattice delay on a whole sample.
template <typename Scalar = double>
struct DdopParams {
  int M = 32;
  int N = 8;
  Scalar T = 1;
  int Q = 20;
  Scalar rho = Scalar(0.1);
  int O = 8;
  /// Cyclic extension depth; empty means ceil(2Q/M).
  std::optional<int> D;

  Scalar delay_resolution() const { return T / M; }
  Scalar doppler_resolution() const { return 1 / (N * T); }
  Scalar frame_duration() const { return N * T; }
  Scalar dt() const { return T / (static_cast<Scalar>(M) * O); }
  Scalar subpulse_duration() const { return 2 * Q * T / M; }
  Scalar pulse_duration() const { return (N - 1) * T + subpulse_duration(); }

  Index samples_per_symbol() const { return O; }
  Index samples_per_period() const { return static_cast<Index>(M) * O; }
  Index subpulse_samples() const { return 2 * static_cast<Index>(Q) * O; }

  int required_extension() const { return (2 * Q + M - 1) / M; }
  int extension_depth() const { return D.value_or(required_extension()); }

  void validate() const {
    if (M < 1) throw std::invalid_argument("M must be >= 1");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    if (Q < 1) throw std::invalid_argument("Q must be >= 1");
    if (O < 1) throw std::invalid_argument("O must be >= 1");
    if (!(T > 0) || !std::isfinite(T)) throw std::invalid_argument("T must be positive");
    if (!(rho >= 0 && rho <= 1)) throw std::invalid_argument("rho must lie in [0, 1]");
    if (D && *D < 0) throw std::invalid_argument("D must be >= 0");
  }
};

namespace detail {

/// Unit-amplitude root-raised-cosine shape at x = t / T_sym, including the
/// removable points x = 0 and |x| = 1/(4 rho).
template <typename Scalar>
Scalar rrc_shape(Scalar x, Scalar rho) {
  const Scalar pi = kPi<Scalar>;
  if (x == 0) return 1 - rho + 4 * rho / pi;
  if (rho > 0 && std::abs(std::abs(4 * rho * x) - 1) < Scalar(1e-9)) {
    return rho / std::sqrt(Scalar(2)) *
           ((1 + 2 / pi) * std::sin(pi / (4 * rho)) + (1 - 2 / pi) * std::cos(pi / (4 * rho)));
  }
  const Scalar num = std::sin(pi * x * (1 - rho)) + 4 * rho * x * std::cos(pi * x * (1 + rho));
  const Scalar den = pi * x * (1 - (4 * rho * x) * (4 * rho * x));
  return num / den;
}

template <typename Scalar>
void scale_to_energy(SampledSignal<Scalar>& s, Scalar target) {
  const Scalar e = energy(s);
  if (!(e > 0)) throw std::invalid_argument("cannot normalise a zero-energy signal");
  s.samples() *= std::sqrt(target / e);
}

/// Sum of copies of `sub` placed at `first`, `first + spacing`, ... (`count`
/// copies, spacing in samples). Copies are added in increasing order.
template <typename Scalar>
SampledSignal<Scalar> pulse_train(const SampledSignal<Scalar>& sub, Index first, Index count,
                                  Index spacing) {
  const Index len = (count - 1) * spacing + sub.size();
  typename SampledSignal<Scalar>::Samples out =
      SampledSignal<Scalar>::Samples::Zero(len);
  for (Index c = 0; c < count; ++c) out.segment(c * spacing, sub.size()) += sub.samples();
  return SampledSignal<Scalar>(std::move(out), sub.dt(),
                               sub.t0() + static_cast<Scalar>(first * spacing) * sub.dt());
}

}  // namespace detail

/// Root-raised-cosine sampled on [-Q T_sym, Q T_sym), hard-truncated and
/// scaled to `energy`.
template <typename Scalar>
SampledSignal<Scalar> make_rrc(Scalar T_sym, int Q, Scalar rho, Scalar dt, Scalar energy) {
  if (Q < 1) throw std::invalid_argument("make_rrc: Q must be >= 1");
  if (!(rho >= 0 && rho <= 1)) throw std::invalid_argument("make_rrc: rho must lie in [0, 1]");
  if (!(energy > 0)) throw std::invalid_argument("make_rrc: energy must be positive");
  const Index per_symbol = whole_steps(T_sym, dt, "make_rrc symbol interval");
  if (per_symbol < 1) throw std::invalid_argument("make_rrc: dt exceeds the symbol interval");
  const Index half = static_cast<Index>(Q) * per_symbol;

  typename SampledSignal<Scalar>::Samples v(2 * half);
  for (Index k = 0; k < 2 * half; ++k) {
    const Scalar x = static_cast<Scalar>(k - half) / static_cast<Scalar>(per_symbol);
    v[k] = detail::rrc_shape(x, rho);
  }
  SampledSignal<Scalar> a(std::move(v), dt, -static_cast<Scalar>(half) * dt);
  detail::scale_to_energy(a, energy);
  return a;
}

/// Unit-energy rectangle on [0, duration).
template <typename Scalar>
SampledSignal<Scalar> make_rect(Scalar duration, Scalar dt) {
  const Index len = whole_steps(duration, dt, "make_rect duration");
  if (len < 1) throw std::invalid_argument("make_rect: empty support");
  const Scalar amp = 1 / std::sqrt(static_cast<Scalar>(len) * dt);
  return SampledSignal<Scalar>(SampledSignal<Scalar>::Samples::Constant(len, amp), dt, 0);
}

/// The sub-pulse a(t) of p: RRC for T/M with energy 1/N.
template <typename Scalar>
SampledSignal<Scalar> make_subpulse(const DdopParams<Scalar>& p) {
  p.validate();
  return make_rrc(p.delay_resolution(), p.Q, p.rho, p.dt(), Scalar(1) / p.N);
}

/// u(t) = sum_{n=0}^{N-1} a(t - nT), starting at -T_a/2.
template <typename Scalar>
SampledSignal<Scalar> make_ddop(const DdopParams<Scalar>& p) {
  const auto a = make_subpulse(p);
  return detail::pulse_train(a, 0, p.N, p.samples_per_period());
}

/// Cyclically extended pulse u_c(t) = sum_{n=-D}^{N-1+D} a(t - nT).
template <typename Scalar>
SampledSignal<Scalar> make_ddop_extended(const DdopParams<Scalar>& p) {
  const int D = p.extension_depth();
  if (D < 1) throw std::invalid_argument("make_ddop_extended: D must be >= 1 (use make_ddop for D = 0)");
  const auto a = make_subpulse(p);
  return detail::pulse_train(a, -D, p.N + 2 * D, p.samples_per_period());
}

/// Message describing why p's extension depth is too small to make u_c
/// periodic over the lattice window, or nothing when it is sufficient.
template <typename Scalar>
std::optional<std::string> extension_shortfall(const DdopParams<Scalar>& p) {
  const int D = p.extension_depth();
  if (D >= p.required_extension()) return std::nullopt;
  return "extension depth D=" + std::to_string(D) + " is below ceil(2Q/M)=" +
         std::to_string(p.required_extension()) +
         "; u_c will not be periodic over the full delay window";
}

/// Tiles `seed` (exactly one period long) end to end over `total`, starting at
/// seed.t0().
template <typename Scalar>
SampledSignal<Scalar> make_periodic(const SampledSignal<Scalar>& seed, Scalar period,
                                    Scalar total) {
  const Index per = whole_steps(period, seed.dt(), "make_periodic period");
  if (per != seed.size()) throw std::invalid_argument("make_periodic: seed length must equal one period");
  if (per < 1) throw std::invalid_argument("make_periodic: empty seed");
  const Index copies = whole_steps(total, period, "make_periodic total");
  if (copies < 1) throw std::invalid_argument("make_periodic: total shorter than one period");
  typename SampledSignal<Scalar>::Samples out(per * copies);
  for (Index c = 0; c < copies; ++c) out.segment(c * per, per) = seed.samples();
  return SampledSignal<Scalar>(std::move(out), seed.dt(), seed.t0());
}

}  // namespace ddop

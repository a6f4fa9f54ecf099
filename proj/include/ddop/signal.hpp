#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ddop {

using Index = Eigen::Index;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
inline constexpr Scalar kPi =
    static_cast<Scalar>(3.141592653589793238462643383279502884L);

/// e^{j 2 pi cycles}, with the integer part of `cycles` removed first.
template <typename Scalar>
std::complex<Scalar> unit_phasor(Scalar cycles) {
  const Scalar frac = cycles - std::round(cycles);
  return std::polar(Scalar(1), 2 * kPi<Scalar> * frac);
}

/// Number of whole `step`s in `length`. Throws when the ratio is not an
/// integer (relative slack 1e-9).
template <typename Scalar>
Index whole_steps(Scalar length, Scalar step, const char* what) {
  if (!(step > 0)) throw std::invalid_argument(std::string(what) + ": step must be positive");
  const Scalar ratio = length / step;
  const Scalar nearest = std::round(ratio);
  if (!std::isfinite(ratio) ||
      std::abs(ratio - nearest) > Scalar(1e-9) * std::max(Scalar(1), std::abs(nearest))) {
    throw std::invalid_argument(std::string(what) + ": " + std::to_string(length) +
                                " is not an integer multiple of " + std::to_string(step));
  }
  return static_cast<Index>(nearest);
}

/// A uniformly sampled complex signal. It is zero outside [t0, t0 + size*dt).
template <typename Scalar = double>
class SampledSignal {
 public:
  using RealScalar = Scalar;
  using Complex = std::complex<Scalar>;
  using Samples = ComplexVector<Scalar>;

  SampledSignal() = default;

  SampledSignal(Samples samples, Scalar dt, Scalar t0)
      : samples_(std::move(samples)), dt_(dt), t0_(t0) {
    if (!(dt_ > 0) || !std::isfinite(dt_)) throw std::invalid_argument("SampledSignal: dt must be positive");
    if (!std::isfinite(t0_)) throw std::invalid_argument("SampledSignal: t0 must be finite");
    if (!samples_.allFinite()) throw std::invalid_argument("SampledSignal: non-finite sample");
  }

  static SampledSignal zeros(Index size, Scalar dt, Scalar t0) {
    return SampledSignal(Samples::Zero(size), dt, t0);
  }

  const Samples& samples() const { return samples_; }
  Samples& samples() { return samples_; }
  Scalar dt() const { return dt_; }
  Scalar t0() const { return t0_; }
  Index size() const { return samples_.size(); }
  bool empty() const { return samples_.size() == 0; }

  Scalar time(Index k) const { return t0_ + static_cast<Scalar>(k) * dt_; }
  Scalar t_end() const { return time(size()); }
  Scalar duration() const { return static_cast<Scalar>(size()) * dt_; }

  /// Sample k, or zero outside the stored range.
  Complex at(Index k) const {
    return (k >= 0 && k < size()) ? samples_[k] : Complex(0);
  }

 private:
  Samples samples_;
  Scalar dt_ = 1;
  Scalar t0_ = 0;
};

/// Sample offset of b's first sample relative to a's. Throws unless the two
/// signals share dt and their start times differ by whole samples.
template <typename Scalar>
Index grid_offset(const SampledSignal<Scalar>& a, const SampledSignal<Scalar>& b) {
  if (std::abs(a.dt() - b.dt()) > Scalar(1e-12) * a.dt()) {
    throw std::invalid_argument("signals are not grid-compatible: dt differs");
  }
  const Scalar ratio = (b.t0() - a.t0()) / a.dt();
  const Scalar nearest = std::round(ratio);
  if (std::abs(ratio - nearest) > Scalar(1e-6)) {
    throw std::invalid_argument("signals are not grid-compatible: t0 offset is off-grid");
  }
  return static_cast<Index>(nearest);
}

template <typename Scalar>
bool grid_compatible(const SampledSignal<Scalar>& a, const SampledSignal<Scalar>& b) {
  try {
    grid_offset(a, b);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

template <typename Scalar>
Scalar energy(const SampledSignal<Scalar>& s) {
  return s.samples().squaredNorm() * s.dt();
}

/// <x, y> = integral of x(t) conj(y(t)) dt, Riemann sum over the overlap.
template <typename Scalar>
std::complex<Scalar> inner_product(const SampledSignal<Scalar>& x,
                                   const SampledSignal<Scalar>& y) {
  const Index offset = grid_offset(x, y);
  const Index begin = std::max<Index>(0, offset);
  const Index end = std::min<Index>(x.size(), offset + y.size());
  std::complex<Scalar> acc(0);
  for (Index i = begin; i < end; ++i) acc += x.samples()[i] * std::conj(y.samples()[i - offset]);
  return acc * x.dt();
}

/// s(t - tau) e^{j 2 pi nu (t - tau)}. tau must be a whole number of samples.
template <typename Scalar>
SampledSignal<Scalar> tf_shift(const SampledSignal<Scalar>& s, Scalar tau, Scalar nu) {
  const Index steps = whole_steps(tau, s.dt(), "tf_shift delay");
  typename SampledSignal<Scalar>::Samples out = s.samples();
  if (nu != Scalar(0)) {
    for (Index k = 0; k < out.size(); ++k) out[k] *= unit_phasor(nu * s.time(k));
  }
  return SampledSignal<Scalar>(std::move(out), s.dt(),
                               s.t0() + static_cast<Scalar>(steps) * s.dt());
}

/// Re-times s by a whole number of samples without touching its values.
template <typename Scalar>
SampledSignal<Scalar> delay_samples(const SampledSignal<Scalar>& s, Index steps) {
  return SampledSignal<Scalar>(s.samples(), s.dt(),
                               s.t0() + static_cast<Scalar>(steps) * s.dt());
}

}  // namespace ddop

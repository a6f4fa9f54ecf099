#pragma once

#include "ddop/ambiguity.hpp"

#include <utility>

namespace ddop {

inline constexpr double kSrnTolerance = 1e-3;
inline constexpr double kExactTolerance = 1e-10;

/// Verdict of a delta-structure check on an ambiguity lattice.
///
/// Grid values are divided by the energy of the receive pulse gamma (for an
/// orthogonality check that is energy(g)). peak_value is the real part of the
/// normalised origin value, max_leakage the largest normalised magnitude off
/// the origin.
template <typename Scalar = double>
struct OrthogonalityReport {
  bool passed = false;
  Scalar peak_value = 0;
  Scalar max_leakage = 0;
  std::pair<int, int> worst_point{0, 0};
  Scalar tolerance = 0;

  bool operator==(const OrthogonalityReport&) const = default;
};

template <typename Scalar>
OrthogonalityReport<Scalar> summarize(const AmbiguityGrid<Scalar>& grid, Scalar reference,
                                      Scalar tol) {
  if (!(reference > 0)) throw std::invalid_argument("orthogonality check: zero-energy receive pulse");
  OrthogonalityReport<Scalar> r;
  r.tolerance = tol;
  r.peak_value = grid.at(0, 0).real() / reference;
  for (int m = -(grid.M - 1); m <= grid.M - 1; ++m) {
    for (int n = -(grid.N - 1); n <= grid.N - 1; ++n) {
      if (m == 0 && n == 0) continue;
      const Scalar mag = std::abs(grid.at(m, n)) / reference;
      if (mag > r.max_leakage) {
        r.max_leakage = mag;
        r.worst_point = {m, n};
      }
    }
  }
  r.passed = std::abs(r.peak_value - 1) <= tol && r.max_leakage <= tol;
  return r;
}

/// Local biorthogonality of the WH subsets (g, T_res, F_res, M, N) and
/// (gamma, T_res, F_res, M, N).
template <typename Scalar>
OrthogonalityReport<Scalar> check_local_biorthogonality(const SampledSignal<Scalar>& g,
                                                        const SampledSignal<Scalar>& gamma,
                                                        Scalar T_res, Scalar F_res, int M, int N,
                                                        Scalar tol) {
  const auto grid = ambiguity_grid(g, gamma, T_res, F_res, M, N);
  return summarize(grid, energy(gamma), tol);
}

template <typename Scalar>
OrthogonalityReport<Scalar> check_local_orthogonality(const SampledSignal<Scalar>& g,
                                                      Scalar T_res, Scalar F_res, int M, int N,
                                                      Scalar tol) {
  return check_local_biorthogonality(g, g, T_res, F_res, M, N, tol);
}

/// Orthogonality among N subcarriers spaced F_res (delay axis fixed at 0).
/// g must span exactly one symbol period 1/F_res.
template <typename Scalar>
OrthogonalityReport<Scalar> check_freq_orthogonality(const SampledSignal<Scalar>& g,
                                                     Scalar F_res, int N, Scalar tol) {
  if (!(F_res > 0)) throw std::invalid_argument("check_freq_orthogonality: F_res must be positive");
  const Index period = whole_steps(1 / F_res, g.dt(), "check_freq_orthogonality symbol period");
  if (period != g.size()) {
    throw std::invalid_argument("check_freq_orthogonality: support must equal 1/F_res");
  }
  return check_local_orthogonality(g, g.dt(), F_res, 1, N, tol);
}

/// Square-root-Nyquist check: A(mbar T_res, 0) = delta(mbar) for |mbar| <= M-1.
template <typename Scalar>
OrthogonalityReport<Scalar> check_srn(const SampledSignal<Scalar>& a, Scalar T_res, int M,
                                      Scalar tol) {
  return check_local_orthogonality(a, T_res, Scalar(0), M, 1, tol);
}

template <typename Scalar = double>
struct PeriodicityReport {
  bool passed = false;
  Scalar max_deviation = 0;
  Scalar worst_time = 0;  // t of the worst pair (s(t), s(t + k period))
  Scalar tolerance = 0;
};

/// max |s(t) - s(t + k period)| over sample pairs with both times inside
/// [window_start, window_end]. Samples outside the stored range count as zero.
template <typename Scalar>
PeriodicityReport<Scalar> check_periodicity(const SampledSignal<Scalar>& s, Scalar period,
                                            Scalar window_start, Scalar window_end, Scalar tol) {
  const Index per = whole_steps(period, s.dt(), "check_periodicity period");
  if (per < 1) throw std::invalid_argument("check_periodicity: period must be positive");
  const Index first = whole_steps(window_start - s.t0(), s.dt(), "check_periodicity window start");
  const Index last = whole_steps(window_end - s.t0(), s.dt(), "check_periodicity window end");
  if (last < first) throw std::invalid_argument("check_periodicity: empty window");

  PeriodicityReport<Scalar> r;
  r.tolerance = tol;
  r.worst_time = s.time(first);
  for (Index i = first; i + per <= last; ++i) {
    const auto here = s.at(i);
    for (Index j = i + per; j <= last; j += per) {
      const Scalar dev = std::abs(here - s.at(j));
      if (dev > r.max_deviation) {
        r.max_deviation = dev;
        r.worst_time = s.time(i);
      }
    }
  }
  r.passed = r.max_deviation <= tol;
  return r;
}

}  // namespace ddop

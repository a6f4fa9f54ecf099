#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ddop/pulses.hpp"
#include "ddop/validators.hpp"
#include "oracles.hpp"

using namespace ddop;
using Signal = SampledSignal<double>;

namespace {

DdopParams<double> params(int M, int N, int Q, double rho, int O = 8) {
  DdopParams<double> p;
  p.M = M;
  p.N = N;
  p.Q = Q;
  p.rho = rho;
  p.O = O;
  return p;
}

Signal random_periodic(std::mt19937_64& rng, int N, Index per_period, double frame) {
  const double dt = frame / (N * per_period);
  return make_periodic(oracle::random_signal(rng, per_period, dt, 0.0), frame / N, frame);
}

}  // namespace

TEST_CASE("local orthogonality of a short-sub-pulse ddop") {
  const auto p = params(512, 8, 4, 1.0, 8);
  const auto u = make_ddop(p);
  const auto r = check_local_orthogonality(u, p.delay_resolution(), p.doppler_resolution(), p.M, p.N, kSrnTolerance);
  CHECK(r.passed);
  CHECK(r.max_leakage < 1e-3);
  CHECK(r.peak_value == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.tolerance == kSrnTolerance);
}

TEST_CASE("rectangle against the lattice") {
  const double frame = 1.0;
  const auto r = make_rect(frame, frame / 128);
  SUBCASE("M = 1 passes exactly") {
    const auto rep = check_local_orthogonality(r, frame, 1 / frame, 1, 8, kExactTolerance);
    CHECK(rep.passed);
  }
  SUBCASE("half-frame delays leak 0.5") {
    const auto rep = check_local_orthogonality(r, frame / 2, 1 / frame, 2, 1, 1e-3);
    CHECK_FALSE(rep.passed);
    CHECK(rep.max_leakage == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(rep.worst_point.first) == 1);
    CHECK(std::abs(oracle::ambiguity(r, r, frame / 2, 0.0)) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("cyclic extension restores biorthogonality") {
  const auto p = params(32, 8, 20, 0.1, 4);
  const auto uc = make_ddop_extended(p);
  const auto u = make_ddop(p);
  const auto r = check_local_biorthogonality(uc, u, p.delay_resolution(), p.doppler_resolution(), p.M, p.N, 1e-2);
  CHECK(r.passed);
  CHECK(std::abs(r.peak_value - 1) <= 1e-3);
  // without the extension the lattice edges leak far more
  const auto plain = check_local_orthogonality(u, p.delay_resolution(), p.doppler_resolution(), p.M, p.N, 1e-2);
  CHECK(plain.max_leakage >= r.max_leakage);
}

TEST_CASE("biorthogonality of a pulse with itself is orthogonality") {
  const auto p = params(16, 4, 6, 0.3, 4);
  const auto u = make_ddop(p);
  const auto a = check_local_biorthogonality(u, u, p.delay_resolution(), p.doppler_resolution(), p.M, p.N, 1e-3);
  const auto b = check_local_orthogonality(u, p.delay_resolution(), p.doppler_resolution(), p.M, p.N, 1e-3);
  CHECK(a == b);
}

TEST_CASE("short extension perturbs the lattice edge") {
  auto p2 = params(32, 8, 20, 0.1, 4);
  auto p1 = p2;
  p1.D = 1;
  const auto u = make_ddop(p2);
  const auto g2 = ambiguity_grid(make_ddop_extended(p2), u, p2.delay_resolution(), p2.doppler_resolution(), p2.M, p2.N);
  const auto g1 = ambiguity_grid(make_ddop_extended(p1), u, p1.delay_resolution(), p1.doppler_resolution(), p1.M, p1.N);
  const ComplexMatrix<double> diff = g1.values - g2.values;
  Index row = 0, col = 0;
  const double worst = diff.cwiseAbs().maxCoeff(&row, &col);
  CHECK(worst > 0);
  CHECK(std::abs(static_cast<int>(row) - (p2.M - 1)) == p2.M - 1);
  // interior lags never reach the missing prefix/suffix sub-pulses
  CHECK(diff.row(p2.M - 1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("frequency orthogonality of periodic pulses") {
  std::mt19937_64 rng(41);
  for (int N : {2, 4, 8}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto g = random_periodic(rng, N, 24, 1.0);
      const auto r = check_freq_orthogonality(g, 1.0, N, 1e-10 * energy(g));
      CHECK(r.max_leakage <= 1e-10);
      // brute force at each subcarrier offset
      for (int n = 1; n < N; ++n) CHECK(std::abs(oracle::ambiguity(g, g, 0.0, n)) <= 1e-10 * energy(g));
    }
  }
  SUBCASE("N = 1 is trivially satisfied") {
    const auto g = oracle::random_signal(rng, 50, 0.02, 0.0);
    CHECK(check_freq_orthogonality(g, 1.0, 1, 1e300).max_leakage == 0.0);
  }
  SUBCASE("random non-periodic pulses fail") {
    for (int trial = 0; trial < 20; ++trial) {
      const auto g = oracle::random_signal(rng, 96, 1.0 / 96, 0.0);
      const auto r = check_freq_orthogonality(g, 1.0, 8, kExactTolerance);
      CHECK_FALSE(r.passed);
    }
  }
  SUBCASE("support must match the symbol period") {
    const auto g = oracle::random_signal(rng, 90, 1.0 / 96, 0.0);
    CHECK_THROWS_AS(check_freq_orthogonality(g, 1.0, 4, 1e-10), std::invalid_argument);
  }
}

TEST_CASE("square-root Nyquist check") {
  const double Ts = 1.0 / 16;
  SUBCASE("truncated rrc") {
    const auto a = make_rrc(Ts, 20, 0.1, Ts / 8, 1.0);
    CHECK(check_srn(a, Ts, 16, kSrnTolerance).passed);
  }
  SUBCASE("rectangle of one interval") {
    const auto r = make_rect(Ts, Ts / 8);
    const auto rep = check_srn(r, Ts, 16, kExactTolerance);
    CHECK(rep.passed);
    CHECK(rep.max_leakage == 0.0);
  }
  SUBCASE("triangle spanning two intervals") {
    Signal::Samples v(16);
    for (int k = 0; k < 16; ++k) v[k] = 8 - std::abs(k - 8);
    Signal tri(v, Ts / 8, 0.0);
    tri = Signal(v / std::sqrt(energy(tri)), Ts / 8, 0.0);
    const auto rep = check_srn(tri, Ts, 4, kSrnTolerance);
    CHECK_FALSE(rep.passed);
    CHECK(std::abs(rep.worst_point.first) == 1);
    CHECK(rep.max_leakage == doctest::Approx(std::abs(oracle::ambiguity(tri, tri, Ts, 0.0))).epsilon(1e-12));
  }
  SUBCASE("rectangle at half-interval shifts") {
    const auto r = make_rect(Ts, Ts / 8);
    const auto rep = check_srn(r, Ts / 2, 4, kSrnTolerance);
    CHECK_FALSE(rep.passed);
    CHECK(rep.max_leakage == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("periodicity check") {
  const double dt = 0.125;
  SUBCASE("exact repetition") {
    Signal::Samples v(32);
    for (int k = 0; k < 32; ++k) v[k] = {std::sin(k * 0.7), k % 8 == 3 ? 1.0 : 0.0};
    for (int k = 8; k < 32; ++k) v[k] = v[k % 8];
    const Signal s(v, dt, 0.0);
    const auto r = check_periodicity(s, 1.0, 0.0, 31 * dt, 0.0);
    CHECK(r.passed);
    CHECK(r.max_deviation == 0.0);
  }
  SUBCASE("a perturbed sample is located") {
    Signal::Samples v = Signal::Samples::Ones(32);
    v[21] = 1.5;
    const Signal s(v, dt, -1.0);
    const auto r = check_periodicity(s, 1.0, -1.0, -1.0 + 31 * dt, 1e-10);
    CHECK_FALSE(r.passed);
    CHECK(r.max_deviation == doctest::Approx(0.5));
    CHECK(std::fmod(r.worst_time + 1.0 - 21 * dt + 8.0, 1.0) == doctest::Approx(0.0));
  }
  SUBCASE("windows beyond the stored samples see zeros") {
    const Signal s(Signal::Samples::Ones(16), dt, 0.0);
    CHECK_FALSE(check_periodicity(s, 1.0, 0.0, 3.0, 1e-10).passed);
    CHECK(check_periodicity(s, 1.0, 0.0, 15 * dt, 1e-10).passed);
  }
  SUBCASE("off-grid period is rejected") {
    const Signal s(Signal::Samples::Ones(16), dt, 0.0);
    CHECK_THROWS_AS(check_periodicity(s, 0.3, 0.0, 1.0, 1e-10), std::invalid_argument);
  }
}

TEST_CASE("M = 1 local check is the frequency check") {
  std::mt19937_64 rng(43);
  const auto g = random_periodic(rng, 4, 16, 1.0);
  const auto a = check_local_orthogonality(g, g.dt(), 1.0, 1, 4, 1e-10);
  const auto b = check_freq_orthogonality(g, 1.0, 4, 1e-10);
  CHECK(a == b);
}

TEST_CASE("finer sampling does not increase lattice leakage") {
  struct Case {
    int M, N, Q;
    double rho;
  };
  for (auto c : {Case{32, 8, 20, 0.1}, Case{16, 4, 10, 0.3}, Case{32, 8, 4, 1.0}, Case{8, 4, 2, 0.5}}) {
    auto coarse = params(c.M, c.N, c.Q, c.rho, 8);
    auto fine = params(c.M, c.N, c.Q, c.rho, 16);
    const auto rc = check_local_biorthogonality(make_ddop_extended(coarse), make_ddop(coarse),
                                                coarse.delay_resolution(), coarse.doppler_resolution(),
                                                c.M, c.N, 1e-2);
    const auto rf = check_local_biorthogonality(make_ddop_extended(fine), make_ddop(fine),
                                                fine.delay_resolution(), fine.doppler_resolution(),
                                                c.M, c.N, 1e-2);
    CHECK(rf.max_leakage <= rc.max_leakage * (1 + 1e-9));
  }
}

TEST_CASE("zero-energy receive pulse is rejected") {
  const Signal z = Signal::zeros(8, 0.125, 0.0);
  CHECK_THROWS_AS(check_local_orthogonality(z, 0.125, 1.0, 2, 2, 1e-3), std::invalid_argument);
}

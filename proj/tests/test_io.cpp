#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ddop/io.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cstring>

#include <unistd.h>

using namespace ddop;
namespace fs = std::filesystem;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("ddop_io_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, (i % 40) - 20);
    CHECK(same_bits(std::stod(io::format_double(v)), v));
  }
  CHECK(io::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("signal json is bit exact") {
  std::mt19937_64 rng(2);
  const auto s = oracle::random_signal(rng, 100, 1.0 / 3, -7.0 / 9);
  const auto back = io::signal_from_json(io::json::parse(io::signal_to_json(s).dump()));
  CHECK(same_bits(back.dt(), s.dt()));
  CHECK(same_bits(back.t0(), s.t0()));
  REQUIRE(back.size() == s.size());
  for (Index k = 0; k < s.size(); ++k) {
    CHECK(same_bits(back.samples()[k].real(), s.samples()[k].real()));
    CHECK(same_bits(back.samples()[k].imag(), s.samples()[k].imag()));
  }
}

TEST_CASE("signal csv keeps samples exactly and recovers the grid") {
  std::mt19937_64 rng(3);
  const auto s = oracle::random_signal(rng, 64, 0.125, -2.0);
  const auto text = io::signal_csv(s);
  CHECK(text.rfind("t,re,im\n", 0) == 0);
  const auto back = io::signal_from_csv(text);
  CHECK(back.samples() == s.samples());
  CHECK(back.dt() == doctest::Approx(s.dt()).epsilon(1e-14));
  CHECK(back.t0() == s.t0());
  CHECK_THROWS(io::signal_from_csv("t,re,im\n0,1,0\n"));
}

TEST_CASE("frames round-trip through csv and json") {
  const auto X = random_qpsk_frame(5, 3, 4);
  CHECK(io::frame_from_csv(io::frame_csv(X)) == X);
  CHECK(io::frame_from_json(io::json::parse(io::frame_to_json(X).dump())) == X);
  CHECK_THROWS(io::frame_from_csv("m,n,re,im\n0,0,1,0\n1,1,1,0\n"));
  CHECK_THROWS(io::frame_from_json(io::json{{"M", 2}, {"N", 2}, {"symbols", io::json::array()}}));
}

TEST_CASE("channels round-trip and are validated") {
  const auto ch = random_channel(3, 4, 2, 8, 32.0, 8.0);
  const auto back = io::channel_from_json(io::json::parse(io::channel_to_json(ch).dump()));
  CHECK(back.W0 == ch.W0);
  CHECK(back.T0 == ch.T0);
  REQUIRE(back.paths.size() == ch.paths.size());
  for (std::size_t i = 0; i < ch.paths.size(); ++i) {
    CHECK(back.paths[i].gain == ch.paths[i].gain);
    CHECK(back.paths[i].delay_tap == ch.paths[i].delay_tap);
    CHECK(back.paths[i].doppler_tap == ch.paths[i].doppler_tap);
  }
  const auto bad = io::json::parse(R"({"W0": 1, "T0": 1, "paths": [{"re": 1, "im": 0, "l": -2, "k": 0}]})");
  CHECK_THROWS_AS(io::channel_from_json(bad), std::invalid_argument);
}

TEST_CASE("ambiguity grid export") {
  AmbiguityGrid<double> g;
  g.M = 3;
  g.N = 2;
  g.delay_step = 0.25;
  g.doppler_step = 0.5;
  g.values = ComplexMatrix<double>::Random(5, 3);
  const auto count = [](const std::string& s) { return std::count(s.begin(), s.end(), '\n') - 1; };
  CHECK(count(io::grid_csv(g)) == 15);
  CHECK(count(io::grid_csv(g, io::GridSlice{'n', 0})) == 5);
  CHECK(count(io::grid_csv(g, io::GridSlice{'m', -2})) == 3);
  const auto j = io::grid_to_json(g);
  CHECK(j.at("values").size() == 15);
  CHECK(j.at("values")[0].at("m") == -2);
  CHECK(j.at("values")[0].at("n") == -1);
  CHECK(same_bits(j.at("values")[0].at("re").get<double>(), g.at(-2, -1).real()));
}

TEST_CASE("spectrum and report export") {
  Spectrum<double> sp{RealVector<double>::LinSpaced(4, -1, 2), ComplexVector<double>::Random(4)};
  const auto csv = io::spectrum_csv(sp);
  CHECK(csv.rfind("f,re,im,abs\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(io::spectrum_to_json(sp).at("values").size() == 4);

  OrthogonalityReport<double> r{true, 0.999, 7e-4, {-11, 0}, 1e-3};
  const auto j = io::report_to_json(r);
  CHECK(j.at("passed") == true);
  CHECK(j.at("worst_point")[0] == -11);

  DdopParams<double> p;
  const auto pj = io::params_to_json(p);
  CHECK(pj.at("D") == 2);
  CHECK(pj.at("D_auto") == true);
  CHECK(pj.at("T_u").get<double>() == doctest::Approx(8.25));
}

TEST_CASE("atomic writes and extension dispatch") {
  std::mt19937_64 rng(5);
  const auto s = oracle::random_signal(rng, 10, 0.5, 0.0);
  const auto json_path = scratch("sig.json");
  const auto csv_path = scratch("sig.csv");
  io::write_file_atomic(json_path, io::signal_to_json(s).dump());
  io::write_file_atomic(csv_path, io::signal_csv(s));
  CHECK_FALSE(fs::exists(fs::path(json_path) += ".tmp"));
  CHECK(io::read_signal(json_path).samples() == s.samples());
  CHECK(io::read_signal(csv_path).samples() == s.samples());

  io::write_file_atomic(json_path, "{}");
  CHECK(io::read_text(json_path) == "{}");
  CHECK_THROWS(io::read_text(scratch("missing.json")));
  fs::remove_all(json_path.parent_path());
}

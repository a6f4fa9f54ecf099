#include "ddop/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace ddop::io {
namespace {

std::vector<std::vector<double>> parse_csv_rows(const std::string& text, std::size_t columns) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) row.push_back(std::stod(field));
    if (row.size() < columns) throw std::runtime_error("csv: short row: " + line);
    rows.push_back(std::move(row));
  }
  return rows;
}

json complex_pair(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::complex<double> pair_complex(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json signal_to_json(const SampledSignal<double>& s) {
  json samples = json::array();
  for (Index k = 0; k < s.size(); ++k) samples.push_back(complex_pair(s.samples()[k]));
  return {{"t0", s.t0()}, {"dt", s.dt()}, {"samples", std::move(samples)}};
}

SampledSignal<double> signal_from_json(const json& j) {
  const auto& arr = j.at("samples");
  SampledSignal<double>::Samples v(static_cast<Index>(arr.size()));
  for (std::size_t k = 0; k < arr.size(); ++k) v[static_cast<Index>(k)] = pair_complex(arr[k]);
  return SampledSignal<double>(std::move(v), j.at("dt").get<double>(), j.at("t0").get<double>());
}

std::string signal_csv(const SampledSignal<double>& s) {
  std::string out = "t,re,im\n";
  for (Index k = 0; k < s.size(); ++k) {
    out += format_double(s.time(k)) + ',' + format_double(s.samples()[k].real()) + ',' +
           format_double(s.samples()[k].imag()) + '\n';
  }
  return out;
}

SampledSignal<double> signal_from_csv(const std::string& text) {
  const auto rows = parse_csv_rows(text, 3);
  if (rows.size() < 2) throw std::runtime_error("signal csv: need at least two samples to infer dt");
  const double t0 = rows.front()[0];
  const double dt = (rows.back()[0] - t0) / static_cast<double>(rows.size() - 1);
  SampledSignal<double>::Samples v(static_cast<Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) v[static_cast<Index>(k)] = {rows[k][1], rows[k][2]};
  return SampledSignal<double>(std::move(v), dt, t0);
}

std::string grid_csv(const AmbiguityGrid<double>& grid, std::optional<GridSlice> slice) {
  std::string out = "m,n,re,im,abs\n";
  for (int m = -(grid.M - 1); m <= grid.M - 1; ++m) {
    for (int n = -(grid.N - 1); n <= grid.N - 1; ++n) {
      if (slice && ((slice->axis == 'm' && m != slice->index) || (slice->axis == 'n' && n != slice->index))) {
        continue;
      }
      const auto v = grid.at(m, n);
      out += std::to_string(m) + ',' + std::to_string(n) + ',' + format_double(v.real()) + ',' +
             format_double(v.imag()) + ',' + format_double(std::abs(v)) + '\n';
    }
  }
  return out;
}

json grid_to_json(const AmbiguityGrid<double>& grid) {
  json values = json::array();
  for (int m = -(grid.M - 1); m <= grid.M - 1; ++m) {
    for (int n = -(grid.N - 1); n <= grid.N - 1; ++n) {
      values.push_back({{"m", m}, {"n", n}, {"re", grid.at(m, n).real()}, {"im", grid.at(m, n).imag()}});
    }
  }
  return {{"M", grid.M},
          {"N", grid.N},
          {"delay_step", grid.delay_step},
          {"doppler_step", grid.doppler_step},
          {"values", std::move(values)}};
}

std::string frame_csv(const Frame<double>& X) {
  std::string out = "m,n,re,im\n";
  for (Index m = 0; m < X.rows(); ++m) {
    for (Index n = 0; n < X.cols(); ++n) {
      out += std::to_string(m) + ',' + std::to_string(n) + ',' + format_double(X(m, n).real()) +
             ',' + format_double(X(m, n).imag()) + '\n';
    }
  }
  return out;
}

Frame<double> frame_from_csv(const std::string& text) {
  const auto rows = parse_csv_rows(text, 4);
  Index M = 0, N = 0;
  for (const auto& r : rows) {
    if (r[0] < 0 || r[1] < 0) throw std::runtime_error("frame csv: negative index");
    M = std::max<Index>(M, static_cast<Index>(r[0]) + 1);
    N = std::max<Index>(N, static_cast<Index>(r[1]) + 1);
  }
  if (static_cast<std::size_t>(M * N) != rows.size()) throw std::runtime_error("frame csv: incomplete M x N grid");
  Frame<double> X = Frame<double>::Zero(M, N);
  for (const auto& r : rows) X(static_cast<Index>(r[0]), static_cast<Index>(r[1])) = {r[2], r[3]};
  return X;
}

json frame_to_json(const Frame<double>& X) {
  json symbols = json::array();
  for (Index m = 0; m < X.rows(); ++m)
    for (Index n = 0; n < X.cols(); ++n) symbols.push_back(complex_pair(X(m, n)));
  return {{"M", X.rows()}, {"N", X.cols()}, {"symbols", std::move(symbols)}};
}

Frame<double> frame_from_json(const json& j) {
  const auto M = j.at("M").get<Index>();
  const auto N = j.at("N").get<Index>();
  const auto& s = j.at("symbols");
  if (M < 1 || N < 1 || s.size() != static_cast<std::size_t>(M * N)) {
    throw std::runtime_error("frame json: symbols must hold M*N entries");
  }
  Frame<double> X(M, N);
  for (Index m = 0; m < M; ++m)
    for (Index n = 0; n < N; ++n) X(m, n) = pair_complex(s[static_cast<std::size_t>(m * N + n)]);
  return X;
}

json channel_to_json(const DdChannel<double>& ch) {
  json paths = json::array();
  for (const auto& p : ch.paths) {
    paths.push_back({{"re", p.gain.real()}, {"im", p.gain.imag()}, {"l", p.delay_tap}, {"k", p.doppler_tap}});
  }
  return {{"W0", ch.W0}, {"T0", ch.T0}, {"paths", std::move(paths)}};
}

DdChannel<double> channel_from_json(const json& j) {
  DdChannel<double> ch;
  ch.W0 = j.at("W0").get<double>();
  ch.T0 = j.at("T0").get<double>();
  for (const auto& p : j.at("paths")) {
    DdChannel<double>::Path path;
    path.gain = {p.at("re").get<double>(), p.at("im").get<double>()};
    path.delay_tap = p.at("l").get<int>();
    path.doppler_tap = p.at("k").get<int>();
    ch.paths.push_back(path);
  }
  ch.validate();
  return ch;
}

std::string spectrum_csv(const Spectrum<double>& sp) {
  std::string out = "f,re,im,abs\n";
  for (Index i = 0; i < sp.freqs.size(); ++i) {
    const auto v = sp.values[i];
    out += format_double(sp.freqs[i]) + ',' + format_double(v.real()) + ',' +
           format_double(v.imag()) + ',' + format_double(std::abs(v)) + '\n';
  }
  return out;
}

json spectrum_to_json(const Spectrum<double>& sp) {
  json values = json::array();
  for (Index i = 0; i < sp.freqs.size(); ++i) values.push_back(complex_pair(sp.values[i]));
  return {{"freqs", std::vector<double>(sp.freqs.data(), sp.freqs.data() + sp.freqs.size())},
          {"values", std::move(values)}};
}

json report_to_json(const OrthogonalityReport<double>& r) {
  return {{"passed", r.passed},
          {"peak_value", r.peak_value},
          {"max_leakage", r.max_leakage},
          {"worst_point", {r.worst_point.first, r.worst_point.second}},
          {"tolerance", r.tolerance}};
}

json report_to_json(const PeriodicityReport<double>& r) {
  return {{"passed", r.passed},
          {"max_deviation", r.max_deviation},
          {"worst_time", r.worst_time},
          {"tolerance", r.tolerance}};
}

json params_to_json(const DdopParams<double>& p) {
  return {{"M", p.M},
          {"N", p.N},
          {"T", p.T},
          {"Q", p.Q},
          {"rho", p.rho},
          {"O", p.O},
          {"D", p.extension_depth()},
          {"D_auto", !p.D.has_value()},
          {"dt", p.dt()},
          {"T_a", p.subpulse_duration()},
          {"T_u", p.pulse_duration()},
          {"delay_resolution", p.delay_resolution()},
          {"doppler_resolution", p.doppler_resolution()},
          {"frame_duration", p.frame_duration()}};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

SampledSignal<double> read_signal(const std::filesystem::path& path) {
  const auto text = read_text(path);
  if (path.extension() == ".csv") return signal_from_csv(text);
  return signal_from_json(json::parse(text));
}

Frame<double> read_frame(const std::filesystem::path& path) {
  const auto text = read_text(path);
  if (path.extension() == ".csv") return frame_from_csv(text);
  return frame_from_json(json::parse(text));
}

}  // namespace ddop::io

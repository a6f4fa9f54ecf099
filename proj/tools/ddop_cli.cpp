// ddop: command-line front end for pulse construction, ambiguity sweeps,
// orthogonality checks, ODDM frames, delay-Doppler channels and spectra.
//
// Exit status: 0 success / check passed, 1 check failed, 2 usage or input error.

#include "ddop/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <random>

namespace fs = std::filesystem;
using ddop::io::json;
using Signal = ddop::SampledSignal<double>;

namespace {

struct Common {
  ddop::DdopParams<double> params;
  int D = -1;  // negative: ceil(2Q/M)
  std::uint64_t seed = 1;
  double tol = -1;  // negative: check-specific default
  std::string out = ".";
  std::string format = "both";

  ddop::DdopParams<double> resolved() const {
    auto p = params;
    if (D >= 0) p.D = D;
    p.validate();
    return p;
  }
  bool csv() const { return format != "json"; }
  bool json_out() const { return format != "csv"; }
  fs::path path(const std::string& name) const { return fs::path(out) / name; }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-M", c.params.M, "number of symbols (delay bins)")->check(CLI::PositiveNumber);
  sub->add_option("-N", c.params.N, "number of subcarriers (Doppler bins)")->check(CLI::PositiveNumber);
  sub->add_option("-Q", c.params.Q, "sub-pulse half-length in symbol intervals")->check(CLI::PositiveNumber);
  sub->add_option("--rho", c.params.rho, "RRC roll-off")->check(CLI::Range(0.0, 1.0));
  sub->add_option("-T", c.params.T, "sub-pulse spacing in seconds")->check(CLI::PositiveNumber);
  sub->add_option("-O", c.params.O, "samples per symbol interval")->check(CLI::PositiveNumber);
  sub->add_option("-D", c.D, "cyclic extension depth (default ceil(2Q/M))")->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--tol", c.tol, "tolerance");
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json", "both"}));
}

// M=32, N=8, RRC rho=0.1, Q=20, D=ceil(2Q/M)=2; T and O stay as given.
void apply_reference_preset(Common& c) {
  c.params.M = 32;
  c.params.N = 8;
  c.params.Q = 20;
  c.params.rho = 0.1;
  c.D = -1;
}

void write_signal(const Common& c, const std::string& stem, const Signal& s) {
  if (c.csv()) ddop::io::write_file_atomic(c.path(stem + ".csv"), ddop::io::signal_csv(s));
  if (c.json_out()) ddop::io::write_file_atomic(c.path(stem + ".json"), ddop::io::signal_to_json(s).dump());
}

void write_frame(const Common& c, const std::string& stem, const ddop::Frame<double>& X) {
  if (c.csv()) ddop::io::write_file_atomic(c.path(stem + ".csv"), ddop::io::frame_csv(X));
  if (c.json_out()) ddop::io::write_file_atomic(c.path(stem + ".json"), ddop::io::frame_to_json(X).dump());
}

void write_sidecar(const Common& c, const std::string& command, json extra) {
  json j = {{"command", command},
            {"params", ddop::io::params_to_json(c.resolved())},
            {"seed", c.seed},
            {"format", c.format}};
  if (c.tol >= 0) j["tol"] = c.tol;
  j["result"] = std::move(extra);
  ddop::io::write_file_atomic(c.path(command + ".run.json"), j.dump(2) + "\n");
}

void print_params(const ddop::DdopParams<double>& p) {
  std::cout << "M=" << p.M << " N=" << p.N << " T=" << p.T << " Q=" << p.Q << " rho=" << p.rho
            << " O=" << p.O << " D=" << p.extension_depth() << "\n"
            << "T_a=" << ddop::io::format_double(p.subpulse_duration())
            << " T_u=" << ddop::io::format_double(p.pulse_duration())
            << " delay_res=" << ddop::io::format_double(p.delay_resolution())
            << " doppler_res=" << ddop::io::format_double(p.doppler_resolution()) << "\n";
}

void warn_extension(const ddop::DdopParams<double>& p) {
  if (auto msg = ddop::extension_shortfall(p)) std::cerr << "warning: " << *msg << "\n";
}

Signal random_pulse(const ddop::DdopParams<double>& p, std::uint64_t seed, bool periodic) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const ddop::Index period = p.samples_per_period();
  const ddop::Index len = periodic ? period : period * p.N;
  Signal::Samples v(len);
  for (auto& z : v) z = {gauss(rng), gauss(rng)};
  Signal s(std::move(v), p.dt(), 0.0);
  s.samples() /= std::sqrt(ddop::energy(s));
  return periodic ? ddop::make_periodic(s, p.T, p.frame_duration()) : s;
}

// ---- pulse ---------------------------------------------------------------

struct PulseOpts {
  bool ddop = false, extended = false, rrc = false, rect = false;
  double duration = 1.0;
};

int cmd_pulse(const Common& c, const PulseOpts& o) {
  const auto p = c.resolved();
  Signal s;
  std::string stem;
  if (o.rect) {
    s = ddop::make_rect(o.duration, p.dt());
    stem = "rect";
  } else if (o.rrc) {
    s = ddop::make_subpulse(p);
    stem = "rrc";
  } else if (o.extended) {
    warn_extension(p);
    s = ddop::make_ddop_extended(p);
    stem = "ddop_extended";
  } else {
    s = ddop::make_ddop(p);
    stem = "ddop";
  }
  write_signal(c, stem, s);
  print_params(p);
  std::cout << "pulse=" << stem << " samples=" << s.size()
            << " support=[" << ddop::io::format_double(s.t0()) << ", "
            << ddop::io::format_double(s.t_end()) << ")"
            << " energy=" << ddop::io::format_double(ddop::energy(s)) << "\n";
  write_sidecar(c, "pulse", {{"pulse", stem},
                             {"samples", s.size()},
                             {"t0", s.t0()},
                             {"t_end", s.t_end()},
                             {"energy", ddop::energy(s)}});
  return 0;
}

// ---- ambiguity -----------------------------------------------------------

struct AmbiguityOpts {
  std::string preset;
  std::string slice;
  std::string pulse = "extended";
};

std::optional<ddop::io::GridSlice> parse_slice(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto eq = text.find('=');
  if (eq != 1 || (text[0] != 'm' && text[0] != 'n')) {
    throw std::invalid_argument("--slice expects m=<int> or n=<int>");
  }
  return ddop::io::GridSlice{text[0], std::stoi(text.substr(2))};
}

int cmd_ambiguity(Common c, AmbiguityOpts o) {
  if (o.preset == "fig7" || o.preset == "fig8") {
    apply_reference_preset(c);
    if (o.preset == "fig8" && o.slice.empty()) o.slice = "n=0";
  }
  const auto p = c.resolved();
  const auto slice = parse_slice(o.slice);
  const auto u = ddop::make_ddop(p);
  Signal g = u;
  if (o.pulse == "extended" && p.extension_depth() > 0) {
    warn_extension(p);
    g = ddop::make_ddop_extended(p);
  }
  const auto grid = ddop::ambiguity_grid(g, u, p.delay_resolution(), p.doppler_resolution(), p.M, p.N);
  if (c.csv()) ddop::io::write_file_atomic(c.path("ambiguity.csv"), ddop::io::grid_csv(grid, slice));
  if (c.json_out()) ddop::io::write_file_atomic(c.path("ambiguity.json"), ddop::io::grid_to_json(grid).dump());
  const auto report = ddop::summarize(grid, ddop::energy(u), c.tol >= 0 ? c.tol : ddop::kSrnTolerance);
  print_params(p);
  std::cout << "grid " << 2 * p.M - 1 << "x" << 2 * p.N - 1
            << " peak=" << ddop::io::format_double(report.peak_value)
            << " max_leakage=" << ddop::io::format_double(report.max_leakage) << " at (m="
            << report.worst_point.first << ", n=" << report.worst_point.second << ")\n";
  write_sidecar(c, "ambiguity", {{"pulse", o.pulse}, {"slice", o.slice}, {"report", ddop::io::report_to_json(report)}});
  return 0;
}

// ---- validate ------------------------------------------------------------

struct ValidateOpts {
  std::string check = "biorth";
  std::string pulse;
};

int cmd_validate(const Common& c, ValidateOpts o) {
  const auto p = c.resolved();
  if (o.pulse.empty()) {
    if (o.check == "biorth" || o.check == "periodicity") o.pulse = "extended";
    else if (o.check == "local") o.pulse = "ddop";
    else if (o.check == "srn") o.pulse = "rrc";
    else o.pulse = "periodic";
  }
  const bool exact_check = (o.check == "freq" || o.check == "periodicity");
  const double tol = c.tol >= 0 ? c.tol : (exact_check ? ddop::kExactTolerance : ddop::kSrnTolerance);

  Signal g;
  if (o.pulse == "extended") {
    warn_extension(p);
    g = p.extension_depth() > 0 ? ddop::make_ddop_extended(p) : ddop::make_ddop(p);
  } else if (o.pulse == "ddop") g = ddop::make_ddop(p);
  else if (o.pulse == "rrc") g = ddop::make_subpulse(p);
  else if (o.pulse == "rect") g = ddop::make_rect(o.check == "srn" ? p.delay_resolution() : p.frame_duration(), p.dt());
  else if (o.pulse == "periodic") g = random_pulse(p, c.seed, true);
  else g = random_pulse(p, c.seed, false);

  print_params(p);
  json result = {{"check", o.check}, {"pulse", o.pulse}};
  bool passed = false;
  if (o.check == "periodicity") {
    const double start = -(p.M - 1) * p.delay_resolution();
    const double end = (static_cast<double>(p.M) * p.N - 1) * p.delay_resolution() + p.subpulse_duration();
    const auto r = ddop::check_periodicity(g, p.T, start, end, tol);
    passed = r.passed;
    result["report"] = ddop::io::report_to_json(r);
    std::cout << "check      pulse      max_deviation            tol      verdict\n"
              << o.check << "  " << o.pulse << "  " << ddop::io::format_double(r.max_deviation) << "  "
              << tol << "  " << (passed ? "PASS" : "FAIL") << "\n";
  } else {
    ddop::OrthogonalityReport<double> r;
    if (o.check == "biorth") {
      r = ddop::check_local_biorthogonality(g, ddop::make_ddop(p), p.delay_resolution(), p.doppler_resolution(), p.M, p.N, tol);
    } else if (o.check == "local") {
      r = ddop::check_local_orthogonality(g, p.delay_resolution(), p.doppler_resolution(), p.M, p.N, tol);
    } else if (o.check == "freq") {
      r = ddop::check_freq_orthogonality(g, p.doppler_resolution(), p.N, tol);
    } else {
      r = ddop::check_srn(g, p.delay_resolution(), p.M, tol);
    }
    passed = r.passed;
    result["report"] = ddop::io::report_to_json(r);
    std::cout << "check      pulse      peak                     max_leakage              worst      tol      verdict\n"
              << o.check << "  " << o.pulse << "  " << ddop::io::format_double(r.peak_value) << "  "
              << ddop::io::format_double(r.max_leakage) << "  (" << r.worst_point.first << ","
              << r.worst_point.second << ")  " << tol << "  " << (passed ? "PASS" : "FAIL") << "\n";
  }
  ddop::io::write_file_atomic(c.path("report.json"), result.dump(2) + "\n");
  write_sidecar(c, "validate", result);
  return passed ? 0 : 1;
}

// ---- frame ---------------------------------------------------------------

struct FrameOpts {
  std::string in;
  std::string waveform;
  bool plain = false;
};

int cmd_frame(const Common& c, const FrameOpts& o) {
  const auto p = c.resolved();
  std::optional<ddop::Frame<double>> tx;
  if (!o.in.empty()) tx = ddop::io::read_frame(o.in);
  else if (o.waveform.empty()) tx = ddop::random_qpsk_frame(p.M, p.N, c.seed);

  Signal x;
  if (!o.waveform.empty()) {
    x = ddop::io::read_signal(o.waveform);
  } else {
    if (!o.plain) warn_extension(p);
    x = ddop::oddm_modulate(*tx, p, !o.plain);
    write_frame(c, "frame_tx", *tx);
    write_signal(c, "waveform", x);
  }
  const auto rx = ddop::oddm_demodulate(x, p);
  write_frame(c, "frame_rx", rx);
  print_params(p);
  json result = {{"transmit_pulse", o.plain ? "u" : "u_c"}, {"waveform_samples", x.size()}};
  if (tx) {
    if (tx->rows() != rx.rows() || tx->cols() != rx.cols()) throw std::invalid_argument("frame shape does not match M x N");
    const double err = (rx - *tx).cwiseAbs().maxCoeff();
    result["max_symbol_error"] = err;
    std::cout << "max symbol error " << ddop::io::format_double(err) << "\n";
  }
  write_sidecar(c, "frame", result);
  return 0;
}

// ---- channel -------------------------------------------------------------

struct ChannelOpts {
  std::string channel;
  std::string in;
  int random_paths = 0;
  int l_max = 4;
  int k_max = 2;
  double awgn = 0;
};

int cmd_channel(const Common& c, const ChannelOpts& o) {
  const auto p = c.resolved();
  ddop::DdChannel<double> ch;
  if (o.random_paths > 0) {
    ch = ddop::random_channel(o.random_paths, o.l_max, o.k_max, c.seed, p.M / p.T, p.N * p.T);
    ddop::io::write_file_atomic(c.path("channel.json"), ddop::io::channel_to_json(ch).dump(2) + "\n");
  } else if (!o.channel.empty()) {
    ch = ddop::io::channel_from_json(json::parse(ddop::io::read_text(o.channel)));
  } else {
    throw std::invalid_argument("channel: give --channel FILE or --random P");
  }
  json result = {{"paths", ch.paths.size()}};
  if (!o.in.empty()) {
    auto y = ddop::apply(ch, ddop::io::read_signal(o.in));
    if (o.awgn > 0) {
      std::mt19937_64 rng(c.seed);
      std::normal_distribution<double> gauss(0.0, o.awgn / std::sqrt(2.0));
      for (auto& z : y.samples()) z += std::complex<double>(gauss(rng), gauss(rng));
    }
    write_signal(c, "waveform_rx", y);
    result["samples"] = y.size();
    std::cout << "applied " << ch.paths.size() << " path(s); output samples=" << y.size() << "\n";
  }
  write_sidecar(c, "channel", result);
  return 0;
}

// ---- spectrum ------------------------------------------------------------

struct SpectrumOpts {
  std::string preset;
  int n_max = 0;
};

int cmd_spectrum(Common c, const SpectrumOpts& o) {
  if (o.preset == "fig5") apply_reference_preset(c);
  const auto p = c.resolved();
  const int n_max = o.n_max > 0 ? o.n_max : 4 * p.M;
  const auto freqs = ddop::ddop_frequency_grid(p);
  const auto closed = ddop::ddop_spectrum_closed_form(p, freqs, n_max);
  // the closed form describes the pulse laid out on [0, T_u]
  const auto numeric = ddop::transform(ddop::delay_samples(ddop::make_ddop(p), p.subpulse_samples() / 2), freqs);
  const double l2 = ddop::relative_l2(closed.values, numeric.values);
  const ddop::ComplexVector<double> cmag = closed.values.cwiseAbs().cast<std::complex<double>>();
  const ddop::ComplexVector<double> nmag = numeric.values.cwiseAbs().cast<std::complex<double>>();
  const double l2_mag = ddop::relative_l2(cmag, nmag);

  if (c.csv()) {
    ddop::io::write_file_atomic(c.path("spectrum_closed.csv"), ddop::io::spectrum_csv(closed));
    ddop::io::write_file_atomic(c.path("spectrum_numeric.csv"), ddop::io::spectrum_csv(numeric));
    std::string cmp = "f,closed_re,closed_im,closed_abs,numeric_re,numeric_im,numeric_abs\n";
    for (ddop::Index i = 0; i < freqs.size(); ++i) {
      const auto a = closed.values[i];
      const auto b = numeric.values[i];
      cmp += ddop::io::format_double(freqs[i]) + ',' + ddop::io::format_double(a.real()) + ',' +
             ddop::io::format_double(a.imag()) + ',' + ddop::io::format_double(std::abs(a)) + ',' +
             ddop::io::format_double(b.real()) + ',' + ddop::io::format_double(b.imag()) + ',' +
             ddop::io::format_double(std::abs(b)) + '\n';
    }
    ddop::io::write_file_atomic(c.path("spectrum_compare.csv"), cmp);
  }
  if (c.json_out()) {
    ddop::io::write_file_atomic(c.path("spectrum.json"),
                                json{{"closed", ddop::io::spectrum_to_json(closed)},
                                     {"numeric", ddop::io::spectrum_to_json(numeric)}}
                                    .dump());
  }
  print_params(p);
  std::cout << "n_max=" << n_max << " points=" << freqs.size()
            << " relative_l2=" << ddop::io::format_double(l2)
            << " relative_l2_magnitude=" << ddop::io::format_double(l2_mag) << "\n";
  write_sidecar(c, "spectrum", {{"n_max", n_max}, {"relative_l2", l2}, {"relative_l2_magnitude", l2_mag}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay-Doppler orthogonal pulse toolkit"};
  app.require_subcommand(1);

  Common pulse_c, amb_c, val_c, frame_c, chan_c, spec_c;
  PulseOpts pulse_o;
  AmbiguityOpts amb_o;
  ValidateOpts val_o;
  FrameOpts frame_o;
  ChannelOpts chan_o;
  SpectrumOpts spec_o;

  auto* pulse = app.add_subcommand("pulse", "generate a pulse (CSV/JSON)");
  add_common(pulse, pulse_c);
  auto* kind = pulse->add_option_group("kind");
  kind->add_flag("--ddop", pulse_o.ddop, "DDOP u(t) (default)");
  kind->add_flag("--extended", pulse_o.extended, "cyclically extended DDOP u_c(t)");
  kind->add_flag("--rrc", pulse_o.rrc, "root-raised-cosine sub-pulse a(t)");
  kind->add_flag("--rect", pulse_o.rect, "unit-energy rectangle");
  kind->require_option(0, 1);
  pulse->add_option("--duration", pulse_o.duration, "rectangle duration in seconds")->check(CLI::PositiveNumber);

  auto* amb = app.add_subcommand("ambiguity", "sweep the delay-Doppler ambiguity grid");
  add_common(amb, amb_c);
  amb->add_option("--preset", amb_o.preset)->check(CLI::IsMember({"fig7", "fig8"}));
  amb->add_option("--slice", amb_o.slice, "emit only m=<int> or n=<int>");
  amb->add_option("--pulse", amb_o.pulse, "transmit pulse")->check(CLI::IsMember({"extended", "ddop"}));

  auto* val = app.add_subcommand("validate", "run an orthogonality / periodicity check");
  add_common(val, val_c);
  val->add_option("--check", val_o.check)->check(CLI::IsMember({"biorth", "local", "freq", "srn", "periodicity"}));
  val->add_option("--pulse", val_o.pulse)
      ->check(CLI::IsMember({"extended", "ddop", "rrc", "rect", "periodic", "random"}));

  auto* frame = app.add_subcommand("frame", "ODDM modulate / demodulate a frame");
  add_common(frame, frame_c);
  frame->add_option("--in", frame_o.in, "frame file (.json or .csv); default random QPSK from --seed");
  frame->add_option("--waveform", frame_o.waveform, "demodulate this waveform instead of modulating");
  frame->add_flag("--plain", frame_o.plain, "transmit with u instead of u_c");

  auto* chan = app.add_subcommand("channel", "apply a delay-Doppler channel to a waveform");
  add_common(chan, chan_c);
  chan->add_option("--channel", chan_o.channel, "channel JSON file");
  chan->add_option("--in", chan_o.in, "input waveform (.json or .csv)");
  chan->add_option("--random", chan_o.random_paths, "generate a random channel with P paths");
  chan->add_option("--lmax", chan_o.l_max)->check(CLI::NonNegativeNumber);
  chan->add_option("--kmax", chan_o.k_max)->check(CLI::NonNegativeNumber);
  chan->add_option("--awgn", chan_o.awgn, "complex noise standard deviation (default off)")->check(CLI::NonNegativeNumber);

  auto* spec = app.add_subcommand("spectrum", "closed-form vs numerical DDOP spectrum");
  add_common(spec, spec_c);
  spec->add_option("--preset", spec_o.preset)->check(CLI::IsMember({"fig5"}));
  spec->add_option("--nmax", spec_o.n_max, "series truncation (default 4M)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*pulse) return cmd_pulse(pulse_c, pulse_o);
    if (*amb) return cmd_ambiguity(amb_c, amb_o);
    if (*val) return cmd_validate(val_c, val_o);
    if (*frame) return cmd_frame(frame_c, frame_o);
    if (*chan) return cmd_channel(chan_c, chan_o);
    if (*spec) return cmd_spectrum(spec_c, spec_o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

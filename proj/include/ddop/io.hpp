#pragma once

#include "ddop/ambiguity.hpp"
#include "ddop/channel.hpp"
#include "ddop/modem.hpp"
#include "ddop/spectral.hpp"
#include "ddop/validators.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace ddop::io {

using json = nlohmann::json;

/// 17 significant digits; round-trips every double.
std::string format_double(double v);

// Signals: JSON {t0, dt, samples: [[re, im], ...]}, CSV t,re,im.
json signal_to_json(const SampledSignal<double>& s);
SampledSignal<double> signal_from_json(const json& j);
std::string signal_csv(const SampledSignal<double>& s);
SampledSignal<double> signal_from_csv(const std::string& text);

// Ambiguity grids: CSV m,n,re,im,abs. A slice keeps only rows with the given
// fixed m (axis 'm') or fixed n (axis 'n').
struct GridSlice {
  char axis = 'n';
  int index = 0;
};
std::string grid_csv(const AmbiguityGrid<double>& grid, std::optional<GridSlice> slice = {});
json grid_to_json(const AmbiguityGrid<double>& grid);

// Frames: CSV m,n,re,im and JSON {M, N, symbols: [[re, im], ...]} (row-major in m).
std::string frame_csv(const Frame<double>& X);
Frame<double> frame_from_csv(const std::string& text);
json frame_to_json(const Frame<double>& X);
Frame<double> frame_from_json(const json& j);

// Channels: JSON {W0, T0, paths: [{re, im, l, k}, ...]}.
json channel_to_json(const DdChannel<double>& ch);
DdChannel<double> channel_from_json(const json& j);

// Spectra: CSV f,re,im,abs.
std::string spectrum_csv(const Spectrum<double>& sp);
json spectrum_to_json(const Spectrum<double>& sp);

json report_to_json(const OrthogonalityReport<double>& r);
json report_to_json(const PeriodicityReport<double>& r);
json params_to_json(const DdopParams<double>& p);

std::string read_text(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Dispatch on extension: .json or .csv.
SampledSignal<double> read_signal(const std::filesystem::path& path);
Frame<double> read_frame(const std::filesystem::path& path);

}  // namespace ddop::io

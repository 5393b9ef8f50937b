#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "cogres/cognition.hpp"
#include "cogres/core.hpp"

namespace cogres {

/// Formats a double with 17 significant digits (shortest form that is still
/// bit-faithful on reload).
std::string format_double(double v);

// Headerless CSV, one row per timepoint.
TimeSeries load_timeseries(const std::filesystem::path& path,
                           std::optional<std::size_t> expected_channels = std::nullopt);
void save_timeseries(const TimeSeries& ts, const std::filesystem::path& path);

/// Parses CSV text already in memory; `origin` only appears in error messages.
Matrix parse_csv_matrix(const std::string& text, const std::string& origin);

void save_connectome(const Connectome& c, const std::filesystem::path& path);
Connectome load_connectome(const std::filesystem::path& path, std::string label = {});

/// Relative subject paths are resolved against the manifest's directory.
SubjectManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const SubjectManifest& m, const std::filesystem::path& path);

void write_json(const nlohmann::json& j, const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

nlohmann::json to_json(const ReservoirConfig& cfg);
nlohmann::json to_json(const CognitiveConfig& cfg);
nlohmann::json to_json(const MCReport& r);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const EvalReport& r);

/// Overlays keys present in `j` onto `base`; unknown keys are a ConfigError.
ReservoirConfig reservoir_config_from_json(const nlohmann::json& j, ReservoirConfig base = {});
CognitiveConfig cognitive_config_from_json(const nlohmann::json& j, CognitiveConfig base = {});

}  // namespace cogres

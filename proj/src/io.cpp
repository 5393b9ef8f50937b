#include "cogres/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cogres {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_for_write(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

void write_matrix_csv(const Matrix& m, const fs::path& path) {
  auto out = open_for_write(path);
  std::string line;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    line.clear();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) line += ',';
      line += format_double(m(i, j));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw Error("failed to format number");
  return std::string(buf, end);
}

Matrix parse_csv_matrix(const std::string& text, const std::string& origin) {
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool seen_blank = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string_view line(text.data() + pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      seen_blank = true;
      continue;
    }
    if (seen_blank) throw FormatError(origin + ": blank line inside data", line_no - 1, 1);

    std::vector<double> row;
    std::size_t col = 0;
    std::size_t start = 0;
    for (;;) {
      ++col;
      std::size_t comma = line.find(',', start);
      std::string_view cell = line.substr(start, comma == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : comma - start);
      while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
      if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw FormatError(origin + ": cannot parse '" + std::string(cell) + "' as a number",
                          line_no, col);
      }
      if (!std::isfinite(v)) {
        throw DataError(origin + ": non-finite value at row " + std::to_string(line_no) +
                        ", column " + std::to_string(col));
      }
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw FormatError(origin + ": ragged row with " + std::to_string(row.size()) +
                            " columns, expected " + std::to_string(width),
                        line_no, std::min(row.size(), width) + 1);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError(origin + ": no data rows", 1, 1);

  Matrix m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

TimeSeries load_timeseries(const fs::path& path, std::optional<std::size_t> expected_channels) {
  TimeSeries ts(parse_csv_matrix(read_file(path), path.string()));
  if (expected_channels && ts.channels() != *expected_channels) {
    throw DimensionError(path.string() + ": expected " + std::to_string(*expected_channels) +
                         " channels, found " + std::to_string(ts.channels()));
  }
  return ts;
}

void save_timeseries(const TimeSeries& ts, const fs::path& path) {
  write_matrix_csv(ts.data(), path);
}

void save_connectome(const Connectome& c, const fs::path& path) {
  write_matrix_csv(c.weights(), path);
}

Connectome load_connectome(const fs::path& path, std::string label) {
  return Connectome(parse_csv_matrix(read_file(path), path.string()), std::move(label));
}

SubjectManifest load_manifest(const fs::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw ValidationError(path.string() + ": manifest must be a JSON object");
  if (!j.contains("atlas_dim")) throw ValidationError(path.string() + ": missing field 'atlas_dim'");
  if (!j.contains("subjects")) throw ValidationError(path.string() + ": missing field 'subjects'");
  const auto& dim = j.at("atlas_dim");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) {
    throw ValidationError(path.string() + ": 'atlas_dim' must be a positive integer");
  }
  if (!j.at("subjects").is_array()) {
    throw ValidationError(path.string() + ": 'subjects' must be an array");
  }

  SubjectManifest m;
  m.atlas_dim = dim.get<std::size_t>();
  const fs::path base = path.parent_path();
  std::set<std::string> seen;
  for (const auto& s : j.at("subjects")) {
    for (const char* key : {"id", "path", "group"}) {
      if (!s.contains(key) || !s.at(key).is_string()) {
        throw ValidationError(path.string() + ": subject entry missing string field '" +
                              std::string(key) + "'");
      }
    }
    SubjectEntry e{s.at("id").get<std::string>(), s.at("path").get<std::string>(),
                   s.at("group").get<std::string>()};
    if (!seen.insert(e.id).second) {
      throw ValidationError(path.string() + ": duplicate subject id '" + e.id + "'");
    }
    fs::path p(e.path);
    if (p.is_relative()) p = base / p;
    e.path = p.string();
    // Validates existence, parseability and channel count.
    load_timeseries(p, m.atlas_dim);
    m.subjects.push_back(std::move(e));
  }
  return m;
}

void save_manifest(const SubjectManifest& m, const fs::path& path) {
  json subjects = json::array();
  for (const auto& s : m.subjects) {
    subjects.push_back({{"id", s.id}, {"path", s.path}, {"group", s.group}});
  }
  write_json({{"atlas_dim", m.atlas_dim}, {"subjects", subjects}}, path);
}

void write_json(const json& j, const fs::path& path) {
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

json read_json(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
}

json to_json(const ReservoirConfig& cfg) {
  return {{"size", cfg.size},
          {"leak", cfg.leak},
          {"spectral_target", cfg.spectral_target},
          {"input_scaling", cfg.input_scaling},
          {"activation", to_string(cfg.activation)},
          {"update_form", to_string(cfg.update_form)},
          {"seed", cfg.seed}};
}

json to_json(const CognitiveConfig& cfg) {
  json j = {{"spectral_target", cfg.spectral_target},
            {"input_scaling", cfg.input_scaling},
            {"leak", cfg.leak},
            {"tau_max", cfg.tau_max},
            {"train_fraction", cfg.train_fraction},
            {"ridge", cfg.ridge},
            {"update_form", to_string(cfg.update_form)},
            {"activation", to_string(cfg.activation)},
            {"seed", cfg.seed}};
  j["washout"] = cfg.washout ? json(*cfg.washout) : json("auto");
  return j;
}

json to_json(const MCReport& r) {
  return {{"modality", r.modality},
          {"tau_max", r.tau_max},
          {"per_lag_rho2", r.per_lag_rho2},
          {"mc", r.mc}};
}

json to_json(const Classification& c) {
  return {{"accuracy", c.accuracy},       {"sensitivity", c.sensitivity},
          {"specificity", c.specificity}, {"f1", c.f1},
          {"tp", c.tp},                   {"tn", c.tn},
          {"fp", c.fp},                   {"fn", c.fn}};
}

json to_json(const EvalReport& r) {
  json mc = json::object();
  for (const auto& [group, reports] : r.memory_capacity) {
    json arr = json::array();
    for (const auto& rep : reports) arr.push_back(to_json(rep));
    mc[group] = arr;
  }
  return {{"fold_index", r.fold_index},
          {"centeredness", r.centeredness},
          {"kl_by_measure", r.kl_by_measure},
          {"classification", to_json(r.classification)},
          {"memory_capacity", mc},
          {"train_ids", r.train_ids},
          {"test_ids", r.test_ids}};
}

namespace {

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

std::size_t get_count(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::uint64_t get_seed(const json& j) {
  const auto& v = j.at("seed");
  if (!v.is_number_integer()) throw ConfigError("config key 'seed' must be an integer");
  return v.is_number_unsigned() ? v.get<std::uint64_t>()
                                : static_cast<std::uint64_t>(v.get<std::int64_t>());
}

void reject_unknown(const json& j, std::initializer_list<const char*> known) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown config key '" + key + "'");
  }
}

}  // namespace

ReservoirConfig reservoir_config_from_json(const json& j, ReservoirConfig cfg) {
  reject_unknown(j, {"size", "leak", "spectral_target", "input_scaling", "activation",
                     "update_form", "seed"});
  if (j.contains("size")) cfg.size = get_count(j, "size");
  if (j.contains("leak")) cfg.leak = get_as<double>(j, "leak");
  if (j.contains("spectral_target")) cfg.spectral_target = get_as<double>(j, "spectral_target");
  if (j.contains("input_scaling")) cfg.input_scaling = get_as<double>(j, "input_scaling");
  if (j.contains("activation")) cfg.activation = parse_activation(get_as<std::string>(j, "activation"));
  if (j.contains("update_form")) {
    cfg.update_form = parse_update_form(get_as<std::string>(j, "update_form"));
  }
  if (j.contains("seed")) cfg.seed = get_seed(j);
  cfg.validate();
  return cfg;
}

CognitiveConfig cognitive_config_from_json(const json& j, CognitiveConfig cfg) {
  reject_unknown(j, {"spectral_target", "input_scaling", "leak", "tau_max", "train_fraction",
                     "washout", "ridge", "update_form", "activation", "seed"});
  if (j.contains("spectral_target")) cfg.spectral_target = get_as<double>(j, "spectral_target");
  if (j.contains("input_scaling")) cfg.input_scaling = get_as<double>(j, "input_scaling");
  if (j.contains("leak")) cfg.leak = get_as<double>(j, "leak");
  if (j.contains("tau_max")) cfg.tau_max = get_count(j, "tau_max");
  if (j.contains("train_fraction")) cfg.train_fraction = get_as<double>(j, "train_fraction");
  if (j.contains("washout")) {
    if (j.at("washout").is_string() && j.at("washout").get<std::string>() == "auto") {
      cfg.washout.reset();
    } else {
      cfg.washout = get_count(j, "washout");
    }
  }
  if (j.contains("ridge")) cfg.ridge = get_as<double>(j, "ridge");
  if (j.contains("update_form")) {
    cfg.update_form = parse_update_form(get_as<std::string>(j, "update_form"));
  }
  if (j.contains("activation")) cfg.activation = parse_activation(get_as<std::string>(j, "activation"));
  if (j.contains("seed")) cfg.seed = get_seed(j);
  cfg.validate();
  return cfg;
}

}  // namespace cogres

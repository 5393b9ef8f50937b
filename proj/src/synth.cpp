#include "cogres/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "cogres/io.hpp"
#include "cogres/rng.hpp"

namespace cogres {

namespace {

constexpr double kLatentAutocorrelation = 0.5;
constexpr std::uint64_t kStructureStream = 0xC0FFEEULL;

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  }
  return m;
}

Matrix mixing_matrix(const GroupProfile& profile, std::size_t rois) {
  Rng rng(profile.structure_seed);
  return gaussian_matrix(rois, profile.latent_factors, rng);
}

TimeSeries synth_subject(const Matrix& mixing, std::size_t timepoints, double sigma,
                         std::uint64_t seed) {
  Rng rng(seed);
  const auto k = static_cast<std::size_t>(mixing.cols());
  const Matrix shocks = gaussian_matrix(timepoints, k, rng);
  Matrix latent(timepoints, k);
  const double innovation = std::sqrt(1.0 - kLatentAutocorrelation * kLatentAutocorrelation);
  latent.row(0) = shocks.row(0);
  for (std::size_t t = 1; t < timepoints; ++t) {
    latent.row(t) = kLatentAutocorrelation * latent.row(t - 1) + innovation * shocks.row(t);
  }
  Matrix x = latent * mixing.transpose();
  if (sigma > 0.0) x += sigma * gaussian_matrix(timepoints, mixing.rows(), rng);
  return TimeSeries(std::move(x));
}

void check_bold_dims(std::size_t rois, std::size_t timepoints, const GroupProfile& profile) {
  if (rois < 2) throw ConfigError("synthetic BOLD needs at least 2 ROIs");
  if (timepoints < 10) throw ConfigError("synthetic BOLD needs at least 10 timepoints");
  if (profile.latent_factors < 1) throw ConfigError("synthetic BOLD needs at least 1 latent factor");
  if (!(profile.noise_sigma >= 0.0)) throw ConfigError("noise sigma must be >= 0");
}

// Min-max scales every column onto [-1, 1]; constant columns become 0.
void normalize_columns(Matrix& m) {
  for (Eigen::Index d = 0; d < m.cols(); ++d) {
    const double lo = m.col(d).minCoeff();
    const double hi = m.col(d).maxCoeff();
    if (hi > lo) {
      m.col(d) = ((m.col(d).array() - lo) / (hi - lo) * 2.0 - 1.0).matrix();
    } else {
      m.col(d).setZero();
    }
  }
}

Matrix visual_like(std::size_t timepoints, std::size_t dims, Rng& rng) {
  std::uniform_int_distribution<std::size_t> hold(10, 20);
  Matrix m(timepoints, dims);
  std::size_t t = 0;
  while (t < timepoints) {
    const Matrix frame = uniform_matrix(1, dims, rng);
    const std::size_t end = std::min(timepoints, t + hold(rng));
    for (; t < end; ++t) m.row(t) = frame.row(0);
  }
  return m;
}

Matrix text_like(std::size_t timepoints, std::size_t dims, Rng& rng) {
  std::normal_distribution<double> step(0.0, 0.15);
  Matrix m(timepoints, dims);
  m.row(0) = uniform_matrix(1, dims, rng).row(0);
  for (std::size_t t = 1; t < timepoints; ++t) {
    for (std::size_t d = 0; d < dims; ++d) {
      double v = m(t - 1, d) + step(rng);
      // Reflect at the walls.
      if (v > 1.0) v = 2.0 - v;
      if (v < -1.0) v = -2.0 - v;
      m(t, d) = std::clamp(v, -1.0, 1.0);
    }
  }
  return m;
}

Matrix audio_like(std::size_t timepoints, std::size_t dims, Rng& rng) {
  constexpr int kPartials = 3;
  std::uniform_real_distribution<double> freq(0.005, 0.05);
  std::uniform_real_distribution<double> amp(0.3, 1.0);
  std::uniform_real_distribution<double> phase0(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> drift(0.0, 0.01);
  std::normal_distribution<double> noise(0.0, 0.02);
  Matrix m = Matrix::Zero(timepoints, dims);
  for (std::size_t d = 0; d < dims; ++d) {
    for (int p = 0; p < kPartials; ++p) {
      const double f = freq(rng);
      const double a = amp(rng);
      double phase = phase0(rng);
      for (std::size_t t = 0; t < timepoints; ++t) {
        m(t, d) += a * std::sin(phase);
        phase += 2.0 * std::numbers::pi * f + drift(rng);
      }
    }
    for (std::size_t t = 0; t < timepoints; ++t) m(t, d) += noise(rng);
  }
  return m;
}

}  // namespace

std::vector<TimeSeries> synth_bold(std::size_t n_subjects, std::size_t rois,
                                   std::size_t timepoints, const GroupProfile& profile,
                                   std::uint64_t seed) {
  check_bold_dims(rois, timepoints, profile);
  const Matrix mixing = mixing_matrix(profile, rois);
  std::vector<TimeSeries> out;
  out.reserve(n_subjects);
  for (std::size_t i = 0; i < n_subjects; ++i) {
    out.push_back(synth_subject(mixing, timepoints, profile.noise_sigma, derive_seed(seed, i)));
  }
  return out;
}

ModalityKind parse_modality_kind(const std::string& s) {
  if (s == "visual-like") return ModalityKind::kVisual;
  if (s == "text-like") return ModalityKind::kText;
  if (s == "audio-like") return ModalityKind::kAudio;
  throw ConfigError("unknown modality kind '" + s +
                    "' (expected visual-like, text-like or audio-like)");
}

std::string to_string(ModalityKind k) {
  switch (k) {
    case ModalityKind::kVisual:
      return "visual-like";
    case ModalityKind::kText:
      return "text-like";
    case ModalityKind::kAudio:
      return "audio-like";
  }
  return "unknown";
}

TimeSeries synth_modality(ModalityKind kind, std::size_t timepoints, std::size_t dims,
                          std::uint64_t seed) {
  if (timepoints < 50) throw ConfigError("synthetic modality needs at least 50 timepoints");
  if (dims < 1) throw ConfigError("synthetic modality needs at least 1 dimension");
  Rng rng(seed);
  Matrix m;
  switch (kind) {
    case ModalityKind::kVisual:
      m = visual_like(timepoints, dims, rng);
      break;
    case ModalityKind::kText:
      m = text_like(timepoints, dims, rng);
      break;
    case ModalityKind::kAudio:
      m = audio_like(timepoints, dims, rng);
      break;
  }
  normalize_columns(m);
  return TimeSeries(std::move(m));
}

SubjectManifest write_synth_dataset(const SynthDatasetOptions& opts,
                                    const std::filesystem::path& dir) {
  if (opts.groups.empty()) throw ConfigError("at least one group is required");
  std::vector<GroupProfile> profiles;
  std::vector<Matrix> mixings;
  for (std::size_t g = 0; g < opts.groups.size(); ++g) {
    GroupProfile p;
    p.structure_seed = derive_seed(derive_seed(opts.seed, kStructureStream), g);
    p.noise_sigma = opts.noise_sigma;
    check_bold_dims(opts.rois, opts.timepoints, p);
    mixings.push_back(mixing_matrix(p, opts.rois));
    profiles.push_back(p);
  }

  std::filesystem::create_directories(dir);
  SubjectManifest manifest;
  manifest.atlas_dim = opts.rois;
  for (std::size_t i = 0; i < opts.subjects; ++i) {
    const std::size_t g = i % opts.groups.size();
    char id[32];
    std::snprintf(id, sizeof(id), "sub-%04zu", i + 1);
    const std::string file = std::string(id) + ".csv";
    const TimeSeries ts =
        synth_subject(mixings[g], opts.timepoints, profiles[g].noise_sigma, derive_seed(opts.seed, i));
    save_timeseries(ts, dir / file);
    manifest.subjects.push_back({id, file, opts.groups[g]});
  }
  save_manifest(manifest, dir / "manifest.json");
  return manifest;
}

}  // namespace cogres

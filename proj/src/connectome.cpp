#include "cogres/connectome.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cogres/io.hpp"
#include "cogres/log.hpp"
#include "cogres/parallel.hpp"
#include "cogres/reservoir.hpp"

namespace cogres {

TimeSeries learn_signals(const ReservoirWeights& w, const TimeSeries& bold,
                         const ReservoirConfig& cfg) {
  if (cfg.size != bold.channels()) {
    throw ConfigError("reservoir size " + std::to_string(cfg.size) +
                      " must equal the ROI count " + std::to_string(bold.channels()));
  }
  if (w.neurons() != cfg.size) {
    throw ConfigError("reservoir weights do not match the configured size");
  }
  return TimeSeries(run_reservoir(w, bold, cfg).states);
}

Connectome pearson_connectome(const TimeSeries& signals, std::string label) {
  if (signals.length() < 2) {
    throw DataError("Pearson correlation needs at least 2 timepoints");
  }
  const Matrix& x = signals.data();
  const auto r = x.cols();
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - mean;
  const Eigen::VectorXd norms = centered.colwise().norm().transpose();

  std::size_t flat = 0;
  for (Eigen::Index i = 0; i < r; ++i) flat += norms(i) == 0.0 ? 1 : 0;
  if (flat > 0) {
    warn(std::to_string(flat) + " zero-variance channel(s); their correlations are set to 0");
  }

  const Eigen::MatrixXd gram = centered.transpose() * centered;
  Matrix c = Matrix::Identity(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = i + 1; j < r; ++j) {
      double v = 0.0;
      if (norms(i) > 0.0 && norms(j) > 0.0) {
        v = std::clamp(gram(i, j) / (norms(i) * norms(j)), -1.0, 1.0);
      }
      c(i, j) = v;
      c(j, i) = v;
    }
  }
  return Connectome(std::move(c), std::move(label));
}

Connectome aggregate_cbt(std::span<const Connectome> connectomes, std::string label) {
  if (connectomes.empty()) throw DataError("cannot aggregate an empty list of connectomes");
  const auto r = static_cast<Eigen::Index>(connectomes.front().size());
  for (const auto& c : connectomes) {
    if (static_cast<Eigen::Index>(c.size()) != r) {
      throw DimensionError("cannot aggregate connectomes of different sizes");
    }
  }
  const auto n = connectomes.size();
  Matrix mean = Matrix::Identity(r, r);
  std::vector<double> values(n);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = i + 1; j < r; ++j) {
      for (std::size_t k = 0; k < n; ++k) values[k] = connectomes[k].weights()(i, j);
      std::sort(values.begin(), values.end());
      double sum = 0.0;
      for (double v : values) sum += v;
      const double m = std::clamp(sum / static_cast<double>(n), -1.0, 1.0);
      mean(i, j) = m;
      mean(j, i) = m;
    }
  }
  // Diagonal: mean of the inputs' diagonals (exactly 1 for subject connectomes).
  for (Eigen::Index i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < n; ++k) values[k] = connectomes[k].weights()(i, i);
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    mean(i, i) = std::clamp(sum / static_cast<double>(n), -1.0, 1.0);
  }
  return Connectome(std::move(mean), std::move(label));
}

Connectome subject_connectome(const ReservoirWeights& w, const TimeSeries& bold,
                              const ReservoirConfig& cfg, std::string label) {
  return pearson_connectome(learn_signals(w, bold, cfg), std::move(label));
}

std::vector<Connectome> manifest_connectomes(const SubjectManifest& manifest,
                                             const ReservoirConfig& cfg, std::size_t threads) {
  cfg.validate();
  if (cfg.size != manifest.atlas_dim) {
    throw ConfigError("reservoir size " + std::to_string(cfg.size) +
                      " must equal atlas_dim " + std::to_string(manifest.atlas_dim));
  }
  const ReservoirWeights w = init_reservoir(cfg, manifest.atlas_dim);
  std::vector<std::optional<Connectome>> slots(manifest.subjects.size());
  parallel_for(slots.size(), threads, [&](std::size_t i) {
    const auto& s = manifest.subjects[i];
    try {
      slots[i] = subject_connectome(w, load_timeseries(s.path, manifest.atlas_dim), cfg, s.group);
    } catch (const Error& e) {
      throw Error("subject '" + s.id + "': " + e.what());
    }
  });
  std::vector<Connectome> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

Connectome build_group_cbt(const SubjectManifest& manifest, const std::string& group,
                           const ReservoirConfig& cfg, std::size_t threads) {
  SubjectManifest subset{manifest.atlas_dim, {}};
  for (const auto& s : manifest.subjects) {
    if (s.group == group) subset.subjects.push_back(s);
  }
  if (subset.subjects.empty()) throw DataError("no subjects in group '" + group + "'");
  const auto connectomes = manifest_connectomes(subset, cfg, threads);
  return aggregate_cbt(connectomes, group);
}

}  // namespace cogres

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cogres/core.hpp"
#include "cogres/reservoir.hpp"

namespace cogres {

struct CognitiveConfig {
  double spectral_target = 0.99;
  double input_scaling = 1.0;
  double leak = 1.0;
  std::size_t tau_max = 20;
  double train_fraction = 0.8;
  std::optional<std::size_t> washout;  // unset: floor(0.1 * T_train)
  double ridge = 1e-8;
  UpdateForm update_form = UpdateForm::kLeakInside;
  Activation activation = Activation::kTanh;
  std::uint64_t seed = 0;

  void validate() const;

  /// The reservoir settings used to run the cognitive reservoir.
  ReservoirConfig as_reservoir_config(std::size_t neurons) const;
};

struct ReadoutWeights {
  std::vector<Matrix> per_lag;  // index τ-1, each D_out×M
};

/// W_res = CBT rescaled to cfg.spectral_target; W_in uniform [-1,1] from
/// cfg.seed, scaled by cfg.input_scaling.
ReservoirWeights build_cognitive_reservoir(const Connectome& cbt, const CognitiveConfig& cfg,
                                           std::size_t input_dim);

/// target(t) = input(t - tau), zero for the first tau rows.
TimeSeries make_delay_target(const TimeSeries& input, std::size_t tau);
Matrix make_delay_target(const Matrix& input, std::size_t tau);

/// Ridge readout W (D_out×M) minimizing ||H W^T - Y||^2 + lambda ||W||^2 over
/// rows [washout, T). Throws NumericalError if lambda == 0 and H^T H is singular.
Matrix train_readout(const Matrix& states, const Matrix& target, double lambda,
                     std::size_t washout);

/// Row-wise W_out h(t).
Matrix predict_readout(const Matrix& w_out, const Matrix& states);

/// Squared Pearson correlation averaged over columns; a column whose truth or
/// prediction has zero variance contributes 0.
double mean_squared_correlation(const Matrix& truth, const Matrix& prediction);

/// Memory capacity of an already-built reservoir. The delayed targets are
/// formed over the whole sequence, the sequence is split in time at
/// train_fraction, one ridge readout per lag is trained on the (post-washout)
/// training rows, and each lag is scored on the test rows.
MCReport memory_capacity(const ReservoirWeights& w, const TimeSeries& modality,
                         const CognitiveConfig& cfg, const std::string& name = {});

/// Memory capacity with the CBT as the cognitive reservoir.
MCReport memory_capacity(const Connectome& cbt, const TimeSeries& modality,
                         const CognitiveConfig& cfg, const std::string& name = {});

using NamedSeries = std::pair<std::string, TimeSeries>;

std::vector<MCReport> mc_suite(const Connectome& cbt, const std::vector<NamedSeries>& modalities,
                               const CognitiveConfig& cfg, std::size_t threads = 1);

}  // namespace cogres

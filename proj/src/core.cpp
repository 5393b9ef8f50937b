#include "cogres/core.hpp"

#include <cmath>
#include <string>

namespace cogres {

FormatError::FormatError(const std::string& msg, std::size_t row, std::size_t col)
    : Error(msg + " (row " + std::to_string(row) + ", column " + std::to_string(col) + ")"),
      row_(row),
      col_(col) {}

TimeSeries::TimeSeries(Matrix data) : data_(std::move(data)) {
  if (data_.rows() < 1 || data_.cols() < 1) {
    throw DimensionError("time series must have at least one timepoint and one channel");
  }
  if (!data_.allFinite()) {
    for (Eigen::Index t = 0; t < data_.rows(); ++t) {
      for (Eigen::Index d = 0; d < data_.cols(); ++d) {
        if (!std::isfinite(data_(t, d))) {
          throw DataError("non-finite value at timepoint " + std::to_string(t + 1) +
                          ", channel " + std::to_string(d + 1));
        }
      }
    }
  }
}

Connectome::Connectome(Matrix weights, std::string label)
    : weights_(std::move(weights)), label_(std::move(label)) {
  const auto n = weights_.rows();
  if (n != weights_.cols()) throw ValidationError("connectome must be square");
  if (n < 2) throw ValidationError("connectome needs at least 2 regions");
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = weights_(i, j);
      if (!std::isfinite(w)) {
        throw ValidationError("non-finite connectome entry at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
      if (std::abs(w) > 1.0 + kRangeTol) {
        throw ValidationError("connectome entry out of [-1, 1] at (" + std::to_string(i) +
                              ", " + std::to_string(j) + ")");
      }
      if (j > i && std::abs(w - weights_(j, i)) > kSymmetryTol) {
        throw ValidationError("connectome is not symmetric at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
    }
  }
}

std::string to_string(Activation a) { return a == Activation::kTanh ? "tanh" : "linear"; }

std::string to_string(UpdateForm f) {
  return f == UpdateForm::kLeakOutside ? "leak_outside" : "leak_inside";
}

Activation parse_activation(const std::string& s) {
  if (s == "tanh") return Activation::kTanh;
  if (s == "linear") return Activation::kLinear;
  throw ConfigError("unknown activation '" + s + "' (expected tanh or linear)");
}

UpdateForm parse_update_form(const std::string& s) {
  if (s == "leak_outside") return UpdateForm::kLeakOutside;
  if (s == "leak_inside") return UpdateForm::kLeakInside;
  throw ConfigError("unknown update_form '" + s + "' (expected leak_outside or leak_inside)");
}

void ReservoirConfig::validate() const {
  if (size < 1) throw ConfigError("reservoir size must be >= 1");
  if (!(leak >= 0.0 && leak <= 1.0)) throw ConfigError("leak must lie in [0, 1]");
  if (!(spectral_target > 0.0) || !std::isfinite(spectral_target)) {
    throw ConfigError("spectral_target must be positive");
  }
  if (!(input_scaling > 0.0) || !std::isfinite(input_scaling)) {
    throw ConfigError("input_scaling must be positive");
  }
}

}  // namespace cogres

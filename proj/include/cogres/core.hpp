#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cogres {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Error hierarchy. Everything thrown by the library derives from Error so
// callers (the CLI in particular) can catch a single type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public Error {
 public:
  FormatError(const std::string& msg, std::size_t row, std::size_t col);
  std::size_t row() const { return row_; }
  std::size_t column() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};
class DataError : public Error {
 public:
  using Error::Error;
};
class ValidationError : public Error {
 public:
  using Error::Error;
};
class ConfigError : public Error {
 public:
  using Error::Error;
};
class NumericalError : public Error {
 public:
  NumericalError(const std::string& msg, double last_estimate = 0.0)
      : Error(msg), last_estimate_(last_estimate) {}
  double last_estimate() const { return last_estimate_; }

 private:
  double last_estimate_;
};
class DegenerateError : public Error {
 public:
  using Error::Error;
};
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& msg, std::size_t timestep)
      : Error(msg), timestep_(timestep) {}
  std::size_t timestep() const { return timestep_; }

 private:
  std::size_t timestep_;
};

/// A T×D sequence of real vectors, stored time-major (row t = timepoint t).
class TimeSeries {
 public:
  /// Throws DimensionError on an empty matrix and DataError on NaN/Inf.
  explicit TimeSeries(Matrix data);

  const Matrix& data() const { return data_; }
  std::size_t length() const { return static_cast<std::size_t>(data_.rows()); }
  std::size_t channels() const { return static_cast<std::size_t>(data_.cols()); }

 private:
  Matrix data_;
};

/// Symmetric R×R matrix of pairwise couplings with an optional group tag.
class Connectome {
 public:
  static constexpr double kSymmetryTol = 1e-12;
  static constexpr double kRangeTol = 1e-12;

  /// Throws ValidationError if the matrix is not square, R < 2, asymmetric
  /// beyond kSymmetryTol, non-finite, or has an entry with |w| > 1 + kRangeTol.
  explicit Connectome(Matrix weights, std::string label = {});

  const Matrix& weights() const { return weights_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return static_cast<std::size_t>(weights_.rows()); }

 private:
  Matrix weights_;
  std::string label_;
};

enum class Activation { kTanh, kLinear };
enum class UpdateForm { kLeakOutside, kLeakInside };

std::string to_string(Activation a);
std::string to_string(UpdateForm f);
Activation parse_activation(const std::string& s);
UpdateForm parse_update_form(const std::string& s);

struct ReservoirConfig {
  std::size_t size = 111;
  double leak = 0.5;
  double spectral_target = 1.45;
  double input_scaling = 1.0;
  Activation activation = Activation::kTanh;
  UpdateForm update_form = UpdateForm::kLeakOutside;
  std::uint64_t seed = 0;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

struct ReservoirWeights {
  Matrix w_in;   // M×D
  Matrix w_res;  // M×M
  double spectral_target = 0.0;
  double achieved_radius = 0.0;

  std::size_t neurons() const { return static_cast<std::size_t>(w_res.rows()); }
  std::size_t input_dim() const { return static_cast<std::size_t>(w_in.cols()); }
};

struct SubjectEntry {
  std::string id;
  std::string path;
  std::string group;
};

struct SubjectManifest {
  std::size_t atlas_dim = 0;
  std::vector<SubjectEntry> subjects;
};

struct MCReport {
  std::string modality;
  std::size_t tau_max = 0;
  std::vector<double> per_lag_rho2;  // index τ-1
  double mc = 0.0;
};

struct Classification {
  double accuracy = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

struct EvalReport {
  int fold_index = 0;
  std::map<std::string, double> centeredness;                           // group → d_F
  std::map<std::string, std::map<std::string, double>> kl_by_measure;  // group → measure → KL
  Classification classification;
  std::map<std::string, std::vector<MCReport>> memory_capacity;  // group → per-modality
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
};

}  // namespace cogres

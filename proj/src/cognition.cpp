#include "cogres/cognition.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "cogres/log.hpp"
#include "cogres/parallel.hpp"
#include "cogres/rng.hpp"

namespace cogres {

void CognitiveConfig::validate() const {
  if (!(spectral_target > 0.0) || !std::isfinite(spectral_target)) {
    throw ConfigError("spectral_target must be positive");
  }
  if (!(input_scaling > 0.0) || !std::isfinite(input_scaling)) {
    throw ConfigError("input_scaling must be positive");
  }
  if (!(leak >= 0.0 && leak <= 1.0)) throw ConfigError("leak must lie in [0, 1]");
  if (tau_max < 1) throw ConfigError("tau_max must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train_fraction must lie in (0, 1)");
  }
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw ConfigError("ridge must be >= 0");
}

ReservoirConfig CognitiveConfig::as_reservoir_config(std::size_t neurons) const {
  ReservoirConfig r;
  r.size = neurons;
  r.leak = leak;
  r.spectral_target = spectral_target;
  r.input_scaling = input_scaling;
  r.activation = activation;
  r.update_form = update_form;
  r.seed = seed;
  return r;
}

ReservoirWeights build_cognitive_reservoir(const Connectome& cbt, const CognitiveConfig& cfg,
                                           std::size_t input_dim) {
  cfg.validate();
  if (input_dim < 1) throw ConfigError("input dimension must be >= 1");
  ReservoirWeights w;
  w.w_res = cbt.weights();
  rescale_to_radius(w.w_res, cfg.spectral_target);
  Rng rng(cfg.seed);
  w.w_in = uniform_matrix(cbt.size(), input_dim, rng) * cfg.input_scaling;
  w.spectral_target = cfg.spectral_target;
  w.achieved_radius = estimate_spectral_radius(w.w_res);
  return w;
}

Matrix make_delay_target(const Matrix& input, std::size_t tau) {
  Matrix out = Matrix::Zero(input.rows(), input.cols());
  const auto t = input.rows();
  const auto shift = static_cast<Eigen::Index>(std::min<std::size_t>(tau, t));
  if (shift < t) out.bottomRows(t - shift) = input.topRows(t - shift);
  return out;
}

TimeSeries make_delay_target(const TimeSeries& input, std::size_t tau) {
  return TimeSeries(make_delay_target(input.data(), tau));
}

namespace {

// Factorizes H^T H + lambda I once so that several targets can share it.
class RidgeSolver {
 public:
  RidgeSolver(const Matrix& states, double lambda, std::size_t washout) {
    if (washout >= static_cast<std::size_t>(states.rows())) {
      throw DataError("washout " + std::to_string(washout) + " leaves no training rows");
    }
    washout_ = static_cast<Eigen::Index>(washout);
    h_ = states.bottomRows(states.rows() - washout_);
    const auto m = h_.cols();
    if (h_.rows() <= m) {
      warn("readout has " + std::to_string(h_.rows()) + " training rows for " +
           std::to_string(m) + " neurons; the fit is underdetermined without ridge");
    }
    gram_ = h_.transpose() * h_;
    gram_.diagonal().array() += lambda;
    if (lambda == 0.0) {
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gram_);
      if (qr.rank() < m) {
        throw NumericalError("readout normal equations are singular; use a ridge lambda > 0");
      }
    }
    llt_.compute(gram_);
    use_qr_ = llt_.info() != Eigen::Success;
    if (use_qr_) qr_.compute(gram_);
  }

  Matrix solve(const Matrix& target) const {
    if (target.rows() != h_.rows() + washout_) {
      throw DimensionError("states and target lengths differ");
    }
    const Eigen::MatrixXd rhs = h_.transpose() * target.bottomRows(h_.rows());
    Eigen::MatrixXd x = apply(rhs);
    // One step of iterative refinement.
    x += apply(rhs - gram_ * x);
    if (!x.allFinite()) throw NumericalError("readout solution is not finite");
    return x.transpose();
  }

 private:
  Eigen::MatrixXd apply(const Eigen::MatrixXd& b) const {
    return use_qr_ ? Eigen::MatrixXd(qr_.solve(b)) : Eigen::MatrixXd(llt_.solve(b));
  }

  Eigen::Index washout_ = 0;
  Eigen::MatrixXd h_;
  Eigen::MatrixXd gram_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
  bool use_qr_ = false;
};

bool is_flat(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const double hi = v.maxCoeff();
  const double lo = v.minCoeff();
  return hi - lo <= 1e-12 * std::max(1.0, std::max(std::abs(hi), std::abs(lo)));
}

}  // namespace

Matrix train_readout(const Matrix& states, const Matrix& target, double lambda,
                     std::size_t washout) {
  if (states.rows() != target.rows()) throw DimensionError("states and target lengths differ");
  if (!(lambda >= 0.0)) throw ConfigError("ridge lambda must be >= 0");
  return RidgeSolver(states, lambda, washout).solve(target);
}

Matrix predict_readout(const Matrix& w_out, const Matrix& states) {
  if (w_out.cols() != states.cols()) {
    throw DimensionError("readout expects " + std::to_string(w_out.cols()) +
                         " neurons, states have " + std::to_string(states.cols()));
  }
  return states * w_out.transpose();
}

double mean_squared_correlation(const Matrix& truth, const Matrix& prediction) {
  if (truth.rows() != prediction.rows() || truth.cols() != prediction.cols()) {
    throw DimensionError("truth and prediction shapes differ");
  }
  if (truth.cols() == 0) return 0.0;
  double total = 0.0;
  for (Eigen::Index d = 0; d < truth.cols(); ++d) {
    const Eigen::VectorXd y = truth.col(d);
    const Eigen::VectorXd p = prediction.col(d);
    if (y.size() < 2 || is_flat(y) || is_flat(p)) continue;
    const Eigen::VectorXd yc = y.array() - y.mean();
    const Eigen::VectorXd pc = p.array() - p.mean();
    const double denom = yc.squaredNorm() * pc.squaredNorm();
    if (denom <= 0.0) continue;
    const double cov = yc.dot(pc);
    total += std::clamp(cov * cov / denom, 0.0, 1.0);
  }
  return total / static_cast<double>(truth.cols());
}

MCReport memory_capacity(const ReservoirWeights& w, const TimeSeries& modality,
                         const CognitiveConfig& cfg, const std::string& name) {
  cfg.validate();
  const std::size_t total = modality.length();
  const auto train_len = static_cast<std::size_t>(std::floor(cfg.train_fraction * total));
  const std::size_t test_len = total - train_len;
  if (test_len <= cfg.tau_max + 2) {
    throw DataError("modality '" + name + "' has " + std::to_string(test_len) +
                    " test timepoints; need more than tau_max + 2 = " +
                    std::to_string(cfg.tau_max + 2));
  }
  const std::size_t washout =
      cfg.washout.value_or(static_cast<std::size_t>(std::floor(0.1 * train_len)));
  if (washout >= train_len) throw ConfigError("washout must be shorter than the training split");

  const Matrix states =
      run_reservoir(w, modality, cfg.as_reservoir_config(w.neurons())).states;
  const auto tr = static_cast<Eigen::Index>(train_len);
  const auto te = static_cast<Eigen::Index>(test_len);
  const RidgeSolver solver(states.topRows(tr), cfg.ridge, washout);
  const Matrix test_states = states.bottomRows(te);

  MCReport report;
  report.modality = name;
  report.tau_max = cfg.tau_max;
  report.per_lag_rho2.reserve(cfg.tau_max);
  for (std::size_t tau = 1; tau <= cfg.tau_max; ++tau) {
    const Matrix target = make_delay_target(modality.data(), tau);
    const Matrix w_out = solver.solve(target.topRows(tr));
    const double r2 = mean_squared_correlation(target.bottomRows(te),
                                               predict_readout(w_out, test_states));
    report.per_lag_rho2.push_back(r2);
    report.mc += r2;
  }
  return report;
}

MCReport memory_capacity(const Connectome& cbt, const TimeSeries& modality,
                         const CognitiveConfig& cfg, const std::string& name) {
  return memory_capacity(build_cognitive_reservoir(cbt, cfg, modality.channels()), modality, cfg,
                         name);
}

std::vector<MCReport> mc_suite(const Connectome& cbt, const std::vector<NamedSeries>& modalities,
                               const CognitiveConfig& cfg, std::size_t threads) {
  std::vector<std::optional<MCReport>> slots(modalities.size());
  parallel_for(modalities.size(), threads, [&](std::size_t i) {
    slots[i] = memory_capacity(cbt, modalities[i].second, cfg, modalities[i].first);
  });
  std::vector<MCReport> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace cogres

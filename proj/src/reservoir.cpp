#include "cogres/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "cogres/rng.hpp"

namespace cogres {

namespace {

constexpr double kDivergenceBound = 1e100;
constexpr std::size_t kMaxBlock = 16;
constexpr int kStableSteps = 3;
constexpr std::uint64_t kSpectralSeed = 0x5eed5eedULL;

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& z) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  return qr.householderQ() * Eigen::MatrixXd::Identity(z.rows(), z.cols());
}

double max_ritz_magnitude(const Eigen::MatrixXd& projected) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(projected, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) return std::numeric_limits<double>::quiet_NaN();
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

double estimate_spectral_radius(const Matrix& m, SpectralOptions opts) {
  if (m.rows() != m.cols()) throw DimensionError("spectral radius needs a square matrix");
  if (!m.allFinite()) throw DataError("spectral radius of a non-finite matrix");
  const auto n = m.rows();
  if (n == 0 || m.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  const Eigen::MatrixXd a = m;
  const auto block = std::min<Eigen::Index>(n, kMaxBlock);
  double last = std::numeric_limits<double>::quiet_NaN();

  for (int attempt = 0; attempt < 2; ++attempt) {
    Rng rng(derive_seed(kSpectralSeed, static_cast<std::uint64_t>(attempt)));
    Eigen::MatrixXd q = orthonormal_basis(uniform_matrix(n, block, rng));
    double prev = -1.0;
    int stable = 0;
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
      Eigen::MatrixXd z = a * q;
      const double est = max_ritz_magnitude(q.transpose() * z);
      // A full block spans the whole space: the Ritz values are the spectrum.
      if (block == n && std::isfinite(est)) return est;
      // The leading column follows plain power iteration and hits exact zero on nilpotent input.
      if (z.col(0).norm() == 0.0) return 0.0;
      if (std::isfinite(est)) {
        last = est;
        stable = (prev >= 0.0 && std::abs(est - prev) <= opts.tol * std::max(est, 1e-300))
                     ? stable + 1
                     : 0;
        if (stable >= kStableSteps) return est;
        prev = est;
      }
      q = orthonormal_basis(z);
    }
  }
  throw NumericalError("spectral radius estimate did not converge in " +
                           std::to_string(opts.max_iter) + " iterations (last estimate " +
                           std::to_string(last) + ")",
                       last);
}

double rescale_to_radius(Matrix& w, double target, SpectralOptions opts) {
  const double raw = estimate_spectral_radius(w, opts);
  if (raw == 0.0) {
    throw DegenerateError("recurrent matrix has zero spectral radius; cannot rescale");
  }
  w *= target / raw;
  return raw;
}

ReservoirWeights init_reservoir(const ReservoirConfig& cfg, std::size_t input_dim) {
  cfg.validate();
  if (input_dim < 1) throw ConfigError("input dimension must be >= 1");
  Rng rng(cfg.seed);
  ReservoirWeights w;
  w.w_in = uniform_matrix(cfg.size, input_dim, rng) * cfg.input_scaling;
  w.w_res = uniform_matrix(cfg.size, cfg.size, rng);
  rescale_to_radius(w.w_res, cfg.spectral_target);
  w.spectral_target = cfg.spectral_target;
  w.achieved_radius = estimate_spectral_radius(w.w_res);
  return w;
}

StateSequence run_reservoir(const ReservoirWeights& w, const TimeSeries& input,
                            const ReservoirConfig& cfg, const Vector& h0) {
  const auto m = w.w_res.rows();
  if (w.w_res.cols() != m || w.w_in.rows() != m) {
    throw DimensionError("reservoir weight shapes are inconsistent");
  }
  if (static_cast<std::size_t>(w.w_in.cols()) != input.channels()) {
    throw DimensionError("input has " + std::to_string(input.channels()) +
                         " channels but W_in expects " + std::to_string(w.w_in.cols()));
  }
  if (h0.size() != m) {
    throw DimensionError("initial state has " + std::to_string(h0.size()) +
                         " entries, reservoir has " + std::to_string(m));
  }

  const double a = cfg.leak;
  const bool is_tanh = cfg.activation == Activation::kTanh;
  const Matrix& x = input.data();

  StateSequence out;
  out.initial_state = h0;
  out.states.resize(x.rows(), m);
  Vector h = h0;
  Vector drive(m);
  for (Eigen::Index t = 0; t < x.rows(); ++t) {
    const Vector xt = x.row(t).transpose();
    if (cfg.update_form == UpdateForm::kLeakOutside) {
      drive = w.w_in * xt + w.w_res * h;
      if (is_tanh) drive = drive.array().tanh().matrix();
      h = (1.0 - a) * h + a * drive;
    } else {
      drive = a * (w.w_in * xt) + (1.0 - a) * (w.w_res * h);
      h = is_tanh ? Vector(drive.array().tanh().matrix()) : drive;
    }
    if (!h.allFinite() || h.cwiseAbs().maxCoeff() > kDivergenceBound) {
      throw DivergenceError("reservoir state diverged at timestep " + std::to_string(t + 1),
                            static_cast<std::size_t>(t + 1));
    }
    out.states.row(t) = h.transpose();
  }
  return out;
}

StateSequence run_reservoir(const ReservoirWeights& w, const TimeSeries& input,
                            const ReservoirConfig& cfg) {
  return run_reservoir(w, input, cfg, Vector::Zero(w.w_res.rows()));
}

EchoStateResult check_echo_state(const ReservoirWeights& w, const ReservoirConfig& cfg,
                                 std::size_t probe_len, double tol, std::uint64_t seed) {
  if (probe_len < 10) throw ConfigError("echo-state probe needs at least 10 steps");
  Rng rng(seed);
  const TimeSeries probe(uniform_matrix(probe_len, w.input_dim(), rng));
  const Vector h_a = uniform_matrix(w.neurons(), 1, rng).col(0);
  const Vector h_b = uniform_matrix(w.neurons(), 1, rng).col(0);
  try {
    const auto run_a = run_reservoir(w, probe, cfg, h_a);
    const auto run_b = run_reservoir(w, probe, cfg, h_b);
    const auto last = static_cast<Eigen::Index>(probe_len - 1);
    const double gap = (run_a.states.row(last) - run_b.states.row(last)).norm();
    return {std::isfinite(gap) && gap < tol, gap};
  } catch (const DivergenceError&) {
    return {false, std::numeric_limits<double>::infinity()};
  }
}

}  // namespace cogres

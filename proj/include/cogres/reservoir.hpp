#pragma once

#include <cstdint>

#include "cogres/core.hpp"

namespace cogres {

/// Reservoir trajectory. Row t holds the state after consuming input row t.
struct StateSequence {
  Matrix states;  // T×M
  Vector initial_state;
};

struct SpectralOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
};

/// Largest eigenvalue magnitude of a square matrix.
///
/// Block power (subspace) iteration with Rayleigh-Ritz extraction, so complex
/// conjugate dominant pairs and near-degenerate magnitudes converge. If the
/// first start vector block stalls, a second random block is tried before
/// NumericalError is raised with the last estimate.
double estimate_spectral_radius(const Matrix& m, SpectralOptions opts = {});

/// Rescales `w` so its spectral radius equals `target`. Returns the raw radius.
/// Throws DegenerateError if the raw radius is zero.
double rescale_to_radius(Matrix& w, double target, SpectralOptions opts = {});

/// Seeded W_in (M×D, scaled by input_scaling) and W_res (M×M, rescaled to
/// spectral_target), both drawn uniform on [-1, 1].
ReservoirWeights init_reservoir(const ReservoirConfig& cfg, std::size_t input_dim);

/// Runs the recurrence over every row of `input` starting from `h0`.
///
///   leak_outside: h(t+1) = (1-a) h(t) + a f(W_in x(t+1) + W_res h(t))
///   leak_inside:  h(t)   = f(a W_in x(t) + (1-a) W_res h(t-1))
///
/// Throws DimensionError on shape mismatch and DivergenceError if any state
/// entry leaves [-1e100, 1e100] or becomes non-finite.
StateSequence run_reservoir(const ReservoirWeights& w, const TimeSeries& input,
                            const ReservoirConfig& cfg, const Vector& h0);

/// Same with h0 = 0.
StateSequence run_reservoir(const ReservoirWeights& w, const TimeSeries& input,
                            const ReservoirConfig& cfg);

struct EchoStateResult {
  bool contracting = false;
  double final_gap = 0.0;
};

/// Drives the reservoir with one random input sequence from two random initial
/// states and reports whether the final states are closer than `tol`.
/// A diverging trajectory counts as non-contracting (gap = +inf).
EchoStateResult check_echo_state(const ReservoirWeights& w, const ReservoirConfig& cfg,
                                 std::size_t probe_len, double tol, std::uint64_t seed);

}  // namespace cogres

#pragma once

#include <span>
#include <string>
#include <vector>

#include "cogres/core.hpp"

namespace cogres {

/// Reservoir-encoded BOLD signal: X^u(t) = h(t) for every timepoint, no washout.
/// Requires cfg.size == bold.channels() == w.neurons().
TimeSeries learn_signals(const ReservoirWeights& w, const TimeSeries& bold,
                         const ReservoirConfig& cfg);

/// Channel-by-channel Pearson correlation over time. Zero-variance channels
/// correlate 0 with everything else; the diagonal is exactly 1.
Connectome pearson_connectome(const TimeSeries& signals, std::string label = {});

/// Elementwise mean. Each entry is summed over its values in sorted order, so
/// the result is bit-identical under any permutation of the input.
/// Throws on empty input or mixed sizes.
Connectome aggregate_cbt(std::span<const Connectome> connectomes, std::string label = {});

/// Encodes one subject through the shared reservoir and returns its connectome.
Connectome subject_connectome(const ReservoirWeights& w, const TimeSeries& bold,
                              const ReservoirConfig& cfg, std::string label = {});

/// Connectomes for every subject of the manifest, in manifest order, all
/// produced by one reservoir built from cfg.seed. Subjects are processed on
/// up to `threads` workers; the result does not depend on the thread count.
std::vector<Connectome> manifest_connectomes(const SubjectManifest& manifest,
                                             const ReservoirConfig& cfg,
                                             std::size_t threads = 1);

/// Template of one group: mean of its subjects' connectomes.
Connectome build_group_cbt(const SubjectManifest& manifest, const std::string& group,
                           const ReservoirConfig& cfg, std::size_t threads = 1);

}  // namespace cogres

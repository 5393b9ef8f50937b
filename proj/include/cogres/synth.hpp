#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cogres/core.hpp"

namespace cogres {

struct GroupProfile {
  std::uint64_t structure_seed = 0;  // fixes the group's latent mixing matrix
  double noise_sigma = 0.5;
  std::size_t latent_factors = 6;
};

/// Latent-factor BOLD stand-in: each subject mixes AR(1) latent signals
/// through the group's R×K mixing matrix and adds i.i.d. Gaussian noise.
/// Subject i draws from derive_seed(seed, i), so datasets are order-independent.
std::vector<TimeSeries> synth_bold(std::size_t n_subjects, std::size_t rois,
                                   std::size_t timepoints, const GroupProfile& profile,
                                   std::uint64_t seed);

enum class ModalityKind { kVisual, kText, kAudio };

ModalityKind parse_modality_kind(const std::string& s);
std::string to_string(ModalityKind k);

/// Sensory stand-ins, each normalized to [-1, 1] per dimension.
///   visual-like: random D-vectors held for 10-20 steps
///   text-like:   reflected random walk
///   audio-like:  sinusoid mixtures with drifting phase plus small noise
TimeSeries synth_modality(ModalityKind kind, std::size_t timepoints, std::size_t dims,
                          std::uint64_t seed);

struct SynthDatasetOptions {
  std::size_t subjects = 10;
  std::size_t rois = 111;
  std::size_t timepoints = 200;
  std::vector<std::string> groups{"ASD", "TD"};
  double noise_sigma = 0.5;
  std::uint64_t seed = 0;
};

/// Writes one CSV per subject plus manifest.json into `dir`. Subjects are
/// dealt round-robin over the groups. Returns the manifest as written.
SubjectManifest write_synth_dataset(const SynthDatasetOptions& opts,
                                    const std::filesystem::path& dir);

}  // namespace cogres

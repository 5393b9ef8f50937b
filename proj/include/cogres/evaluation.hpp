#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cogres/cognition.hpp"
#include "cogres/core.hpp"

namespace cogres {

struct FoldPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::size_t> assignments;  // subject id → fold

  std::vector<std::string> test_ids(std::size_t fold) const;
  std::vector<std::string> train_ids(std::size_t fold) const;
};

/// Stratified shuffled k-fold partition. Within each group, subjects are
/// shuffled and dealt round-robin; the deal starts at a rotating fold so that
/// total fold sizes stay balanced too. Throws ConfigError if k < 2 or any
/// group has fewer than k subjects.
FoldPlan make_folds(const SubjectManifest& manifest, std::size_t k, std::uint64_t seed);

/// Mean Frobenius distance from the template to each test connectome.
double centeredness(const Connectome& cbt, std::span<const Connectome> test_subjects);

/// Strict upper triangle, row by row.
Vector upper_triangle(const Connectome& c);

struct LabeledConnectome {
  Connectome connectome;
  std::string label;
};

/// Two-template classifier: assigns each subject to the nearer template in
/// upper-triangle feature space (the hard-margin separator of two points is
/// their perpendicular bisector). Ties go to class a. Class a is positive.
Classification classify_cbt_shot(const Connectome& cbt_a, const std::string& label_a,
                                 const Connectome& cbt_b, const std::string& label_b,
                                 std::span<const LabeledConnectome> subjects);

struct EvaluationResult {
  std::vector<EvalReport> folds;
  nlohmann::json summary;
};

struct EvaluationOptions {
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

/// Full cross-validated protocol. Groups are taken in sorted order; the first
/// is the positive class. Throws Error naming the fold if a fold fails.
EvaluationResult run_full_evaluation(const SubjectManifest& manifest, const ReservoirConfig& cfg,
                                     const CognitiveConfig& cogcfg,
                                     const std::vector<NamedSeries>& modalities,
                                     const EvaluationOptions& opts);

/// Arithmetic mean of the per-fold metrics.
nlohmann::json summarize(std::span<const EvalReport> folds);

}  // namespace cogres

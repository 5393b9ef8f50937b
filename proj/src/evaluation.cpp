#include "cogres/evaluation.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <string>

#include "cogres/connectome.hpp"
#include "cogres/graph_metrics.hpp"
#include "cogres/io.hpp"
#include "cogres/parallel.hpp"
#include "cogres/rng.hpp"

namespace cogres {

using nlohmann::json;

std::vector<std::string> FoldPlan::test_ids(std::size_t fold) const {
  std::vector<std::string> ids;
  for (const auto& [id, f] : assignments) {
    if (f == fold) ids.push_back(id);
  }
  return ids;
}

std::vector<std::string> FoldPlan::train_ids(std::size_t fold) const {
  std::vector<std::string> ids;
  for (const auto& [id, f] : assignments) {
    if (f != fold) ids.push_back(id);
  }
  return ids;
}

FoldPlan make_folds(const SubjectManifest& manifest, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("cross-validation needs k >= 2 folds");
  std::map<std::string, std::vector<std::string>> by_group;
  for (const auto& s : manifest.subjects) by_group[s.group].push_back(s.id);

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  std::size_t offset = 0;
  std::uint64_t group_index = 0;
  for (auto& [group, ids] : by_group) {
    if (ids.size() < k) {
      throw ConfigError("group '" + group + "' has " + std::to_string(ids.size()) +
                        " subjects, fewer than k = " + std::to_string(k));
    }
    std::sort(ids.begin(), ids.end());
    Rng rng(derive_seed(seed, group_index++));
    std::shuffle(ids.begin(), ids.end(), rng);
    for (std::size_t i = 0; i < ids.size(); ++i) plan.assignments[ids[i]] = (offset + i) % k;
    offset = (offset + ids.size()) % k;
  }
  return plan;
}

double centeredness(const Connectome& cbt, std::span<const Connectome> test_subjects) {
  if (test_subjects.empty()) throw DataError("centeredness needs at least one test subject");
  double sum = 0.0;
  for (const auto& m : test_subjects) {
    if (m.size() != cbt.size()) throw DimensionError("test subject size differs from the CBT");
    sum += (cbt.weights() - m.weights()).norm();
  }
  return sum / static_cast<double>(test_subjects.size());
}

Vector upper_triangle(const Connectome& c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  Vector v(n * (n - 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) v(k++) = c.weights()(i, j);
  }
  return v;
}

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Classification classify_cbt_shot(const Connectome& cbt_a, const std::string& label_a,
                                 const Connectome& cbt_b, const std::string& label_b,
                                 std::span<const LabeledConnectome> subjects) {
  if (label_a == label_b) throw ConfigError("the two templates need distinct labels");
  if (subjects.empty()) throw DataError("classification needs at least one subject");
  if (cbt_a.size() != cbt_b.size()) throw DimensionError("templates differ in size");
  const Vector fa = upper_triangle(cbt_a);
  const Vector fb = upper_triangle(cbt_b);

  Classification out;
  for (const auto& s : subjects) {
    if (s.label != label_a && s.label != label_b) {
      throw DataError("subject label '" + s.label + "' is neither '" + label_a + "' nor '" +
                      label_b + "'");
    }
    if (s.connectome.size() != cbt_a.size()) {
      throw DimensionError("subject size differs from the templates");
    }
    const Vector f = upper_triangle(s.connectome);
    const bool predict_a = (f - fa).squaredNorm() <= (f - fb).squaredNorm();
    const bool is_a = s.label == label_a;
    if (is_a && predict_a) ++out.tp;
    if (is_a && !predict_a) ++out.fn;
    if (!is_a && predict_a) ++out.fp;
    if (!is_a && !predict_a) ++out.tn;
  }
  const double precision = ratio(out.tp, out.tp + out.fp);
  out.accuracy = ratio(out.tp + out.tn, subjects.size());
  out.sensitivity = ratio(out.tp, out.tp + out.fn);
  out.specificity = ratio(out.tn, out.tn + out.fp);
  out.f1 = precision + out.sensitivity > 0.0
               ? 2.0 * precision * out.sensitivity / (precision + out.sensitivity)
               : 0.0;
  return out;
}

EvaluationResult run_full_evaluation(const SubjectManifest& manifest, const ReservoirConfig& cfg,
                                     const CognitiveConfig& cogcfg,
                                     const std::vector<NamedSeries>& modalities,
                                     const EvaluationOptions& opts) {
  cfg.validate();
  cogcfg.validate();
  std::set<std::string> group_set;
  for (const auto& s : manifest.subjects) group_set.insert(s.group);
  if (group_set.size() != 2) {
    throw ConfigError("evaluation needs exactly two groups, found " +
                      std::to_string(group_set.size()));
  }
  const std::vector<std::string> groups(group_set.begin(), group_set.end());
  std::set<std::string> names;
  for (const auto& [name, _] : modalities) {
    if (!names.insert(name).second) throw ConfigError("duplicate modality name '" + name + "'");
  }
  const FoldPlan plan = make_folds(manifest, opts.folds, opts.seed);
  const auto connectomes = manifest_connectomes(manifest, cfg, opts.threads);

  std::vector<std::optional<EvalReport>> slots(opts.folds);
  parallel_for(opts.folds, opts.threads, [&](std::size_t fold) {
    try {
      EvalReport rep;
      rep.fold_index = static_cast<int>(fold);
      std::map<std::string, std::vector<Connectome>> train;
      std::map<std::string, std::vector<Connectome>> test;
      std::vector<LabeledConnectome> labeled;
      for (std::size_t i = 0; i < manifest.subjects.size(); ++i) {
        const auto& s = manifest.subjects[i];
        if (plan.assignments.at(s.id) == fold) {
          test[s.group].push_back(connectomes[i]);
          labeled.push_back({connectomes[i], s.group});
        } else {
          train[s.group].push_back(connectomes[i]);
        }
      }
      rep.train_ids = plan.train_ids(fold);
      rep.test_ids = plan.test_ids(fold);

      std::map<std::string, Connectome> cbts;
      for (const auto& g : groups) {
        const Connectome cbt = aggregate_cbt(train.at(g), g);
        rep.centeredness[g] = centeredness(cbt, test.at(g));
        rep.kl_by_measure[g] = topology_report(cbt, test.at(g));
        rep.memory_capacity[g] = mc_suite(cbt, modalities, cogcfg);
        cbts.emplace(g, cbt);
      }
      rep.classification =
          classify_cbt_shot(cbts.at(groups[0]), groups[0], cbts.at(groups[1]), groups[1], labeled);
      slots[fold] = std::move(rep);
    } catch (const std::exception& e) {
      throw Error("fold " + std::to_string(fold) + ": " + e.what());
    }
  });

  EvaluationResult result;
  for (auto& s : slots) result.folds.push_back(std::move(*s));
  result.summary = summarize(result.folds);
  return result;
}

json summarize(std::span<const EvalReport> folds) {
  if (folds.empty()) throw DataError("nothing to summarize");
  const double n = static_cast<double>(folds.size());
  std::map<std::string, double> center;
  std::map<std::string, std::map<std::string, double>> kl;
  std::map<std::string, double> cls;
  std::map<std::string, std::map<std::string, double>> mc;
  for (const auto& f : folds) {
    for (const auto& [g, v] : f.centeredness) center[g] += v;
    for (const auto& [g, m] : f.kl_by_measure) {
      for (const auto& [name, v] : m) kl[g][name] += v;
    }
    cls["accuracy"] += f.classification.accuracy;
    cls["sensitivity"] += f.classification.sensitivity;
    cls["specificity"] += f.classification.specificity;
    cls["f1"] += f.classification.f1;
    for (const auto& [g, reports] : f.memory_capacity) {
      for (const auto& r : reports) mc[g][r.modality] += r.mc;
    }
  }
  for (auto& [_, v] : center) v /= n;
  for (auto& [_, m] : kl) {
    for (auto& [__, v] : m) v /= n;
  }
  for (auto& [_, v] : cls) v /= n;
  for (auto& [_, m] : mc) {
    for (auto& [__, v] : m) v /= n;
  }
  return {{"folds", folds.size()},
          {"centeredness", center},
          {"kl_by_measure", kl},
          {"classification", cls},
          {"memory_capacity", mc}};
}

}  // namespace cogres

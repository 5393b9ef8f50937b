#include "cogres/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "cogres/cognition.hpp"
#include "cogres/connectome.hpp"
#include "cogres/evaluation.hpp"
#include "cogres/io.hpp"
#include "cogres/parallel.hpp"
#include "cogres/reservoir.hpp"
#include "cogres/synth.hpp"

namespace cogres {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct SynthArgs {
  std::size_t subjects = 10;
  std::size_t rois = 111;
  std::size_t timepoints = 200;
  std::string groups = "ASD,TD";
  double noise = 0.5;
  std::uint64_t seed = 0;
  std::string out;
};

struct SynthModalityArgs {
  std::string kind;
  std::size_t timepoints = 1000;
  std::size_t dims = 8;
  std::uint64_t seed = 0;
  std::string out;
};

struct GenCbtArgs {
  std::string manifest;
  std::string group;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> leak;
  std::optional<double> spectral_target;
  std::optional<std::size_t> threads;
};

struct McArgs {
  std::string cbt;
  std::vector<std::string> modalities;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> leak;
  std::optional<std::size_t> tau_max;
  std::optional<std::string> update_form;
  std::optional<std::size_t> threads;
};

struct EvalArgs {
  std::string manifest;
  std::size_t folds = 5;
  std::string config;
  std::string cogconfig;
  std::vector<std::string> modalities;
  std::string out;
  std::uint64_t seed = 0;
  std::optional<std::size_t> threads;
};

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (part.empty()) throw ConfigError("empty entry in list '" + s + "'");
    parts.push_back(part);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::size_t resolve_threads(const std::optional<std::size_t>& flag) {
  return flag ? std::max<std::size_t>(*flag, 1) : threads_from_env();
}

// A config without "size" takes the manifest's atlas dimension.
ReservoirConfig load_reservoir_config(const std::string& path, std::size_t atlas_dim) {
  ReservoirConfig cfg;
  json j = json::object();
  if (!path.empty()) {
    j = read_json(path);
    cfg = reservoir_config_from_json(j);
  }
  if (!j.contains("size")) cfg.size = atlas_dim;
  return cfg;
}

CognitiveConfig load_cognitive_config(const std::string& path) {
  return path.empty() ? CognitiveConfig{} : cognitive_config_from_json(read_json(path));
}

std::vector<NamedSeries> load_modalities(const std::vector<std::string>& specs) {
  std::vector<NamedSeries> out;
  std::set<std::string> names;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw ConfigError("modality must be given as name=path, got '" + spec + "'");
    }
    std::string name = spec.substr(0, eq);
    if (!names.insert(name).second) throw ConfigError("duplicate modality name '" + name + "'");
    out.emplace_back(name, load_timeseries(spec.substr(eq + 1)));
  }
  return out;
}

fs::path metadata_path(const fs::path& out) {
  fs::path meta = out;
  meta.replace_extension(".json");
  if (meta == out) meta += ".meta.json";
  return meta;
}

void cmd_synth(const SynthArgs& a, std::ostream& out) {
  SynthDatasetOptions opts;
  opts.subjects = a.subjects;
  opts.rois = a.rois;
  opts.timepoints = a.timepoints;
  opts.groups = split_csv_list(a.groups);
  opts.noise_sigma = a.noise;
  opts.seed = a.seed;
  const auto manifest = write_synth_dataset(opts, a.out);
  out << "wrote " << manifest.subjects.size() << " subjects and manifest.json to " << a.out
      << '\n';
}

void cmd_synth_modality(const SynthModalityArgs& a, std::ostream& out) {
  const auto ts = synth_modality(parse_modality_kind(a.kind), a.timepoints, a.dims, a.seed);
  save_timeseries(ts, a.out);
  out << "wrote " << a.kind << " sequence (" << ts.length() << "x" << ts.channels() << ") to "
      << a.out << '\n';
}

void cmd_gen_cbt(const GenCbtArgs& a, std::ostream& out) {
  const auto manifest = load_manifest(a.manifest);
  ReservoirConfig cfg = load_reservoir_config(a.config, manifest.atlas_dim);
  if (a.seed) cfg.seed = *a.seed;
  if (a.leak) cfg.leak = *a.leak;
  if (a.spectral_target) cfg.spectral_target = *a.spectral_target;
  cfg.validate();

  std::vector<std::string> ids;
  for (const auto& s : manifest.subjects) {
    if (s.group == a.group) ids.push_back(s.id);
  }
  if (ids.empty()) throw DataError("no subjects in group '" + a.group + "'");
  const Connectome cbt = build_group_cbt(manifest, a.group, cfg, resolve_threads(a.threads));
  save_connectome(cbt, a.out);

  const ReservoirWeights w = init_reservoir(cfg, manifest.atlas_dim);
  const json meta = {{"command", "gen-cbt"},
                     {"group", a.group},
                     {"subjects", ids},
                     {"config", to_json(cfg)},
                     {"achieved_radius", w.achieved_radius},
                     {"cbt", fs::path(a.out).filename().string()}};
  write_json(meta, metadata_path(a.out));
  out << "wrote CBT for group " << a.group << " (" << ids.size() << " subjects) to " << a.out
      << '\n';
}

void cmd_mc(const McArgs& a, std::ostream& out) {
  CognitiveConfig cfg = load_cognitive_config(a.config);
  if (a.seed) cfg.seed = *a.seed;
  if (a.leak) cfg.leak = *a.leak;
  if (a.tau_max) cfg.tau_max = *a.tau_max;
  if (a.update_form) cfg.update_form = parse_update_form(*a.update_form);
  cfg.validate();

  const Connectome cbt = load_connectome(a.cbt);
  const auto modalities = load_modalities(a.modalities);
  const auto reports = mc_suite(cbt, modalities, cfg, resolve_threads(a.threads));
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  write_json({{"command", "mc"}, {"config", to_json(cfg)}, {"reports", arr}}, a.out);
  out << "wrote " << reports.size() << " memory-capacity report(s) to " << a.out << '\n';
}

void cmd_eval(const EvalArgs& a, std::ostream& out) {
  const auto manifest = load_manifest(a.manifest);
  const ReservoirConfig cfg = load_reservoir_config(a.config, manifest.atlas_dim);
  const CognitiveConfig cogcfg = load_cognitive_config(a.cogconfig);
  const auto modalities = load_modalities(a.modalities);

  EvaluationOptions opts;
  opts.folds = a.folds;
  opts.seed = a.seed;
  opts.threads = resolve_threads(a.threads);
  const auto result = run_full_evaluation(manifest, cfg, cogcfg, modalities, opts);

  std::vector<std::string> names;
  for (const auto& [name, _] : modalities) names.push_back(name);
  const json config = {{"reservoir", to_json(cfg)},
                       {"cognitive", to_json(cogcfg)},
                       {"folds", a.folds},
                       {"seed", a.seed},
                       {"modalities", names}};
  fs::create_directories(a.out);
  for (const auto& fold : result.folds) {
    json j = to_json(fold);
    j["config"] = config;
    write_json(j, fs::path(a.out) / ("fold_" + std::to_string(fold.fold_index) + ".json"));
  }
  json summary = result.summary;
  summary["config"] = config;
  write_json(summary, fs::path(a.out) / "summary.json");
  out << "wrote " << result.folds.size() << " fold report(s) and summary.json to " << a.out
      << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reservoir-based connectome templates and cognitive memory capacity", "cogres"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a synthetic two-group BOLD cohort");
  s->add_option("--subjects", synth.subjects, "Number of subjects")->check(CLI::PositiveNumber);
  s->add_option("--rois", synth.rois, "Regions per subject")->check(CLI::Range(2, 1 << 20));
  s->add_option("--timepoints", synth.timepoints, "Timepoints per subject")
      ->check(CLI::Range(10, 1 << 24));
  s->add_option("--groups", synth.groups, "Comma-separated group names");
  s->add_option("--noise", synth.noise, "Per-subject noise sigma")->check(CLI::NonNegativeNumber);
  s->add_option("--seed", synth.seed, "Master seed");
  s->add_option("--out", synth.out, "Output directory")->required();

  SynthModalityArgs sm;
  auto* m = app.add_subcommand("synth-modality", "Generate a synthetic sensory sequence");
  m->add_option("--kind", sm.kind, "visual-like | text-like | audio-like")
      ->required()
      ->check(CLI::IsMember({"visual-like", "text-like", "audio-like"}));
  m->add_option("--timepoints", sm.timepoints)->check(CLI::Range(50, 1 << 24));
  m->add_option("--dims", sm.dims)->check(CLI::PositiveNumber);
  m->add_option("--seed", sm.seed);
  m->add_option("--out", sm.out, "Output CSV")->required();

  GenCbtArgs gen;
  auto* g = app.add_subcommand("gen-cbt", "Build a group connectome template");
  g->add_option("--manifest", gen.manifest)->required();
  g->add_option("--group", gen.group)->required();
  g->add_option("--config", gen.config, "Reservoir config JSON");
  g->add_option("--out", gen.out, "Output CSV")->required();
  g->add_option("--seed", gen.seed);
  g->add_option("--leak", gen.leak)->check(CLI::Range(0.0, 1.0));
  g->add_option("--spectral-target", gen.spectral_target)->check(CLI::PositiveNumber);
  g->add_option("--threads", gen.threads)->check(CLI::PositiveNumber);

  McArgs mc;
  auto* c = app.add_subcommand("mc", "Memory capacity of a template per modality");
  c->add_option("--cbt", mc.cbt)->required();
  c->add_option("--modality", mc.modalities, "name=path, repeatable");
  c->add_option("--config", mc.config, "Cognitive config JSON");
  c->add_option("--out", mc.out, "Output JSON")->required();
  c->add_option("--seed", mc.seed);
  c->add_option("--leak", mc.leak)->check(CLI::Range(0.0, 1.0));
  c->add_option("--tau-max", mc.tau_max)->check(CLI::PositiveNumber);
  c->add_option("--update-form", mc.update_form)
      ->check(CLI::IsMember({"leak_outside", "leak_inside"}));
  c->add_option("--threads", mc.threads)->check(CLI::PositiveNumber);

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Cross-validated evaluation of both group templates");
  e->add_option("--manifest", ev.manifest)->required();
  e->add_option("--folds", ev.folds, "Number of folds (>= 2)")->check(CLI::Range(2, 1 << 20));
  e->add_option("--config", ev.config, "Reservoir config JSON");
  e->add_option("--cogconfig", ev.cogconfig, "Cognitive config JSON");
  e->add_option("--modality", ev.modalities, "name=path, repeatable");
  e->add_option("--out", ev.out, "Output directory")->required();
  e->add_option("--seed", ev.seed, "Fold assignment seed");
  e->add_option("--threads", ev.threads)->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex, out, err);
    return 2;
  }

  try {
    if (*s) cmd_synth(synth, out);
    if (*m) cmd_synth_modality(sm, out);
    if (*g) cmd_gen_cbt(gen, out);
    if (*c) cmd_mc(mc, out);
    if (*e) cmd_eval(ev, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace cogres

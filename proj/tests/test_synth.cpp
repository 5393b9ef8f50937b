#include <doctest.h>

#include "cogres/connectome.hpp"
#include "cogres/io.hpp"
#include "cogres/synth.hpp"
#include "test_util.hpp"

using namespace cogres;

TEST_SUITE("synth") {

TEST_CASE("synthetic BOLD shapes and determinism") {
  GroupProfile p{7, 0.5, 4};
  const auto a = synth_bold(3, 9, 40, p, 1);
  REQUIRE(a.size() == 3);
  for (const auto& ts : a) {
    CHECK(ts.length() == 40);
    CHECK(ts.channels() == 9);
  }
  const auto b = synth_bold(3, 9, 40, p, 1);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a[i].data() == b[i].data());
  CHECK(a[0].data() != a[1].data());
  // Subject i depends only on (seed, i).
  CHECK(synth_bold(5, 9, 40, p, 1)[2].data() == a[2].data());
  CHECK_THROWS_AS(synth_bold(1, 1, 40, p, 1), ConfigError);
}

TEST_CASE("noise-free subjects share their group's correlation structure") {
  GroupProfile pa{1, 0.0, 3};
  GroupProfile pb{2, 0.0, 3};
  const auto a = synth_bold(4, 12, 300, pa, 10);
  const auto b = synth_bold(4, 12, 300, pb, 20);
  auto corr = [](const TimeSeries& t) { return pearson_connectome(t).weights(); };
  double within = 0.0;
  for (std::size_t i = 1; i < 4; ++i) within = std::max(within, (corr(a[0]) - corr(a[i])).norm());
  const double cross = (corr(a[0]) - corr(b[0])).norm();
  CHECK(within < cross);
}

TEST_CASE("modalities are normalized and deterministic") {
  for (auto kind : {ModalityKind::kVisual, ModalityKind::kText, ModalityKind::kAudio}) {
    CAPTURE(to_string(kind));
    const auto ts = synth_modality(kind, 500, 3, 5);
    CHECK(ts.length() == 500);
    CHECK(ts.channels() == 3);
    CHECK(ts.data().maxCoeff() <= 1.0);
    CHECK(ts.data().minCoeff() >= -1.0);
    CHECK(synth_modality(kind, 500, 3, 5).data() == ts.data());
    CHECK(synth_modality(kind, 500, 3, 6).data() != ts.data());
    CHECK(parse_modality_kind(to_string(kind)) == kind);
  }
}

TEST_CASE("visual-like input is piecewise constant") {
  const auto ts = synth_modality(ModalityKind::kVisual, 1000, 2, 3);
  int zero = 0;
  for (Eigen::Index t = 1; t < 1000; ++t) {
    if (ts.data().row(t) == ts.data().row(t - 1)) ++zero;
  }
  CHECK(zero >= static_cast<int>(0.85 * 999));
}

TEST_CASE("modality errors") {
  CHECK_THROWS_AS(parse_modality_kind("smell-like"), ConfigError);
  CHECK_THROWS_AS(synth_modality(ModalityKind::kAudio, 10, 2, 0), ConfigError);
  CHECK_THROWS_AS(synth_modality(ModalityKind::kAudio, 100, 0, 0), ConfigError);
}

TEST_CASE("synthetic dataset on disk") {
  TempDir dir;
  SynthDatasetOptions opts;
  opts.subjects = 5;
  opts.rois = 6;
  opts.timepoints = 30;
  opts.seed = 4;
  const auto written = write_synth_dataset(opts, dir.path());
  const auto loaded = load_manifest(dir / "manifest.json");
  REQUIRE(loaded.subjects.size() == 5);
  CHECK(loaded.atlas_dim == 6);
  CHECK(loaded.subjects[0].id == "sub-0001");
  CHECK(loaded.subjects[0].group == "ASD");
  CHECK(loaded.subjects[1].group == "TD");
  CHECK(loaded.subjects[4].group == "ASD");
  CHECK(load_timeseries(loaded.subjects[3].path).length() == 30);
  CHECK(written.subjects.size() == 5);
}

}  // TEST_SUITE

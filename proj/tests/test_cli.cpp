#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cogres/cli.hpp"
#include "cogres/io.hpp"
#include "test_util.hpp"

using namespace cogres;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string str(const std::filesystem::path& p) { return p.string(); }

void make_cohort(const TempDir& dir, const std::string& sub, const std::string& subjects) {
  const auto r = cli({"synth", "--subjects", subjects, "--rois", "10", "--timepoints", "60",
                      "--seed", "3", "--out", str(dir / sub)});
  REQUIRE(r.code == 0);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("synth writes one CSV per subject plus a manifest") {
  TempDir dir;
  make_cohort(dir, "data", "10");
  int csv = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir / "data")) {
    if (e.path().extension() == ".csv") ++csv;
  }
  CHECK(csv == 10);
  CHECK(load_manifest(dir / "data" / "manifest.json").subjects.size() == 10);

  make_cohort(dir, "again", "10");
  CHECK(read_text(dir / "data" / "sub-0007.csv") == read_text(dir / "again" / "sub-0007.csv"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({"synth", "--subjects", "3"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({"eval", "--manifest", "m.json", "--out", "x", "--folds", "1"}).code == 2);
  CHECK(cli({"synth-modality", "--kind", "smell-like", "--out", "x.csv"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("gen-cbt writes a loadable template and metadata") {
  TempDir dir;
  make_cohort(dir, "data", "6");
  const auto r = cli({"gen-cbt", "--manifest", str(dir / "data" / "manifest.json"), "--group",
                      "ASD", "--leak", "0.5", "--out", str(dir / "cbt.csv")});
  REQUIRE(r.code == 0);
  const auto cbt = load_connectome(dir / "cbt.csv");
  CHECK(cbt.size() == 10);
  const auto meta = read_json(dir / "cbt.json");
  CHECK(meta["config"]["leak"].get<double>() == 0.5);
  CHECK(meta["subjects"].size() == 3);
  CHECK(meta["command"] == "gen-cbt");

  const auto missing = cli({"gen-cbt", "--manifest", str(dir / "data" / "manifest.json"),
                            "--group", "NOPE", "--out", str(dir / "x.csv")});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("NOPE") != std::string::npos);
  CHECK(cli({"gen-cbt", "--manifest", str(dir / "absent.json"), "--group", "ASD", "--out",
             str(dir / "x.csv")})
            .code == 1);
}

TEST_CASE("mc reports per modality") {
  TempDir dir;
  make_cohort(dir, "data", "4");
  REQUIRE(cli({"gen-cbt", "--manifest", str(dir / "data" / "manifest.json"), "--group", "TD",
               "--out", str(dir / "cbt.csv")})
              .code == 0);
  REQUIRE(cli({"synth-modality", "--kind", "audio-like", "--timepoints", "400", "--dims", "2",
               "--out", str(dir / "audio.csv")})
              .code == 0);
  const auto r = cli({"mc", "--cbt", str(dir / "cbt.csv"), "--modality",
                      "audio=" + str(dir / "audio.csv"), "--out", str(dir / "mc.json")});
  REQUIRE(r.code == 0);
  const auto j = read_json(dir / "mc.json");
  CHECK(j["config"]["tau_max"] == 20);
  REQUIRE(j["reports"].size() == 1);
  CHECK(j["reports"][0]["modality"] == "audio");
  CHECK(j["reports"][0]["per_lag_rho2"].size() == 20);
  CHECK(j["reports"][0]["mc"].get<double>() <= 20.0);

  CHECK(cli({"mc", "--cbt", str(dir / "cbt.csv"), "--out", str(dir / "empty.json")}).code == 0);
  CHECK(read_json(dir / "empty.json")["reports"].empty());
  CHECK(cli({"mc", "--cbt", str(dir / "cbt.csv"), "--modality", "audio", "--out",
             str(dir / "bad.json")})
            .code == 1);
}

TEST_CASE("eval summary is the mean of the fold files") {
  TempDir dir;
  make_cohort(dir, "data", "8");
  REQUIRE(cli({"synth-modality", "--kind", "text-like", "--timepoints", "300", "--dims", "2",
               "--out", str(dir / "text.csv")})
              .code == 0);
  write_text(dir / "res.json", R"({"size": 10})");
  write_text(dir / "cog.json", R"({"tau_max": 5, "leak": 0.5})");
  const auto r = cli({"eval", "--manifest", str(dir / "data" / "manifest.json"), "--folds", "2",
                      "--config", str(dir / "res.json"), "--cogconfig", str(dir / "cog.json"),
                      "--modality", "text=" + str(dir / "text.csv"), "--out", str(dir / "ev")});
  REQUIRE(r.code == 0);
  const auto summary = read_json(dir / "ev" / "summary.json");
  double acc = 0.0;
  double mc = 0.0;
  for (int f = 0; f < 2; ++f) {
    const auto fold = read_json(dir / "ev" / ("fold_" + std::to_string(f) + ".json"));
    CHECK(fold["config"]["folds"] == 2);
    acc += fold["classification"]["accuracy"].get<double>();
    mc += fold["memory_capacity"]["ASD"][0]["mc"].get<double>();
  }
  CHECK(std::abs(summary["classification"]["accuracy"].get<double>() - acc / 2) <= 1e-12);
  CHECK(std::abs(summary["memory_capacity"]["ASD"]["text"].get<double>() - mc / 2) <= 1e-12);
}

}  // TEST_SUITE

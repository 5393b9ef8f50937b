#include <doctest.h>

#include <cmath>

#include "cogres/reservoir.hpp"
#include "cogres/rng.hpp"
#include "oracles.hpp"

using namespace cogres;

namespace {

// Random 8x8 matrix; its spectral radius was computed with numpy.linalg.eigvals.
const double kFrozen8x8[8][8] = {
    {0.7492550153724402, -0.2277928656714363, -0.9318893102075418, 0.4681755824493088,
     0.7180510298490688, 0.5399076945395642, 0.33262932705345727, -0.9628871349310959},
    {-0.9953489278151293, 0.9384382841761187, 0.7369878467286028, 0.45179961023548887,
     -0.6885449679300064, -0.5078733139380727, -0.7643457379459375, 0.5606447744205476},
    {0.5262660904302858, -0.6518026829261587, -0.9457830557678466, 0.6364356730591361,
     -0.7286614335589039, -0.8619563067429843, -0.7618660156116379, -0.7142145454073541},
    {-0.18001488569834168, 0.6989623914381784, -0.02615422847325366, 0.6815843079418951,
     -0.5030797783365908, -0.9556483153176789, 0.4131232824074742, -0.8938631307316551},
    {-0.02062767152985212, 0.10150651206202843, 0.22816383326263123, 0.3145018218912299,
     0.20896033123753055, 0.7279259728718583, 0.02085635540738484, 0.5239908634843384},
    {-0.7819482900659209, -0.8801339193864575, 0.8417885035340722, -0.29288920012609343,
     0.2759428080333075, -0.9113699947062812, -0.3315755231388593, 0.4081784085657527},
    {0.48309778256246494, 0.6784658397659034, 0.015153676125056803, 0.5819791358176001,
     -0.06143609860885735, 0.9836012653801767, 0.12282631306089842, 0.7002610852733604},
    {0.08257598825852619, 0.6005891089232314, -0.8802593103378609, 0.11627599624827578,
     -0.5050736466962313, 0.7575249507691604, 0.5410167991465196, 0.47210434838440984}};
constexpr double kFrozen8x8Radius = 1.3721800311664427;

ReservoirWeights two_neuron() {
  ReservoirWeights w;
  w.w_in = Matrix(2, 1);
  w.w_in << 1.0, 0.0;
  w.w_res = Matrix(2, 2);
  w.w_res << 0.0, 0.5, 0.5, 0.0;
  return w;
}

ReservoirConfig small_cfg(std::size_t m, double leak, UpdateForm form = UpdateForm::kLeakOutside) {
  ReservoirConfig c;
  c.size = m;
  c.leak = leak;
  c.update_form = form;
  return c;
}

}  // namespace

TEST_SUITE("reservoir") {

TEST_CASE("spectral radius of a diagonal matrix") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = -2.0;
  CHECK(estimate_spectral_radius(m) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("spectral radius of the zero matrix is 0") {
  CHECK(estimate_spectral_radius(Matrix::Zero(4, 4)) == 0.0);
}

TEST_CASE("spectral radius matches a frozen numpy value") {
  Matrix m(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) m(i, j) = kFrozen8x8[i][j];
  }
  CHECK(std::abs(estimate_spectral_radius(m) - kFrozen8x8Radius) < 1e-8);
  CHECK(std::abs(oracle::dense_spectral_radius(m) - kFrozen8x8Radius) < 1e-12);
}

TEST_CASE("spectral radius matches the dense oracle on random matrices larger than the block") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t n = 17 + 3 * seed;
    const Matrix m = oracle::random_matrix(n, n, seed);
    const double truth = oracle::dense_spectral_radius(m);
    CAPTURE(seed);
    CHECK(std::abs(estimate_spectral_radius(m) - truth) <= 1e-9 * truth);
  }
}

TEST_CASE("spectral radius handles rotations, nilpotent and non-square input") {
  Matrix rot(2, 2);
  rot << 0.0, -1.5, 1.5, 0.0;  // eigenvalues ±1.5i
  CHECK(estimate_spectral_radius(rot) == doctest::Approx(1.5).epsilon(1e-12));

  Matrix shift = Matrix::Zero(20, 20);
  for (int i = 1; i < 20; ++i) shift(i, i - 1) = 1.0;
  CHECK(estimate_spectral_radius(shift) == 0.0);

  CHECK_THROWS_AS(estimate_spectral_radius(Matrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("non-convergence is reported with the last estimate") {
  const Matrix m = oracle::random_matrix(40, 40, 3);
  try {
    estimate_spectral_radius(m, {1e-16, 3});
    FAIL("expected non-convergence");
  } catch (const NumericalError& e) {
    CHECK(e.last_estimate() > 0.0);
  }
}

TEST_CASE("init_reservoir hits the spectral target") {
  ReservoirConfig cfg;  // M = 111, rho = 1.45
  const auto w = init_reservoir(cfg, 111);
  CHECK(w.w_in.rows() == 111);
  CHECK(w.w_in.cols() == 111);
  CHECK(w.achieved_radius >= 1.45 * (1 - 1e-9));
  CHECK(w.achieved_radius <= 1.45 * (1 + 1e-9));
  CHECK(std::abs(estimate_spectral_radius(w.w_res) - 1.45) <= 1.45e-9);
}

TEST_CASE("init_reservoir is deterministic per seed") {
  ReservoirConfig cfg = small_cfg(30, 0.5);
  cfg.seed = 77;
  const auto a = init_reservoir(cfg, 5);
  const auto b = init_reservoir(cfg, 5);
  CHECK(a.w_in == b.w_in);
  CHECK(a.w_res == b.w_res);
  cfg.seed = 78;
  CHECK(init_reservoir(cfg, 5).w_in != a.w_in);
}

TEST_CASE("input scaling multiplies W_in") {
  ReservoirConfig cfg = small_cfg(10, 0.5);
  const auto base = init_reservoir(cfg, 3);
  cfg.input_scaling = 0.25;
  const auto scaled = init_reservoir(cfg, 3);
  CHECK((scaled.w_in - 0.25 * base.w_in).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("seeded uniform generator: support and mean") {
  Rng rng(42);
  const Matrix w_in = uniform_matrix(5, 3, rng);
  const Matrix w_res = uniform_matrix(5, 5, rng);
  CHECK(w_in.cwiseAbs().maxCoeff() <= 1.0);
  CHECK(w_res.cwiseAbs().maxCoeff() <= 1.0);
  Rng big(42);
  const Matrix sample = uniform_matrix(1000, 1000, big);
  CHECK(sample.cwiseAbs().maxCoeff() <= 1.0);
  CHECK(std::abs(sample.mean()) < 0.01);
}

TEST_CASE("zero matrix reservoir cannot be rescaled") {
  Matrix z = Matrix::Zero(3, 3);
  CHECK_THROWS_AS(rescale_to_radius(z, 1.0), DegenerateError);
}

TEST_CASE("zero input from zero state stays at zero") {
  ReservoirConfig cfg = small_cfg(20, 0.3);
  const auto w = init_reservoir(cfg, 4);
  const TimeSeries zeros(Matrix::Zero(30, 4));
  for (auto form : {UpdateForm::kLeakOutside, UpdateForm::kLeakInside}) {
    for (auto act : {Activation::kTanh, Activation::kLinear}) {
      cfg.update_form = form;
      cfg.activation = act;
      CHECK(run_reservoir(w, zeros, cfg).states.cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("leak 1 without recurrence is a pointwise tanh") {
  ReservoirConfig cfg = small_cfg(6, 1.0);
  auto w = init_reservoir(cfg, 3);
  w.w_res.setZero();
  const TimeSeries x(oracle::random_matrix(12, 3, 8));
  const auto s = run_reservoir(w, x, cfg);
  for (Eigen::Index t = 0; t < 12; ++t) {
    const Vector expected = (w.w_in * x.data().row(t).transpose()).array().tanh();
    CHECK(s.states.row(t) == expected.transpose());
  }
}

TEST_CASE("two-neuron, two-step recurrence matches the hand computation") {
  const auto w = two_neuron();
  Matrix in(2, 1);
  in << 1.0, -1.0;
  const auto s = run_reservoir(w, TimeSeries(in), small_cfg(2, 0.5));
  // h(1) = 0.5 tanh(W_in x(1)) = (0.5 tanh 1, 0)
  const double h1a = 0.5 * std::tanh(1.0);
  const double h1b = 0.0;
  // h(2) = 0.5 h(1) + 0.5 tanh(W_in x(2) + W_res h(1)) with W_res h(1) = (0.5 h1b, 0.5 h1a)
  const double h2a = 0.5 * h1a + 0.5 * std::tanh(-1.0 + 0.5 * h1b);
  const double h2b = 0.5 * h1b + 0.5 * std::tanh(0.0 + 0.5 * h1a);
  CHECK(std::abs(s.states(0, 0) - h1a) <= 1e-15);
  CHECK(std::abs(s.states(0, 1) - h1b) <= 1e-15);
  CHECK(std::abs(s.states(1, 0) - h2a) <= 1e-15);
  CHECK(std::abs(s.states(1, 1) - h2b) <= 1e-15);
}

TEST_CASE("leak_inside follows its own recurrence") {
  const auto w = two_neuron();
  Matrix in(2, 1);
  in << 1.0, -1.0;
  const auto s = run_reservoir(w, TimeSeries(in), small_cfg(2, 0.25, UpdateForm::kLeakInside));
  // h(t) = tanh(0.25 W_in x(t) + 0.75 W_res h(t-1))
  const double h1a = std::tanh(0.25);
  const double h1b = 0.0;
  const double h2a = std::tanh(-0.25 + 0.75 * 0.5 * h1b);
  const double h2b = std::tanh(0.75 * 0.5 * h1a);
  CHECK(std::abs(s.states(0, 0) - h1a) <= 1e-15);
  CHECK(std::abs(s.states(0, 1) - h1b) <= 1e-15);
  CHECK(std::abs(s.states(1, 0) - h2a) <= 1e-15);
  CHECK(std::abs(s.states(1, 1) - h2b) <= 1e-15);
}

TEST_CASE("leak 0 limits of both forms") {
  ReservoirConfig cfg = small_cfg(8, 0.0);
  const auto w = init_reservoir(cfg, 2);
  const TimeSeries x(oracle::random_matrix(15, 2, 4));
  const Vector h0 = oracle::random_matrix(8, 1, 5, -0.9, 0.9).col(0);

  const auto outside = run_reservoir(w, x, cfg, h0);
  for (Eigen::Index t = 0; t < 15; ++t) CHECK(outside.states.row(t) == h0.transpose());

  cfg.update_form = UpdateForm::kLeakInside;
  const auto inside = run_reservoir(w, x, cfg, h0);
  Vector h = h0;
  for (Eigen::Index t = 0; t < 15; ++t) {
    h = (w.w_res * h).array().tanh();
    CHECK((inside.states.row(t) - h.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("tanh states stay strictly inside (-1, 1)") {
  ReservoirConfig cfg = small_cfg(40, 0.7);
  for (auto form : {UpdateForm::kLeakOutside, UpdateForm::kLeakInside}) {
    cfg.update_form = form;
    const auto w = init_reservoir(cfg, 3);
    const TimeSeries x(oracle::random_matrix(200, 3, 10, -3, 3));
    const auto s = run_reservoir(w, x, cfg);
    CHECK(s.states.cwiseAbs().maxCoeff() < 1.0);
  }
}

TEST_CASE("run_reservoir validates shapes") {
  ReservoirConfig cfg = small_cfg(4, 0.5);
  const auto w = init_reservoir(cfg, 2);
  CHECK_THROWS_AS(run_reservoir(w, TimeSeries(Matrix::Zero(3, 3)), cfg), DimensionError);
  CHECK_THROWS_AS(run_reservoir(w, TimeSeries(Matrix::Zero(3, 2)), cfg, Vector::Zero(3)),
                  DimensionError);
}

TEST_CASE("linear reservoir beyond unit radius diverges with a timestep") {
  ReservoirConfig cfg = small_cfg(10, 1.0);
  cfg.spectral_target = 5.0;
  cfg.activation = Activation::kLinear;
  const auto w = init_reservoir(cfg, 1);
  const TimeSeries x(Matrix::Ones(400, 1));
  try {
    run_reservoir(w, x, cfg);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.timestep() > 1);
    CHECK(e.timestep() <= 400);
  }
}

TEST_CASE("echo-state diagnostic") {
  SUBCASE("contracting tanh reservoir") {
    ReservoirConfig cfg = small_cfg(50, 1.0);
    cfg.spectral_target = 0.9;
    const auto w = init_reservoir(cfg, 2);
    const auto r = check_echo_state(w, cfg, 500, 1e-6, 1);
    CHECK(r.contracting);
    CHECK(r.final_gap < 1e-6);
  }
  SUBCASE("no recurrence forgets in one step") {
    ReservoirConfig cfg = small_cfg(10, 1.0);
    auto w = init_reservoir(cfg, 2);
    w.w_res.setZero();
    const auto r = check_echo_state(w, cfg, 10, 1e-12, 2);
    CHECK(r.contracting);
    CHECK(r.final_gap == 0.0);
  }
  SUBCASE("linear reservoir at 1.45 does not contract") {
    ReservoirConfig cfg = small_cfg(50, 1.0);
    cfg.spectral_target = 1.45;
    cfg.activation = Activation::kLinear;
    const auto w = init_reservoir(cfg, 2);
    CHECK_FALSE(check_echo_state(w, cfg, 500, 1e-6, 3).contracting);
  }
  SUBCASE("probe length precondition") {
    ReservoirConfig cfg = small_cfg(5, 1.0);
    const auto w = init_reservoir(cfg, 1);
    CHECK_THROWS_AS(check_echo_state(w, cfg, 9, 1e-6, 0), ConfigError);
  }
}

TEST_CASE("config validation") {
  ReservoirConfig cfg;
  cfg.leak = -0.1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.spectral_target = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.size = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

}  // TEST_SUITE

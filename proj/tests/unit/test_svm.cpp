#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "politeness/corpus.hpp"
#include "politeness/error.hpp"
#include "politeness/svm.hpp"
#include "support/synthetic.hpp"

using namespace polite;
using namespace polite::testsupport;

namespace {

FeatureVector dense2(double a, double b) {
  FeatureVector v;
  v.dimension = 2;
  if (a != 0.0) v.entries.emplace_back(0, a);
  if (b != 0.0) v.entries.emplace_back(1, b);
  return v;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

// Hand-worked update trace, chosen so every intermediate quantity is a
// dyadic rational and therefore exact in binary floating point.
//
//   lambda = 0.25, all weights start at zero.
//   step 1: x=(0.5,-1) y=+1. decision 0 < 1, eta = 1/(0.25*1) = 4.
//           First-step decay annihilates the (zero) weights; then
//           w = 4*(0.5,-1) = (2,-4), b = 4.
//   step 2: x=(-0.25,0.5) y=-1. decision -0.5-2+4 = 1.5, y*dec = -1.5 < 1.
//           eta = 2, decay 1-1/2 = 0.5: w=(1,-2) then += 2*(-1)*x = (0.5,-1)
//           giving w = (1.5,-3); b = 4-2 = 2.
//   step 3: x=(1,1) y=+1. decision 1.5-3+2 = 0.5 < 1. eta = 4/3,
//           decay 2/3: w = (1,-2) + (4/3)*(1,1) = (7/3,-2/3); b = 10/3.
TEST_CASE("sgd step matches the hand-worked trace") {
  BinarySgd sgd(2, 0.25);
  CHECK(sgd.steps() == 0);
  CHECK(sgd.decision(dense2(1.0, 1.0)) == 0.0);

  sgd.step(dense2(0.5, -1.0), +1);
  {
    const std::vector<double> w = sgd.weights();
    CHECK(w[0] == 2.0);  // exact
    CHECK(w[1] == -4.0);
    CHECK(sgd.bias() == 4.0);
    CHECK(sgd.steps() == 1);
  }

  sgd.step(dense2(-0.25, 0.5), -1);
  {
    const std::vector<double> w = sgd.weights();
    CHECK(w[0] == 1.5);  // exact: dyadic arithmetic throughout
    CHECK(w[1] == -3.0);
    CHECK(sgd.bias() == 2.0);
  }

  sgd.step(dense2(1.0, 1.0), +1);
  {
    const std::vector<double> w = sgd.weights();
    CHECK(w[0] == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    CHECK(sgd.bias() == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
    CHECK(sgd.steps() == 3);
  }
}

TEST_CASE("a non-violating step only decays the weights") {
  BinarySgd sgd(2, 0.25);
  sgd.step(dense2(0.5, -1.0), +1);  // w=(2,-4), b=4
  // Same point again: decision = 1+4+4 = 9, margin satisfied.
  sgd.step(dense2(0.5, -1.0), +1);
  const std::vector<double> w = sgd.weights();
  CHECK(w[0] == 1.0);  // (1 - 1/2) * 2
  CHECK(w[1] == -2.0);
  CHECK(sgd.bias() == 4.0);  // bias neither decayed nor updated
}

TEST_CASE("sgd rejects invalid arguments") {
  CHECK_THROWS_AS(BinarySgd(2, 0.0), UsageError);
  CHECK_THROWS_AS(BinarySgd(2, -1.0), UsageError);
  BinarySgd sgd(2, 0.5);
  CHECK_THROWS_AS(sgd.step(dense2(1.0, 0.0), 0), UsageError);
  FeatureVector wrong;
  wrong.dimension = 3;
  wrong.entries.emplace_back(2, 1.0);
  CHECK_THROWS_AS(sgd.step(wrong, 1), DataError);
}

TEST_CASE("objective of the zero classifier is the mean hinge at margin 0") {
  BinarySgd sgd(2, 0.25);
  std::vector<std::pair<FeatureVector, int>> data;
  data.emplace_back(dense2(3.0, 1.0), +1);
  data.emplace_back(dense2(-2.0, 0.5), -1);
  // w=0, b=0: hinge is 1 for every point, no regularization term.
  CHECK(sgd.objective(data) == 1.0);

  // After updates the objective stays finite and includes ||w||^2.
  sgd.step(data[0].first, data[0].second);
  CHECK(sgd.objective(data) >= 0.0);
}

TEST_CASE("training separates a small two-class problem") {
  std::vector<std::pair<FeatureVector, PolitenessLabel>> data;
  data.emplace_back(dense2(1.0, 0.2), PolitenessLabel::Neutral);
  data.emplace_back(dense2(0.8, 0.0), PolitenessLabel::Neutral);
  data.emplace_back(dense2(-1.0, 0.1), PolitenessLabel::Polite);
  data.emplace_back(dense2(-0.7, -0.2), PolitenessLabel::Polite);

  TrainConfig config;
  config.lambda = 0.01;
  const SvmModel model = train(data, config);
  CHECK(model.dimension == 2);
  for (const auto& [x, y] : data) {
    CHECK(predict(model, x).label == y);
  }
}

TEST_CASE("training is a pure function of data and config") {
  const QuadrantData problem = make_quadrant_data(30, 10, 7);
  TrainConfig config;
  config.lambda = 0.01;
  config.epochs = 10;

  const SvmModel a = train(problem.train, config);
  const SvmModel b = train(problem.train, config);
  for (size_t c = 0; c < kNumLabels; ++c) {
    CHECK(a.weights[c] == b.weights[c]);  // bitwise
    CHECK(a.biases[c] == b.biases[c]);
  }

  // A different seed gives a different sample order, hence different
  // intermediate iterates.
  TrainConfig other = config;
  other.seed = config.seed + 1;
  const SvmModel c = train(problem.train, other);
  bool any_difference = false;
  for (size_t k = 0; k < kNumLabels; ++k) {
    if (a.weights[k] != c.weights[k] || a.biases[k] != c.biases[k])
      any_difference = true;
  }
  CHECK(any_difference);
}

TEST_CASE("quadrant data reaches perfect test accuracy within 20 epochs") {
  const QuadrantData problem = make_quadrant_data(50, 25, 123, 0.5);
  REQUIRE(problem.train.size() == 200);
  REQUIRE(problem.test.size() == 100);

  TrainConfig config;
  config.lambda = 0.05;
  config.epochs = 20;
  const SvmModel model = train(problem.train, config);

  size_t correct = 0;
  for (const auto& [x, y] : problem.test)
    if (predict(model, x).label == y) ++correct;
  CHECK(correct == problem.test.size());
}

TEST_CASE("the training log tracks the per-class objective per epoch") {
  const QuadrantData problem = make_quadrant_data(30, 10, 99);
  TrainConfig config;
  config.lambda = 0.01;
  config.epochs = 12;

  TrainLog log;
  (void)train(problem.train, config, "", &log);
  for (size_t c = 0; c < kNumLabels; ++c) {
    REQUIRE(log[c].size() == config.epochs);
    for (double v : log[c]) CHECK(std::isfinite(v));
    // The optimizer makes real progress from the zero classifier.
    CHECK(log[c].back() < log[c].front());
  }
}

TEST_CASE("train validates its inputs") {
  std::vector<std::pair<FeatureVector, PolitenessLabel>> data;
  TrainConfig config;
  CHECK_THROWS_AS(train(data, config), DataError);  // empty

  data.emplace_back(dense2(1.0, 0.0), PolitenessLabel::Neutral);
  data.emplace_back(dense2(0.5, 0.0), PolitenessLabel::Neutral);
  CHECK_THROWS_AS(train(data, config), DataError);  // single label

  data.emplace_back(dense2(-1.0, 0.0), PolitenessLabel::Polite);
  TrainConfig bad = config;
  bad.lambda = 0.0;
  CHECK_THROWS_AS(train(data, bad), UsageError);
  bad = config;
  bad.epochs = 0;
  CHECK_THROWS_AS(train(data, bad), UsageError);

  FeatureVector wrong;
  wrong.dimension = 5;
  data.emplace_back(wrong, PolitenessLabel::Impolite);
  CHECK_THROWS_AS(train(data, config), DataError);  // mixed dimensions
}

TEST_CASE("predict scores each class and breaks ties in canonical order") {
  SvmModel model;
  model.dimension = 2;
  for (size_t c = 0; c < kNumLabels; ++c) model.weights[c] = {0.0, 0.0};

  // All scores zero: first label in canonical order wins.
  Prediction p = predict(model, dense2(1.0, 1.0));
  CHECK(p.label == PolitenessLabel::Neutral);
  for (double s : p.scores) CHECK(s == 0.0);

  // Give the third class the only informative weight vector.
  model.weights[static_cast<size_t>(PolitenessLabel::Polite)] = {1.0, 0.0};
  p = predict(model, dense2(1.0, 0.0));
  CHECK(p.label == PolitenessLabel::Polite);
  CHECK(p.scores[static_cast<size_t>(PolitenessLabel::Polite)] == 1.0);

  // A bias alone can win the argmax.
  model.biases[static_cast<size_t>(PolitenessLabel::Impolite)] = 5.0;
  p = predict(model, dense2(0.0, 0.0));
  CHECK(p.label == PolitenessLabel::Impolite);
}

TEST_CASE("model files round-trip with identical scores") {
  const QuadrantData problem = make_quadrant_data(30, 10, 11);
  TrainConfig config;
  config.lambda = 0.01;
  config.epochs = 8;
  const SvmModel model = train(problem.train, config, "00ff00ff00ff00ff");

  const auto path = temp_file("polsvm_roundtrip.model");
  save_model(model, path);
  const SvmModel loaded = load_model(path);

  CHECK(loaded.dimension == model.dimension);
  CHECK(loaded.vocab_fingerprint == model.vocab_fingerprint);
  CHECK(loaded.config.lambda == model.config.lambda);
  CHECK(loaded.config.epochs == model.config.epochs);
  CHECK(loaded.config.seed == model.config.seed);
  CHECK(loaded.config.shuffle_each_epoch == model.config.shuffle_each_epoch);
  for (size_t c = 0; c < kNumLabels; ++c) {
    CHECK(loaded.weights[c] == model.weights[c]);  // bitwise
    CHECK(loaded.biases[c] == model.biases[c]);
  }

  // Identical decision values on random inputs, compared exactly.
  std::mt19937_64 rng(2026);
  for (int i = 0; i < 100; ++i) {
    FeatureVector x;
    x.dimension = model.dimension;
    for (uint32_t d = 0; d < model.dimension; ++d) {
      if (rng() % 2 == 0)
        x.entries.emplace_back(d, uniform01(rng) * 4.0 - 2.0);
    }
    const Prediction a = predict(model, x);
    const Prediction b = predict(loaded, x);
    CHECK(a.label == b.label);
    CHECK(a.scores == b.scores);
  }
  std::filesystem::remove(path);
}

TEST_CASE("damaged model files are rejected") {
  const auto path = temp_file("polsvm_damaged.model");

  {
    std::ofstream out(path, std::ios::binary);
    out << "polsvm v999\ndimension 2\n";
  }
  CHECK_THROWS_AS(load_model(path), DataError);

  // A valid model truncated mid-file fails the checksum.
  const QuadrantData problem = make_quadrant_data(10, 5, 3);
  TrainConfig config;
  config.lambda = 0.01;
  config.epochs = 2;
  save_model(train(problem.train, config), path);
  std::string content;
  {
    std::ifstream in(path, std::ios::binary);
    content.assign(std::istreambuf_iterator<char>(in), {});
  }
  {
    std::ofstream out(path, std::ios::binary);
    out << content.substr(0, content.size() / 2);
  }
  CHECK_THROWS_AS(load_model(path), DataError);

  // A single flipped digit fails the checksum too.
  std::string tampered = content;
  const size_t pos = tampered.find("bias ");
  REQUIRE(pos != std::string::npos);
  tampered[pos + 5] = (tampered[pos + 5] == '1') ? '2' : '1';
  {
    std::ofstream out(path, std::ios::binary);
    out << tampered;
  }
  CHECK_THROWS_AS(load_model(path), DataError);
  std::filesystem::remove(path);
}

TEST_CASE("models refuse vocabularies they were not trained against") {
  Vocabulary vocab;
  vocab.dimension = 2;
  vocab.fingerprint = "aaaaaaaaaaaaaaaa";

  SvmModel model;
  model.dimension = 2;
  model.vocab_fingerprint = "aaaaaaaaaaaaaaaa";
  CHECK_NOTHROW(check_compatible(model, vocab));

  SvmModel wrong_dim = model;
  wrong_dim.dimension = 3;
  CHECK_THROWS_AS(check_compatible(wrong_dim, vocab), DataError);

  SvmModel wrong_fp = model;
  wrong_fp.vocab_fingerprint = "bbbbbbbbbbbbbbbb";
  CHECK_THROWS_AS(check_compatible(wrong_fp, vocab), DataError);

  // An empty fingerprint marks a model of unknown origin; accepted.
  SvmModel no_fp = model;
  no_fp.vocab_fingerprint.clear();
  CHECK_NOTHROW(check_compatible(no_fp, vocab));
}

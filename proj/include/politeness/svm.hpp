#ifndef POLITENESS_SVM_HPP_
#define POLITENESS_SVM_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "politeness/corpus.hpp"
#include "politeness/features.hpp"

namespace polite {

struct TrainConfig {
  double lambda = 1e-4;  // L2 regularization strength
  uint32_t epochs = 20;
  uint64_t seed = kDefaultSeed;
  bool shuffle_each_epoch = true;

  void validate() const;
};

// One binary hinge-loss classifier trained by deterministic stochastic
// subgradient descent on the primal objective
//     lambda/2 ||w||^2 + mean_i max(0, 1 - y_i (w.x_i + b)).
// Per step t (t counts steps across epochs, starting at 1):
//     eta_t   = 1 / (lambda * t)
//     violate = y (w.x + b) < 1        (margin checked before decay)
//     w      <- (1 - 1/t) w            (1 - 1/t == 1 - eta_t*lambda)
//     if violate:  w <- w + eta_t y x ;  b <- b + eta_t y
// The bias is not regularized and not decayed. Weights are kept as
// scale * direction for sparse efficiency; results are deterministic.
class BinarySgd {
 public:
  BinarySgd(uint32_t dimension, double lambda);

  void step(const FeatureVector& x, int y);  // y in {+1, -1}

  double objective(
      const std::vector<std::pair<FeatureVector, int>>& data) const;

  double decision(const FeatureVector& x) const;  // w.x + b
  std::vector<double> weights() const;            // materialized s*v
  double bias() const { return bias_; }
  uint64_t steps() const { return t_; }

 private:
  void fold_scale();

  std::vector<double> direction_;
  double scale_ = 1.0;
  double bias_ = 0.0;
  double lambda_;
  uint64_t t_ = 0;
};

// Four one-vs-rest linear classifiers in canonical label order.
struct SvmModel {
  uint32_t dimension = 0;
  std::array<std::vector<double>, kNumLabels> weights;
  std::array<double, kNumLabels> biases{};
  std::string vocab_fingerprint;
  TrainConfig config;  // echo of the training configuration
};

struct Prediction {
  PolitenessLabel label;  // argmax of scores, canonical-order tie-break
  std::array<double, kNumLabels> scores;
};

// Per-class per-epoch primal objective values, for logging.
using TrainLog = std::array<std::vector<double>, kNumLabels>;

// Trains the four one-vs-rest problems. Each class uses an independent
// sample order derived from (config.seed, class index), so the model is
// a pure function of (data, config). Requires at least two distinct
// labels, a consistent dimension, and finite feature values.
SvmModel train(const std::vector<std::pair<FeatureVector, PolitenessLabel>>& data,
               const TrainConfig& config, std::string vocab_fingerprint = "",
               TrainLog* log = nullptr);

Prediction predict(const SvmModel& model, const FeatureVector& x);

// Fails unless the model was trained against this vocabulary.
void check_compatible(const SvmModel& model, const Vocabulary& vocab);

// Text model format v1: header (magic, version, dimension, label order,
// vocabulary fingerprint, config) then per-label bias + weights, then a
// trailing whole-file checksum line. Doubles are written in shortest
// round-trip decimal form, so load(save(m)) reproduces scores exactly.
void save_model(const SvmModel& model, const std::filesystem::path& path);
SvmModel load_model(const std::filesystem::path& path);

}  // namespace polite

#endif  // POLITENESS_SVM_HPP_

#include "politeness/svm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string_view>

#include "politeness/error.hpp"
#include "fnv64.hpp"
#include "numio.hpp"

namespace polite {

namespace {

// Deterministic in-place shuffle; uses modulo draws so the result is a
// pure function of the engine's standardized output stream.
void fisher_yates(std::vector<uint32_t>& order, std::mt19937_64& rng) {
  for (size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng() % i]);
}

double dot(const std::vector<double>& w, const FeatureVector& x) {
  double s = 0.0;
  for (const auto& [idx, v] : x.entries) s += w[idx] * v;
  return s;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw UsageError("lambda must be a positive finite number");
  if (epochs == 0) throw UsageError("epochs must be at least 1");
}

BinarySgd::BinarySgd(uint32_t dimension, double lambda)
    : direction_(dimension, 0.0), lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw UsageError("lambda must be a positive finite number");
}

void BinarySgd::step(const FeatureVector& x, int y) {
  if (y != 1 && y != -1) throw UsageError("binary target must be +1 or -1");
  if (x.dimension != direction_.size())
    throw DataError("feature vector dimension does not match classifier");
  ++t_;
  const double td = static_cast<double>(t_);
  const bool violate = y * decision(x) < 1.0;  // margin before decay
  const double eta = 1.0 / (lambda_ * td);
  if (t_ == 1) {
    // Decay factor 1 - 1/t is exactly zero: the initial weights vanish.
    std::fill(direction_.begin(), direction_.end(), 0.0);
    scale_ = 1.0;
  } else {
    scale_ *= 1.0 - 1.0 / td;
  }
  if (violate) {
    const double g = eta * static_cast<double>(y) / scale_;
    for (const auto& [idx, v] : x.entries) direction_[idx] += g * v;
    bias_ += eta * static_cast<double>(y);
  }
  if (scale_ < 1e-9) fold_scale();
}

double BinarySgd::objective(
    const std::vector<std::pair<FeatureVector, int>>& data) const {
  double norm2 = 0.0;
  for (double d : direction_) norm2 += d * d;
  norm2 *= scale_ * scale_;
  double hinge = 0.0;
  for (const auto& [x, y] : data)
    hinge += std::max(0.0, 1.0 - static_cast<double>(y) * decision(x));
  if (!data.empty()) hinge /= static_cast<double>(data.size());
  return 0.5 * lambda_ * norm2 + hinge;
}

double BinarySgd::decision(const FeatureVector& x) const {
  double s = 0.0;
  for (const auto& [idx, v] : x.entries) s += direction_[idx] * v;
  return scale_ * s + bias_;
}

std::vector<double> BinarySgd::weights() const {
  std::vector<double> w = direction_;
  for (double& v : w) v *= scale_;
  return w;
}

void BinarySgd::fold_scale() {
  for (double& d : direction_) d *= scale_;
  scale_ = 1.0;
}

SvmModel train(const std::vector<std::pair<FeatureVector, PolitenessLabel>>& data,
               const TrainConfig& config, std::string vocab_fingerprint,
               TrainLog* log) {
  config.validate();
  if (data.empty()) throw DataError("training set is empty");
  const uint32_t dim = data.front().first.dimension;
  if (dim == 0) throw DataError("training vectors have dimension 0");
  bool seen[kNumLabels] = {};
  for (const auto& [x, label] : data) {
    if (x.dimension != dim)
      throw DataError("training vectors have inconsistent dimensions");
    for (const auto& [idx, v] : x.entries) {
      if (idx >= dim) throw DataError("feature index out of range");
      if (!std::isfinite(v)) throw DataError("non-finite feature value");
    }
    seen[static_cast<size_t>(label)] = true;
  }
  if (seen[0] + seen[1] + seen[2] + seen[3] < 2)
    throw DataError("training set must contain at least two distinct labels");

  SvmModel model;
  model.dimension = dim;
  model.vocab_fingerprint = std::move(vocab_fingerprint);
  model.config = config;

  const size_t n = data.size();
  for (size_t c = 0; c < kNumLabels; ++c) {
    const PolitenessLabel positive = kAllLabels[c];
    std::vector<int> y(n);
    for (size_t i = 0; i < n; ++i)
      y[i] = data[i].second == positive ? 1 : -1;

    BinarySgd sgd(dim, config.lambda);
    std::mt19937_64 rng(stable_hash64(
        config.seed, "ovr-" + std::string(to_string(positive))));
    std::vector<uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    for (uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
      if (config.shuffle_each_epoch) fisher_yates(order, rng);
      for (uint32_t i : order) sgd.step(data[i].first, y[i]);
      if (log != nullptr) {
        const std::vector<double> w = sgd.weights();
        double norm2 = 0.0;
        for (double v : w) norm2 += v * v;
        double hinge = 0.0;
        for (size_t i = 0; i < n; ++i)
          hinge += std::max(
              0.0, 1.0 - static_cast<double>(y[i]) * sgd.decision(data[i].first));
        (*log)[c].push_back(0.5 * config.lambda * norm2 +
                            hinge / static_cast<double>(n));
      }
    }
    model.weights[c] = sgd.weights();
    model.biases[c] = sgd.bias();
  }
  return model;
}

Prediction predict(const SvmModel& model, const FeatureVector& x) {
  if (x.dimension != model.dimension)
    throw DataError("feature vector dimension does not match model");
  Prediction p{};
  for (size_t c = 0; c < kNumLabels; ++c)
    p.scores[c] = dot(model.weights[c], x) + model.biases[c];
  size_t best = 0;
  for (size_t c = 1; c < kNumLabels; ++c)
    if (p.scores[c] > p.scores[best]) best = c;  // ties keep the earlier label
  p.label = kAllLabels[best];
  return p;
}

void check_compatible(const SvmModel& model, const Vocabulary& vocab) {
  if (model.dimension != vocab.dimension)
    throw DataError("model dimension " + std::to_string(model.dimension) +
                    " does not match vocabulary dimension " +
                    std::to_string(vocab.dimension));
  if (!model.vocab_fingerprint.empty() &&
      model.vocab_fingerprint != vocab.fingerprint)
    throw DataError("model was trained against a different vocabulary "
                    "(fingerprint mismatch)");
}

namespace {

constexpr std::string_view kModelMagic = "polsvm v1";

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::string_view expect_field(std::string_view line, std::string_view key) {
  if (line.size() <= key.size() || line.substr(0, key.size()) != key ||
      line[key.size()] != ' ')
    throw DataError("model file is corrupted: expected '" + std::string(key) +
                    "' line, got '" + std::string(line) + "'");
  return line.substr(key.size() + 1);
}

double parse_double_or_throw(std::string_view s, const char* what) {
  const auto v = parse_double(s);
  if (!v) throw DataError(std::string("model file has an unreadable ") + what +
                          ": '" + std::string(s) + "'");
  return *v;
}

uint64_t parse_u64_or_throw(std::string_view s, const char* what) {
  const auto v = parse_u64(s);
  if (!v) throw DataError(std::string("model file has an unreadable ") + what +
                          ": '" + std::string(s) + "'");
  return *v;
}

}  // namespace

void save_model(const SvmModel& model, const std::filesystem::path& path) {
  std::string body;
  body.reserve(1 << 16);
  body += kModelMagic;
  body += "\ndimension " + std::to_string(model.dimension);
  body += "\nlabels";
  for (PolitenessLabel label : kAllLabels) {
    body += ' ';
    body += to_string(label);
  }
  body += "\nfingerprint ";
  body += model.vocab_fingerprint.empty() ? "-" : model.vocab_fingerprint;
  body += "\nlambda " + format_double(model.config.lambda);
  body += "\nepochs " + std::to_string(model.config.epochs);
  body += "\nseed " + std::to_string(model.config.seed);
  body += "\nshuffle ";
  body += model.config.shuffle_each_epoch ? "1" : "0";
  body += "\n";
  for (size_t c = 0; c < kNumLabels; ++c) {
    body += "label ";
    body += to_string(kAllLabels[c]);
    body += "\nbias " + format_double(model.biases[c]) + "\n";
    const std::vector<double>& w = model.weights[c];
    uint32_t nnz = 0;
    for (double v : w) nnz += v != 0.0;
    body += "nnz " + std::to_string(nnz) + "\n";
    for (uint32_t i = 0; i < w.size(); ++i)
      if (w[i] != 0.0)
        body += std::to_string(i) + " " + format_double(w[i]) + "\n";
  }
  Fnv64 sum;
  sum.update(body);
  body += "checksum " + sum.hex() + "\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << body;
  if (!out) throw DataError("failed writing model to '" + path.string() + "'");
}

SvmModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();

  // The checksum line covers every byte before it, trailing newline included.
  const size_t last_nl = content.rfind('\n');
  if (last_nl == std::string::npos || last_nl + 1 != content.size())
    throw DataError("model file '" + path.string() +
                    "' is truncated (missing final newline)");
  const size_t prev_nl = content.rfind('\n', last_nl - 1);
  if (prev_nl == std::string::npos)
    throw DataError("model file '" + path.string() + "' is truncated");
  const std::string_view check_line =
      std::string_view(content).substr(prev_nl + 1, last_nl - prev_nl - 1);
  const std::string_view covered = std::string_view(content).substr(0, prev_nl + 1);
  const std::string_view stated = expect_field(check_line, "checksum");
  Fnv64 sum;
  sum.update(covered);
  if (stated != sum.hex())
    throw DataError("model file '" + path.string() +
                    "' failed its checksum (corrupted or truncated)");

  const std::vector<std::string_view> lines = split_lines(covered);
  size_t at = 0;
  auto next = [&]() -> std::string_view {
    if (at >= lines.size())
      throw DataError("model file '" + path.string() + "' is truncated");
    return lines[at++];
  };

  if (next() != kModelMagic)
    throw DataError("'" + path.string() + "' is not a polsvm v1 model file");
  SvmModel model;
  model.dimension = static_cast<uint32_t>(
      parse_u64_or_throw(expect_field(next(), "dimension"), "dimension"));
  std::string expected_labels;
  for (PolitenessLabel label : kAllLabels) {
    if (!expected_labels.empty()) expected_labels += ' ';
    expected_labels += to_string(label);
  }
  if (expect_field(next(), "labels") != expected_labels)
    throw DataError("model file '" + path.string() +
                    "' lists an unsupported label set");
  const std::string_view fp = expect_field(next(), "fingerprint");
  model.vocab_fingerprint = fp == "-" ? "" : std::string(fp);
  model.config.lambda =
      parse_double_or_throw(expect_field(next(), "lambda"), "lambda");
  model.config.epochs = static_cast<uint32_t>(
      parse_u64_or_throw(expect_field(next(), "epochs"), "epoch count"));
  model.config.seed = parse_u64_or_throw(expect_field(next(), "seed"), "seed");
  const std::string_view shuffle = expect_field(next(), "shuffle");
  if (shuffle != "0" && shuffle != "1")
    throw DataError("model file has an unreadable shuffle flag");
  model.config.shuffle_each_epoch = shuffle == "1";

  for (size_t c = 0; c < kNumLabels; ++c) {
    if (expect_field(next(), "label") != to_string(kAllLabels[c]))
      throw DataError("model file '" + path.string() +
                      "' has label blocks out of order");
    model.biases[c] =
        parse_double_or_throw(expect_field(next(), "bias"), "bias");
    const uint64_t nnz =
        parse_u64_or_throw(expect_field(next(), "nnz"), "weight count");
    model.weights[c].assign(model.dimension, 0.0);
    for (uint64_t k = 0; k < nnz; ++k) {
      const std::string_view line = next();
      const size_t sp = line.find(' ');
      if (sp == std::string_view::npos)
        throw DataError("model file has an unreadable weight line: '" +
                        std::string(line) + "'");
      const uint64_t idx = parse_u64_or_throw(line.substr(0, sp), "weight index");
      if (idx >= model.dimension)
        throw DataError("model file has a weight index out of range");
      model.weights[c][idx] =
          parse_double_or_throw(line.substr(sp + 1), "weight value");
    }
  }
  if (at != lines.size())
    throw DataError("model file '" + path.string() +
                    "' has trailing content after the label blocks");
  model.config.validate();
  return model;
}

}  // namespace polite

#include "support/synthetic.hpp"

#include <array>
#include <string>

namespace polite::testsupport {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

QuadrantData make_quadrant_data(size_t train_per_class, size_t test_per_class,
                                uint64_t seed, double margin) {
  std::mt19937_64 rng(seed);
  auto make_point = [&](size_t cls) {
    double x = margin + (2.0 - margin) * uniform01(rng);
    double y = margin + (2.0 - margin) * uniform01(rng);
    if (cls == 1 || cls == 2) x = -x;
    if (cls == 2 || cls == 3) y = -y;
    FeatureVector v;
    v.dimension = 2;
    v.entries = {{0, x}, {1, y}};
    return LabeledVector{std::move(v), kAllLabels[cls]};
  };
  QuadrantData data;
  for (size_t cls = 0; cls < kNumLabels; ++cls)
    for (size_t i = 0; i < train_per_class; ++i)
      data.train.push_back(make_point(cls));
  for (size_t cls = 0; cls < kNumLabels; ++cls)
    for (size_t i = 0; i < test_per_class; ++i)
      data.test.push_back(make_point(cls));
  return data;
}

namespace {

// Devanagari consonants used to spell unique trigger-word stems.
constexpr std::array<const char*, 24> kConsonants = {
    "क", "ख", "ग", "घ", "च", "छ", "ज", "झ", "ट", "ठ", "ड", "ढ",
    "त", "थ", "द", "ध", "न", "प", "ब", "भ", "म", "य", "र", "ल"};

std::string trigger_stem(uint64_t counter) {
  std::string stem;
  for (int place = 0; place < 4; ++place) {
    stem += kConsonants[counter % kConsonants.size()];
    counter /= kConsonants.size();
  }
  return stem;
}

std::string noise_word(uint64_t index) {
  std::string word = "n";
  for (int place = 0; place < 3; ++place) {
    word += static_cast<char>('a' + index % 26);
    index /= 26;
  }
  return word;
}

}  // namespace

Corpus make_structure_corpus(size_t n_docs, uint64_t seed) {
  constexpr size_t kNoisePool = 300;
  std::mt19937_64 rng(seed);
  uint64_t stem_counter = 0;

  Corpus corpus;
  corpus.name = "synthetic-structures";
  corpus.comments.reserve(n_docs);
  for (size_t i = 0; i < n_docs; ++i) {
    const PolitenessLabel label = kAllLabels[i % kNumLabels];
    size_t honorifics = 0, subjunctives = 0;
    switch (label) {
      case PolitenessLabel::Neutral: break;
      case PolitenessLabel::Appropriate: honorifics = 1 + rng() % 2; break;
      case PolitenessLabel::Impolite: subjunctives = 1 + rng() % 2; break;
      case PolitenessLabel::Polite:
        honorifics = 1 + rng() % 2;
        subjunctives = 1 + rng() % 2;
        break;
    }

    std::vector<std::string> pieces;
    const size_t n_noise = 8 + rng() % 7;
    for (size_t k = 0; k < n_noise; ++k)
      pieces.push_back(noise_word(rng() % kNoisePool));
    // Honorific trigger: unique stem + an -ीजिए verb ending.
    for (size_t k = 0; k < honorifics; ++k)
      pieces.push_back(trigger_stem(stem_counter++) + "ीजिए");
    // Subjunctive trigger: unique stem + -ें, clause-final before danda.
    for (size_t k = 0; k < subjunctives; ++k)
      pieces.push_back(trigger_stem(stem_counter++) + "ें ।");

    // Deterministic position shuffle so triggers are not always last.
    for (size_t k = pieces.size(); k > 1; --k)
      std::swap(pieces[k - 1], pieces[rng() % k]);

    std::string text;
    for (const std::string& piece : pieces) {
      if (!text.empty()) text += ' ';
      text += piece;
    }

    Comment comment;
    comment.id = "doc" + std::to_string(100000 + i);
    comment.text = std::move(text);
    comment.label = label;
    corpus.comments.push_back(std::move(comment));
  }
  return corpus;
}

Corpus make_numbered_corpus(size_t n) {
  Corpus corpus;
  corpus.name = "synthetic-numbered";
  corpus.comments.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    Comment comment;
    comment.id = "c" + std::to_string(1000000 + i);
    comment.text = "record number " + std::to_string(i);
    comment.label = kAllLabels[i % kNumLabels];
    corpus.comments.push_back(std::move(comment));
  }
  return corpus;
}

}  // namespace polite::testsupport

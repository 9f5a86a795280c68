#include "politeness/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "politeness/error.hpp"
#include "politeness/textproc.hpp"
#include "fnv64.hpp"
#include "numio.hpp"

namespace polite {

namespace {

std::vector<std::string> doc_terms(const Comment& comment,
                                   const FeatureConfig& config) {
  const std::vector<Token> tokens = tokenize(normalize(comment.text));
  std::vector<std::string> terms;
  if (config.use_unigrams) {
    auto u = ngrams(tokens, 1);
    terms.insert(terms.end(), std::make_move_iterator(u.begin()),
                 std::make_move_iterator(u.end()));
  }
  if (config.use_bigrams) {
    auto b = ngrams(tokens, 2);
    terms.insert(terms.end(), std::make_move_iterator(b.begin()),
                 std::make_move_iterator(b.end()));
  }
  return terms;
}

std::string compute_fingerprint(const Vocabulary& vocab) {
  Fnv64 h;
  const FeatureConfig& c = vocab.config;
  h.update(static_cast<uint64_t>(c.use_unigrams) |
           (static_cast<uint64_t>(c.use_bigrams) << 1) |
           (static_cast<uint64_t>(c.use_structures) << 2) |
           (static_cast<uint64_t>(c.l2_normalize) << 3));
  h.update(static_cast<uint64_t>(c.min_term_frequency));
  for (const std::string& t : vocab.unigram_terms) h.update(t).update("\x01");
  h.update("\x02");
  for (const std::string& t : vocab.bigram_terms) h.update(t).update("\x01");
  h.update(static_cast<uint64_t>(vocab.dimension));
  return h.hex();
}

void finalize(Vocabulary& vocab) {
  vocab.dimension = vocab.n_terms() +
                    (vocab.config.use_structures ? kNumStructureKinds : 0);
  vocab.term_index.clear();
  vocab.term_index.reserve(vocab.n_terms());
  uint32_t idx = 0;
  for (const std::string& t : vocab.unigram_terms) vocab.term_index[t] = idx++;
  for (const std::string& t : vocab.bigram_terms) vocab.term_index[t] = idx++;
  vocab.fingerprint = compute_fingerprint(vocab);
}

}  // namespace

std::string_view preset_name(FeaturePreset preset) {
  switch (preset) {
    case FeaturePreset::Uni: return "uni";
    case FeaturePreset::UniBi: return "uni_bi";
    case FeaturePreset::UniBiStruct: return "uni_bi_struct";
  }
  return "?";
}

std::optional<FeaturePreset> preset_from_name(std::string_view name) {
  if (name == "uni") return FeaturePreset::Uni;
  if (name == "uni_bi") return FeaturePreset::UniBi;
  if (name == "uni_bi_struct") return FeaturePreset::UniBiStruct;
  return std::nullopt;
}

FeatureConfig FeatureConfig::preset(FeaturePreset p) {
  FeatureConfig c;
  switch (p) {
    case FeaturePreset::Uni:
      c.use_unigrams = true;
      c.use_bigrams = false;
      c.use_structures = false;
      break;
    case FeaturePreset::UniBi:
      c.use_unigrams = true;
      c.use_bigrams = true;
      c.use_structures = false;
      break;
    case FeaturePreset::UniBiStruct:
      c.use_unigrams = true;
      c.use_bigrams = true;
      c.use_structures = true;
      break;
  }
  return c;
}

void FeatureConfig::validate() const {
  if (!use_unigrams && !use_bigrams && !use_structures)
    throw UsageError("feature config enables no feature family");
  if (min_term_frequency == 0)
    throw UsageError("min_term_frequency must be positive");
}

std::string FeatureConfig::name() const {
  std::string out;
  auto add = [&out](std::string_view part) {
    if (!out.empty()) out += '_';
    out += part;
  };
  if (use_unigrams) add("uni");
  if (use_bigrams) add("bi");
  if (use_structures) add("struct");
  return out.empty() ? "none" : out;
}

double FeatureVector::l2_norm() const {
  double sq = 0.0;
  for (const auto& [idx, v] : entries) sq += v * v;
  return std::sqrt(sq);
}

Vocabulary build_vocabulary(const Corpus& train, const FeatureConfig& config,
                            const Lexicon& lexicon) {
  (void)lexicon;  // structure slots are fixed; no terms come from it
  config.validate();
  if (train.empty()) throw DataError("build_vocabulary: empty training corpus");

  std::unordered_map<std::string, uint32_t> df;
  for (const Comment& c : train.comments) {
    std::vector<std::string> terms;
    {
      // document frequency counts each term once per document
      std::unordered_set<std::string> uniq;
      for (std::string& t : doc_terms(c, config)) uniq.insert(std::move(t));
      terms.assign(std::make_move_iterator(uniq.begin()),
                   std::make_move_iterator(uniq.end()));
    }
    for (const std::string& t : terms) ++df[t];
  }

  Vocabulary vocab;
  vocab.config = config;
  for (auto& [term, count] : df) {
    if (count < config.min_term_frequency) continue;
    const bool is_bigram = term.find(kBigramSeparator) != std::string::npos;
    (is_bigram ? vocab.bigram_terms : vocab.unigram_terms).push_back(term);
  }
  std::sort(vocab.unigram_terms.begin(), vocab.unigram_terms.end());
  std::sort(vocab.bigram_terms.begin(), vocab.bigram_terms.end());
  finalize(vocab);

  if (vocab.dimension == 0)
    throw DataError("build_vocabulary: empty vocabulary after pruning");
  return vocab;
}

FeatureVector vectorize(const Comment& comment, const Vocabulary& vocab,
                        const Lexicon& lexicon) {
  std::map<uint32_t, double> acc;
  for (const std::string& term : doc_terms(comment, vocab.config)) {
    auto it = vocab.term_index.find(term);
    if (it != vocab.term_index.end()) acc[it->second] += 1.0;
  }
  if (vocab.config.use_structures) {
    const StructureProfile prof =
        profile(tokenize(normalize(comment.text)), lexicon);
    for (StructureKind kind : kAllStructureKinds) {
      const uint32_t n = prof.count(kind);
      if (n > 0) acc[vocab.structure_slot(kind)] = static_cast<double>(n);
    }
  }

  FeatureVector vec;
  vec.dimension = vocab.dimension;
  vec.entries.assign(acc.begin(), acc.end());
  if (vocab.config.l2_normalize) {
    const double norm = vec.l2_norm();
    if (norm > 0.0)
      for (auto& [idx, v] : vec.entries) v /= norm;
  }
  return vec;
}

std::vector<std::pair<FeatureVector, PolitenessLabel>> vectorize_labeled(
    const Corpus& corpus, const Vocabulary& vocab, const Lexicon& lexicon) {
  std::vector<std::pair<FeatureVector, PolitenessLabel>> out;
  out.reserve(corpus.size());
  for (const Comment& c : corpus.comments) {
    if (!c.label)
      throw DataError("comment '" + c.id + "' has no label");
    out.emplace_back(vectorize(c, vocab, lexicon), *c.label);
  }
  return out;
}

void save_vocabulary(const Vocabulary& vocab,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write vocabulary file: " + path.string());
  const FeatureConfig& c = vocab.config;
  out << "polvocab v1\n";
  out << "config unigrams=" << c.use_unigrams << " bigrams=" << c.use_bigrams
      << " structures=" << c.use_structures << " min_tf="
      << c.min_term_frequency << " l2=" << c.l2_normalize << "\n";
  out << "dimension " << vocab.dimension << "\n";
  out << "fingerprint " << vocab.fingerprint << "\n";
  out << "unigrams " << vocab.unigram_terms.size() << "\n";
  for (const std::string& t : vocab.unigram_terms) out << t << "\n";
  out << "bigrams " << vocab.bigram_terms.size() << "\n";
  for (const std::string& t : vocab.bigram_terms) out << t << "\n";
}

Vocabulary load_vocabulary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open vocabulary file: " + path.string());
  auto fail = [&](const std::string& msg) -> void {
    throw DataError("vocabulary file " + path.string() + ": " + msg);
  };

  std::string line;
  if (!std::getline(in, line) || line != "polvocab v1")
    fail("unsupported version (expected 'polvocab v1')");

  Vocabulary vocab;
  int u = 0, b = 0, s = 0, l2 = 0;
  uint32_t min_tf = 0;
  if (!std::getline(in, line) ||
      std::sscanf(line.c_str(), "config unigrams=%d bigrams=%d structures=%d min_tf=%u l2=%d",
                  &u, &b, &s, &min_tf, &l2) != 5)
    fail("malformed config line");
  vocab.config = {u != 0, b != 0, s != 0, min_tf, l2 != 0};

  uint32_t dimension = 0;
  if (!std::getline(in, line) ||
      std::sscanf(line.c_str(), "dimension %u", &dimension) != 1)
    fail("malformed dimension line");
  std::string stated_fp;
  if (!std::getline(in, line) || line.rfind("fingerprint ", 0) != 0)
    fail("missing fingerprint");
  stated_fp = line.substr(12);

  auto read_block = [&](const char* key, std::vector<std::string>& dst) {
    size_t count = 0;
    char fmt[32];
    std::snprintf(fmt, sizeof(fmt), "%s %%zu", key);
    if (!std::getline(in, line) ||
        std::sscanf(line.c_str(), fmt, &count) != 1)
      fail(std::string("malformed ") + key + " header");
    dst.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!std::getline(in, line)) fail("truncated term list");
      dst.push_back(line);
    }
  };
  read_block("unigrams", vocab.unigram_terms);
  read_block("bigrams", vocab.bigram_terms);

  finalize(vocab);
  if (vocab.dimension != dimension)
    fail("dimension mismatch (file corrupt?)");
  if (vocab.fingerprint != stated_fp)
    fail("fingerprint mismatch (file corrupt?)");
  return vocab;
}

void write_sparse_features(const Corpus& corpus, const Vocabulary& vocab,
                           const Lexicon& lexicon,
                           const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write features file: " + path.string());
  out << "# dimension=" << vocab.dimension << " fingerprint="
      << vocab.fingerprint << "\n";
  for (const Comment& c : corpus.comments) {
    if (c.id.find_first_of(" \t") != std::string::npos)
      throw DataError("id '" + c.id + "' contains whitespace");
    const FeatureVector vec = vectorize(c, vocab, lexicon);
    out << c.id << " " << (c.label ? to_string(*c.label) : "-");
    for (const auto& [idx, v] : vec.entries)
      out << " " << idx << ":" << format_double(v);
    out << "\n";
  }
}

}  // namespace polite

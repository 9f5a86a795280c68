#include "politeness/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "politeness/error.hpp"
#include "politeness/textproc.hpp"

namespace polite {

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

[[noreturn]] void fail_line(std::string_view name, size_t line,
                            const std::string& msg) {
  std::ostringstream os;
  os << name << ":" << line << ": " << msg;
  throw DataError(os.str());
}

void check_comment(std::string_view name, size_t line, const Comment& c,
                   std::unordered_set<std::string>& seen_ids) {
  if (c.id.empty()) fail_line(name, line, "empty id");
  if (!seen_ids.insert(c.id).second)
    fail_line(name, line, "duplicate id '" + c.id + "'");
  if (normalize(c.text).empty())
    fail_line(name, line, "text empty after normalization (id '" + c.id + "')");
}

PolitenessLabel parse_label_or_fail(std::string_view name, size_t line,
                                    const std::string& raw) {
  auto label = parse_label(raw);
  if (!label) fail_line(name, line, "unknown label '" + raw + "'");
  return *label;
}

}  // namespace

std::string_view to_string(PolitenessLabel label) {
  switch (label) {
    case PolitenessLabel::Neutral: return "neutral";
    case PolitenessLabel::Appropriate: return "appropriate";
    case PolitenessLabel::Polite: return "polite";
    case PolitenessLabel::Impolite: return "impolite";
  }
  return "?";
}

std::optional<PolitenessLabel> parse_label(std::string_view text) {
  const std::string t = lower_ascii(text);
  for (PolitenessLabel label : kAllLabels)
    if (t == to_string(label)) return label;
  return std::nullopt;
}

Corpus parse_corpus(std::string_view content, CorpusFormat format,
                    std::string_view name) {
  Corpus corpus;
  corpus.name = std::string(name);
  std::unordered_set<std::string> seen_ids;

  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= content.size()) {
    size_t eol = content.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? content.substr(pos)
                                : content.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? content.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    Comment c;
    if (format == CorpusFormat::Jsonl) {
      nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
      if (rec.is_discarded() || !rec.is_object())
        fail_line(name, line_no, "malformed JSON record");
      if (!rec.contains("id") || !rec["id"].is_string())
        fail_line(name, line_no, "missing string field 'id'");
      if (!rec.contains("text") || !rec["text"].is_string())
        fail_line(name, line_no, "missing string field 'text'");
      c.id = rec["id"].get<std::string>();
      c.text = rec["text"].get<std::string>();
      if (rec.contains("label") && !rec["label"].is_null()) {
        if (!rec["label"].is_string())
          fail_line(name, line_no, "label must be a string");
        c.label = parse_label_or_fail(name, line_no, rec["label"].get<std::string>());
      }
    } else {
      const size_t t1 = line.find('\t');
      const size_t t2 = t1 == std::string_view::npos
                            ? std::string_view::npos
                            : line.find('\t', t1 + 1);
      if (t1 == std::string_view::npos || t2 == std::string_view::npos)
        fail_line(name, line_no, "expected id<TAB>label<TAB>text");
      c.id = std::string(line.substr(0, t1));
      const std::string raw_label(line.substr(t1 + 1, t2 - t1 - 1));
      c.text = std::string(line.substr(t2 + 1));
      if (!raw_label.empty() && raw_label != "-")
        c.label = parse_label_or_fail(name, line_no, raw_label);
    }
    check_comment(name, line_no, c, seen_ids);
    corpus.comments.push_back(std::move(c));
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str(), format, path.string());
}

void write_corpus_jsonl(const Corpus& corpus,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus file: " + path.string());
  for (const Comment& c : corpus.comments) {
    nlohmann::ordered_json rec;
    rec["id"] = c.id;
    rec["text"] = c.text;
    if (c.label) rec["label"] = std::string(to_string(*c.label));
    out << rec.dump() << "\n";
  }
}

void SplitSpec::validate() const {
  const double fracs[3] = {train_fraction, test_fraction, validation_fraction};
  for (double f : fracs)
    if (!(f > 0.0 && f < 1.0))
      throw UsageError("split fractions must each lie in (0,1)");
  const double sum = train_fraction + test_fraction + validation_fraction;
  if (std::abs(sum - 1.0) > 1e-9)
    throw UsageError("split fractions must sum to 1");
}

uint64_t stable_hash64(uint64_t seed, std::string_view data) {
  // FNV-1a over the seed bytes then the id bytes, then a splitmix64
  // finalizer for avalanche. Stable across platforms.
  uint64_t h = 1469598103934665603ULL;
  auto mix_byte = [&h](uint8_t b) {
    h ^= b;
    h *= 1099511628211ULL;
  };
  for (int i = 0; i < 8; ++i) mix_byte(static_cast<uint8_t>(seed >> (8 * i)));
  for (char c : data) mix_byte(static_cast<uint8_t>(c));
  h += 0x9E3779B97F4A7C15ULL;
  h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ULL;
  h = (h ^ (h >> 27)) * 0x94D049BB133111EBULL;
  return h ^ (h >> 31);
}

SplitResult split(const Corpus& corpus, const SplitSpec& spec) {
  spec.validate();
  if (corpus.empty()) throw DataError("cannot split an empty corpus");

  const size_t n = corpus.size();
  // +1e-6 absorbs binary representation error in decimal fractions
  // (e.g. 25660*0.70 = 17961.999999999998 in doubles).
  const auto sized = [n](double f) {
    return static_cast<size_t>(std::floor(static_cast<double>(n) * f + 1e-6));
  };
  const size_t n_train = sized(spec.train_fraction);
  const size_t n_test = sized(spec.test_fraction);

  struct Ranked {
    uint64_t rank;
    size_t pos;
  };
  std::vector<Ranked> ranked(n);
  for (size_t i = 0; i < n; ++i)
    ranked[i] = {stable_hash64(spec.seed, corpus.comments[i].id), i};
  std::sort(ranked.begin(), ranked.end(), [&](const Ranked& a, const Ranked& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return corpus.comments[a.pos].id < corpus.comments[b.pos].id;
  });

  // 0 = train, 1 = test, 2 = validation
  std::vector<uint8_t> bucket(n, 2);
  for (size_t i = 0; i < n; ++i) {
    if (i < n_train)
      bucket[ranked[i].pos] = 0;
    else if (i < n_train + n_test)
      bucket[ranked[i].pos] = 1;
  }

  SplitResult result;
  result.train.name = corpus.name + ".train";
  result.test.name = corpus.name + ".test";
  result.validation.name = corpus.name + ".valid";
  for (size_t i = 0; i < n; ++i) {
    Corpus& dst = bucket[i] == 0   ? result.train
                  : bucket[i] == 1 ? result.test
                                   : result.validation;
    dst.comments.push_back(corpus.comments[i]);
  }
  return result;
}

AgreementReport compute_agreement(const std::vector<Annotation>& a,
                                  const std::vector<Annotation>& b) {
  if (a.empty() || b.empty())
    throw DataError("agreement: empty annotation list");
  if (a.size() != b.size())
    throw DataError("agreement: annotation id sets differ in size");

  std::unordered_map<std::string, PolitenessLabel> by_id;
  by_id.reserve(b.size());
  for (const auto& [id, label] : b)
    if (!by_id.emplace(id, label).second)
      throw DataError("agreement: duplicate id '" + id + "'");

  AgreementReport report;
  report.n_items = a.size();
  std::unordered_set<std::string> seen;
  for (const auto& [id, label_a] : a) {
    if (!seen.insert(id).second)
      throw DataError("agreement: duplicate id '" + id + "'");
    auto it = by_id.find(id);
    if (it == by_id.end())
      throw DataError("agreement: id '" + id + "' missing from second list");
    report.confusion[static_cast<size_t>(label_a)]
                    [static_cast<size_t>(it->second)]++;
  }

  const double n = static_cast<double>(report.n_items);
  uint64_t diag = 0;
  for (size_t k = 0; k < kNumLabels; ++k) diag += report.confusion[k][k];
  const double p_o = static_cast<double>(diag) / n;
  report.percent_agreement = p_o;

  double p_e = 0.0;
  for (size_t k = 0; k < kNumLabels; ++k) {
    uint64_t row = 0, col = 0;
    for (size_t j = 0; j < kNumLabels; ++j) {
      row += report.confusion[k][j];
      col += report.confusion[j][k];
    }
    p_e += (static_cast<double>(row) / n) * (static_cast<double>(col) / n);
  }

  if (p_o == 1.0) {
    report.cohen_kappa = 1.0;  // identical annotations, regardless of p_e
  } else if (p_e >= 1.0) {
    report.cohen_kappa = std::nullopt;
  } else {
    report.cohen_kappa = (p_o - p_e) / (1.0 - p_e);
  }
  return report;
}

}  // namespace polite

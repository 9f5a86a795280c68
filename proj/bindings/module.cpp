// Python bindings for the main toolkit operations: normalization,
// tokenization, structure detection, corpus splitting, agreement, and
// model inference against files produced by the command-line tool.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "politeness/corpus.hpp"
#include "politeness/error.hpp"
#include "politeness/eval.hpp"
#include "politeness/features.hpp"
#include "politeness/structures.hpp"
#include "politeness/svm.hpp"
#include "politeness/textproc.hpp"

namespace py = pybind11;
using namespace polite;

namespace {

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Word: return "word";
    case TokenKind::Punctuation: return "punctuation";
    case TokenKind::Number: return "number";
    case TokenKind::Other: return "other";
  }
  return "other";
}

Lexicon lexicon_from(const std::optional<std::string>& path) {
  return path ? load_lexicon(*path) : default_lexicon();
}

py::list matches_to_py(const StructureProfile& prof) {
  py::list out;
  for (const StructureMatch& m : prof.matches) {
    py::dict d;
    d["kind"] = std::string(kind_code(m.kind));
    d["start"] = m.token_start;
    d["end"] = m.token_end;
    d["evidence"] = m.evidence;
    out.append(std::move(d));
  }
  return out;
}

// Loaded classifier + vocabulary pair for scoring raw text.
class Classifier {
 public:
  Classifier(const std::string& model_path, const std::string& vocab_path,
             const std::optional<std::string>& lexicon_path)
      : model_(load_model(model_path)),
        vocab_(load_vocabulary(vocab_path)),
        lexicon_(lexicon_from(lexicon_path)) {
    check_compatible(model_, vocab_);
  }

  py::dict predict_text(const std::string& text) const {
    Comment c{"", text, std::nullopt};
    const Prediction p = predict(model_, vectorize(c, vocab_, lexicon_));
    py::dict scores;
    for (size_t k = 0; k < kNumLabels; ++k)
      scores[py::str(std::string(to_string(kAllLabels[k])))] = p.scores[k];
    py::dict out;
    out["label"] = std::string(to_string(p.label));
    out["scores"] = std::move(scores);
    return out;
  }

  uint32_t dimension() const { return model_.dimension; }
  std::string fingerprint() const { return vocab_.fingerprint; }

 private:
  SvmModel model_;
  Vocabulary vocab_;
  Lexicon lexicon_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hindi politeness classification toolkit (core operations)";

  py::register_exception<DataError>(m, "DataError");
  py::register_exception<UsageError>(m, "UsageError");

  m.attr("LABELS") = [] {
    py::list labels;
    for (PolitenessLabel l : kAllLabels) labels.append(std::string(to_string(l)));
    return labels;
  }();
  m.attr("STRUCTURE_CODES") = [] {
    py::list codes;
    for (StructureKind k : kAllStructureKinds)
      codes.append(std::string(kind_code(k)));
    return codes;
  }();
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  m.def(
      "normalize", [](const std::string& text) { return normalize(text); },
      py::arg("text"),
      "Canonical form: NFC plus nukta-consonant composition, zero-width "
      "characters removed, Latin lowercased, whitespace collapsed.");

  m.def(
      "tokenize",
      [](const std::string& text) {
        py::list out;
        for (const Token& t : tokenize(normalize(text))) {
          py::dict d;
          d["surface"] = t.surface;
          d["start"] = t.start;
          d["end"] = t.end;
          d["kind"] = token_kind_name(t.kind);
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("text"),
      "Normalize then split into tokens; offsets are code point indices "
      "into the normalized text.");

  m.def(
      "ngrams",
      [](const std::string& text, int n) {
        return ngrams(tokenize(normalize(text)), n);
      },
      py::arg("text"), py::arg("n") = 1,
      "Bag of word n-grams (n = 1 or 2) over the normalized text.");

  m.def(
      "structure_counts",
      [](const std::string& text, const std::optional<std::string>& lexicon) {
        const Lexicon lex = lexicon_from(lexicon);
        const StructureProfile prof = profile(tokenize(normalize(text)), lex);
        py::dict out;
        for (StructureKind k : kAllStructureKinds)
          out[py::str(std::string(kind_code(k)))] = prof.count(k);
        return out;
      },
      py::arg("text"), py::arg("lexicon") = py::none(),
      "Counts of the eight politeness structures, keyed S1..S8.");

  m.def(
      "structure_matches",
      [](const std::string& text, const std::optional<std::string>& lexicon) {
        const Lexicon lex = lexicon_from(lexicon);
        return matches_to_py(profile(tokenize(normalize(text)), lex));
      },
      py::arg("text"), py::arg("lexicon") = py::none(),
      "Individual detector matches with token spans and evidence.");

  m.def(
      "split_assign",
      [](const std::vector<std::string>& ids, uint64_t seed, double train,
         double test, double validation) {
        Corpus corpus;
        corpus.name = "<memory>";
        corpus.comments.reserve(ids.size());
        for (const std::string& id : ids)
          corpus.comments.push_back(Comment{id, "x", std::nullopt});
        SplitSpec spec;
        spec.train_fraction = train;
        spec.test_fraction = test;
        spec.validation_fraction = validation;
        spec.seed = seed;
        const SplitResult result = split(corpus, spec);
        py::dict out;
        for (const Comment& c : result.train.comments)
          out[py::str(c.id)] = "train";
        for (const Comment& c : result.test.comments)
          out[py::str(c.id)] = "test";
        for (const Comment& c : result.validation.comments)
          out[py::str(c.id)] = "validation";
        return out;
      },
      py::arg("ids"), py::arg("seed") = kDefaultSeed, py::arg("train") = 0.70,
      py::arg("test") = 0.10, py::arg("validation") = 0.20,
      "Deterministic id -> {train,test,validation} assignment; membership "
      "depends only on (seed, id).");

  m.def(
      "stable_hash",
      [](uint64_t seed, const std::string& id) {
        return stable_hash64(seed, id);
      },
      py::arg("seed"), py::arg("id"),
      "The 64-bit hash that drives split membership.");

  m.def(
      "agreement",
      [](const std::vector<std::pair<std::string, std::string>>& a,
         const std::vector<std::pair<std::string, std::string>>& b) {
        auto convert = [](const auto& items) {
          std::vector<Annotation> out;
          out.reserve(items.size());
          for (const auto& [id, label_text] : items) {
            const auto label = parse_label(label_text);
            if (!label)
              throw DataError("unknown politeness label '" + label_text + "'");
            out.emplace_back(id, *label);
          }
          return out;
        };
        const AgreementReport report =
            compute_agreement(convert(a), convert(b));
        py::dict out;
        out["n_items"] = report.n_items;
        out["percent_agreement"] = report.percent_agreement;
        out["cohen_kappa"] = report.cohen_kappa
                                 ? py::object(py::float_(*report.cohen_kappa))
                                 : py::object(py::none());
        py::list confusion;
        for (const auto& row : report.confusion) {
          py::list r;
          for (uint64_t v : row) r.append(v);
          confusion.append(std::move(r));
        }
        out["confusion"] = std::move(confusion);
        return out;
      },
      py::arg("first"), py::arg("second"),
      "Percent agreement and Cohen's kappa over two (id, label) lists.");

  py::class_<Classifier>(m, "Classifier",
                         "A trained model + vocabulary, scoring raw text.")
      .def(py::init<const std::string&, const std::string&,
                    const std::optional<std::string>&>(),
           py::arg("model_path"), py::arg("vocab_path"),
           py::arg("lexicon_path") = py::none())
      .def("predict", &Classifier::predict_text, py::arg("text"),
           "Label plus per-class decision scores for one text.")
      .def_property_readonly("dimension", &Classifier::dimension)
      .def_property_readonly("fingerprint", &Classifier::fingerprint);
}

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "politeness/error.hpp"
#include "politeness/structures.hpp"
#include "politeness/textproc.hpp"

using namespace polite;

namespace {

StructureProfile run(const std::string& text,
                     const Lexicon& lexicon = default_lexicon()) {
  return profile(tokenize(normalize(text)), lexicon);
}

std::set<std::string> fired_kinds(const StructureProfile& prof) {
  std::set<std::string> out;
  for (StructureKind kind : kAllStructureKinds)
    if (prof.count(kind) > 0) out.insert(std::string(kind_code(kind)));
  return out;
}

}  // namespace

TEST_CASE("kind codes round-trip") {
  for (StructureKind kind : kAllStructureKinds) {
    CHECK(kind_from_code(kind_code(kind)) == kind);
  }
  CHECK(!kind_from_code("S9").has_value());
  CHECK(!kind_from_code("").has_value());
}

TEST_CASE("golden examples fire every designated kind") {
  std::ifstream in(std::string(POLITENESS_TEST_DATA_DIR) +
                   "/golden_examples.jsonl");
  REQUIRE(in.good());
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    const std::string id = j.at("id");
    const std::set<std::string> fired = fired_kinds(run(j.at("text")));
    for (const auto& kind : j.at("kinds")) {
      CAPTURE(id);
      CAPTURE(std::string(kind));
      CHECK(fired.count(kind) == 1);
    }
    ++n;
  }
  CHECK(n == 13);
}

TEST_CASE("empty and structure-free text give an all-zero profile") {
  for (const std::string& text :
       {std::string(""), std::string("यह एक सामान्य वाक्य था")}) {
    const StructureProfile prof = run(text);
    for (StructureKind kind : kAllStructureKinds) CHECK(prof.count(kind) == 0);
    CHECK(prof.matches.empty());
  }
}

TEST_CASE("formulaic expressions are counted per occurrence") {
  const StructureProfile prof = run("धन्यवाद धन्यवाद कृपया");
  CHECK(prof.count(StructureKind::Formulaic) == 3);
}

TEST_CASE("ji needs a preceding word in its utterance segment") {
  CHECK(run("संगीता जी").count(StructureKind::JiParticle) == 1);
  // Utterance-initial ji is the bare interjection, not the honorific.
  CHECK(run("जी हां").count(StructureKind::JiParticle) == 0);
  // A sentence break resets the segment.
  CHECK(run("ठीक है। जी").count(StructureKind::JiParticle) == 0);
}

TEST_CASE("copula forms never fire the subjunctive detector") {
  CHECK(run("है").count(StructureKind::Subjunctive) == 0);
  CHECK(run("हैं").count(StructureKind::Subjunctive) == 0);
  CHECK(run("वे आ रहे हैं").count(StructureKind::Subjunctive) == 0);
  CHECK(run("कमियां हैं।").count(StructureKind::Subjunctive) == 0);
  CHECK(run("अच्छे थे।").count(StructureKind::Subjunctive) == 0);
}

TEST_CASE("subjunctive needs a clause boundary after the verb") {
  CHECK(run("जाने दें").count(StructureKind::Subjunctive) == 1);    // at end
  CHECK(run("कर लें।").count(StructureKind::Subjunctive) == 1);     // danda
  CHECK(run("समझें तो आएं").count(StructureKind::Subjunctive) > 0);  // marker
  // Mid-clause -ें word: no boundary follows.
  CHECK(run("समझें और बताएं अभी नहीं").count(StructureKind::Subjunctive) == 0);
}

TEST_CASE("conditional needs both the opener and a following correlative") {
  CHECK(run("अगर हो तो बताएं").count(StructureKind::Conditional) == 1);
  CHECK(run("यदि हो तो ठीक").count(StructureKind::Conditional) == 1);
  CHECK(run("अगर बारिश होगी").count(StructureKind::Conditional) == 0);
  CHECK(run("तो फिर अगर").count(StructureKind::Conditional) == 0);  // wrong order
  CHECK(run("तो ठीक है").count(StructureKind::Conditional) == 0);
}

TEST_CASE("conditional evidence names the pair") {
  const StructureProfile prof = run("अगर हो तो बताएं");
  REQUIRE(prof.count(StructureKind::Conditional) == 1);
  for (const StructureMatch& m : prof.matches) {
    if (m.kind != StructureKind::Conditional) continue;
    CHECK(m.evidence.find("अगर") != std::string::npos);
    CHECK(m.evidence.find("तो") != std::string::npos);
  }
}

TEST_CASE("deontic epistemic and minimizer are word lookups") {
  CHECK(run("ऐसा करना चाहिए").count(StructureKind::Deontic) == 1);
  CHECK(run("आप कर सकते हैं").count(StructureKind::Epistemic) == 1);
  CHECK(run("वह लिख सकी").count(StructureKind::Epistemic) == 1);
  CHECK(run("ज़रा देखना").count(StructureKind::Minimizer) == 1);
  CHECK(run("थोड़ा समय दें").count(StructureKind::Minimizer) == 1);
  // Decomposed spelling of ज़रा matches after normalization.
  CHECK(run("ज़रा सुनो").count(StructureKind::Minimizer) ==
        1);
}

TEST_CASE("honorific fires on the pronoun and on imperative suffixes") {
  CHECK(run("आप आइए").count(StructureKind::Honorific) == 2);
  CHECK(run("देखिए").count(StructureKind::Honorific) == 1);
  CHECK(run("बताइएगा").count(StructureKind::Honorific) == 1);
  CHECK(run("दीजिये").count(StructureKind::Honorific) == 1);
  CHECK(run("तुम देखो").count(StructureKind::Honorific) == 0);
}

TEST_CASE("profile counts equal match-list tallies") {
  const StructureProfile prof =
      run("कृपया आप ज़रा देखिए अगर हो तो बताइए। धन्यवाद");
  std::array<uint32_t, kNumStructureKinds> tally{};
  for (const StructureMatch& m : prof.matches)
    ++tally[static_cast<size_t>(m.kind)];
  for (StructureKind kind : kAllStructureKinds)
    CHECK(prof.count(kind) == tally[static_cast<size_t>(kind)]);
}

TEST_CASE("detect for one kind matches the relevant profile slice") {
  const auto tokens = tokenize(normalize("कृपया आप देखिए"));
  const auto only = detect(StructureKind::Honorific, tokens, default_lexicon());
  const StructureProfile prof = profile(tokens, default_lexicon());
  CHECK(only.size() == prof.count(StructureKind::Honorific));
}

TEST_CASE("a lexicon file extends the built-in tables") {
  const Lexicon extended = load_lexicon(
      std::string(POLITENESS_TEST_DATA_DIR) + "/lexicon_extra.txt");
  CHECK(run("नमस्कार", extended).count(StructureKind::Formulaic) == 1);
  CHECK(run("तनिक रुकिए", extended).count(StructureKind::Minimizer) == 1);
  // Built-in entries are still present.
  CHECK(run("धन्यवाद", extended).count(StructureKind::Formulaic) == 1);
  // The default tables do not know the new words.
  CHECK(run("नमस्कार").count(StructureKind::Formulaic) == 0);
}

TEST_CASE("lexicon parse errors are specific") {
  CHECK_THROWS_AS(parse_lexicon("[S99]\nशब्द\n", "t"), DataError);
  CHECK_THROWS_AS(parse_lexicon("शब्द\n", "t"), DataError);  // entry before section
  CHECK_THROWS_AS(parse_lexicon("[S1]\nदो शब्द\n", "t"), DataError);  // whitespace
  CHECK_THROWS_AS(parse_lexicon("[S1]\n-िए\n", "t"), DataError);  // suffix here
  CHECK_THROWS_AS(parse_lexicon("[S5]\nअगर=>तो\n", "t"), DataError);  // pair here
  CHECK_THROWS_AS(parse_lexicon("[S4]\nअगर\n", "t"), DataError);  // pair required
}

TEST_CASE("comments and blank lines are ignored in lexicon files") {
  const Lexicon lex = parse_lexicon("# heading\n\n[S1]\n# note\nशुक्रगुज़ार\n", "t");
  CHECK(run("शुक्रगुज़ार", lex).count(StructureKind::Formulaic) == 1);
}

TEST_CASE("lexicon validation rejects copula-suffix collisions") {
  // A copula ending in an honorific suffix would poison the exclusion
  // logic, so validation refuses it.
  Lexicon lex = default_lexicon();
  lex.copula_exclusions.insert("कीजिए");
  CHECK_THROWS_AS(lex.validate(), DataError);
}

"""End-to-end smoke tests for the politeness_hi extension module."""

import json
import os
import subprocess
import sys

import pytest

import politeness_hi as ph


def test_module_constants():
    assert ph.LABELS == ["neutral", "appropriate", "polite", "impolite"]
    assert ph.STRUCTURE_CODES == [f"S{i}" for i in range(1, 9)]
    assert ph.DEFAULT_SEED == 42


def test_normalize_canonicalizes_text():
    # Decomposed nukta consonant, zero-width joiner, uppercase Latin,
    # repeated whitespace: all collapse to one canonical form.
    raw = "ज़रू‍R  है"
    out = ph.normalize(raw)
    assert "ज़" in out  # ज+़ composed
    assert "‍" not in out
    assert "r" in out
    assert "  " not in out
    assert ph.normalize(out) == out


def test_tokenize_reports_spans_and_kinds():
    tokens = ph.tokenize("रचना। ab 12")
    surfaces = [t["surface"] for t in tokens]
    assert surfaces == ["रचना", "।", "ab", "12"]
    kinds = [t["kind"] for t in tokens]
    assert kinds == ["word", "punctuation", "word", "number"]
    assert tokens[0]["start"] == 0 and tokens[0]["end"] == 4


def test_ngrams():
    assert ph.ngrams("एक दो तीन") == ["एक", "दो", "तीन"]
    bigrams = ph.ngrams("एक दो तीन", n=2)
    assert len(bigrams) == 2
    assert all("\x1f" in b for b in bigrams)


def test_structure_counts_on_a_polite_sentence():
    counts = ph.structure_counts("कृपया थोड़ा ध्यान दीजिए")
    assert counts["S1"] >= 1  # courtesy formula
    assert counts["S7"] >= 1  # minimizer
    assert counts["S8"] >= 1  # honorific verb form
    assert counts["S4"] == 0

    empty = ph.structure_counts("")
    assert all(v == 0 for v in empty.values())


def test_structure_matches_carry_evidence():
    matches = ph.structure_matches("धन्यवाद जी")
    kinds = {m["kind"] for m in matches}
    assert {"S1", "S2"} <= kinds
    for m in matches:
        assert m["end"] > m["start"]
        assert m["evidence"]


def test_split_assignment_is_deterministic_and_sized():
    ids = [f"doc{i}" for i in range(1000)]
    parts = ph.split_assign(ids, seed=42)
    assert set(parts) == set(ids)
    sizes = {name: sum(1 for p in parts.values() if p == name)
             for name in ("train", "test", "validation")}
    assert sizes == {"train": 700, "test": 100, "validation": 200}

    again = ph.split_assign(list(reversed(ids)), seed=42)
    assert parts == again  # membership ignores input order
    assert ph.split_assign(ids, seed=43) != parts

    h = ph.stable_hash(42, "doc0")
    assert isinstance(h, int)
    assert h == ph.stable_hash(42, "doc0")


def test_agreement_statistics():
    first = [(f"i{k}", ph.LABELS[k % 4]) for k in range(150)]
    second = [(f"i{k}", ph.LABELS[(k + 1) % 4] if k % 5 == 0 else ph.LABELS[k % 4])
              for k in range(150)]
    report = ph.agreement(first, second)
    assert report["n_items"] == 150
    assert report["percent_agreement"] == pytest.approx(0.80)
    assert len(report["confusion"]) == 4

    # Recompute kappa from the returned confusion matrix.
    n = report["n_items"]
    rows = [sum(r) for r in report["confusion"]]
    cols = [sum(c) for c in zip(*report["confusion"])]
    p_e = sum(r * c for r, c in zip(rows, cols)) / (n * n)
    expected = (report["percent_agreement"] - p_e) / (1.0 - p_e)
    assert report["cohen_kappa"] == pytest.approx(expected)
    assert 0.5 < report["cohen_kappa"] < 0.8

    same = ph.agreement(first, first)
    assert same["percent_agreement"] == 1.0
    assert same["cohen_kappa"] == 1.0


def test_data_errors_surface_as_python_exceptions():
    with pytest.raises(ph.DataError):
        ph.agreement([("a", "neutral")], [("b", "neutral")])
    with pytest.raises(ph.UsageError):
        ph.split_assign(["a"], train=0.9, test=0.9, validation=0.9)


@pytest.mark.skipif("POLITENESS_CLI" not in os.environ,
                    reason="CLI binary location not provided")
def test_cli_train_then_classify(tmp_path):
    cli = os.environ["POLITENESS_CLI"]

    # A tiny corpus whose labels follow two trigger words.
    rows = []
    for i in range(40):
        if i % 2 == 0:
            rows.append({"id": f"p{i}", "text": "कृपया बताइए मदद कीजिए", "label": "polite"})
        else:
            rows.append({"id": f"n{i}", "text": "आज मौसम ठीक लगता था", "label": "neutral"})
    corpus = tmp_path / "corpus.jsonl"
    corpus.write_text("\n".join(json.dumps(r, ensure_ascii=False) for r in rows) + "\n",
                      encoding="utf-8")

    vocab = tmp_path / "model.vocab"
    model = tmp_path / "model.svm"
    result = subprocess.run(
        [cli, "train", str(corpus), "--vocab-out", str(vocab),
         "--model-out", str(model)],
        capture_output=True, text=True)
    assert result.returncode == 0, result.stderr

    clf = ph.Classifier(str(model), str(vocab))
    assert clf.dimension > 0
    assert len(clf.fingerprint) == 16

    polite = clf.predict("कृपया बताइए मदद कीजिए")
    neutral = clf.predict("आज मौसम ठीक लगता था")
    assert polite["label"] == "polite"
    assert neutral["label"] == "neutral"
    assert set(polite["scores"]) == set(ph.LABELS)


def test_classifier_rejects_missing_files(tmp_path):
    with pytest.raises(ph.DataError):
        ph.Classifier(str(tmp_path / "absent.model"), str(tmp_path / "absent.vocab"))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))

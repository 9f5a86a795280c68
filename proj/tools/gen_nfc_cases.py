#!/usr/bin/env python3
"""Regenerates tests/data/nfc_cases.tsv from the unicodedata module.

Each row is `description <TAB> input <TAB> expected` where input and
expected are \\uXXXX / \\UXXXXXXXX escape sequences (ASCII-safe, one
escape per code point). `expected` is NFC(input) as computed by CPython's
unicodedata, which follows the Unicode normalization algorithm exactly —
the C++ implementation is tested against these frozen values.

Usage: python3 tools/gen_nfc_cases.py > tests/data/nfc_cases.tsv
"""

import sys
import unicodedata


def esc(s: str) -> str:
    out = []
    for ch in s:
        cp = ord(ch)
        out.append(f"\\u{cp:04X}" if cp <= 0xFFFF else f"\\U{cp:08X}")
    return "".join(out)


CASES = [
    ("ascii passthrough", "hello, world 123"),
    ("empty", ""),
    ("latin e + combining acute composes", "é"),
    ("precomposed e-acute unchanged", "é"),
    ("a + ring composes", "å"),
    ("angstrom sign singleton", "Å"),
    ("ohm sign singleton", "Ω"),
    ("grave tone mark singleton", "̀"),
    ("ccc reorder: dot-below before dot-above", "q̣̇"),
    ("equal ccc keeps order", "ạ̣̇"),
    ("blocked composition: cedilla blocks acute", "ȩ́"),
    ("greek alpha + tonos", "ά"),
    ("hangul jamo L+V+T composes", "각"),
    ("hangul LV + T composes", "각"),
    ("hangul jamo L+V composes", "가"),
    ("devanagari nna + nukta composes", "ऩ"),
    ("devanagari rra + nukta composes", "ऱ"),
    ("devanagari qa stays decomposed (exclusion)", "क़"),
    ("devanagari precomposed qa decomposes (exclusion)", "क़"),
    ("devanagari precomposed za decomposes (exclusion)", "ज़"),
    ("devanagari ya + nukta stays decomposed (exclusion)", "य़"),
    ("devanagari vowel candra o + nukta", "ऑ़"),
    ("hindi word with precomposed fa", "फ़िर"),
    ("cjk compatibility ideograph singleton", "豈"),
    ("musical symbol stays decomposed (exclusion)", "\U0001d15e"),
    ("supplementary plane passthrough", "\U00010348"),
    ("isolated combining mark", "́"),
    ("leading combining mark then letter", "́e"),
    ("devanagari syllable with matra and anusvara", "समझें"),
    ("long mixed sentence", "Café ménu क़रीब ab̊́c"),
]


def main() -> None:
    w = sys.stdout
    w.write("# description\tinput\texpected  (escaped; regenerate with tools/gen_nfc_cases.py)\n")
    for desc, raw in CASES:
        expected = unicodedata.normalize("NFC", raw)
        w.write(f"{desc}\t{esc(raw)}\t{esc(expected)}\n")


if __name__ == "__main__":
    main()

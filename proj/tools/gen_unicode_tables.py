#!/usr/bin/env python3
"""Generate src/unicode_tables.inc from python's unicodedata.

The C++ core needs four tables for NFC and tokenization:
  * nonzero canonical combining classes
  * full (recursive) canonical decompositions, Hangul excluded
  * primary composite pairs, Hangul excluded
  * general-category P*/S* ranges (punctuation/symbol classification)

Run from the repository root:
    python3 tools/gen_unicode_tables.py > src/unicode_tables.inc
"""

import sys
import unicodedata as ud

MAX_CP = 0x110000
S_BASE, S_COUNT = 0xAC00, 11172


def is_hangul_syllable(cp: int) -> bool:
    return S_BASE <= cp < S_BASE + S_COUNT


def canonical_decomposition(cp: int):
    """Immediate canonical decomposition, or None."""
    raw = ud.decomposition(chr(cp))
    if not raw or raw.startswith("<"):
        return None
    return [int(tok, 16) for tok in raw.split()]


def full_decomposition(cp: int):
    parts = canonical_decomposition(cp)
    if parts is None:
        return None
    out = []
    stack = list(reversed(parts))
    while stack:
        c = stack.pop()
        sub = canonical_decomposition(c)
        if sub is None or is_hangul_syllable(c):
            out.append(c)
        else:
            stack.extend(reversed(sub))
    return out


def main() -> None:
    ccc = []
    decomp = []
    comp = []
    for cp in range(MAX_CP):
        ch = chr(cp)
        k = ud.combining(ch)
        if k:
            ccc.append((cp, k))
        if is_hangul_syllable(cp):
            continue
        parts = full_decomposition(cp)
        if parts is not None:
            decomp.append((cp, parts))
        two = canonical_decomposition(cp)
        if two is not None and len(two) == 2:
            # primary composite iff NFC round-trips; weeds out exclusions
            # and non-starter decompositions without CompositionExclusions.txt
            if ud.normalize("NFC", ud.normalize("NFD", ch)) == ch:
                comp.append((two[0], two[1], cp))

    ranges = []
    run_start = None
    prev = None
    for cp in range(MAX_CP):
        cat = ud.category(chr(cp))
        if cat and cat[0] in "PS":
            if run_start is None:
                run_start = cp
            prev = cp
        else:
            if run_start is not None:
                ranges.append((run_start, prev))
                run_start = None
    if run_start is not None:
        ranges.append((run_start, prev))

    w = sys.stdout.write
    w("// Generated by tools/gen_unicode_tables.py (unicodedata %s). Do not edit.\n"
      % ud.unidata_version)
    w("// clang-format off\n")

    w("inline constexpr CccEntry kCcc[] = {\n")
    for cp, k in ccc:
        w("  {0x%X,%d},\n" % (cp, k))
    w("};\n\n")

    pool = []
    w("inline constexpr DecompEntry kDecomp[] = {\n")
    for cp, parts in decomp:
        w("  {0x%X,%d,%d},\n" % (cp, len(pool), len(parts)))
        pool.extend(parts)
    w("};\n\n")

    w("inline constexpr char32_t kDecompPool[] = {\n")
    for i in range(0, len(pool), 12):
        w("  " + ",".join("0x%X" % c for c in pool[i:i + 12]) + ",\n")
    w("};\n\n")

    comp.sort(key=lambda t: (t[0] << 21) | t[1])
    w("inline constexpr CompEntry kComp[] = {\n")
    for a, b, c in comp:
        w("  {0x%XULL,0x%X},\n" % ((a << 21) | b, c))
    w("};\n\n")

    w("inline constexpr CpRange kPunctSym[] = {\n")
    for lo, hi in ranges:
        w("  {0x%X,0x%X},\n" % (lo, hi))
    w("};\n")
    w("// clang-format on\n")

    print(
        "tables: ccc=%d decomp=%d pool=%d comp=%d punct_ranges=%d"
        % (len(ccc), len(decomp), len(pool), len(comp), len(ranges)),
        file=sys.stderr,
    )


if __name__ == "__main__":
    main()

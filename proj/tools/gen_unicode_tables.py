#!/usr/bin/env python3
"""Regenerates src/unicode_tables.inc from Python's unicodedata.

Emits two sorted tables:
  kAlnumRanges -- closed codepoint ranges whose general category is a
                  letter (L*) or decimal digit (Nd)
  kFoldPairs   -- one-to-one simple case foldings (codepoints whose
                  folded form is a single codepoint different from the
                  original)

Run from the repository root:  python3 tools/gen_unicode_tables.py
"""

import sys
import unicodedata

OUT = "src/unicode_tables.inc"
MAX_CP = 0x110000


def is_alnum(cp: int) -> bool:
    cat = unicodedata.category(chr(cp))
    return cat.startswith("L") or cat == "Nd"


def fold_target(cp: int) -> int | None:
    ch = chr(cp)
    folded = ch.casefold()
    if len(folded) == 1 and folded != ch:
        return ord(folded)
    # Multi-codepoint full foldings (e.g. sharp s) are left alone, but a
    # plain lowercase mapping still applies when it stays one codepoint.
    lowered = ch.lower()
    if len(lowered) == 1 and lowered != ch:
        return ord(lowered)
    return None


def alnum_ranges():
    ranges = []
    start = None
    for cp in range(MAX_CP):
        if is_alnum(cp):
            if start is None:
                start = cp
        elif start is not None:
            ranges.append((start, cp - 1))
            start = None
    if start is not None:
        ranges.append((start, MAX_CP - 1))
    return ranges


def fold_pairs():
    pairs = []
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        target = fold_target(cp)
        if target is not None:
            pairs.append((cp, target))
    return pairs


def main():
    ranges = alnum_ranges()
    pairs = fold_pairs()
    with open(OUT, "w", encoding="utf-8") as f:
        f.write("// Generated by tools/gen_unicode_tables.py -- do not edit.\n")
        f.write(f"// Unicode data version {unicodedata.unidata_version}.\n\n")
        f.write(f"inline constexpr CodepointRange kAlnumRanges[{len(ranges)}] = {{\n")
        for lo, hi in ranges:
            f.write(f"    {{0x{lo:X}, 0x{hi:X}}},\n")
        f.write("};\n\n")
        f.write(f"inline constexpr FoldPair kFoldPairs[{len(pairs)}] = {{\n")
        for src, dst in pairs:
            f.write(f"    {{0x{src:X}, 0x{dst:X}}},\n")
        f.write("};\n")
    print(f"wrote {OUT}: {len(ranges)} alnum ranges, {len(pairs)} fold pairs",
          file=sys.stderr)


if __name__ == "__main__":
    main()

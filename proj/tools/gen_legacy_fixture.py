#!/usr/bin/env python3
# Copyright 2026 The bpy Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds the legacy-font test fixtures and their expected Unicode output.

The conversion here is written from scratch in Python (longest match,
pre-base vowel reordering, NFC via unicodedata) so the golden files do not
depend on the C++ converter they check.

    python3 tools/gen_legacy_fixture.py [--table data/smriti_sample.tsv] [--out tests/data]
"""

import argparse
import pathlib
import random
import unicodedata

ESCAPES = {"n": "\n", "r": "\r", "t": "\t", "s": " ", "\\": "\\"}


def unescape(field):
    out, i = [], 0
    while i < len(field):
        if field[i] == "\\":
            if field[i + 1] == "u":
                out.append(chr(int(field[i + 2:i + 6], 16)))
                i += 6
                continue
            out.append(ESCAPES[field[i + 1]])
            i += 2
        else:
            out.append(field[i])
            i += 1
    return "".join(out)


def load_table(path):
    rules = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        hexpat, output, kind = line.split("\t")
        pattern = bytes.fromhex(hexpat)
        rules[pattern] = ("" if output == "<del>" else unescape(output), kind)
    return rules


def is_consonant(ch):
    cp = ord(ch)
    return (0x0995 <= cp <= 0x09B9 or cp in (0x09CE, 0x09DC, 0x09DD, 0x09DF, 0x09F0, 0x09F1)) and \
        unicodedata.category(ch) == "Lo"


def convert(data, rules):
    longest = max(len(p) for p in rules)
    units = []  # (char, prebase)
    i = 0
    while i < len(data):
        for n in range(min(longest, len(data) - i), 0, -1):
            hit = rules.get(data[i:i + n])
            if hit is not None:
                output, kind = hit
                units.extend((ch, kind == "prevowel") for ch in output)
                i += n
                break
        else:
            raise ValueError(f"unmapped byte at {i}")

    out = []
    k = 0
    while k < len(units):
        if not units[k][1]:
            out.append(units[k][0])
            k += 1
            continue
        run = k
        while run < len(units) and units[run][1]:
            run += 1
        if run == len(units) or not is_consonant(units[run][0]):
            raise ValueError("pre-base vowel sign without a consonant")
        end = run + 1
        while end < len(units) and units[end][0] == "়":
            end += 1
        while end < len(units) and units[end][0] == "্":
            nxt = end + 1
            if nxt < len(units) and units[nxt][0] in "‌‍":
                nxt += 1
            if nxt >= len(units) or not is_consonant(units[nxt][0]):
                break
            end = nxt + 1
            while end < len(units) and units[end][0] == "়":
                end += 1
        out.extend(u[0] for u in units[run:end])
        out.extend(u[0] for u in units[k:run])
        k = end
    return unicodedata.normalize("NFC", "".join(out))


CONSONANTS = b"kKgGVcCjJQtTdDNwWxXnpPbBmyrlSzshRFY"
CONJUNCTS = bytes(range(0xB0, 0xB8))
VOWELS = b"aAiIuUeEoOq"
POST_SIGNS = bytes([0xA1, 0xA3, 0xA4, 0xA5, 0xA6])
PRE_SIGNS = bytes([0xA2, 0xA7, 0xA8])
MARKS = bytes([0xAB, 0xAC, 0xAD])
VIRAMA = 0xAA


def onset(rng):
    if rng.random() < 0.12:
        return bytes([rng.choice(CONJUNCTS)])
    first = bytes([rng.choice(CONSONANTS)])
    if rng.random() < 0.1:
        return first + bytes([VIRAMA, rng.choice(CONSONANTS)])
    return first


def syllable(rng, initial):
    if initial and rng.random() < 0.15:
        s = bytes([rng.choice(VOWELS)])
    else:
        c = onset(rng)
        r = rng.random()
        if r < 0.3:
            s = c
        elif r < 0.55:
            s = c + bytes([rng.choice(POST_SIGNS)])
        elif r < 0.8:
            s = bytes([rng.choice(PRE_SIGNS)]) + c
        elif r < 0.9:
            s = bytes([0xA7]) + c + bytes([0xA1])  # o
        else:
            s = bytes([0xA7]) + c + bytes([0xA9])  # au
    if rng.random() < 0.08:
        s += bytes([rng.choice(MARKS)])
    return s


def word(rng):
    if rng.random() < 0.05:
        return bytes(rng.choice(b"0123456789") for _ in range(rng.randint(1, 4)))
    return b"".join(syllable(rng, i == 0) for i in range(rng.randint(1, 4)))


def line(rng):
    words = [word(rng) for _ in range(rng.randint(3, 12))]
    text = b""
    for i, w in enumerate(words):
        if i:
            text += b"-" if rng.random() < 0.03 else b" "
        text += w
        if i + 1 < len(words) and rng.random() < 0.08:
            text += b","
    text += rng.choice([b"|", b"|", b"|", b"||", b"?", b"!", b"."])
    return text + (b"\r\n" if rng.random() < 0.1 else b"\n")


SIXTY_RULE_SECTIONS = ("consonants", "independent vowels", "vowel signs", "virama")


def sixty_rule_table(table_path):
    """First four sections of the sample table: exactly 60 rules."""
    out, keep = [], True
    for text in table_path.read_text(encoding="utf-8").splitlines():
        if text.startswith("# ") and not text.startswith(("# name", "# version")) and \
                text[2:].split(";")[0].split(" ")[0] in ("conjunct", "digits", "punctuation"):
            keep = False
        if keep:
            out.append(text)
    return "\n".join(out) + "\n"


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--table", type=pathlib.Path, default=root / "data" / "smriti_sample.tsv")
    ap.add_argument("--out", type=pathlib.Path, default=root / "tests" / "data")
    ap.add_argument("--seed", type=int, default=20260417)
    args = ap.parse_args()

    rules = load_table(args.table)
    rng = random.Random(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)

    for name, count in (("legacy_1000", 1000), ("legacy_3line", 3)):
        data = b"".join(line(rng) for _ in range(count))
        (args.out / f"{name}.txt").write_bytes(data)
        (args.out / f"{name}.golden.txt").write_bytes(convert(data, rules).encode("utf-8"))

    sixty = sixty_rule_table(args.table)
    n = sum(1 for t in sixty.splitlines() if t.strip() and not t.startswith("#"))
    assert n == 60, n
    (args.out / "smriti_60.tsv").write_text(sixty, encoding="utf-8")


if __name__ == "__main__":
    main()

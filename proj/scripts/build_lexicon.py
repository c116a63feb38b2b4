#!/usr/bin/env python3
"""Builds data/lexicon.tsv from jieba's dict.txt (MIT licensed).

Keeps the N most frequent entries and folds jieba's ICTCLAS-style tags into
the closed tag set used by the segmenter.

usage: build_lexicon.py path/to/jieba/dict.txt [N] > data/lexicon.tsv
"""
import sys

TAG_MAP = {
    "NOUN": "n nr ns nt nz nrt nrfg ng j s f t tg g",
    "VERB": "v vn vg vd vi vq i",
    "ADJ": "a ad an ag b z zg",
    "ADV": "d df dg",
    "PRON": "r rr rz rg",
    "NUM": "m mq mg",
    "PART": "u uj ul uz ug uv ud y",
    "PREP": "p",
    "CONJ": "c",
}
FOLD = {tag: pos for pos, tags in TAG_MAP.items() for tag in tags.split()}


def main():
    path = sys.argv[1]
    limit = int(sys.argv[2]) if len(sys.argv) > 2 else 10000
    rows = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            parts = line.split()
            if len(parts) != 3:
                continue
            word, freq, tag = parts
            if not all("一" <= ch <= "鿿" for ch in word):
                continue
            rows.append((int(freq), word, FOLD.get(tag, "OTHER")))
    rows.sort(key=lambda r: (-r[0], r[1]))
    out = sorted(rows[:limit], key=lambda r: r[1])
    for freq, word, pos in out:
        sys.stdout.write(f"{word}\t{freq}\t{pos}\n")


if __name__ == "__main__":
    main()

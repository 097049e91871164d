#!/usr/bin/env python3
"""Regenerates drop_every_second_word_bleu.tsv from the fixture corpus.

Independent of the C++ code: simplifies with the drop-every-second-word
rule, tokenizes with a regex that agrees with the library tokenizer on the
fixture's plain text, and computes pooled BLEU-4 (no smoothing) per topic.
"""
import json
import math
import re
import sys
from collections import Counter
from pathlib import Path

HERE = Path(__file__).resolve().parent
CORPUS = HERE.parent / "data" / "fixture_corpus.jsonl"


def tokens(text):
    return re.findall(r"\w+|[^\w\s]", text.lower())


def drop_every_second_word(text):
    return " ".join(text.split()[0::2])


def ngrams(toks, n):
    return Counter(tuple(toks[i:i + n]) for i in range(len(toks) - n + 1))


def main():
    topics, aligns = {}, []
    for line in CORPUS.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        if rec["record_type"] == "topic":
            topics[rec["topic_id"]] = rec["levels"]
        else:
            aligns.append(rec)

    stats = {}
    for a in aligns:
        if (a["complex_level"], a["simple_level"]) != ("upper_secondary", "primary"):
            continue
        levels = topics[a["topic_id"]]
        src = levels["upper_secondary"][a["complex_idx"]]
        ref = tokens(levels["primary"][a["simple_idx"]])
        cand = tokens(drop_every_second_word(src))
        s = stats.setdefault(a["topic_id"], {"m": [0] * 4, "t": [0] * 4, "c": 0, "r": 0})
        for n in range(1, 5):
            cc, rc = ngrams(cand, n), ngrams(ref, n)
            s["m"][n - 1] += sum(min(c, rc[g]) for g, c in cc.items())
            s["t"][n - 1] += sum(cc.values())
        s["c"] += len(cand)
        s["r"] += len(ref)

    rows = []
    for topic, s in stats.items():
        logs = [math.log(m / t) for m, t in zip(s["m"], s["t"]) if t > 0 and m > 0]
        if any(t > 0 and m == 0 for m, t in zip(s["m"], s["t"])):
            score = 0.0
        else:
            used = sum(1 for t in s["t"] if t > 0)
            bp = 1.0 if s["c"] >= s["r"] else math.exp(1 - s["r"] / s["c"])
            score = bp * math.exp(sum(logs) / used)
        rows.append((topic, score))
    rows.sort(key=lambda r: (-r[1], r[0]))

    out = ["topic\tscore"] + [f"{t}\t{v:.3f}" for t, v in rows[:5]]
    sys.stdout.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main()

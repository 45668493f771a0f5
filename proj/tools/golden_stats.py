#!/usr/bin/env python3
# Copyright 2026 The nlunoise Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Standalone recomputation of a stats row (Utt, IC, SL, SV, BLEU).

Shares no code with the C++ library; used to produce golden values for the
committed fixtures.

  python3 tools/golden_stats.py DATASET [REFERENCE]
"""

import math
import sys
from collections import Counter


def read_conll(path):
    utts, cur = [], None
    for raw in open(path, encoding="utf-8"):
        line = raw.rstrip("\n")
        if not line.strip():
            cur = None
            continue
        if line.startswith("# ") or (line.startswith("#") and "\t" not in line):
            key, _, val = line[2:].partition(":")
            if key.strip() == "id":
                cur = {"id": val.strip(), "intent": None, "tokens": [], "tags": []}
                utts.append(cur)
            elif key.strip() == "intent" and cur is not None:
                cur["intent"] = val.strip()
            continue
        tok, tag = line.split("\t")
        cur["tokens"].append(tok)
        cur["tags"].append(tag)
    return utts


def spans(tokens, tags):
    out, label, start = [], None, None
    for i, tag in enumerate(tags + ["O"]):
        cont = tag.startswith("I-") and label == tag[2:]
        if label is not None and not cont:
            out.append((label, " ".join(tokens[start:i])))
            label = None
        if tag != "O" and not cont:
            label, start = tag[2:], i
    return out


def sentence_bleu(hyp, ref, max_order=4, eps=1e-9):
    if not hyp:
        return 0.0
    order = min(max_order, len(hyp), len(ref))
    logs = 0.0
    for n in range(1, order + 1):
        h = Counter(tuple(hyp[i:i + n]) for i in range(len(hyp) - n + 1))
        r = Counter(tuple(ref[i:i + n]) for i in range(len(ref) - n + 1))
        m = sum(min(c, r[g]) for g, c in h.items())
        logs += math.log((m if m else eps) / (len(hyp) - n + 1))
    bp = 1.0 if len(hyp) > len(ref) else math.exp(1 - len(ref) / len(hyp))
    return bp * math.exp(logs / order)


def main():
    data = read_conll(sys.argv[1])
    intents = {u["intent"] for u in data}
    labels, values = set(), set()
    for u in data:
        for lab, val in spans(u["tokens"], u["tags"]):
            labels.add(lab)
            values.add(val)
    bleu = 1.0
    if len(sys.argv) > 2:
        ref = {u["id"]: u for u in read_conll(sys.argv[2])}
        bleu = sum(sentence_bleu(u["tokens"], ref[u["id"]]["tokens"])
                   for u in data) / len(data)
    print("Utt\tIC\tSL\tSV\tBLEU")
    print(f"{len(data)}\t{len(intents)}\t{len(labels)}\t{len(values)}\t{bleu:.12f}")


if __name__ == "__main__":
    main()

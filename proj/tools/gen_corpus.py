#!/usr/bin/env python3
"""Regenerates the pseudo-random part of the bundled diagram corpus.

Diagrams are braid closures, which are always valid planar diagrams. Arc
labels are assigned by tracing each component, giving the ascending-run
numbering the PD parser expects. The seed is fixed so the corpus is
reproducible byte for byte.
"""
import random
from pathlib import Path

SEED = 20260825
COUNT = 20
MAX_CROSSINGS = 10


def braid_closure_pd(strands, word):
    """PD code of the closure of a braid word (entries +-i for generator i)."""
    segs = 0

    def new():
        nonlocal segs
        segs += 1
        return segs

    top = [new() for _ in range(strands)]
    cur = top[:]
    crossings = []
    succ = {}
    for g in word:
        i = abs(g) - 1
        left, right = cur[i], cur[i + 1]
        left2, right2 = new(), new()
        succ[left] = right2
        succ[right] = left2
        if g > 0:
            # left strand passes over: under-strand enters at slot 0 = left input
            crossings.append((left, right, right2, left2))
        else:
            crossings.append((right, right2, left2, left))
        cur[i], cur[i + 1] = left2, right2

    # the closure identifies the bottom of each strand with its top
    parent = list(range(segs + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in range(strands):
        parent[find(cur[s])] = find(top[s])

    arc_succ = {find(a): find(b) for a, b in succ.items()}

    label = {}
    nxt = 1
    for c in crossings:
        for s in c:
            r = find(s)
            if r in label:
                continue
            x = r
            while x not in label:
                label[x] = nxt
                nxt += 1
                x = arc_succ[x]
    return " ".join("X(%d,%d,%d,%d)" % tuple(label[find(s)] for s in c)
                    for c in crossings)


def main():
    rng = random.Random(SEED)
    out = Path(__file__).resolve().parent.parent / "corpus"
    made = 0
    # longer words only on wider braids: few-strand closures maximize the
    # circle count per resolution and blow up the verify budget
    max_length = {2: 6, 3: 9, 4: MAX_CROSSINGS}
    while made < COUNT:
        strands = rng.randint(2, 4)
        length = rng.randint(3, max_length[strands])
        word = [rng.choice([1, -1]) * rng.randint(1, strands - 1)
                for _ in range(length)]
        touched = set()
        for g in word:
            touched.update((abs(g), abs(g) + 1))
        if touched != set(range(1, strands + 1)):
            continue  # an untouched strand would close into a bare loop
        pd = braid_closure_pd(strands, word)
        name = "random_%02d.pd" % made
        body = "# closure of a %d-strand braid, word %s\n%s\n" % (
            strands, " ".join(str(g) for g in word), pd)
        (out / name).write_text(body)
        made += 1
    print("wrote %d diagrams to %s" % (made, out))


if __name__ == "__main__":
    main()

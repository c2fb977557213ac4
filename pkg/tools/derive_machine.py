"""Regenerate src/qplink/data/machine.json.

The machine tracks, between consecutive twist boxes of the 4-plat
s2^r1 s3^r2 s2^r3 ..., the vertical direction of the strands at positions
2, 3, 4 relative to the strand at position 1 (always "+").  A box on two
parallel strands is positive only for r > 0 and then leaves the state alone
whatever the parity ("a"); a box on antiparallel strands needs r < 0, and an
odd r swaps the two directions ("-o") while an even one does not ("-e").

Run from the repository root:  python tools/derive_machine.py
"""

from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "qplink" / "data" / "machine.json"


def name(d: tuple[int, int, int, int], g: int) -> str:
    return "".join("+" if x > 0 else "-" for x in d) + f"/s{g}"


def closes(d, last_gen: int) -> bool:
    # last box s2: n odd, bottom caps (1,2),(3,4); last box s3: caps (1,4),(2,3)
    if last_gen == 2:
        return d[0] != d[1] and d[2] != d[3]
    return d[0] != d[3] and d[1] != d[2]


def derive() -> dict:
    sources = [(1, -1, 1, -1), (1, -1, -1, 1)]
    todo = [(d, 2) for d in sources]
    seen = set(todo)
    edges = []
    while todo:
        d, g = todo.pop(0)
        a, b = g - 1, g  # 0-based positions of the box
        nxt = 3 if g == 2 else 2
        if d[a] == d[b]:
            targets = [(d, f"s{g}^a")]
        else:
            swapped = list(d)
            swapped[a], swapped[b] = d[b], d[a]
            targets = [(d, f"s{g}^-e"), (tuple(swapped), f"s{g}^-o")]
        for t, label in targets:
            edges.append({"from": name(d, g), "to": name(t, nxt), "label": label})
            if (t, nxt) not in seen:
                seen.add((t, nxt))
                todo.append((t, nxt))
    states = sorted(name(d, g) for d, g in seen)
    # a state d/s3 is reached right after an s2 box, d/s2 right after an s3 box
    sinks = sorted(name(d, g) for d, g in seen if closes(d, 2 if g == 3 else 3))
    alt = (1, -1, 1, -1)
    sub = [e for e in edges if e["label"].endswith("^-e") and e["from"].startswith("+-+-")
           and e["to"].startswith("+-+-")]
    return {
        "states": states,
        "edges": edges,
        "sources": [name(d, 2) for d in sources],
        "sinks": sinks,
        "submachine_edges": sub,
        "submachine_sources": [name(alt, 2)],
    }


if __name__ == "__main__":
    OUT.write_text(json.dumps(derive(), indent=1) + "\n")
    print(f"wrote {OUT}")

"""Dehornoy handle reduction, used as an independent test for trivial braids.

A handle is a subword s_i^e u s_i^-e where u only uses generators above i.
Reducing the leftmost-closing handle (which contains no other handle) always
terminates, and a word represents the identity iff it reduces to the empty word.
"""

from __future__ import annotations

from .braid_core import BraidWord, Letter, compose


def _first_handle(letters: list[Letter]) -> tuple[int, int] | None:
    for k, (i, e) in enumerate(letters):
        for j in range(k - 1, -1, -1):
            g, f = letters[j]
            if g < i:
                break
            if g == i:
                if f == -e:
                    return j, k
                break
    return None


def handle_reduce(w: BraidWord, max_steps: int = 200_000) -> BraidWord:
    letters = list(w.letters)
    for _ in range(max_steps):
        h = _first_handle(letters)
        if h is None:
            return BraidWord(w.strands, tuple(letters))
        j, k = h
        i, e = letters[j]
        middle: list[Letter] = []
        for g, d in letters[j + 1:k]:
            if g == i + 1:
                middle += [(i + 1, -e), (i, d), (i + 1, e)]
            else:
                middle.append((g, d))
        letters = letters[:j] + middle + letters[k + 1:]
    raise RuntimeError("handle reduction did not finish within the step budget")


def is_trivial_by_handles(w: BraidWord) -> bool:
    return len(handle_reduce(w)) == 0


def equal_by_handles(a: BraidWord, b: BraidWord) -> bool:
    return is_trivial_by_handles(compose(a, b.inverse()))

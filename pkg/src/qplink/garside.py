"""Left-greedy Garside normal form in B_n.

Simple elements (positive permutation braids) are stored as tuples ``arr``
where ``arr[pos]`` is the starting position (0-based) of the strand found at
``pos`` after the factor.  Appending s_i swaps ``arr[i-1], arr[i]``; left
multiplication by s_i swaps the values ``i-1`` and ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid_core import BraidWord
from .errors import DomainError

Simple = tuple[int, ...]


def _delta(n: int) -> Simple:
    return tuple(range(n - 1, -1, -1))


def _tau(a: Simple) -> Simple:
    n = len(a)
    return tuple(n - 1 - a[n - 1 - p] for p in range(n))


def _right_desc(a: Simple, i: int) -> bool:
    # i is 0-based: generator s_{i+1}
    return a[i] > a[i + 1]


def _left_desc(b: Simple, i: int) -> bool:
    return b.index(i + 1) < b.index(i)


def _times_gen(a: Simple, i: int) -> Simple:
    x = list(a)
    x[i], x[i + 1] = x[i + 1], x[i]
    return tuple(x)


def _gen_inv_times(b: Simple, i: int) -> Simple:
    return tuple(i + 1 if v == i else i if v == i + 1 else v for v in b)


def _left_weight(a: Simple, b: Simple) -> tuple[Simple, Simple]:
    """Move generators from the front of b to the end of a until R(a) contains L(b)."""
    n = len(a)
    while True:
        for i in range(n - 1):
            if _left_desc(b, i) and not _right_desc(a, i):
                a, b = _times_gen(a, i), _gen_inv_times(b, i)
                break
        else:
            return a, b


@dataclass(frozen=True)
class NormalForm:
    strands: int
    inf: int
    factors: tuple[Simple, ...]

    def to_json(self) -> dict:
        return {"inf": self.inf, "factors": [[v + 1 for v in f] for f in self.factors]}

    @property
    def sup(self) -> int:
        return self.inf + len(self.factors)


def normal_form(w: BraidWord) -> NormalForm:
    n = w.strands
    ident = tuple(range(n))
    delta = _delta(n)
    # w = Delta^-m * P, with P a product of simple factors.  Each negative
    # letter s_i^-1 = Delta^-1 (Delta s_i^-1); pushing Delta^-1 to the front
    # applies tau to everything already written, tracked lazily by parity.
    raw: list[tuple[Simple, int]] = []
    m = 0
    for i, e in w.letters:
        if e > 0:
            raw.append((_times_gen(ident, i - 1), m))
        else:
            m += 1
            raw.append((_times_gen(delta, i - 1), m))
    factors = [f if (m - t) % 2 == 0 else _tau(f) for f, t in raw]

    changed = True
    while changed:
        changed = False
        for k in range(len(factors) - 1):
            a, b = _left_weight(factors[k], factors[k + 1])
            if (a, b) != (factors[k], factors[k + 1]):
                factors[k], factors[k + 1] = a, b
                changed = True
    lead = 0
    while lead < len(factors) and factors[lead] == delta:
        lead += 1
    tail = len(factors)
    while tail > lead and factors[tail - 1] == ident:
        tail -= 1
    return NormalForm(n, lead - m, tuple(factors[lead:tail]))


def braids_equal(a: BraidWord, b: BraidWord) -> bool:
    if a.strands != b.strands:
        raise DomainError(f"strand mismatch: B_{a.strands} vs B_{b.strands}")
    return normal_form(a) == normal_form(b)


def is_trivial(w: BraidWord) -> bool:
    nf = normal_form(w)
    return nf.inf == 0 and not nf.factors

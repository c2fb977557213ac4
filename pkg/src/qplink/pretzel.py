"""Pretzel tuples P(t1, ..., tp): surface and positivity criteria, good order,
Seifert invariants of the double branched cover, and the Brieskorn test."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DomainError


@dataclass(frozen=True)
class PretzelTuple:
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(x) for x in self.entries)
        if len(entries) < 3:
            raise DomainError(f"pretzel tuple needs p >= 3 entries, got {len(entries)}")
        object.__setattr__(self, "entries", entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def _entries(t) -> tuple[int, ...]:
    return t.entries if isinstance(t, PretzelTuple) else PretzelTuple(tuple(t)).entries


def surface_orientable(t) -> bool:
    t = _entries(t)
    return len({x % 2 for x in t}) == 1


def surface_quasipositive(t) -> bool:
    t = _entries(t)
    return surface_orientable(t) and all(a + b < 0 for a, b in combinations(t, 2))


def has_positive_orientation(t) -> bool:
    t = _entries(t)
    all_odd_negative = all(x % 2 and x < 0 for x in t)
    no_odd_negative = not any(x % 2 and x < 0 for x in t)
    return all_odd_negative or (no_odd_negative and sum(x > 0 for x in t) % 2 == 0)


def qp_not_strong_family(t) -> bool:
    """Is t a permutation of (2n+1, -(2n+1), -2m) with m, n > 0?"""
    t = _entries(t)
    if len(t) != 3:
        return False
    for a in t:
        if a >= 3 and a % 2:
            rest = list(t)
            rest.remove(a)
            if -a in rest:
                rest.remove(-a)
                c = rest[0]
                return c < 0 and c % 2 == 0
    return False


@dataclass(frozen=True)
class GoodOrder:
    entries: tuple[int, ...]
    q: int
    r: int
    s: int

    def to_json(self) -> dict:
        return {"entries": list(self.entries), "q": self.q, "r": self.r, "s": self.s}


def good_order(t) -> GoodOrder:
    """Entries > 1, then entries < -1, then entries +-1, each block in input order."""
    t = _entries(t)
    if 0 in t:
        raise DomainError("good order is undefined for a zero entry")
    big = [x for x in t if x > 1]
    neg = [x for x in t if x < -1]
    ones = [x for x in t if abs(x) == 1]
    return GoodOrder(tuple(big + neg + ones), len(big), len(neg), len(ones))


@dataclass(frozen=True)
class SeifertData:
    raw_vector: tuple[Fraction, ...]
    data_vector: tuple[Fraction, ...]
    notation: str
    order: GoodOrder

    def to_json(self) -> dict:
        return {
            "raw_vector": [str(x) for x in self.raw_vector],
            "data_vector": [str(x) for x in self.data_vector],
            "notation": self.notation,
            "good_order": self.order.to_json(),
        }


def _fiber_key(x: int) -> tuple[int, int]:
    return (-abs(x), -x)


def seifert_data(t) -> SeifertData:
    """Seifert invariants of the double branched cover.

    The raw vector is (0; 1/t1, ..., 1/tp) with the entries grouped as entries
    > 1, then < -1, then +-1, each group sorted by decreasing |t|.  The data
    vector and notation drop the +-1 group, so the result does not depend on
    the order of t.
    """
    g = good_order(t)
    big = sorted(g.entries[:g.q], key=_fiber_key)
    neg = sorted(g.entries[g.q:g.q + g.r], key=_fiber_key)
    ones = sorted(g.entries[g.q + g.r:], key=_fiber_key)
    raw = (Fraction(0),) + tuple(Fraction(1, x) for x in big + neg + ones)
    data = (Fraction(0), Fraction(-g.r)) + tuple(Fraction(1, x) for x in big) + tuple(1 + Fraction(1, x) for x in neg)
    fibers = [f"({x},1)" for x in big] + [f"({-x},{-1 - x})" for x in neg]
    notation = f"M(O,o;0;{-g.r};" + ",".join(fibers) + ")"
    return SeifertData(raw, data, notation, g)


def brieskorn_check(l: int, m: int, n: int) -> int | None:
    """Return eps when l*m + l*n - m*n = eps in {-1, 1} and l = 1 + eps (mod 2)."""
    if min(l, m, n) <= 0:
        raise DomainError("Brieskorn exponents must be positive")
    eps = l * m + l * n - m * n
    if eps in (-1, 1) and (l - 1 - eps) % 2 == 0:
        return eps
    return None


@dataclass(frozen=True)
class PretzelClassification:
    entries: tuple[int, ...]
    orientable: bool
    qp_surface: bool
    positive: bool
    qp_not_strong: bool
    strongly_qp_certified: bool
    unknown: bool

    def to_json(self) -> dict:
        return {
            "entries": list(self.entries),
            "orientable": self.orientable,
            "qp_surface": self.qp_surface,
            "positive": self.positive,
            "qp_not_strong": self.qp_not_strong,
            "sqp_certified": self.strongly_qp_certified,
            "unknown": self.unknown,
        }


def classify(t) -> PretzelClassification:
    """Independent certificates; strong quasipositivity without one of them is unknown."""
    t = _entries(t)
    qp_surf = surface_quasipositive(t)
    pos = has_positive_orientation(t)
    nonstrong = qp_not_strong_family(t)
    sqp = qp_surf or pos
    return PretzelClassification(t, surface_orientable(t), qp_surf, pos, nonstrong, sqp,
                                 not (sqp or nonstrong))

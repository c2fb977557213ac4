"""Rational (2-bridge) links: continued fractions, lens spaces and the
positivity machine for 4-plats s2^r1 s3^r2 s2^r3 ..."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from math import gcd
from typing import Sequence

from .errors import DomainError, ParseError


@dataclass(frozen=True)
class RationalTuple:
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(x) for x in self.entries)
        if not entries:
            raise DomainError("rational tuple needs at least one entry")
        if any(x == 0 for x in entries):
            raise DomainError(f"rational tuple entries must be nonzero: {entries}")
        object.__setattr__(self, "entries", entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def _as_tuple(r) -> RationalTuple:
    return r if isinstance(r, RationalTuple) else RationalTuple(tuple(r))


def continued_fraction(r) -> tuple[int, int]:
    """P/Q = r1 + 1/(-r2 + 1/(r3 + ... + 1/((-1)^(n-1) rn))), as coprime integers.

    Evaluated as a product of matrices [[a, 1], [1, 0]]; the sign of P carries
    the sign of the fraction (Q > 0 unless Q = 0).
    """
    r = _as_tuple(r).entries
    a = [x if k % 2 == 0 else -x for k, x in enumerate(r)]
    num, den = a[-1], 1
    for k in range(len(a) - 2, -1, -1):
        if num == 0:
            raise DomainError(f"continued fraction divides by zero: suffix {r[k + 1:]} evaluates to 0")
        num, den = a[k] * num + den, num
    if den < 0:
        num, den = -num, -den
    return num, den


@dataclass(frozen=True)
class LensSpace:
    """L(P, Q) with 0 <= Q < P and gcd(P, Q) = 1; P = 0 stands for S^1 x S^2."""

    P: int
    Q: int

    def __post_init__(self) -> None:
        if self.P < 0:
            raise DomainError("lens space needs P >= 0")
        if self.P == 0:
            if self.Q != 1:
                object.__setattr__(self, "Q", 1)
            return
        if not 0 <= self.Q < self.P or gcd(self.P, self.Q) != 1:
            raise DomainError(f"L({self.P},{self.Q}) is not in canonical form")

    @classmethod
    def normalized(cls, P: int, Q: int) -> "LensSpace":
        if P < 0:
            P, Q = -P, -Q
        if P == 0:
            return cls(0, 1)
        return cls(P, Q % P)

    @property
    def is_s1xs2(self) -> bool:
        return self.P == 0

    def to_json(self) -> dict:
        return {"kind": "LensSpace", "P": self.P, "Q": self.Q}


def lens_space(r) -> LensSpace:
    P, Q = continued_fraction(r)
    return LensSpace.normalized(P, Q)


def lens_equivalent(a: LensSpace, b: LensSpace, oriented: bool = False) -> bool:
    """Unoriented by default: Q' = +-Q^(+-1) mod P.  ``oriented`` drops the sign."""
    if a.P != b.P:
        return False
    P = a.P
    if P <= 2:
        return True
    q_inv = pow(a.Q, -1, P)
    allowed = {a.Q % P, q_inv}
    if not oriented:
        allowed |= {(-a.Q) % P, (-q_inv) % P}
    return b.Q % P in allowed


# -------------------------------------------------------------------- machine

@dataclass(frozen=True)
class MachineDFA:
    states: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]
    sources: frozenset[str]
    sinks: frozenset[str]
    submachine_edges: tuple[tuple[str, str, str], ...]
    submachine_sources: frozenset[str]

    @classmethod
    def from_json(cls, data: dict) -> "MachineDFA":
        try:
            edges = tuple((e["from"], e["to"], e["label"]) for e in data["edges"])
            sub = tuple((e["from"], e["to"], e["label"]) for e in data["submachine_edges"])
            m = cls(tuple(data["states"]), edges, frozenset(data["sources"]), frozenset(data["sinks"]),
                    sub, frozenset(data.get("submachine_sources", data["sources"])))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed machine table: {exc}") from exc
        known = set(m.states)
        for f, t, label in edges + sub:
            if f not in known or t not in known:
                raise ParseError(f"machine edge {f}->{t} uses an unknown state")
            _parse_label(label)
        if not set(sub) <= set(edges):
            raise ParseError("submachine edges must be machine edges")
        return m

    def run(self, r: Sequence[int], sub: bool = False) -> bool:
        edges = self.submachine_edges if sub else self.edges
        current = set(self.submachine_sources if sub else self.sources)
        for k, x in enumerate(r):
            g = 2 if k % 2 == 0 else 3
            current = {t for f, t, label in edges if f in current and _matches(label, g, x)}
            if not current:
                return False
        return bool(current & self.sinks) and len(r) > 0


def _parse_label(label: str) -> tuple[int, int, str]:
    """'s2^-e' -> (2, -1, 'e').  Letters: a any, e even, o odd; magnitude >= 1."""
    try:
        sym, exp = label.split("^")
        g = int(sym.lstrip("s"))
        sign = -1 if exp.startswith("-") else 1
        kind = exp.lstrip("-+")
    except ValueError as exc:
        raise ParseError(f"bad machine label {label!r}") from exc
    if kind not in ("a", "e", "o"):
        raise ParseError(f"bad machine label {label!r}")
    return g, sign, kind


def _matches(label: str, g: int, x: int) -> bool:
    lg, sign, kind = _parse_label(label)
    if lg != g or x * sign <= 0:
        return False
    return kind == "a" or (kind == "e") == (x % 2 == 0)


MACHINE_ENV = "QPLINK_MACHINE_TABLE"


@lru_cache(maxsize=None)
def _load(path: str | None) -> MachineDFA:
    if path:
        with open(path) as fh:
            return MachineDFA.from_json(json.load(fh))
    text = resources.files("qplink").joinpath("data/machine.json").read_text()
    return MachineDFA.from_json(json.loads(text))


def machine() -> MachineDFA:
    return _load(os.environ.get(MACHINE_ENV) or None)


def machine_accepts(r) -> bool:
    return machine().run(_as_tuple(r).entries)


def submachine_accepts(r) -> bool:
    return machine().run(_as_tuple(r).entries, sub=True)


class StickClass(str, Enum):
    VERY_STRONGLY_QP = "VeryStronglyQP"
    POSITIVE = "Positive"
    UNKNOWN = "Unknown"


def stick_classify(r) -> StickClass:
    if submachine_accepts(r):
        return StickClass.VERY_STRONGLY_QP
    if machine_accepts(r):
        return StickClass.POSITIVE
    return StickClass.UNKNOWN

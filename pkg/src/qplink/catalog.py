"""Closed-form facts about named families: partially reoriented Hopf links
H+-(p, q), unknotted twisted strips, annuli A(K, n), the Milnor number of a
braided fibre and the enhancement lambda."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import isqrt

from .braid_core import BandRepresentation, braided_surface
from .errors import DomainError, ParseError

UNKNOT_TB = -1


@dataclass(frozen=True)
class HopfSpec:
    """p fibres of the Hopf fibration with one orientation and q with the other;
    ``sign`` says which of the two orientations the p fibres carry."""

    sign: str
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.sign not in ("+", "-"):
            raise DomainError(f"sign must be '+' or '-', got {self.sign!r}")
        if not (self.p >= self.q >= 0 and self.p >= 1):
            raise DomainError(f"need p >= q >= 0 and p >= 1, got p={self.p}, q={self.q}")

    def __str__(self) -> str:
        return f"H{self.sign}({self.p},{self.q})"

    def to_json(self) -> dict:
        return {"sign": self.sign, "p": self.p, "q": self.q}


def parse_hopf(text: str) -> HopfSpec:
    """Read ``-,3,2`` or ``+ 4 0``."""
    m = re.fullmatch(r"\s*([+-])\s*[, ]\s*(\d+)\s*[, ]\s*(\d+)\s*", text.replace("−", "-"))
    if not m:
        raise ParseError(f"cannot read Hopf spec {text!r}; expected e.g. '-,3,2'")
    return HopfSpec(m.group(1), int(m.group(2)), int(m.group(3)))


def hopf_canonical(h: HopfSpec) -> HopfSpec:
    """Pick one representative for the two coincidences among small cases:
    the two unknots, and H+-(2,0) ~ H-+(1,1)."""
    key = (h.sign, h.p, h.q)
    if key == ("-", 1, 0):
        return HopfSpec("+", 1, 0)
    if key == ("-", 2, 0):
        return HopfSpec("+", 1, 1)
    if key == ("-", 1, 1):
        return HopfSpec("+", 2, 0)
    return h


def hopf_is_qp(h: HopfSpec) -> bool:
    if h.sign == "+":
        return h.q == 0
    return h.q == h.p or h.q == h.p - 1


def hopf_is_fibered(h: HopfSpec) -> bool:
    h = hopf_canonical(h)
    return h.p > h.q or (h.p, h.q) == (1, 1)


def hopf_named_qp_fibered(h: HopfSpec) -> str | None:
    """Name h if it is the unknot, the positive Hopf link, some H+(p,0) or some H-(p,p-1)."""
    c = hopf_canonical(h)
    if (c.sign, c.p, c.q) == ("+", 1, 0):
        return "trivial knot"
    if (c.sign, c.p, c.q) == ("+", 2, 0):
        return "positive Hopf link"
    if c.sign == "+" and c.q == 0:
        return f"H+({c.p},0)"
    if c.sign == "-" and c.q == c.p - 1:
        return f"H-({c.p},{c.q})"
    return None


@dataclass(frozen=True)
class HopfClassification:
    spec: HopfSpec
    canonical: HopfSpec
    qp: bool
    fibered: bool
    strongly_qp: bool | None  # None: no verdict available
    named: str | None

    def to_json(self) -> dict:
        return {"spec": self.spec.to_json(), "canonical": self.canonical.to_json(),
                "qp": self.qp, "fibered": self.fibered, "strongly_qp": self.strongly_qp,
                "named": self.named}


def hopf_classify(h: HopfSpec) -> HopfClassification:
    c = hopf_canonical(h)
    qp = hopf_is_qp(c)
    fibered = hopf_is_fibered(c)
    if not qp:
        sqp: bool | None = False
    elif c.sign == "+" and c.q == 0:
        sqp = True  # positive braid closures
    elif c.sign == "-" and c.q == c.p - 1 and c.p >= 2:
        # fibered with lambda = 2q - q^2; nonzero lambda rules out the tight
        # contact structure, and H-(3,2) is handled by the Thom argument
        sqp = False
    else:
        sqp = None
    return HopfClassification(h, c, qp, fibered, sqp, hopf_named_qp_fibered(h))


# ----------------------------------------------------------------- enhancement

def lambda_hminus(p: int, q: int) -> int:
    if not p > q >= 0:
        raise DomainError(f"lambda(H-(p,q)) needs p > q >= 0, got p={p}, q={q}")
    return 2 * q - q * q


def lambda_hminus_via_mirror(p: int) -> int:
    """lambda(H-(p,0)) from lambda + rho = mu, rho(L) = lambda(mirror L) and
    lambda = 0 on the algebraic link H+(p,0) = T(p,p), whose mu is (p-1)^2."""
    if p < 1:
        raise DomainError("need p >= 1")
    return (p - 1) ** 2


def mu_of_braided_fiber(b: BandRepresentation) -> int:
    surf = braided_surface(b)
    if not surf.connected:
        raise DomainError("disconnected Seifert surface: the closure is not fibered by it")
    return 1 - surf.total_euler


@dataclass(frozen=True)
class EnhancementRealization:
    """H-(q+1, q) connected with m copies of H-(2, 1)."""

    q: int
    m: int
    realized: int

    def to_json(self) -> dict:
        return {"q": self.q, "m": self.m, "lambda": self.realized}


def realize_enhancement(target: int) -> EnhancementRealization:
    """Fewest H-(2,1) summands first, then the smallest q."""
    if target >= 1:
        q = 1
    elif target == 0:
        q = 0
    else:
        # smallest q with 1 - (q-1)^2 <= target
        need = 1 - target
        root = isqrt(need)
        q = 1 + (root if root * root == need else root + 1)
    base = 2 * q - q * q
    return EnhancementRealization(q, target - base, target)


# ----------------------------------------------------------- strips, annuli

@dataclass(frozen=True)
class AnnulusVerdict:
    annulus_qp: bool
    boundary_sqp: bool
    tb: int

    def to_json(self) -> dict:
        return {"annulus_qp": self.annulus_qp, "boundary_sqp": self.boundary_sqp, "tb": self.tb}


def annulus_strongly_qp(tb_K: int | None, n: int, is_unknot: bool) -> AnnulusVerdict:
    """A(K, n): the annulus around K with n full twists.  tb_K is the maximal
    Thurston-Bennequin number, supplied by the caller (the unknot's is fixed)."""
    if is_unknot:
        return AnnulusVerdict(n <= UNKNOT_TB, n <= 0, UNKNOT_TB)
    if tb_K is None:
        raise DomainError("a knotted annulus needs its maximal Thurston-Bennequin number")
    ok = n <= tb_K
    return AnnulusVerdict(ok, ok, tb_K)


@dataclass(frozen=True)
class StripVerdict:
    strongly_qp: bool
    boundary: str
    s: int | None = None

    def to_json(self) -> dict:
        return {"sqp": self.strongly_qp, "boundary": self.boundary, "s": self.s}


def strip_boundary_classify(t: int, braidlike: bool) -> StripVerdict:
    """Boundary of an unknotted strip with t half twists."""
    if braidlike:
        return StripVerdict(t >= 0, f"T(2,{t})")
    if t % 2:
        raise DomainError("a non-braidlike strip needs an even number of half twists")
    s = t // 2
    return StripVerdict(t <= 0, f"boundary of A(O,{s})", s)


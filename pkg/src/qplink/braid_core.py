"""Braid words, positive bands, band representations and braided surfaces.

A braid on ``n`` strands is a word in the Artin generators ``s1 .. s(n-1)``.
Letters are pairs ``(i, e)`` with ``1 <= i <= n-1`` and ``e`` in ``{+1, -1}``.
``s_i`` with ``e = +1`` is drawn so that the strand entering at position
``i + 1`` passes over the strand entering at position ``i``; with the strands
oriented downward that crossing is right-handed.

Positions are 1-based everywhere in the public API.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import chain
from typing import Iterable, Sequence

from .errors import DomainError, ParseError

Letter = tuple[int, int]


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for i, e in letters:
        if out and out[-1] == (i, -e):
            out.pop()
        else:
            out.append((i, e))
    return tuple(out)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise DomainError(f"a braid needs at least one strand, got {self.strands}")
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if not 1 <= i <= self.strands - 1:
                raise DomainError(f"generator index {i} out of range for B_{self.strands}")
            if e not in (1, -1):
                raise DomainError(f"letter sign must be +1 or -1, got {e}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def identity(cls, n: int) -> "BraidWord":
        return cls(n, ())

    @classmethod
    def from_ints(cls, n: int, ints: Iterable[int]) -> "BraidWord":
        """Build from signed generator indices, e.g. ``[1, -2]`` is s1 s2^-1."""
        letters = []
        for k in ints:
            if k == 0:
                raise ParseError("generator index 0 is not allowed")
            letters.append((abs(k), 1 if k > 0 else -1))
        return cls(n, tuple(letters))

    def to_ints(self) -> list[int]:
        return [i * e for i, e in self.letters]

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return compose(self, other)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def reduced(self) -> "BraidWord":
        return BraidWord(self.strands, _free_reduce(self.letters))

    def power(self, k: int) -> "BraidWord":
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(k)).reduced()

    def shifted(self, offset: int, strands: int) -> "BraidWord":
        """Re-index every generator by ``offset`` inside a braid on ``strands`` strands."""
        return BraidWord(strands, tuple((i + offset, e) for i, e in self.letters))

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(f"s{i}" if e > 0 else f"s{i}^-1" for i, e in self.letters)


def gen(n: int, i: int, e: int = 1) -> BraidWord:
    return BraidWord(n, ((i, e),))


def word(n: int, *ints: int) -> BraidWord:
    return BraidWord.from_ints(n, ints)


_TOKEN = re.compile(r"^s(\d+)(?:\^(-?\d+))?$")


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``"s1 s2^-1 s1"`` or a signed integer list such as ``"1,-2,1"``.

    Powers ``s<i>^k`` are expanded.  When ``strands`` is omitted the smallest
    braid group containing every generator is used.
    """
    text = text.strip()
    ints: list[int] = []
    if text in ("", "e", "1"):
        ints = []
    elif text.startswith("s"):
        for tok in text.replace(",", " ").split():
            m = _TOKEN.match(tok)
            if not m:
                raise ParseError(f"bad braid token {tok!r}")
            i = int(m.group(1))
            k = int(m.group(2)) if m.group(2) is not None else 1
            if i == 0:
                raise ParseError("generator index 0 is not allowed")
            ints.extend([i if k > 0 else -i] * abs(k))
    else:
        text = text.strip("[]")
        try:
            ints = [int(tok) for tok in re.split(r"[,\s]+", text) if tok]
        except ValueError as exc:
            raise ParseError(f"bad braid word {text!r}") from exc
        if 0 in ints:
            raise ParseError("generator index 0 is not allowed")
    need = max((abs(k) for k in ints), default=0) + 1
    n = strands if strands is not None else need
    if n < need:
        raise ParseError(f"word uses s{need - 1} but only {n} strands were given")
    return BraidWord.from_ints(n, ints)


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    if a.strands != b.strands:
        raise DomainError(f"strand mismatch: B_{a.strands} vs B_{b.strands}")
    return BraidWord(a.strands, _free_reduce(chain(a.letters, b.letters)))


def exponent_sum(w: BraidWord) -> int:
    return sum(e for _, e in w.letters)


@dataclass(frozen=True)
class BraidPermutation:
    """Where each strand ends up: ``image[k-1]`` is the final position of the
    strand that starts at position ``k``.

    ``p * q`` means "first p, then q", matching the left-to-right reading of
    braid words, so ``permutation(a * b) == permutation(a) * permutation(b)``.
    """

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.image) != list(range(1, len(self.image) + 1)):
            raise DomainError(f"not a permutation: {self.image}")

    @classmethod
    def identity(cls, n: int) -> "BraidPermutation":
        return cls(tuple(range(1, n + 1)))

    def __call__(self, k: int) -> int:
        return self.image[k - 1]

    def __mul__(self, other: "BraidPermutation") -> "BraidPermutation":
        return BraidPermutation(tuple(other(self(k)) for k in range(1, len(self.image) + 1)))

    def inverse(self) -> "BraidPermutation":
        inv = [0] * len(self.image)
        for k, v in enumerate(self.image, start=1):
            inv[v - 1] = k
        return BraidPermutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, len(self.image) + 1):
            if start in seen:
                continue
            cyc = []
            k = start
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                k = self(k)
            out.append(tuple(cyc))
        return out


def permutation(w: BraidWord) -> BraidPermutation:
    # pos_of[s] = current position of the strand that started at s
    at = list(range(w.strands))  # at[pos] = starting position of strand there
    for i, _ in w.letters:
        at[i - 1], at[i] = at[i], at[i - 1]
    image = [0] * w.strands
    for pos, start in enumerate(at):
        image[start] = pos + 1
    return BraidPermutation(tuple(image))


# ---------------------------------------------------------------- full twists

def nabla(n: int) -> BraidWord:
    """The full twist on ``n`` strands, ((s1..s(n-1))(s1..s(n-2))..s1)^2."""
    if n < 1:
        raise DomainError("nabla needs n >= 1")
    half = [i for top in range(n - 1, 0, -1) for i in range(1, top + 1)]
    return BraidWord.from_ints(n, half * 2)


def nabla_block(i: int, j: int, n: int | None = None) -> BraidWord:
    """Full twist on strands ``i..j``, embedded in ``B_n`` (default ``n = j``)."""
    n = j if n is None else n
    if not 1 <= i <= j <= n:
        raise DomainError(f"need 1 <= i <= j <= n, got i={i}, j={j}, n={n}")
    return nabla(j - i + 1).shifted(i - 1, n)


def _ascending(start: int, length: int) -> list[int]:
    return list(range(start, start + length))


def _exchange(left: int, right: int) -> list[int]:
    """Blocks (s_l..s_{l+r-1})(s_{l-1}..s_{l+r-2})..(s_1..s_r) for l=left, r=right."""
    return [k for s in range(left, 0, -1) for k in _ascending(s, right)]


def hopf_factorization(p: int, q: int, variant: str = "first") -> BraidWord:
    """Factorization of the full twist on p+q strands through two smaller twists.

    ``first`` splits the strands as p | q.  ``second`` uses the split
    (p-q) | 2q and needs p >= q.
    """
    if not (p >= 1 and p >= q >= 0):
        raise DomainError(f"need p >= q >= 0 and p >= 1, got p={p}, q={q}")
    n = p + q
    if variant == "first":
        a, b = p, q
    elif variant == "second":
        a, b = p - q, 2 * q
    else:
        raise DomainError(f"unknown variant {variant!r}")
    parts: list[int] = []
    if a:
        parts += nabla_block(1, a, n).to_ints()
    if b:
        parts += nabla_block(a + 1, a + b, n).to_ints()
    if a and b:
        parts += _exchange(a, b) + _exchange(b, a)
    return BraidWord.from_ints(n, parts)


def verify_hopf_identity(p: int, q: int) -> bool:
    from .garside import braids_equal

    target = nabla(p + q)
    return all(braids_equal(target, hopf_factorization(p, q, v)) for v in ("first", "second"))


# ------------------------------------------------------------------- closures

def closure_components(w: BraidWord) -> int:
    return len(permutation(w).cycles())


def _component_of_start(w: BraidWord) -> list[int]:
    comp = [0] * w.strands
    for c, cyc in enumerate(permutation(w).cycles()):
        for k in cyc:
            comp[k - 1] = c
    return comp


def closure_linking_matrix(w: BraidWord) -> list[list[int]]:
    """Pairwise linking numbers of the closure; diagonal entries are 0.

    Components are numbered by the order of their smallest starting position.
    """
    comp = _component_of_start(w)
    m = max(comp) + 1 if comp else 0
    twice = [[0] * m for _ in range(m)]
    at = list(range(w.strands))
    for i, e in w.letters:
        a, b = comp[at[i - 1]], comp[at[i]]
        if a != b:
            twice[a][b] += e
            twice[b][a] += e
        at[i - 1], at[i] = at[i], at[i - 1]
    return [[v // 2 for v in row] for row in twice]


# ---------------------------------------------------------------------- bands

@dataclass(frozen=True)
class PositiveBand:
    """The positive band ``w s_i w^-1``."""

    conjugator: BraidWord
    index: int

    def __post_init__(self) -> None:
        n = self.conjugator.strands
        if not 1 <= self.index <= n - 1:
            raise DomainError(f"band index {self.index} out of range for B_{n}")

    @property
    def strands(self) -> int:
        return self.conjugator.strands

    def expansion(self) -> BraidWord:
        w = self.conjugator
        return BraidWord(w.strands, _free_reduce(chain(w.letters, ((self.index, 1),), w.inverse().letters)))

    def feet(self) -> tuple[int, int]:
        """The two strings (1-based) the band joins."""
        back = permutation(self.conjugator).inverse()
        return back(self.index), back(self.index + 1)

    def to_json(self) -> dict:
        return {"conjugator": self.conjugator.to_ints(), "index": self.index}


def band(n: int, conj: Sequence[int], index: int) -> PositiveBand:
    return PositiveBand(BraidWord.from_ints(n, conj), index)


def embedded_band(i: int, j: int, n: int) -> PositiveBand:
    """The band joining strings i < j that passes in front of the strings between them."""
    if not 1 <= i < j <= n:
        raise DomainError(f"embedded band needs 1 <= i < j <= n, got ({i}, {j}, {n})")
    return band(n, range(i, j - 1), j - 1)


@dataclass(frozen=True)
class BandRepresentation:
    strands: int
    bands: tuple[PositiveBand, ...] = ()

    def __post_init__(self) -> None:
        bands = tuple(self.bands)
        for b in bands:
            if b.strands != self.strands:
                raise DomainError(f"band lives in B_{b.strands}, representation in B_{self.strands}")
        object.__setattr__(self, "bands", bands)

    def __len__(self) -> int:
        return len(self.bands)

    def to_json(self) -> list[dict]:
        return [b.to_json() for b in self.bands]

    @classmethod
    def from_json(cls, data, strands: int | None = None) -> "BandRepresentation":
        """Accept a bare list of ``{conjugator, index}`` or ``{"strands": n, "bands": [...]}``."""
        if isinstance(data, dict):
            strands = data.get("strands", strands)
            data = data.get("bands", [])
        if not isinstance(data, list):
            raise ParseError("band representation must be a JSON list")
        try:
            raw = [(list(d["conjugator"]), int(d["index"])) for d in data]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed band entry: {exc}") from exc
        need = 1 + max((max([abs(k) for k in c] + [i]) for c, i in raw), default=0)
        n = need if strands is None else int(strands)
        if n < need:
            raise ParseError(f"bands need {need} strands, got {n}")
        return cls(n, tuple(band(n, c, i) for c, i in raw))


def brep_product(b: BandRepresentation) -> BraidWord:
    return BraidWord(b.strands, _free_reduce(chain.from_iterable(x.expansion().letters for x in b.bands)))


def append_band(b: BandRepresentation, extra: PositiveBand) -> BandRepresentation:
    return BandRepresentation(b.strands, b.bands + (extra,))


def band_slide(b: BandRepresentation, i: int) -> BandRepresentation:
    """Swap bands i, i+1 (0-based) as (x, y) -> (y, y^-1 x y); the product is unchanged."""
    bands = list(b.bands)
    x, y = bands[i], bands[i + 1]
    y_inv = y.expansion().inverse()
    slid = PositiveBand(compose(y_inv, x.conjugator), x.index)
    bands[i], bands[i + 1] = y, slid
    return BandRepresentation(b.strands, tuple(bands))


def connected_sum(a: BandRepresentation, b: BandRepresentation) -> BandRepresentation:
    """Place ``b`` to the right of ``a`` and join the two surfaces with one band."""
    n = a.strands + b.strands
    left = [PositiveBand(x.conjugator.shifted(0, n), x.index) for x in a.bands]
    right = [PositiveBand(x.conjugator.shifted(a.strands, n), x.index + a.strands) for x in b.bands]
    return BandRepresentation(n, tuple(left + right) + (band(n, [], a.strands),))


# ----------------------------------------------------------- braided surfaces

@dataclass(frozen=True)
class SurfaceComponent:
    strings: tuple[int, ...]
    euler: int
    boundary_count: int
    genus: int


@dataclass(frozen=True)
class BraidedSurfaceData:
    components: tuple[SurfaceComponent, ...]
    total_euler: int

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    def to_json(self) -> dict:
        return {
            "total_euler": self.total_euler,
            "components": [
                {"strings": list(c.strings), "euler": c.euler,
                 "boundary_count": c.boundary_count, "genus": c.genus}
                for c in self.components
            ],
        }


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def braided_surface(b: BandRepresentation) -> BraidedSurfaceData:
    n = b.strands
    parent = list(range(n))
    feet = [x.feet() for x in b.bands]
    for u, v in feet:
        ru, rv = _find(parent, u - 1), _find(parent, v - 1)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    roots: dict[int, list[int]] = {}
    for s in range(n):
        roots.setdefault(_find(parent, s), []).append(s + 1)
    band_count = {r: 0 for r in roots}
    for u, _ in feet:
        band_count[_find(parent, u - 1)] += 1
    cycle_count = {r: 0 for r in roots}
    for cyc in permutation(brep_product(b)).cycles():
        cycle_count[_find(parent, cyc[0] - 1)] += 1
    comps = []
    for r in sorted(roots):
        euler = len(roots[r]) - band_count[r]
        bdry = cycle_count[r]
        g2 = 2 - euler - bdry
        if g2 < 0 or g2 % 2:
            raise AssertionError(f"inconsistent surface data: euler={euler}, boundary={bdry}")
        comps.append(SurfaceComponent(tuple(roots[r]), euler, bdry, g2 // 2))
    return BraidedSurfaceData(tuple(comps), n - len(b.bands))


# -------------------------------------------------------------------- cabling

def _half_twist(base: int, n: int) -> list[int]:
    """Positive half twist on strands base+1..base+n, as signed letter indices."""
    return [base + k for a in range(n - 1, 0, -1) for k in range(1, a + 1)]


def _cable_letter(i: int, n: int) -> list[int]:
    # Push-offs are level sets of the defining function, offset by 1/f_z from
    # each string.  When two strings swap, that direction turns half a turn
    # backwards, so the rigid bundle crossing picks up a negative half twist
    # in each bundle.
    base = (i - 1) * n
    block = [base + n - a + k for a in range(n) for k in range(n)]
    untwist = [-x for x in reversed(_half_twist(base, n) + _half_twist(base + n, n))]
    return block + untwist


def _cable_word(w: BraidWord, n: int) -> BraidWord:
    if n == 1:
        return w
    ints: list[int] = []
    for i, e in w.letters:
        one = _cable_letter(i, n)
        ints.extend(one if e > 0 else [-x for x in reversed(one)])
    return BraidWord.from_ints(w.strands * n, ints)


def cable_copy(strand: int, n: int) -> int:
    """The parallel copy (0-based) that strand position ``strand`` belongs to.

    Slot order in a bundle flips from one bundle position to the next, so
    copy c sits at slot c in odd bundles and at slot n-1-c in even ones.
    """
    bundle, slot = divmod(strand - 1, n)
    return slot if bundle % 2 == 0 else n - 1 - slot


def cable_band_rep(b: BandRepresentation, n: int) -> BandRepresentation:
    """n parallel push-offs of the braided surface.

    A band w s_i w^-1 becomes n bands, one per copy, conjugated by the cabled
    conjugator.  Copy c joins the two bundles along the arc from slot n-c of
    bundle i to slot c+1 of bundle i+1, passing behind the inner strands on the
    left and in front of those on the right; outermost arc first.  Their product
    is the cabled letter, so the boundary is the cabled boundary braid.
    """
    if n < 1:
        raise DomainError("cable multiplicity must be >= 1")
    if n == 1:
        return b
    N = b.strands * n
    out = []
    for x in b.bands:
        cw = _cable_word(x.conjugator, n)
        base = (x.index - 1) * n
        for c in range(n - 1, -1, -1):
            left, right = base + n - c, base + n + c + 1
            arc = [-k for k in range(left, left + c)] + list(range(left + c, right - 1))
            out.append(PositiveBand(compose(cw, BraidWord.from_ints(N, arc)), right - 1))
    return BandRepresentation(N, tuple(out))


# ------------------------------------------------------------------ constants

def _b(conj: Sequence[int], index: int) -> PositiveBand:
    return band(4, conj, index)


def rho0() -> BandRepresentation:
    return BandRepresentation(4, (
        _b([-3, -3, 2], 1),
        _b([], 2),
        _b([1, 3, 3, 3], 2),
        _b([1, 3, 3, 3, 3, 3, -2], 1),
        _b([], 3),
        _b([], 3),
    ))


def rho1() -> BandRepresentation:
    t = [1, 3]
    return BandRepresentation(4, (
        _b([], 2),
        _b(t, 2),
        _b(t, 2),
        _b(t * 2, 2),
        _b(t * 2, 2),
        _b(t * 3, 2),
    ))


def extension_band() -> PositiveBand:
    """The band s1^3 s2 s1^-3; appending it to rho0 and rho1 keeps their products equal."""
    return _b([1, 1, 1], 2)


def trefoil() -> BandRepresentation:
    return BandRepresentation(2, (band(2, [], 1),) * 3)

"""PD-coded link diagrams.

Each crossing is a 4-tuple of edge labels listed counterclockwise, starting
from the incoming under-strand::

            c                 Sign convention (right-handed = +1):
            |
      d ----|---> b           over strand d -> b : +1
            |                 over strand b -> d : -1
            a  (under, a -> c)

Components that never meet a crossing are counted in ``free_loops``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import DomainError, ParseError

MAX_COMPONENTS = 20

HalfEdge = tuple[int, int]  # (crossing index, slot 0..3)


@dataclass(frozen=True)
class PDDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    free_loops: int = 0

    def __post_init__(self) -> None:
        xs = tuple(tuple(int(v) for v in x) for x in self.crossings)
        for x in xs:
            if len(x) != 4:
                raise ParseError(f"crossing {x} does not have four edges")
        object.__setattr__(self, "crossings", xs)
        if self.free_loops < 0:
            raise ParseError("free_loops must be non-negative")
        counts: dict[int, int] = {}
        for x in xs:
            for v in x:
                counts[v] = counts.get(v, 0) + 1
        bad = sorted(k for k, c in counts.items() if c != 2)
        if bad:
            raise ParseError(f"edge labels must appear exactly twice; offending labels {bad}")
        self._strands  # validates orientation consistency

    @classmethod
    def from_json(cls, data) -> "PDDiagram":
        try:
            if isinstance(data, str):
                data = json.loads(data)
            if isinstance(data, dict):
                return cls(tuple(map(tuple, data.get("crossings", []))), int(data.get("free_loops", 0)))
            return cls(tuple(map(tuple, data)))
        except (json.JSONDecodeError, TypeError) as exc:
            raise ParseError(f"malformed PD code: {exc}") from exc

    def to_json(self) -> dict:
        return {"crossings": [list(x) for x in self.crossings], "free_loops": self.free_loops}

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @cached_property
    def _partner(self) -> dict[HalfEdge, HalfEdge]:
        where: dict[int, list[HalfEdge]] = {}
        for k, x in enumerate(self.crossings):
            for s, v in enumerate(x):
                where.setdefault(v, []).append((k, s))
        out = {}
        for a, b in where.values():
            out[a], out[b] = b, a
        return out

    @cached_property
    def _strands(self) -> tuple[tuple[HalfEdge, ...], ...]:
        """Each component as the cyclic list of half-edges where it enters a crossing,
        in its reference direction."""
        partner = self._partner
        seen: set[HalfEdge] = set()
        comps = []
        entries = [(k, s) for k in range(len(self.crossings)) for s in range(4)]
        # components with an under-passage first get the direction a -> c
        starts = [(k, 0) for k in range(len(self.crossings))] + entries
        for h in starts:
            if h in seen or (h[0], (h[1] + 2) % 4) in seen:
                continue
            path = []
            cur = h
            while cur not in seen:
                seen.add(cur)
                path.append(cur)
                out = (cur[0], (cur[1] + 2) % 4)
                seen.add(out)
                cur = partner[out]
            if cur != h:
                raise ParseError("malformed PD: strand traversal does not close up")
            comps.append(tuple(path))
        for path in comps:
            for k, s in path:
                if s == 2:
                    raise ParseError(f"malformed PD: crossing {k} under-strand enters at slot c")
        return tuple(comps)

    @property
    def component_count(self) -> int:
        return len(self._strands) + self.free_loops

    @cached_property
    def _comp_of_entry(self) -> dict[HalfEdge, int]:
        return {h: c for c, path in enumerate(self._strands) for h in path}

    @cached_property
    def _crossing_info(self) -> tuple[tuple[int, int, int], ...]:
        """Per crossing: (under component, over component, reference sign)."""
        info = []
        ce = self._comp_of_entry
        for k in range(len(self.crossings)):
            under = ce[(k, 0)]
            if (k, 3) in ce:
                info.append((under, ce[(k, 3)], 1))
            else:
                info.append((under, ce[(k, 1)], -1))
        return tuple(info)

    def components(self) -> list[list[int]]:
        """Edge labels of each crossing component, in traversal order."""
        return [[self.crossings[k][s] for k, s in path] for path in self._strands]


@dataclass(frozen=True)
class OrientationAssignment:
    """Direction bit per crossing component (free loops need none); 0 keeps the
    reference direction.  Assignments differing by a global flip are one class."""

    bits: tuple[int, ...]

    def canonical(self) -> "OrientationAssignment":
        if self.bits and self.bits[0]:
            return OrientationAssignment(tuple(1 - b for b in self.bits))
        return self


@dataclass(frozen=True)
class SeifertData2D:
    seifert_circles: int
    crossings: int
    euler: int
    positive: bool

    def to_json(self) -> dict:
        return {"seifert_circles": self.seifert_circles, "crossings": self.crossings,
                "euler": self.euler, "positive": self.positive}


def _check_orientation(d: PDDiagram, o: OrientationAssignment) -> None:
    if len(o.bits) != len(d._strands) or any(b not in (0, 1) for b in o.bits):
        raise DomainError(f"orientation needs {len(d._strands)} bits of 0/1, got {o.bits}")


def crossing_signs(d: PDDiagram, o: OrientationAssignment) -> list[int]:
    _check_orientation(d, o)
    return [s * (-1 if o.bits[u] != o.bits[v] else 1) for u, v, s in d._crossing_info]


def seifert_algorithm(d: PDDiagram, o: OrientationAssignment) -> SeifertData2D:
    signs = crossing_signs(d, o)
    partner = d._partner
    ce = d._comp_of_entry
    incoming: set[HalfEdge] = set()
    for h, c in ce.items():
        incoming.add(h if not o.bits[c] else (h[0], (h[1] + 2) % 4))
    # oriented smoothing: an incoming end continues through the adjacent outgoing end
    seen: set[HalfEdge] = set()
    circles = 0
    for h in sorted(incoming):
        if h in seen:
            continue
        circles += 1
        cur = h
        while cur not in seen:
            seen.add(cur)
            k, s = cur
            nxt = (k, (s + 1) % 4)
            if nxt in incoming:
                nxt = (k, (s - 1) % 4)
            cur = partner[nxt]
    circles += d.free_loops
    c = d.crossing_count
    return SeifertData2D(circles, c, circles - c, all(x > 0 for x in signs))


def all_orientations(d: PDDiagram):
    m = len(d._strands)
    if m > MAX_COMPONENTS:
        raise DomainError(f"orientation search is capped at {MAX_COMPONENTS} components, diagram has {m}")
    if m == 0:
        yield OrientationAssignment(())
        return
    for rest in itertools.product((0, 1), repeat=m - 1):
        yield OrientationAssignment((0,) + rest)


def find_positive_orientation(d: PDDiagram) -> OrientationAssignment | None:
    """Lexicographically least projective class making every crossing positive."""
    info = d._crossing_info
    for o in all_orientations(d):
        b = o.bits
        if all(s * (-1 if b[u] != b[v] else 1) > 0 for u, v, s in info):
            return o
    return None


# --------------------------------------------------------------- determinant

def _faces(d: PDDiagram) -> list[list[HalfEdge]]:
    """Faces as lists of corners (k, j): the corner of crossing k between slots j and j+1."""
    partner = d._partner
    seen: set[HalfEdge] = set()
    faces = []
    for k in range(d.crossing_count):
        for s in range(4):
            if (k, s) in seen:
                continue
            face = []
            cur = (k, s)
            while cur not in seen:
                seen.add(cur)
                y, t = partner[cur]
                face.append((y, t))
                cur = (y, (t + 1) % 4)
            faces.append(face)
    return faces


def _connected(d: PDDiagram) -> bool:
    if d.crossing_count == 0:
        return d.free_loops <= 1
    if d.free_loops:
        return False
    parent = list(range(d.crossing_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, _), (b, _) in d._partner.items():
        parent[find(a)] = find(b)
    return len({find(k) for k in range(d.crossing_count)}) == 1


def goeritz_matrix(d: PDDiagram) -> list[list[int]]:
    """Unreduced Goeritz matrix over the shaded faces of a checkerboard colouring."""
    faces = _faces(d)
    c = d.crossing_count
    if len(faces) != c + 2:
        raise ParseError("malformed PD: diagram is not planar")
    face_of = {corner: f for f, face in enumerate(faces) for corner in face}
    color: dict[int, int] = {face_of[(0, 0)]: 0}
    stack = [face_of[(0, 0)]]
    while stack:
        f = stack.pop()
        for k, j in faces[f]:
            for dj in (1, 2, 3):
                g = face_of[(k, (j + dj) % 4)]
                want = color[f] ^ (dj % 2)
                if g not in color:
                    color[g] = want
                    stack.append(g)
                elif color[g] != want:
                    raise ParseError("malformed PD: no checkerboard colouring")
    shaded = sorted(f for f in color if color[f] == 0)
    idx = {f: i for i, f in enumerate(shaded)}
    m = len(shaded)
    g = [[0] * m for _ in range(m)]
    for k in range(c):
        if color[face_of[(k, 0)]] == 0:
            eta, f1, f2 = 1, face_of[(k, 0)], face_of[(k, 2)]
        else:
            eta, f1, f2 = -1, face_of[(k, 1)], face_of[(k, 3)]
        if f1 == f2:
            continue
        a, b = idx[f1], idx[f2]
        g[a][b] -= eta
        g[b][a] -= eta
        g[a][a] += eta
        g[b][b] += eta
    return g


def link_determinant(d: PDDiagram) -> int:
    """|det| of the reduced Goeritz matrix; 0 means the double cover has infinite H_1."""
    if not _connected(d):
        raise DomainError("determinant needs a connected diagram")
    if d.crossing_count == 0:
        return 1
    g = goeritz_matrix(d)
    if len(g) <= 1:
        return 1
    from sympy import Matrix

    return abs(int(Matrix([row[1:] for row in g[1:]]).det(method="bareiss")))


# ---------------------------------------------------------------- generators

# geometric slot order around a generated crossing, counterclockwise from SW
SW, SE, NE, NW = 0, 1, 2, 3


@dataclass
class _Plat:
    """Builds a PD code from caps, braid letters and cups on a row of strands."""

    strands: int
    links: list = field(default_factory=list)
    unders: list = field(default_factory=list)  # per crossing: the under diagonal
    current: dict = field(default_factory=dict)
    nodes: int = 0

    def _node(self):
        self.nodes += 1
        return ("n", self.nodes)

    def caps(self, pairs: Sequence[tuple[int, int]]) -> None:
        for a, b in pairs:
            u, v = self._node(), self._node()
            self.links.append((u, v))
            self.current[a], self.current[b] = u, v

    def letter(self, i: int, e: int) -> None:
        k = len(self.unders)
        # positive letter: the strand entering at i+1 (NE) passes over to SW
        self.unders.append((NW, SE) if e > 0 else (NE, SW))
        self.links.append((self.current[i], ("x", k, NW)))
        self.links.append((self.current[i + 1], ("x", k, NE)))
        self.current[i], self.current[i + 1] = ("x", k, SW), ("x", k, SE)

    def cups(self, pairs: Sequence[tuple[int, int]]) -> PDDiagram:
        for a, b in pairs:
            self.links.append((self.current[a], self.current[b]))
        return self._finish()

    def _finish(self) -> PDDiagram:
        adj: dict = {}
        for u, v in self.links:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        # resolve chains through cap/cup nodes into edges between crossing slots
        edge_of: dict = {}
        seen = set()
        free = 0
        labels = 0
        for start in sorted(n for n in adj if n[0] == "x"):
            if start in edge_of:
                continue
            prev, cur = start, adj[start][0]
            while cur[0] == "n":
                seen.add(cur)
                nxt = [w for w in adj[cur] if w != prev]
                prev, cur = cur, (nxt[0] if nxt else prev)
            labels += 1
            edge_of[start] = labels
            edge_of[cur] = labels
        loose = [n for n in adj if n[0] == "n" and n not in seen]
        seen_loose: set = set()
        for n in loose:
            if n in seen_loose:
                continue
            free += 1
            stack = [n]
            while stack:
                x = stack.pop()
                if x in seen_loose:
                    continue
                seen_loose.add(x)
                stack.extend(adj[x])
        geo = [[edge_of[("x", k, s)] for s in range(4)] for k in range(len(self.unders))]
        return _orient(geo, self.unders, free)


def _orient(geo: list[list[int]], unders: list[tuple[int, int]], free: int) -> PDDiagram:
    """Pick a direction for every component and rotate each crossing to start
    at its incoming under-strand; relabel edges along the traversal."""
    where: dict[int, list[HalfEdge]] = {}
    for k, x in enumerate(geo):
        for s, v in enumerate(x):
            where.setdefault(v, []).append((k, s))
    partner = {}
    for a, b in where.values():
        partner[a], partner[b] = b, a
    entering: set[HalfEdge] = set()
    order: list[int] = []
    visited: set[HalfEdge] = set()
    for k in range(len(geo)):
        for s in range(4):
            if (k, s) in visited:
                continue
            cur = (k, s)
            while cur not in visited:
                visited.add(cur)
                entering.add(cur)
                out = (cur[0], (cur[1] + 2) % 4)
                visited.add(out)
                order.append(geo[out[0]][out[1]])
                cur = partner[out]
    relabel = {v: i + 1 for i, v in enumerate(order)}
    crossings = []
    for k, x in enumerate(geo):
        u1, u2 = unders[k]
        start = u1 if (k, u1) in entering else u2
        crossings.append(tuple(relabel[x[(start + j) % 4]] for j in range(4)))
    return PDDiagram(tuple(crossings), free)


def plat_diagram(strands: int, top: Sequence[tuple[int, int]], letters: Sequence[tuple[int, int]],
                 bottom: Sequence[tuple[int, int]]) -> PDDiagram:
    p = _Plat(strands)
    p.caps(top)
    for i, e in letters:
        if not 1 <= i < strands:
            raise DomainError(f"letter s{i} out of range for {strands} strands")
        p.letter(i, e)
    return p.cups(bottom)


# Sign conventions for the twist boxes, pinned by the oracle tests: a pretzel
# box with t half-twists is s^(PRETZEL_SIGN * t); a rational box r is
# s^(RATIONAL_SIGN * r).
PRETZEL_SIGN = 1
RATIONAL_SIGN = 1


def _pretzel_caps(p: int) -> list[tuple[int, int]]:
    return [(1, 2 * p)] + [(2 * i, 2 * i + 1) for i in range(1, p)]


def pretzel_diagram(t: Sequence[int]) -> PDDiagram:
    t = list(t)
    if len(t) < 3:
        raise DomainError(f"pretzel needs at least 3 entries, got {len(t)}")
    p = len(t)
    letters = []
    for i, ti in enumerate(t, start=1):
        e = 1 if PRETZEL_SIGN * ti > 0 else -1
        letters += [(2 * i - 1, e)] * abs(ti)
    caps = _pretzel_caps(p)
    return plat_diagram(2 * p, caps, letters, caps)


def four_plat_letters(r: Sequence[int]) -> list[tuple[int, int]]:
    letters = []
    for k, rk in enumerate(r):
        g = 2 if k % 2 == 0 else 3
        e = 1 if RATIONAL_SIGN * rk > 0 else -1
        letters += [(g, e)] * abs(rk)
    return letters


def four_plat_bottom(n: int) -> list[tuple[int, int]]:
    return [(1, 2), (3, 4)] if n % 2 else [(1, 4), (2, 3)]


def four_plat_diagram(r: Sequence[int]) -> PDDiagram:
    r = list(r)
    if not r or any(x == 0 for x in r):
        raise DomainError("rational tuple needs n >= 1 nonzero entries")
    return plat_diagram(4, [(1, 2), (3, 4)], four_plat_letters(r), four_plat_bottom(len(r)))


def unknot_diagram() -> PDDiagram:
    return PDDiagram((), 1)

"""Weighted planar trees: stick/star decomposition and the positivity, very
strong quasipositivity and transplantation classifiers.

Text format: an s-expression ``(w child ...)`` such as ``(-2 (-2) (-2 (-2)))``.
Around a non-root vertex the cyclic order is (parent, children...).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Sequence

from .errors import DomainError, ParseError
from .rational import RationalTuple, StickClass, machine_accepts, stick_classify


@dataclass(frozen=True)
class WeightedPlanarTree:
    weights: tuple[int, ...]
    neighbors: tuple[tuple[int, ...], ...]  # cyclic order around each vertex

    def __post_init__(self) -> None:
        n = len(self.weights)
        if n == 0:
            raise DomainError("a tree needs at least one vertex")
        if len(self.neighbors) != n:
            raise DomainError("one neighbour list per vertex is required")
        edges = set()
        for v, nb in enumerate(self.neighbors):
            if len(set(nb)) != len(nb):
                raise DomainError(f"vertex {v} lists a neighbour twice")
            for u in nb:
                if not 0 <= u < n or u == v or v not in self.neighbors[u]:
                    raise DomainError(f"inconsistent edge {v}-{u}")
                edges.add(frozenset((u, v)))
        if len(edges) != n - 1:
            raise DomainError("not a tree: wrong edge count")
        seen = {0}
        stack = [0]
        while stack:
            for u in self.neighbors[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != n:
            raise DomainError("not a tree: disconnected")

    def __len__(self) -> int:
        return len(self.weights)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def is_node(self, v: int) -> bool:
        return self.degree(v) >= 3

    @property
    def nodes(self) -> list[int]:
        return [v for v in range(len(self)) if self.is_node(v)]

    def edges(self) -> list[tuple[int, int]]:
        return sorted((v, u) for v in range(len(self)) for u in self.neighbors[v] if v < u)

    def reflected(self) -> "WeightedPlanarTree":
        return WeightedPlanarTree(self.weights, tuple(tuple(reversed(nb)) for nb in self.neighbors))

    def relabeled(self, perm: Sequence[int]) -> "WeightedPlanarTree":
        """Vertex v becomes perm[v]."""
        n = len(self)
        w = [0] * n
        nb: list[tuple[int, ...]] = [()] * n
        for v in range(n):
            w[perm[v]] = self.weights[v]
            nb[perm[v]] = tuple(perm[u] for u in self.neighbors[v])
        return WeightedPlanarTree(tuple(w), tuple(nb))

    def to_sexpr(self, root: int = 0) -> str:
        def rec(v: int, parent: int | None) -> str:
            nb = list(self.neighbors[v])
            if parent is not None:
                k = nb.index(parent)
                nb = nb[k + 1:] + nb[:k]
            inner = " ".join(rec(u, v) for u in nb)
            return f"({self.weights[v]}{' ' + inner if inner else ''})"

        return rec(root, None)


_TOK = re.compile(r"\(|\)|-?\d+|\S")


def parse_tree(text: str) -> WeightedPlanarTree:
    toks = _TOK.findall(text)
    pos = 0
    weights: list[int] = []
    nbrs: list[list[int]] = []

    def node(parent: int | None) -> int:
        nonlocal pos
        if pos >= len(toks) or toks[pos] != "(":
            raise ParseError(f"expected '(' at token {pos} in {text!r}")
        pos += 1
        if pos >= len(toks) or not re.fullmatch(r"-?\d+", toks[pos]):
            raise ParseError(f"expected an integer weight at token {pos} in {text!r}")
        v = len(weights)
        weights.append(int(toks[pos]))
        nbrs.append([] if parent is None else [parent])
        pos += 1
        while pos < len(toks) and toks[pos] == "(":
            c = node(v)
            nbrs[v].append(c)
        if pos >= len(toks) or toks[pos] != ")":
            raise ParseError(f"expected ')' at token {pos} in {text!r}")
        pos += 1
        return v

    node(None)
    if pos != len(toks):
        raise ParseError(f"trailing input after tree in {text!r}")
    return WeightedPlanarTree(tuple(weights), tuple(tuple(nb) for nb in nbrs))


# ------------------------------------------------------------- decomposition

@dataclass(frozen=True)
class StarSpec:
    center: int
    twigs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.twigs) < 3:
            raise DomainError("a star needs at least three twigs")

    def to_json(self) -> dict:
        return {"center": self.center, "twigs": list(self.twigs)}


@dataclass(frozen=True)
class Junction:
    vertex: int
    pieces: tuple[tuple[str, int, str], ...]  # (kind, piece index, position)


@dataclass(frozen=True)
class Decomposition:
    sticks: tuple[tuple[int, ...], ...]  # vertex paths
    stars: tuple[tuple[int, tuple[int, ...]], ...]  # (node, neighbours in cyclic order)
    junctions: tuple[Junction, ...]
    weights: tuple[int, ...]

    def stick_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(self.weights[v] for v in path) for path in self.sticks]

    def star_specs(self) -> list[StarSpec]:
        return [StarSpec(self.weights[v], tuple(self.weights[u] for u in nb)) for v, nb in self.stars]


def _non_node_paths(t: WeightedPlanarTree, allowed: set[int]) -> list[tuple[int, ...]]:
    """Components of the forest induced on ``allowed`` (paths), each read from
    the end with the smaller label."""
    seen: set[int] = set()
    paths = []
    for v in sorted(allowed):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            for u in t.neighbors[stack.pop()]:
                if u in allowed and u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        ends = sorted(x for x in comp if sum(u in comp for u in t.neighbors[x]) <= 1)
        path = [ends[0]]
        while len(path) < len(comp):
            path.append(next(u for u in t.neighbors[path[-1]] if u in comp and u not in path))
        paths.append(tuple(path))
    return paths


def _rotate_min(nb: Sequence[int]) -> tuple[int, ...]:
    k = nb.index(min(nb))
    return tuple(nb[k:]) + tuple(nb[:k])


def decompose(t: WeightedPlanarTree) -> Decomposition:
    """Sticks and stars.  A lone non-node next to a node is a twig of that
    node's star and does not form a stick of its own."""
    nodes = set(t.nodes)
    non_nodes = set(range(len(t))) - nodes
    sticks = [p for p in _non_node_paths(t, non_nodes)
              if len(p) > 1 or not any(u in nodes for u in t.neighbors[p[0]])]
    stars = [(v, _rotate_min(t.neighbors[v])) for v in sorted(nodes)]
    where: dict[int, list[tuple[str, int, str]]] = {}
    for k, path in enumerate(sticks):
        for j, v in enumerate(path):
            where.setdefault(v, []).append(("stick", k, str(j)))
    for k, (v, nb) in enumerate(stars):
        where.setdefault(v, []).append(("star", k, "center"))
        for j, u in enumerate(nb):
            where.setdefault(u, []).append(("star", k, str(j)))
    junctions = tuple(Junction(v, tuple(p)) for v, p in sorted(where.items()) if len(p) > 1)
    return Decomposition(tuple(sticks), tuple(stars), junctions, t.weights)


# ------------------------------------------------------------------- stars

class StarClass(str, Enum):
    VERY_STRONGLY_QP = "VeryStronglyQP"
    POSITIVE = "Positive"
    STRONGLY_QP = "StronglyQP"
    UNKNOWN = "Unknown"


def _even_negative(x: int) -> bool:
    return x < 0 and x % 2 == 0


def _pretzel_surface_case(s: StarSpec) -> bool:
    return s.center == 0 and all(_even_negative(a + b) for a, b in combinations(s.twigs, 2))


def star_positive_case(s: StarSpec) -> str | None:
    """The positivity case that applies to a star, if any."""
    t, c = s.twigs, s.center
    if _pretzel_surface_case(s) and all(x < 0 for x in t):
        return "negative-pretzel"
    if c == 0 and not any(x % 2 and x < 0 for x in t) and sum(x > 0 for x in t) % 2 == 0:
        return "no-odd-negative"
    if c > 0 and all(x % 2 and x < 0 for x in t) and (c + len(t)) % 2 == 0:
        return "positive-center"
    return None


def star_classify(s: StarSpec) -> tuple[StarClass, str]:
    if _even_negative(s.center) and all(_even_negative(x) for x in s.twigs):
        return StarClass.VERY_STRONGLY_QP, "all-even-negative"
    case = star_positive_case(s)
    if case:
        return StarClass.POSITIVE, case
    if _pretzel_surface_case(s):
        return StarClass.STRONGLY_QP, "pretzel-surface"
    return StarClass.UNKNOWN, "none"


def transplant_ok_stick(r, end: str) -> bool:
    r = r if isinstance(r, RationalTuple) else RationalTuple(tuple(r))
    if end not in ("first", "last"):
        raise DomainError(f"end must be 'first' or 'last', got {end!r}")
    cls = stick_classify(r)
    if cls is StickClass.UNKNOWN:
        raise DomainError("no qp certificate for this stick")
    if cls is StickClass.VERY_STRONGLY_QP:
        return True
    return (r.entries[0] if end == "first" else r.entries[-1]) < 0


def transplant_ok_star(s: StarSpec, i: int) -> bool:
    """i is the 0-based twig index."""
    if not 0 <= i < len(s.twigs):
        raise DomainError(f"twig index {i} out of range")
    cls, _ = star_classify(s)
    if cls is StarClass.VERY_STRONGLY_QP or _pretzel_surface_case(s):
        return True
    if cls is StarClass.POSITIVE:
        return s.twigs[i] < 0
    raise DomainError("no qp certificate for this star")


# ----------------------------------------------------------- classification

@dataclass(frozen=True)
class TransplantCertificate:
    pieces: tuple[dict, ...]
    order: tuple[int, ...]
    junctions: tuple[dict, ...]

    def to_json(self) -> dict:
        return {"pieces": list(self.pieces), "order": list(self.order), "junctions": list(self.junctions)}


def _piece_order(t: WeightedPlanarTree, pieces: list[list[int]]) -> list[int]:
    owner = {v: k for k, vs in enumerate(pieces) for v in vs}
    start_v = max(range(len(t)), key=lambda v: (t.degree(v), -v))
    start = owner[start_v]
    adj: dict[int, set[int]] = {k: set() for k in range(len(pieces))}
    for a, b in t.edges():
        if owner[a] != owner[b]:
            adj[owner[a]].add(owner[b])
            adj[owner[b]].add(owner[a])
    order, seen = [], {start}
    queue = deque([start])
    while queue:
        k = queue.popleft()
        order.append(k)
        for j in sorted(adj[k] - seen, key=lambda j: min(pieces[j])):
            seen.add(j)
            queue.append(j)
    return order


def sqp_by_transplant(t: WeightedPlanarTree) -> TransplantCertificate | None:
    """Partition the tree into certified pieces glued along edges.

    Stars of nodes touching a weight that is not even-negative become star
    pieces; any other such vertex lies in a stick piece; what is left is
    all even-negative and forms very strongly qp pieces.  Each gluing edge
    must pass the transplant test on both sides (very strongly qp pieces
    need none).
    """
    good = {v for v in range(len(t)) if _even_negative(t.weights[v])}
    owner: dict[int, int] = {}
    pieces: list[list[int]] = []
    kinds: list[dict] = []

    for v in t.nodes:
        closed = [v, *t.neighbors[v]]
        if all(u in good for u in closed):
            continue
        if any(u in owner for u in closed):
            return None
        spec = StarSpec(t.weights[v], tuple(t.weights[u] for u in t.neighbors[v]))
        cls, case = star_classify(spec)
        if cls is StarClass.UNKNOWN:
            return None
        for u in closed:
            owner[u] = len(pieces)
        pieces.append(closed)
        kinds.append({"kind": "star", "vertices": closed, "class": cls.value, "case": case, "spec": spec})

    nodes = set(t.nodes)
    free_bad = {v for v in range(len(t)) if v not in owner and v not in good}
    if free_bad & nodes:
        return None
    loose = {v for v in range(len(t)) if v not in owner and v not in nodes}
    for path in _non_node_paths(t, loose):
        if not set(path) & free_bad:
            continue
        r = tuple(t.weights[v] for v in path)
        if 0 in r:
            return None
        cls = stick_classify(r)
        if cls is StickClass.UNKNOWN:
            return None
        for u in path:
            owner[u] = len(pieces)
        pieces.append(list(path))
        kinds.append({"kind": "stick", "vertices": list(path), "class": cls.value, "entries": r})

    rest = {v for v in range(len(t)) if v not in owner}
    seen: set[int] = set()
    for v in sorted(rest):
        if v in seen:
            continue
        comp, stack = [v], [v]
        seen.add(v)
        while stack:
            for u in t.neighbors[stack.pop()]:
                if u in rest and u not in seen:
                    seen.add(u)
                    comp.append(u)
                    stack.append(u)
        for u in comp:
            owner[u] = len(pieces)
        pieces.append(sorted(comp))
        kinds.append({"kind": "vsqp", "vertices": sorted(comp), "class": StarClass.VERY_STRONGLY_QP.value})

    def side_ok(k: int, v: int) -> bool:
        info = kinds[k]
        if info["kind"] == "vsqp":
            return True
        if info["kind"] == "stick":
            path = info["vertices"]
            if v not in (path[0], path[-1]):
                return False
            ends = ["first"] if v == path[0] else []
            ends += ["last"] if v == path[-1] else []
            return any(transplant_ok_stick(info["entries"], e) for e in ends)
        center = info["vertices"][0]
        if v == center:
            return False
        return transplant_ok_star(info["spec"], list(t.neighbors[center]).index(v))

    checks = []
    for a, b in t.edges():
        ka, kb = owner[a], owner[b]
        if ka == kb:
            continue
        ok = side_ok(ka, a) and side_ok(kb, b)
        checks.append({"edge": [a, b], "ok": ok})
        if not ok:
            return None
    public = []
    for info in kinds:
        d = {k: v for k, v in info.items() if k != "spec"}
        if "entries" in d:
            d["entries"] = list(d["entries"])
        public.append(d)
    return TransplantCertificate(tuple(public), tuple(_piece_order(t, pieces)), tuple(checks))


@dataclass(frozen=True)
class TreeClassification:
    very_strongly_qp: bool
    positive: bool
    strongly_qp_certified: bool
    unknown: bool
    certificate: tuple[dict, ...] = field(default=())

    def to_json(self) -> dict:
        return {"vsqp": self.very_strongly_qp, "positive": self.positive,
                "sqp": self.strongly_qp_certified, "unknown": self.unknown,
                "certificate": list(self.certificate)}


def positivity_hypotheses(t: WeightedPlanarTree) -> tuple[bool, bool]:
    nodes = set(t.nodes)
    no_zero_non_node = all(t.weights[v] != 0 for v in range(len(t)) if v not in nodes)
    no_adjacent_zero_nodes = all(not (a in nodes and b in nodes and t.weights[a] == 0 and t.weights[b] == 0)
                                 for a, b in t.edges())
    return no_zero_non_node, no_adjacent_zero_nodes


def classify(t: WeightedPlanarTree) -> TreeClassification:
    cert: list[dict] = []
    vsqp = all(_even_negative(w) for w in t.weights)
    if vsqp:
        cert.append({"rule": "all weights even and negative"})

    h1, h2 = positivity_hypotheses(t)
    positive = False
    if h1 and h2:
        d = decompose(t)
        pieces_ok = True
        for path, r in zip(d.sticks, d.stick_tuples()):
            ok = machine_accepts(r)
            pieces_ok &= ok
            cert.append({"piece": "stick", "vertices": list(path), "entries": list(r), "machine": ok})
        for (v, _), spec in zip(d.stars, d.star_specs()):
            case = star_positive_case(spec)
            pieces_ok &= case is not None
            cert.append({"piece": "star", "node": v, "spec": spec.to_json(), "positive_case": case})
        positive = pieces_ok
    else:
        cert.append({"rule": "positivity not evaluated",
                     "non_node_zero": not h1, "adjacent_zero_nodes": not h2})

    sqp = vsqp or positive
    if not sqp:
        tc = sqp_by_transplant(t)
        if tc is not None:
            sqp = True
            cert.append({"rule": "transplant", **tc.to_json()})
    return TreeClassification(vsqp, positive, sqp, not sqp, tuple(cert))

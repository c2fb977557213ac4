"""Symbolic descriptions of 3-dimensional transverse C-links: the link-manifold
and the Euler characteristic of the C-span for suspensions, doubles and the
double branched covers of rational, pretzel and tree links."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import ClassVar, Union

from . import pretzel as _pretzel
from . import tree as _tree
from .braid_core import BandRepresentation, brep_product, braided_surface, closure_components
from .errors import DomainError, ParseError
from .rational import RationalTuple, StickClass, lens_space, stick_classify

# ------------------------------------------------------------ family descriptors


@dataclass(frozen=True)
class Pretzel:
    entries: tuple[int, ...]
    FAMILY: ClassVar[str] = "Pretzel"

    def to_json(self) -> dict:
        return {"family": self.FAMILY, "entries": list(self.entries)}


@dataclass(frozen=True)
class Rational:
    entries: tuple[int, ...]
    FAMILY: ClassVar[str] = "Rational"

    def to_json(self) -> dict:
        return {"family": self.FAMILY, "entries": list(self.entries)}


@dataclass(frozen=True)
class Tree:
    expr: str
    FAMILY: ClassVar[str] = "Tree"

    def to_json(self) -> dict:
        return {"family": self.FAMILY, "expr": self.expr}


@dataclass(frozen=True)
class BraidClosure:
    """Closure of the product of a band representation."""

    strands: int
    bands: tuple[tuple[tuple[int, ...], int], ...]
    FAMILY: ClassVar[str] = "BraidClosure"

    @classmethod
    def of(cls, b: BandRepresentation) -> "BraidClosure":
        return cls(b.strands, tuple((tuple(x.conjugator.to_ints()), x.index) for x in b.bands))

    def representation(self) -> BandRepresentation:
        return BandRepresentation.from_json(
            [{"conjugator": list(c), "index": i} for c, i in self.bands], strands=self.strands)

    def to_json(self) -> dict:
        return {"family": self.FAMILY, "strands": self.strands,
                "bands": [{"conjugator": list(c), "index": i} for c, i in self.bands]}


FamilyDescriptor = Union[Pretzel, Rational, Tree, BraidClosure]


def family_from_json(data: dict) -> FamilyDescriptor:
    try:
        kind = data["family"]
        if kind == "Pretzel":
            return Pretzel(tuple(int(x) for x in data["entries"]))
        if kind == "Rational":
            return Rational(tuple(int(x) for x in data["entries"]))
        if kind == "Tree":
            return Tree(str(data["expr"]))
        if kind == "BraidClosure":
            b = BandRepresentation.from_json(data["bands"], strands=data["strands"])
            return BraidClosure.of(b)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed family descriptor: {exc}") from exc
    raise ParseError(f"unknown family {kind!r}")


# ------------------------------------------------------------------ manifolds


class _Kind:
    KIND: ClassVar[str]

    def to_json(self) -> dict:
        out: dict = {"kind": self.KIND}
        for f in fields(self):  # type: ignore[arg-type]
            v = getattr(self, f.name)
            if hasattr(v, "to_json"):
                v = v.to_json()
            elif isinstance(v, tuple):
                v = [str(x) if isinstance(x, Fraction) else x for x in v]
            out[f.name] = v
        return out


@dataclass(frozen=True)
class LensSpaceManifold(_Kind):
    P: int
    Q: int
    KIND: ClassVar[str] = "LensSpace"


@dataclass(frozen=True)
class SeifertFibered(_Kind):
    notation: str
    data_vector: tuple[Fraction, ...]
    KIND: ClassVar[str] = "SeifertFibered"


@dataclass(frozen=True)
class TreeManifold(_Kind):
    tree: str
    KIND: ClassVar[str] = "TreeManifold"


@dataclass(frozen=True)
class ConnSumS1xS2(_Kind):
    """One connected sum of copies of S^1 x S^2 per component (0 copies: S^3)."""

    counts: tuple[int, ...]
    KIND: ClassVar[str] = "ConnSumS1xS2"

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.counts):
            raise DomainError("summand counts must be non-negative")


@dataclass(frozen=True)
class BranchedCyclicCover(_Kind):
    q: int
    branch: FamilyDescriptor
    KIND: ClassVar[str] = "BranchedCyclicCover"

    def __post_init__(self) -> None:
        if self.q < 1:
            raise DomainError("cover degree must be >= 1")


@dataclass(frozen=True)
class DoubleKnotExterior(_Kind):
    label: str
    KIND: ClassVar[str] = "DoubleKnotExterior"


@dataclass(frozen=True)
class ProductS1Fg(_Kind):
    g: int
    KIND: ClassVar[str] = "ProductS1Fg"

    def __post_init__(self) -> None:
        if self.g < 0:
            raise DomainError("genus must be non-negative")


@dataclass(frozen=True)
class Torus3(_Kind):
    KIND: ClassVar[str] = "Torus3"


@dataclass(frozen=True)
class Sphere3(_Kind):
    KIND: ClassVar[str] = "Sphere3"


ManifoldDescription = Union[LensSpaceManifold, SeifertFibered, TreeManifold, ConnSumS1xS2, BranchedCyclicCover,
                            DoubleKnotExterior, ProductS1Fg, Torus3, Sphere3]

_KINDS = {c.KIND: c for c in (LensSpaceManifold, SeifertFibered, TreeManifold, ConnSumS1xS2, BranchedCyclicCover,
                              DoubleKnotExterior, ProductS1Fg, Torus3, Sphere3)}


def manifold_from_json(data: dict) -> ManifoldDescription:
    try:
        cls = _KINDS[data["kind"]]
        args = {k: v for k, v in data.items() if k != "kind"}
        if cls is SeifertFibered:
            args["data_vector"] = tuple(Fraction(x) for x in args["data_vector"])
        elif cls is ConnSumS1xS2:
            args["counts"] = tuple(args["counts"])
        elif cls is BranchedCyclicCover:
            args["branch"] = family_from_json(args["branch"])
        return cls(**args)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed manifold description: {exc}") from exc


@dataclass(frozen=True)
class CLink3Descriptor:
    manifold: ManifoldDescription
    cspan_euler: int
    provenance: tuple[str, ...] = ()
    annotations: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"manifold": self.manifold.to_json(), "cspan_euler": self.cspan_euler,
                "provenance": list(self.provenance), "annotations": dict(self.annotations)}


PROVENANCE_TAGS = ("fibered", "singularity-link", "link-at-infinity")


def _tags(provenance) -> tuple[str, ...]:
    tags = tuple(sorted(set(provenance)))
    bad = [t for t in tags if t not in PROVENANCE_TAGS]
    if bad:
        raise DomainError(f"unknown provenance tag(s) {bad}; allowed: {list(PROVENANCE_TAGS)}")
    return tags


# ---------------------------------------------------------------- operations

def branched_cover_euler(q: int, chi_base: int, chi_branch: int) -> int:
    if q < 1:
        raise DomainError("cover degree must be >= 1")
    return q * chi_base - (q - 1) * chi_branch


def cyclic_suspension(b: BandRepresentation, q: int, provenance=()) -> CLink3Descriptor:
    """Add z^q: the link-manifold is the q-fold cyclic cover of S^3 branched
    along the closure, and the C-span the q-fold cover of D^4 branched along the
    pushed-in braided surface."""
    chi = braided_surface(b).total_euler
    euler = branched_cover_euler(q, 1, chi)
    m: ManifoldDescription = Sphere3() if q == 1 else BranchedCyclicCover(q, BraidClosure.of(b))
    return CLink3Descriptor(m, euler, _tags(provenance), {"surface_euler": chi})


def dummy_suspension(b: BandRepresentation, provenance=()) -> CLink3Descriptor:
    """Add a squared dummy variable: each surface component of Euler
    characteristic chi contributes a connected sum of 1 - chi copies of S^1 x S^2."""
    surf = braided_surface(b)
    counts = tuple(1 - c.euler for c in surf.components)
    m: ManifoldDescription = Sphere3() if counts == (0,) else ConnSumS1xS2(counts)
    return CLink3Descriptor(m, surf.total_euler, _tags(provenance))


def double_of_exterior(route: str, *, tb: int | None = None, rep: BandRepresentation | None = None,
                       label: str = "K", provenance=()) -> CLink3Descriptor:
    """The double of a knot exterior as a link-manifold, reached either through
    the annulus A(K, 0) or through two parallel copies of a braided surface."""
    if route == "annulus":
        if tb is None or tb < 0:
            raise DomainError("the annulus route needs a maximal Thurston-Bennequin number >= 0")
        return CLink3Descriptor(DoubleKnotExterior(label), branched_cover_euler(2, 1, 0),
                                _tags(provenance), {"tb": tb})
    if route == "cable":
        if rep is None:
            raise DomainError("the cable route needs a band representation")
        if closure_components(brep_product(rep)) != 1:
            raise DomainError("the cable route needs a band representation whose closure is a knot")
        chi = braided_surface(rep).total_euler
        euler = branched_cover_euler(2, 1, 2 * chi)
        return CLink3Descriptor(DoubleKnotExterior(label), euler, _tags(provenance),
                                {"surface_euler": chi, "single_copy_value": 2 - chi})
    raise DomainError(f"route must be 'cable' or 'annulus', got {route!r}")


def double_branched_cover(fd: FamilyDescriptor) -> ManifoldDescription:
    if isinstance(fd, Rational):
        ls = lens_space(RationalTuple(fd.entries))
        return LensSpaceManifold(ls.P, ls.Q)
    if isinstance(fd, Pretzel):
        sd = _pretzel.seifert_data(fd.entries)
        return SeifertFibered(sd.notation, sd.data_vector)
    if isinstance(fd, Tree):
        return TreeManifold(_tree.parse_tree(fd.expr).to_sexpr())
    raise DomainError(f"no double branched cover description for {type(fd).__name__}")


def family_certificate(fd: FamilyDescriptor) -> dict:
    """Strong quasipositivity certificate of the branch link, where one is known."""
    if isinstance(fd, Rational):
        cls = stick_classify(fd.entries)
        return {"class": cls.value, "sqp": cls is not StickClass.UNKNOWN}
    if isinstance(fd, Pretzel):
        c = _pretzel.classify(fd.entries)
        return {"class": c.to_json(), "sqp": c.strongly_qp_certified}
    if isinstance(fd, Tree):
        c = _tree.classify(_tree.parse_tree(fd.expr))
        return {"class": {k: v for k, v in c.to_json().items() if k != "certificate"},
                "sqp": c.strongly_qp_certified}
    raise DomainError(f"no certificate for {type(fd).__name__}")


def double_branched_cover_report(fd: FamilyDescriptor) -> dict:
    """The manifold together with whether it is certified to be the
    link-manifold of a 3-dimensional transverse C-link."""
    cert = family_certificate(fd)
    return {"manifold": double_branched_cover(fd).to_json(), "certificate": cert,
            "clink_realizable": True if cert["sqp"] else None}


def homology_order(m: ManifoldDescription) -> int:
    """|H_1| for a lens space; 0 stands for infinite."""
    if isinstance(m, LensSpaceManifold):
        return m.P
    raise DomainError(f"homology order not tracked for {m.KIND}")


def link_at_infinity_product(g: int) -> ManifoldDescription:
    if g < 0:
        raise DomainError("genus must be non-negative")
    return Torus3() if g == 1 else ProductS1Fg(g)


def singularity_excluded(m: ManifoldDescription) -> bool:
    """The 3-torus is never the link of an isolated singularity."""
    return isinstance(m, Torus3)

"""
Simplicial complexes stored as facet sets.

A complex is an immutable set of maximal faces (facets) over vertex labels.
Faces of every dimension are derived on demand and memoized per complex.
Labels are either index pairs ``x_ij`` (1 <= i, j <= 4) or named atoms.
"""

import re
import json
import logging
from dataclasses import dataclass
from collections import Counter, defaultdict
from itertools import combinations
from math import comb
from typing import (
    Any, Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union
)

import networkx as nx

from .utils import (
    ComplexConstructionError,
    ComplexFormatError,
    InvalidFaceError,
    NotPureError,
    load_json_text,
    require_keys,
)

logger = logging.getLogger(__name__)

PAIR = 0
ATOM = 1

_PAIR_RE = re.compile(r"^x_?\{?([1-4])\}?_?\{?([1-4])\}?$")
_UNORDERED_RE = re.compile(r"^x\{([1-4])<=([1-4])\}$")

LABEL_KINDS = ("ordered", "unordered", "atom")


@dataclass(frozen=True, order=True)
class Vertex:
    """
    A vertex label.

    Pair labels sort before atoms; pairs sort by (i, j), atoms by name.
    An unordered pair {i, j} is stored as the pair with i <= j.
    """
    kind: int
    i: int = 0
    j: int = 0
    name: str = ""

    @classmethod
    def pair(cls, i: int, j: int) -> 'Vertex':
        if not (1 <= i <= 4 and 1 <= j <= 4):
            raise ValueError(f"pair indices out of range: ({i}, {j})")
        return cls(PAIR, i, j)

    @classmethod
    def unordered(cls, i: int, j: int) -> 'Vertex':
        return cls.pair(min(i, j), max(i, j))

    @classmethod
    def atom(cls, name: str) -> 'Vertex':
        if not name or any(ch.isspace() for ch in name) or name[0] in "()":
            raise ValueError(f"invalid atom label: {name!r}")
        return cls(ATOM, name=name)

    @classmethod
    def parse(cls, text: str, label_kind: str = "ordered") -> 'Vertex':
        """
        Parse a label string.

        Examples:
            >>> Vertex.parse("x12")
            Vertex('x12')
            >>> str(Vertex.parse("x_21", label_kind="unordered"))
            'x12'
        """
        text = text.strip()
        if label_kind == "atom":
            return cls.atom(text)
        m = _UNORDERED_RE.match(text)
        if m:
            return cls.unordered(int(m.group(1)), int(m.group(2)))
        m = _PAIR_RE.match(text)
        if m:
            i, j = int(m.group(1)), int(m.group(2))
            if label_kind == "unordered":
                return cls.unordered(i, j)
            return cls.pair(i, j)
        return cls.atom(text)

    @property
    def is_pair(self) -> bool:
        return self.kind == PAIR

    @property
    def is_diagonal(self) -> bool:
        return self.kind == PAIR and self.i == self.j

    def transposed(self) -> 'Vertex':
        """x_ij -> x_ji; atoms are fixed."""
        if self.kind != PAIR:
            return self
        return Vertex(PAIR, self.j, self.i)

    def __str__(self) -> str:
        if self.kind == PAIR:
            return f"x{self.i}{self.j}"
        return self.name

    def __repr__(self) -> str:
        return f"Vertex({str(self)!r})"


LabelLike = Union[Vertex, str]
Simplex = FrozenSet[Vertex]


def vertex(label: LabelLike) -> Vertex:
    return label if isinstance(label, Vertex) else Vertex.parse(label)


def simplex(*labels: Union[LabelLike, Iterable[LabelLike]]) -> Simplex:
    """
    Build a simplex from labels.

    Accepts Vertex objects, label strings, or a single whitespace-separated
    string: ``simplex("x11 x22 x33")``.
    """
    out = set()
    for item in labels:
        if isinstance(item, str):
            out.update(vertex(tok) for tok in item.split())
        elif isinstance(item, Vertex):
            out.add(item)
        else:
            out.update(vertex(v) for v in item)
    return frozenset(out)


def sorted_simplex(s: Iterable[Vertex]) -> Tuple[Vertex, ...]:
    return tuple(sorted(s))


def format_simplex(s: Iterable[Vertex]) -> str:
    return " ".join(str(v) for v in sorted(s))


def _maximal(sets: Iterable[Simplex]) -> List[Simplex]:
    ordered = sorted(set(sets), key=len, reverse=True)
    kept: List[Simplex] = []
    for s in ordered:
        if not any(s < k for k in kept):
            kept.append(s)
    return kept


class SimplicialComplex:
    """
    Immutable simplicial complex given by its facets.

    Equality is facet-set equality. The complex {∅} (only the empty face)
    is distinct from the void complex (no faces at all).
    """

    def __init__(self, facets: Iterable[Iterable[LabelLike]], name: str = ""):
        """
        Initialize from a facet list.

        Args:
            facets: Iterable of simplices; none may contain another
            name: Optional display name

        Raises:
            ComplexConstructionError: if one facet contains another
        """
        fs = frozenset(simplex(f) if not isinstance(f, frozenset) else f for f in facets)
        if len({len(f) for f in fs}) > 1:
            by_size = sorted(fs, key=len)
            for idx, small in enumerate(by_size):
                for big in by_size[idx + 1:]:
                    if len(big) > len(small) and small < big:
                        raise ComplexConstructionError(
                            "facet contains another facet",
                            {"facet": format_simplex(big), "contained": format_simplex(small)}
                        )
        self._facets: FrozenSet[Simplex] = fs
        self._name = name
        self._faces: Dict[int, FrozenSet[Simplex]] = {}
        self._vertices: Optional[FrozenSet[Vertex]] = None

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[LabelLike]], name: str = "") -> 'SimplicialComplex':
        """Complex generated by an arbitrary face list (non-maximal faces dropped)."""
        return cls(_maximal(simplex(f) if not isinstance(f, frozenset) else f for f in faces), name=name)

    @classmethod
    def void(cls) -> 'SimplicialComplex':
        return cls([])

    # -- basic structure -------------------------------------------------

    @property
    def name(self) -> str:
        return self._name

    def renamed(self, name: str) -> 'SimplicialComplex':
        out = SimplicialComplex(self._facets, name=name)
        out._faces = self._faces
        return out

    @property
    def facets(self) -> FrozenSet[Simplex]:
        return self._facets

    def sorted_facets(self) -> List[Tuple[Vertex, ...]]:
        """Facets in canonical (lexicographic) order."""
        return sorted(sorted_simplex(f) for f in self._facets)

    @property
    def vertices(self) -> FrozenSet[Vertex]:
        if self._vertices is None:
            self._vertices = frozenset().union(*self._facets) if self._facets else frozenset()
        return self._vertices

    @property
    def dim(self) -> int:
        """Maximal facet dimension; -1 for {∅}, -2 for the void complex."""
        if not self._facets:
            return -2
        return max(len(f) for f in self._facets) - 1

    def is_void(self) -> bool:
        return not self._facets

    def is_pure(self) -> bool:
        return len({len(f) for f in self._facets}) <= 1

    def _require_pure(self) -> None:
        if not self.is_pure():
            raise NotPureError(sorted({len(f) - 1 for f in self._facets}))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._facets == other._facets

    def __hash__(self) -> int:
        return hash(self._facets)

    def __len__(self) -> int:
        return len(self._facets)

    def __repr__(self) -> str:
        label = f"{self._name} " if self._name else ""
        return f"<SimplicialComplex {label}f={self.f_vector()}>"

    # -- faces -----------------------------------------------------------

    def faces(self, d: int) -> FrozenSet[Simplex]:
        """
        All d-dimensional faces.

        Out-of-range d yields the empty set. d = -1 gives {∅} for any
        non-void complex.
        """
        if d < -1 or d > self.dim:
            return frozenset()
        cached = self._faces.get(d)
        if cached is None:
            out = set()
            for f in self._facets:
                if len(f) >= d + 1:
                    out.update(frozenset(c) for c in combinations(f, d + 1))
            cached = frozenset(out)
            self._faces[d] = cached
        return cached

    def faces_by_closure(self, d: int) -> FrozenSet[Simplex]:
        """d-faces found by closing the facet set under removal of one vertex at a time."""
        if d < -1 or d > self.dim:
            return frozenset()
        level = {f for f in self._facets}
        found = {f for f in level if len(f) == d + 1}
        size = max(len(f) for f in level)
        while size > d + 1:
            nxt = set()
            for f in level:
                if len(f) == size:
                    nxt.update(f - {v} for v in f)
                else:
                    nxt.add(f)
            level = nxt
            size -= 1
            found.update(f for f in level if len(f) == d + 1)
        return frozenset(found)

    def all_faces(self, include_empty: bool = False) -> List[Simplex]:
        start = -1 if include_empty else 0
        out: List[Simplex] = []
        for d in range(start, self.dim + 1):
            out.extend(sorted(self.faces(d), key=sorted_simplex))
        return out

    def f_vector(self) -> Tuple[int, ...]:
        return tuple(len(self.faces(d)) for d in range(self.dim + 1))

    def contains(self, s: Iterable[LabelLike]) -> bool:
        s = simplex(s) if not isinstance(s, frozenset) else s
        return any(s <= f for f in self._facets)

    def __contains__(self, s: Iterable[LabelLike]) -> bool:
        return self.contains(s)

    def edge_graph(self) -> nx.Graph:
        """The 1-skeleton as a networkx graph (isolated vertices included)."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(tuple(e) for e in self.faces(1))
        return g

    # -- local structure -------------------------------------------------

    def _face(self, s: Iterable[LabelLike]) -> Simplex:
        s = simplex(s) if not isinstance(s, frozenset) else s
        if not self.contains(s):
            raise InvalidFaceError(format_simplex(s), self._name)
        return s

    def link(self, s: Iterable[LabelLike]) -> 'SimplicialComplex':
        """Faces disjoint from s whose union with s is a face."""
        s = self._face(s)
        return SimplicialComplex(f - s for f in self._facets if s <= f)

    def star(self, s: Iterable[LabelLike]) -> 'SimplicialComplex':
        """closure(s) * link(s): the facets through s."""
        s = self._face(s)
        return SimplicialComplex(f for f in self._facets if s <= f)

    def face_degree(self, s: Iterable[LabelLike]) -> int:
        """Number of vertices in the link of s."""
        return len(self.link(s).vertices)

    def induced_subcomplex(self, w: Iterable[LabelLike]) -> 'SimplicialComplex':
        w = simplex(w) if not isinstance(w, frozenset) else w
        return SimplicialComplex.from_faces(f & w for f in self._facets)

    def boundary(self) -> 'SimplicialComplex':
        """Ridges lying in exactly one facet (pure complexes only)."""
        self._require_pure()
        counts = Counter(f - {v} for f in self._facets for v in f)
        return SimplicialComplex.from_faces(r for r, c in counts.items() if c == 1)

    def relabel(self, mapping: Union[Mapping[Vertex, Vertex], Callable[[Vertex], Vertex]],
                name: Optional[str] = None) -> 'SimplicialComplex':
        """Apply a vertex map; it must be injective on the vertex set."""
        fn = mapping if callable(mapping) else (lambda v: mapping.get(v, v))
        images = {v: fn(v) for v in self.vertices}
        if len(set(images.values())) != len(images):
            raise ComplexConstructionError("relabeling is not injective")
        return SimplicialComplex(
            (frozenset(images[v] for v in f) for f in self._facets),
            name=self._name if name is None else name,
        )

    # -- global predicates -----------------------------------------------

    def is_weak_pseudomanifold(self) -> bool:
        """Every ridge lies in exactly two facets."""
        self._require_pure()
        if not self._facets:
            return False
        counts = Counter(f - {v} for f in self._facets for v in f)
        return all(c == 2 for c in counts.values())

    def strong_components(self) -> List['SimplicialComplex']:
        """Connected components of the facet-ridge adjacency graph."""
        self._require_pure()
        g = nx.Graph()
        g.add_nodes_from(self._facets)
        by_ridge: Dict[Simplex, List[Simplex]] = defaultdict(list)
        for f in self._facets:
            for v in f:
                by_ridge[f - {v}].append(f)
        for facets in by_ridge.values():
            for a, b in zip(facets, facets[1:]):
                g.add_edge(a, b)
        parts = [SimplicialComplex(c) for c in nx.connected_components(g)]
        return sorted(parts, key=lambda k: k.sorted_facets()[0])

    def neighborliness(self) -> int:
        """Largest k such that every k-subset of the vertex set is a face."""
        n = len(self.vertices)
        k = 0
        while k < n and len(self.faces(k)) == comb(n, k + 1):
            k += 1
        return k

    # -- serialization ---------------------------------------------------

    def label_kind(self) -> str:
        if any(not v.is_pair for v in self.vertices):
            return "atom"
        return "ordered"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self._name,
            "label_kind": self.label_kind(),
            "vertices": [str(v) for v in sorted(self.vertices)],
            "facets": [[str(v) for v in f] for f in self.sorted_facets()],
        }

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> 'SimplicialComplex':
        """
        Build a complex from its JSON object form.

        Raises:
            ComplexFormatError: missing keys, bad labels, or a vertex list that
                disagrees with the facets
            ComplexConstructionError: a facet contains another facet
        """
        require_keys(payload, ["facets"], "complex")
        kind = payload.get("label_kind", "ordered")
        if kind not in LABEL_KINDS:
            raise ComplexFormatError(f"unknown label_kind '{kind}'")

        def parse(label: Any) -> Vertex:
            if not isinstance(label, str):
                raise ComplexFormatError(f"label must be a string, got {label!r}")
            try:
                return Vertex.parse(label, "ordered" if kind == "atom" else kind)
            except ValueError as e:
                raise ComplexFormatError(str(e))

        facets = []
        for f in payload["facets"]:
            if not isinstance(f, list):
                raise ComplexFormatError("each facet must be a list of labels")
            facets.append(frozenset(parse(v) for v in f))
        out = cls(facets, name=payload.get("name", ""))
        if "vertices" in payload:
            declared = {parse(v) for v in payload["vertices"]}
            if declared != set(out.vertices):
                raise ComplexFormatError("vertex list does not match facets")
        return out

    @classmethod
    def from_json(cls, text: str, path: Optional[str] = None) -> 'SimplicialComplex':
        return cls.from_dict(load_json_text(text, path))


# -- constructors ----------------------------------------------------------

def closure(s: Iterable[LabelLike]) -> SimplicialComplex:
    """The simplex s with all its faces."""
    return SimplicialComplex([simplex(s)])


def _distinct(labels: Sequence[LabelLike]) -> List[Vertex]:
    vs = [vertex(v) for v in labels]
    if len(set(vs)) != len(vs):
        raise ComplexConstructionError("repeated vertex", {"vertices": [str(v) for v in vs]})
    return vs


def standard_sphere(labels: Sequence[LabelLike]) -> SimplicialComplex:
    """∂V: all proper subsets of V."""
    vs = _distinct(labels)
    if len(vs) < 2:
        raise ComplexConstructionError("too few vertices", {"needed": 2, "given": len(vs)})
    return SimplicialComplex(frozenset(c) for c in combinations(vs, len(vs) - 1))


def standard_ball(labels: Sequence[LabelLike]) -> SimplicialComplex:
    """V̄: the full simplex on V."""
    vs = _distinct(labels)
    if len(vs) < 2:
        raise ComplexConstructionError("too few vertices", {"needed": 2, "given": len(vs)})
    return SimplicialComplex([frozenset(vs)])


def cycle(labels: Sequence[LabelLike]) -> SimplicialComplex:
    """The 1-sphere with edges between cyclically consecutive labels."""
    vs = _distinct(labels)
    if len(vs) < 3:
        raise ComplexConstructionError("too few vertices", {"needed": 3, "given": len(vs)})
    return SimplicialComplex(frozenset((vs[k], vs[(k + 1) % len(vs)])) for k in range(len(vs)))


def join(*complexes: SimplicialComplex) -> SimplicialComplex:
    """
    Simplicial join; facets are unions of facets.

    Raises:
        ComplexConstructionError: if two factors share a vertex
    """
    out = SimplicialComplex([frozenset()])
    for k in complexes:
        overlap = out.vertices & k.vertices
        if overlap:
            raise ComplexConstructionError(
                "overlapping vertex sets", {"shared": sorted(str(v) for v in overlap)}
            )
        out = SimplicialComplex(a | b for a in out.facets for b in k.facets)
    return out


def is_subcomplex(small: SimplicialComplex, big: SimplicialComplex) -> bool:
    """Every facet of `small` is a face of `big`."""
    return all(big.contains(f) for f in small.facets)


def clique_complex(graph: nx.Graph, max_size: int = 3) -> SimplicialComplex:
    """Complex of all cliques with at most `max_size` vertices."""
    cliques = []
    for c in nx.enumerate_all_cliques(graph):
        if len(c) > max_size:
            break
        cliques.append(frozenset(c))
    return SimplicialComplex.from_faces(cliques)

"""
Permutation groups acting on vertex labels.

Covers group closure from generators, facet-orbit generation, automorphism
and isomorphism search by backtracking, purity of an action and the
quotient complex of a pure action.
"""

import re
from math import lcm
import logging
from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .complex_core import (
    LabelLike,
    Simplex,
    SimplicialComplex,
    Vertex,
    format_simplex,
    simplex,
    sorted_simplex,
    vertex,
)
from .monitoring import get_metrics
from .utils import ComplexConstructionError, GroupError, ImpureActionError

logger = logging.getLogger(__name__)

MAX_GROUP_ORDER = 50_000

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class VertexMap:
    """An injective map between two finite label sets."""

    def __init__(self, mapping: Mapping[Vertex, Vertex]):
        self._map: Dict[Vertex, Vertex] = dict(mapping)
        if len(set(self._map.values())) != len(self._map):
            raise GroupError("not a bijection", {"mapping": self.describe()})

    def __call__(self, v: Vertex) -> Vertex:
        return self._map.get(v, v)

    @property
    def domain(self) -> FrozenSet[Vertex]:
        return frozenset(self._map)

    @property
    def codomain(self) -> FrozenSet[Vertex]:
        return frozenset(self._map.values())

    def items(self) -> List[Tuple[Vertex, Vertex]]:
        return sorted(self._map.items())

    def apply(self, s: Iterable[Vertex]) -> Simplex:
        return frozenset(self(v) for v in s)

    def apply_complex(self, k: SimplicialComplex) -> SimplicialComplex:
        return SimplicialComplex((self.apply(f) for f in k.facets), name=k.name)

    def inverse(self) -> 'VertexMap':
        return VertexMap({b: a for a, b in self._map.items()})

    def describe(self) -> str:
        return ", ".join(f"{a}->{b}" for a, b in sorted(self._map.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexMap):
            return NotImplemented
        return self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def __repr__(self) -> str:
        return f"VertexMap({self.describe()})"


class Permutation(VertexMap):
    """
    A bijection of a label set onto itself.

    Equality ignores fixed points, so the identity on any domain equals the
    identity on any other.
    """

    def __init__(self, mapping: Mapping[Vertex, Vertex]):
        super().__init__(mapping)
        if set(self._map) != set(self._map.values()):
            raise GroupError("not a bijection", {"mapping": self.describe()})
        self._key = frozenset((a, b) for a, b in self._map.items() if a != b)

    @classmethod
    def identity(cls, domain: Iterable[Vertex]) -> 'Permutation':
        return cls({v: v for v in domain})

    @classmethod
    def from_function(cls, domain: Iterable[Vertex], fn: Callable[[Vertex], Vertex]) -> 'Permutation':
        return cls({v: fn(v) for v in domain})

    @classmethod
    def from_cycles(cls, text: str, domain: Optional[Iterable[LabelLike]] = None) -> 'Permutation':
        """
        Parse cycle notation.

        Examples:
            >>> p = Permutation.from_cycles("(x11 x22)(x33 x44)")
            >>> str(p(Vertex.parse("x11")))
            'x22'
        """
        mapping: Dict[Vertex, Vertex] = {}
        stripped = _CYCLE_RE.sub("", text).strip()
        if stripped:
            raise GroupError("malformed cycle notation", {"text": text})
        for body in _CYCLE_RE.findall(text):
            labels = [vertex(tok) for tok in body.replace(",", " ").split()]
            if len(set(labels)) != len(labels):
                raise GroupError("repeated label in cycle", {"cycle": body})
            for a, b in zip(labels, labels[1:] + labels[:1]):
                if a in mapping:
                    raise GroupError("cycles are not disjoint", {"label": str(a)})
                mapping[a] = b
        for v in domain or ():
            mapping.setdefault(vertex(v), vertex(v))
        return cls(mapping)

    @classmethod
    def from_index_map(cls, sigma: Mapping[int, int], domain: Iterable[Vertex],
                       symmetric: bool = False) -> 'Permutation':
        """
        Permutation induced by a permutation of the indices 1..4.

        x_ij -> x_{sigma(i) sigma(j)}; with `symmetric` the image is
        normalized to x_{min,max} (labels of the form x_ij with i <= j).
        """
        def image(v: Vertex) -> Vertex:
            if not v.is_pair:
                return v
            i, j = sigma.get(v.i, v.i), sigma.get(v.j, v.j)
            return Vertex.unordered(i, j) if symmetric else Vertex.pair(i, j)
        return cls.from_function(domain, image)

    @classmethod
    def transposition_of_indices(cls, domain: Iterable[Vertex]) -> 'Permutation':
        """τ: x_ij <-> x_ji."""
        return cls.from_function(domain, lambda v: v.transposed())

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        """(self * other)(v) = self(other(v))."""
        domain = set(self._map) | set(other._map)
        return Permutation({v: self(other(v)) for v in domain})

    def __pow__(self, n: int) -> 'Permutation':
        base = self if n >= 0 else self.inverse()
        out = Permutation.identity(self._map)
        for _ in range(abs(n)):
            out = base * out
        return out

    def inverse(self) -> 'Permutation':
        return Permutation({b: a for a, b in self._map.items()})

    def is_identity(self) -> bool:
        return not self._key

    def support(self) -> FrozenSet[Vertex]:
        return frozenset(a for a, _ in self._key)

    def cycles(self) -> List[Tuple[Vertex, ...]]:
        seen = set()
        out = []
        for start in sorted(self.support()):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        out = 1
        for c in self.cycles():
            out = lcm(out, len(c))
        return out

    def sort_key(self, domain: Sequence[Vertex]) -> Tuple[Vertex, ...]:
        return tuple(self(v) for v in domain)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(v) for v in c) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation('{self}')"


class PermGroup:
    """
    A finite permutation group given by generators and its enumerated elements.
    """

    def __init__(self, generators: Sequence[Permutation], elements: Iterable[Permutation],
                 domain: Iterable[Vertex]):
        self.domain: Tuple[Vertex, ...] = tuple(sorted(set(domain)))
        self.generators: List[Permutation] = list(generators)
        self._elements: FrozenSet[Permutation] = frozenset(elements)

    @property
    def order(self) -> int:
        return len(self._elements)

    @property
    def elements(self) -> FrozenSet[Permutation]:
        return self._elements

    def sorted_elements(self) -> List[Permutation]:
        return sorted(self._elements, key=lambda p: p.sort_key(self.domain))

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.sorted_elements())

    def __contains__(self, p: Permutation) -> bool:
        return p in self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def is_subgroup_of(self, other: 'PermGroup') -> bool:
        return self._elements <= other._elements

    def orbit(self, v: LabelLike) -> FrozenSet[Vertex]:
        v = vertex(v)
        return frozenset(g(v) for g in self._elements)

    def orbits(self) -> List[FrozenSet[Vertex]]:
        """Vertex orbits, each sorted by its minimum label."""
        left = set(self.domain)
        out = []
        for v in self.domain:
            if v in left:
                orb = self.orbit(v)
                left -= orb
                out.append(orb)
        return out

    def stabilizer(self, s: Iterable[Vertex]) -> List[Permutation]:
        """Elements mapping the vertex set s onto itself."""
        s = frozenset(s)
        return [g for g in self.sorted_elements() if g.apply(s) == s]

    def element_orders(self) -> List[int]:
        return sorted(g.order() for g in self._elements)

    def center(self) -> List[Permutation]:
        gens = self.generators or list(self._elements)
        return [z for z in self.sorted_elements() if all(z * g == g * z for g in gens)]

    def __repr__(self) -> str:
        return f"<PermGroup order={self.order} generators={len(self.generators)}>"


def _common_domain(gens: Sequence[Permutation], domain: Optional[Iterable[Vertex]]) -> FrozenSet[Vertex]:
    if domain is not None:
        dom = frozenset(vertex(v) for v in domain)
    elif gens:
        dom = gens[0].domain
    else:
        raise GroupError("empty generator list needs an explicit domain")
    for g in gens:
        if g.domain != dom:
            raise GroupError(
                "generators act on different label sets",
                {"expected": sorted(str(v) for v in dom), "got": sorted(str(v) for v in g.domain)}
            )
    return dom


def _closure(gens: Sequence[Permutation], dom: FrozenSet[Vertex]) -> FrozenSet[Permutation]:
    ident = Permutation.identity(dom)
    elements = {ident}
    frontier = deque([ident])
    while frontier:
        e = frontier.popleft()
        for g in gens:
            h = g * e
            if h not in elements:
                elements.add(h)
                frontier.append(h)
                if len(elements) > MAX_GROUP_ORDER:
                    raise GroupError("group too large", {"limit": MAX_GROUP_ORDER})
    return frozenset(elements)


def generate_group(gens: Sequence[Permutation], domain: Optional[Iterable[Vertex]] = None) -> PermGroup:
    """
    Enumerate the group generated by `gens` by breadth-first closure.

    Args:
        gens: Generators; all must share one domain
        domain: Required only when `gens` is empty

    Returns:
        PermGroup with every element enumerated
    """
    dom = _common_domain(gens, domain)
    elements = _closure(gens, dom)
    logger.debug("generated group of order %d from %d generators", len(elements), len(gens))
    return PermGroup(gens, elements, dom)


def group_from_elements(elements: Iterable[Permutation], domain: Iterable[Vertex]) -> PermGroup:
    """Wrap a known element set, picking a small generating set greedily."""
    dom = frozenset(domain)
    elems = sorted(set(elements), key=lambda p: p.sort_key(sorted(dom)))
    gens: List[Permutation] = []
    span: FrozenSet[Permutation] = frozenset([Permutation.identity(dom)])
    for e in elems:
        if e not in span:
            gens.append(e)
            span = _closure(gens, dom)
    return PermGroup(gens, elems, dom)


@dataclass(frozen=True)
class GeneratedComplex:
    """Result of orbit generation: the complex, its per-basic-facet orbit sizes and the group."""
    complex: SimplicialComplex
    orbit_sizes: Tuple[int, ...]
    group: PermGroup


def generate_complex(gens: Sequence[Permutation], basic_facets: Sequence[Iterable[LabelLike]],
                     name: str = "", group: Optional[PermGroup] = None) -> GeneratedComplex:
    """
    Union of the facet orbits of `basic_facets` under the generated group.

    Raises:
        GroupError: a basic facet uses a label outside the generators' domain
        ComplexConstructionError: "orbit closure not a facet set"
    """
    group = group or generate_group(gens)
    dom = frozenset(group.domain)
    facets = set()
    sizes = []
    for basic in basic_facets:
        f = simplex(basic)
        if not f <= dom:
            raise GroupError("basic facet uses labels outside the group domain",
                             {"facet": format_simplex(f)})
        orbit = {g.apply(f) for g in group.elements}
        sizes.append(len(orbit))
        facets |= orbit
    try:
        k = SimplicialComplex(facets, name=name)
    except ComplexConstructionError as e:
        raise ComplexConstructionError("orbit closure not a facet set", e.details)
    return GeneratedComplex(k, tuple(sizes), group)


# -- automorphisms and isomorphisms ----------------------------------------

def _link_vertex_sets(k: SimplicialComplex) -> Dict[Simplex, FrozenSet[Vertex]]:
    """Vertex set of the link of every nonempty face."""
    out: Dict[Simplex, set] = defaultdict(set)
    for f in k.facets:
        for r in range(1, len(f) + 1):
            for c in combinations(f, r):
                out[frozenset(c)] |= f - set(c)
    return {s: frozenset(v) for s, v in out.items()}


def vertex_invariant(k: SimplicialComplex, v: Vertex,
                     links: Optional[Dict[Simplex, FrozenSet[Vertex]]] = None) -> Tuple:
    """(degree, link f-vector, sorted edge degrees to neighbours)."""
    links = links if links is not None else _link_vertex_sets(k)
    nbrs = links[frozenset([v])]
    edge_degrees = tuple(sorted(len(links[frozenset([v, u])]) for u in nbrs))
    return (len(nbrs), k.link([v]).f_vector(), edge_degrees)


class _IsomorphismSearch:
    """Backtracking over vertex images, pruned by invariants and face degrees."""

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex):
        self.source = source
        self.target = target
        self.links1 = _link_vertex_sets(source)
        self.links2 = _link_vertex_sets(target)
        self.deg1 = {s: len(v) for s, v in self.links1.items()}
        self.deg2 = {s: len(v) for s, v in self.links2.items()}
        self.inv1 = {v: vertex_invariant(source, v, self.links1) for v in source.vertices}
        self.inv2 = {v: vertex_invariant(target, v, self.links2) for v in target.vertices}
        self.faces_at: Dict[Vertex, List[Simplex]] = defaultdict(list)
        for s in self.deg1:
            for v in s:
                self.faces_at[v].append(s)
        self.order = self._search_order()
        self.nodes = 0

    def _search_order(self) -> List[Vertex]:
        graph = self.source.edge_graph()
        classes = defaultdict(int)
        for inv in self.inv2.values():
            classes[inv] += 1
        remaining = set(self.source.vertices)
        order: List[Vertex] = []
        while remaining:
            start = min(remaining, key=lambda v: (classes[self.inv1[v]], v))
            queue = deque([start])
            remaining.discard(start)
            while queue:
                v = queue.popleft()
                order.append(v)
                for u in sorted(graph[v], key=lambda u: (classes[self.inv1[u]], u)):
                    if u in remaining:
                        remaining.discard(u)
                        queue.append(u)
        return order

    def compatible(self) -> bool:
        if self.source.f_vector() != self.target.f_vector():
            return False
        return sorted(self.inv1.values()) == sorted(self.inv2.values())

    def run(self, first_only: bool) -> List[Dict[Vertex, Vertex]]:
        if not self.compatible():
            return []
        results: List[Dict[Vertex, Vertex]] = []
        assign: Dict[Vertex, Vertex] = {}
        used = set()
        targets = sorted(self.target.vertices)

        def consistent(u: Vertex) -> bool:
            for s in self.faces_at[u]:
                if all(x in assign for x in s):
                    image = frozenset(assign[x] for x in s)
                    if self.deg2.get(image) != self.deg1[s]:
                        return False
            return True

        def extend(idx: int) -> bool:
            self.nodes += 1
            if idx == len(self.order):
                results.append(dict(assign))
                return first_only
            u = self.order[idx]
            for w in targets:
                if w in used or self.inv2[w] != self.inv1[u]:
                    continue
                assign[u] = w
                used.add(w)
                if consistent(u) and extend(idx + 1):
                    return True
                del assign[u]
                used.discard(w)
            return False

        extend(0)
        get_metrics().increment("isomorphism.nodes", self.nodes)
        verified = []
        for m in results:
            if VertexMap(m).apply_complex(self.source) == self.target:
                verified.append(m)
        return verified


def find_isomorphism(k1: SimplicialComplex, k2: SimplicialComplex) -> Optional[VertexMap]:
    """A facet-preserving vertex bijection k1 -> k2, or None when none exists."""
    found = _IsomorphismSearch(k1, k2).run(first_only=True)
    return VertexMap(found[0]) if found else None


def all_isomorphisms(k1: SimplicialComplex, k2: SimplicialComplex) -> List[VertexMap]:
    return [VertexMap(m) for m in _IsomorphismSearch(k1, k2).run(first_only=False)]


def automorphism_group(k: SimplicialComplex) -> PermGroup:
    """All vertex permutations mapping the facet set onto itself."""
    maps = _IsomorphismSearch(k, k).run(first_only=False)
    return group_from_elements((Permutation(m) for m in maps), k.vertices)


# -- pure actions and quotients ---------------------------------------------

@dataclass(frozen=True)
class PurityWitness:
    condition: str
    orbit: Tuple[Vertex, ...]
    simplex: Tuple[Vertex, ...]


@dataclass(frozen=True)
class GroupActionReport:
    is_pure: bool
    failing_condition: Optional[PurityWitness] = None


def require_automorphisms(k: SimplicialComplex, group: PermGroup) -> None:
    for g in group.generators or group.sorted_elements():
        if g.apply_complex(k) != k:
            raise GroupError("group does not act by automorphisms", {"element": str(g)})


def is_pure_action(k: SimplicialComplex, group: PermGroup) -> GroupActionReport:
    """
    Check purity of the action.

    (a) distinct vertices in one orbit never span an edge;
    (b) for every face α the stabilizer of α is transitive on
        θ ∩ V(lk α) for every orbit θ.
    """
    require_automorphisms(k, group)
    orbits = [o & k.vertices for o in group.orbits()]
    orbits = [o for o in orbits if o]
    for orb in orbits:
        for u, v in combinations(sorted(orb), 2):
            if k.contains([u, v]):
                return GroupActionReport(False, PurityWitness("a", sorted_simplex(orb), (u, v)))

    links = _link_vertex_sets(k)
    links[frozenset()] = k.vertices
    for face in sorted(links, key=lambda s: (len(s), sorted_simplex(s))):
        lk = links[face]
        stab = None
        for orb in orbits:
            hit = orb & lk
            if len(hit) < 2:
                continue
            if stab is None:
                stab = group.stabilizer(face)
            seed = min(hit)
            reach = {g(seed) for g in stab}
            if not hit <= reach:
                return GroupActionReport(False, PurityWitness("b", sorted_simplex(orb), sorted_simplex(face)))
    return GroupActionReport(True)


def orbit_representative(group: PermGroup) -> Dict[Vertex, Vertex]:
    """Each vertex mapped to the minimum label of its orbit."""
    rep = {}
    for orb in group.orbits():
        m = min(orb)
        for v in orb:
            rep[v] = m
    return rep


def quotient_complex(k: SimplicialComplex, group: PermGroup, name: str = "") -> SimplicialComplex:
    """
    K/G for a pure action, vertices named by their orbit minima.

    Raises:
        ImpureActionError: carrying the purity witness
    """
    report = is_pure_action(k, group)
    if not report.is_pure:
        raise ImpureActionError(report)
    rep = orbit_representative(group)
    return SimplicialComplex((frozenset(rep.get(v, v) for v in f) for f in k.facets), name=name)


def orbits_on_faces(k: SimplicialComplex, group: PermGroup, d: int) -> List[List[Simplex]]:
    """Partition of the d-faces into orbits, in canonical order."""
    left = set(k.faces(d))
    out = []
    for f in sorted(k.faces(d), key=sorted_simplex):
        if f in left:
            orb = {g.apply(f) for g in group.elements}
            left -= orb
            out.append(sorted(orb, key=sorted_simplex))
    return out

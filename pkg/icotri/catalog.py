"""
Named complexes and the icosahedron machinery behind them.

Every entry is rebuilt from its recipe (orbit generation, quotient, edge
rule, starring or explicit facets) and checked against its expected
f-vector before it is handed out.
"""

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .complex_core import (
    Simplex,
    SimplicialComplex,
    Vertex,
    clique_complex,
    format_simplex,
    is_subcomplex,
    join,
    simplex,
    sorted_simplex,
    standard_sphere,
)
from .homology import is_homology_sphere
from .moves_engine import star_vertex
from .perm_group import (
    Permutation,
    PermGroup,
    VertexMap,
    automorphism_group,
    find_isomorphism,
    generate_complex,
    generate_group,
    orbits_on_faces,
    quotient_complex,
    require_automorphisms,
)
from .utils import CatalogError, IcosahedronError

logger = logging.getLogger(__name__)

DATA_PATH = Path(__file__).parent / "data" / "catalog.json"

CATALOG_NAMES = (
    "S2_4", "icosahedron", "RP2_6", "S2xS2_16", "CP2_10", "S2xS2_16_prime",
    "S2xS2_12", "I1", "I2", "S2_8", "octahedron", "prism_boundary",
)

EXPECTED_F_VECTORS: Dict[str, Tuple[int, ...]] = {
    "S2_4": (4, 6, 4),
    "icosahedron": (12, 30, 20),
    "RP2_6": (6, 15, 10),
    "S2xS2_16": (16, 84, 216, 240, 96),
    "CP2_10": (10, 45, 110, 120, 48),
    "S2xS2_16_prime": (16, 84, 216, 240, 96),
    "S2xS2_12": (12, 60, 160, 180, 72),
    "I1": (12, 30, 20),
    "I2": (12, 30, 20),
    "S2_8": (8, 18, 12),
    "octahedron": (6, 12, 8),
    "prism_boundary": (6, 12, 8),
}

DIAGONAL = tuple(Vertex.pair(i, i) for i in range(1, 5))


def ordered_labels() -> List[Vertex]:
    return [Vertex.pair(i, j) for i in range(1, 5) for j in range(1, 5)]


def unordered_labels() -> List[Vertex]:
    return [Vertex.pair(i, j) for i in range(1, 5) for j in range(i, 5)]


def off_diagonal_labels() -> List[Vertex]:
    return [Vertex.pair(i, j) for i in range(1, 5) for j in range(1, 5) if i != j]


_DOMAINS = {
    "ordered": ordered_labels,
    "unordered": unordered_labels,
    "off_diagonal": off_diagonal_labels,
}


@dataclass(frozen=True)
class NamedComplex:
    """A catalog entry: the complex, how it was made, and its constructing group if any."""
    name: str
    complex: SimplicialComplex
    provenance: str
    group: Optional[PermGroup] = None
    orbit_sizes: Tuple[int, ...] = ()

    def basic_facets(self) -> List[Tuple[Vertex, ...]]:
        """One facet per group orbit (all facets when there is no group)."""
        k = self.complex
        if self.group is None:
            return k.sorted_facets()
        return [sorted_simplex(orbit[0]) for orbit in orbits_on_faces(k, self.group, k.dim)]


@lru_cache(maxsize=1)
def _catalog_data() -> Dict[str, Any]:
    with open(DATA_PATH, "r") as f:
        return json.load(f)


def index_permutation(cycles: str, domain: Sequence[Vertex], symmetric: bool = False) -> Permutation:
    """
    Permutation of labels induced by a permutation of indices in cycle notation.

    Examples:
        >>> p = index_permutation("(1 2 3)", ordered_labels())
        >>> str(p(Vertex.pair(1, 3)))
        'x21'
    """
    sigma: Dict[int, int] = {}
    for body in cycles.replace(")", " ").split("("):
        idx = [int(t) for t in body.split()]
        for a, b in zip(idx, idx[1:] + idx[:1]):
            sigma[a] = b
    return Permutation.from_index_map(sigma, domain, symmetric=symmetric)


def _generator(spec: Dict[str, Any], domain: Sequence[Vertex], symmetric: bool) -> Permutation:
    if "indices" in spec:
        return index_permutation(spec["indices"], domain, symmetric)
    if spec.get("transpose"):
        return Permutation.transposition_of_indices(domain)
    if "cycles" in spec:
        return Permutation.from_cycles(spec["cycles"], domain)
    raise CatalogError("unknown generator spec", {"spec": spec})


def group_for(name: str) -> PermGroup:
    """The constructing group of an orbit-generated entry."""
    entry = _catalog_data().get(name)
    if entry is None or "generators" not in entry:
        raise CatalogError(f"no generators recorded for '{name}'")
    domain = _DOMAINS[entry["labels"]]()
    symmetric = entry["labels"] == "unordered"
    gens = [_generator(g, domain, symmetric) for g in entry["generators"]]
    return generate_group(gens, domain)


def s2xs2_12_generators() -> Tuple[Permutation, Permutation]:
    """(h, g) for (S²×S²)₁₂; g has order 12 and g⁶ is the common antipode of I1 and I2."""
    domain = off_diagonal_labels()
    h, g = (_generator(spec, domain, False) for spec in _catalog_data()["S2xS2_12"]["generators"])
    return h, g


def s2xs2_12_a4_basic_facets() -> List[Simplex]:
    """Six facets of (S²×S²)₁₂ whose A4-orbits are its 72 facets."""
    return [simplex(f) for f in _catalog_data()["S2xS2_12"]["a4_basic_facets"]]


def a4_basic_facets(k: SimplicialComplex) -> List[Simplex]:
    """Orbit-minimum facets of k on {x_ij : i != j} under A4 acting on both indices."""
    return [orbit[0] for orbit in orbits_on_faces(k, a4_group(off_diagonal_labels()), k.dim)]


def a4_orbit_minimum(f: Simplex) -> Simplex:
    return min((g.apply(f) for g in a4_group(off_diagonal_labels()).elements), key=sorted_simplex)


def _from_orbits(name: str, provenance: str = "orbits") -> NamedComplex:
    entry = _catalog_data()[name]
    generated = generate_complex([], entry["basic_facets"], name=name, group=group_for(name))
    expected = tuple(entry["orbit_sizes"])
    if generated.orbit_sizes != expected:
        raise CatalogError(f"orbit sizes of '{name}' do not match",
                           {"expected": expected, "got": generated.orbit_sizes})
    return NamedComplex(name, generated.complex, provenance, generated.group, generated.orbit_sizes)


def tau_group(domain: Sequence[Vertex]) -> PermGroup:
    """⟨τ⟩ with τ: x_ij <-> x_ji."""
    return generate_group([Permutation.transposition_of_indices(domain)])


def a4_group(domain: Sequence[Vertex], symmetric: bool = False) -> PermGroup:
    """A4 acting on both indices, generated by (1 2 3) and (1 2)(3 4)."""
    return generate_group([
        index_permutation("(1 2 3)", domain, symmetric),
        index_permutation("(1 2)(3 4)", domain, symmetric),
    ])


# -- icosahedra -----------------------------------------------------------------

def _is_even(p: Sequence[int]) -> bool:
    inversions = sum(1 for a, b in combinations(p, 2) if a > b)
    return inversions % 2 == 0


def icosahedron_fig1() -> SimplicialComplex:
    """
    Icosahedron on {x_ij : i != j}.

    Edges join labels in a common row or column, plus x_ij x_kl for every
    even permutation (i, j, k, l); triangles are the 3-cliques.
    """
    g = nx.Graph()
    labels = off_diagonal_labels()
    g.add_nodes_from(labels)
    for u, v in combinations(labels, 2):
        if u.i == v.i or u.j == v.j:
            g.add_edge(u, v)
    for p in permutations(range(1, 5)):
        if _is_even(p):
            g.add_edge(Vertex.pair(p[0], p[1]), Vertex.pair(p[2], p[3]))
    k = clique_complex(g, max_size=3).renamed("icosahedron")
    require_icosahedron(k)
    return k


def require_icosahedron(k: SimplicialComplex) -> None:
    """
    Raises:
        IcosahedronError: unless k is a 12-vertex 2-sphere with f = (12, 30, 20)
            and every vertex of degree 5
    """
    if k.f_vector() != (12, 30, 20):
        raise IcosahedronError("not an icosahedron", {"f_vector": k.f_vector()})
    degrees = {d for _, d in k.edge_graph().degree()}
    if degrees != {5} or not is_homology_sphere(k, 2):
        raise IcosahedronError("not an icosahedron", {"degrees": sorted(degrees)})


def antipodal_map(k: SimplicialComplex) -> Permutation:
    """x ↦ the unique vertex at graph distance 3."""
    require_icosahedron(k)
    dist = dict(nx.all_pairs_shortest_path_length(k.edge_graph()))
    mapping = {}
    for v in k.vertices:
        far = [u for u, d in dist[v].items() if d == 3]
        if len(far) != 1:
            raise IcosahedronError("vertex has no unique antipode", {"vertex": str(v)})
        mapping[v] = far[0]
    return Permutation(mapping)


def _from_edges(edges: Iterable[Sequence[str]], name: str) -> SimplicialComplex:
    g = nx.Graph()
    g.add_edges_from((Vertex.parse(a), Vertex.parse(b)) for a, b in edges)
    k = clique_complex(g, max_size=3).renamed(name)
    require_icosahedron(k)
    return k


def distance2_complex(k: SimplicialComplex, name: str = "") -> SimplicialComplex:
    """
    Clique complex of the distance-2 graph of an icosahedron.

    Raises:
        IcosahedronError: if the result is not an icosahedron
    """
    require_icosahedron(k)
    g = nx.Graph()
    g.add_nodes_from(k.vertices)
    for v, dists in nx.all_pairs_shortest_path_length(k.edge_graph()):
        g.add_edges_from((v, u) for u, d in dists.items() if d == 2)
    out = clique_complex(g, max_size=3).renamed(name)
    require_icosahedron(out)
    return out


def check_antimorphism(f: VertexMap, i1: SimplicialComplex, i2: SimplicialComplex) -> bool:
    """Distance one in I1 iff distance two in I2, and distance two iff distance one."""
    d1 = dict(nx.all_pairs_shortest_path_length(i1.edge_graph()))
    d2 = dict(nx.all_pairs_shortest_path_length(i2.edge_graph()))
    if set(f.domain) != set(i1.vertices) or set(f.codomain) != set(i2.vertices):
        return False
    for x, y in combinations(sorted(i1.vertices), 2):
        a, b = d1[x][y], d2[f(x)][f(y)]
        if (a == 1) != (b == 2) or (a == 2) != (b == 1):
            return False
    return True


@dataclass(frozen=True)
class QuadruplePair:
    """Two antipodal quadruples of disjoint triangles, each partitioning the vertices."""
    first: Tuple[Simplex, ...]
    second: Tuple[Simplex, ...]

    def as_set(self) -> frozenset:
        return frozenset([frozenset(self.first), frozenset(self.second)])


def _triangle_partitions(k: SimplicialComplex) -> List[frozenset]:
    triangles = sorted(k.faces(2), key=sorted_simplex)
    out: List[frozenset] = []

    def extend(covered: frozenset, chosen: List[Simplex]) -> None:
        left = k.vertices - covered
        if not left:
            out.append(frozenset(chosen))
            return
        v = min(left)
        for t in triangles:
            if v in t and not t & covered:
                extend(covered | t, chosen + [t])

    extend(frozenset(), [])
    return out


def antipodal_quadruple_pairs(k: SimplicialComplex) -> List[QuadruplePair]:
    """All pairs {Q, Q̄} of triangle quadruples partitioning V(k), Q̄ the antipodal image of Q."""
    anti = antipodal_map(k)
    seen = set()
    pairs = []
    for q in _triangle_partitions(k):
        image = frozenset(anti.apply(t) for t in q)
        key = frozenset([q, image])
        if image == q or key in seen:
            continue
        seen.add(key)
        first, second = sorted([q, image], key=lambda s: sorted(sorted_simplex(t) for t in s))
        pairs.append(QuadruplePair(
            tuple(sorted(first, key=sorted_simplex)), tuple(sorted(second, key=sorted_simplex))
        ))
    return pairs


@dataclass(frozen=True)
class QuadrupleReport:
    pairs: int
    orbits: int
    stabilizer_order: int
    automorphisms: int

    @property
    def transitive(self) -> bool:
        return self.orbits == 1


def quadruple_report(k: SimplicialComplex) -> QuadrupleReport:
    """Count the antipodal quadruple pairs and how Aut(k) acts on them."""
    pairs = antipodal_quadruple_pairs(k)
    aut = automorphism_group(k)

    def image(g: Permutation, p: QuadruplePair) -> frozenset:
        return frozenset([
            frozenset(g.apply(t) for t in p.first), frozenset(g.apply(t) for t in p.second)
        ])

    keys = {p.as_set() for p in pairs}
    left = set(keys)
    orbits = 0
    while left:
        start = next(iter(left))
        p = next(q for q in pairs if q.as_set() == start)
        left -= {image(g, p) for g in aut}
        orbits += 1
    stab = sum(1 for g in aut if image(g, pairs[0]) == pairs[0].as_set()) if pairs else 0
    return QuadrupleReport(len(pairs), orbits, stab, aut.order)


# -- antimorphic pairs --------------------------------------------------------------

@dataclass(frozen=True)
class IcosahedronPair:
    """Two icosahedra on one vertex set with the identity as an antimorphism."""
    I1: SimplicialComplex
    I2: SimplicialComplex

    def identity(self) -> VertexMap:
        return VertexMap({v: v for v in self.I1.vertices})

    def is_antimorphic(self) -> bool:
        return self.I1.vertices == self.I2.vertices and check_antimorphism(self.identity(), self.I1, self.I2)

    def antipodes_agree(self) -> bool:
        return antipodal_map(self.I1) == antipodal_map(self.I2)


@dataclass(frozen=True)
class TriangleBijection:
    phi: Dict[Simplex, Simplex]
    psi: Dict[Simplex, Simplex]


def _matching_triangle(t: Simplex, other: SimplicialComplex) -> Simplex:
    """The unique triangle t' of `other` whose three edge-neighbours all have their third vertex in t."""
    found = []
    triangles = other.faces(2)
    for cand in triangles:
        ok = True
        for edge in combinations(cand, 2):
            e = frozenset(edge)
            thirds = [s - e for s in triangles if e < s and s != cand]
            if len(thirds) != 1 or not thirds[0] <= t:
                ok = False
                break
        if ok:
            found.append(cand)
    if len(found) != 1:
        raise IcosahedronError("triangle correspondence is not unique",
                               {"triangle": format_simplex(t), "candidates": len(found)})
    return found[0]


def phi_psi(pair: IcosahedronPair) -> TriangleBijection:
    """
    φ: triangles(I1) -> triangles(I2) and ψ: triangles(I2) -> triangles(I1).

    Raises:
        IcosahedronError: a triangle has zero or several candidates
    """
    if not pair.is_antimorphic():
        raise IcosahedronError("pair is not antimorphic")
    phi = {t: _matching_triangle(t, pair.I2) for t in pair.I1.faces(2)}
    psi = {t: _matching_triangle(t, pair.I1) for t in pair.I2.faces(2)}
    return TriangleBijection(phi, psi)


def antipodal_on_triangles(k: SimplicialComplex) -> Dict[Simplex, Simplex]:
    anti = antipodal_map(k)
    return {t: anti.apply(t) for t in k.faces(2)}


def intertwining_failures(bij: TriangleBijection, isos: Iterable[VertexMap]) -> int:
    """Number of isomorphisms f with ψ(f(Δ)) != f(φ(Δ)) for some Δ."""
    bad = 0
    for f in isos:
        if any(bij.psi.get(f.apply(t)) != f.apply(bij.phi[t]) for t in bij.phi):
            bad += 1
    return bad


def maps_inducing_phi(bij: TriangleBijection, candidates: Iterable[VertexMap]) -> List[VertexMap]:
    """Candidates f with f(Δ) = φ(Δ) for every triangle Δ."""
    return [f for f in candidates if all(f.apply(t) == s for t, s in bij.phi.items())]


def figure2_pair() -> IcosahedronPair:
    return IcosahedronPair(build("I1").complex, build("I2").complex)


def build_s2xs2_12_from_pair(pair: IcosahedronPair,
                             bij: Optional[TriangleBijection] = None) -> SimplicialComplex:
    """
    Facets: the open neighbourhoods N_I1(x), and (Δ ∪ φ(Δ)) minus one vertex of φ(Δ).

    Raises:
        ComplexConstructionError: if any facet does not have five vertices
    """
    bij = bij or phi_psi(pair)
    g = pair.I1.edge_graph()
    facets = [frozenset(g[v]) for v in sorted(pair.I1.vertices)]
    for t, s in bij.phi.items():
        facets.extend((t | s) - {y} for y in s)
    bad = [f for f in facets if len(f) != 5]
    if bad:
        raise IcosahedronError("facet size is not 5", {"facet": format_simplex(bad[0])})
    return SimplicialComplex(facets, name="S2xS2_12")


# -- joins --------------------------------------------------------------------------

def join_f_vector(f1: Sequence[int], f2: Sequence[int]) -> Tuple[int, ...]:
    """f-vector of a join: convolution of (1, f1) and (1, f2)."""
    a, b = [1] + list(f1), [1] + list(f2)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out[1:])


def join_split_failures(k: SimplicialComplex, first: SimplicialComplex,
                        second: SimplicialComplex) -> List[Simplex]:
    """Facets of k whose parts on V(first) and V(second) are not faces of first and second."""
    bad = []
    for f in sorted(k.facets, key=sorted_simplex):
        a, b = f & first.vertices, f & second.vertices
        if a | b != f or not first.contains(a) or not second.contains(b):
            bad.append(f)
    return bad


@dataclass
class JoinEmbeddingReport:
    checks: Dict[str, bool] = field(default_factory=dict)
    failures: Dict[str, List[str]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def verify_join_embeddings() -> JoinEmbeddingReport:
    """(S²×S²)₁₆ ⊆ S²₄ ∗ icosahedron, ℂP²₁₀ ⊆ S²₄ ∗ RP²₆ and the induced subcomplex identities."""
    s2_4 = build("S2_4").complex
    ico = build("icosahedron").complex
    rp2 = build("RP2_6").complex
    cp2 = build("CP2_10").complex
    s16 = build("S2xS2_16").complex
    report = JoinEmbeddingReport()
    for key, (k, other) in {
        "S2xS2_16 in S2_4 * icosahedron": (s16, ico),
        "CP2_10 in S2_4 * RP2_6": (cp2, rp2),
    }.items():
        bad = join_split_failures(k, s2_4, other)
        report.checks[key] = not bad
        if bad:
            report.failures[key] = [format_simplex(f) for f in bad]
    report.checks["CP2_10 induced on diagonal = S2_4"] = cp2.induced_subcomplex(s2_4.vertices) == s2_4
    report.checks["CP2_10 induced off diagonal = RP2_6"] = cp2.induced_subcomplex(rp2.vertices) == rp2
    whole = join(s2_4, ico)
    report.checks["join f-vector"] = whole.f_vector() == join_f_vector(s2_4.f_vector(), ico.f_vector())
    report.checks["S2_4 * icosahedron is a homology 5-sphere"] = is_homology_sphere(whole, 5)
    report.checks["S2xS2_16 subcomplex of the join"] = is_subcomplex(s16, whole)
    return report


# -- structure of the 12-vertex S2 x S2 ------------------------------------------

@dataclass
class StructuralReport:
    checks: Dict[str, bool] = field(default_factory=dict)
    values: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _transitive(k: SimplicialComplex, group: PermGroup, faces: Iterable[Simplex]) -> bool:
    faces = list(faces)
    if not faces:
        return True
    return {g.apply(faces[0]) for g in group} >= set(faces)


def structural_report_s2xs2_12() -> StructuralReport:
    """Degrees, edge links, degree-3 triangles and transitivity for (S²×S²)₁₂."""
    k = build("S2xS2_12").complex
    s2_8 = build("S2_8").complex
    report = StructuralReport()
    report.checks["vertex degrees 10"] = all(k.face_degree([v]) == 10 for v in k.vertices)
    report.checks["edge degrees 8"] = all(k.face_degree(e) == 8 for e in k.faces(1))
    report.checks["edge links are S2_8"] = all(
        find_isomorphism(k.link(e), s2_8) is not None for e in sorted(k.faces(1), key=sorted_simplex)
    )
    by_degree: Dict[int, List[Simplex]] = {}
    for t in k.faces(2):
        by_degree.setdefault(k.face_degree(t), []).append(t)
    report.values["triangle degrees"] = {d: len(ts) for d, ts in sorted(by_degree.items())}
    report.checks["triangle degrees in {3, 5}"] = set(by_degree) <= {3, 5}
    thin = SimplicialComplex(by_degree.get(3, []))
    report.checks["40 degree-3 triangles"] = len(thin.facets) == 40
    report.checks["degree-3 triangles form a weak pseudomanifold"] = thin.is_weak_pseudomanifold()
    parts = thin.strong_components()
    report.values["strong components"] = [len(p.facets) for p in parts]
    report.checks["two icosahedral components"] = len(parts) == 2 and all(
        p.f_vector() == (12, 30, 20) for p in parts
    )
    report.checks["components are I1 and I2"] = {p for p in parts} == {
        build("I1").complex, build("I2").complex
    }
    aut = automorphism_group(k)
    report.values["automorphism group order"] = aut.order
    report.checks["vertex transitive"] = _transitive(k, aut, [frozenset([v]) for v in k.vertices])
    report.checks["edge transitive"] = _transitive(k, aut, k.faces(1))
    for d, ts in sorted(by_degree.items()):
        report.checks[f"transitive on degree-{d} triangles"] = _transitive(k, aut, ts)
    return report


@dataclass
class EdgeLinkReport:
    link_f_vector: Tuple[int, ...]
    link_automorphisms: List[Permutation]
    two_neighborly_vertices: List[Vertex]

    @property
    def passed(self) -> bool:
        expected = Permutation.from_cycles("(x13 x24)(x14 x23)(x33 x44)")
        nontrivial = [g for g in self.link_automorphisms if not g.is_identity()]
        return (
            self.link_f_vector == (8, 18, 12)
            and len(self.link_automorphisms) == 2
            and nontrivial == [expected]
            and self.two_neighborly_vertices == list(DIAGONAL)
        )


def cp2_edge_link_report() -> EdgeLinkReport:
    """Automorphisms of lk(x11 x22) in ℂP²₁₀ and the vertices whose links are 2-neighbourly."""
    k = build("CP2_10").complex
    lk = k.link(simplex("x11 x22"))
    aut = automorphism_group(lk)
    neighborly = [v for v in sorted(k.vertices) if k.link([v]).neighborliness() >= 2]
    return EdgeLinkReport(lk.f_vector(), aut.sorted_elements(), neighborly)


# -- the catalog ------------------------------------------------------------------

def _octahedron() -> SimplicialComplex:
    return join(*(standard_sphere([f"a{i}", f"b{i}"]) for i in range(1, 4))).renamed("octahedron")


def _prism_boundary() -> SimplicialComplex:
    ball = SimplicialComplex([simplex("a1 b1 b2 b3"), simplex("a1 a2 b2 b3"), simplex("a1 a2 a3 b3")])
    return ball.boundary().renamed("prism_boundary")


def _s2_8() -> SimplicialComplex:
    k = star_vertex(_octahedron(), simplex("a1 a2 a3"), "c")
    return star_vertex(k, simplex("b1 b2 b3"), "d").renamed("S2_8")


def _cp2_from_quotient() -> NamedComplex:
    s16 = build("S2xS2_16").complex
    k = quotient_complex(s16, tau_group(ordered_labels()), name="CP2_10")
    return NamedComplex("CP2_10", k, "quotient", a4_group(unordered_labels(), symmetric=True))


def _build(name: str, recipe: str) -> NamedComplex:
    if name == "S2_4":
        return NamedComplex(name, standard_sphere(DIAGONAL).renamed(name), "standard sphere")
    if name == "icosahedron":
        return NamedComplex(name, icosahedron_fig1(), "edge rule", a4_group(off_diagonal_labels()))
    if name == "RP2_6":
        ico = icosahedron_fig1()
        k = quotient_complex(ico, tau_group(off_diagonal_labels()), name=name)
        return NamedComplex(name, k, "quotient")
    if name == "CP2_10":
        return _cp2_from_quotient() if recipe == "quotient" else _from_orbits(name)
    if name in ("S2xS2_16", "S2xS2_16_prime", "S2xS2_12"):
        return _from_orbits(name)
    if name == "I1":
        return NamedComplex(name, _from_edges(_catalog_data()["I1"]["edges"], name), "figure edges")
    if name == "I2":
        return NamedComplex(name, distance2_complex(build("I1").complex, name=name), "distance-2 rule")
    if name == "S2_8":
        return NamedComplex(name, _s2_8(), "starred octahedron")
    if name == "octahedron":
        return NamedComplex(name, _octahedron(), "join of three 0-spheres")
    if name == "prism_boundary":
        return NamedComplex(name, _prism_boundary(), "staircase prism boundary")
    raise CatalogError(f"unknown catalog entry '{name}'", {"known": list(CATALOG_NAMES)})


@lru_cache(maxsize=None)
def build(name: str, recipe: str = "default") -> NamedComplex:
    """
    Build a catalog entry and validate its f-vector.

    Args:
        name: One of CATALOG_NAMES
        recipe: "default"; for CP2_10 also "quotient" (the default) or "orbits"

    Raises:
        CatalogError: unknown name or recipe, or an f-vector mismatch
    """
    if name not in CATALOG_NAMES:
        raise CatalogError(f"unknown catalog entry '{name}'", {"known": list(CATALOG_NAMES)})
    if recipe not in ("default", "quotient", "orbits") or (recipe != "default" and name != "CP2_10"):
        raise CatalogError(f"unknown recipe '{recipe}' for '{name}'")
    if name == "CP2_10" and recipe == "default":
        recipe = "quotient"
    entry = _build(name, recipe)
    if entry.complex.f_vector() != EXPECTED_F_VECTORS[name]:
        raise CatalogError(f"f-vector of '{name}' does not match",
                           {"expected": EXPECTED_F_VECTORS[name], "got": entry.complex.f_vector()})
    if entry.group is not None:
        require_automorphisms(entry.complex, entry.group)
    logger.debug("built %s via %s: f=%s", name, entry.provenance, entry.complex.f_vector())
    return entry

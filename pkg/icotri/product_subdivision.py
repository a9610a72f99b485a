"""
The product cell complex S²₄ × S²₄ and simplicial subdivisions of it.

Cells are products A×B of nonempty proper subsets of {1, 2, 3, 4}; the
vertex x_ij sits at (e_i, e_j) in Q^6. All geometry is exact: each cell
gets an affine chart with integer coordinates and volumes are rational
determinants.
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import factorial
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from sympy import Matrix, Rational

from .complex_core import Simplex, SimplicialComplex, Vertex, format_simplex, sorted_simplex
from .perm_group import Permutation, generate_group, is_pure_action, orbit_representative
from .monitoring import get_metrics
from .utils import SubdivisionError

logger = logging.getLogger(__name__)

INDICES = (1, 2, 3, 4)

# e_1 = 0, e_2, e_3, e_4 the unit vectors of Q^3
_E = {1: (0, 0, 0), 2: (1, 0, 0), 3: (0, 1, 0), 4: (0, 0, 1)}

RationalPoint = Tuple[Rational, ...]


def embed(v: Vertex) -> RationalPoint:
    """x_ij -> (e_i, e_j) in Q^6."""
    if not v.is_pair:
        raise SubdivisionError("only x_ij labels have coordinates", {"vertex": str(v)})
    return tuple(Rational(c) for c in _E[v.i] + _E[v.j])


def _proper(s: Iterable[int]) -> Tuple[int, ...]:
    out = tuple(sorted(set(s)))
    if not out or len(out) == 4 or not set(out) <= set(INDICES):
        raise SubdivisionError("cell factors must be nonempty proper subsets of {1,2,3,4}",
                               {"factor": list(out)})
    return out


@dataclass(frozen=True, order=True)
class ProductCell:
    """The cell A×B, spanned by {x_ij : i ∈ A, j ∈ B}."""
    A: Tuple[int, ...]
    B: Tuple[int, ...]

    @classmethod
    def of(cls, A: Iterable[int], B: Iterable[int]) -> 'ProductCell':
        return cls(_proper(A), _proper(B))

    @property
    def dim(self) -> int:
        return len(self.A) + len(self.B) - 2

    @property
    def vertices(self) -> FrozenSet[Vertex]:
        return frozenset(Vertex.pair(i, j) for i in self.A for j in self.B)

    def faces(self) -> List['ProductCell']:
        """Every cell A'×B' with A' ⊆ A and B' ⊆ B, the cell itself included."""
        out = []
        for r in range(1, len(self.A) + 1):
            for a in combinations(self.A, r):
                for s in range(1, len(self.B) + 1):
                    for b in combinations(self.B, s):
                        out.append(ProductCell(a, b))
        return sorted(out, key=lambda c: (c.dim, c))

    def facets(self) -> List['ProductCell']:
        return [c for c in self.faces() if c.dim == self.dim - 1]

    def transposed(self) -> 'ProductCell':
        return ProductCell(self.B, self.A)

    def volume(self) -> Rational:
        """Chart volume of Δ^p × Δ^q: 1 / (p! q!)."""
        return Rational(1, factorial(len(self.A) - 1) * factorial(len(self.B) - 1))

    def chart(self, v: Vertex) -> Tuple[int, ...]:
        """Barycentric chart: indicator of i over A minus min(A), then of j over B minus min(B)."""
        if v not in self.vertices:
            raise SubdivisionError("vertex outside cell", {"vertex": str(v), "cell": str(self)})
        return tuple(int(v.i == a) for a in self.A[1:]) + tuple(int(v.j == b) for b in self.B[1:])

    def __str__(self) -> str:
        return "".join(map(str, self.A)) + "x" + "".join(map(str, self.B))


def simplex_volume(cell: ProductCell, s: Iterable[Vertex]) -> Rational:
    """|det| / n! of a full-dimensional simplex in the chart of `cell`; 0 when degenerate."""
    pts = [cell.chart(v) for v in sorted_simplex(s)]
    n = len(pts) - 1
    if n != cell.dim:
        raise SubdivisionError("simplex is not full-dimensional in its cell",
                               {"simplex": format_simplex(s), "cell": str(cell)})
    if n == 0:
        return Rational(1)
    base = pts[0]
    m = Matrix([[p[c] - base[c] for c in range(n)] for p in pts[1:]])
    return abs(m.det()) / factorial(n)


class ProductCellComplex:
    """All 196 cells of S²₄ × S²₄, grouped by dimension."""

    def __init__(self):
        subsets = [c for r in range(1, 4) for c in combinations(INDICES, r)]
        self._cells = sorted((ProductCell(a, b) for a in subsets for b in subsets),
                             key=lambda c: (c.dim, c))
        self._by_dim: Dict[int, List[ProductCell]] = defaultdict(list)
        for c in self._cells:
            self._by_dim[c.dim].append(c)

    @property
    def vertices(self) -> FrozenSet[Vertex]:
        return frozenset(Vertex.pair(i, j) for i in INDICES for j in INDICES)

    def cells(self, d: Optional[int] = None) -> List[ProductCell]:
        return list(self._cells) if d is None else list(self._by_dim.get(d, []))

    def counts(self) -> Tuple[int, ...]:
        return tuple(len(self._by_dim[d]) for d in range(5))

    @staticmethod
    def cell_of(s: Iterable[Vertex]) -> Optional[ProductCell]:
        """The smallest cell containing s, or None when s spans no cell."""
        s = list(s)
        if not s or not all(v.is_pair for v in s):
            return None
        a = {v.i for v in s}
        b = {v.j for v in s}
        if len(a) == 4 or len(b) == 4:
            return None
        return ProductCell(tuple(sorted(a)), tuple(sorted(b)))


def build_product_cell_complex() -> ProductCellComplex:
    return ProductCellComplex()


# -- certificates ------------------------------------------------------------------

@dataclass
class SubdivisionCertificate:
    failures: List[str] = field(default_factory=list)
    cells_checked: int = 0

    @property
    def certified(self) -> bool:
        return not self.failures

    def require_certified(self) -> None:
        if self.failures:
            raise SubdivisionError("not a subdivision of the product cell complex",
                                   {"failures": self.failures[:5]})


def verify_subdivision(k: SimplicialComplex,
                       cells: Optional[ProductCellComplex] = None) -> SubdivisionCertificate:
    """
    Certify that k subdivides S²₄ × S²₄.

    Every face is assigned to the smallest cell containing it. In every
    cell of positive dimension the full-dimensional simplices must be
    non-degenerate, their chart volumes must add up to the cell volume,
    and their ridges must lie in two of them (interior) or one (boundary).
    """
    cells = cells or build_product_cell_complex()
    cert = SubdivisionCertificate()
    if k.vertices != cells.vertices:
        cert.failures.append("vertex set mismatch")
        return cert
    top: Dict[ProductCell, List[Simplex]] = defaultdict(list)
    for s in k.all_faces():
        cell = cells.cell_of(s)
        if cell is None:
            cert.failures.append(f"face spans no cell: {format_simplex(s)}")
        elif len(s) - 1 > cell.dim:
            cert.failures.append(f"degenerate face {format_simplex(s)} in cell {cell}")
        elif len(s) - 1 == cell.dim:
            top[cell].append(s)
    for cell in cells.cells():
        if cell.dim == 0:
            continue
        cert.cells_checked += 1
        simplices = top.get(cell, [])
        volumes = [simplex_volume(cell, s) for s in simplices]
        if any(v == 0 for v in volumes):
            cert.failures.append(f"degenerate simplex in cell {cell}")
            continue
        if sum(volumes, Rational(0)) != cell.volume():
            cert.failures.append(f"cell {cell} not tiled")
            continue
        ridges = Counter(s - {v} for s in simplices for v in s)
        for r, c in ridges.items():
            if c != (2 if cells.cell_of(r) == cell else 1):
                cert.failures.append(f"cell {cell} not tiled")
                break
    get_metrics().increment("subdivision.cells_checked", cert.cells_checked)
    return cert


# -- prisms ----------------------------------------------------------------------------

def staircase_triangulations(a: Sequence[Vertex], b: Sequence[Vertex]) -> List[SimplicialComplex]:
    """
    The six triangulations of the prism a1a2a3 × b1b2b3, one per ordering of the triangle.

    For the identity ordering the tetrahedra are a1b1b2b3, a1a2b2b3, a1a2a3b3.
    """
    out = []
    for order in permutations(range(3)):
        facets = []
        for m in range(3):
            facets.append(frozenset([a[order[t]] for t in range(m + 1)] +
                                    [b[order[t]] for t in range(m, 3)]))
        out.append(SimplicialComplex(facets))
    return out


def _side_diagonals(a: Sequence[Vertex], b: Sequence[Vertex]) -> Dict[Tuple[int, int], Tuple[Simplex, Simplex]]:
    return {
        (i, j): (frozenset([a[i], b[j]]), frozenset([a[j], b[i]]))
        for i, j in combinations(range(3), 2)
    }


def prism_boundary_complex(a: Sequence[Vertex], b: Sequence[Vertex],
                           diagonals: Iterable[Simplex]) -> SimplicialComplex:
    """The two end triangles plus each side square cut along its chosen diagonal."""
    chosen = set(frozenset(d) for d in diagonals)
    facets = [frozenset(a), frozenset(b)]
    for (i, j), (d1, d2) in _side_diagonals(a, b).items():
        d = d1 if d1 in chosen else d2
        square = {a[i], a[j], b[i], b[j]}
        facets.extend(d | {v} for v in square - d)
    return SimplicialComplex(facets)


def prism_fills(a: Sequence[Vertex], b: Sequence[Vertex],
                diagonals: Iterable[Simplex]) -> List[SimplicialComplex]:
    """
    Triangulations of the prism without new vertices that use the given
    side diagonals; at most one exists, none for a cyclic pattern.

    Raises:
        SubdivisionError: unless exactly one diagonal per side square is given
    """
    chosen = {frozenset(d) for d in diagonals}
    sides = _side_diagonals(a, b)
    for pair in sides.values():
        if len(chosen & set(pair)) != 1:
            raise SubdivisionError("need one diagonal per side square")
    if len(chosen) != 3:
        raise SubdivisionError("need one diagonal per side square")
    return [t for t in staircase_triangulations(a, b) if all(t.contains(d) for d in chosen)]


def prism_layers(cell: ProductCell) -> Tuple[List[Vertex], List[Vertex]]:
    """Bottom and top triangles of a 3-cell (triangle × edge or edge × triangle)."""
    if cell.dim != 3:
        raise SubdivisionError("not a prism cell", {"cell": str(cell)})
    if len(cell.A) == 3:
        j, k = cell.B
        return [Vertex.pair(i, j) for i in cell.A], [Vertex.pair(i, k) for i in cell.A]
    i, k = cell.A
    return [Vertex.pair(i, j) for j in cell.B], [Vertex.pair(k, j) for j in cell.B]


# -- equivariant pure subdivision search -------------------------------------------------

def _tau(s: Iterable[Vertex]) -> Simplex:
    return frozenset(v.transposed() for v in s)


def tau_permutation() -> Permutation:
    return Permutation.transposition_of_indices(build_product_cell_complex().vertices)


def square_diagonals(cell: ProductCell) -> Tuple[Simplex, Simplex]:
    """Both diagonals of the square {i,k} × {j,l}."""
    (i, k), (j, l) = cell.A, cell.B
    return (frozenset([Vertex.pair(i, j), Vertex.pair(k, l)]),
            frozenset([Vertex.pair(i, l), Vertex.pair(k, j)]))


def graph_purity_violations(edges: Iterable[Simplex]) -> List[Tuple[str, Tuple[Vertex, ...]]]:
    """
    Violations of τ-purity visible in the edge graph alone.

    ("a", edge): an edge x_ij x_ji. ("b", (v, u)): a vertex v not fixed
    by τ adjacent to both u and τu.
    """
    g = nx.Graph()
    g.add_edges_from(tuple(e) for e in edges)
    out: List[Tuple[str, Tuple[Vertex, ...]]] = []
    for e in sorted(g.edges, key=lambda e: sorted(e)):
        u, v = sorted(e)
        if not u.is_diagonal and v == u.transposed():
            out.append(("a", (u, v)))
    for v in sorted(g.nodes):
        if v.is_diagonal:
            continue
        nbrs = set(g[v])
        for u in sorted(nbrs):
            if not u.is_diagonal and u < u.transposed() and u.transposed() in nbrs:
                out.append(("b", (v, u)))
    return out


@dataclass
class DiagonalAssignment:
    """Chosen diagonal for each edge × edge square."""
    diagonals: Dict[ProductCell, Simplex]

    def edges(self) -> Set[Simplex]:
        return set(self.diagonals.values())

    def is_equivariant(self) -> bool:
        return all(self.diagonals[c.transposed()] == _tau(d) for c, d in self.diagonals.items())


@dataclass
class SearchReport:
    """How the search went: forced squares, free τ-orbits, surviving branches and outputs."""
    forced_squares: int = 0
    free_orbits: int = 0
    branches: int = 0
    surviving: List[DiagonalAssignment] = field(default_factory=list)
    complexes: List[SimplicialComplex] = field(default_factory=list)
    rejected: Dict[str, int] = field(default_factory=dict)


def _square_orbits(cells: ProductCellComplex) -> List[Tuple[ProductCell, ...]]:
    seen = set()
    out = []
    for c in cells.cells(2):
        if len(c.A) != 2 or c in seen:
            continue
        orbit = tuple(sorted({c, c.transposed()}))
        seen.update(orbit)
        out.append(orbit)
    return out


def _orbit_options(orbit: Tuple[ProductCell, ...]) -> List[Dict[ProductCell, Simplex]]:
    first = orbit[0]
    options = []
    for d in square_diagonals(first):
        choice = {first: d}
        if len(orbit) == 2:
            choice[orbit[1]] = _tau(d)
        elif _tau(d) != d:
            continue
        options.append(choice)
    return options


def _cell_edges(cells: ProductCellComplex) -> Set[Simplex]:
    return {frozenset(c.vertices) for c in cells.cells(1)}


def _fill_four_cell(cell: ProductCell, graph: nx.Graph, boundary: Set[Simplex],
                    cells: ProductCellComplex) -> List[FrozenSet[Simplex]]:
    """
    Every set of 4-simplices of the cell, all of them cliques of `graph`, in
    which each boundary tetrahedron lies in exactly one simplex and each
    interior tetrahedron in none or two.
    """
    candidates = []
    for s in combinations(sorted(cell.vertices), 5):
        if not all(graph.has_edge(u, v) for u, v in combinations(s, 2)):
            continue
        s = frozenset(s)
        if simplex_volume(cell, s) == 0:
            continue
        tets = [s - {v} for v in s]
        if all(t in boundary or cells.cell_of(t) == cell for t in tets):
            candidates.append(s)
    containing: Dict[Simplex, List[Simplex]] = defaultdict(list)
    for s in candidates:
        for v in s:
            containing[s - {v}].append(s)

    def need(t: Simplex) -> int:
        return 1 if t in boundary else 2

    solutions: List[FrozenSet[Simplex]] = []
    counts: Counter = Counter()
    chosen: List[Simplex] = []

    def extend() -> None:
        target = next((t for t in sorted(boundary, key=sorted_simplex) if counts[t] == 0), None)
        if target is None:
            target = next((t for t in sorted(counts, key=sorted_simplex)
                           if counts[t] == 1 and need(t) == 2), None)
        if target is None:
            solutions.append(frozenset(chosen))
            return
        for s in containing.get(target, []):
            if s in chosen:
                continue
            tets = [s - {v} for v in s]
            if any(counts[t] >= need(t) for t in tets):
                continue
            chosen.append(s)
            for t in tets:
                counts[t] += 1
            extend()
            for t in tets:
                counts[t] -= 1
            chosen.pop()

    extend()
    return sorted(set(solutions), key=lambda sol: sorted(sorted_simplex(s) for s in sol))


def _fills_for(assignment: DiagonalAssignment, cells: ProductCellComplex,
               report: SearchReport) -> List[SimplicialComplex]:
    graph = nx.Graph()
    graph.add_nodes_from(cells.vertices)
    graph.add_edges_from(tuple(e) for e in _cell_edges(cells) | assignment.edges())

    prism_tets: Dict[ProductCell, List[Simplex]] = {}
    for cell in cells.cells(3):
        a, b = prism_layers(cell)
        diags = []
        for (i, j), pair in _side_diagonals(a, b).items():
            diags.append(next(d for d in pair if graph.has_edge(*tuple(d))))
        fills = prism_fills(a, b, diags)
        if len(fills) != 1:
            report.rejected["prism"] = report.rejected.get("prism", 0) + 1
            return []
        prism_tets[cell] = list(fills[0].facets)

    per_cell: List[List[FrozenSet[Simplex]]] = []
    for cell in cells.cells(4):
        twin = cell.transposed()
        if twin < cell:
            continue
        boundary = {t for f in cell.facets() for t in prism_tets[f]}
        fills = _fill_four_cell(cell, graph, boundary, cells)
        if twin == cell:
            fills = [f for f in fills if frozenset(_tau(s) for s in f) == f]
        else:
            fills = [f | frozenset(_tau(s) for s in f) for f in fills]
        if not fills:
            report.rejected["4-cell"] = report.rejected.get("4-cell", 0) + 1
            return []
        per_cell.append(fills)

    out = []
    for combo in product(*per_cell):
        facets = set().union(*combo)
        out.append(SimplicialComplex(facets))
    return out


def search_equivariant_pure_subdivisions() -> SearchReport:
    """
    Find the τ-invariant simplicial subdivisions of S²₄ × S²₄ on the 16
    vertices on which τ acts purely.

    Squares whose other diagonal already breaks purity are forced; the
    remaining τ-orbits of squares are branched, filtered by graph purity,
    then prisms and 4-cells are filled and every candidate is certified.
    """
    cells = build_product_cell_complex()
    base = _cell_edges(cells)
    report = SearchReport()
    fixed: Dict[ProductCell, Simplex] = {}
    free: List[List[Dict[ProductCell, Simplex]]] = []
    for orbit in _square_orbits(cells):
        viable = [o for o in _orbit_options(orbit)
                  if not graph_purity_violations(base | set(o.values()))]
        if not viable:
            return report
        if len(viable) == 1:
            fixed.update(viable[0])
        else:
            free.append(viable)
    report.forced_squares = len(fixed)
    report.free_orbits = len(free)

    tau = generate_group([tau_permutation()])
    seen = set()
    for choice in product(*free):
        report.branches += 1
        diagonals = dict(fixed)
        for part in choice:
            diagonals.update(part)
        assignment = DiagonalAssignment(diagonals)
        if graph_purity_violations(base | assignment.edges()):
            report.rejected["graph purity"] = report.rejected.get("graph purity", 0) + 1
            continue
        report.surviving.append(assignment)
        with get_metrics().timed("subdivision.fill_latency"):
            candidates = _fills_for(assignment, cells, report)
        for k in candidates:
            if k in seen:
                continue
            if not verify_subdivision(k, cells).certified:
                report.rejected["certificate"] = report.rejected.get("certificate", 0) + 1
                continue
            if not is_pure_action(k, tau).is_pure:
                report.rejected["purity"] = report.rejected.get("purity", 0) + 1
                continue
            seen.add(k)
            report.complexes.append(k)
    report.complexes.sort(key=lambda k: k.sorted_facets())
    logger.info("subdivision search: %d forced squares, %d free orbits, %d results",
                report.forced_squares, report.free_orbits, len(report.complexes))
    return report


def enumerate_equivariant_pure_subdivisions() -> List[SimplicialComplex]:
    return search_equivariant_pure_subdivisions().complexes


# -- the quotient CW complex --------------------------------------------------------------

@dataclass
class QuotientCellCensus:
    counts: Tuple[int, ...]
    regular: int
    singular: int
    absorbed: Dict[str, List[str]] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.counts))


def cw_quotient_census(cells: Optional[ProductCellComplex] = None) -> QuotientCellCensus:
    """
    Cells of the quotient of S²₄ × S²₄ by τ: A×B ↦ B×A.

    Cell orbits are counted per dimension, except that a self-paired
    square E×E folds into the 3-cells F×E with E ⊂ F and is not a cell of
    its own. Self-paired 4-cells F×F are regular, the others singular.
    """
    cells = cells or build_product_cell_complex()
    counts = []
    absorbed: Dict[str, List[str]] = {}
    regular = singular = 0
    for d in range(5):
        n = 0
        for c in cells.cells(d):
            twin = c.transposed()
            if twin < c:
                continue
            if twin == c and d == 2:
                absorbed[str(c)] = [
                    str(g) for g in cells.cells(3)
                    if g.B == c.B and set(c.A) < set(g.A)
                ]
                continue
            n += 1
            if d == 4:
                if twin == c:
                    regular += 1
                else:
                    singular += 1
        counts.append(n)
    return QuotientCellCensus(tuple(counts), regular, singular, absorbed)


@dataclass
class QuotientSubdivisionReport:
    covered: bool
    uncovered: List[str]
    by_cell_kind: Dict[str, int]


def verify_quotient_subdivision(upstairs: SimplicialComplex, quotient: SimplicialComplex) -> QuotientSubdivisionReport:
    """
    Check every facet of the quotient is the image of an upstairs facet
    lying in a 4-cell, and count them by the kind of quotient 4-cell.
    """
    cells = build_product_cell_complex()
    tau = generate_group([tau_permutation()])
    rep = orbit_representative(tau)
    kinds: Dict[Simplex, str] = {}
    for f in upstairs.facets:
        cell = cells.cell_of(f)
        if cell is None or cell.dim != 4:
            continue
        image = frozenset(rep[v] for v in f)
        kinds[image] = "regular" if cell.transposed() == cell else "singular"
    uncovered = [format_simplex(f) for f in sorted(quotient.facets, key=sorted_simplex) if f not in kinds]
    by_kind = Counter(kinds[f] for f in quotient.facets if f in kinds)
    return QuotientSubdivisionReport(not uncovered, uncovered, dict(sorted(by_kind.items())))

"""
Integer simplicial homology.

Boundary matrices use sorted faces with sign (-1)^position. Invariant
factors come from a Smith normal form over Python integers; two independent
reductions are provided (sparse unit-pivot elimination with a dense
fallback, and a dense full reduction).
"""

import random
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .complex_core import Simplex, SimplicialComplex, Vertex, sorted_simplex
from .monitoring import get_metrics

logger = logging.getLogger(__name__)

DEFAULT_FLIP_BUDGET = 10_000

Matrix = List[List[int]]


@dataclass(frozen=True)
class BoundaryMatrix:
    """∂_d with rows indexed by (d-1)-faces and columns by d-faces."""
    dimension: int
    row_faces: Tuple[Tuple[Vertex, ...], ...]
    col_faces: Tuple[Tuple[Vertex, ...], ...]
    entries: Dict[Tuple[int, int], int]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.row_faces), len(self.col_faces)

    def dense(self) -> Matrix:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def sparse_rows(self) -> Dict[int, Dict[int, int]]:
        rows: Dict[int, Dict[int, int]] = defaultdict(dict)
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return dict(rows)


def boundary_matrix(k: SimplicialComplex, d: int) -> BoundaryMatrix:
    """
    The simplicial boundary map ∂_d (d >= 1); ∂_0 is the zero map with no rows.
    """
    cols = tuple(sorted(sorted_simplex(s) for s in k.faces(d)))
    if d <= 0:
        return BoundaryMatrix(d, (), cols, {})
    rows = tuple(sorted(sorted_simplex(s) for s in k.faces(d - 1)))
    index = {r: i for i, r in enumerate(rows)}
    entries = {}
    for c, face in enumerate(cols):
        for pos in range(len(face)):
            sub = face[:pos] + face[pos + 1:]
            entries[(index[sub], c)] = -1 if pos % 2 else 1
    return BoundaryMatrix(d, rows, cols, entries)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return []
    return [[sum(x * b[t][j] for t, x in enumerate(row) if x) for j in range(len(b[0]))] for row in a]


# -- Smith normal form --------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """Nonzero invariant factors d1 | d2 | ... | dr (all positive)."""
    invariant_factors: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


def _swap(a: Matrix, t: int, i: int, j: int) -> None:
    if i != t:
        a[t], a[i] = a[i], a[t]
    if j != t:
        for row in a:
            row[t], row[j] = row[j], row[t]


def _snf_dense(matrix: Matrix) -> List[int]:
    a = [list(r) for r in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    factors: List[int] = []
    t = 0
    while t < m and t < n:
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        _swap(a, t, *piv)
        while True:
            p = a[t][t]
            changed = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        row_i, row_t = a[i], a[t]
                        for j in range(t, n):
                            if row_t[j]:
                                row_i[j] -= q * row_t[j]
                    changed = changed or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for i in range(t, m):
                            if a[i][t]:
                                a[i][j] -= q * a[i][t]
                    changed = changed or a[t][j] != 0
            if changed:
                best = (t, t)
                for i in range(t + 1, m):
                    if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t + 1, n):
                    if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                        best = (t, j)
                _swap(a, t, *best)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            for j in range(t, n):
                a[t][j] += a[bad][j]
        factors.append(abs(a[t][t]))
        t += 1
    return factors


def _snf_sparse(rows: Dict[int, Dict[int, int]]) -> List[int]:
    rows = {r: dict(v) for r, v in rows.items() if v}
    cols: Dict[int, set] = defaultdict(set)
    for r, row in rows.items():
        for c in row:
            cols[c].add(r)
    units = 0
    while True:
        pivot = None
        best = None
        for r, row in rows.items():
            for c, val in row.items():
                if val == 1 or val == -1:
                    score = (len(row) - 1) * (len(cols[c]) - 1)
                    if best is None or score < best:
                        best, pivot = score, (r, c)
                        if score == 0:
                            break
            if best == 0:
                break
        if pivot is None:
            break
        r, c = pivot
        prow = rows.pop(r)
        pval = prow[c]
        for c2 in prow:
            cols[c2].discard(r)
        for k in list(cols[c]):
            row_k = rows[k]
            factor = row_k[c] * pval
            for c2, v in prow.items():
                nv = row_k.get(c2, 0) - factor * v
                if nv:
                    if c2 not in row_k:
                        cols[c2].add(k)
                    row_k[c2] = nv
                elif c2 in row_k:
                    del row_k[c2]
                    cols[c2].discard(k)
            if not row_k:
                del rows[k]
        cols.pop(c, None)
        units += 1
    get_metrics().increment("snf.unit_pivots", units)
    rest_cols = sorted({c for row in rows.values() for c in row})
    dense = [[row.get(c, 0) for c in rest_cols] for row in rows.values() if row]
    return [1] * units + _snf_dense(dense)


def smith_normal_form(matrix: Union[BoundaryMatrix, Sequence[Sequence[int]]],
                      method: str = "sparse") -> SmithForm:
    """
    Invariant factors of an integer matrix.

    Args:
        matrix: BoundaryMatrix or a dense list of integer rows
        method: "sparse" (unit pivots first, dense remainder) or "dense"

    Examples:
        >>> smith_normal_form([[2]]).invariant_factors
        (2,)
        >>> smith_normal_form([[1, 0], [0, 0]]).rank
        1
    """
    if method not in ("sparse", "dense"):
        raise ValueError(f"unknown method {method!r}")
    if isinstance(matrix, BoundaryMatrix):
        dense = matrix.dense() if method == "dense" else None
        rows = matrix.sparse_rows() if method == "sparse" else None
    else:
        dense = [list(r) for r in matrix]
        rows = {i: {j: v for j, v in enumerate(r) if v} for i, r in enumerate(dense)}
    factors = _snf_dense(dense) if method == "dense" else _snf_sparse(rows)
    return SmithForm(tuple(sorted(factors)))


# -- homology -------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: Tuple[int, ...] = ()

    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class HomologyGroups:
    groups: Tuple[HomologyGroup, ...]

    def __getitem__(self, d: int) -> HomologyGroup:
        return self.groups[d]

    def __len__(self) -> int:
        return len(self.groups)

    def betti_numbers(self) -> Tuple[int, ...]:
        return tuple(g.betti for g in self.groups)

    def torsion(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(g.torsion for g in self.groups)

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.betti_numbers()))

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.groups) + ")"


@lru_cache(maxsize=512)
def _homology(k: SimplicialComplex, method: str) -> HomologyGroups:
    top = k.dim
    forms = {d: smith_normal_form(boundary_matrix(k, d), method) for d in range(1, top + 1)}
    f = k.f_vector()

    def rank(d: int) -> int:
        return forms[d].rank if d in forms else 0

    groups = []
    for d in range(top + 1):
        betti = f[d] - rank(d) - rank(d + 1)
        torsion = forms[d + 1].torsion if d + 1 in forms else ()
        groups.append(HomologyGroup(betti, torsion))
    return HomologyGroups(tuple(groups))


def homology(k: SimplicialComplex, method: str = "sparse") -> HomologyGroups:
    """Unreduced integer homology H_0..H_dim (H_0 free of rank = components)."""
    return _homology(k, method)


def euler_characteristic(k: SimplicialComplex) -> int:
    return sum((-1) ** i * n for i, n in enumerate(k.f_vector()))


def is_homology_sphere(k: SimplicialComplex, d: int) -> bool:
    """True iff k is d-dimensional, connected (for d > 0) and has the homology of S^d."""
    if k.is_void() or k.dim != d:
        return False
    if d == -1:
        return True
    h = homology(k)
    if d == 0:
        return h[0] == HomologyGroup(2)
    expected = [HomologyGroup(1)] + [HomologyGroup(0)] * (d - 1) + [HomologyGroup(1)]
    return list(h.groups) == expected


def is_plausible_ball(ball: SimplicialComplex) -> Tuple[bool, str]:
    """
    Necessary conditions for a triangulated ball.

    Returns:
        (ok, reason) where reason names the first failed clause
    """
    if ball.is_void():
        return False, "empty"
    if not ball.is_pure():
        return False, "not pure"
    d = ball.dim
    if d <= 0:
        return (len(ball.facets) == 1), "single point" if len(ball.facets) == 1 else "disconnected"
    if len(ball.strong_components()) != 1:
        return False, "not strongly connected"
    ridge_count: Dict[Simplex, int] = defaultdict(int)
    for f in ball.facets:
        for v in f:
            ridge_count[f - {v}] += 1
    if any(c > 2 for c in ridge_count.values()):
        return False, "ridge in more than two facets"
    h = homology(ball)
    if h[0] != HomologyGroup(1) or any(not g.is_trivial() for g in h.groups[1:]):
        return False, "nontrivial homology"
    if not is_homology_sphere(ball.boundary(), d - 1):
        return False, "boundary is not a homology sphere"
    return True, "ok"


# -- combinatorial manifold check ---------------------------------------------

@dataclass(frozen=True)
class FlipReduction:
    """Outcome of the flip heuristic: True = reached ∂Δ, None = undetermined."""
    reached: Optional[bool]
    moves: int
    final_f_vector: Tuple[int, ...]


def is_boundary_of_simplex(k: SimplicialComplex) -> bool:
    d = k.dim
    return (
        d >= 0 and k.is_pure() and len(k.vertices) == d + 2 and len(k.facets) == d + 2
    )


def reduce_to_boundary_simplex(k: SimplicialComplex, seed: int = 0,
                               budget: int = DEFAULT_FLIP_BUDGET) -> FlipReduction:
    """
    Greedy bistellar descent toward the boundary of a simplex.

    Vertex removals are taken first, then random facet-reducing moves;
    when none exist a random move other than the inverse of the previous
    one is applied. Never reports failure, only success or undetermined.
    """
    from .moves_engine import BistellarMove, apply_bistellar, find_proper_moves

    if not k.is_pure() or k.is_void():
        return FlipReduction(None, 0, k.f_vector())
    rng = random.Random(seed)
    current = k
    used = 0
    undo: Optional[BistellarMove] = None
    while True:
        if is_boundary_of_simplex(current):
            return FlipReduction(True, used, current.f_vector())
        if used >= budget:
            break
        moves = find_proper_moves(current)
        if not moves:
            break
        removals = [m for m in moves if len(m.A) == 1]
        shrinking = [m for m in moves if len(m.A) < len(m.B) and m != undo]
        if removals:
            move = removals[0]
        elif shrinking:
            move = rng.choice(shrinking)
        else:
            move = rng.choice([m for m in moves if m != undo] or moves)
        current = apply_bistellar(current, move.A, move.B)
        undo = BistellarMove(move.B, move.A)
        used += 1
    logger.debug("flip reduction undetermined after %d moves, f=%s", used, current.f_vector())
    return FlipReduction(None, used, current.f_vector())


@dataclass(frozen=True)
class LinkCheck:
    vertex: Vertex
    link_is_homology_sphere: bool
    flip_reduced: Optional[bool]
    moves: int


@dataclass
class ManifoldReport:
    checks: List[LinkCheck] = field(default_factory=list)

    @property
    def homology_ok(self) -> bool:
        return all(c.link_is_homology_sphere for c in self.checks)

    @property
    def status(self) -> str:
        """'pass', 'fail' (a link is not a homology sphere) or 'undetermined'."""
        if not self.homology_ok:
            return "fail"
        if all(c.flip_reduced for c in self.checks):
            return "pass"
        return "undetermined"


def check_combinatorial_manifold(k: SimplicialComplex, seed: int = 0,
                                 budget: int = DEFAULT_FLIP_BUDGET) -> ManifoldReport:
    """
    Test every vertex link: homology sphere of dimension dim-1, then the
    flip reduction heuristic.
    """
    k._require_pure()
    report = ManifoldReport()
    for v in sorted(k.vertices):
        lk = k.link([v])
        is_sphere = is_homology_sphere(lk, k.dim - 1)
        reduced = reduce_to_boundary_simplex(lk, seed=seed, budget=budget) if is_sphere else None
        report.checks.append(LinkCheck(
            vertex=v,
            link_is_homology_sphere=is_sphere,
            flip_reduced=reduced.reached if reduced else None,
            moves=reduced.moves if reduced else 0,
        ))
    return report

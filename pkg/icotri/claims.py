"""
Claim registry and verification reports.

Each claim is a named, self-contained check over freshly built catalog
values. Claims run in a process pool; the report lists them in registry
order so two runs with the same seed print byte-identical output.
"""

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from .catalog import (
    CATALOG_NAMES,
    EXPECTED_F_VECTORS,
    a4_basic_facets,
    a4_orbit_minimum,
    build,
    build_s2xs2_12_from_pair,
    cp2_edge_link_report,
    figure2_pair,
    index_permutation,
    intertwining_failures,
    maps_inducing_phi,
    ordered_labels,
    phi_psi,
    antipodal_map,
    antipodal_on_triangles,
    quadruple_report,
    s2xs2_12_a4_basic_facets,
    s2xs2_12_generators,
    structural_report_s2xs2_12,
    tau_group,
    verify_join_embeddings,
)
from .complex_core import (
    SimplicialComplex,
    Vertex,
    closure,
    format_simplex,
    join,
    simplex,
    sorted_simplex,
    standard_sphere,
)
from .config import VerifierConfig
from .homology import check_combinatorial_manifold, homology
from .monitoring import StructuredLogger, get_metrics
from .moves_engine import (
    CP2_9_F_VECTOR,
    CP2_9_LABELS,
    K4_10_F_VECTOR,
    K4_10_LABELS,
    apply_gbm,
    apply_step,
    builtin_script,
    gbm_as_flips,
    apply_bistellar,
    find_proper_moves,
    relabel_by_names,
    replay_script,
)
from .perm_group import all_isomorphisms, automorphism_group, find_isomorphism, is_pure_action, quotient_complex
from .product_subdivision import (
    cw_quotient_census,
    prism_boundary_complex,
    prism_fills,
    search_equivariant_pure_subdivisions,
    staircase_triangulations,
    verify_quotient_subdivision,
    verify_subdivision,
)
from .utils import IcotriError, UnknownClaimError

logger = logging.getLogger(__name__)

PASS, FAIL, UNDETERMINED = "pass", "fail", "undetermined"

CP2_HOMOLOGY = ((1, 0, 1, 0, 1), ((), (), (), (), ()))
S2XS2_HOMOLOGY = ((1, 0, 2, 0, 1), ((), (), (), (), ()))


@dataclass
class ClaimResult:
    claim_id: str
    status: str
    checks: Dict[str, bool] = field(default_factory=dict)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0
    note: str = ""

    @property
    def failed_checks(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "id": self.claim_id,
            "status": self.status,
            "checks": dict(self.checks),
            "witnesses": _plain(self.witnesses),
        }
        if self.note:
            out["note"] = self.note
        if timings:
            out["elapsed"] = round(self.elapsed, 3)
        return out


Runner = Callable[[VerifierConfig], ClaimResult]


@dataclass(frozen=True)
class Claim:
    claim_id: str
    title: str
    runner: Runner


REGISTRY: Dict[str, Claim] = {}


def claim(claim_id: str, title: str) -> Callable[[Runner], Runner]:
    def register(fn: Runner) -> Runner:
        if claim_id in REGISTRY:
            raise ValueError(f"duplicate claim id: {claim_id}")
        REGISTRY[claim_id] = Claim(claim_id, title, fn)
        return fn
    return register


def _plain(value: Any) -> Any:
    """JSON-ready copy with sets sorted and vertices rendered as labels."""
    if isinstance(value, Vertex):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, frozenset):
        if all(isinstance(v, Vertex) for v in value):
            return format_simplex(value)
        return sorted((_plain(v) for v in value), key=str)
    if isinstance(value, set):
        return sorted((_plain(v) for v in value), key=str)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _result(claim_id: str, checks: Dict[str, bool], witnesses: Optional[Dict[str, Any]] = None,
            undetermined: bool = False, note: str = "") -> ClaimResult:
    if not all(checks.values()):
        status = FAIL
    elif undetermined:
        status = UNDETERMINED
    else:
        status = PASS
    return ClaimResult(claim_id, status, checks, witnesses or {}, note=note)


def _homology_signature(k: SimplicialComplex):
    h = homology(k)
    return h.betti_numbers(), h.torsion()


# -- claims -----------------------------------------------------------------------

@claim("subdivision.search", "exactly two τ-equivariant pure subdivisions of S2_4 x S2_4")
def _subdivision_search(config: VerifierConfig) -> ClaimResult:
    report = search_equivariant_pure_subdivisions()
    s16 = build("S2xS2_16").complex
    sigma = index_permutation("(1 2)", ordered_labels())
    outputs = set(report.complexes)
    tau = tau_group(ordered_labels())
    checks = {
        "two results": len(report.complexes) == 2,
        "S2xS2_16 among results": s16 in outputs,
        "other result is the (1 2) relabeling": outputs == {s16, sigma.apply_complex(s16)},
        "all certified": all(verify_subdivision(k).certified for k in report.complexes),
        "all pure under tau": all(is_pure_action(k, tau).is_pure for k in report.complexes),
        "assignments are equivariant": all(a.is_equivariant() for a in report.surviving),
    }
    witnesses = {
        "forced squares": report.forced_squares,
        "free square orbits": report.free_orbits,
        "branches": report.branches,
        "surviving assignments": len(report.surviving),
        "edges per assignment": sorted({48 + len(a.edges()) for a in report.surviving}),
        "rejected": report.rejected,
    }
    return _result("subdivision.search", checks, witnesses)


@claim("quotient.cp2", "CP2_10 is the quotient of S2xS2_16 by the pure involution")
def _quotient_cp2(config: VerifierConfig) -> ClaimResult:
    s16 = build("S2xS2_16").complex
    tau = tau_group(ordered_labels())
    purity = is_pure_action(s16, tau)
    orbit_cp2 = build("CP2_10", "orbits")
    checks = {"tau acts purely": purity.is_pure}
    witnesses: Dict[str, Any] = {}
    if purity.is_pure:
        q = quotient_complex(s16, tau)
        checks["quotient equals orbit-generated CP2_10"] = q == orbit_cp2.complex
        cover = verify_quotient_subdivision(s16, orbit_cp2.complex)
        checks["every CP2_10 facet lies over a 4-cell"] = cover.covered
        witnesses["facets by quotient cell kind"] = cover.by_cell_kind
        witnesses["uncovered"] = cover.uncovered
    else:
        witnesses["purity witness"] = str(purity.failing_condition)
    checks["orbit sizes 12/12/12/6/6"] = orbit_cp2.orbit_sizes == (12, 12, 12, 6, 6)
    return _result("quotient.cp2", checks, witnesses)


@claim("scripts.cp2", "bistellar scripts CP2_10 -> K -> L and K -> M")
def _scripts_cp2(config: VerifierConfig) -> ClaimResult:
    cp2 = build("CP2_10").complex
    to_k = replay_script(cp2, "cp2_to_k", record=True)
    k = to_k.complex
    to_l = replay_script(k, "k_to_l", record=True)
    to_m = replay_script(k, "k_to_m", record=True)
    l, m = to_l.complex, to_m.complex
    named_l = relabel_by_names(l, CP2_9_LABELS)
    named_m = relabel_by_names(m, K4_10_LABELS)
    steps = to_k.intermediates + to_l.intermediates[1:] + to_m.intermediates[1:]
    preserved = all(_homology_signature(c) == CP2_HOMOLOGY for c in steps)
    checks = {
        "K has 10 vertices": len(k.vertices) == 10,
        "L has 9 vertices": len(l.vertices) == 9,
        "L is 3-neighborly": l.neighborliness() >= 3 and l.f_vector()[2] == 84,
        "M has 10 vertices": len(m.vertices) == 10,
        "homology of CP2 at every step": preserved,
        "L relabels onto 1..9": _names(named_l) == {str(i) for i in range(1, 10)},
        "relabeled L has the 9-vertex CP2 f-vector": named_l.f_vector() == CP2_9_F_VECTOR,
        "M relabels onto X Y Z 0..6": _names(named_m) == {"X", "Y", "Z"} | {str(i) for i in range(7)},
        "relabeled M has the 10-vertex CP2 f-vector": named_m.f_vector() == K4_10_F_VECTOR,
    }
    witnesses = {
        "K f-vector": k.f_vector(),
        "L f-vector": l.f_vector(),
        "M f-vector": m.f_vector(),
        "steps replayed": to_k.steps_applied + to_l.steps_applied + to_m.steps_applied,
    }
    return _result("scripts.cp2", checks, witnesses)


def _names(k: SimplicialComplex) -> set:
    return {str(v) for v in k.vertices}


@claim("scripts.s2xs2", "4 flips and 4 vertex-deleting GBMs take S2xS2_16_prime to S2xS2_12")
def _scripts_s2xs2(config: VerifierConfig) -> ClaimResult:
    start = build("S2xS2_16_prime").complex
    flipped = replay_script(start, "s2xs2_flips").complex
    final = replay_script(flipped, "s2xs2_vertex_deletions").complex
    target = build("S2xS2_12").complex
    aut = automorphism_group(final)
    _, g = s2xs2_12_generators()
    orders = aut.element_orders()
    x11_link = join(standard_sphere(["x12", "x13", "x14"]), standard_sphere(["x21", "x31", "x41"]))
    basic = {a4_orbit_minimum(f) for f in s2xs2_12_a4_basic_facets()}
    found = a4_basic_facets(final)
    checks = {
        "intermediate lacks x12 x13 x14": not flipped.contains(simplex("x12 x13 x14")),
        "intermediate lk(x11) is S(x12 x13 x14) * S(x21 x31 x41)": flipped.link(simplex("x11")) == x11_link,
        "six A4-basic facets": len(found) == 6 and set(found) == basic,
        "result equals S2xS2_12": final == target,
        "automorphism group order 240": aut.order == 240,
        "element of order 12": max(orders) >= 12,
        "g^6 is central": (g ** 6) in aut.center(),
        "homology of S2 x S2": _homology_signature(final) == S2XS2_HOMOLOGY,
    }
    witnesses = {
        "intermediate f-vector": flipped.f_vector(),
        "max element order": max(orders),
        "A4-basic facets": [format_simplex(f) for f in found],
    }
    return _result("scripts.s2xs2", checks, witnesses)


def _diagonal_patterns():
    a = [Vertex.atom(f"a{i}") for i in range(1, 4)]
    b = [Vertex.atom(f"b{i}") for i in range(1, 4)]
    squares = [(0, 1), (1, 2), (0, 2)]
    choices = [
        (frozenset([a[i], b[j]]), frozenset([a[j], b[i]])) for i, j in squares
    ]
    out = []
    for mask in range(8):
        out.append([pair[(mask >> n) & 1] for n, pair in enumerate(choices)])
    return a, b, out


@claim("prism.fill", "a prism boundary determines its fill uniquely, when it has one")
def _prism_fill(config: VerifierConfig) -> ClaimResult:
    a, b, patterns = _diagonal_patterns()
    prism = build("prism_boundary").complex
    octa = build("octahedron").complex
    counts = []
    shapes_ok = True
    for diagonals in patterns:
        fills = prism_fills(a, b, diagonals)
        counts.append(len(fills))
        expected = prism if fills else octa
        if find_isomorphism(prism_boundary_complex(a, b, diagonals), expected) is None:
            shapes_ok = False
        if fills and fills[0].boundary() != prism_boundary_complex(a, b, diagonals):
            shapes_ok = False
    canonical = prism_fills(a, b, [frozenset([a[0], b[1]]), frozenset([a[1], b[2]]),
                                   frozenset([a[0], b[2]])])
    checks = {
        "six triangulations of the prism": len(staircase_triangulations(a, b)) == 6,
        "six patterns with one fill": counts.count(1) == 6,
        "two cyclic patterns with none": counts.count(0) == 2,
        "boundaries are prism or octahedron": shapes_ok,
        "canonical fill": len(canonical) == 1 and canonical[0] == SimplicialComplex(
            [simplex("a1 b1 b2 b3"), simplex("a1 a2 b2 b3"), simplex("a1 a2 a3 b3")]),
    }
    return _result("prism.fill", checks, {"fills per pattern": counts})


@claim("antimorphism.phi", "the triangle bijections of the antimorphic icosahedron pair")
def _antimorphism_phi(config: VerifierConfig) -> ClaimResult:
    pair = figure2_pair()
    bij = phi_psi(pair)
    aut1 = automorphism_group(pair.I1)
    aut2 = automorphism_group(pair.I2)
    isos = all_isomorphisms(pair.I1, pair.I2)
    anti = antipodal_on_triangles(pair.I1)
    antipode = antipodal_map(pair.I1)
    _, g = s2xs2_12_generators()
    checks = {
        "pair is antimorphic": pair.is_antimorphic(),
        "antipodes agree": pair.antipodes_agree(),
        "common antipode is g^6": all((g ** 6)(v) == antipode(v) for v in pair.I1.vertices),
        "Aut(I1) = Aut(I2)": aut1.elements == aut2.elements,
        "phi(x12 x13 x14) = x21 x31 x41": bij.phi[simplex("x12 x13 x14")] == simplex("x21 x31 x41"),
        "psi after phi is antipodal": all(bij.psi[bij.phi[t]] == anti[t] for t in bij.phi),
        "120 isomorphisms I1 -> I2": len(isos) == 120,
        "every isomorphism intertwines phi and psi": intertwining_failures(bij, isos) == 0,
        "no vertex map induces phi": not maps_inducing_phi(bij, list(aut1) + isos),
        "I2 is g(I1)": g.apply_complex(pair.I1) == pair.I2,
        "pair construction equals S2xS2_12": build_s2xs2_12_from_pair(pair, bij) == build("S2xS2_12").complex,
    }
    return _result("antimorphism.phi", checks, {"automorphisms": aut1.order})


@claim("gbm.three_flips", "each vertex-deleting GBM is three bistellar flips")
def _gbm_three_flips(config: VerifierConfig) -> ClaimResult:
    current = replay_script(build("S2xS2_16_prime").complex, "s2xs2_flips").complex
    script = builtin_script("s2xs2_vertex_deletions")
    checks = {}
    for step in script.steps:
        move = step.move
        after = apply_step(current, move)
        u = next(iter(move.star_of))
        link = current.link([u])
        xyz, abc = _split_join_link(link, move.Dhat)
        flipped = current
        for flip in gbm_as_flips(u, xyz, abc):
            flipped = apply_bistellar(flipped, flip.A, flip.B)
        checks[f"{step.label} by three flips"] = flipped == after
        current = after
    checks.update(_x44_site_checks())
    return _result("gbm.three_flips", checks)


def _x44_site_checks() -> Dict[str, bool]:
    """Moves xiii-xv of k_to_l against the GBM (star(x44), S(x14 x24 x34) * closure(x12 x13 x23))."""
    k = replay_script(build("CP2_10").complex, "cp2_to_k").complex
    script = builtin_script("k_to_l")
    site = replay_script(k, script, upto=3).complex
    expansion = gbm_as_flips("x44", simplex("x12 x13 x23"), ["x14", "x24", "x34"])
    by_flips = site
    for step in script.steps[3:]:
        by_flips = apply_step(by_flips, step.move)
    by_gbm = apply_gbm(site, site.star(simplex("x44")),
                       join(standard_sphere(["x14", "x24", "x34"]), closure("x12 x13 x23".split())))
    return {
        "k_to_l xiii-xv is the x44 three-flip expansion": [s.move for s in script.steps[3:]] == expansion,
        "k_to_l xiii-xv equals the x44 GBM": by_flips == by_gbm,
    }


def _split_join_link(link: SimplicialComplex, dhat: SimplicialComplex):
    """(xyz, abc): the triangle filled by Dhat and the opposite circle of the link."""
    xyz = next(t for t in sorted(dhat.faces(2), key=sorted_simplex) if not dhat.contains(dhat.vertices - t))
    abc = sorted_simplex(link.vertices - xyz)
    return xyz, abc


@claim("joins", "join embeddings of the 16- and 10-vertex complexes")
def _joins(config: VerifierConfig) -> ClaimResult:
    report = verify_join_embeddings()
    return _result("joins", dict(report.checks), {"failures": report.failures})


@claim("quadruples", "antipodal triangle-quadruple pairs of the icosahedron")
def _quadruples(config: VerifierConfig) -> ClaimResult:
    report = quadruple_report(build("icosahedron").complex)
    checks = {
        "five pairs": report.pairs == 5,
        "Aut acts transitively": report.transitive,
        "stabilizer order 24": report.stabilizer_order == 24,
    }
    return _result("quadruples", checks, {"automorphisms": report.automorphisms})


@claim("cw.census", "cells of the quotient CW complex")
def _cw_census(config: VerifierConfig) -> ClaimResult:
    census = cw_quotient_census()
    checks = {
        "census (10, 24, 31, 24, 10)": census.counts == (10, 24, 31, 24, 10),
        "4 regular 4-cells": census.regular == 4,
        "6 singular 4-cells": census.singular == 6,
        "alternating sum 3": census.euler_characteristic == 3,
        "6 self-paired squares absorbed": len(census.absorbed) == 6
        and all(len(v) == 2 for v in census.absorbed.values()),
    }
    return _result("cw.census", checks, {"absorbed": census.absorbed})


@claim("s2xs2_12.structure", "structure of the 12-vertex S2 x S2")
def _s2xs2_12_structure(config: VerifierConfig) -> ClaimResult:
    report = structural_report_s2xs2_12()
    checks = dict(report.checks)
    checks["no proper bistellar move"] = not find_proper_moves(build("S2xS2_12").complex)
    return _result("s2xs2_12.structure", checks, dict(report.values))


@claim("manifold.links", "vertex links are combinatorial 3-spheres")
def _manifold_links(config: VerifierConfig) -> ClaimResult:
    checks = {}
    witnesses = {}
    undetermined = False
    for name in ("CP2_10", "S2xS2_12"):
        report = check_combinatorial_manifold(build(name).complex, seed=config.seed,
                                              budget=config.flip_budget)
        checks[f"{name} links are homology 3-spheres"] = report.homology_ok
        witnesses[f"{name} moves"] = sum(c.moves for c in report.checks)
        if report.status == UNDETERMINED:
            undetermined = True
            witnesses[f"{name} unreduced links"] = [c.vertex for c in report.checks if not c.flip_reduced]
    return _result("manifold.links", checks, witnesses, undetermined=undetermined)


@claim("automorphisms", "automorphism groups and the CP2_10 edge link")
def _automorphisms(config: VerifierConfig) -> ClaimResult:
    orders = {name: automorphism_group(build(name).complex).order
              for name in ("CP2_10", "S2xS2_16", "S2xS2_12")}
    aut12 = automorphism_group(build("S2xS2_12").complex)
    _, g = s2xs2_12_generators()
    link = cp2_edge_link_report()
    checks = {
        "|Aut(CP2_10)| = 12": orders["CP2_10"] == 12,
        "|Aut(S2xS2_16)| = 24": orders["S2xS2_16"] == 24,
        "|Aut(S2xS2_12)| = 240": orders["S2xS2_12"] == 240,
        "S2xS2_12 has an element of order 12": 12 in aut12.element_orders(),
        "center of Aut(S2xS2_12) contains g^6": (g ** 6) in aut12.center(),
        "CP2_10 edge link and 2-neighborly vertex links": link.passed,
    }
    witnesses = {
        "orders": orders,
        "center order": len(aut12.center()),
        "edge link automorphisms": [str(p) for p in link.link_automorphisms],
    }
    return _result("automorphisms", checks, witnesses,
                   note="group identified by order, element orders and center only")


@claim("homology", "integer homology of the catalog")
def _homology(config: VerifierConfig) -> ClaimResult:
    expected = {
        "CP2_10": CP2_HOMOLOGY,
        "S2xS2_12": S2XS2_HOMOLOGY,
        "S2xS2_16": S2XS2_HOMOLOGY,
        "S2xS2_16_prime": S2XS2_HOMOLOGY,
        "RP2_6": ((1, 0, 0), ((), (2,), ())),
    }
    checks = {}
    witnesses = {}
    for name, sig in expected.items():
        h = homology(build(name).complex)
        checks[f"{name} homology"] = (h.betti_numbers(), h.torsion()) == sig
        witnesses[name] = str(h)
    dense = homology(build("CP2_10").complex, method="dense")
    checks["dense and sparse reductions agree"] = dense == homology(build("CP2_10").complex)
    return _result("homology", checks, witnesses,
                   note="homology does not fix the homeomorphism type; that rests on the product subdivision")


@claim("catalog.fvectors", "catalog f-vectors and orbit sizes")
def _catalog_fvectors(config: VerifierConfig) -> ClaimResult:
    checks = {}
    witnesses = {}
    for name in CATALOG_NAMES:
        try:
            entry = build(name)
        except IcotriError as e:
            checks[f"{name} builds"] = False
            witnesses[name] = str(e)
            continue
        checks[f"{name} f-vector"] = entry.complex.f_vector() == EXPECTED_F_VECTORS[name]
        if entry.orbit_sizes:
            witnesses[f"{name} orbit sizes"] = entry.orbit_sizes
    checks["S2xS2_16 orbit sizes 24/24/24/12/12"] = build("S2xS2_16").orbit_sizes == (24, 24, 24, 12, 12)
    checks["S2xS2_12 orbit sizes 12/60"] = build("S2xS2_12").orbit_sizes == (12, 60)
    checks["CP2_10 recipes agree"] = build("CP2_10").complex == build("CP2_10", "orbits").complex
    return _result("catalog.fvectors", checks, witnesses)


# -- running ---------------------------------------------------------------------------

def resolve_ids(ids: Sequence[str]) -> List[str]:
    """Registry-ordered claim ids; empty or "all" selects everything."""
    if not ids or list(ids) == ["all"]:
        return list(REGISTRY)
    unknown = [i for i in ids if i not in REGISTRY]
    if unknown:
        raise UnknownClaimError(unknown[0], list(REGISTRY))
    wanted = set(ids)
    return [i for i in REGISTRY if i in wanted]


def run_claim(claim_id: str, config: Optional[VerifierConfig] = None) -> ClaimResult:
    """Run one claim; an unexpected library error becomes a failed result with the message."""
    config = config or VerifierConfig()
    entry = REGISTRY.get(claim_id)
    if entry is None:
        raise UnknownClaimError(claim_id, list(REGISTRY))
    slog = StructuredLogger.for_run(config)
    slog.claim_started(claim_id)
    start = time.perf_counter()
    try:
        result = entry.runner(config)
    except IcotriError as e:
        get_metrics().record_error(type(e).__name__, e.message, claim=claim_id)
        slog.error("claim raised", claim_id, error=type(e).__name__, message=e.message)
        result = ClaimResult(claim_id, FAIL, {"completed": False}, {"error": str(e)})
    result.elapsed = time.perf_counter() - start
    get_metrics().record_latency("claims.latency", result.elapsed, claim=claim_id)
    slog.claim_finished(claim_id, result.status, result.elapsed, result.failed_checks)
    return result


def _run_from_dict(claim_id: str, config_dict: Dict[str, Any]) -> ClaimResult:
    return run_claim(claim_id, VerifierConfig.from_dict(config_dict))


@dataclass
class Report:
    results: List[ClaimResult] = field(default_factory=list)
    seed: int = 0

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def counts(self) -> Dict[str, int]:
        out = {PASS: 0, FAIL: 0, UNDETERMINED: 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "summary": self.counts(),
            "claims": [r.to_dict(timings) for r in self.results],
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True)

    def to_text(self, timings: bool = False) -> str:
        lines = []
        for r in self.results:
            head = f"[{r.status.upper():>12}] {r.claim_id}"
            if timings:
                head += f"  ({r.elapsed:.2f}s)"
            lines.append(head)
            for name in r.failed_checks:
                lines.append(f"    failed: {name}")
            if r.note:
                lines.append(f"    note: {r.note}")
        c = self.counts()
        lines.append(f"{c[PASS]} passed, {c[FAIL]} failed, {c[UNDETERMINED]} undetermined")
        return "\n".join(lines) + "\n"

    def render(self, output_format: str = "text", timings: bool = False) -> str:
        return self.to_json(timings) + "\n" if output_format == "json" else self.to_text(timings)


def run(ids: Sequence[str] = (), config: Optional[VerifierConfig] = None) -> Report:
    """
    Run the selected claims (all by default).

    Raises:
        UnknownClaimError: for an id not in the registry, before anything runs
    """
    config = config or VerifierConfig()
    selected = resolve_ids(ids)
    slog = StructuredLogger.for_run(config)
    slog.info("running claims", count=len(selected))
    if config.jobs <= 1 or len(selected) <= 1:
        results = [run_claim(i, config) for i in selected]
    else:
        with ProcessPoolExecutor(max_workers=min(config.jobs, len(selected))) as pool:
            futures = [pool.submit(_run_from_dict, i, config.to_dict()) for i in selected]
            results = [f.result() for f in futures]
    report = Report(results, seed=config.seed)
    counts = report.counts()
    slog.info("claims done", passed=counts[PASS], failed=counts[FAIL], undetermined=counts[UNDETERMINED])
    return report

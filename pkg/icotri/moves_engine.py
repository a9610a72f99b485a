"""
Bistellar moves, starrings and generalized bistellar moves (GBMs).

Moves are validated before they are applied; scripts are JSON data that
replay a sequence of moves step by step and stop at the first invalid one.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .complex_core import (
    LabelLike,
    Simplex,
    SimplicialComplex,
    Vertex,
    closure,
    format_simplex,
    join,
    simplex,
    sorted_simplex,
    standard_ball,
    standard_sphere,
    vertex,
)
from .homology import is_plausible_ball
from .monitoring import get_metrics
from .utils import (
    ComplexConstructionError,
    ComplexFormatError,
    IcotriError,
    InvalidMoveError,
    ScriptError,
    load_json_text,
    require_keys,
)

logger = logging.getLogger(__name__)

SCRIPT_DIR = Path(__file__).parent / "data" / "scripts"

# Relabelings of the script results onto published vertex names.
CP2_9_LABELS: Dict[str, str] = {
    "x11": "1", "x23": "2", "x24": "3", "x34": "4", "x22": "5",
    "x13": "6", "x14": "7", "x33": "8", "x12": "9",
}
K4_10_LABELS: Dict[str, str] = {
    "x33": "X", "x22": "Y", "x44": "Z", "x11": "0", "x13": "1",
    "x12": "2", "x23": "3", "x14": "4", "x34": "5", "x24": "6",
}
CP2_9_F_VECTOR = (9, 36, 84, 90, 36)
K4_10_F_VECTOR = (10, 42, 98, 105, 42)


@dataclass(frozen=True)
class BistellarMove:
    """A ↦ B: replace A ∗ ∂B by B ∗ ∂A."""
    A: Simplex
    B: Simplex

    def inverse(self) -> 'BistellarMove':
        return BistellarMove(self.B, self.A)

    @classmethod
    def parse(cls, text: str) -> 'BistellarMove':
        """
        Parse "x22 x33 x44 -> x23 x24 x34".

        Examples:
            >>> str(BistellarMove.parse("x11 -> x12 x13"))
            'x11 -> x12 x13'
        """
        if "->" not in text:
            raise ComplexFormatError(f"move must contain '->': {text!r}")
        left, right = text.split("->", 1)
        return cls(simplex(left), simplex(right))

    def sort_key(self) -> Tuple:
        return (len(self.A), sorted_simplex(self.A), sorted_simplex(self.B))

    def __str__(self) -> str:
        return f"{format_simplex(self.A)} -> {format_simplex(self.B)}"


@dataclass(frozen=True)
class Starring:
    """Insert the fresh vertex x at the face C."""
    C: Simplex
    x: Vertex


@dataclass(frozen=True)
class GbmDescriptor:
    """
    Replace the ball D by Dhat.

    When `star_of` is set, D is the star of that face in the complex the
    move is applied to, resolved at replay time.
    """
    Dhat: SimplicialComplex
    D: Optional[SimplicialComplex] = None
    star_of: Optional[Simplex] = None

    def resolve(self, k: SimplicialComplex) -> SimplicialComplex:
        if self.D is not None:
            return self.D
        if self.star_of is None:
            raise InvalidMoveError("GBM needs D or a face whose star is D")
        return k.star(self.star_of)


MoveStep = Union[BistellarMove, Starring, GbmDescriptor]


@dataclass
class ScriptStep:
    move: MoveStep
    label: str = ""


@dataclass
class MoveScript:
    """Named, ordered sequence of moves, optionally tied to a catalog source complex."""
    name: str
    steps: List[ScriptStep] = field(default_factory=list)
    source: Optional[str] = None

    def __len__(self) -> int:
        return len(self.steps)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> 'MoveScript':
        require_keys(payload, ["name", "steps"], "script")
        steps = [_parse_step(s, idx) for idx, s in enumerate(payload["steps"], start=1)]
        return cls(name=payload["name"], steps=steps, source=payload.get("source"))

    @classmethod
    def from_json(cls, text: str, path: Optional[str] = None) -> 'MoveScript':
        return cls.from_dict(load_json_text(text, path))

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"name": self.name}
        if self.source:
            out["source"] = self.source
        out["steps"] = [_dump_step(s) for s in self.steps]
        return out


@dataclass
class ScriptResult:
    complex: SimplicialComplex
    intermediates: List[SimplicialComplex] = field(default_factory=list)
    steps_applied: int = 0


# -- single moves ---------------------------------------------------------------

def _as_simplex(s: Iterable[LabelLike]) -> Simplex:
    return s if isinstance(s, frozenset) else simplex(s)


def _simplex_boundary(b: Simplex) -> SimplicialComplex:
    """∂B; for a single vertex this is {∅}."""
    if len(b) == 1:
        return SimplicialComplex([frozenset()])
    return standard_sphere(sorted(b))


def apply_bistellar(k: SimplicialComplex, A: Iterable[LabelLike], B: Iterable[LabelLike]) -> SimplicialComplex:
    """
    Apply the bistellar move A ↦ B.

    Raises:
        InvalidMoveError: "invalid move: dimension", "invalid move: A not a face",
            "invalid move: link" or "invalid move: B present"
    """
    a, b = _as_simplex(A), _as_simplex(B)
    k._require_pure()
    d = k.dim
    if not a or not b or a & b or len(a) + len(b) != d + 2:
        raise InvalidMoveError("invalid move: dimension",
                               {"A": format_simplex(a), "B": format_simplex(b), "dim": d})
    if not k.contains(a):
        raise InvalidMoveError("invalid move: A not a face", {"A": format_simplex(a)})
    if k.link(a) != _simplex_boundary(b):
        raise InvalidMoveError("invalid move: link", {"A": format_simplex(a), "B": format_simplex(b)})
    if k.contains(b):
        raise InvalidMoveError("invalid move: B present", {"B": format_simplex(b)})
    kept = [f for f in k.facets if not a <= f]
    added = [b | (a - {v}) for v in a]
    get_metrics().increment("moves.applied", kind="flip")
    return SimplicialComplex(kept + added, name=k.name)


def star_vertex(k: SimplicialComplex, C: Iterable[LabelLike], x: LabelLike) -> SimplicialComplex:
    """
    Subdivide by starring the fresh vertex x at the face C.

    Each facet σ ⊇ C is replaced by the facets {x} ∪ σ \\ {c}, c ∈ C.
    """
    c = _as_simplex(C)
    x = vertex(x)
    if not k.contains(c) or not c:
        raise InvalidMoveError("invalid move: C not a face", {"C": format_simplex(c)})
    if x in k.vertices:
        raise InvalidMoveError("invalid move: vertex present", {"x": str(x)})
    out = []
    for f in k.facets:
        if c <= f:
            out.extend((f - {v}) | {x} for v in c)
        else:
            out.append(f)
    get_metrics().increment("moves.applied", kind="star")
    return SimplicialComplex(out, name=k.name)


def apply_gbm(k: SimplicialComplex, D: SimplicialComplex, Dhat: SimplicialComplex) -> SimplicialComplex:
    """
    Replace the ball D ⊆ K by the ball Dhat with the same boundary.

    Checked clauses, in order: D pure of the complex's dimension, every
    facet of D a face of K, ∂D = ∂Dhat, Dhat meets K only in ∂Dhat, and
    both D and Dhat pass the ball plausibility suite.

    Raises:
        InvalidMoveError: naming the first failed clause
    """
    k._require_pure()
    d = k.dim
    if D.is_void() or not D.is_pure() or D.dim != d:
        raise InvalidMoveError("invalid GBM: D is not pure of the complex dimension", {"dim": d})
    missing = [f for f in D.facets if not k.contains(f)]
    if missing:
        raise InvalidMoveError("invalid GBM: D is not contained in the complex",
                               {"facet": format_simplex(min(missing, key=sorted_simplex))})
    if Dhat.is_void() or not Dhat.is_pure() or Dhat.dim != d:
        raise InvalidMoveError("invalid GBM: Dhat is not pure of the complex dimension", {"dim": d})
    rim = D.boundary()
    if rim != Dhat.boundary():
        raise InvalidMoveError("invalid GBM: boundaries differ")
    for face in Dhat.all_faces():
        if k.contains(face) and not rim.contains(face):
            raise InvalidMoveError("invalid GBM: Dhat meets the complex outside its boundary",
                                   {"face": format_simplex(face)})
    for label, ball in (("D", D), ("Dhat", Dhat)):
        ok, reason = is_plausible_ball(ball)
        if not ok:
            raise InvalidMoveError(f"invalid GBM: {label} is not a ball", {"reason": reason})
    kept = [f for f in k.facets if f not in D.facets]
    get_metrics().increment("moves.applied", kind="gbm")
    return SimplicialComplex(kept + list(Dhat.facets), name=k.name)


def find_proper_moves(k: SimplicialComplex) -> List[BistellarMove]:
    """
    Every bistellar move A ↦ B with A not a facet, sorted by (|A|, A).

    A face a qualifies when the facets through it are exactly the
    |B| simplices a ∪ (B \\ {b}) and B is not a face.
    """
    k._require_pure()
    d = k.dim
    if d < 1:
        return []
    # every nonempty non-facet face, with the union and number of facets through it
    span: Dict[Simplex, set] = defaultdict(set)
    count: Dict[Simplex, int] = defaultdict(int)
    for f in k.facets:
        items = sorted(f)
        n = len(items)
        for mask in range(1, (1 << n) - 1):
            a = frozenset(items[i] for i in range(n) if mask >> i & 1)
            span[a] |= f
            count[a] += 1
    moves = []
    for a, union in span.items():
        b = union - a
        size = d + 2 - len(a)
        if count[a] == size and len(b) == size and not k.contains(b):
            moves.append(BistellarMove(a, frozenset(b)))
    return sorted(moves, key=BistellarMove.sort_key)


def gbm_as_flips(u: LabelLike, xyz: Iterable[LabelLike], abc: Sequence[LabelLike]) -> List[BistellarMove]:
    """
    Three flips equivalent to the GBM (star(u), S(abc) ∗ closure(xyz)) when
    lk(u) = S(abc) ∗ S(xyz): uab ↦ xyz, ua ↦ cxyz, u ↦ bcxyz.
    """
    u = vertex(u)
    t = _as_simplex(xyz)
    a, b, c = (vertex(v) for v in abc)
    return [
        BistellarMove(frozenset([u, a, b]), t),
        BistellarMove(frozenset([u, a]), t | {c}),
        BistellarMove(frozenset([u]), t | {b, c}),
    ]


# -- scripts ------------------------------------------------------------------

def apply_step(k: SimplicialComplex, move: MoveStep) -> SimplicialComplex:
    if isinstance(move, BistellarMove):
        return apply_bistellar(k, move.A, move.B)
    if isinstance(move, Starring):
        return star_vertex(k, move.C, move.x)
    return apply_gbm(k, move.resolve(k), move.Dhat)


def replay_script(k: SimplicialComplex, script: Union[MoveScript, str],
                  record: bool = False, upto: Optional[int] = None) -> ScriptResult:
    """
    Replay a script, validating each step before applying it.

    Args:
        k: Starting complex
        script: MoveScript or the name of a built-in script
        record: Keep every intermediate complex (the start included)
        upto: Stop after this many steps (default: all)

    Raises:
        ScriptError: at the first invalid step, with its 1-based index
    """
    if isinstance(script, str):
        script = builtin_script(script)
    current = k
    intermediates = [k] if record else []
    steps = script.steps if upto is None else script.steps[:upto]
    for idx, step in enumerate(steps, start=1):
        try:
            current = apply_step(current, step.move)
        except IcotriError as e:
            get_metrics().record_error(type(e).__name__, e.message, script=script.name, step=idx)
            raise ScriptError(f"step {idx} failed", step=idx, script=script.name, cause=e)
        if record:
            intermediates.append(current)
        logger.debug("%s step %d (%s): f=%s", script.name, idx, step.label, current.f_vector())
    return ScriptResult(current, intermediates, len(steps))


def apply_script(k: SimplicialComplex, script: Union[MoveScript, str]) -> SimplicialComplex:
    return replay_script(k, script).complex


# -- JSON step codec ----------------------------------------------------------------

def _labels(value: Any, what: str) -> Simplex:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ComplexFormatError(f"{what} must be a list of labels")
    try:
        return simplex(value)
    except ValueError as e:
        raise ComplexFormatError(str(e))


def _facets(value: Any, what: str) -> SimplicialComplex:
    if not isinstance(value, list):
        raise ComplexFormatError(f"{what} must be a list of facets")
    return SimplicialComplex(_labels(f, what) for f in value)


_JOIN_PARTS = {
    "ball": lambda vs: standard_ball(sorted(vs)),
    "sphere": lambda vs: standard_sphere(sorted(vs)),
    "closure": closure,
}


def _join_parts(value: Any) -> SimplicialComplex:
    if not isinstance(value, list) or not value:
        raise ComplexFormatError("Dhat_join must be a nonempty list of parts")
    parts = []
    for part in value:
        if not isinstance(part, dict) or len(part) != 1:
            raise ComplexFormatError("each join part is a single-key object")
        (kind, labels), = part.items()
        if kind not in _JOIN_PARTS:
            raise ComplexFormatError(f"unknown join part '{kind}'")
        parts.append(_JOIN_PARTS[kind](_labels(labels, kind)))
    return join(*parts)


def _parse_step(payload: Any, idx: int) -> ScriptStep:
    if not isinstance(payload, dict) or "kind" not in payload:
        raise ComplexFormatError(f"step {idx} must be an object with a 'kind'")
    kind = payload["kind"]
    label = str(payload.get("label", idx))
    if kind == "flip":
        require_keys(payload, ["A", "B"], f"step {idx}")
        return ScriptStep(BistellarMove(_labels(payload["A"], "A"), _labels(payload["B"], "B")), label)
    if kind == "star":
        require_keys(payload, ["C", "x"], f"step {idx}")
        return ScriptStep(Starring(_labels(payload["C"], "C"), vertex(payload["x"])), label)
    if kind == "gbm":
        if "Dhat_facets" in payload:
            dhat = _facets(payload["Dhat_facets"], "Dhat_facets")
        elif "Dhat_join" in payload:
            dhat = _join_parts(payload["Dhat_join"])
        else:
            raise ComplexFormatError(f"step {idx} needs Dhat_facets or Dhat_join")
        if "D_facets" in payload:
            return ScriptStep(GbmDescriptor(dhat, D=_facets(payload["D_facets"], "D_facets")), label)
        if "D_star" in payload:
            return ScriptStep(GbmDescriptor(dhat, star_of=_labels(payload["D_star"], "D_star")), label)
        raise ComplexFormatError(f"step {idx} needs D_facets or D_star")
    raise ComplexFormatError(f"step {idx}: unknown kind '{kind}'")


def _strs(s: Iterable[Vertex]) -> List[str]:
    return [str(v) for v in sorted(s)]


def _dump_step(step: ScriptStep) -> Dict[str, Any]:
    m = step.move
    if isinstance(m, BistellarMove):
        out: Dict[str, Any] = {"kind": "flip", "A": _strs(m.A), "B": _strs(m.B)}
    elif isinstance(m, Starring):
        out = {"kind": "star", "C": _strs(m.C), "x": str(m.x)}
    else:
        out = {"kind": "gbm"}
        if m.D is not None:
            out["D_facets"] = [[str(v) for v in f] for f in m.D.sorted_facets()]
        else:
            out["D_star"] = _strs(m.star_of or ())
        out["Dhat_facets"] = [[str(v) for v in f] for f in m.Dhat.sorted_facets()]
    out["label"] = step.label
    return out


def load_script(path: Union[str, Path]) -> MoveScript:
    path = Path(path)
    return MoveScript.from_json(path.read_text(), str(path))


BUILTIN_SCRIPTS = ("cp2_to_k", "k_to_l", "k_to_m", "s2xs2_flips", "s2xs2_vertex_deletions")


def builtin_script(name: str) -> MoveScript:
    """Load one of the shipped scripts by name."""
    if name not in BUILTIN_SCRIPTS:
        raise ScriptError(f"unknown script '{name}'", step=0, script=name)
    return load_script(SCRIPT_DIR / f"{name}.json")


def relabel_by_names(k: SimplicialComplex, names: Dict[str, str], name: str = "") -> SimplicialComplex:
    """Rename vertices by a label -> label table (for example CP2_9_LABELS)."""
    table = {vertex(src): Vertex.atom(dst) for src, dst in names.items()}
    missing = [str(v) for v in sorted(k.vertices) if v not in table]
    if missing:
        raise ComplexConstructionError("relabeling does not cover the vertex set", {"missing": missing})
    return k.relabel(table, name=name or k.name)

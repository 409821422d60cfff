"""Strong structural controllability of networked systems ``x' = Ax + Bu``.

``A`` ranges over the realizations of a graph's pattern and ``B`` over the
realizations of the input pattern ``B(S)``.  Verdicts come from zero forcing
or from constrained matchings; :func:`kalman_trial` samples exact rational
realizations and checks them against the Kalman rank condition.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable, Optional

from zfc.graph_model import (
    DirectedGraph,
    Entry,
    GraphKind,
    Pattern,
    RationalMatrix,
    add_all_loops,
    check_kind,
    delete_rows,
    star_diagonal,
    strip_loops,
    to_bipartite,
    to_pattern,
    to_simple_pattern,
)
from zfc.matching import max_constrained_matching
from zfc.zero_forcing import (
    find_force_list_avoiding,
    propagate,
    tree_min_zero_forcing_set,
    zero_forcing_number,
)

SAMPLE_RANGE = 9


class SoundnessError(AssertionError):
    """A strongly controllable system produced an uncontrollable realization."""


@dataclass(frozen=True)
class SystemSpec:
    graph: DirectedGraph
    kind: GraphKind
    input_set: tuple

    def __post_init__(self):
        s = tuple(sorted(set(self.input_set)))
        if len(s) != len(tuple(self.input_set)):
            raise ValueError("input set has repeated vertices")
        bad = [v for v in s if not 1 <= v <= self.graph.n]
        if bad:
            raise ValueError(f"input vertices {bad} outside 1..{self.graph.n}")
        check_kind(self.graph, self.kind)
        object.__setattr__(self, "input_set", s)


@dataclass(frozen=True)
class StrongControllabilityReport:
    verdict: bool
    method: str
    evidence: dict = field(default_factory=dict)
    failed: Optional[str] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict,
            "method": self.method,
            "failed": self.failed,
            "evidence": self.evidence,
        }


@dataclass(frozen=True)
class KalmanReport:
    samples: int
    seed: int
    controllable_count: int
    strong_verdict: Optional[bool] = None
    first_uncontrollable_witness: Optional[tuple] = None

    def to_dict(self) -> dict[str, Any]:
        witness = None
        if self.first_uncontrollable_witness is not None:
            a, b = self.first_uncontrollable_witness
            witness = {"A": a.to_text(), "B": b.to_text()}
        return {
            "samples": self.samples,
            "seed": self.seed,
            "controllable": self.controllable_count,
            "strong_verdict": self.strong_verdict,
            "first_uncontrollable_witness": witness,
        }


def input_pattern(n: int, s: Iterable[int]) -> Pattern:
    s = sorted(set(s))
    if n >= 1 and not s:
        raise ValueError("empty input set: a system without inputs is never controllable")
    bad = [v for v in s if not 1 <= v <= n]
    if bad:
        raise ValueError(f"input vertices {bad} outside 1..{n}")
    grid = [[Entry.ZERO] * len(s) for _ in range(n)]
    for j, v in enumerate(s):
        grid[v - 1][j] = Entry.STAR
    return Pattern.from_rows(grid, len(s))


def _require_loop_kind(spec: SystemSpec) -> None:
    if spec.kind is not GraphKind.LOOP:
        raise ValueError("this test applies to loop directed graphs; use strong_simple")


def strong_zf(spec: SystemSpec) -> StrongControllabilityReport:
    """``S`` must force ``G``, and must force ``G`` with all loops added through
    some list that never has a looped vertex of ``G`` forcing itself."""
    _require_loop_kind(spec)
    g, s = spec.graph, spec.input_set
    plain = propagate(g, GraphKind.LOOP, s)
    if not plain.is_complete:
        return StrongControllabilityReport(
            False, "zf", {"black": sorted(plain.final_black)}, "input set does not force the graph"
        )
    avoiding = find_force_list_avoiding(add_all_loops(g), GraphKind.LOOP, s, g.loop_vertices())
    evidence = {"forces": [list(f) for f in plain.forces]}
    if avoiding is None:
        return StrongControllabilityReport(
            False, "zf", evidence,
            "no force list in the all-loops graph avoids self-forces on looped vertices",
        )
    evidence["forces_all_loops"] = [list(f) for f in avoiding]
    return StrongControllabilityReport(True, "zf", evidence)


def strong_matching(spec: SystemSpec) -> StrongControllabilityReport:
    """Both row-deleted patterns must carry a constrained matching saturating
    the remaining rows; the one with a starred diagonal may not use the
    diagonal cells of looped vertices."""
    _require_loop_kind(spec)
    g, s = spec.graph, spec.input_set
    need = g.n - len(s)
    kept = [v for v in g.vertices if v not in s]  # original label of each surviving row
    a = to_pattern(g)

    size, m = max_constrained_matching(to_bipartite(delete_rows(a, s)), target=need)
    m = sorted((kept[r - 1], c) for r, c in m)
    if size < need:
        return StrongControllabilityReport(
            False, "matching", {"best": [list(p) for p in m]},
            f"A(S|.) has no constrained {need}-matching",
        )

    loops = g.loop_vertices()
    banned = [(k, v) for k, v in enumerate(kept, start=1) if v in loops]
    size_x, mx = max_constrained_matching(
        to_bipartite(delete_rows(star_diagonal(a), s)), forbidden_edges=banned, target=need
    )
    mx = sorted((kept[r - 1], c) for r, c in mx)
    evidence = {"matching": [list(p) for p in m], "matching_all_loops": [list(p) for p in mx]}
    if size_x < need:
        return StrongControllabilityReport(
            False, "matching", evidence,
            f"A_x(S|.) has no constrained loop-avoiding {need}-matching",
        )
    return StrongControllabilityReport(True, "matching", evidence)


def strong_simple(g_s: DirectedGraph, s: Iterable[int]) -> StrongControllabilityReport:
    """Free-diagonal system: strongly controllable iff ``S`` forces ``g_s``
    under the simple rule."""
    spec = SystemSpec(g_s, GraphKind.SIMPLE, tuple(s))
    res = propagate(g_s, GraphKind.SIMPLE, spec.input_set)
    evidence = {"forces": [list(f) for f in res.forces]}
    if res.is_complete:
        return StrongControllabilityReport(True, "simple", evidence)
    evidence["black"] = sorted(res.final_black)
    return StrongControllabilityReport(False, "simple", evidence, "input set does not force the graph")


def strong(spec: SystemSpec, method: str = "zf") -> StrongControllabilityReport:
    if spec.kind is GraphKind.SIMPLE:
        return strong_simple(spec.graph, spec.input_set)
    if method == "zf":
        return strong_zf(spec)
    if method == "matching":
        return strong_matching(spec)
    raise ValueError(f"unknown method {method!r}")


def _is_symmetric_tree(g: DirectedGraph) -> bool:
    if g.n == 0 or g.loop_vertices() or len(g.edges) != 2 * (g.n - 1):
        return False
    if any((v, u) not in g.edges for u, v in g.edges):
        return False
    adj = g.out_neighbors()
    seen, stack = {1}, [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def min_input_set(g: DirectedGraph, kind: GraphKind = GraphKind.LOOP) -> tuple[int, frozenset, str]:
    """Smallest input set making the system strongly controllable.

    Self-damped loop graphs and simple graphs reduce to a minimum zero
    forcing set of the loop-free graph under the simple rule (linear time
    for symmetric trees).  Other loop graphs are searched exhaustively by
    increasing size with :func:`strong_zf`.
    """
    check_kind(g, kind)
    if kind is GraphKind.SIMPLE or g.is_self_damped():
        simple = strip_loops(g)
        if _is_symmetric_tree(simple):
            z, w = tree_min_zero_forcing_set(simple)
            return z, w, "tree"
        z, w = zero_forcing_number(simple, GraphKind.SIMPLE)
        return z, w, "exact-simple"
    for k in range(g.n + 1):
        for s in combinations(g.vertices, k):
            if strong_zf(SystemSpec(g, GraphKind.LOOP, s)).verdict:
                return k, frozenset(s), "exact-zf"
    raise AssertionError("the full vertex set is always an input set")


def sample_realization(p: Pattern, rng_seed) -> RationalMatrix:
    """Integer realization of ``p`` with entries in ``[-9, 9]``.

    Stars draw a nonzero value, free cells any value (zero included).
    """
    rng = rng_seed if isinstance(rng_seed, random.Random) else random.Random(rng_seed)
    nonzero = [x for x in range(-SAMPLE_RANGE, SAMPLE_RANGE + 1) if x]
    rows = []
    for prow in p.entries:
        row = []
        for e in prow:
            if e is Entry.STAR:
                row.append(rng.choice(nonzero))
            elif e is Entry.FREE:
                row.append(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE))
            else:
                row.append(0)
        rows.append(row)
    return RationalMatrix.from_rows(rows, p.cols)


def _int_rank(m: list[list[int]]) -> int:
    # fraction-free (Bareiss) elimination; every division below is exact
    n_rows, n_cols = len(m), len(m[0])
    r, prev = 0, 1
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, n_rows):
            f = m[i][c]
            row, prow = m[i], m[r]
            for k in range(c + 1, n_cols):
                row[k] = (p * row[k] - f * prow[k]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == n_rows:
            break
    return r


def rank(rows) -> int:
    """Exact rank of a matrix of ints or Fractions.

    Each row is scaled by the lcm of its denominators, which leaves the rank
    unchanged, and the integer matrix is reduced fraction-free.
    """
    if not rows or not rows[0]:
        return 0
    scaled = []
    for row in rows:
        if all(type(x) is int for x in row):
            scaled.append(list(row))
            continue
        row = [Fraction(x) for x in row]
        d = math.lcm(*(x.denominator for x in row))
        scaled.append([int(x * d) for x in row])
    return _int_rank(scaled)


def controllability_matrix(a: RationalMatrix, b: RationalMatrix) -> list[list]:
    """``[B, AB, ..., A^(n-1) B]`` with exact entries (ints when A and B are integral)."""
    if a.rows != a.cols:
        raise ValueError("A must be square")
    if b.rows != a.rows:
        raise ValueError(f"B has {b.rows} rows, expected {a.rows}")
    n = a.rows

    def exact(x: Fraction):
        return x.numerator if x.denominator == 1 else x

    am = [[exact(x) for x in row] for row in a.entries]
    blocks = [[[exact(x) for x in row] for row in b.entries]]
    for _ in range(1, n):
        prev = blocks[-1]
        blocks.append(
            [[sum(am[i][k] * prev[k][j] for k in range(n)) for j in range(b.cols)] for i in range(n)]
        )
    return [[x for blk in blocks for x in blk[i]] for i in range(n)]


def kalman_rank(a: RationalMatrix, b: RationalMatrix) -> int:
    return rank(controllability_matrix(a, b))


def kalman_trial(spec: SystemSpec, samples: int = 100, seed: int = 0) -> KalmanReport:
    """Sample realizations of the system and count the controllable ones.

    Sample ``i`` uses its own generator seeded from ``(seed, i)``.  When the
    structural verdict is strong controllability every sample must be
    controllable, otherwise :class:`SoundnessError` is raised.
    """
    g = spec.graph
    if g.n == 0:
        return KalmanReport(0, seed, 0, True)
    verdict = strong(spec).verdict
    a_pat = to_simple_pattern(g) if spec.kind is GraphKind.SIMPLE else to_pattern(g)
    b_pat = input_pattern(g.n, spec.input_set)
    ok = 0
    witness = None
    for i in range(samples):
        rng = random.Random(f"{seed}:{i}")
        a = sample_realization(a_pat, rng)
        b = sample_realization(b_pat, rng)
        if kalman_rank(a, b) == g.n:
            ok += 1
        elif witness is None:
            witness = (a, b)
    report = KalmanReport(samples, seed, ok, verdict, witness)
    if verdict and ok != samples:
        raise SoundnessError(f"strongly controllable system has uncontrollable sample: {report.to_dict()}")
    return report


def selfless_matching_input_set(g: DirectedGraph) -> frozenset:
    """Unmatched rows of a maximum constrained self-less matching of ``A_x``.

    For undamped systems this is always an input set, though not
    necessarily a minimum one.
    """
    _, m = max_constrained_matching(to_bipartite(star_diagonal(to_pattern(g))), g.vertices)
    matched = {r for r, _ in m}
    return frozenset(v for v in g.vertices if v not in matched)

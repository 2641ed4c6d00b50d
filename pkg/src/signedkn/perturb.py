"""Sign-rotation moves on signed complete graphs and a hill climb over
spanning-tree negative sets with a fixed leaf count.

A type_i move picks a positive edge rs and a negative edge rt sharing the
vertex r and reverses both signs.  A type_ii move does the same for a
positive edge rs and a negative edge tu with all four vertices distinct.
Under eigenvector-entry preconditions these moves never decrease the index,
which is what the climb exploits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PreconditionError, StaleEigenvectorError
from .graphs import SignedCompleteGraph, Tree, leaf_count, signed_complete_from_tree
from .spectra import DEGENERATE_TOL, adjacency_matrix, eigen_decompose

KINDS = ("type_i", "type_ii")

# Entries within ZERO_TOL of zero (or of each other) are treated as ties
# when classifying a precondition as strict; a strict report therefore
# certifies a margin that solver noise cannot fake.
ZERO_TOL = 1e-12

RESIDUAL_TOL = 1e-8

# λ1 must rise by more than this for a climb step to count as improvement.
IMPROVE_TOL = 1e-10


@dataclass(frozen=True)
class RotationMove:
    """kind "type_i" with vertices (r, s, t), or "type_ii" with (r, s, t, u).

    The move reverses the positive edge rs together with the negative edge
    rt (type_i) or tu (type_ii).
    """

    kind: str
    vertices: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown rotation kind {self.kind!r}")
        verts = tuple(int(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        want = 3 if self.kind == "type_i" else 4
        if len(verts) != want:
            raise DomainError(
                f"{self.kind} needs {want} vertices, got {len(verts)}"
            )
        if len(set(verts)) != len(verts):
            raise DomainError(f"move vertices must be distinct, got {verts}")

    @property
    def positive_edge(self) -> tuple[int, int]:
        r, s = self.vertices[0], self.vertices[1]
        return (r, s) if r < s else (s, r)

    @property
    def negative_edge(self) -> tuple[int, int]:
        if self.kind == "type_i":
            r, t = self.vertices[0], self.vertices[2]
        else:
            r, t = self.vertices[2], self.vertices[3]
        return (r, t) if r < t else (t, r)


@dataclass(frozen=True)
class PreconditionReport:
    """Outcome of checking a move against a λ1-eigenvector.

    entries_used holds (x_r, x_s, x_t) or (x_r, x_s, x_t, x_u) from the
    unit-normalized vector.  degenerate_top mirrors the spectra module's
    multiplicity flag for this graph, so harnesses can exclude those cases
    from strictness assertions.  strict implies satisfied.
    """

    satisfied: bool
    strict: bool
    entries_used: tuple[float, ...]
    degenerate_top: bool


def _check_pattern(g: SignedCompleteGraph, m: RotationMove) -> None:
    for v in m.vertices:
        if not 0 <= v < g.n:
            raise DomainError(f"move vertex {v} out of range for n={g.n}")
    pos = m.positive_edge
    if pos in g.negative_edges:
        raise PreconditionError(
            f"edge {pos} must be positive for {m.kind}", edge=pos
        )
    neg = m.negative_edge
    if neg not in g.negative_edges:
        raise PreconditionError(
            f"edge {neg} must be negative for {m.kind}", edge=neg
        )


def apply_rotation(g: SignedCompleteGraph, m: RotationMove) -> SignedCompleteGraph:
    """Reverse the move's positive and negative edge; nothing else changes."""
    _check_pattern(g, m)
    neg = (g.negative_edges - {m.negative_edge}) | {m.positive_edge}
    return SignedCompleteGraph(g.n, neg)


def _classify(kind: str, entries: tuple[float, ...], zero_tol: float):
    """Precondition truth table with a zero-tolerance band.

    A quantity within zero_tol of zero counts as zero: it satisfies both
    weak inequalities and neither strict one.
    """
    if kind == "type_i":
        xr, xs, xt = entries
        d = xt - xs
        up = xr >= -zero_tol and d >= -zero_tol
        down = xr <= zero_tol and d <= zero_tol
        satisfied = up or down
        strict = (up and (xr > zero_tol or d > zero_tol)) or (
            down and (xr < -zero_tol or d < -zero_tol)
        )
    else:
        xr, xs, xt, xu = entries
        satisfied = xt * xu - xr * xs >= -zero_tol
        strict = satisfied and max(abs(e) for e in entries) > zero_tol
    return satisfied, strict


def check_precondition(
    g: SignedCompleteGraph,
    m: RotationMove,
    x: np.ndarray,
    *,
    zero_tol: float = ZERO_TOL,
) -> PreconditionReport:
    """Evaluate the move's eigenvector-entry precondition.

    x must be a λ1-eigenvector of g: it is unit-normalized and rejected
    with a stale-eigenvector error when its Rayleigh residual exceeds
    RESIDUAL_TOL.
    """
    _check_pattern(g, m)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise DomainError(f"eigenvector must have shape ({g.n},), got {x.shape}")
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        raise StaleEigenvectorError("zero vector is not an eigenvector", float("inf"))
    x = x / norm
    sym = adjacency_matrix(g)
    ax = sym.entries @ x
    lam = float(x @ ax)
    res = float(np.linalg.norm(ax - lam * x))
    if res > RESIDUAL_TOL:
        raise StaleEigenvectorError(
            f"residual {res:.3e} exceeds {RESIDUAL_TOL:.1e}; "
            "recompute the eigenvector for this graph",
            res,
        )
    full = eigen_decompose(sym, want_vectors=False)
    degenerate = float(full.values[0] - full.values[1]) <= DEGENERATE_TOL
    entries = tuple(float(x[v]) for v in m.vertices)
    satisfied, strict = _classify(m.kind, entries, zero_tol)
    return PreconditionReport(
        satisfied=satisfied,
        strict=strict,
        entries_used=entries,
        degenerate_top=degenerate,
    )


@dataclass(frozen=True)
class ClimbStep:
    """One accepted move: 1-based step index, the move, and the new λ1."""

    step: int
    kind: str
    vertices: tuple[int, ...]
    lambda1: float


def trace_to_jsonl(trace: list[ClimbStep]) -> str:
    """One JSON object per accepted move."""
    lines = [
        json.dumps(
            {
                "step": st.step,
                "kind": st.kind,
                "vertices": list(st.vertices),
                "lambda1": st.lambda1,
            }
        )
        for st in trace
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def _tree_lambda1(t: Tree) -> float:
    s = eigen_decompose(adjacency_matrix(signed_complete_from_tree(t)), False)
    return float(s.values[0])


def _tree_path(adj: dict[int, list[int]], c: int, d: int) -> list[int]:
    parent = {c: c}
    queue = [c]
    for v in queue:
        if v == d:
            break
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                queue.append(w)
    path = [d]
    while path[-1] != c:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _candidate_moves(t: Tree) -> list[tuple[RotationMove, Tree]]:
    """All 1-edge exchanges that keep the negative set a spanning tree with
    the same number of leaves, as rotation moves sorted by vertex tuple."""
    n = t.n
    adj = t.adjacency()
    deg = t.degrees()
    k = sum(1 for x in deg if x == 1)
    out = []
    for c in range(n):
        for d in range(c + 1, n):
            if (c, d) in t.edges:
                continue
            path = _tree_path(adj, c, d)
            for a, b in zip(path, path[1:]):
                delta = {c: 1, d: 1}
                delta[a] = delta.get(a, 0) - 1
                delta[b] = delta.get(b, 0) - 1
                new_k = k
                for v, dv in delta.items():
                    new_k += int(deg[v] + dv == 1) - int(deg[v] == 1)
                if new_k != k:
                    continue
                shared = {a, b} & {c, d}
                if shared:
                    r = shared.pop()
                    s = d if r == c else c
                    tt = b if r == a else a
                    move = RotationMove("type_i", (r, s, tt))
                else:
                    move = RotationMove("type_ii", (c, d, a, b))
                edge_ab = (a, b) if a < b else (b, a)
                new_tree = Tree(n, (t.edges - {edge_ab}) | {(c, d)})
                out.append((move, new_tree))
    out.sort(key=lambda mv: mv[0].vertices)
    return out


def hill_climb(
    n: int, k: int, start: Tree, max_steps: int = 500
) -> tuple[Tree, list[ClimbStep]]:
    """First-improvement local search maximizing λ1 of (K_n, T-).

    Moves are the spanning-tree 1-exchanges that preserve the leaf count k,
    tried in lexicographic vertex order; a move is accepted as soon as the
    recomputed λ1 rises by more than IMPROVE_TOL.  Stops at a local maximum
    or after max_steps accepted moves.
    """
    if start.n != n:
        raise DomainError(f"start tree has n={start.n}, expected {n}")
    if not 2 <= k <= n - 1:
        raise DomainError(f"need 2 <= k <= n-1, got (n={n}, k={k})")
    if leaf_count(start) != k:
        raise DomainError(
            f"start tree has {leaf_count(start)} leaves, expected {k}"
        )
    if max_steps < 0:
        raise DomainError(f"max_steps must be >= 0, got {max_steps}")
    current = start
    lam = _tree_lambda1(current)
    trace: list[ClimbStep] = []
    while len(trace) < max_steps:
        improved = False
        for move, new_tree in _candidate_moves(current):
            new_lam = _tree_lambda1(new_tree)
            if new_lam > lam + IMPROVE_TOL:
                current = new_tree
                lam = new_lam
                trace.append(
                    ClimbStep(
                        step=len(trace) + 1,
                        kind=move.kind,
                        vertices=move.vertices,
                        lambda1=new_lam,
                    )
                )
                improved = True
                break
        if not improved:
            break
    return current, trace

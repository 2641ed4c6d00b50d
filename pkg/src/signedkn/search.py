"""Enumeration of free-tree isomorphism classes and the exhaustive
verification machinery: the broom-extremality check per (n, k), the
double-star chain, and structural audits of argmax trees.

Two independent enumeration routes are kept deliberately:

  (a) decode every Prufer sequence and deduplicate by canonical code
      (supported for n <= 9; the n=9 sweep covers 9**7 sequences and is
      accelerated with a compiled kernel);
  (b) canonical free-tree generation (networkx's implementation of the
      Wright/Richmond/Odlyzko/McKay algorithm) for all n <= 12.

Their agreement is part of the acceptance suite; class counts are pinned
against the known free-tree counting sequence.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import networkx as nx
import numpy as np

from ._accel import njit
from .errors import DomainError, InvariantViolationError
from .graphs import (
    PruferSequence,
    Tree,
    build_broom,
    build_double_star,
    build_path,
    canonical_code,
    leaf_count,
    prufer_decode,
    prufer_encode,
    signed_complete_from_tree,
)
from .spectra import adjacency_matrix, eigen_decompose

# Free-tree class counts for n = 2..12, frozen after the dual-method
# enumeration agreed; also the classical counting sequence for free trees.
FREE_TREE_COUNTS = {
    2: 1,
    3: 1,
    4: 2,
    5: 3,
    6: 6,
    7: 11,
    8: 23,
    9: 47,
    10: 106,
    11: 235,
    12: 551,
}

MAX_N = 12
MAX_PRUFER_N = 9

# Two classes within this of the maximum λ1 count as tied.
TIE_TOL = 1e-9

# Successive chain values must rise by more than this.
CHAIN_GAP_TOL = 1e-9


@njit(cache=True)
def _decode_linear(n, seq, deg, eu, ev):
    """Linear-time Prufer decode (smallest-leaf convention) into eu/ev."""
    for v in range(n):
        deg[v] = 1
    for j in range(n - 2):
        deg[seq[j]] += 1
    ptr = 0
    leaf = -1
    for j in range(n - 2):
        if leaf == -1:
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
            ptr += 1
        s = seq[j]
        eu[j] = leaf
        ev[j] = s
        deg[leaf] = 0
        deg[s] -= 1
        if deg[s] == 1 and s < ptr:
            leaf = s
        else:
            leaf = -1
    if leaf == -1:
        while deg[ptr] != 1:
            ptr += 1
        leaf = ptr
    eu[n - 2] = leaf
    ev[n - 2] = n - 1


@njit(cache=True)
def _bfs_csr(n, adj_off, adj, root, parent, order):
    for v in range(n):
        parent[v] = -1
    parent[root] = root
    order[0] = root
    cnt = 1
    i = 0
    while i < cnt:
        v = order[i]
        i += 1
        for jj in range(adj_off[v], adj_off[v + 1]):
            w = adj[jj]
            if parent[w] == -1:
                parent[w] = v
                order[cnt] = w
                cnt += 1


@njit(cache=True)
def _rooted_bits(n, adj_off, adj, root, parent, order, bits, blen, kidkeys):
    """Rooted AHU code as an integer: the '1...0' string read as binary.

    Child codes are ordered by (bit length, value), which matches the
    string module's (length, lexicographic) child order.
    """
    _bfs_csr(n, adj_off, adj, root, parent, order)
    for i in range(n - 1, -1, -1):
        v = order[i]
        nk = 0
        for jj in range(adj_off[v], adj_off[v + 1]):
            w = adj[jj]
            if w != root and parent[w] == v:
                kidkeys[nk] = (blen[w] << 24) | bits[w]
                nk += 1
        for p in range(1, nk):
            key = kidkeys[p]
            q = p - 1
            while q >= 0 and kidkeys[q] > key:
                kidkeys[q + 1] = kidkeys[q]
                q -= 1
            kidkeys[q + 1] = key
        b = np.int64(1)
        ln = np.int64(2)
        for p in range(nk):
            cb = kidkeys[p] & 0xFFFFFF
            cl = kidkeys[p] >> 24
            b = (b << cl) | cb
            ln += cl
        bits[v] = b << 1
        blen[v] = ln
    return bits[root]


@njit(cache=True)
def _canonical_bits_csr(
    n, eu, ev, degbuf, adj_off, adj, fill, parent, order, size, bits, blen, kidkeys
):
    for v in range(n):
        degbuf[v] = 0
    for j in range(n - 1):
        degbuf[eu[j]] += 1
        degbuf[ev[j]] += 1
    adj_off[0] = 0
    for v in range(n):
        adj_off[v + 1] = adj_off[v] + degbuf[v]
        fill[v] = adj_off[v]
    for j in range(n - 1):
        u = eu[j]
        w = ev[j]
        adj[fill[u]] = w
        fill[u] += 1
        adj[fill[w]] = u
        fill[w] += 1
    _bfs_csr(n, adj_off, adj, 0, parent, order)
    for v in range(n):
        size[v] = 1
    for i in range(n - 1, 0, -1):
        v = order[i]
        size[parent[v]] += size[v]
    c1 = -1
    c2 = -1
    half = n // 2
    for v in range(n):
        biggest = n - size[v]
        for jj in range(adj_off[v], adj_off[v + 1]):
            w = adj[jj]
            if parent[w] == v and size[w] > biggest:
                biggest = size[w]
        if biggest <= half:
            if c1 == -1:
                c1 = v
            else:
                c2 = v
    best = _rooted_bits(n, adj_off, adj, c1, parent, order, bits, blen, kidkeys)
    if c2 != -1:
        other = _rooted_bits(n, adj_off, adj, c2, parent, order, bits, blen, kidkeys)
        if other < best:
            best = other
    return best


@njit(cache=True)
def _mass_canonical_codes(n, total, out):
    """Canonical integer code of the tree decoded from every base-n index."""
    seq = np.zeros(max(n - 2, 1), dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    eu = np.zeros(n - 1, dtype=np.int64)
    ev = np.zeros(n - 1, dtype=np.int64)
    degbuf = np.zeros(n, dtype=np.int64)
    adj_off = np.zeros(n + 1, dtype=np.int64)
    adj = np.zeros(2 * (n - 1), dtype=np.int64)
    fill = np.zeros(n, dtype=np.int64)
    parent = np.zeros(n, dtype=np.int64)
    order = np.zeros(n, dtype=np.int64)
    size = np.zeros(n, dtype=np.int64)
    bits = np.zeros(n, dtype=np.int64)
    blen = np.zeros(n, dtype=np.int64)
    kidkeys = np.zeros(n, dtype=np.int64)
    for idx in range(total):
        x = idx
        for j in range(n - 3, -1, -1):
            seq[j] = x % n
            x //= n
        _decode_linear(n, seq, deg, eu, ev)
        out[idx] = _canonical_bits_csr(
            n, eu, ev, degbuf, adj_off, adj, fill, parent, order, size, bits,
            blen, kidkeys,
        )


def _symbols_of_index(n: int, idx: int) -> tuple[int, ...]:
    symbols = []
    x = idx
    for _ in range(n - 2):
        symbols.append(x % n)
        x //= n
    symbols.reverse()
    return tuple(symbols)


def _classes_by_prufer(n: int) -> list[Tree]:
    if n > MAX_PRUFER_N:
        raise DomainError(
            f"Prufer enumeration supported for n <= {MAX_PRUFER_N}, got {n}"
        )
    total = n ** (n - 2)
    codes = np.empty(total, dtype=np.int64)
    _mass_canonical_codes(n, total, codes)
    _, first_idx = np.unique(codes, return_index=True)
    reps = [
        prufer_decode(PruferSequence(n, _symbols_of_index(n, int(i))))
        for i in sorted(int(i) for i in first_idx)
    ]
    reps.sort(key=lambda t: canonical_code(t).code)
    return reps


def _classes_by_generation(n: int) -> list[Tree]:
    if n <= 3:
        return [build_path(n)]
    trees = []
    for gnx in nx.nonisomorphic_trees(n):
        nodes = sorted(gnx.nodes())
        ix = {v: i for i, v in enumerate(nodes)}
        trees.append(Tree(n, frozenset((ix[u], ix[v]) for u, v in gnx.edges())))
    if len(trees) != FREE_TREE_COUNTS[n]:
        raise InvariantViolationError(
            f"free-tree generation for n={n} produced {len(trees)} classes, "
            f"expected {FREE_TREE_COUNTS[n]}"
        )
    codes = {canonical_code(t).code for t in trees}
    if len(codes) != len(trees):
        raise InvariantViolationError(
            f"canonical codes collapsed distinct classes at n={n}"
        )
    trees.sort(key=lambda t: canonical_code(t).code)
    return trees


def enumerate_tree_classes(n: int, method: str = "generate") -> list[Tree]:
    """One representative per free-tree isomorphism class on n vertices,
    sorted by canonical code.

    method "generate" (default) uses canonical generation; "prufer" decodes
    all n**(n-2) sequences and deduplicates by canonical code (n <= 9).
    """
    if not 2 <= n <= MAX_N:
        raise DomainError(f"class enumeration supports 2 <= n <= {MAX_N}, got {n}")
    if method == "generate":
        return _classes_by_generation(n)
    if method == "prufer":
        return _classes_by_prufer(n)
    raise DomainError(f"unknown enumeration method {method!r}")


@dataclass(frozen=True)
class EnumerationCrossCheck:
    """Outcome of running both enumeration routes on the same n."""

    n: int
    count_generation: int
    count_prufer: int
    codes_equal: bool

    @property
    def ok(self) -> bool:
        return self.codes_equal and self.count_generation == self.count_prufer


def cross_check_enumeration(n: int) -> EnumerationCrossCheck:
    gen = enumerate_tree_classes(n, method="generate")
    pru = enumerate_tree_classes(n, method="prufer")
    same = [canonical_code(t).code for t in gen] == [
        canonical_code(t).code for t in pru
    ]
    return EnumerationCrossCheck(n, len(gen), len(pru), same)


def enumerate_with_leaves(n: int, k: int, method: str = "generate") -> list[Tree]:
    """The classes on n vertices with exactly k leaves."""
    if not 2 <= k <= n - 1:
        raise DomainError(f"need 2 <= k <= n-1, got (n={n}, k={k})")
    return [t for t in enumerate_tree_classes(n, method) if leaf_count(t) == k]


@dataclass(frozen=True)
class ClassRecord:
    canonical_code: str
    prufer: tuple[int, ...]
    leaf_count: int
    lambda1: float
    is_argmax: bool


@dataclass(frozen=True)
class SearchReport:
    """Per-(n, k) table of tree classes and their indices.

    mode is "reduced" inside the main parameter range (n >= 6 and
    3 <= k <= n-3) and names the edge case otherwise.  runner_up_gap is
    None when only one class exists.  tied_codes lists every class within
    TIE_TOL of the maximum; more than one entry is a red flag the caller
    should surface, since a tie is never expected in the reduced range.
    """

    n: int
    k: int
    mode: str
    classes: tuple[ClassRecord, ...]
    argmax_code: str
    runner_up_gap: float | None
    matches_broom: bool
    tied_codes: tuple[str, ...]


def _mode_of(n: int, k: int) -> str:
    if k == n - 1:
        return "edge_k_n_minus_1"
    if k == n - 2:
        return "edge_k_n_minus_2"
    if k == 2:
        return "edge_k_2"
    return "reduced"


def tree_index(t: Tree) -> float:
    """λ1 of (K_n, T-) for the given tree of negative edges."""
    g = signed_complete_from_tree(t)
    return float(eigen_decompose(adjacency_matrix(g), False).values[0])


def verify_max_index(n: int, k: int) -> SearchReport:
    """Compute λ1 for every class with k leaves and test whether the broom
    attains the maximum.

    The reduced range is n >= 6 with 3 <= k <= n-3; other k are accepted
    and labelled as edge cases (k = n-1 is the balanced star, excluded
    from the extremal statement; k = n-2 checks that the argmax is the
    double star with one pendant on one side, which the broom realizes).
    """
    trees = enumerate_with_leaves(n, k)
    lams = [tree_index(t) for t in trees]
    mx = max(lams)
    arg_i = lams.index(mx)
    records = tuple(
        ClassRecord(
            canonical_code=canonical_code(t).code,
            prufer=prufer_encode(t).symbols,
            leaf_count=k,
            lambda1=lam,
            is_argmax=(i == arg_i),
        )
        for i, (t, lam) in enumerate(zip(trees, lams))
    )
    tied = tuple(r.canonical_code for r, lam in zip(records, lams) if mx - lam <= TIE_TOL)
    others = [lam for i, lam in enumerate(lams) if i != arg_i]
    gap = (mx - max(others)) if others else None
    broom_code = canonical_code(build_broom(n, k)).code
    return SearchReport(
        n=n,
        k=k,
        mode=_mode_of(n, k),
        classes=records,
        argmax_code=records[arg_i].canonical_code,
        runner_up_gap=gap,
        matches_broom=records[arg_i].canonical_code == broom_code,
        tied_codes=tied,
    )


def double_star_chain(n: int) -> list[tuple[int, int, float]]:
    """(s, t, λ1) for the double stars with s + t = n - 2, s from
    floor((n-2)/2) down to 1.  Expected strictly increasing λ1."""
    if n < 6:
        raise DomainError(f"double-star chain needs n >= 6, got {n}")
    out = []
    for s in range((n - 2) // 2, 0, -1):
        t = n - 2 - s
        out.append((s, t, tree_index(build_double_star(s, t))))
    return out


@dataclass(frozen=True)
class AuditRecord:
    """Structural-shape checks for a tree claimed extremal at (n, k).

    Applicable for 3 <= k <= n-2; outside that range (path or star) the
    hub properties are degenerate and every check is None."""

    n: int
    k: int
    applicable: bool
    hub: int | None
    max_degree_is_k: bool | None
    unique_max_degree_vertex: bool | None
    hub_pendant_neighbors: bool | None
    non_hub_degrees_le_2: bool | None
    passed: bool


def structural_audit(t: Tree, k: int) -> AuditRecord:
    """Check the expected argmax shape: a unique hub of degree k carrying
    k-1 pendant neighbours, every other vertex of degree at most 2."""
    if leaf_count(t) != k:
        raise DomainError(f"tree has {leaf_count(t)} leaves, expected {k}")
    n = t.n
    if not 3 <= k <= n - 2:
        return AuditRecord(
            n=n, k=k, applicable=False, hub=None, max_degree_is_k=None,
            unique_max_degree_vertex=None, hub_pendant_neighbors=None,
            non_hub_degrees_le_2=None, passed=True,
        )
    deg = t.degrees()
    maxdeg = max(deg)
    hub = deg.index(maxdeg)
    adj = t.adjacency()
    max_degree_is_k = maxdeg == k
    unique_max = deg.count(maxdeg) == 1
    pendant_nbs = sum(1 for w in adj[hub] if deg[w] == 1)
    hub_pendant = pendant_nbs == k - 1
    others_le_2 = all(d <= 2 for v, d in enumerate(deg) if v != hub)
    return AuditRecord(
        n=n,
        k=k,
        applicable=True,
        hub=hub,
        max_degree_is_k=max_degree_is_k,
        unique_max_degree_vertex=unique_max,
        hub_pendant_neighbors=hub_pendant,
        non_hub_degrees_le_2=others_le_2,
        passed=max_degree_is_k and unique_max and hub_pendant and others_le_2,
    )


def report_to_json(r: SearchReport) -> str:
    return json.dumps(
        {
            "n": r.n,
            "k": r.k,
            "mode": r.mode,
            "argmax_code": r.argmax_code,
            "runner_up_gap": r.runner_up_gap,
            "matches_broom": r.matches_broom,
            "tied_codes": list(r.tied_codes),
            "classes": [
                {
                    "canonical_code": c.canonical_code,
                    "prufer": list(c.prufer),
                    "leaf_count": c.leaf_count,
                    "lambda1": c.lambda1,
                    "is_argmax": c.is_argmax,
                }
                for c in r.classes
            ],
        }
    )


CSV_COLUMNS = ["n", "k", "canonical_code", "prufer", "leaf_count", "lambda1", "is_argmax"]


def report_to_csv(r: SearchReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for c in r.classes:
        w.writerow(
            [
                r.n,
                r.k,
                c.canonical_code,
                ",".join(str(s) for s in c.prufer),
                c.leaf_count,
                repr(c.lambda1),
                c.is_argmax,
            ]
        )
    return buf.getvalue()

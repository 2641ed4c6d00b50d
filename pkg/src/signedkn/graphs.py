"""Labelled trees, the Prufer codec, canonical forms, named tree families,
and signed complete graphs whose negative edges are given by a tree.

Vertices are always the contiguous integers 0..n-1 and edges are stored as
(min, max) pairs so that sets of edges compare reliably.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, InvariantViolationError, MalformedInputError


def _norm_edge(e) -> tuple[int, int]:
    u, v = e
    u = int(u)
    v = int(v)
    if u == v:
        raise InvariantViolationError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Tree:
    """A labelled tree on vertices 0..n-1, stored as a frozenset of edges.

    Construction validates the full invariant set: exactly n-1 edges, all
    endpoints in range, connected (which together with the edge count
    implies acyclic).
    """

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise DomainError(f"tree needs an integer n >= 2, got {self.n!r}")
        edges = frozenset(_norm_edge(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvariantViolationError(
                    f"edge ({u}, {v}) out of range for n={self.n}"
                )
        if len(edges) != self.n - 1:
            raise InvariantViolationError(
                f"tree on {self.n} vertices needs {self.n - 1} edges, "
                f"got {len(edges)}"
            )
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != self.n:
            raise InvariantViolationError("edge set is not connected")

    def adjacency(self) -> dict[int, list[int]]:
        """Adjacency lists, neighbours sorted ascending."""
        adj: dict[int, list[int]] = {v: [] for v in range(self.n)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def leaves(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees()) if d == 1]

    def relabel(self, perm: Sequence[int]) -> "Tree":
        """Apply the vertex permutation old -> perm[old]."""
        if sorted(perm) != list(range(self.n)):
            raise DomainError("perm must be a permutation of 0..n-1")
        return Tree(self.n, frozenset((perm[u], perm[v]) for u, v in self.edges))


@dataclass(frozen=True)
class PruferSequence:
    """A Prufer code: n-2 symbols, each a vertex label of the target tree."""

    n: int
    symbols: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise DomainError(f"Prufer sequence needs n >= 2, got {self.n!r}")
        symbols = tuple(int(s) for s in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if len(symbols) != self.n - 2:
            raise MalformedInputError(
                f"expected {self.n - 2} symbols for n={self.n}, got {len(symbols)}"
            )
        for s in symbols:
            if not 0 <= s < self.n:
                raise MalformedInputError(f"symbol {s} out of range for n={self.n}")


def prufer_decode(seq: PruferSequence) -> Tree:
    """Classical decode with the smallest-leaf convention."""
    n = seq.n
    deg = [1] * n
    for s in seq.symbols:
        deg[s] += 1
    heap = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(heap)
    edges = []
    for s in seq.symbols:
        leaf = heapq.heappop(heap)
        edges.append((leaf, s))
        deg[s] -= 1
        if deg[s] == 1:
            heapq.heappush(heap, s)
    u = heapq.heappop(heap)
    v = heapq.heappop(heap)
    edges.append((u, v))
    return Tree(n, frozenset(edges))


def prufer_encode(t: Tree) -> PruferSequence:
    """Inverse of prufer_decode: peel smallest leaves, record their neighbours."""
    n = t.n
    adj = {v: set(nb) for v, nb in t.adjacency().items()}
    heap = [v for v in range(n) if len(adj[v]) == 1]
    heapq.heapify(heap)
    out = []
    for _ in range(n - 2):
        leaf = heapq.heappop(heap)
        nb = next(iter(adj[leaf]))
        out.append(nb)
        adj[nb].discard(leaf)
        adj[leaf].clear()
        if len(adj[nb]) == 1:
            heapq.heappush(heap, nb)
    return PruferSequence(n, tuple(out))


def leaf_count(t: Tree) -> int:
    """Number of pendant (degree-one) vertices; at least 2 for any tree."""
    return sum(1 for d in t.degrees() if d == 1)


def build_star(n: int) -> Tree:
    """Star with centre 0 and leaves 1..n-1."""
    if n < 2:
        raise DomainError(f"star needs n >= 2, got {n}")
    return Tree(n, frozenset((0, v) for v in range(1, n)))


def build_path(n: int) -> Tree:
    """Path 0-1-...-(n-1)."""
    if n < 2:
        raise DomainError(f"path needs n >= 2, got {n}")
    return Tree(n, frozenset((v, v + 1) for v in range(n - 1)))


def build_double_star(a: int, b: int) -> Tree:
    """Two adjacent centres 0 and 1 carrying a and b pendant vertices."""
    if a < 1 or b < 1:
        raise DomainError(f"double star needs a >= 1 and b >= 1, got ({a}, {b})")
    n = a + b + 2
    edges = [(0, 1)]
    edges += [(0, v) for v in range(2, a + 2)]
    edges += [(1, v) for v in range(a + 2, n)]
    return Tree(n, frozenset(edges))


def build_broom(n: int, k: int) -> Tree:
    """Hub 0 with k-1 pendant vertices plus a path on the remaining n-k.

    build_broom(n, 2) is a path and build_broom(n, n-1) is a star; for
    3 <= k <= n-2 the hub is the unique vertex of maximum degree k.
    """
    if not 2 <= k <= n - 1:
        raise DomainError(f"broom needs 2 <= k <= n-1, got (n={n}, k={k})")
    edges = [(0, v) for v in range(1, k)]
    edges.append((0, k))
    edges += [(v, v + 1) for v in range(k, n - 1)]
    return Tree(n, frozenset(edges))


def random_tree(n: int, rng: random.Random) -> Tree:
    """Uniform random labelled tree via a uniform Prufer sequence."""
    if n < 2:
        raise DomainError(f"random tree needs n >= 2, got {n}")
    symbols = tuple(rng.randrange(n) for _ in range(n - 2))
    return prufer_decode(PruferSequence(n, symbols))


def random_tree_with_leaf_count(n: int, k: int, rng: random.Random) -> Tree:
    """Random labelled tree with exactly k leaves.

    Uses the fact that a decoded tree has n minus (distinct symbols) leaves:
    pick n-k distinct symbols, place each at least once, fill the rest.
    """
    if not 2 <= k <= n - 1:
        raise DomainError(f"need 2 <= k <= n-1, got (n={n}, k={k})")
    interior = rng.sample(range(n), n - k)
    symbols = list(interior) + [rng.choice(interior) for _ in range(k - 2)]
    rng.shuffle(symbols)
    return prufer_decode(PruferSequence(n, tuple(symbols)))


@dataclass(frozen=True, order=True)
class CanonicalTreeCode:
    """Isomorphism-invariant code of a free tree.

    The code is a balanced string of '1'/'0' characters of length 2n, read
    as open/close marks of an ordered rooted tree: equal codes if and only
    if the underlying free trees are isomorphic.
    """

    code: str


def _bfs_order(n: int, adj: dict[int, list[int]], root: int):
    parent = [-1] * n
    order = [root]
    parent[root] = root
    for v in order:
        for w in adj[v]:
            if parent[w] == -1:
                parent[w] = v
                order.append(w)
    parent[root] = -1
    return order, parent


def _centroids(t: Tree) -> list[int]:
    """The one or two vertices minimising the largest component left by
    their removal (subtree-size centroid, not the path center)."""
    n = t.n
    if n == 2:
        return [0, 1]
    adj = t.adjacency()
    order, parent = _bfs_order(n, adj, 0)
    size = [1] * n
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    out = []
    for v in range(n):
        biggest = n - size[v]
        for w in adj[v]:
            if parent[w] == v:
                biggest = max(biggest, size[w])
        if biggest <= n // 2:
            out.append(v)
    return sorted(out)


def _rooted_code(n: int, adj: dict[int, list[int]], root: int) -> str:
    order, parent = _bfs_order(n, adj, root)
    code: list[str] = [""] * n
    for v in reversed(order):
        kids = sorted(
            (code[w] for w in adj[v] if parent[w] == v), key=lambda c: (len(c), c)
        )
        code[v] = "1" + "".join(kids) + "0"
    return code[root]


def canonical_code(t: Tree) -> CanonicalTreeCode:
    """AHU-style code rooted at the centroid; for bicentroidal trees the
    lexicographically smaller of the two rooted codes is used (both have
    length 2n, so string order and numeric order agree)."""
    adj = t.adjacency()
    codes = [_rooted_code(t.n, adj, c) for c in _centroids(t)]
    return CanonicalTreeCode(min(codes))


@dataclass(frozen=True)
class SignedCompleteGraph:
    """K_n with a distinguished set of negative edges; all other edges
    are positive.  The negative set is arbitrary here; the constructions
    of interest make it a spanning tree."""

    n: int
    negative_edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise DomainError(f"signed K_n needs n >= 2, got {self.n!r}")
        neg = frozenset(_norm_edge(e) for e in self.negative_edges)
        object.__setattr__(self, "negative_edges", neg)
        for u, v in neg:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvariantViolationError(
                    f"negative edge ({u}, {v}) out of range for n={self.n}"
                )

    def sign(self, u: int, v: int) -> int:
        """Sign of the edge uv: -1 or +1."""
        if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
            raise DomainError(f"({u}, {v}) is not an edge of K_{self.n}")
        return -1 if (min(u, v), max(u, v)) in self.negative_edges else 1


def signed_complete_from_tree(t: Tree) -> SignedCompleteGraph:
    """The signed complete graph whose negative edges are exactly t's edges."""
    return SignedCompleteGraph(t.n, t.edges)


def parse_edge_list(text: str) -> Tree:
    """Parse the edge-list text format: a line "n", then one "u v" per line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise MalformedInputError("empty edge-list input")
    try:
        n = int(lines[0])
    except ValueError:
        raise MalformedInputError(f"first line must be the vertex count, got {lines[0]!r}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise MalformedInputError(f"expected 'u v', got {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise MalformedInputError(f"non-integer endpoint in {ln!r}")
    try:
        return Tree(n, frozenset(edges))
    except (DomainError, InvariantViolationError) as exc:
        raise MalformedInputError(f"edge list is not a tree: {exc}") from exc


def format_edge_list(t: Tree) -> str:
    lines = [str(t.n)]
    lines += [f"{u} {v}" for u, v in sorted(t.edges)]
    return "\n".join(lines) + "\n"


def parse_prufer(text: str) -> PruferSequence:
    """Parse a comma-separated Prufer code; empty input means n=2."""
    stripped = text.strip()
    if not stripped:
        return PruferSequence(2, ())
    try:
        symbols = tuple(int(p.strip()) for p in stripped.split(","))
    except ValueError:
        raise MalformedInputError(f"bad Prufer string {text!r}")
    return PruferSequence(len(symbols) + 2, symbols)


def format_prufer(seq: PruferSequence) -> str:
    return ",".join(str(s) for s in seq.symbols)

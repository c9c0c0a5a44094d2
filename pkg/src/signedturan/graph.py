"""Signed graph value type and its combinatorial machinery.

A signed graph is stored as a dense symmetric matrix over {-1, 0, +1} together
with per-vertex neighbourhood bitmasks of the underlying graph.  Instances are
immutable; every operation returns a new graph.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

MAX_N = 64


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _as_mask(vertices: Iterable[int] | int, n: int) -> int:
    if isinstance(vertices, (int, np.integer)) and not isinstance(vertices, bool):
        mask = int(vertices)
        if mask < 0 or mask >> n:
            raise ValueError(f"vertex mask {mask:#x} out of range for n={n}")
        return mask
    mask = 0
    for v in vertices:
        v = int(v)
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
        mask |= 1 << v
    return mask


class SignedGraph:
    """Vertex count plus symmetric sign-valued adjacency with zero diagonal."""

    __slots__ = ("n", "_adj", "_nbr", "_key")

    def __init__(self, adj) -> None:
        a = np.array(adj, dtype=np.int8)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        n = a.shape[0]
        if not 1 <= n <= MAX_N:
            raise ValueError(f"vertex count must be in 1..{MAX_N}, got {n}")
        if not np.isin(a, (-1, 0, 1)).all():
            raise ValueError("adjacency entries must be -1, 0 or +1")
        if not (a == a.T).all():
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diagonal(a)):
            raise ValueError("adjacency diagonal must be zero")
        a.setflags(write=False)
        self.n = n
        self._adj = a
        weights = np.left_shift(np.uint64(1), np.arange(n, dtype=np.uint64))
        masks = np.where(a != 0, weights, np.uint64(0)).sum(axis=1, dtype=np.uint64)
        self._nbr = tuple(int(x) for x in masks.tolist())
        self._key = a.tobytes()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]]) -> "SignedGraph":
        a = np.zeros((n, n), dtype=np.int8)
        for u, v, s in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            if s not in (1, -1):
                raise ValueError(f"edge sign must be +1 or -1, got {s}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if a[u, v]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            a[u, v] = a[v, u] = s
        return cls(a)

    @classmethod
    def complete(cls, n: int, sign: int = 1) -> "SignedGraph":
        return cls(sign * (np.ones((n, n), dtype=np.int8) - np.eye(n, dtype=np.int8)))

    @classmethod
    def empty(cls, n: int) -> "SignedGraph":
        return cls(np.zeros((n, n), dtype=np.int8))

    @property
    def adj(self) -> np.ndarray:
        return self._adj

    @property
    def nbr(self) -> tuple[int, ...]:
        """Neighbourhood bitmasks of the underlying graph."""
        return self._nbr

    def sign(self, u: int, v: int) -> int:
        return int(self._adj[u, v])

    def degree(self, v: int) -> int:
        return self._nbr[v].bit_count()

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(self._adj)) // 2

    def edges(self) -> list[tuple[int, int, int]]:
        iu, ju = np.nonzero(np.triu(self._adj))
        return [(int(i), int(j), int(self._adj[i, j])) for i, j in zip(iu, ju)]

    def negative_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v, s in self.edges() if s < 0]

    def underlying(self) -> "SignedGraph":
        """The all-positive signed graph on the same edge set, i.e. (G, +)."""
        return SignedGraph(np.abs(self._adj))

    def __eq__(self, other) -> bool:
        return isinstance(other, SignedGraph) and self.n == other.n and self._key == other._key

    def __hash__(self) -> int:
        return hash((self.n, self._key))

    def __repr__(self) -> str:
        neg = len(self.negative_edges())
        return f"SignedGraph(n={self.n}, e={self.num_edges}, negative={neg})"


def switch(g: SignedGraph, u: Iterable[int] | int) -> SignedGraph:
    """Reverse the sign of every edge with exactly one end in ``u``."""
    mask = _as_mask(u, g.n)
    s = np.array([-1 if mask >> i & 1 else 1 for i in range(g.n)], dtype=np.int8)
    return SignedGraph(g.adj * np.outer(s, s))


def negate(g: SignedGraph) -> SignedGraph:
    return SignedGraph(-g.adj)


def permute(g: SignedGraph, perm: Sequence[int]) -> SignedGraph:
    """Relabel so that vertex ``perm[i]`` of ``g`` becomes vertex ``i``."""
    p = np.asarray(perm, dtype=np.intp)
    if sorted(p.tolist()) != list(range(g.n)):
        raise ValueError("perm must be a permutation of range(n)")
    return SignedGraph(g.adj[np.ix_(p, p)])


def components(g: SignedGraph) -> list[list[int]]:
    seen = 0
    comps = []
    for r in range(g.n):
        if seen >> r & 1:
            continue
        comp, frontier = 1 << r, 1 << r
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.nbr[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(_bits(comp)))
    return comps


def is_connected(g: SignedGraph) -> bool:
    return len(components(g)) == 1


def min_degree(g: SignedGraph) -> int:
    return min(g.degree(v) for v in range(g.n))


def spanning_forest(g: SignedGraph) -> list[tuple[int, int]]:
    """BFS spanning forest, roots and neighbours visited in increasing label order."""
    seen = [False] * g.n
    tree = []
    for r in range(g.n):
        if seen[r]:
            continue
        seen[r] = True
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for y in _bits(g.nbr[x]):
                if not seen[y]:
                    seen[y] = True
                    tree.append((min(x, y), max(x, y)))
                    queue.append(y)
    return tree


def balance_potentials(g: SignedGraph) -> tuple[list[int], bool]:
    """Spanning-forest potentials ``s`` with ``s_u s_v sigma(uv) = +1`` on tree edges.

    Returns the potentials and whether every non-tree edge also satisfies the
    relation, which is exactly the balance test.
    """
    s = [0] * g.n
    adj = g.adj
    for r in range(g.n):
        if s[r]:
            continue
        s[r] = 1
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for y in _bits(g.nbr[x]):
                if not s[y]:
                    s[y] = s[x] * int(adj[x, y])
                    queue.append(y)
    sv = np.array(s, dtype=np.int8)
    ok = bool((adj * np.outer(sv, sv) >= 0).all())
    return s, ok


def is_balanced(g: SignedGraph) -> bool:
    return balance_potentials(g)[1]


def balancing_set(g: SignedGraph) -> Optional[frozenset[int]]:
    """A switching set making ``g`` all-positive, or None when ``g`` is unbalanced."""
    s, ok = balance_potentials(g)
    if not ok:
        return None
    return frozenset(i for i in range(g.n) if s[i] < 0)


def switching_between(g: SignedGraph, h: SignedGraph) -> Optional[frozenset[int]]:
    """A set ``U`` with ``switch(g, U) == h``, or None if no such set exists."""
    if g.n != h.n or not np.array_equal(np.abs(g.adj), np.abs(h.adj)):
        return None
    # g_U = h  iff  the product signature g*h is balanced
    prod = SignedGraph(g.adj * h.adj)
    return balancing_set(prod)


def induced(g: SignedGraph, s: Iterable[int] | int) -> SignedGraph:
    mask = _as_mask(s, g.n)
    idx = list(_bits(mask))
    if not idx:
        raise ValueError("induced subgraph needs a nonempty vertex set")
    return SignedGraph(g.adj[np.ix_(idx, idx)])


def delete_vertex(g: SignedGraph, v: int) -> SignedGraph:
    return induced(g, [i for i in range(g.n) if i != v])


def find_unbalanced_k3(g: SignedGraph) -> Optional[tuple[int, int, int]]:
    adj = g.adj
    nbr = g.nbr
    for a in range(g.n):
        for b in _bits(nbr[a] >> (a + 1) << (a + 1)):
            for c in _bits(nbr[a] & nbr[b] & ~((1 << (b + 1)) - 1)):
                if adj[a, b] * adj[a, c] * adj[b, c] < 0:
                    return (a, b, c)
    return None


def k4_is_unbalanced(adj, a: int, b: int, c: int, d: int) -> bool:
    """A complete signed K4 is balanced iff three of its triangles are positive.

    The fourth triangle sign is the product of the other three.
    """
    ab, ac, ad = adj[a][b], adj[a][c], adj[a][d]
    bc, bd, cd = adj[b][c], adj[b][d], adj[c][d]
    return ab * ac * bc < 0 or ab * ad * bd < 0 or ac * ad * cd < 0


def find_unbalanced_k4(g: SignedGraph) -> Optional[tuple[int, int, int, int]]:
    """First 4-set, in lexicographic order, inducing an unbalanced complete K4."""
    adj = g.adj.tolist()
    nbr = g.nbr
    for a in range(g.n):
        na = nbr[a] >> (a + 1) << (a + 1)
        for b in _bits(na):
            nab = na & nbr[b] & ~((1 << (b + 1)) - 1)
            for c in _bits(nab):
                for d in _bits(nab & nbr[c] & ~((1 << (c + 1)) - 1)):
                    if k4_is_unbalanced(adj, a, b, c, d):
                        return (a, b, c, d)
    return None


def _max_clique(nbr: Sequence[int], cand: int) -> int:
    """Exact maximum clique size within ``cand`` (branch and bound, colour bound)."""
    best = 0

    def colour_order(P: int) -> list[tuple[int, int]]:
        # greedy sequential colouring; returns (vertex, colour) in increasing colour
        out = []
        colour = 0
        uncol = P
        while uncol:
            colour += 1
            avail = uncol
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~nbr[v] & ~(1 << v)
                uncol &= ~(1 << v)
                out.append((v, colour))
        return out

    def expand(size: int, P: int) -> None:
        nonlocal best
        order = colour_order(P)
        for v, col in reversed(order):
            if size + col <= best:
                return
            newP = P & nbr[v]
            if newP:
                expand(size + 1, newP)
            elif size + 1 > best:
                best = size + 1
            P &= ~(1 << v)

    if cand:
        expand(0, cand)
    return best


def clique_number(g: SignedGraph) -> int:
    return _max_clique(g.nbr, (1 << g.n) - 1)


def balanced_clique_number(g: SignedGraph) -> int:
    """Largest vertex set inducing a complete balanced signed subgraph.

    A clique containing root ``r`` (its smallest vertex) is balanced iff every
    other member ``x`` can take potential ``sigma(rx)`` consistently, i.e. all
    pairs ``x, y`` satisfy ``sigma(xy) = sigma(rx) sigma(ry)``.  That turns the
    search into an ordinary clique search in a compatibility graph.
    """
    adj = g.adj
    best = 1
    for r in range(g.n):
        later = g.nbr[r] >> (r + 1) << (r + 1)
        if later.bit_count() + 1 <= best:
            continue
        verts = list(_bits(later))
        compat = [0] * g.n
        for x, y in combinations(verts, 2):
            if adj[x, y] and adj[x, y] == adj[r, x] * adj[r, y]:
                compat[x] |= 1 << y
                compat[y] |= 1 << x
        best = max(best, 1 + _max_clique(compat, later))
    return best


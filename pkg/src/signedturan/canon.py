"""Canonical forms for signed graphs up to switching and vertex relabelling.

The search is an individualisation-refinement tree.  Vertex and pair colours
are built from switching invariants only (degrees, common neighbours and the
number of negative triangles through a pair), so every labelling the tree
reaches is determined by the switching-isomorphism class.  At a leaf the graph
is relabelled and its signs are normalised by switching a label-ordered BFS
forest to all-positive; the resulting code does not depend on the switching
representative.  The canonical form is the smallest leaf code.

Equal leaf codes expose switching automorphisms, which prune the tree in the
usual two ways: jumping back to the common ancestor of the two leaves, and
skipping children that lie in one orbit of the automorphisms fixing the
current prefix.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import SignedGraph

MAX_CANON_N = 12

_CODE = {0: 0, 1: 1, -1: 2}


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Canonical code: ``n`` followed by the upper triangle, 0 none, 1 plus, 2 minus."""

    code: bytes

    @property
    def n(self) -> int:
        return self.code[0]

    def hex(self) -> str:
        return self.code.hex()

    @classmethod
    def from_hex(cls, text: str) -> "CanonicalForm":
        return cls(bytes.fromhex(text))

    def graph(self) -> SignedGraph:
        """The canonical representative itself."""
        n = self.n
        body = self.code[1:]
        if len(body) != n * (n - 1) // 2:
            raise ValueError("malformed canonical code")
        a = np.zeros((n, n), dtype=np.int8)
        iu, ju = np.triu_indices(n, 1)
        vals = np.array([0, 1, -1], dtype=np.int8)[np.frombuffer(body, dtype=np.uint8)]
        a[iu, ju] = vals
        a[ju, iu] = vals
        return SignedGraph(a)

    def __str__(self) -> str:
        return self.hex()


def _ranks(keys: list) -> list[int]:
    table = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [table[k] for k in keys]


def _pair_colours(adj: list[list[int]], n: int) -> tuple[list[list[int]], list[int]]:
    nbr = [{w for w in range(n) if adj[v][w]} for v in range(n)]
    keys = {}
    vkeys = []
    for u in range(n):
        neg_u = 0
        for v in range(n):
            if u == v:
                continue
            common = nbr[u] & nbr[v]
            neg = 0
            if adj[u][v]:
                s = adj[u][v]
                neg = sum(1 for w in common if s * adj[u][w] * adj[v][w] < 0)
                neg_u += neg
            keys[u, v] = (1 if adj[u][v] else 0, len(common), neg)
        vkeys.append((len(nbr[u]), neg_u))
    table = {k: i for i, k in enumerate(sorted(set(keys.values())))}
    pc = [[-1] * n for _ in range(n)]
    for (u, v), k in keys.items():
        pc[u][v] = table[k]
    return pc, _ranks(vkeys)


def _refine(colours: list[int], pc: list[list[int]], n: int) -> list[int]:
    """Colour refinement that splits cells in place (old colour is the major key)."""
    cur = colours
    count = len(set(cur))
    while count < n:
        keys = [
            (cur[v], tuple(sorted((pc[v][w], cur[w]) for w in range(n) if w != v)))
            for v in range(n)
        ]
        nxt = _ranks(keys)
        c = len(set(nxt))
        if c == count:
            break
        cur, count = nxt, c
    return cur


def _individualise(colours: list[int], v: int) -> list[int]:
    return _ranks([(c, 0 if w == v else 1) for w, c in enumerate(colours)])


def _leaf_code(adj: list[list[int]], order: list[int], n: int) -> bytes:
    m = [[adj[order[i]][order[j]] for j in range(n)] for i in range(n)]
    s = [0] * n
    for r in range(n):
        if s[r]:
            continue
        s[r] = 1
        q = deque([r])
        while q:
            x = q.popleft()
            row = m[x]
            for y in range(n):
                if row[y] and not s[y]:
                    s[y] = s[x] * row[y]
                    q.append(y)
    out = [n]
    for i in range(n):
        si, row = s[i], m[i]
        for j in range(i + 1, n):
            out.append(_CODE[si * s[j] * row[j]])
    return bytes(out)


class _Search:
    def __init__(self, adj: list[list[int]], n: int):
        self.adj = adj
        self.n = n
        self.pc, vcol = _pair_colours(adj, n)
        self.root = _refine(vcol, self.pc, n)
        self.first: Optional[tuple[bytes, list[int], tuple[int, ...]]] = None
        self.best: Optional[tuple[bytes, list[int], tuple[int, ...]]] = None
        self.gens: list[list[int]] = []

    def run(self) -> bytes:
        self._explore(self.root, ())
        return self.best[0]

    def _orbit_roots(self, prefix: tuple[int, ...]) -> list[int]:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.gens:
            if all(g[v] == v for v in prefix):
                for x in range(self.n):
                    a, b = find(x), find(g[x])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return [find(x) for x in range(self.n)]

    def _explore(self, colours: list[int], prefix: tuple[int, ...]) -> Optional[int]:
        n = self.n
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colours):
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            return self._leaf(colours, prefix)
        target = min((len(cell), c) for c, cell in cells.items() if len(cell) > 1)[1]
        depth = len(prefix)
        done: list[int] = []
        for v in cells[target]:
            if done:
                roots = self._orbit_roots(prefix)
                if any(roots[v] == roots[u] for u in done):
                    continue
            done.append(v)
            child = _refine(_individualise(colours, v), self.pc, n)
            back = self._explore(child, prefix + (v,))
            if back is not None and back < depth:
                return back
        return None

    def _leaf(self, colours: list[int], prefix: tuple[int, ...]) -> Optional[int]:
        order = [0] * self.n
        for v, c in enumerate(colours):
            order[c] = v
        code = _leaf_code(self.adj, order, self.n)
        if self.first is None:
            self.first = self.best = (code, order, prefix)
            return None
        for ref in (self.first, self.best):
            if code == ref[0]:
                # vertex with label i here corresponds to the one with label i there
                gamma = [0] * self.n
                for i in range(self.n):
                    gamma[order[i]] = ref[1][i]
                self.gens.append(gamma)
                k = 0
                while k < len(prefix) and prefix[k] == ref[2][k]:
                    k += 1
                return k
        if code < self.best[0]:
            self.best = (code, order, prefix)
        return None


def canonical_form(g: SignedGraph) -> CanonicalForm:
    """Canonical code of the switching-isomorphism class of ``g`` (n <= 12)."""
    if g.n > MAX_CANON_N:
        raise ValueError(f"canonical form supports n <= {MAX_CANON_N}, got {g.n}")
    adj = g.adj.tolist()
    return CanonicalForm(_Search(adj, g.n).run())


def underlying_form(g: SignedGraph) -> CanonicalForm:
    """Canonical code of the isomorphism class of the underlying graph."""
    return canonical_form(g.underlying())


def switching_automorphisms(g: SignedGraph) -> list[list[int]]:
    """Generators found while canonising: permutations preserving the switching class."""
    if g.n > MAX_CANON_N:
        raise ValueError(f"canonical form supports n <= {MAX_CANON_N}, got {g.n}")
    s = _Search(g.adj.tolist(), g.n)
    s.run()
    return s.gens

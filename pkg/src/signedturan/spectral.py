"""Spectra, quotient matrices, interlacing and eigenvalue upper bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph import (
    SignedGraph,
    balanced_clique_number,
    clique_number,
    min_degree,
    switch,
)
from .linalg import (
    IntPolynomial,
    char_poly_at,
    char_poly_exact,
    jacobi_eigh,
    multiset_contains,
    values_match,
)

DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class Spectrum:
    values: tuple[float, ...]
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise ValueError("spectrum values must be sorted descending")
        object.__setattr__(self, "values", vals)

    @property
    def index(self) -> float:
        return self.values[0]

    @property
    def smallest(self) -> float:
        return self.values[-1]

    @property
    def radius(self) -> float:
        return max(self.values[0], -self.values[-1])

    def __len__(self) -> int:
        return len(self.values)

    def to_json(self) -> dict:
        return {"values": list(self.values)}

    @classmethod
    def from_json(cls, obj: dict) -> "Spectrum":
        return cls(tuple(obj["values"]))


def _matrix(g_or_matrix) -> np.ndarray:
    if isinstance(g_or_matrix, SignedGraph):
        return g_or_matrix.adj
    return np.asarray(g_or_matrix)


def eigenvalues(g_or_matrix, tol: float = DEFAULT_TOL) -> Spectrum:
    w = jacobi_eigh(_matrix(g_or_matrix), tol=tol)
    return Spectrum(tuple(w.tolist()), tol)


def eigenvalues_many(graphs: Sequence[SignedGraph], tol: float = DEFAULT_TOL) -> list[Spectrum]:
    """Batched eigensolve; graphs of equal order share one Jacobi run."""
    out: list[Spectrum | None] = [None] * len(graphs)
    by_n: dict[int, list[int]] = {}
    for i, g in enumerate(graphs):
        by_n.setdefault(g.n, []).append(i)
    for n, idx in by_n.items():
        stack = np.stack([graphs[i].adj for i in idx])
        w = jacobi_eigh(stack, tol=tol)
        for i, row in zip(idx, w):
            out[i] = Spectrum(tuple(row.tolist()), tol)
    return out  # type: ignore[return-value]


def spectral_radius(g_or_matrix, tol: float = DEFAULT_TOL) -> float:
    return eigenvalues(g_or_matrix, tol).radius


def index(g_or_matrix, tol: float = DEFAULT_TOL) -> float:
    return eigenvalues(g_or_matrix, tol).index


def char_poly(g: SignedGraph) -> IntPolynomial:
    return char_poly_exact(g.adj)


def certify_index(g_or_matrix, value: int, tol: float = DEFAULT_TOL) -> bool:
    """Exact certificate that the largest eigenvalue equals the integer ``value``.

    ``value`` must be a root of the integer characteristic polynomial, and no
    numerically computed eigenvalue may exceed it by more than 1e-6.
    """
    m = _matrix(g_or_matrix)
    if char_poly_at(m, value) != 0:
        return False
    return eigenvalues(m, tol).index <= value + 1e-6


def certify_radius(g_or_matrix, value: int, tol: float = DEFAULT_TOL) -> bool:
    """Exact certificate that the spectral radius equals the integer ``value``."""
    m = _matrix(g_or_matrix)
    spec = eigenvalues(m, tol)
    if spec.radius > value + 1e-6:
        return False
    return (
        (spec.index >= value - 1e-6 and char_poly_at(m, value) == 0)
        or (-spec.smallest >= value - 1e-6 and char_poly_at(m, -value) == 0)
    )


@dataclass(frozen=True)
class QuotientSystem:
    partition: tuple[tuple[int, ...], ...]
    q: tuple[tuple[Fraction, ...], ...]
    equitable: bool

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.q for x in row)

    def int_matrix(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("quotient matrix has non-integer entries")
        return [[int(x) for x in row] for row in self.q]

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.q)

    def symmetrized(self) -> np.ndarray:
        """D^(1/2) Q D^(-1/2) with D the block sizes; symmetric when Q comes from a symmetric matrix."""
        sizes = np.array([len(b) for b in self.partition], dtype=float)
        q = np.array([[float(x) for x in row] for row in self.q])
        return np.sqrt(sizes)[:, None] * q / np.sqrt(sizes)[None, :]


def _check_partition(partition, n: int) -> tuple[tuple[int, ...], ...]:
    blocks = tuple(tuple(int(v) for v in b) for b in partition)
    flat = [v for b in blocks for v in b]
    if any(len(b) == 0 for b in blocks):
        raise ValueError("partition blocks must be nonempty")
    if sorted(flat) != list(range(n)):
        raise ValueError("partition must cover every index exactly once")
    return blocks


def quotient(g_or_matrix, partition) -> QuotientSystem:
    m = np.asarray(_matrix(g_or_matrix))
    n = m.shape[0]
    blocks = _check_partition(partition, n)
    if m.dtype.kind in "iub" or np.array_equal(m, np.round(m)):
        # sums[v, j] = weight from vertex v into block j
        ind = np.zeros((n, len(blocks)), dtype=np.int64)
        for j, b in enumerate(blocks):
            ind[list(b), j] = 1
        sums = m.astype(np.int64) @ ind
        equitable = all(bool((sums[list(b)] == sums[b[0]]).all()) for b in blocks)
        q = tuple(
            tuple(Fraction(int(t), len(bi)) for t in sums[list(bi)].sum(axis=0))
            for bi in blocks
        )
        return QuotientSystem(blocks, q, equitable)
    rows = m.tolist()
    q = []
    equitable = True
    for bi in blocks:
        qrow = []
        for bj in blocks:
            sums = [Fraction(sum(rows[v][w] for w in bj)) for v in bi]
            if any(s != sums[0] for s in sums):
                equitable = False
            qrow.append(sum(sums, Fraction(0)) / len(bi))
        q.append(tuple(qrow))
    return QuotientSystem(blocks, tuple(q), equitable)


def quotient_eigenvalues(qs: QuotientSystem, tol: float = DEFAULT_TOL) -> Spectrum:
    b = qs.symmetrized()
    b = 0.5 * (b + b.T)
    return eigenvalues(b, tol)


def check_quotient_containment(g_or_matrix, qs: QuotientSystem, tol: float = DEFAULT_TOL) -> bool:
    """Every eigenvalue of the equitable quotient also occurs in the full spectrum."""
    if not qs.equitable:
        raise ValueError("quotient containment needs an equitable partition")
    full = eigenvalues(g_or_matrix, tol).values
    return multiset_contains(full, quotient_eigenvalues(qs, tol).values)


def block_shift(m, partition, scalars) -> np.ndarray:
    """Add ``scalars[i][j] * J`` to block (i, j) of ``m``."""
    a = np.array(_matrix(m), dtype=float)
    blocks = _check_partition(partition, a.shape[0])
    s = np.array(scalars, dtype=float)
    if s.shape != (len(blocks), len(blocks)):
        raise ValueError("scalar table must be blocks x blocks")
    if not np.array_equal(s, s.T):
        raise ValueError("scalar table must be symmetric")
    for i, bi in enumerate(blocks):
        for j, bj in enumerate(blocks):
            a[np.ix_(bi, bj)] += s[i, j]
    return a


def flattening_scalars(m, partition, clique_blocks=()) -> list[list[float]]:
    """Scalars that zero every block's off-diagonal constant.

    Intended for partitions whose blocks are constant apart from the diagonal,
    such as those of the extremal families.  A singleton block listed in
    ``clique_blocks`` is treated as a one-vertex J - I block and shifted by -1.
    """
    a = np.asarray(_matrix(m))
    blocks = _check_partition(partition, a.shape[0])
    out = []
    for i, bi in enumerate(blocks):
        row = []
        for j, bj in enumerate(blocks):
            if i == j:
                if len(bi) > 1:
                    row.append(-float(a[bi[0], bi[1]]))
                else:
                    row.append(-1.0 if i in clique_blocks else 0.0)
            else:
                row.append(-float(a[bi[0], bj[0]]))
        out.append(row)
    return out


def check_interlacing(outer: Spectrum, inner: Spectrum, tol: float = 1e-9) -> bool:
    lam, mu = outer.values, inner.values
    n, m = len(lam), len(mu)
    if m > n:
        raise ValueError("inner spectrum is larger than outer")
    return all(lam[i] + tol >= mu[i] >= lam[n - m + i] - tol for i in range(m))


def wilf_bound(g: SignedGraph) -> float:
    w = clique_number(g)
    return (1 - 1 / w) * g.n


def balanced_clique_bound(g: SignedGraph) -> float:
    wb = balanced_clique_number(g)
    return (1 - 1 / wb) * g.n


def hong_value(n: int, delta: int, e: int) -> float:
    disc = 8 * e - 4 * delta * n + (delta + 1) ** 2
    if disc < 0:
        raise ValueError(f"negative discriminant {disc} for n={n}, delta={delta}, e={e}")
    return (delta - 1 + math.sqrt(disc)) / 2


def hong_below(n: int, delta: int, e: int, target: int) -> bool:
    """Exact test of ``hong_value(n, delta, e) < target``."""
    disc = 8 * e - 4 * delta * n + (delta + 1) ** 2
    if disc < 0:
        raise ValueError(f"negative discriminant {disc}")
    rhs = 2 * target - delta + 1
    return rhs > 0 and disc < rhs * rhs


def hong_bound(g: SignedGraph) -> float:
    return hong_value(g.n, min_degree(g), g.num_edges)


@dataclass(frozen=True)
class BoundReport:
    n: int
    omega: int
    omega_b: int
    delta: int
    e: int
    wilf: float
    balanced_clique_bound: float
    hong: float
    index: float = field(default=float("nan"))
    radius: float = field(default=float("nan"))
    underlying_index: float = field(default=float("nan"))

    def to_json(self) -> dict:
        return dict(self.__dict__)


def bound_report(g: SignedGraph, tol: float = DEFAULT_TOL) -> BoundReport:
    w, wb, delta, e = clique_number(g), balanced_clique_number(g), min_degree(g), g.num_edges
    spec = eigenvalues(g, tol)
    return BoundReport(
        n=g.n,
        omega=w,
        omega_b=wb,
        delta=delta,
        e=e,
        wilf=(1 - 1 / w) * g.n,
        balanced_clique_bound=(1 - 1 / wb) * g.n,
        hong=hong_value(g.n, delta, e),
        index=spec.index,
        radius=spec.radius,
        underlying_index=eigenvalues(g.underlying(), tol).index,
    )


def balanced_spanning_witness(g: SignedGraph, tol: float = DEFAULT_TOL) -> tuple[SignedGraph, frozenset[int]]:
    """Balanced spanning subgraph whose index is at least the index of ``g``.

    Switch at the negative entries of a top eigenvector so that it becomes
    nonnegative, then drop every negative edge.  Entries within ``tol`` of zero
    count as nonnegative.  Connectivity is not required for the inequality.
    """
    w, v = jacobi_eigh(g.adj, tol=tol, vectors=True)
    x = v[:, 0]
    # fix the overall sign so the ambiguity rule applies to the larger side
    if x.sum() < 0:
        x = -x
    u = frozenset(int(i) for i in np.flatnonzero(x < -tol))
    gu = switch(g, u)
    h = SignedGraph(np.where(gu.adj > 0, gu.adj, 0))
    return h, u


def same_spectrum(a: Spectrum, b: Spectrum, rel: float = 1e-7) -> bool:
    return len(a) == len(b) and all(values_match(x, y, rel) for x, y in zip(a.values, b.values))

"""Exact integer polynomials and a deterministic symmetric eigensolver.

Two routes are kept apart on purpose: ``char_poly_exact``/``det_exact`` never
touch floating point, and ``jacobi_eigh`` never touches integers.  Decisions
that must not depend on rounding go through the exact route.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from numba import njit


class ConvergenceError(ArithmeticError):
    """Raised when Jacobi sweeps fail to reach the requested tolerance."""


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial with exact integer coefficients.

    ``coeffs[k]`` is the coefficient of ``x**k``.  Trailing zeros are stripped,
    so the zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        cs = [int(c) for c in self.coeffs]
        for c, orig in zip(cs, self.coeffs):
            if c != orig:
                raise TypeError(f"non-integer coefficient {orig!r}")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPolynomial":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _coerce(self, other) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (m - len(self.coeffs))
        b = other.coeffs + (0,) * (m - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __call__(self, x):
        """Horner evaluation; exact for int and Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_linear(self, r: int) -> tuple["IntPolynomial", int]:
        """Synthetic division by ``x - r``: returns (quotient, remainder)."""
        if not self.coeffs:
            return IntPolynomial(()), 0
        q = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * r + c
            q.append(acc)
        rem = q.pop()
        return IntPolynomial(tuple(reversed(q))), rem

    def divisible_by_linear(self, r: int) -> bool:
        return self.divmod_linear(r)[1] == 0

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict) -> "IntPolynomial":
        return cls(tuple(obj["coeffs"]))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        s = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _as_int_rows(m) -> list[list[int]]:
    rows = [list(r) for r in (m.tolist() if isinstance(m, np.ndarray) else m)]
    n = len(rows)
    out = []
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix must be square")
        row = []
        for v in r:
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError(f"non-integer entry {v}")
                v = v.numerator
            iv = int(v)
            if iv != v:
                raise ValueError(f"non-integer entry {v}")
            row.append(iv)
        out.append(row)
    return out


def char_poly_exact(m) -> IntPolynomial:
    """det(xI - M) for an integer matrix, by Berkowitz's division-free recurrence."""
    a = _as_int_rows(m)
    n = len(a)
    full = np.array(a, dtype=object).reshape(n, n)
    # poly holds coefficients highest degree first
    poly = [1]
    for k in range(n):
        # leading (k+1)x(k+1) block = [[A_k, col], [row, a_kk]]
        akk = a[k][k]
        row = full[k, :k]
        block = full[:k, :k]
        vec = full[:k, k]
        t = [1, -akk]
        for _ in range(k):
            t.append(-row.dot(vec))
            vec = block.dot(vec)
        new = [0] * (len(poly) + 1)
        for i in range(len(new)):
            s = 0
            for j in range(max(0, i - k - 1), min(i, len(poly) - 1) + 1):
                s += t[i - j] * poly[j]
            new[i] = s
        poly = new
    return IntPolynomial(tuple(int(c) for c in reversed(poly)))


def det_exact(m) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    a = _as_int_rows(m)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pivot * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def char_poly_at(m, r: int) -> int:
    """Exact value of det(rI - M), i.e. the remainder of charpoly(M) mod (x - r)."""
    a = _as_int_rows(m)
    n = len(a)
    shifted = [[(r if i == j else 0) - a[i][j] for j in range(n)] for i in range(n)]
    return det_exact(shifted)


@lru_cache(maxsize=None)
def _round_robin(n: int) -> np.ndarray:
    """Disjoint rotation pairs for one cyclic sweep (circle-method ordering).

    Row ``r`` lists the pairs of round ``r`` as ``p0, q0, p1, q1, ...``; pairs
    involving the phantom player of an odd order are marked ``-1``.
    """
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        row = []
        for i in range(m // 2):
            p, q = sorted((players[i], players[m - 1 - i]))
            row += [p, q] if q < n else [-1, -1]
        rounds.append(row)
        players = [players[0]] + [players[-1]] + players[1:-1]
    out = np.array(rounds, dtype=np.int64).reshape(max(m - 1, 0), m)
    out.setflags(write=False)
    return out


@njit(cache=True)
def _jacobi_kernel(A, V, rounds, tol, max_sweeps, vectors):
    """In-place cyclic Jacobi on each matrix of the stack ``A``.

    Returns the index of the first matrix that failed to converge, or -1.
    """
    B, n, _ = A.shape
    for b in range(B):
        a = A[b]
        scale = 0.0
        for i in range(n):
            for j in range(n):
                scale += a[i, j] * a[i, j]
        scale = np.sqrt(scale)
        sweep = 0
        while True:
            off = 0.0
            for i in range(n):
                for j in range(n):
                    if i != j:
                        off += a[i, j] * a[i, j]
            if np.sqrt(off) <= tol * scale:
                break
            if sweep == max_sweeps:
                return b
            sweep += 1
            for r in range(rounds.shape[0]):
                for k in range(0, rounds.shape[1], 2):
                    p = rounds[r, k]
                    q = rounds[r, k + 1]
                    if p < 0:
                        continue
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                    if not np.isfinite(t):
                        continue
                    c = 1.0 / np.sqrt(1.0 + t * t)
                    s = t * c
                    # A <- J^T A J, J = I except J_pp = J_qq = c, J_pq = -J_qp = s
                    for i in range(n):
                        aip = a[i, p]
                        aiq = a[i, q]
                        a[i, p] = c * aip - s * aiq
                        a[i, q] = s * aip + c * aiq
                    for j in range(n):
                        apj = a[p, j]
                        aqj = a[q, j]
                        a[p, j] = c * apj - s * aqj
                        a[q, j] = s * apj + c * aqj
                    if vectors:
                        v = V[b]
                        for i in range(n):
                            vip = v[i, p]
                            viq = v[i, q]
                            v[i, p] = c * vip - s * viq
                            v[i, q] = s * vip + c * viq
            # restore exact symmetry lost to rounding
            for i in range(n):
                for j in range(i + 1, n):
                    m = 0.5 * (a[i, j] + a[j, i])
                    a[i, j] = m
                    a[j, i] = m
    return -1


def jacobi_eigh(
    a,
    tol: float = 1e-12,
    max_sweeps: int = 100,
    vectors: bool = False,
):
    """Eigen-decomposition of real symmetric matrices by cyclic Jacobi rotations.

    ``a`` may be a single ``(n, n)`` matrix or a stack ``(..., n, n)``.  Every
    matrix is swept independently in the same deterministic round-robin order,
    so a matrix gets bit-identical results alone or inside a stack.  Sweeps
    stop once the off-diagonal Frobenius norm is at most ``tol * ||A||_F``.
    Eigenvalues come back sorted descending; with ``vectors=True`` the matching
    eigenvectors are the columns of the second return value.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    arr = np.array(a, dtype=np.float64)
    if arr.ndim < 2 or arr.shape[-1] != arr.shape[-2]:
        raise ValueError("expected square matrices")
    if not np.array_equal(arr, np.swapaxes(arr, -1, -2)):
        raise ValueError("matrix is not symmetric")
    lead = arr.shape[:-2]
    n = arr.shape[-1]
    A = np.ascontiguousarray(arr.reshape((-1, n, n)))
    B = A.shape[0]
    V = np.broadcast_to(np.eye(n), (B, n, n)).copy() if vectors else np.zeros((1, 1, 1))
    if n > 1 and B > 0:
        bad = _jacobi_kernel(A, V, _round_robin(n), float(tol), int(max_sweeps), bool(vectors))
        if bad >= 0:
            raise ConvergenceError(
                f"Jacobi did not reach tol={tol:g} in {max_sweeps} sweeps (matrix {bad})"
            )
    w = np.diagonal(A, axis1=1, axis2=2)
    order = np.argsort(-w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1).reshape(lead + (n,))
    if not vectors:
        return w
    V = np.take_along_axis(V, order[:, None, :], axis=2).reshape(lead + (n, n))
    return w, V


def values_match(a: float, b: float, rel: float = 1e-7) -> bool:
    """Eigenvalue equality used for multiset matching."""
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def multiset_contains(outer: Sequence[float], inner: Sequence[float], rel: float = 1e-7) -> bool:
    """True iff every value of ``inner`` is matched by a distinct value of ``outer``."""
    pool = sorted(outer)
    used = [False] * len(pool)
    for x in sorted(inner):
        for i, y in enumerate(pool):
            if not used[i] and values_match(x, y, rel):
                used[i] = True
                break
        else:
            return False
    return True


def multiset_difference(outer: Sequence[float], inner: Sequence[float], rel: float = 1e-7) -> list[float]:
    """``outer`` with one matched copy of each ``inner`` value removed."""
    pool = sorted(outer)
    used = [False] * len(pool)
    for x in sorted(inner):
        for i, y in enumerate(pool):
            if not used[i] and values_match(x, y, rel):
                used[i] = True
                break
        else:
            raise ValueError(f"{x} not present in outer multiset")
    return [y for y, u in zip(pool, used) if not u]

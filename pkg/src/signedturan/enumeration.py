"""Exhaustive censuses of signed graphs up to switching and relabelling.

Underlying graphs are generated up to isomorphism by single-edge augmentation
with canonical deduplication.  For each underlying graph the switching classes
are the sign patterns on the non-tree edges of a fixed spanning forest whose
tree edges are positive; a class is unbalanced iff some non-tree edge is
negative.

Searches split the underlying-graph stream into contiguous chunks of ranks.
Chunks are independent, so they can run in a process pool and be journalled
for restart; the final report is assembled from the chunk results in rank
order and does not depend on the number of workers.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from .canon import CanonicalForm, canonical_form, underlying_form
from .families import build, members
from .formats import write_sgf
from .graph import (
    SignedGraph,
    _bits,
    balanced_clique_number,
    is_connected,
    k4_is_unbalanced,
    min_degree,
    negate,
    spanning_forest,
)
from .linalg import IntPolynomial, char_poly_exact, jacobi_eigh
from .spectral import DEFAULT_TOL, balanced_clique_bound, hong_below

EDGE_RANGE = (7, 8)
EXPLORATORY_EDGE = (5, 6)
SPECTRAL_FULL = (4, 6)
SPECTRAL_HYBRID = 7
# numeric window around n - 2 inside which spectral verdicts go exact
WINDOW = 1e-6


class SearchError(ValueError):
    """Unsupported search parameters."""


class ResourceExhausted(RuntimeError):
    """The search stopped early; completed chunks remain in the checkpoint."""


# --- underlying graphs ------------------------------------------------------


def _toggle(g: SignedGraph, u: int, v: int) -> SignedGraph:
    a = g.adj.copy()
    a[u, v] = a[v, u] = 0 if a[u, v] else 1
    return SignedGraph(a)


def _levels(start: SignedGraph, add: bool, steps: int) -> Iterator[list[CanonicalForm]]:
    """Isomorphism classes reachable by ``k`` edge additions (or deletions), k = 0..steps."""
    level = [underlying_form(start)]
    n = start.n
    for k in range(steps + 1):
        yield level
        if k == steps:
            return
        nxt = set()
        for form in level:
            g = form.graph()
            for u, v in combinations(range(n), 2):
                if bool(g.adj[u, v]) != add:
                    nxt.add(underlying_form(_toggle(g, u, v)))
        level = sorted(nxt)
        if not level:
            return


def enumerate_all_underlying(n: int) -> Iterator[SignedGraph]:
    """One all-positive representative per isomorphism class, by edge count."""
    for level in _levels(SignedGraph.empty(n), True, n * (n - 1) // 2):
        for form in level:
            yield form.graph()


def enumerate_dense_underlying(n: int, max_missing: int) -> Iterator[SignedGraph]:
    """Classes of K_n minus at most ``max_missing`` edges, fewest missing first."""
    if max_missing < 0:
        return
    steps = min(max_missing, n * (n - 1) // 2)
    for level in _levels(SignedGraph.complete(n), False, steps):
        for form in level:
            yield form.graph()


# --- switching classes -------------------------------------------------------


@dataclass
class SignaturePlan:
    """Spanning-forest layout of one underlying graph.

    ``free`` lists the non-tree edges in lexicographic order; bit ``k`` of an
    assignment makes ``free[k]`` negative.  ``checks[k]`` holds the complete
    4-sets whose last free edge is ``free[k]``.
    """

    g: SignedGraph
    tree: list[tuple[int, int]]
    free: list[tuple[int, int]]
    checks: list[list[tuple[int, int, int, int]]]

    @classmethod
    def of(cls, g: SignedGraph) -> "SignaturePlan":
        tree = spanning_forest(g)
        tset = set(tree)
        free = [(u, v) for u, v, _ in g.edges() if (u, v) not in tset]
        pos = {e: k for k, e in enumerate(free)}
        checks: list[list[tuple[int, int, int, int]]] = [[] for _ in free]
        for quad in _four_cliques(g):
            last = max((pos[e] for e in combinations(quad, 2) if e in pos), default=-1)
            if last >= 0:
                checks[last].append(quad)
        return cls(g, tree, free, checks)

    @property
    def size(self) -> int:
        return 1 << len(self.free)

    def base(self) -> np.ndarray:
        return np.abs(self.g.adj).astype(np.int8)

    def signed(self, bits: int) -> SignedGraph:
        a = self.base()
        for k, (u, v) in enumerate(self.free):
            if bits >> k & 1:
                a[u, v] = a[v, u] = -1
        return SignedGraph(a)


def _four_cliques(g: SignedGraph) -> list[tuple[int, int, int, int]]:
    nbr = g.nbr
    out = []
    for a in range(g.n):
        na = nbr[a] >> (a + 1) << (a + 1)
        for b in _bits(na):
            nab = na & nbr[b] & ~((1 << (b + 1)) - 1)
            for c in _bits(nab):
                for d in _bits(nab & nbr[c] & ~((1 << (c + 1)) - 1)):
                    out.append((a, b, c, d))
    return out


def _assignments(plan: SignaturePlan, k4_free: bool) -> tuple[list[int], int]:
    """All (or all unbalanced-K4-free) assignments in DFS order, plus the pruned count.

    Plus is tried before minus at every free edge.  An assignment is cut as soon
    as some completed 4-clique is unbalanced; every extension of that partial
    assignment contains the same signed K4, so the whole subtree goes.
    """
    m = len(plan.free)
    if not k4_free:
        return list(range(1 << m)), 0
    adj = plan.base().tolist()
    out: list[int] = []
    pruned = 0

    def rec(k: int, bits: int) -> None:
        nonlocal pruned
        if k == m:
            out.append(bits)
            return
        u, v = plan.free[k]
        for s in (1, -1):
            adj[u][v] = adj[v][u] = s
            if any(k4_is_unbalanced(adj, *q) for q in plan.checks[k]):
                pruned += 1 << (m - k - 1)
                continue
            rec(k + 1, bits | (1 << k) if s < 0 else bits)
        adj[u][v] = adj[v][u] = 1

    rec(0, 0)
    return out, pruned


def enumerate_signatures(g: SignedGraph) -> Iterator[SignedGraph]:
    """One signed graph per switching class of ``g``: 2^(m - n + c) of them."""
    plan = SignaturePlan.of(g)
    for bits in range(plan.size):
        yield plan.signed(bits)


def enumerate_k4_free_signatures(g: SignedGraph) -> Iterator[SignedGraph]:
    """Switching classes of ``g`` with no unbalanced K4, via the pruned search."""
    plan = SignaturePlan.of(g)
    bits_list, _ = _assignments(plan, True)
    for bits in bits_list:
        yield plan.signed(bits)


# --- reports ------------------------------------------------------------------


@dataclass
class Witness:
    form: CanonicalForm
    value: float
    family: Optional[str] = None
    exact: Optional[str] = None

    def to_json(self) -> dict:
        g = self.form.graph()
        out = {
            "canonical": self.form.hex(),
            "family": self.family,
            "value": self.value,
            "sgf": write_sgf(g),
        }
        if self.exact is not None:
            out["exact"] = self.exact
        return out


@dataclass
class SearchReport:
    n: int
    mode: str
    max_value: float
    certified: bool
    witnesses: list[Witness]
    classes_examined: int
    pruned: int
    wall_time: float = 0.0
    theorem_applies: bool = False
    theorem_match: Optional[bool] = None
    bound: Optional[float] = None
    k4_filter: bool = True
    underlying_graphs: int = 0
    discharged: int = 0
    violations: list[Witness] = field(default_factory=list)
    near_misses: list[Witness] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "max_value": self.max_value,
            "certified": self.certified,
            "bound": self.bound,
            "theorem_applies": self.theorem_applies,
            "theorem_match": self.theorem_match,
            "k4_filter": self.k4_filter,
            "witnesses": [w.to_json() for w in self.witnesses],
            "violations": [w.to_json() for w in self.violations],
            "near_misses": [w.to_json() for w in self.near_misses],
            "classes_examined": self.classes_examined,
            "pruned": self.pruned,
            "discharged": self.discharged,
            "underlying_graphs": self.underlying_graphs,
            "notes": self.notes,
            "wall_time": self.wall_time,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)


def family_index(n: int) -> dict[CanonicalForm, str]:
    """Canonical form -> family name(s) for every extremal member of order n."""
    out: dict[CanonicalForm, list[str]] = {}
    for fid in members(n):
        out.setdefault(canonical_form(build(fid)), []).append(str(fid))
    return {k: "=".join(v) for k, v in out.items()}


# --- exact spectral verdicts ---------------------------------------------------


def _side_count(p: IntPolynomial, w: np.ndarray, r: int) -> tuple[int, int]:
    """(number of roots > r, multiplicity of r) for a real-rooted monic ``p``.

    ``w`` are the numeric roots.  Roots clearly away from ``r`` are counted
    numerically; inside the window the exact multiplicity is divided out and the
    sign of the cofactor at ``r`` settles the parity of what is left.
    """
    above = int(np.sum(w > r + WINDOW))
    near = int(np.sum(np.abs(w - r) <= WINDOW))
    if near == 0:
        return above, 0
    mult, q = 0, p
    while q.degree > 0:
        q2, rem = q.divmod_linear(r)
        if rem:
            break
        q, mult = q2, mult + 1
    rest = near - mult
    if rest < 0:
        raise ArithmeticError("exact root multiplicity exceeds the numeric window count")
    if rest == 0:
        return above, mult
    if rest > 1:
        raise ArithmeticError(f"cannot separate {rest} eigenvalues near {r}")
    # sign q(r) = (-1)^(roots of q above r)
    odd = q(r) < 0
    extra = 1 if odd != (above % 2 == 1) else 0
    return above + extra, mult


def radius_verdict(g: SignedGraph, r: int, tol: float = DEFAULT_TOL) -> tuple[str, float]:
    """Exact comparison of the spectral radius with the integer ``r``.

    Returns ``("above" | "equal" | "below", numeric radius)``.
    """
    w = jacobi_eigh(g.adj, tol=tol)
    up = _side_count(char_poly_exact(g.adj), w, r)
    down = _side_count(char_poly_exact(-g.adj.astype(np.int64)), -w, r)
    rho = float(max(w[0], -w[-1]))
    if up[0] or down[0]:
        return "above", rho
    if up[1] or down[1]:
        return "equal", rho
    return "below", rho


def _bracket_root(g: SignedGraph, value: float, width: float = 1e-9) -> bool:
    """Exact sign change of det(xI -+ A) across [value - width, value + width]."""
    lo, hi = Fraction(value) - Fraction(width), Fraction(value) + Fraction(width)
    for m in (g.adj.astype(np.int64), -g.adj.astype(np.int64)):
        p = char_poly_exact(m)
        a, b = p(lo), p(hi)
        if a == 0 or b == 0 or (a < 0) != (b < 0):
            return True
    return False


# --- chunked execution ------------------------------------------------------------


@dataclass(frozen=True)
class Chunk:
    lo: int
    hi: int
    codes: tuple[str, ...]


def _edge_chunk(n: int, chunk: Chunk, k4_filter: bool) -> dict:
    best = -1
    hits: list[list[int]] = []
    examined = pruned = 0
    for rank, code in zip(range(chunk.lo, chunk.hi), chunk.codes):
        g = CanonicalForm.from_hex(code).graph()
        plan = SignaturePlan.of(g)
        bits_list, cut = _assignments(plan, k4_filter)
        pruned += cut
        # assignment 0 (all non-tree edges positive) is the balanced class
        examined += sum(1 for b in bits_list if b)
        e = g.num_edges
        for bits in bits_list:
            if bits == 0:
                continue
            if e > best:
                best, hits = e, []
            if e == best:
                hits.append([rank, bits])
    return {"max": best, "hits": hits, "examined": examined, "pruned": pruned}


def _spectral_chunk(n: int, chunk: Chunk, hybrid: bool, tol: float) -> dict:
    target = n - 2
    best = -1.0
    hits: list[list] = []
    cands: list[list] = []
    examined = pruned = discharged = 0
    sparse_limit = n * (n - 1) // 2 - (n - 2)
    for rank, code in zip(range(chunk.lo, chunk.hi), chunk.codes):
        g = CanonicalForm.from_hex(code).graph()
        e = g.num_edges
        if hybrid and e <= sparse_limit and is_connected(g):
            if hong_below(n, min_degree(g), e, target):
                discharged += 1
                continue
        plan = SignaturePlan.of(g)
        bits_list, cut = _assignments(plan, True)
        pruned += cut
        bits_list = [b for b in bits_list if b]
        examined += len(bits_list)
        if not bits_list:
            continue
        stack = np.stack([plan.signed(b).adj for b in bits_list])
        w = jacobi_eigh(stack, tol=tol)
        rho = np.maximum(w[:, 0], -w[:, -1])
        for bits, val in zip(bits_list, rho.tolist()):
            if val > best + WINDOW:
                best, hits = val, []
            if abs(val - best) <= WINDOW:
                hits.append([rank, bits, val])
            if val >= target - WINDOW:
                cands.append([rank, bits, val])
    # keep only hits within the window of the final chunk maximum
    hits = [h for h in hits if abs(h[2] - best) <= WINDOW]
    return {
        "max": best,
        "hits": hits,
        "cands": cands,
        "examined": examined,
        "pruned": pruned,
        "discharged": discharged,
    }


def _run_chunk(kind: str, n: int, chunk: Chunk, opts: dict) -> dict:
    if kind == "edge":
        return _edge_chunk(n, chunk, opts["k4_filter"])
    return _spectral_chunk(n, chunk, opts["hybrid"], opts["tol"])


class Journal:
    """Append-only chunk journal plus one JSON result file per finished chunk.

    Journal lines read ``chunk <lo>-<hi> done <max-so-far>``; a line counts only
    if its result file parses, so a kill between the two writes just redoes the
    chunk.
    """

    def __init__(self, root: Path, params: dict, resume: bool):
        self.root = Path(root)
        self.path = self.root / "journal.txt"
        meta = self.root / "params.json"
        if resume:
            if not meta.exists():
                raise SearchError(f"no checkpoint to resume in {self.root}")
            stored = json.loads(meta.read_text())
            if stored != params:
                raise SearchError("checkpoint was written for different search parameters")
        else:
            if self.path.exists():
                raise SearchError(f"{self.path} exists; resume it or choose another directory")
            self.root.mkdir(parents=True, exist_ok=True)
            meta.write_text(json.dumps(params, sort_keys=True))
            self.path.touch()

    def _result_path(self, lo: int, hi: int) -> Path:
        return self.root / f"chunk-{lo}-{hi}.json"

    def completed(self) -> dict[tuple[int, int], dict]:
        done = {}
        if not self.path.exists():
            return done
        for line in self.path.read_text().splitlines():
            parts = line.split()
            if len(parts) != 4 or parts[0] != "chunk" or parts[2] != "done":
                continue
            lo, _, hi = parts[1].partition("-")
            try:
                key = (int(lo), int(hi))
                done[key] = json.loads(self._result_path(*key).read_text())
            except (ValueError, OSError):
                continue
        return done

    def record(self, lo: int, hi: int, result: dict, best_so_far) -> None:
        tmp = self._result_path(lo, hi).with_suffix(".tmp")
        tmp.write_text(json.dumps(result, sort_keys=True))
        os.replace(tmp, self._result_path(lo, hi))
        with open(self.path, "a") as fh:
            fh.write(f"chunk {lo}-{hi} done {best_so_far}\n")
            fh.flush()
            os.fsync(fh.fileno())


def _execute(
    kind: str,
    n: int,
    codes: list[str],
    opts: dict,
    threads: int = 1,
    chunk_size: int = 8,
    checkpoint: Optional[Path] = None,
    resume: bool = False,
    time_limit: Optional[float] = None,
) -> list[dict]:
    """Run every chunk (reusing journalled ones); results come back in rank order."""
    chunks = [
        Chunk(lo, min(lo + chunk_size, len(codes)), tuple(codes[lo:lo + chunk_size]))
        for lo in range(0, len(codes), chunk_size)
    ]
    journal = None
    done: dict[tuple[int, int], dict] = {}
    if checkpoint is not None:
        params = {"kind": kind, "n": n, "opts": opts, "chunk_size": chunk_size, "graphs": len(codes)}
        journal = Journal(checkpoint, params, resume)
        done = journal.completed()
    elif resume:
        raise SearchError("resume needs a checkpoint directory")
    todo = [c for c in chunks if (c.lo, c.hi) not in done]
    start = time.monotonic()
    best = max((r["max"] for r in done.values()), default=None)

    def finish(c: Chunk, res: dict) -> None:
        nonlocal best
        done[(c.lo, c.hi)] = res
        best = res["max"] if best is None else max(best, res["max"])
        if journal is not None:
            journal.record(c.lo, c.hi, res, best)

    def out_of_time() -> bool:
        return time_limit is not None and time.monotonic() - start > time_limit

    if threads <= 1:
        for c in todo:
            if out_of_time():
                raise ResourceExhausted(f"time limit reached with {len(done)}/{len(chunks)} chunks done")
            finish(c, _run_chunk(kind, n, c, opts))
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            queue = list(todo)
            running = {}
            while queue or running:
                while queue and len(running) < 2 * threads and not out_of_time():
                    c = queue.pop(0)
                    running[pool.submit(_run_chunk, kind, n, c, opts)] = c
                if not running:
                    break
                finished, _ = wait(running, return_when=FIRST_COMPLETED)
                for fut in sorted(finished, key=lambda f: running[f].lo):
                    finish(running.pop(fut), fut.result())
                if out_of_time():
                    for fut in running:
                        fut.cancel()
                    for fut in list(running):
                        if fut.done() and not fut.cancelled():
                            finish(running.pop(fut), fut.result())
                    break
        if len(done) < len(chunks):
            raise ResourceExhausted(f"time limit reached with {len(done)}/{len(chunks)} chunks done")
    return [done[(c.lo, c.hi)] for c in chunks]


# --- searches ----------------------------------------------------------------------


def _stream_codes(graphs: Iterator[SignedGraph]) -> list[str]:
    return [underlying_form(g).hex() for g in graphs]


def search_edge_max(
    n: int,
    k4_filter: bool = True,
    threads: int = 1,
    checkpoint: Optional[Path] = None,
    resume: bool = False,
    time_limit: Optional[float] = None,
    chunk_size: int = 4,
) -> SearchReport:
    """Largest edge count of an unbalanced (K4-free) signed graph on n vertices.

    For 7 <= n <= 8 only K_n minus at most n - 3 edges is searched; below 7 the
    whole space is searched and the formula is reported but not asserted.
    """
    t0 = time.monotonic()
    exploratory = n in EXPLORATORY_EDGE
    if not (EDGE_RANGE[0] <= n <= EDGE_RANGE[1] or exploratory):
        raise SearchError(f"edge search supports n in 5..8, got {n}")
    full = n * (n - 1) // 2
    bound = full - (n - 3)
    max_missing = full if exploratory else n - 3
    if not k4_filter:
        # K_n with one negative edge is already unbalanced
        max_missing = 0
    codes = _stream_codes(enumerate_dense_underlying(n, max_missing))
    results = _execute("edge", n, codes, {"k4_filter": k4_filter}, threads, chunk_size,
                       checkpoint, resume, time_limit)
    best = max(r["max"] for r in results)
    forms: set[CanonicalForm] = set()
    plans: dict[int, SignaturePlan] = {}
    for r in results:
        if r["max"] != best:
            continue
        for rank, bits in r["hits"]:
            if rank not in plans:
                plans[rank] = SignaturePlan.of(CanonicalForm.from_hex(codes[rank]).graph())
            forms.add(canonical_form(plans[rank].signed(bits)))
    fam = family_index(n)
    witnesses = [Witness(f, float(best), fam.get(f)) for f in sorted(forms)]
    applies = not exploratory and k4_filter
    match = None
    if applies:
        match = best == bound and forms == set(fam)
    notes = []
    if exploratory:
        notes.append("n below 7: the edge formula is reported, not asserted")
    if not k4_filter:
        notes.append("unbalanced-K4 filter disabled")
    return SearchReport(
        n=n,
        mode="edge",
        max_value=float(best),
        certified=True,
        witnesses=witnesses,
        classes_examined=sum(r["examined"] for r in results),
        pruned=sum(r["pruned"] for r in results),
        wall_time=time.monotonic() - t0,
        theorem_applies=applies,
        theorem_match=match,
        bound=float(bound),
        k4_filter=k4_filter,
        underlying_graphs=len(codes),
        notes=notes,
    )


def search_spectral_max(
    n: int,
    tol: float = DEFAULT_TOL,
    threads: int = 1,
    checkpoint: Optional[Path] = None,
    resume: bool = False,
    time_limit: Optional[float] = None,
    chunk_size: int = 16,
) -> SearchReport:
    """Largest spectral radius of an unbalanced K4-free signed graph on n vertices.

    Full mode (4 <= n <= 6) covers every underlying graph.  Hybrid mode (n = 7)
    discharges connected underlying graphs with at most n(n-1)/2 - (n-2) edges
    whose Hong bound is exactly below n - 2, and enumerates everything else.
    """
    t0 = time.monotonic()
    hybrid = n == SPECTRAL_HYBRID
    if not (SPECTRAL_FULL[0] <= n <= SPECTRAL_FULL[1] or hybrid):
        raise SearchError(f"spectral search supports n in 4..7, got {n}")
    codes = _stream_codes(enumerate_all_underlying(n))
    results = _execute("spectral", n, codes, {"hybrid": hybrid, "tol": tol}, threads, chunk_size,
                       checkpoint, resume, time_limit)
    target = n - 2
    best = max(r["max"] for r in results)
    plans: dict[int, SignaturePlan] = {}

    def graph_of(rank: int, bits: int) -> SignedGraph:
        if rank not in plans:
            plans[rank] = SignaturePlan.of(CanonicalForm.from_hex(codes[rank]).graph())
        return plans[rank].signed(bits)

    fam = family_index(n)
    top: dict[CanonicalForm, Witness] = {}
    for r in results:
        for rank, bits, val in r["hits"]:
            if abs(val - best) <= WINDOW:
                g = graph_of(rank, bits)
                f = canonical_form(g)
                if f not in top:
                    verdict = radius_verdict(g, target, tol)[0]
                    top[f] = Witness(f, val, fam.get(f), verdict)
    violations: dict[CanonicalForm, Witness] = {}
    near: dict[CanonicalForm, Witness] = {}
    for r in results:
        for rank, bits, val in r["cands"]:
            g = graph_of(rank, bits)
            f = canonical_form(g)
            if f in violations or f in near:
                continue
            verdict, _ = radius_verdict(g, target, tol)
            w = Witness(f, val, fam.get(f), verdict)
            if verdict == "above":
                violations[f] = w
            elif verdict == "below":
                near[f] = w
    witnesses = [top[f] for f in sorted(top)]
    if all(w.exact == "equal" for w in witnesses):
        certified = True
        max_value = float(target)
    else:
        max_value = best
        certified = all(_bracket_root(w.form.graph(), w.value) for w in witnesses)
    expected = canonical_form(build(members(n)[0]))
    match = (
        not violations
        and not near
        and len(witnesses) == 1
        and witnesses[0].exact == "equal"
        and witnesses[0].form == expected
    )
    notes = []
    if hybrid:
        notes.append("hybrid: sparse connected classes with Hong bound below n-2 discharged")
    return SearchReport(
        n=n,
        mode="spectral",
        max_value=max_value,
        certified=certified,
        witnesses=witnesses,
        classes_examined=sum(r["examined"] for r in results),
        pruned=sum(r["pruned"] for r in results),
        wall_time=time.monotonic() - t0,
        theorem_applies=True,
        theorem_match=match,
        bound=float(target),
        k4_filter=True,
        underlying_graphs=len(codes),
        discharged=sum(r["discharged"] for r in results),
        violations=[violations[f] for f in sorted(violations)],
        near_misses=[near[f] for f in sorted(near)],
        notes=notes,
    )


def verify_negation_argument(n: int, tol: float = 1e-9) -> bool:
    """Negation reflects the spectrum, and the balanced-clique bound covers it.

    For n <= 6 every unbalanced K4-free class is checked; from 7 on, the dense
    classes (at most n - 3 missing edges).
    """
    if n < 2:
        raise SearchError("n must be at least 2")
    graphs = enumerate_all_underlying(n) if n <= 6 else enumerate_dense_underlying(n, n - 3)
    for g in graphs:
        plan = SignaturePlan.of(g)
        for bits in _assignments(plan, True)[0]:
            if not bits:
                continue
            h = plan.signed(bits)
            w = jacobi_eigh(h.adj)
            neg = negate(h)
            wn = jacobi_eigh(neg.adj)
            if abs(wn[0] + w[-1]) > tol * max(1.0, abs(w[-1])):
                return False
            if balanced_clique_number(neg) <= 3 and wn[0] > balanced_clique_bound(neg) + 1e-7:
                return False
    return True

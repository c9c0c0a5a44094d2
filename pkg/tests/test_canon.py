import itertools

import numpy as np
import pytest

from conftest import all_signed_graphs, brute_switching_class_key, random_signed_graph
from signedturan.canon import (
    MAX_CANON_N,
    CanonicalForm,
    canonical_form,
    switching_automorphisms,
    underlying_form,
)
from signedturan.graph import SignedGraph, permute, switch, switching_between


def random_perturbation(rng, g):
    perm = list(range(g.n))
    rng.shuffle(perm)
    u = {v for v in range(g.n) if rng.random() < 0.5}
    return permute(switch(g, u), perm)


def test_invariant_under_switching_and_relabelling(rng):
    for _ in range(100):
        g = random_signed_graph(rng, rng.randint(1, 10))
        c = canonical_form(g)
        for _ in range(100 if g.n <= 6 else 10):
            assert canonical_form(random_perturbation(rng, g)) == c


def test_representative_round_trip(rng):
    for _ in range(200):
        g = random_signed_graph(rng, rng.randint(1, 12))
        c = canonical_form(g)
        h = c.graph()
        assert canonical_form(h) == c
        assert c.n == g.n and h.num_edges == g.num_edges
        assert CanonicalForm.from_hex(c.hex()) == c and str(c) == c.hex()


def test_separates_exactly_like_brute_force(rng):
    graphs = [random_signed_graph(rng, rng.randint(2, 6), p=rng.uniform(0.4, 1.0)) for _ in range(150)]
    graphs += [random_perturbation(rng, g) for g in graphs[:50]]
    ours = [canonical_form(g) for g in graphs]
    ref = [brute_switching_class_key(g) for g in graphs]
    for i, j in itertools.combinations(range(len(graphs)), 2):
        assert (ours[i] == ours[j]) == (ref[i] == ref[j])


def test_signed_complete_graph_classes_on_five_vertices():
    # orbit count of labelled signed K5 under switching and relabelling, by union-find
    n = 5
    pairs = list(itertools.combinations(range(n), 2))
    index = {}
    reps = []
    for signs in itertools.product((1, -1), repeat=len(pairs)):
        index[signs] = len(reps)
        reps.append(signs)
    parent = list(range(len(reps)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    moves = [lambda s, v=v: tuple(-x if v in p else x for x, p in zip(s, pairs)) for v in range(n)]
    for perm in ((1, 0, 2, 3, 4), (1, 2, 3, 4, 0)):
        where = {p: k for k, p in enumerate(pairs)}

        def act(s, perm=perm, where=where):
            out = [0] * len(pairs)
            for (u, v), x in zip(pairs, s):
                a, b = sorted((perm[u], perm[v]))
                out[where[a, b]] = x
            return tuple(out)

        moves.append(act)
    for s in reps:
        for mv in moves:
            a, b = find(index[s]), find(index[mv(s)])
            if a != b:
                parent[a] = b
    orbits = len({find(i) for i in range(len(reps))})
    forms = {
        canonical_form(SignedGraph.from_edges(n, [(u, v, x) for (u, v), x in zip(pairs, s)])) for s in reps
    }
    assert orbits == len(forms) == 7


def test_all_graphs_on_four_vertices():
    seen = {}
    for g in all_signed_graphs(4):
        seen.setdefault(brute_switching_class_key(g), set()).add(canonical_form(g))
    assert all(len(v) == 1 for v in seen.values())
    assert len({next(iter(v)) for v in seen.values()}) == len(seen)


def test_underlying_form_ignores_signs(rng):
    for _ in range(50):
        g = random_signed_graph(rng, rng.randint(2, 9))
        assert underlying_form(g) == canonical_form(g.underlying())
        assert underlying_form(SignedGraph(-g.adj)) == underlying_form(g)


def test_automorphisms_preserve_the_switching_class(rng):
    for _ in range(40):
        g = random_signed_graph(rng, rng.randint(3, 9))
        for gamma in switching_automorphisms(g):
            a = np.zeros_like(g.adj)
            for u, v, s in g.edges():
                a[gamma[u], gamma[v]] = a[gamma[v], gamma[u]] = s
            h = SignedGraph(a)
            assert switching_between(g, h) is not None
    # every transposition of K_n is an automorphism, so generators exist
    assert switching_automorphisms(SignedGraph.complete(6))


def test_size_limit_and_malformed_codes():
    with pytest.raises(ValueError):
        canonical_form(SignedGraph.empty(MAX_CANON_N + 1))
    with pytest.raises(ValueError):
        CanonicalForm(bytes([4, 0, 0])).graph()


def test_symmetric_graphs_are_fast_enough():
    # edge-transitive inputs exercise the automorphism pruning
    g = SignedGraph.complete(12)
    assert canonical_form(switch(g, {0, 5, 7})) == canonical_form(g)
    assert canonical_form(SignedGraph.complete(12, -1)).n == 12

import itertools
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_signed_graph
from signedturan.formats import FormatError, read_graph, read_json, read_sgf, write_json, write_sgf
from signedturan.graph import (
    SignedGraph,
    balanced_clique_number,
    balancing_set,
    clique_number,
    components,
    delete_vertex,
    find_unbalanced_k3,
    find_unbalanced_k4,
    induced,
    is_balanced,
    is_connected,
    negate,
    permute,
    spanning_forest,
    switch,
    switching_between,
)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((u, v) for u, v, _ in g.edges())
    return h


def balanced_by_brute_force(g):
    n = g.n
    for mask in range(1 << n):
        s = np.array([-1 if mask >> i & 1 else 1 for i in range(n)])
        if (g.adj * np.outer(s, s) >= 0).all():
            return True
    return False


def is_clique(g, vs):
    return all(g.sign(u, v) for u, v in itertools.combinations(vs, 2))


def balanced_clique_by_subsets(g):
    best = 1
    for k in range(2, g.n + 1):
        for vs in itertools.combinations(range(g.n), k):
            if is_clique(g, vs) and is_balanced(induced(g, vs)):
                best = k
    return best


def unbalanced_k4_by_cycles(g):
    # a K4 is unbalanced iff one of its triangles is negative
    for quad in itertools.combinations(range(g.n), 4):
        if not is_clique(g, quad):
            continue
        for a, b, c in itertools.combinations(quad, 3):
            if g.sign(a, b) * g.sign(b, c) * g.sign(a, c) < 0:
                return True
    return False


signed_graphs = st.integers(1, 9).flatmap(
    lambda n: st.lists(st.sampled_from([0, 0, 1, -1]), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(
        lambda vals: SignedGraph.from_edges(
            n, [(u, v, s) for (u, v), s in zip(itertools.combinations(range(n), 2), vals) if s]
        )
    )
)


def test_construction_rejects_bad_matrices():
    with pytest.raises(ValueError):
        SignedGraph([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        SignedGraph([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        SignedGraph([[0, 2], [2, 0]])
    with pytest.raises(ValueError):
        SignedGraph.from_edges(3, [(0, 1, 1), (1, 0, -1)])


def test_basic_accessors():
    g = SignedGraph.from_edges(4, [(0, 1, 1), (1, 2, -1), (2, 3, 1)])
    assert g.num_edges == 3
    assert g.negative_edges() == [(1, 2)]
    assert g.degree(1) == 2
    assert g.sign(2, 1) == -1
    assert g.underlying().negative_edges() == []
    assert g == SignedGraph(g.adj.copy()) and hash(g) == hash(SignedGraph(g.adj.copy()))
    with pytest.raises(ValueError):
        g.adj[0, 1] = 0


def test_negative_triangle_is_unbalanced():
    g = SignedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, -1)])
    assert not is_balanced(g)
    assert find_unbalanced_k3(g) == (0, 1, 2)
    assert balancing_set(g) is None
    assert negate(negate(g)) == g
    # negating flips the sign of every odd cycle
    assert is_balanced(negate(g))
    assert is_balanced(SignedGraph.complete(5, -1)) is False
    assert is_balanced(switch(SignedGraph.complete(5), {0, 3}))


@given(signed_graphs, st.data())
@settings(max_examples=200, deadline=None)
def test_switching_invariants(g, data):
    u = data.draw(st.sets(st.integers(0, g.n - 1)))
    h = switch(g, u)
    assert switch(h, u) == g
    assert is_balanced(h) == is_balanced(g)
    assert (find_unbalanced_k4(h) is None) == (find_unbalanced_k4(g) is None)
    assert balanced_clique_number(h) == balanced_clique_number(g)
    w = switching_between(g, h)
    assert w is not None and switch(g, w) == h


@given(signed_graphs)
@settings(max_examples=200, deadline=None)
def test_balance_agrees_with_harary(g):
    assert is_balanced(g) == balanced_by_brute_force(g)
    s = balancing_set(g)
    if is_balanced(g):
        assert (switch(g, s).adj >= 0).all()
    else:
        assert s is None


def test_unbalanced_k4_agrees_with_cycle_products(rng):
    for _ in range(400):
        g = random_signed_graph(rng, rng.randint(4, 6), p=rng.uniform(0.5, 1.0))
        hit = find_unbalanced_k4(g)
        assert (hit is not None) == unbalanced_k4_by_cycles(g)
        if hit is not None:
            assert is_clique(g, hit) and not is_balanced(induced(g, hit))


def test_unbalanced_k4_first_hit_is_lexicographic():
    g = SignedGraph.complete(6)
    g = SignedGraph.from_edges(6, [(u, v, -1 if (u, v) in {(2, 5)} else 1) for u, v, _ in g.edges()])
    assert find_unbalanced_k4(g) == (0, 1, 2, 5)


def test_both_unbalanced_k4_types_detected():
    one = SignedGraph.from_edges(4, [(0, 1, -1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)])
    two = SignedGraph.from_edges(4, [(0, 1, -1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, -1)])
    assert find_unbalanced_k4(one) == (0, 1, 2, 3)
    assert find_unbalanced_k4(two) == (0, 1, 2, 3)
    assert find_unbalanced_k4(SignedGraph.complete(4, -1)) == (0, 1, 2, 3)
    assert find_unbalanced_k4(switch(SignedGraph.complete(4), {1})) is None


def test_clique_numbers_against_networkx(rng):
    for _ in range(300):
        g = random_signed_graph(rng, rng.randint(1, 12))
        omega = max((len(c) for c in nx.find_cliques(to_nx(g))), default=1)
        assert clique_number(g) == omega
        assert balanced_clique_number(g) <= clique_number(g)
        assert balanced_clique_number(g.underlying()) == clique_number(g)


def test_balanced_clique_number_against_subsets(rng):
    for _ in range(200):
        g = random_signed_graph(rng, rng.randint(1, 8), p=rng.uniform(0.4, 1.0))
        assert balanced_clique_number(g) == balanced_clique_by_subsets(g)


def test_clique_number_on_larger_graphs(rng):
    for _ in range(20):
        g = random_signed_graph(rng, 40, p=0.7)
        assert clique_number(g) == max(len(c) for c in nx.find_cliques(to_nx(g)))


def test_components_and_forest(rng):
    for _ in range(100):
        g = random_signed_graph(rng, rng.randint(1, 12), p=rng.uniform(0, 0.4))
        ours = sorted(sorted(c) for c in components(g))
        ref = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
        assert ours == ref
        assert is_connected(g) == (len(ref) == 1)
        forest = spanning_forest(g)
        assert len(forest) == g.n - len(ref)
        assert nx.is_forest(nx.Graph(forest)) if forest else True


def test_permute_and_delete(rng):
    g = random_signed_graph(rng, 7)
    perm = [3, 0, 6, 1, 5, 2, 4]
    h = permute(g, perm)
    for u, v, s in g.edges():
        assert h.sign(perm.index(u), perm.index(v)) == s
    d = delete_vertex(g, 2)
    assert d == induced(g, [0, 1, 3, 4, 5, 6])
    with pytest.raises(ValueError):
        permute(g, [0, 0, 1, 2, 3, 4, 5])


@given(signed_graphs)
@settings(max_examples=100, deadline=None)
def test_formats_round_trip(g):
    text = write_sgf(g)
    assert read_sgf(text) == g
    assert write_sgf(read_sgf(text)) == text
    js = write_json(g)
    assert read_json(js) == g
    assert write_json(read_json(js)) == js
    assert read_graph(text) == read_graph(js) == g


@pytest.mark.parametrize(
    "text",
    ["", "n=3\n0 1 x\n", "n=3\n1 0 +\n", "n=3\n0 3 +\n", "m=3\n", "n=3\n0 1 +\nhello\n", "n=3\n0 1 +\n0 1 -\n"],
)
def test_sgf_rejects_malformed(text):
    with pytest.raises(FormatError):
        read_sgf(text)


@pytest.mark.parametrize("text", ['{"n": 2}', '{"n": 2, "edges": [[0, 1, 2]]}', '{"n": 2, "edges": [[0, 0, 1]]}', "[1]"])
def test_json_rejects_malformed(text):
    with pytest.raises(FormatError):
        read_json(text)


def test_sgf_comments_are_ignored():
    g = read_sgf("# header\nn=3\n0 1 -\n# trailing\n1 2 +\n")
    assert g.edges() == [(0, 1, -1), (1, 2, 1)]


def test_random_graph_generator_is_seeded():
    a = random_signed_graph(random.Random(1), 8)
    b = random_signed_graph(random.Random(1), 8)
    assert a == b

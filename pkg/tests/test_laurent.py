import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clustercat.laurent import (
    DivisionNotExact,
    LaurentPoly,
    den_injectivity_check,
    denominator_vector,
    explore_exchange_graph,
    initial_seed,
    seed_mutate,
)
from clustercat.quivers import builtin_quiver, exchange_matrix


def x(i, n=2):
    return LaurentPoly.variable(n, i)


def test_arithmetic_examples():
    one = LaurentPoly.one(2)
    assert x(1) * LaurentPoly.monomial((-1, 0)) == one
    p = one + x(2)
    assert p.exact_div(p) == one
    q = one + x(1) + x(2) + x(1) * x(2)
    assert q.exact_div(one + x(1)) == one + x(2)


def test_exact_div_raises_on_remainder():
    with pytest.raises(DivisionNotExact):
        (LaurentPoly.one(2) + x(1)).exact_div(LaurentPoly.one(2) + x(2))


def test_render_canonical():
    p = LaurentPoly.monomial((-1, 1)) + LaurentPoly.monomial((-1, 0))
    assert p.render() == "x1^-1*x2 + x1^-1"
    assert LaurentPoly.one(2).render() == "1"


def test_denominator_vectors():
    assert denominator_vector(x(1)) == (-1, 0)
    p = (LaurentPoly.one(2) + x(1) + x(2)).exact_div(x(1) * x(2))
    assert denominator_vector(p) == (1, 1)
    assert denominator_vector((LaurentPoly.one(2) + x(2)).exact_div(x(1))) == (1, 0)
    with pytest.raises(ValueError):
        denominator_vector(LaurentPoly.zero(2))


def test_pentagon_mutation():
    b = exchange_matrix(builtin_quiver("A2"))
    s = initial_seed(b)
    s1 = seed_mutate(s, 1)
    assert s1.cluster[0] == (LaurentPoly.one(2) + x(2)).exact_div(x(1))
    # the five-periodicity of the A2 exchange relation, up to the swap
    t = s
    for k in (1, 2, 1, 2, 1):
        t = seed_mutate(t, k)
    assert t.cluster == (s.cluster[1], s.cluster[0])
    assert t.b == ((0, -1), (1, 0))


def test_mutation_index_out_of_range():
    s = initial_seed(exchange_matrix(builtin_quiver("A2")))
    with pytest.raises(IndexError):
        seed_mutate(s, 3)


def _dfs_explore(b):
    """Independent depth-first re-enumeration of seeds and variables."""
    start = initial_seed(b)
    seen = {start.cluster_key(): start}
    variables = set(start.cluster)
    stack = [start]
    while stack:
        s = stack.pop()
        for k in range(1, len(b) + 1):
            t = seed_mutate(s, k)
            key = t.cluster_key()
            if key not in seen:
                seen[key] = t
                variables.update(t.cluster)
                stack.append(t)
    return seen, variables


@pytest.mark.parametrize(
    "name,clusters,varcount",
    [("A2", 5, 5), ("A3", 14, 9)],
)
def test_finite_type_counts_with_dfs_oracle(name, clusters, varcount):
    b = exchange_matrix(builtin_quiver(name))
    res = explore_exchange_graph(b)
    assert not res.truncated
    assert res.cluster_count == clusters
    assert res.variable_count == varcount
    seen, variables = _dfs_explore(b)
    assert set(seen) == set(res.seeds)
    assert variables == res.variables


def test_a4_and_d4_counts():
    res = explore_exchange_graph(exchange_matrix(builtin_quiver("A4")))
    assert (res.cluster_count, res.variable_count) == (42, 14)
    res = explore_exchange_graph(exchange_matrix(builtin_quiver("D4")))
    assert (res.cluster_count, res.variable_count) == (50, 16)


def test_affine_exploration_requires_depth_and_truncates():
    b = exchange_matrix(builtin_quiver("Atilde21"))
    with pytest.raises(ValueError):
        explore_exchange_graph(b)
    prev = 0
    for depth in (2, 4, 6):
        res = explore_exchange_graph(b, max_depth=depth)
        assert res.truncated
        assert res.depth_reached == depth
        assert res.variable_count > prev
        prev = res.variable_count


def test_noninitial_denominators_positive_in_finite_type():
    for name in ("A2", "A3"):
        b = exchange_matrix(builtin_quiver(name))
        res = explore_exchange_graph(b)
        n = len(b)
        initial = set(initial_seed(b).cluster)
        for v in res.variables:
            d = denominator_vector(v)
            if v in initial:
                assert sum(d) == -1 and max(d) == 0
            else:
                assert all(c >= 0 for c in d) and any(c > 0 for c in d)
                assert len(d) == n


def test_den_injectivity_check():
    b = exchange_matrix(builtin_quiver("A3"))
    res = explore_exchange_graph(b)
    ok = den_injectivity_check(sorted(res.variables, key=lambda p: p.render()))
    assert ok.ok and ok.witness is None
    dup = den_injectivity_check([x(1, 3), x(1, 3) + x(1, 3)])
    assert not dup.ok
    assert dup.witness["denominator"] == [-1, 0, 0]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=6))
def test_seed_mutation_involution_and_matrix_lockstep(seq):
    from clustercat.quivers import mutate_matrix

    b = exchange_matrix(builtin_quiver("A3"))
    s = initial_seed(b)
    for k in seq:
        s = seed_mutate(s, k)
        b = mutate_matrix(b, k)
        assert s.b == b
    # undoing the sequence restores the initial seed exactly
    for k in reversed(seq):
        s = seed_mutate(s, k)
    assert s.cluster == initial_seed(exchange_matrix(builtin_quiver("A3"))).cluster


def test_laurent_phenomenon_random_walks():
    rng = random.Random(7)
    for name in ("A3", "D4", "Atilde21"):
        b = exchange_matrix(builtin_quiver(name))
        n = len(b)
        s = initial_seed(b)
        for _ in range(60):
            s = seed_mutate(s, rng.randrange(1, n + 1))  # raises on failure
        for v in s.cluster:
            assert all(c >= 1 for c in v.terms().values())

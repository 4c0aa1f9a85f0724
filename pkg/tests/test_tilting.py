import pytest

from clustercat.category import GammaC, enumerate_tilting_objects
from clustercat.quivers import builtin_quiver
from clustercat.reps import (
    Representation,
    all_indecomposables,
    direct_sum,
    indecomposable_from_root,
    injective_dims,
    projective_dims,
)
from clustercat.tilting import (
    DecomposableSummand,
    NotTilting,
    TiltingModule,
    complement_and_sequence,
    enumerate_tilting_modules,
    find_descent_summand,
    is_tilting_module,
    module_summand_dims,
    prop8_descent,
    torsion_class,
)

A3 = builtin_quiver("A3")
D4 = builtin_quiver("D4")


def rep(q, dims):
    return indecomposable_from_root(q, dims)


def projectives(q):
    return tuple(rep(q, projective_dims(q, i)) for i in range(1, q.n + 1))


def injectives(q):
    return tuple(rep(q, injective_dims(q, i)) for i in range(1, q.n + 1))


def test_enumeration_a3_frozen():
    found = {frozenset(t.dims) for t in enumerate_tilting_modules(A3)}
    assert found == {
        frozenset({(1, 1, 1), (0, 1, 1), (0, 0, 1)}),
        frozenset({(1, 1, 1), (0, 1, 1), (0, 1, 0)}),
        frozenset({(1, 1, 1), (0, 0, 1), (1, 0, 0)}),
        frozenset({(1, 1, 1), (0, 1, 0), (1, 1, 0)}),
        frozenset({(1, 1, 1), (1, 0, 0), (1, 1, 0)}),
    }
    # the projective-injective summand sits in every one of them
    assert all((1, 1, 1) in s for s in found)


def test_enumeration_counts_catalan():
    assert len(enumerate_tilting_modules(builtin_quiver("A2"))) == 2
    assert len(enumerate_tilting_modules(builtin_quiver("A4"))) == 14
    assert len(enumerate_tilting_modules(D4)) == 20


def test_d4_count_against_cluster_category():
    # module-only tilting objects of the category are the tilting modules
    g = GammaC(D4)
    keys = enumerate_tilting_objects(g)
    module_only = [
        key for key in keys if all(v.is_module for v in key)
    ]
    assert len(module_only) == 20


def test_validation_errors():
    p1, p2, p3 = projectives(A3)
    with pytest.raises(DecomposableSummand):
        is_tilting_module(A3, (direct_sum(p2, p3), p1, p2))
    # ext1(I1, P2) = 1, so this triple is not rigid
    i1 = rep(A3, (1, 0, 0))
    assert not is_tilting_module(A3, (p1, p2, i1))
    with pytest.raises(NotTilting):
        TiltingModule(A3, (p1, p2, i1))
    assert not is_tilting_module(A3, (p1, p2, p2))
    assert not is_tilting_module(A3, (p1, p2))


def test_module_decomposition():
    p1, p2, p3 = projectives(A3)
    s2 = rep(A3, (0, 1, 0))
    assert module_summand_dims(A3, direct_sum(p1, s2)) == ((0, 1, 0), (1, 1, 1))
    assert module_summand_dims(A3, direct_sum(p3, direct_sum(p3, p2))) == (
        (0, 0, 1),
        (0, 0, 1),
        (0, 1, 1),
    )
    assert module_summand_dims(A3, Representation.zero(A3)) == ()
    # a non-split-looking presentation of P1 + S2: dims (1, 2, 1)
    m = Representation.from_dims(A3, (1, 2, 1), {0: [[1], [1]], 1: [[0, 1]]})
    assert module_summand_dims(A3, m) == ((0, 1, 0), (1, 1, 1))


def test_torsion_classes_a3():
    t_a = TiltingModule(A3, projectives(A3))
    assert torsion_class(A3, t_a).members == {
        m.dims for m in all_indecomposables(A3)
    }
    t_da = TiltingModule(A3, injectives(A3))
    assert torsion_class(A3, t_da).members == {(1, 0, 0), (1, 1, 0), (1, 1, 1)}


def test_descent_summand_selection():
    t_a = TiltingModule(A3, projectives(A3))
    assert find_descent_summand(A3, t_a) == 2
    t_da = TiltingModule(A3, injectives(A3))
    assert find_descent_summand(A3, t_da) is None


def test_full_descent_chain_from_projectives():
    t = TiltingModule(A3, projectives(A3))
    report = prop8_descent(A3, t)
    assert report["diagram"] == "A3"
    assert report["step_count"] == 3
    assert report["torsion_sizes"] == [6, 5, 4, 3]
    assert report["terminal_injectives"] is True
    expected = [
        ((0, 0, 1), (0, 1, 1), (0, 1, 0)),
        ((0, 1, 1), (1, 2, 1), (1, 1, 0)),
        ((0, 1, 0), (1, 1, 0), (1, 0, 0)),
    ]
    for step, (t0, e, t0p) in zip(report["steps"], expected):
        assert tuple(step["dim_t0"]) == t0
        assert tuple(step["dim_e"]) == e
        assert tuple(step["dim_t0_prime"]) == t0p
        assert step["t0_prime_preinjective"] is True
        assert tuple(
            a + b for a, b in zip(step["dim_t0"], step["dim_t0_prime"])
        ) == tuple(step["dim_e"])


def test_single_step_witness():
    t = TiltingModule(A3, projectives(A3))
    t2, w = complement_and_sequence(A3, t, 2)
    assert w["dim_t0"] == [0, 0, 1]
    assert w["e_summands"] == [[0, 1, 1]]
    assert w["dim_t0_prime"] == [0, 1, 0]
    assert w["torsion_before"] == 6 and w["torsion_after"] == 5
    assert frozenset(t2.dims) == frozenset({(1, 1, 1), (0, 1, 1), (0, 1, 0)})


def test_all_a3_chains():
    counts = sorted(
        prop8_descent(A3, t)["step_count"] for t in enumerate_tilting_modules(A3)
    )
    assert counts == [0, 1, 1, 2, 3]


@pytest.mark.parametrize("q,bound", [(A3, 6), (D4, 12)])
def test_descent_invariants_everywhere(q, bound):
    inj = frozenset(m.dims for m in injectives(q))
    for t in enumerate_tilting_modules(q):
        report = prop8_descent(q, t)
        sizes = report["torsion_sizes"]
        assert all(a > b for a, b in zip(sizes, sizes[1:]))
        assert report["step_count"] <= bound
        assert report["terminal_injectives"] is True
        assert sizes[-1] == q.n
        for step in report["steps"]:
            total = [a + b for a, b in zip(step["dim_t0"], step["dim_t0_prime"])]
            assert total == step["dim_e"]
        # replaying the chain lands on the injective cogenerator
        cur = t
        for step in report["steps"]:
            cur, w = complement_and_sequence(q, cur, step["replaced_index"])
            assert w == step
        assert frozenset(cur.dims) == inj

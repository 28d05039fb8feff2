import pytest

from flagvar.drops import (
    borel_dichotomy,
    circle_drop,
    drop_lattice,
    is_maximal,
    parabolics_containing,
    product_rigidity_check,
)
from flagvar.parabolic import adjoint_flag, make_flag
from flagvar.rootsys import RootSystemType, build_root_system
from flagvar.submodule import Submodule

from .util import small_flags


def level_set(f, level):
    return Submodule.from_roots(f, [r for r in f.noncompact if f.level(r) == level])


def test_an_adjoint_targets():
    f = adjoint_flag(build_root_system("A4"))
    targets = parabolics_containing(f)
    assert [sorted(t.crossed) for t in targets] == [[1, 4], [1], [4], []]
    assert targets[-1].is_point and targets[-1].flag is None
    assert targets[1].fiber_crossed == {4}
    # point and hyperplane targets agree up to the outer automorphism
    assert targets[1].equivalence == targets[2].equivalence
    assert targets[0].equivalence != targets[1].equivalence


def test_target_counts():
    for f in small_flags():
        targets = parabolics_containing(f)
        assert len(targets) == 2 ** len(f.crossed)
        sizes = [len(t.crossed) for t in targets]
        assert sizes == sorted(sizes, reverse=True)
        assert all(t.crossed <= f.crossed for t in targets)
    b2 = make_flag(build_root_system("B2"), "all")
    assert len(parabolics_containing(b2)) == 4


def test_maximal_has_only_point_drop():
    for t in ["B3", "C3", "G2", "E6"]:
        sys = build_root_system(t)
        for node in range(1, sys.rank + 1):
            proper = [x for x in parabolics_containing(make_flag(sys, [node])) if x.crossed != {node}]
            assert len(proper) == 1 and proper[0].is_point


def test_drop_lattice_dag():
    f = make_flag(build_root_system("A3"), "all")
    d = drop_lattice(f)
    assert len(d["nodes"]) == 8
    assert len(d["edges"]) == 3 * 4  # each k-set has k outgoing edges
    for a, b in d["edges"]:
        assert set(b) < set(a) and len(a) - len(b) == 1


def test_is_maximal():
    assert is_maximal(make_flag(build_root_system("C3"), [2]))
    assert not is_maximal(make_flag(build_root_system("A2"), "all"))
    for n in range(3, 7):
        assert is_maximal(make_flag(build_root_system(f"B{n}"), [n]))
    with pytest.raises(ValueError):
        is_maximal(make_flag(build_root_system([RootSystemType("A", 1)] * 2), [1]))


def test_circle_drop():
    b2 = make_flag(build_root_system("B2"), "all")
    q = circle_drop(b2, [2])
    assert q.crossed == {1}
    assert q.flag.crossed == {1}
    assert q.drops_to([1]) and q.drops_to([])
    assert not q.drops_to([2]) and not q.drops_to([1, 2])
    assert circle_drop(b2, []).crossed == b2.crossed
    whole = circle_drop(b2, [1, 2])
    assert whole.crossed == frozenset() and whole.flag is None


def test_circle_drop_composes():
    f = make_flag(build_root_system("A4"), "all")
    for r1 in ([1], [2, 3], []):
        for r2 in ([4], [1, 3], []):
            assert circle_drop(f, r1 + r2).crossed == circle_drop(f, r1).crossed - set(r2)


def test_borel_dichotomy():
    f = make_flag(build_root_system("G2"), "all")
    assert borel_dichotomy(f, []) == "all-frobenius"
    assert borel_dichotomy(f, [1]) == "drops"
    with pytest.raises(ValueError):
        borel_dichotomy(make_flag(build_root_system("G2"), [1]), [])


def product_flag():
    return make_flag(build_root_system([RootSystemType("G", 2), RootSystemType("C", 3)]), [1, 4])


def test_product_rigid():
    f = product_flag()
    (_, g2), (_, c3) = f.factor_flags()
    star = Submodule.from_roots(g2, [(3, 2), (2, 1), (3, 1)])
    verdict = product_rigidity_check(f, [star, level_set(c3, 2)])
    assert verdict.rigid and verdict.failures == ()


def test_product_not_rigid_trivial_factor():
    f = product_flag()
    (_, g2), (_, c3) = f.factor_flags()
    star = [(3, 2), (2, 1), (3, 1)]
    verdict = product_rigidity_check(f, [star, c3.noncompact])
    assert not verdict.rigid
    assert verdict.failures == ((1, "trivial"),)


def test_product_maximal_factor_every_module_semicanonical():
    # a maximal factor only ever fails for triviality or integrability
    f = make_flag(build_root_system([RootSystemType("A", 2), RootSystemType("G", 2)]), [1, 3])
    (_, a2), (_, g2) = f.factor_flags()
    verdict = product_rigidity_check(f, [a2.noncompact, [(3, 2), (2, 1), (3, 1)]])
    assert verdict.failures == ((0, "trivial"),)


def test_product_rejects_non_maximal():
    f = make_flag(build_root_system([RootSystemType("A", 2), RootSystemType("G", 2)]), [1, 2, 3])
    with pytest.raises(ValueError):
        product_rigidity_check(f, [[], []])

import pytest
from hypothesis import given, strategies as st

from admskein.catdata import SumHull
from admskein.coend import (
    BifunctorPresentation,
    BudgetExceeded,
    FunctorialityError,
    closure_invariance_check,
    coend,
    constant_bifunctor,
    dump_coend,
    end_dual,
    hom_bifunctor,
    htr_compose,
    htr_hom,
    htr_unit_class,
    twisted_hom,
)

from conftest import category


@pytest.mark.parametrize("name,want", [("trivial", 1), ("z2", 2), ("z3", 3)])
def test_hh0_of_pointed(name, want):
    c = category(name)
    assert coend(hom_bifunctor(c, c.listed)).dim == want


def test_hh0_lambda2_against_brute_force(oracles):
    c = category("lambda2")
    proj = list(c.subcats["proj"])
    assert coend(hom_bifunctor(c, proj)).dim == oracles["annulus_lambda2_proj"]
    assert coend(hom_bifunctor(c, c.listed)).dim == oracles["annulus_lambda2_all"]


@pytest.mark.parametrize("name", ["trivial", "z2", "z3", "lambda2"])
def test_end_is_dual_to_coend(name):
    c = category(name)
    F = hom_bifunctor(c, c.listed)
    assert end_dual(F).dim == coend(F).dim


def test_cylinder_hom_pointed():
    c = category("z3")
    x1 = c.index("X1")
    assert coend(twisted_hom(c, c.listed, x1, x1)).dim == 3
    assert coend(twisted_hom(c, c.listed, x1, c.index("X2"))).dim == 0


def test_constant_bifunctor_counts_components():
    c = category("z3")
    assert coend(constant_bifunctor(c, c.listed, 2)).dim == 6


def test_htr_does_not_see_non_ideal_objects():
    c = category("lambda2")
    L = c.index("L")
    big = htr_hom(c, c.listed, L, L)
    small = htr_hom(c, list(c.subcats["proj"]), L, L)
    assert big.dim == small.dim == 16


def test_htr_unit_is_neutral():
    c = category("z3")
    x1 = c.index("X1")
    h = htr_hom(c, c.listed, x1, x1)
    u = htr_unit_class(h)
    for k in range(h.dim):
        e = c.fld.zeros(h.dim)
        e[k] = 1
        left, t = htr_compose(h, h, u, e)
        right, _ = htr_compose(h, h, e, u)
        assert c.fld.equal(left, e) and c.fld.equal(right, e)


def test_htr_composition_is_associative():
    c = category("z3")
    x1 = c.index("X1")
    h = htr_hom(c, c.listed, x1, x1)
    basis = [c.fld.eye(h.dim)[k] for k in range(h.dim)]
    for a in basis:
        for b in basis:
            for d in basis:
                ab, _ = htr_compose(h, h, a, b)
                abd, _ = htr_compose(h, h, ab, d)
                bd, _ = htr_compose(h, h, b, d)
                a_bd, _ = htr_compose(h, h, a, bd)
                assert c.fld.equal(abd, a_bd)


def test_sum_closure_invariance_with_witnesses():
    base = category("z2")
    h = SumHull(base, [(0, 1), (1, 1)])
    gens = [h.obj((0,)), h.obj((1,))]
    verdict = closure_invariance_check(hom_bifunctor(h, h.listed), gens)
    assert verdict.isomorphic
    assert verdict.dim_generators == verdict.dim_list == 2


def test_missing_witness_is_reported():
    base = category("z2")
    h = SumHull(base, [(0, 1)])
    verdict = closure_invariance_check(hom_bifunctor(h, h.listed), [h.obj((0,))])
    assert not verdict.isomorphic
    assert verdict.missing_witness


def test_broken_bifunctor_is_rejected():
    c = category("z3")
    F = hom_bifunctor(c, c.listed)
    bad = BifunctorPresentation(c, F.objects, F.dim, lambda f, i: c.fld.reduce(2 * F.co(f, i)), F.contra)
    with pytest.raises(FunctorialityError):
        coend(bad)


def test_budget_is_enforced():
    c = category("lambda2")
    with pytest.raises(BudgetExceeded):
        coend(hom_bifunctor(c, c.listed), budget=3)


def test_generator_restricted_label():
    assert coend(hom_bifunctor(category("lambda2"), category("lambda2").listed)).restricted
    assert not coend(hom_bifunctor(category("z3"), category("z3").listed)).restricted


def test_structured_export():
    c = category("z3")
    text = dump_coend(coend(hom_bifunctor(c, c.listed)))
    lines = text.splitlines()
    assert lines[0].startswith("coend ") and lines[-1] == "end"
    assert "dim 3" in lines and "ambient 3" in lines and "label complete" in lines
    assert sum(1 for l in lines if l.startswith("rep ")) == 3


@given(st.data())
def test_class_of_is_linear_and_cyclic(data):
    c = category("lambda2")
    res = coend(hom_bifunctor(c, c.listed))
    fld = c.fld
    x = data.draw(st.sampled_from(list(c.listed)))
    y = data.draw(st.sampled_from(list(c.listed)))
    n = c.hom_dim(x, x)
    u = fld.array(data.draw(st.lists(st.integers(0, 6), min_size=n, max_size=n)))
    v = fld.array(data.draw(st.lists(st.integers(0, 6), min_size=n, max_size=n)))
    a = data.draw(st.integers(0, 6))
    lhs = res.class_of(x, fld.reduce(a * u + v))
    rhs = fld.reduce(a * res.class_of(x, u) + res.class_of(x, v))
    assert fld.equal(lhs, rhs)
    for f in c.basis(x, y):
        for g in c.basis(y, x):
            assert fld.equal(res.class_of(x, c.coords(c.compose(g, f))), res.class_of(y, c.coords(c.compose(f, g))))


def test_unlisted_objects_split_into_summands():
    c = category("lambda2")
    res = coend(hom_bifunctor(c, c.listed))
    L = c.index("L")
    LL = c.tensor(L, L)
    v = res.class_of(LL, c.coords(c.identity(LL)))
    # the identity of L x L is the sum of the identities of its summands
    want = c.fld.zeros(res.dim)
    for z, _, _ in c.decompose(LL):
        want = c.fld.reduce(want + res.class_of(z, c.coords(c.identity(z))))
    assert c.fld.equal(v, want)

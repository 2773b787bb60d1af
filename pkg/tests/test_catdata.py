import numpy as np
import pytest
from hypothesis import given, strategies as st

from admskein.catdata import (
    NotTensorComplete,
    ParseError,
    SubcategorySpec,
    SumHull,
    build_exterior_smod,
    build_graded_vect,
    build_lambda3_twisted,
    dump_datum,
    factors_through,
    free_module,
    ideal_closure,
    load_datum,
    read_datum,
    retract_witness,
    tensor_dual_closure,
    twisted_module,
    validate_category,
    write_datum,
)
from admskein.exactla import Field

from conftest import category


@pytest.mark.parametrize(
    "name,field",
    [("trivial", "F7"), ("z2", "Q"), ("z2", "F7"), ("z3", "F7"), ("z3", "F13"), ("z3sph", "Q"), ("lambda2", "F7")],
)
def test_builtins_validate(name, field):
    rep = validate_category(category(name, field))
    assert rep.ok, rep.summary()


def test_lambda2_validates_over_rationals():
    assert validate_category(category("lambda2", "Q")).ok


def test_lambda2_hom_dims_match_independent_solver(oracles):
    c = category("lambda2")
    for key, want in oracles["hom_dims_lambda2"].items():
        a, b = key.split("->")
        assert c.hom_dim(c.index(a), c.index(b)) == want, key


def test_z3_dimensions_are_inverse_pair():
    c = category("z3")
    z = c.fld.root_of_unity(3)
    dl, dr = c.dims(c.index("X1"))
    assert dr == z and dl == c.fld.inv(z)


def _characters(p, n):
    fld = Field.prime(p)
    g = next(x for x in range(2, p) if all(pow(x, (p - 1) // q, p) != 1 for q in range(2, p) if (p - 1) % q == 0 and all(q % r for r in range(2, q))))
    return fld, [pow(g, k * (p - 1) // n, p) for k in range(n)]


@given(st.sampled_from([(7, 1), (7, 2), (7, 3), (7, 6), (13, 4), (13, 3)]), st.integers(0, 5))
def test_graded_vect_round_trip_and_validate(pn, k):
    p, n = pn
    fld, roots = _characters(p, n)
    z = roots[k % n]
    dims = [pow(z, j, p) for j in range(n)]
    c = build_graded_vect(n, dims, fld)
    text = dump_datum(c)
    c2 = load_datum(text)
    assert dump_datum(c2) == text
    assert validate_category(c2).ok
    for j in range(n):
        dl, dr = c2.dims(j)
        assert dr == dims[j] and fld.scalar(dl * dr) == 1


def test_file_round_trip(tmp_path):
    c = category("z3", "F13")
    path = tmp_path / "z3.txt"
    write_datum(c, path)
    assert dump_datum(read_datum(path)) == path.read_text()


def test_truncated_file_reports_position():
    text = dump_datum(category("z3"))
    cut = "\n".join(text.splitlines()[:8]) + "\ncompose 0 0"
    with pytest.raises(ParseError) as e:
        load_datum(cut)
    assert e.value.line == 9


def test_unreduced_residue_rejected():
    text = dump_datum(category("z3")).replace("= 1 mod 7", "= 9 mod 7", 1)
    with pytest.raises(ParseError, match="not reduced"):
        load_datum(text)


def test_perturbed_constant_is_caught():
    c = category("z3").copy()
    key = (1, 1, 1)
    c.compose_consts[key] = c.fld.reduce(c.compose_consts[key] * 2)
    rep = validate_category(c)
    assert not rep.ok and rep.witness is not None


def test_perturbed_pivotal_data_is_caught():
    c = category("z3").copy()
    c.ev_tilde_vecs[1] = c.fld.reduce(c.ev_tilde_vecs[1] * 3)
    assert not validate_category(c).ok


def test_non_character_dims_rejected():
    with pytest.raises(ValueError):
        build_graded_vect(3, [1, 2, 2], Field.prime(7))


# -- closures ---------------------------------------------------------------------------------


def test_closure_of_unit_in_z3_is_everything():
    c = category("z3")
    assert ideal_closure(c, SubcategorySpec((c.unit,))).members == (0, 1, 2)


def test_closure_in_lambda2():
    c = category("lambda2")
    L, PL = c.index("L"), c.index("PL")
    assert ideal_closure(c, SubcategorySpec((L,))).members == tuple(sorted((L, PL)))
    assert tensor_dual_closure(c, SubcategorySpec((c.unit,))).members == (c.unit,)
    assert not factors_through(c, c.unit, [L])
    assert retract_witness(c, L, c.tensor(L, L)) is not None
    assert retract_witness(c, c.unit, L) is None


@given(st.sampled_from(["trivial", "z2", "z3", "lambda2"]), st.data())
def test_closure_is_idempotent_and_monotone(name, data):
    c = category(name)
    objs = data.draw(st.lists(st.sampled_from(list(c.listed)), min_size=1, max_size=3, unique=True))
    s = SubcategorySpec(tuple(objs))
    cl = ideal_closure(c, s)
    assert set(s.members) <= set(cl.members)
    assert ideal_closure(c, cl).members == cl.members


# -- super modules ----------------------------------------------------------------------------


def test_twisted_modules_are_valid():
    c = build_lambda3_twisted(Field.prime(7), [(0, 0), (1, 0), (0, 1), (1, 1)])
    for x in c.subcats["twisted"]:
        assert c.hom_dim(c.unit, x) == 1
    assert validate_category(c, [c.unit] + list(c.subcats["twisted"][:2])).ok


def test_module_without_anticommuting_action_rejected():
    fld = Field.prime(7)
    m = free_module(fld, 2, "L")
    swap = np.zeros((4, 4), dtype=np.int64)
    swap[0, 1] = swap[1, 0] = 1  # odd, but squares to a nonzero idempotent
    bad = type(m)(m.name, m.parity, [m.action[0], swap])
    with pytest.raises(ValueError):
        build_exterior_smod(fld, ["a", "b"], [bad])


def test_decompose_reports_missing_summand():
    fld = Field.prime(7)
    c = build_exterior_smod(fld, ["a", "b", "c"], [twisted_module(fld, "X", 1, 0)])
    x = c.index("X")
    with pytest.raises(NotTensorComplete):
        c.decompose(c.tensor(x, x))


def test_sum_hull_validates_and_splits():
    base = category("z3")
    h = SumHull(base, [(1, 2)])
    assert validate_category(h).ok
    pair = h.obj((1, 2))
    assert h.hom_dim(pair, pair) == 2
    parts = h.decompose(pair)
    assert [h.name(z) for z, _, _ in parts] == ["X1", "X2"]
    total = h.zero(pair, pair)
    for z, iota, pi in parts:
        total = h.add(total, h.compose(iota, pi))
    assert h.mor_equal(total, h.identity(pair))

import pytest
from hypothesis import given, strategies as st

from admskein.diagram import (
    Box,
    Cap,
    Cup,
    DiagramError,
    DiagramWord,
    Identity,
    StrandType,
    dims,
    dump_word,
    evaluate,
    loop_word,
    parse_word,
    ptr_l,
    ptr_r,
    zigzag_word,
)

from conftest import category


def test_loops_give_the_two_dimensions():
    c = category("z3")
    x1 = c.index("X1")
    z = c.fld.root_of_unity(3)
    assert c.unit_scalar(evaluate(c, loop_word(x1, "right"))) == z
    assert c.unit_scalar(evaluate(c, loop_word(x1, "left"))) == c.fld.inv(z)


@pytest.mark.parametrize("name", ["z3", "z2", "lambda2"])
def test_zigzag_is_identity(name):
    c = category(name)
    for x in c.listed:
        assert c.mor_equal(evaluate(c, zigzag_word(x)), c.identity(x))


def test_lambda2_dimensions():
    c = category("lambda2")
    assert dims(c, c.index("L")) == (0, 0)
    assert dims(c, c.index("P1")) == (6, 6)


def test_partial_traces_of_identities():
    c = category("z3")
    x1, x2 = c.index("X1"), c.index("X2")
    dl, dr = c.dims(x1)
    f = c.identity(c.tensor(x1, x2))
    assert c.mor_equal(ptr_l(c, f, x1), c.scale(dl, c.identity(x2)))
    g = c.identity(c.tensor(x2, x1))
    assert c.mor_equal(ptr_r(c, g, x1), c.scale(dr, c.identity(x2)))


@given(st.lists(st.integers(0, 6), min_size=8, max_size=8), st.lists(st.integers(0, 6), min_size=8, max_size=8), st.integers(0, 6))
def test_partial_traces_are_linear(u, v, a):
    c = category("lambda2")
    L = c.index("L")
    obj = c.tensor(L, L)
    n = c.hom_dim(obj, obj)
    f = c.from_coords(obj, obj, c.fld.array(u[:n] + [0] * (n - len(u[:n]))))
    g = c.from_coords(obj, obj, c.fld.array(v[:n] + [0] * (n - len(v[:n]))))
    comb = c.add(c.scale(a, f), g)
    for tr in (ptr_l, ptr_r):
        assert c.mor_equal(tr(c, comb, L), c.add(c.scale(a, tr(c, f, L)), tr(c, g, L)))


def test_partial_trace_of_a_tensor_factor():
    c = category("lambda2")
    L, P1 = c.index("L"), c.index("P1")
    for h in c.basis(L, L):
        f = c.tensor_mor(c.identity(P1), h)
        dl, _ = c.dims(P1)
        assert c.mor_equal(ptr_l(c, f, P1), c.scale(dl, h))


def test_word_text_round_trip():
    c = category("z3")
    x1 = c.index("X1")
    s = StrandType(x1, True)
    w = zigzag_word(x1)
    text = dump_word(c, w)
    w2 = parse_word(c, text)
    assert dump_word(c, w2) == text
    inline = text.replace("\n", ";")
    assert c.mor_equal(evaluate(c, parse_word(c, inline)), c.identity(x1))
    box = Box(c.scale(3, c.identity(x1)), (s,), (s,))
    w3 = DiagramWord((s,), (s,), [[box]])
    assert c.mor_equal(evaluate(c, parse_word(c, dump_word(c, w3))), c.scale(3, c.identity(x1)))


def test_malformed_words_rejected():
    c = category("z3")
    x1 = c.index("X1")
    s = StrandType(x1, True)
    with pytest.raises(DiagramError):
        evaluate(c, DiagramWord((s,), (s,), [[Identity(StrandType(x1, False))]]))
    with pytest.raises(DiagramError):
        parse_word(c, "word;source X1+;target X1+;layer braid X1 X1;end")
    with pytest.raises(DiagramError):
        parse_word(c, "word;source X1+;target X1+;layer box X1+ -> X1+ = 1 mod 7 2 mod 7;end")
    with pytest.raises(DiagramError):
        evaluate(c, DiagramWord((), (), [[Cup(x1, "wrong")]]))
    with pytest.raises(DiagramError):
        ptr_l(c, c.identity(c.index("X2")), x1, c.unit, c.unit)


def test_cap_then_cup_composes_to_loop():
    c = category("z3")
    x2 = c.index("X2")
    w = DiagramWord((), (), [[Cap(x2, "coev")], [Cup(x2, "ev_tilde")]])
    assert c.unit_scalar(evaluate(c, w)) == c.dims(x2)[1]

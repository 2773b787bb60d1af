"""Axiom checks for strict pivotal category presentations."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .base import PivotalCategory
from .datum import CategoryDatum


@dataclass
class ValidationReport:
    ok: bool
    checked: dict = field(default_factory=dict)
    failure: str | None = None
    witness: dict | None = None
    shape_error: str | None = None

    def summary(self) -> str:
        if self.shape_error:
            return f"SHAPE ERROR: {self.shape_error}"
        if self.ok:
            counts = ", ".join(f"{k}={v}" for k, v in self.checked.items())
            return f"PASS ({counts})"
        return f"FAIL [{self.failure}] witness={self.witness}"


class _Fail(Exception):
    def __init__(self, check, witness):
        super().__init__(check)
        self.check = check
        self.witness = witness


def check_shapes(c: CategoryDatum) -> str | None:
    """First structural inconsistency of a table datum, or ``None``."""
    n = c.n
    if not 0 <= c.unit < n:
        return f"unit index {c.unit} out of range"
    if len(c.dual_table) != n or any(not 0 <= d < n for d in c.dual_table):
        return "dual_table has wrong length or entries"
    for i in range(n):
        if c.dual_table[c.dual_table[i]] != i:
            return f"dual_table is not an involution at {c.name(i)}"
    if len(c.tensor_table) != n or any(len(r) != n for r in c.tensor_table):
        return "tensor_table is not n x n"
    for i, j, k in product(range(n), repeat=3):
        if c.tensor(c.tensor(i, j), k) != c.tensor(i, c.tensor(j, k)):
            return f"tensor_table not associative at ({c.name(i)},{c.name(j)},{c.name(k)})"
    for i in range(n):
        if c.tensor(i, c.unit) != i or c.tensor(c.unit, i) != i:
            return f"tensor_table not unital at {c.name(i)}"
    if len(c.hom_dims) != n or any(len(r) != n for r in c.hom_dims):
        return "hom_dims is not n x n"
    for i, j, k in product(range(n), repeat=3):
        want = (c.hom_dim(j, k), c.hom_dim(i, j), c.hom_dim(i, k))
        if 0 in want:
            continue
        got = c.compose_consts.get((i, j, k))
        if got is None or got.shape != want:
            return f"compose constants for ({c.name(i)},{c.name(j)},{c.name(k)}) have shape {None if got is None else got.shape}, expected {want}"
    for i, i2, j, j2 in product(range(n), repeat=4):
        want = (c.hom_dim(i, i2), c.hom_dim(j, j2), c.hom_dim(c.tensor(i, j), c.tensor(i2, j2)))
        if 0 in want:
            continue
        got = c.tensor_consts.get((i, i2, j, j2))
        if got is None or got.shape != want:
            return f"tensor constants for ({i},{i2},{j},{j2}) have shape {None if got is None else got.shape}, expected {want}"
    vec_specs = [
        ("id", c.id_vecs, lambda i: (i, i)),
        ("ev", c.ev_vecs, lambda i: (c.tensor(c.dual(i), i), c.unit)),
        ("coev", c.coev_vecs, lambda i: (c.unit, c.tensor(i, c.dual(i)))),
        ("ev_tilde", c.ev_tilde_vecs, lambda i: (c.tensor(i, c.dual(i)), c.unit)),
        ("coev_tilde", c.coev_tilde_vecs, lambda i: (c.unit, c.tensor(c.dual(i), i))),
    ]
    for label, vecs, ends in vec_specs:
        if len(vecs) != n:
            return f"{label} vectors: expected {n}, got {len(vecs)}"
        for i in range(n):
            a, b = ends(i)
            if np.shape(vecs[i]) != (c.hom_dim(a, b),):
                return f"{label} vector of {c.name(i)} has length {np.shape(vecs[i])}, expected {c.hom_dim(a, b)}"
    return None


def validate_category(c: PivotalCategory, objects=None) -> ValidationReport:
    """Check the strict pivotal axioms over all basis morphisms between ``objects``.

    ``objects`` defaults to every listed object.  Checks run in a fixed order
    and stop at the first failing witness.
    """
    if isinstance(c, CategoryDatum):
        err = check_shapes(c)
        if err:
            return ValidationReport(False, shape_error=err)
    objs = list(c.listed if objects is None else objects)
    eq = c.mor_equal
    name = c.name
    checked: dict[str, int] = {}

    def tick(label):
        checked[label] = checked.get(label, 0) + 1

    def need(cond, label, **w):
        if not cond:
            raise _Fail(label, w)
        tick(label)

    bases = {(i, j): c.basis(i, j) for i in objs for j in objs}
    try:
        if hasattr(c, "in_hom"):
            for i in objs:
                for label, m in (("ev", c.ev(i)), ("coev", c.coev(i)), ("ev_tilde", c.ev_tilde(i)), ("coev_tilde", c.coev_tilde(i))):
                    need(c.in_hom(m), "duality maps are morphisms", map=label, object=name(i))
        for i, j, k, l in product(objs, repeat=4):
            for f in bases[(i, j)]:
                for g in bases[(j, k)]:
                    gf = c.compose(g, f)
                    for h in bases[(k, l)]:
                        need(
                            eq(c.compose(h, gf), c.compose(c.compose(h, g), f)),
                            "associativity",
                            objects=(name(i), name(j), name(k), name(l)),
                        )
        for i, j in product(objs, repeat=2):
            for f in bases[(i, j)]:
                need(eq(c.compose(c.identity(j), f), f), "left identity", objects=(name(i), name(j)))
                need(eq(c.compose(f, c.identity(i)), f), "right identity", objects=(name(i), name(j)))
        for i, i2, j, j2 in product(objs, repeat=4):
            for f in bases[(i, i2)]:
                for g in bases[(j, j2)]:
                    fg = c.tensor_mor(f, g)
                    a = c.compose(c.tensor_mor(f, c.identity(j2)), c.tensor_mor(c.identity(i), g))
                    b = c.compose(c.tensor_mor(c.identity(i2), g), c.tensor_mor(f, c.identity(j)))
                    need(eq(a, fg) and eq(b, fg), "interchange", objects=(name(i), name(i2), name(j), name(j2)))
        for i in objs:
            for j in objs:
                need(eq(c.tensor_mor(c.identity(i), c.identity(j)), c.identity(c.tensor(i, j))), "tensor of identities", objects=(name(i), name(j)))
            for j, k in product(objs, repeat=2):
                for f in bases[(i, j)]:
                    for g in bases[(j, k)]:
                        for u in objs:
                            idu = c.identity(u)
                            lhs = c.tensor_mor(c.compose(g, f), idu)
                            rhs = c.compose(c.tensor_mor(g, idu), c.tensor_mor(f, idu))
                            need(eq(lhs, rhs), "tensor functoriality", objects=(name(i), name(j), name(k), name(u)))
        for i in objs:
            d = c.dual(i)
            one = c.unit
            z1 = c.compose(c.whisker(i, c.ev(i), one), c.whisker(one, c.coev(i), i))
            need(eq(z1, c.identity(i)), "snake (ev, coev) on X", object=name(i))
            z2 = c.compose(c.whisker(one, c.ev(i), d), c.whisker(d, c.coev(i), one))
            need(eq(z2, c.identity(d)), "snake (ev, coev) on X*", object=name(i))
            z3 = c.compose(c.whisker(one, c.ev_tilde(i), i), c.whisker(i, c.coev_tilde(i), one))
            need(eq(z3, c.identity(i)), "snake (ev~, coev~) on X", object=name(i))
            z4 = c.compose(c.whisker(d, c.ev_tilde(i), one), c.whisker(one, c.coev_tilde(i), d))
            need(eq(z4, c.identity(d)), "snake (ev~, coev~) on X*", object=name(i))
        for i, j in product(objs, repeat=2):
            ai, aj = c.pivotal(i), c.pivotal(j)
            for f in bases[(i, j)]:
                ff = c.dual_mor(c.dual_mor(f))
                need(eq(c.compose(aj, f), c.compose(ff, ai)), "pivotal naturality", objects=(name(i), name(j)))
            xy = c.tensor(i, j)
            need(eq(c.pivotal(xy), c.tensor_mor(ai, aj)), "pivotal monoidality", objects=(name(i), name(j)))
        one = c.unit
        need(eq(c.ev(one), c.identity(one)) and eq(c.coev(one), c.identity(one)), "unit duality", object=name(one))
        need(eq(c.ev_tilde(one), c.identity(one)) and eq(c.coev_tilde(one), c.identity(one)), "unit duality", object=name(one))
        for i, j in product(objs, repeat=2) if getattr(c, "strict_duality", True) else ():
            xs, ys = c.dual(i), c.dual(j)
            xy = c.tensor(i, j)
            ev_n = c.compose(c.ev(j), c.whisker(ys, c.ev(i), j))
            need(eq(c.ev(xy), ev_n), "monoidal duality (ev)", objects=(name(i), name(j)))
            coev_n = c.compose(c.whisker(i, c.coev(j), xs), c.coev(i))
            need(eq(c.coev(xy), coev_n), "monoidal duality (coev)", objects=(name(i), name(j)))
            evt_n = c.compose(c.ev_tilde(i), c.whisker(i, c.ev_tilde(j), xs))
            need(eq(c.ev_tilde(xy), evt_n), "monoidal duality (ev~)", objects=(name(i), name(j)))
            coevt_n = c.compose(c.whisker(ys, c.coev_tilde(i), j), c.coev_tilde(j))
            need(eq(c.coev_tilde(xy), coevt_n), "monoidal duality (coev~)", objects=(name(i), name(j)))
    except _Fail as e:
        return ValidationReport(False, checked, e.check, e.witness)
    return ValidationReport(True, checked)

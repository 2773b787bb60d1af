"""Shared morphism types and the generic pivotal-category interface.

Concrete categories (table data, super modules, additive hulls) implement a
small set of primitives; every derived construction used by the diagram,
coend and skein layers lives on :class:`PivotalCategory` and only uses those
primitives.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from ..exactla import Field, solve

ROLES = ("S", "T", "I")


@dataclass(frozen=True, eq=False)
class MorphismVec:
    """A morphism given by its coefficients in the fixed basis of Hom(src, dst)."""

    src: int
    dst: int
    coeffs: np.ndarray

    def __repr__(self):
        return f"MorphismVec({self.src}->{self.dst}, {list(self.coeffs)})"


@dataclass(frozen=True)
class SubcategorySpec:
    """Full subcategory, recorded by object membership only."""

    members: tuple[int, ...]
    role: str = "S"

    def __post_init__(self):
        if not self.members:
            raise ValueError("a subcategory spec needs at least one member")
        if self.role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}, got {self.role!r}")
        object.__setattr__(self, "members", tuple(sorted(set(int(m) for m in self.members))))

    def __contains__(self, i):
        return i in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def with_role(self, role: str) -> "SubcategorySpec":
        return SubcategorySpec(self.members, role)


class AxiomError(Exception):
    """A category datum violates one of the pivotal-category axioms."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotTensorComplete(Exception):
    """An object does not split into the listed indecomposables."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


class PivotalCategory:
    """Interface plus derived structure for strict pivotal categories.

    Subclasses provide: ``fld``, ``unit``, ``listed``, ``name``, ``dual``,
    ``tensor``, ``hom_dim``, ``basis``, ``coords``, ``from_coords``,
    ``compose``, ``tensor_mor``, ``identity``, ``ev``, ``coev``,
    ``ev_tilde``, ``coev_tilde`` and ``decompose``.
    """

    fld: Field
    unit: int

    # -- linear structure -------------------------------------------------
    def zero(self, i: int, j: int):
        return self.from_coords(i, j, self.fld.zeros(self.hom_dim(i, j)))

    def lincomb(self, terms, src: int, dst: int):
        """``sum c * f`` over ``(c, f)`` pairs; all ``f`` must be src -> dst."""
        v = self.fld.zeros(self.hom_dim(src, dst))
        for c, f in terms:
            if (f.src, f.dst) != (src, dst):
                raise ValueError("lincomb of morphisms with different endpoints")
            v = self.fld.reduce(v + self.fld.scalar(c) * self.coords(f))
        return self.from_coords(src, dst, v)

    def scale(self, c, f):
        return self.lincomb([(c, f)], f.src, f.dst)

    def add(self, f, g):
        return self.lincomb([(1, f), (1, g)], f.src, f.dst)

    def sub(self, f, g):
        return self.lincomb([(1, f), (-1, g)], f.src, f.dst)

    def mor_equal(self, f, g) -> bool:
        return (f.src, f.dst) == (g.src, g.dst) and self.fld.equal(self.coords(f), self.coords(g))

    def is_zero_mor(self, f) -> bool:
        return self.fld.is_zero(self.coords(f))

    # -- words of objects ---------------------------------------------------
    def tensor_objects(self, objs) -> int:
        return reduce(self.tensor, objs, self.unit)

    def tensor_many(self, mors):
        return reduce(self.tensor_mor, mors)

    def compose_many(self, *mors):
        """``compose_many(h, g, f) = h o g o f``."""
        return reduce(self.compose, mors)

    def whisker(self, left: int, f, right: int):
        """``id_left (x) f (x) id_right``."""
        out = f
        if left != self.unit:
            out = self.tensor_mor(self.identity(left), out)
        if right != self.unit:
            out = self.tensor_mor(out, self.identity(right))
        return out

    def push_forward(self, g, dom: int) -> np.ndarray:
        """Matrix of ``Hom(dom, g.src) -> Hom(dom, g.dst)``, ``h -> g o h``, in hom bases."""
        bas = self.basis(dom, g.src)
        n_out = self.hom_dim(dom, g.dst)
        if not bas or n_out == 0:
            return self.fld.zeros((n_out, len(bas)))
        cols = [self.coords(self.compose(g, h)) for h in bas]
        return np.array(cols, dtype=self.fld.dtype).reshape(len(bas), n_out).T

    # -- duality --------------------------------------------------------------
    def dual_mor(self, f):
        """Left-dual transpose ``f* : dst* -> src*``."""
        x, y = f.src, f.dst
        xs, ys = self.dual(x), self.dual(y)
        step1 = self.whisker(ys, self.coev(x), self.unit)  # Y* -> Y* X X*
        step2 = self.whisker(ys, f, xs)  # Y* X X* -> Y* Y X*
        step3 = self.whisker(self.unit, self.ev(y), xs)  # Y* Y X* -> X*
        return self.compose_many(step3, step2, step1)

    def pivotal(self, x: int):
        """The pivotal automorphism ``X -> X** = X`` built from ev~ and coev."""
        xs = self.dual(x)
        a = self.whisker(x, self.coev(xs), self.unit)  # X -> X X* X
        b = self.whisker(self.unit, self.ev_tilde(x), x)  # X X* X -> X
        return self.compose(b, a)

    def dims(self, x: int):
        """``(dim_l, dim_r)`` as scalars."""
        left = self.compose(self.ev(x), self.coev_tilde(x))
        right = self.compose(self.ev_tilde(x), self.coev(x))
        return self.unit_scalar(left), self.unit_scalar(right)

    def unit_scalar(self, f):
        """Read an endomorphism of the unit as a scalar."""
        if (f.src, f.dst) != (self.unit, self.unit):
            raise ValueError("not an endomorphism of the unit")
        v = self.coords(f)
        idv = self.coords(self.identity(self.unit))
        if len(idv) != 1:
            raise ValueError("End(unit) is not one-dimensional")
        return self.fld.scalar(v[0] * self.fld.inv(idv[0]))

    # -- invertibility ----------------------------------------------------
    def is_invertible(self, f) -> bool:
        return self.inverse(f) is not None

    def inverse(self, f):
        """Two-sided inverse of ``f`` or ``None``."""
        x, y = f.src, f.dst
        bas = self.basis(y, x)
        if not bas:
            return None if self.hom_dim(x, x) or self.hom_dim(y, y) else self.zero(y, x)
        cols = [self.coords(self.compose(g, f)) for g in bas]
        target = self.coords(self.identity(x))
        sol = solve(np.array(cols, dtype=self.fld.dtype).T.reshape(len(target), len(bas)), target, self.fld)
        if sol is None:
            return None
        g = self.lincomb(list(zip(sol, bas)), y, x)
        if not self.mor_equal(self.compose(f, g), self.identity(y)):
            return None
        return g

    # -- listed objects ---------------------------------------------------
    def is_listed(self, i: int) -> bool:
        return i in self.listed

    def summands(self, i: int) -> list[int]:
        return [j for j, _, _ in self.decompose(i)]

"""Table-driven strict skeletal pivotal categories."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..exactla import Field
from .base import MorphismVec, PivotalCategory, SubcategorySpec


@dataclass(eq=False)
class CategoryDatum(PivotalCategory):
    """Finite strict skeletal presentation of a pivotal category.

    ``compose[(i, j, k)]`` has shape ``(hom(j,k), hom(i,j), hom(i,k))`` and
    gives the coefficients of ``g o f`` for basis ``g: j -> k``, ``f: i -> j``.
    ``tensor_mor[(i, i2, j, j2)]`` has shape
    ``(hom(i,i2), hom(j,j2), hom(i(x)j, i2(x)j2))``.
    """

    fld: Field
    objects: list[str]
    unit: int
    dual_table: list[int]
    tensor_table: list[list[int]]
    hom_dims: list[list[int]]
    compose_consts: dict = field(default_factory=dict)
    tensor_consts: dict = field(default_factory=dict)
    id_vecs: list = field(default_factory=list)
    ev_vecs: list = field(default_factory=list)
    coev_vecs: list = field(default_factory=list)
    ev_tilde_vecs: list = field(default_factory=list)
    coev_tilde_vecs: list = field(default_factory=list)
    subcats: dict = field(default_factory=dict)
    title: str = "datum"

    # the listed objects are the whole category
    complete_list = True

    # -- objects ------------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.objects)

    @property
    def listed(self) -> list[int]:
        return list(range(self.n))

    def name(self, i: int) -> str:
        return self.objects[i]

    def index(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise KeyError(f"unknown object {name!r}") from None

    def dual(self, i: int) -> int:
        return self.dual_table[i]

    def tensor(self, i: int, j: int) -> int:
        return self.tensor_table[i][j]

    def hom_dim(self, i: int, j: int) -> int:
        return self.hom_dims[i][j]

    # -- morphisms -------------------------------------------------------------
    def from_coords(self, i, j, v) -> MorphismVec:
        v = self.fld.reduce(np.asarray(v, dtype=self.fld.dtype).reshape(self.hom_dim(i, j)))
        return MorphismVec(i, j, v)

    def coords(self, f: MorphismVec) -> np.ndarray:
        return f.coeffs

    def basis(self, i: int, j: int) -> list[MorphismVec]:
        d = self.hom_dim(i, j)
        eye = self.fld.eye(d)
        return [MorphismVec(i, j, eye[k]) for k in range(d)]

    def identity(self, i: int) -> MorphismVec:
        return MorphismVec(i, i, self.id_vecs[i])

    def compose(self, g: MorphismVec, f: MorphismVec) -> MorphismVec:
        if f.dst != g.src:
            raise ValueError(f"cannot compose {self.name(g.src)}->{self.name(g.dst)} after {self.name(f.src)}->{self.name(f.dst)}")
        i, j, k = f.src, f.dst, g.dst
        out = self.hom_dim(i, k)
        if out == 0 or g.coeffs.size == 0 or f.coeffs.size == 0:
            return self.zero(i, k)
        c = self.compose_consts[(i, j, k)].reshape(-1, out)
        return MorphismVec(i, k, self.fld.matmul(self.fld.kron(g.coeffs, f.coeffs), c))

    def tensor_mor(self, f: MorphismVec, g: MorphismVec) -> MorphismVec:
        i, i2, j, j2 = f.src, f.dst, g.src, g.dst
        s, t = self.tensor(i, j), self.tensor(i2, j2)
        out = self.hom_dim(s, t)
        if out == 0 or f.coeffs.size == 0 or g.coeffs.size == 0:
            return self.zero(s, t)
        c = self.tensor_consts[(i, i2, j, j2)].reshape(-1, out)
        return MorphismVec(s, t, self.fld.matmul(self.fld.kron(f.coeffs, g.coeffs), c))

    def ev(self, i):
        return MorphismVec(self.tensor(self.dual(i), i), self.unit, self.ev_vecs[i])

    def coev(self, i):
        return MorphismVec(self.unit, self.tensor(i, self.dual(i)), self.coev_vecs[i])

    def ev_tilde(self, i):
        return MorphismVec(self.tensor(i, self.dual(i)), self.unit, self.ev_tilde_vecs[i])

    def coev_tilde(self, i):
        return MorphismVec(self.unit, self.tensor(self.dual(i), i), self.coev_tilde_vecs[i])

    def decompose(self, i: int):
        idm = self.identity(i)
        return [(i, idm, idm)]

    def subcat(self, name: str, role: str = "S") -> SubcategorySpec:
        return SubcategorySpec(self.subcats[name], role)

    def copy(self) -> "CategoryDatum":
        return CategoryDatum(
            self.fld,
            list(self.objects),
            self.unit,
            list(self.dual_table),
            [list(r) for r in self.tensor_table],
            [list(r) for r in self.hom_dims],
            {k: v.copy() for k, v in self.compose_consts.items()},
            {k: v.copy() for k, v in self.tensor_consts.items()},
            [v.copy() for v in self.id_vecs],
            [v.copy() for v in self.ev_vecs],
            [v.copy() for v in self.coev_vecs],
            [v.copy() for v in self.ev_tilde_vecs],
            [v.copy() for v in self.coev_tilde_vecs],
            {k: tuple(v) for k, v in self.subcats.items()},
            self.title,
        )


def build_graded_vect(n: int, pivotal_dims, fld: Field, title: str | None = None) -> CategoryDatum:
    """Pointed category of Z/n-graded vector spaces with a chosen pivotal character.

    Object ``X_k`` has right dimension ``pivotal_dims[k]`` and left dimension
    its inverse.  The dims must form a character of Z/n, otherwise the
    pivotal structure would not be monoidal.
    """
    if n < 1:
        raise ValueError("n must be positive")
    d = [fld.scalar(x) for x in pivotal_dims]
    if len(d) != n:
        raise ValueError(f"need {n} pivotal dims, got {len(d)}")
    for k, x in enumerate(d):
        if x == 0:
            raise ValueError(f"pivotal dim of X{k} is not invertible")
    for a in range(n):
        for b in range(n):
            if fld.scalar(d[a] * d[b]) != d[(a + b) % n]:
                raise ValueError(f"pivotal dims are not a character of Z/{n} (fails at {a}+{b})")
    one = fld.array([1])
    names = [f"X{k}" for k in range(n)]
    dual_table = [(-k) % n for k in range(n)]
    tensor_table = [[(a + b) % n for b in range(n)] for a in range(n)]
    hom = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    comp = {(k, k, k): fld.array([[[1]]]) for k in range(n)}
    tens = {(a, a, b, b): fld.array([[[1]]]) for a in range(n) for b in range(n)}
    return CategoryDatum(
        fld=fld,
        objects=names,
        unit=0,
        dual_table=dual_table,
        tensor_table=tensor_table,
        hom_dims=hom,
        compose_consts=comp,
        tensor_consts=tens,
        id_vecs=[one.copy() for _ in range(n)],
        ev_vecs=[one.copy() for _ in range(n)],
        coev_vecs=[one.copy() for _ in range(n)],
        ev_tilde_vecs=[fld.array([x]) for x in d],
        coev_tilde_vecs=[fld.array([fld.inv(x)]) for x in d],
        subcats={"all": tuple(range(n)), "unit": (0,)},
        title=title or f"graded_vect_{n}",
    )


def build_trivial(fld: Field) -> CategoryDatum:
    return build_graded_vect(1, [1], fld, title="trivial")


def build_z3_zeta(fld: Field, zeta=None) -> CategoryDatum:
    """Z/3-graded vector spaces with right dimensions ``(1, zeta, zeta^-1)``."""
    z = fld.root_of_unity(3) if zeta is None else fld.scalar(zeta)
    if fld.scalar(z**3) != 1 or z == 1:
        raise ValueError(f"{z} is not a primitive cube root of unity in {fld}")
    return build_graded_vect(3, [1, z, fld.inv(z)], fld, title="graded_vect_3_zeta")

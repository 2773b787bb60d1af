"""Coends and ends of finite bifunctors, closure invariance, horizontal traces.

A bifunctor ``F(i, j)`` is contravariant in ``i`` and covariant in ``j``.
Its coend over a list of objects is the cokernel of the dinaturality
relations ``tau_b(F(b, f) psi) - tau_a(F(f, a) psi)`` for basis morphisms
``f: a -> b`` and basis vectors ``psi`` of ``F(b, a)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .catdata.base import PivotalCategory
from .catdata.closure import retract_witness
from .exactla import QuotientSpace, Subspace, annihilator, rank

DEFAULT_BUDGET = 50_000


class BudgetExceeded(RuntimeError):
    def __init__(self, what, size, budget):
        super().__init__(f"{what} has size {size}, over the budget of {budget}")
        self.size = size
        self.budget = budget


class FunctorialityError(ValueError):
    pass


def _mat_of(c, fn, basis, out_dim):
    """Matrix (out_dim x len(basis)) whose columns are ``coords(fn(b))``."""
    if not basis or out_dim == 0:
        return c.fld.zeros((out_dim, len(basis)))
    return np.array([c.coords(fn(b)) for b in basis], dtype=c.fld.dtype).T.reshape(out_dim, len(basis))


@dataclass
class BifunctorPresentation:
    """``F`` given by its spaces and the two actions of morphisms.

    ``dim(i, j)`` is ``dim F(i, j)``; ``co(f, i)`` is the matrix of
    ``F(i, f): F(i, a) -> F(i, b)`` and ``contra(f, j)`` the matrix of
    ``F(f, j): F(b, j) -> F(a, j)`` for ``f: a -> b``.
    """

    c: PivotalCategory
    objects: list
    dim: object
    co: object
    contra: object
    name: str = "F"
    space_basis: object = None  # optional (i, j) -> list of basis elements, for provenance
    to_vec: object = None
    from_vec: object = None

    def restrict(self, objects) -> "BifunctorPresentation":
        return BifunctorPresentation(
            self.c, list(objects), self.dim, self.co, self.contra, self.name, self.space_basis, self.to_vec, self.from_vec
        )

    def check_functoriality(self, objects=None):
        """Raise :class:`FunctorialityError` on the first violated law."""
        c, fld = self.c, self.c.fld
        objs = list(self.objects if objects is None else objects)
        eq = fld.equal
        for a in objs:
            ida = c.identity(a)
            for i in objs:
                if not eq(self.co(ida, i), fld.eye(self.dim(i, a))):
                    raise FunctorialityError(f"{self.name}({c.name(i)}, id_{c.name(a)}) is not the identity")
                if not eq(self.contra(ida, i), fld.eye(self.dim(a, i))):
                    raise FunctorialityError(f"{self.name}(id_{c.name(a)}, {c.name(i)}) is not the identity")
        for a in objs:
            for b in objs:
                for f in c.basis(a, b):
                    for k in objs:
                        for g in c.basis(b, k):
                            gf = c.compose(g, f)
                            for i in objs:
                                lhs = self.co(gf, i)
                                rhs = fld.matmul(self.co(g, i), self.co(f, i))
                                if not eq(lhs, rhs):
                                    raise FunctorialityError(f"covariant action fails on a composite {c.name(a)}->{c.name(b)}->{c.name(k)}")
                                lhs = self.contra(gf, i)
                                rhs = fld.matmul(self.contra(f, i), self.contra(g, i))
                                if not eq(lhs, rhs):
                                    raise FunctorialityError(f"contravariant action fails on a composite {c.name(a)}->{c.name(b)}->{c.name(k)}")
                    for a2 in objs:
                        for b2 in objs:
                            for h in c.basis(a2, b2):
                                # both paths F(b2, a) -> F(a2, b)
                                one = fld.matmul(self.co(f, a2), self.contra(h, a))
                                two = fld.matmul(self.contra(h, b), self.co(f, b2))
                                if not eq(one, two):
                                    raise FunctorialityError("left and right actions do not commute")


@dataclass
class CoendResult:
    quotient: QuotientSpace
    offsets: dict
    sizes: dict
    relations: np.ndarray
    presentation: BifunctorPresentation
    restricted: bool = False
    labels: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def ambient_dim(self) -> int:
        return self.quotient.ambient_dim

    @property
    def relation_count(self) -> int:
        return self.relations.shape[0]

    def tau(self, i: int, vec) -> np.ndarray:
        """Ambient vector of ``vec`` in the summand ``F(i, i)``."""
        fld = self.presentation.c.fld
        out = fld.zeros(self.ambient_dim)
        off = self.offsets[i]
        out[off : off + self.sizes[i]] = np.asarray(vec, dtype=fld.dtype).reshape(-1)
        return out

    def class_of(self, i: int, vec) -> np.ndarray:
        """Quotient coordinates of ``vec in F(i, i)``.

        Objects outside the list are split along their decomposition into
        listed summands ``i = sum_k z_k`` and contribute ``F(pi_k, iota_k)``.
        """
        if i in self.offsets:
            return self.quotient(self.tau(i, vec))
        F = self.presentation
        c, fld = F.c, F.c.fld
        total = fld.zeros(self.dim)
        vec = np.asarray(vec, dtype=fld.dtype).reshape(-1)
        for z, iota, pi in c.decompose(i):
            if z not in self.offsets:
                raise KeyError(f"summand {c.name(z)} of {c.name(i)} lies outside the coend list")
            piece = fld.matmul(F.co(pi, z), fld.matmul(F.contra(iota, i), vec))
            total = fld.reduce(total + self.quotient(self.tau(z, piece)))
        return total

    def summary(self) -> dict:
        c = self.presentation.c
        return {
            "objects": [c.name(i) for i in self.offsets],
            "ambient": self.ambient_dim,
            "relations": self.relation_count,
            "dim": self.dim,
            "label": "generator-restricted" if self.restricted else "complete",
        }


def dump_coend(res: CoendResult) -> str:
    """Structured text: provenance of ambient coordinates, counts and representative vectors."""
    c = res.presentation.c
    fld = c.fld
    lines = [f"coend {res.presentation.name}", f"field {fld}", f"label {res.summary()['label']}"]
    for i in res.offsets:
        lines.append(f"slot {c.name(i)} offset {res.offsets[i]} size {res.sizes[i]}")
    lines.append(f"ambient {res.ambient_dim}")
    lines.append(f"relations {res.relation_count}")
    lines.append(f"dim {res.dim}")
    for row in res.quotient.rep_basis:
        lines.append("rep " + " ".join(fld.fmt(x) for x in row))
    lines.append("end")
    return "\n".join(lines) + "\n"


def relation_matrix(F: BifunctorPresentation, objects=None):
    """Rows ``tau_b(F(b, f) psi) - tau_a(F(f, a) psi)``, with offsets and sizes."""
    c, fld = F.c, F.c.fld
    objs = list(F.objects if objects is None else objects)
    offsets, sizes, n = {}, {}, 0
    for i in objs:
        offsets[i] = n
        sizes[i] = F.dim(i, i)
        n += sizes[i]
    rows = []
    for a in objs:
        for b in objs:
            dba = F.dim(b, a)
            if dba == 0:
                continue
            for f in c.basis(a, b):
                left = F.co(f, b)  # F(b, a) -> F(b, b)
                right = F.contra(f, a)  # F(b, a) -> F(a, a)
                block = fld.zeros((dba, n))
                block[:, offsets[b] : offsets[b] + sizes[b]] = left.T
                block[:, offsets[a] : offsets[a] + sizes[a]] = fld.reduce(block[:, offsets[a] : offsets[a] + sizes[a]] - right.T)
                rows.append(block)
    rel = np.vstack(rows) if rows else fld.zeros((0, n))
    return fld.reduce(rel), offsets, sizes


def coend(F: BifunctorPresentation, objects=None, check: bool = True, budget: int = DEFAULT_BUDGET, restricted=None) -> CoendResult:
    objs = list(F.objects if objects is None else objects)
    ambient = sum(F.dim(i, i) for i in objs)
    if ambient > budget:
        raise BudgetExceeded("coend ambient space", ambient, budget)
    if check:
        F.check_functoriality(objs)
    rel, offsets, sizes = relation_matrix(F, objs)
    if rel.shape[0] > budget * 4:
        raise BudgetExceeded("coend relation list", rel.shape[0], budget * 4)
    q = QuotientSpace.of(Subspace.span(rel, ambient, F.c.fld))
    if restricted is None:
        restricted = not getattr(F.c, "complete_list", False)
    return CoendResult(q, offsets, sizes, rel, F.restrict(objs), restricted)


def end_dual(F: BifunctorPresentation, objects=None, check: bool = True, budget: int = DEFAULT_BUDGET) -> Subspace:
    """Families of functionals on ``sum F(i, i)`` that are dinatural, i.e. vanish on every relation."""
    res = coend(F, objects, check, budget)
    return annihilator(res.quotient.relations)


# -- standard bifunctors ------------------------------------------------------------------


def twisted_hom(c: PivotalCategory, objects, v: int | None = None, w: int | None = None) -> BifunctorPresentation:
    """``F(i, j) = Hom(i (x) v, w (x) j)``; with ``v = w = 1`` this is the Hom bifunctor."""
    v = c.unit if v is None else v
    w = c.unit if w is None else w

    def dim(i, j):
        return c.hom_dim(c.tensor(i, v), c.tensor(w, j))

    def co(f, i):
        src = c.tensor(i, v)
        lift = c.whisker(w, f, c.unit)
        return _mat_of(c, lambda psi: c.compose(lift, psi), c.basis(src, c.tensor(w, f.src)), dim(i, f.dst))

    def contra(f, j):
        lift = c.whisker(c.unit, f, v)
        return _mat_of(c, lambda psi: c.compose(psi, lift), c.basis(c.tensor(f.dst, v), c.tensor(w, j)), dim(f.src, j))

    return BifunctorPresentation(c, list(objects), dim, co, contra, name=f"Hom(-{c.name(v)}, {c.name(w)}-)")


def hom_bifunctor(c: PivotalCategory, objects) -> BifunctorPresentation:
    return twisted_hom(c, objects)


def constant_bifunctor(c: PivotalCategory, objects, n: int) -> BifunctorPresentation:
    """Every space is ``k^n`` and every morphism acts by its unit scalar (or identity for isos)."""
    fld = c.fld
    return BifunctorPresentation(
        c, list(objects), lambda i, j: n, lambda f, i: fld.eye(n), lambda f, j: fld.eye(n), name=f"const{n}"
    )


# -- closure invariance ---------------------------------------------------------------------


@dataclass
class ClosureVerdict:
    isomorphic: bool
    dim_generators: int
    dim_list: int
    rank_xi: int
    missing_witness: list = field(default_factory=list)
    counterexample: object = None

    def summary(self) -> dict:
        return {
            "isomorphic": self.isomorphic,
            "dim_generators": self.dim_generators,
            "dim_list": self.dim_list,
            "rank_xi": self.rank_xi,
            "missing_witness": self.missing_witness,
        }


def _has_witness(c, x, gens):
    if x in gens:
        return True
    try:
        parts = c.decompose(x)
    except Exception:
        parts = None
    if parts and all(z in gens for z, _, _ in parts):
        return True
    return any(retract_witness(c, x, g) is not None for g in gens)


def closure_invariance_check(F: BifunctorPresentation, generators, budget: int = DEFAULT_BUDGET) -> ClosureVerdict:
    """Compare the coend over ``generators`` with the coend over ``F.objects``.

    The comparison map sends a generator class to the same vector in the
    larger list; it is an isomorphism when its rank equals both dimensions.
    """
    c, fld = F.c, F.c.fld
    gens = [g for g in F.objects if g in set(generators)]
    missing = [c.name(x) for x in F.objects if not _has_witness(c, x, gens)]
    small = coend(F, gens, budget=budget)
    big = coend(F, budget=budget)
    # xi on quotient coordinates: images of the small quotient's representatives
    reps = small.quotient.rep_basis
    imgs = []
    for r in reps:
        acc = fld.zeros(big.dim)
        for i in gens:
            off, sz = small.offsets[i], small.sizes[i]
            piece = np.asarray(r[off : off + sz], dtype=fld.dtype)
            if not fld.is_zero(piece):
                acc = fld.reduce(acc + big.class_of(i, piece))
        imgs.append(acc)
    xi = np.array(imgs, dtype=fld.dtype).T.reshape(big.dim, len(reps)) if len(reps) else fld.zeros((big.dim, 0))
    r = rank(xi, fld) if xi.size else 0
    iso = r == small.dim == big.dim and not missing
    counter = None
    if not iso:
        counter = {"dims": (small.dim, big.dim), "rank": r}
    return ClosureVerdict(iso, small.dim, big.dim, r, missing, counter)


# -- horizontal traces ---------------------------------------------------------------------------


@dataclass
class HtrHom:
    """``htr(B1, B2)``: the coend over ``X`` of ``Hom(X (x) B1, B2 (x) X)``."""

    c: PivotalCategory
    b1: int
    b2: int
    result: CoendResult

    @property
    def dim(self):
        return self.result.dim

    @property
    def quotient(self):
        return self.result.quotient

    def class_of(self, x: int, psi) -> np.ndarray:
        return self.result.class_of(x, self.c.coords(psi))

    def lift(self, cls):
        """A representative ``(x, psi)`` list for quotient coordinates ``cls``."""
        c, fld = self.c, self.c.fld
        amb = fld.zeros(self.result.ambient_dim)
        for k, v in enumerate(np.asarray(cls, dtype=fld.dtype)):
            if v != 0:
                amb = fld.reduce(amb + v * self.result.quotient.rep_basis[k])
        out = []
        for x, off in self.result.offsets.items():
            sz = self.result.sizes[x]
            piece = amb[off : off + sz]
            if not fld.is_zero(piece):
                out.append((x, c.from_coords(c.tensor(x, self.b1), c.tensor(self.b2, x), piece)))
        return out


def htr_hom(c: PivotalCategory, objects, b1: int, b2: int, check: bool = False, budget: int = DEFAULT_BUDGET) -> HtrHom:
    F = twisted_hom(c, objects, b1, b2)
    return HtrHom(c, b1, b2, coend(F, check=check, budget=budget))


def htr_compose_reps(c: PivotalCategory, x: int, psi1, y: int, psi2):
    """``(psi2 <| x) o (y |> psi1)``: from ``(y x) B1`` to ``B3 (y x)``.

    ``psi1: x B1 -> B2 x`` and ``psi2: y B2 -> B3 y``.
    """
    first = c.whisker(y, psi1, c.unit)
    if first.dst != psi2.src and c.tensor(psi2.src, x) != first.dst:
        raise ValueError("htr composition: middle boundary values do not match")
    second = c.whisker(c.unit, psi2, x)
    return c.compose(second, first)


def htr_compose(h1: HtrHom, h2: HtrHom, cls1, cls2):
    """Class of ``[psi2] o [psi1]`` in ``htr(B1, B3)``, with that target space."""
    c = h1.c
    if h1.b2 != h2.b1:
        raise ValueError("htr classes are not composable")
    target = htr_hom(c, list(h1.result.offsets), h1.b1, h2.b2)
    fld = c.fld
    total = fld.zeros(target.dim)
    for x, p1 in h1.lift(cls1):
        for y, p2 in h2.lift(cls2):
            comp = htr_compose_reps(c, x, p1, y, p2)
            total = fld.reduce(total + target.result.class_of(c.tensor(y, x), c.coords(comp)))
    return total, target


def htr_unit_class(h: HtrHom) -> np.ndarray:
    """``[id_B]`` placed at the unit object, the image of ``id`` under the embedding."""
    c = h.c
    return h.result.class_of(c.unit, c.coords(c.identity(h.b1)))

"""Annulus, closed disc and sphere presentations; traces and modified traces."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..catdata.base import PivotalCategory, SubcategorySpec
from ..catdata.closure import ideal_closure
from ..coend import hom_bifunctor, coend
from ..diagram import ptr_l, ptr_r
from ..exactla import Subspace, annihilator, rank, solve
from .presentation import SkeinPresentation, refine

GENERATOR_RESTRICTED = "generator-restricted"
NOT_CLOSED = "not-closed"


def _members(c, s) -> list:
    return list(s.members if isinstance(s, SubcategorySpec) else s)


def annulus_HH0(c: PivotalCategory, ideal, check: bool = False) -> SkeinPresentation:
    """``sum_{x in I} End(x)`` modulo commutators ``fg - gf``."""
    members = _members(c, ideal)
    labels = []
    spec = SubcategorySpec(tuple(members), "I")
    if ideal_closure(c, spec).members != spec.members:
        labels.append(NOT_CLOSED)
    res = coend(hom_bifunctor(c, members), check=check)
    if res.restricted:
        labels.append(GENERATOR_RESTRICTED)
    prov = []
    for x in members:
        prov.extend((c.name(x), k) for k in range(res.sizes[x]))
    return SkeinPresentation(res.quotient, prov, labels, "annulus", res)


def loop_class(p: SkeinPresentation, x: int, f) -> np.ndarray:
    """Class of the core loop coloured ``x`` with a vertex ``f in End(x)``."""
    c = p.base.presentation.c
    if f.src != x or f.dst != x:
        raise ValueError("loop label must be an endomorphism of the loop colour")
    if c.is_listed(x) and x not in p.base.offsets:
        raise ValueError(f"{c.name(x)} is not a member of the ideal")
    return p.class_of(x, c.coords(f))


def _hh0_relations(p: SkeinPresentation, side: str, partners=None):
    """``[f] - [ptr(f)]`` for listed ``x``, ``v`` in the ideal, basis ``f``; in HH0 coordinates."""
    c = p.base.presentation.c
    members = list(p.base.offsets)
    partners = c.listed if partners is None else partners
    rows = []
    for x in partners:
        for v in members:
            if side == "left":
                obj = c.tensor(x, v)
                for f in c.basis(obj, obj):
                    t = ptr_l(c, f, x, v, v)
                    rows.append(_diff(p, obj, f, v, t))
            else:
                obj = c.tensor(v, x)
                for f in c.basis(obj, obj):
                    t = ptr_r(c, f, x, v, v)
                    rows.append(_diff(p, obj, f, v, t))
    return rows


def _diff(p, obj, f, v, t):
    c = p.base.presentation.c
    a = p.base.class_of(obj, c.coords(f))
    b = p.base.class_of(v, c.coords(t))
    return c.fld.reduce(a - b)


def nl_relations(p: SkeinPresentation, partners=None) -> list:
    return _hh0_relations(p, "left", partners)


def nr_relations(p: SkeinPresentation, partners=None) -> list:
    return _hh0_relations(p, "right", partners)


def _lift(p: SkeinPresentation, rows):
    fld = p.quotient.fld
    if not rows:
        return fld.zeros((0, p.ambient_dim))
    return fld.matmul(np.array(rows, dtype=fld.dtype), p.base.quotient.rep_basis)


def disc_closed_skein(c: PivotalCategory, ideal) -> SkeinPresentation:
    """Annulus modulo left partial-trace relations."""
    ann = annulus_HH0(c, ideal)
    return refine(ann, _lift(ann, nl_relations(ann)), "disc")


def sphere_skein(c: PivotalCategory, ideal) -> SkeinPresentation:
    """Annulus modulo both partial-trace relation families."""
    ann = annulus_HH0(c, ideal)
    rows = nl_relations(ann) + nr_relations(ann)
    return refine(ann, _lift(ann, rows), "sphere")


# -- functionals ------------------------------------------------------------------------------


@dataclass
class TraceSpace:
    """Dinatural functionals, stored in the coordinates of the annulus quotient.

    ``basis`` rows are functionals on HH0 coordinates; :meth:`value` evaluates
    one on ``f in End(x)``.
    """

    annulus: SkeinPresentation
    space: Subspace
    side: str = "trace"
    labels: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self):
        return self.space.basis

    def value(self, k: int, x: int, f) -> object:
        c = self.annulus.base.presentation.c
        cls = self.annulus.base.class_of(x, c.coords(f))
        return c.fld.matmul(self.space.basis[k], cls)

    def ambient_functionals(self) -> np.ndarray:
        """Coefficient lists on ``sum_x End(x)`` in the hom bases."""
        q = self.annulus.base.quotient
        if self.dim == 0:
            return q.fld.zeros((0, q.ambient_dim))
        return q.fld.matmul(self.space.basis, q.project)


def trace_space(c: PivotalCategory, ideal) -> TraceSpace:
    ann = annulus_HH0(c, ideal)
    return TraceSpace(ann, Subspace.full(ann.dim, c.fld), "trace", ann.labels)


def mtrace_space(c: PivotalCategory, ideal, side: str = "right") -> TraceSpace:
    """Traces with the right (``ptr_r``), left (``ptr_l``) or both partial-trace properties."""
    if side not in ("left", "right", "two_sided"):
        raise ValueError(f"side must be left, right or two_sided, got {side!r}")
    ann = annulus_HH0(c, ideal)
    rows = []
    if side in ("right", "two_sided"):
        rows += nr_relations(ann)
    if side in ("left", "two_sided"):
        rows += nl_relations(ann)
    rel = Subspace.span(np.array(rows, dtype=c.fld.dtype) if rows else c.fld.zeros((0, ann.dim)), ann.dim, c.fld)
    return TraceSpace(ann, annihilator(rel), side, ann.labels)


def partial_trace_defects(t: TraceSpace, partners=None):
    """Failures of ``t(f) = t(ptr(f))`` over basis ``f`` of ``End(v x)`` / ``End(x v)``.

    Returns a list of ``(functional index, v, x, basis index)``; empty means
    every functional satisfies its defining identities.
    """
    ann = t.annulus
    c = ann.base.presentation.c
    partners = c.listed if partners is None else partners
    sides = {"right": ("right",), "left": ("left",), "two_sided": ("left", "right"), "trace": ()}[t.side]
    bad = []
    for k in range(t.dim):
        for v in ann.base.offsets:
            for x in partners:
                for s in sides:
                    obj = c.tensor(v, x) if s == "right" else c.tensor(x, v)
                    for n, f in enumerate(c.basis(obj, obj)):
                        g = ptr_r(c, f, x, v, v) if s == "right" else ptr_l(c, f, x, v, v)
                        if t.value(k, obj, f) != t.value(k, v, g):
                            bad.append((k, c.name(v), c.name(x), s, n))
    return bad


def cyclicity_defects(t: TraceSpace):
    """Failures of ``t(gf) = t(fg)`` over basis pairs between ideal members."""
    ann = t.annulus
    c = ann.base.presentation.c
    mem = list(ann.base.offsets)
    bad = []
    for k in range(t.dim):
        for a in mem:
            for b in mem:
                for f in c.basis(a, b):
                    for g in c.basis(b, a):
                        if t.value(k, a, c.compose(g, f)) != t.value(k, b, c.compose(f, g)):
                            bad.append((k, c.name(a), c.name(b)))
    return bad


# -- loop independence ------------------------------------------------------------------------


@dataclass
class LoopCertificate:
    objects: list
    commutators_ok: dict
    identity_outside_image: dict
    rank: int
    annulus_dim: int

    @property
    def certified(self) -> list:
        return [x for x in self.objects if self.commutators_ok[x] and self.identity_outside_image[x]]

    @property
    def passed(self) -> bool:
        return len(self.certified) == len(self.objects) and self.rank == len(self.objects)

    def summary(self) -> dict:
        return {
            "objects": self.objects,
            "commutators_non_invertible": self.commutators_ok,
            "identity_outside_image": self.identity_outside_image,
            "rank": self.rank,
            "annulus_dim": self.annulus_dim,
            "passed": self.passed,
        }


def loop_independence_certificate(c: PivotalCategory, J, ideal=None) -> LoopCertificate:
    """Certify that the identity loops on ``J`` are linearly independent.

    (a) commutators of basis endomorphisms are non-invertible; (b) ``id_x``
    is not a sum of composites through the other members of ``J`` plus
    commutators; (c) the loop classes have full rank in the annulus over
    ``ideal`` (default: ideal closure of ``J``).
    """
    J = _members(c, J)
    fld = c.fld
    comm_ok, outside = {}, {}
    for x in J:
        ends = c.basis(x, x)
        ok = True
        span = []
        for a in ends:
            for b in ends:
                com = c.sub(c.compose(a, b), c.compose(b, a))
                if c.is_invertible(com):
                    ok = False
                span.append(c.coords(com))
        for y in J:
            if y == x:
                continue
            for f in c.basis(y, x):
                for g in c.basis(x, y):
                    span.append(c.coords(c.compose(f, g)))
        comm_ok[c.name(x)] = ok
        idv = c.coords(c.identity(x))
        if span:
            m = np.array(span, dtype=fld.dtype).T
            outside[c.name(x)] = solve(m, idv, fld) is None
        else:
            outside[c.name(x)] = not fld.is_zero(idv)
    ideal = ideal_closure(c, SubcategorySpec(tuple(J), "I")) if ideal is None else ideal
    ann = annulus_HH0(c, ideal)
    vecs = [loop_class(ann, x, c.identity(x)) for x in J]
    r = rank(np.array(vecs, dtype=fld.dtype), fld) if vecs and ann.dim else 0
    return LoopCertificate([c.name(x) for x in J], comm_ok, outside, r, ann.dim)

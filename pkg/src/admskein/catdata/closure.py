"""Ideal and tensor-dual closures, and retract witnesses."""
from __future__ import annotations

import numpy as np

from ..exactla import Subspace, solve
from .base import PivotalCategory, SubcategorySpec


def composites_through(c: PivotalCategory, j: int, y: int):
    """All ``g o f`` for basis ``f: j -> y`` and ``g: y -> j``, with their factors."""
    fs, gs = c.basis(j, y), c.basis(y, j)
    return [(f, g, c.compose(g, f)) for f in fs for g in gs]


def factors_through(c: PivotalCategory, j: int, pool) -> bool:
    """Whether ``id_j`` lies in the span of composites through objects of ``pool``.

    This is the linear criterion for ``j`` being a retract of a finite direct
    sum of pool objects.
    """
    if j in pool:
        return True
    idv = c.coords(c.identity(j))
    vecs = []
    for y in pool:
        vecs.extend(c.coords(gf) for _, _, gf in composites_through(c, j, y))
    if not vecs:
        return c.fld.is_zero(idv)
    return Subspace.span(np.array(vecs, dtype=c.fld.dtype), len(idv), c.fld).contains(idv)


def _candidates(c: PivotalCategory, current, partners):
    pool = list(current)
    for i in current:
        pool.append(c.dual(i))
        for k in partners:
            pool.append(c.tensor(i, k))
            pool.append(c.tensor(k, i))
    return list(dict.fromkeys(pool))


def closure(c: PivotalCategory, s: SubcategorySpec, kind: str = "ideal", role: str | None = None) -> SubcategorySpec:
    """Closure of ``s`` within the listed objects.

    ``kind='ideal'`` tensors with every listed object; ``kind='tensor_dual'``
    only with current members.  Each round adds every listed object whose
    identity factors through the candidate pool (sum-retract step), until a
    fixpoint is reached.
    """
    if kind not in ("ideal", "tensor_dual"):
        raise ValueError(f"unknown closure kind {kind!r}")
    current = list(dict.fromkeys(s.members))
    while True:
        partners = c.listed if kind == "ideal" else current
        pool = _candidates(c, current, partners)
        added = [j for j in c.listed if j not in current and factors_through(c, j, pool)]
        if not added:
            break
        current = current + added
    return SubcategorySpec(tuple(current), role or ("I" if kind == "ideal" else s.role))


def ideal_closure(c: PivotalCategory, s: SubcategorySpec) -> SubcategorySpec:
    return closure(c, s, "ideal")


def tensor_dual_closure(c: PivotalCategory, s: SubcategorySpec) -> SubcategorySpec:
    return closure(c, s, "tensor_dual")


def retract_witness(c: PivotalCategory, j: int, i: int):
    """``(iota: j -> i, pi: i -> j)`` with ``pi o iota = id_j``, or ``None``.

    The linear criterion decides existence over direct sums of ``i``; the
    search then tries single basis pairs, followed by one round of pairing
    each basis morphism with the solved combination on the other side.
    """
    if i == j:
        idm = c.identity(j)
        return idm, idm
    trip = composites_through(c, j, i)
    if not trip:
        return None
    idv = c.coords(c.identity(j))
    mat = np.array([c.coords(gf) for _, _, gf in trip], dtype=c.fld.dtype).T
    coef = solve(mat, idv, c.fld)
    if coef is None:
        return None

    def finish(f, g):
        gf = c.compose(g, f)
        inv = c.inverse(gf)
        if inv is None:
            return None
        return f, c.compose(inv, g)

    for f, g, _ in trip:
        w = finish(f, g)
        if w:
            return w
    fs, gs = c.basis(j, i), c.basis(i, j)
    k = 0
    weights = {}
    for f in range(len(fs)):
        for g in range(len(gs)):
            weights[(f, g)] = coef[k]
            k += 1
    for a, f in enumerate(fs):
        g = c.lincomb([(weights[(a, b)], gs[b]) for b in range(len(gs))], i, j)
        w = finish(f, g)
        if w:
            return w
    for b, g in enumerate(gs):
        f = c.lincomb([(weights[(a, b)], fs[a]) for a in range(len(fs))], j, i)
        w = finish(f, g)
        if w:
            return w
    return None

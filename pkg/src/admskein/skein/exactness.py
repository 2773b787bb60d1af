"""Boundary values outside the ideal, through projective presentations.

For ``Q -> P -> X -> 0`` exact with ``P`` and ``Q`` built from ideal objects,
the skein module with an outward point coloured ``X`` is the cokernel of
the induced map ``SN(Q) -> SN(P)``.  ``Q`` may be a direct sum; it is
passed as a list of maps ``Q_k -> P``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..catdata.base import PivotalCategory
from ..coend import DEFAULT_BUDGET
from ..exactla import kernel_basis, rank
from .surface import (
    InducedMap,
    Label,
    SurfaceSpec,
    _closed_list,
    _normalise,
    cokernel_dim,
    skein_on_morphism,
    surface_skein,
)


@dataclass
class ProjectivePresentation:
    target: int
    cover: int
    epi: object
    relations: list  # morphisms Q_k -> cover

    def describe(self, c) -> str:
        qs = " + ".join(c.name(q.src) for q in self.relations) or "0"
        return f"{qs} -> {c.name(self.cover)} -> {c.name(self.target)} -> 0"


def check_exact(c: PivotalCategory, pres: ProjectivePresentation) -> bool:
    """Exactness on underlying vector spaces (super modules) or on ``Hom(y, -)`` for listed ``y``."""
    fld = c.fld
    for q in pres.relations:
        if not c.is_zero_mor(c.compose(pres.epi, q)):
            return False
    if hasattr(pres.epi, "mat"):
        d_x, d_p = pres.epi.mat.shape
        if rank(pres.epi.mat, fld) != d_x:
            return False
        mats = [q.mat for q in pres.relations]
        img = rank(np.hstack(mats), fld) if mats else 0
        return img == d_p - d_x
    for y in c.listed:
        hp = c.basis(y, pres.cover)
        if not hp:
            continue
        pushed = np.array([c.coords(c.compose(pres.epi, g)) for g in hp], dtype=fld.dtype).reshape(len(hp), -1)
        ker = kernel_basis(pushed.T, fld) if pushed.shape[1] else None
        kdim = len(hp) if ker is None else ker.dim
        imgs = [c.coords(c.compose(q, h)) for q in pres.relations for h in c.basis(y, q.src)]
        r = rank(np.array(imgs, dtype=fld.dtype), fld) if imgs else 0
        if r != kdim:
            return False
    return True


def projective_presentation(c: PivotalCategory, x: int, cover: int, relation_sources) -> ProjectivePresentation:
    """Pick a surjection ``cover -> x`` and all of its syzygies from the given sources.

    Each source object ``Q`` contributes one summand per basis vector of the
    kernel of ``Hom(Q, cover) -> Hom(Q, x)``.
    """
    fld = c.fld
    epi = None
    for g in c.basis(cover, x):
        if hasattr(g, "mat") and rank(g.mat, fld) == g.mat.shape[0]:
            epi = g
            break
        if not hasattr(g, "mat"):
            epi = g
            break
    if epi is None:
        raise ValueError(f"no surjection {c.name(cover)} -> {c.name(x)} among basis maps")
    rels = []
    for q in relation_sources:
        hb = c.basis(q, cover)
        if not hb:
            continue
        push = np.array([c.coords(c.compose(epi, h)) for h in hb], dtype=fld.dtype).reshape(len(hb), -1)
        if push.shape[1] == 0:
            vecs = fld.eye(len(hb))
        else:
            vecs = kernel_basis(push.T, fld).basis
        for v in vecs:
            rels.append(c.lincomb(list(zip(v, hb)), q, cover))
    pres = ProjectivePresentation(x, cover, epi, rels)
    if not check_exact(c, pres):
        raise ValueError(f"{pres.describe(c)} is not exact")
    return pres


@dataclass
class NonprojectiveResult:
    dim: int
    cover_dim: int
    image_rank: int
    direct_dim: int | None
    maps: list
    presentation: ProjectivePresentation

    def summary(self, c) -> dict:
        return {
            "presentation": self.presentation.describe(c),
            "cokernel_dim": self.dim,
            "cover_skein_dim": self.cover_dim,
            "image_rank": self.image_rank,
            "direct_dim": self.direct_dim,
            "agree": self.direct_dim is None or self.direct_dim == self.dim,
        }


def skein_nonprojective(
    c: PivotalCategory, spec: SurfaceSpec, slot, pres: ProjectivePresentation,
    direct: bool = True, budget: int = DEFAULT_BUDGET,
) -> NonprojectiveResult:
    """Cokernel route for the outward point ``slot``, optionally compared to a direct cut."""
    spec = _normalise(c, spec)
    k, j = slot
    lab = spec.boundary[k][j]
    if not lab.out:
        raise ValueError("the cokernel route needs an outward point")
    if lab.obj != pres.target:
        raise ValueError(f"slot is coloured {c.name(lab.obj)}, presentation targets {c.name(pres.target)}")
    ideal = _closed_list(c, spec.S)
    objs = [pres.cover] + [q.src for q in pres.relations]
    others = [l.obj for b_i, b in enumerate(spec.boundary) for l_i, l in enumerate(b) if (b_i, l_i) != (k, j)]
    cut = not any(o in ideal for o in others) and not all(o in ideal for o in objs)
    cover_spec = spec.with_label(k, j, Label(pres.cover, True))
    maps: list[InducedMap] = []
    for q in pres.relations:
        qs = spec.with_label(k, j, Label(q.src, True))
        maps.append(skein_on_morphism(c, qs, slot, q, budget, cut=cut))
    target = maps[0].target if maps else surface_skein(
        c, SurfaceSpec(cover_spec.genus, cover_spec.boundary, cover_spec.S, cover_spec.T, cover_spec.schedule, cut), budget
    )
    dim = cokernel_dim(maps, target)
    direct_dim = None
    if direct:
        forced = SurfaceSpec(spec.genus, spec.boundary, spec.S, spec.T, spec.schedule, True)
        direct_dim = surface_skein(c, forced, budget).dim
    return NonprojectiveResult(dim, target.dim, target.dim - dim, direct_dim, maps, pres)


def glue_disc_map(c: PivotalCategory, psi, phi, v: int, x: int):
    """``(id_v (x) ev_x) o (psi (x) phi)`` for ``psi: 1 -> v (x) x*`` and ``phi: 1 -> x``.

    Gluing a disc carrying ``phi`` onto the cut piece ``psi``.
    """
    xs = c.dual(x)
    if psi.dst != c.tensor(v, xs) or phi.dst != x:
        raise ValueError("glue_disc_map: psi must land in v (x) x* and phi in x")
    return c.compose(c.whisker(v, c.ev(x), c.unit), c.tensor_mor(psi, phi))

"""Surfaces as coends over glued disc pieces.

A surface is cut into discs ("pieces").  Each piece has a cyclic boundary
word made of boundary labels and coend variables; every variable occurs
once as ``+`` (colour ``X``) and once as ``-`` (colour ``X*``).  The skein
module is the quotient of

    sum over colourings  (x)_pieces  Hom(1, word)

by dinaturality in each variable: for ``f: x -> y`` and a spanning vector
with ``x`` at the ``+`` slot and ``y*`` at the ``-`` slot, ``f`` applied at
the ``+`` slot equals its dual applied at the ``-`` slot.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from ..catdata.base import PivotalCategory, SubcategorySpec
from ..catdata.closure import ideal_closure
from ..coend import DEFAULT_BUDGET, BudgetExceeded, coend, twisted_hom
from ..exactla import QuotientSpace, Subspace, rank
from .presentation import SkeinPresentation, tensor_presentations
from .traces import GENERATOR_RESTRICTED, disc_closed_skein, sphere_skein


class AdmissibilityError(ValueError):
    pass


@dataclass(frozen=True)
class Label:
    """A marked point coloured ``obj``; ``out=False`` means oriented inwards (colour ``obj*``)."""

    obj: int
    out: bool = True

    def colour(self, c) -> int:
        return self.obj if self.out else c.dual(self.obj)


def boundary_value(c: PivotalCategory, spec) -> tuple:
    """Parse ``'L+ P1-'`` style text, or pass through a sequence of labels."""
    if isinstance(spec, str):
        out = []
        for tok in spec.split():
            if tok[-1] not in "+-":
                raise ValueError(f"label {tok!r} must end in + or -")
            out.append(Label(c.index(tok[:-1]), tok[-1] == "+"))
        return tuple(out)
    return tuple(x if isinstance(x, Label) else Label(*x) if isinstance(x, tuple) else Label(int(x)) for x in spec)


@dataclass
class SurfaceSpec:
    genus: int = 0
    boundary: list = field(default_factory=list)  # list of label tuples, one per circle
    S: SubcategorySpec | None = None
    T: SubcategorySpec | None = None
    schedule: str | None = None
    force_cut: bool = False

    def with_label(self, circle: int, pos: int, label: Label) -> "SurfaceSpec":
        bd = [list(b) for b in self.boundary]
        bd[circle][pos] = label
        return SurfaceSpec(self.genus, [tuple(b) for b in bd], self.S, self.T, self.schedule, self.force_cut)


# -- pieces ------------------------------------------------------------------------------------


@dataclass
class Pieces:
    """Disc pieces: tokens ``('var', name, sign)`` or ``('lab', circle, pos)``."""

    pieces: list
    variables: list
    ranges: dict

    def describe(self, c, labels) -> str:
        out = []
        for p in self.pieces:
            toks = []
            for t in p:
                if t[0] == "var":
                    toks.append(t[1] + ("" if t[2] > 0 else "*"))
                else:
                    lab = labels[t[1]][t[2]]
                    toks.append(c.name(lab.obj) + ("" if lab.out else "*"))
            out.append(" ".join(toks) or "()")
        return " | ".join(out)


_TOK = re.compile(r"^(@\d+|[A-Za-z]\w*[+-]?)$")


def parse_schedule(text: str, boundary) -> list:
    """``'a b a- b- | ...'``: variables with optional sign, ``@k`` expands circle ``k``."""
    pieces = []
    for chunk in text.split("|"):
        piece = []
        for tok in chunk.split():
            if not _TOK.match(tok):
                raise ValueError(f"bad schedule token {tok!r}")
            if tok.startswith("@"):
                k = int(tok[1:])
                if not 0 <= k < len(boundary):
                    raise ValueError(f"schedule refers to missing boundary circle {k}")
                piece.extend(("lab", k, j) for j in range(len(boundary[k])))
            elif tok.endswith("-"):
                piece.append(("var", tok[:-1], -1))
            else:
                piece.append(("var", tok.rstrip("+"), +1))
        pieces.append(piece)
    return pieces


def default_schedule(genus: int, boundary) -> str:
    """Polygon word ``[a b a- b-]^g`` then ``c_k @k c_k-`` for the inner circles, then ``@0``."""
    toks = []
    for i in range(genus):
        toks += [f"a{i}", f"b{i}", f"a{i}-", f"b{i}-"]
    for k in range(1, len(boundary)):
        toks += [f"c{k}", f"@{k}", f"c{k}-"]
    if boundary:
        toks.append("@0")
    return " ".join(toks)


def _check_pieces(pieces):
    seen = {}
    for p in pieces:
        for t in p:
            if t[0] == "var":
                seen.setdefault(t[1], []).append(t[2])
    for v, signs in seen.items():
        if sorted(signs) != [-1, 1]:
            raise ValueError(f"variable {v!r} must occur exactly once with each orientation")
    order = []
    for p in pieces:
        for t in p:
            if t[0] == "var" and t[1] not in order:
                order.append(t[1])
    return order


def _closed_list(c, s: SubcategorySpec) -> list:
    return [m for m in ideal_closure(c, s).members if m in c.listed]


def build_pieces(c: PivotalCategory, spec: SurfaceSpec) -> Pieces:
    if spec.S is None:
        raise AdmissibilityError("an admissibility subcategory S is required")
    ideal = _closed_list(c, spec.S)
    big = _closed_list(c, spec.T) if spec.T is not None else ideal
    big = list(dict.fromkeys(ideal + big))
    labels = spec.boundary
    has_ideal_label = any(l.obj in ideal for b in labels for l in b)
    if spec.schedule is not None:
        pieces = parse_schedule(spec.schedule, labels)
    elif spec.genus == 0 and len(labels) == 1 and (spec.force_cut or not has_ideal_label):
        # disc: glue an I-coloured disc onto the labelled boundary
        pieces = [[("var", "p", +1)], [("lab", 0, j) for j in range(len(labels[0]))] + [("var", "p", -1)]]
    else:
        pieces = parse_schedule(default_schedule(spec.genus, labels), labels)
    order = _check_pieces(pieces)
    ranges = {v: big for v in order}
    if order and (spec.force_cut or not has_ideal_label):
        ranges[order[0]] = ideal
    for p in pieces:
        ok = any(t[0] == "lab" and labels[t[1]][t[2]].obj in ideal for t in p)
        ok = ok or any(t[0] == "var" and set(ranges[t[1]]) <= set(ideal) for t in p)
        if not ok:
            raise AdmissibilityError("a piece carries no admissible colour; add a boundary label in S or a cut")
    return Pieces(pieces, order, ranges)


# -- assembly --------------------------------------------------------------------------------------


def _colours(c, piece, labels, assign):
    out = []
    for t in piece:
        if t[0] == "var":
            x = assign[t[1]]
            out.append(x if t[2] > 0 else c.dual(x))
        else:
            out.append(labels[t[1]][t[2]].colour(c))
    return out


def _word(c, cols):
    return c.tensor_objects(cols)


def _insert_matrix(c, cols, pos, g):
    """Matrix of ``Hom(1, cols) -> Hom(1, cols')``, ``psi -> (id (x) g (x) id) o psi``."""
    left = c.tensor_objects(cols[:pos])
    right = c.tensor_objects(cols[pos + 1 :])
    return c.push_forward(c.whisker(left, g, right), c.unit)


def _kron_all(fld, mats):
    out = None
    for m in mats:
        out = m if out is None else fld.kron(out, m)
    return out


@dataclass
class Ambient:
    assignments: list
    offsets: dict
    piece_dims: dict
    size: int


def _ambient(c, pcs: Pieces, labels) -> Ambient:
    assigns, offsets, dims, n = [], {}, {}, 0
    for combo in product(*(pcs.ranges[v] for v in pcs.variables)):
        a = dict(zip(pcs.variables, combo))
        key = tuple(combo)
        ds = [c.hom_dim(c.unit, _word(c, _colours(c, p, labels, a))) for p in pcs.pieces]
        assigns.append(key)
        offsets[key] = n
        dims[key] = ds
        n += int(np.prod(ds)) if ds else 1
    return Ambient(assigns, offsets, dims, n)


def assemble(c: PivotalCategory, pcs: Pieces, labels, budget: int = DEFAULT_BUDGET):
    """Relation matrix and ambient layout for a pieces presentation."""
    fld = c.fld
    amb = _ambient(c, pcs, labels)
    if amb.size > budget:
        raise BudgetExceeded("surface ambient space", amb.size, budget)
    rows = []
    nrows = 0
    for v in pcs.variables:
        others = [u for u in pcs.variables if u != v]
        plus = [(pi, ti) for pi, p in enumerate(pcs.pieces) for ti, t in enumerate(p) if t[0] == "var" and t[1] == v and t[2] > 0][0]
        minus = [(pi, ti) for pi, p in enumerate(pcs.pieces) for ti, t in enumerate(p) if t[0] == "var" and t[1] == v and t[2] < 0][0]
        for rest in product(*(pcs.ranges[u] for u in others)):
            base = dict(zip(others, rest))
            for x in pcs.ranges[v]:
                for y in pcs.ranges[v]:
                    fs = c.basis(x, y)
                    if not fs:
                        continue
                    # mixed colouring: x at the + slot, y* at the - slot
                    mixed_cols = []
                    for pi, p in enumerate(pcs.pieces):
                        cols = []
                        for t in p:
                            if t[0] == "var" and t[1] == v:
                                cols.append(x if t[2] > 0 else c.dual(y))
                            elif t[0] == "var":
                                cols.append(base[t[1]] if t[2] > 0 else c.dual(base[t[1]]))
                            else:
                                cols.append(labels[t[1]][t[2]].colour(c))
                        mixed_cols.append(cols)
                    mdims = [c.hom_dim(c.unit, _word(c, cols)) for cols in mixed_cols]
                    m = int(np.prod(mdims))
                    if m == 0:
                        continue
                    ay = dict(base, **{v: y})
                    ax = dict(base, **{v: x})
                    key_y = tuple(ay[u] for u in pcs.variables)
                    key_x = tuple(ax[u] for u in pcs.variables)
                    for f in fs:
                        fd = c.dual_mor(f)
                        m1, m2 = [], []
                        for pi, cols in enumerate(mixed_cols):
                            eye = fld.eye(mdims[pi])
                            a1 = _insert_matrix(c, cols, plus[1], f) if pi == plus[0] else eye
                            a2 = _insert_matrix(c, cols, minus[1], fd) if pi == minus[0] else eye
                            m1.append(a1)
                            m2.append(a2)
                        k1 = _kron_all(fld, m1)
                        k2 = _kron_all(fld, m2)
                        block = fld.zeros((m, amb.size))
                        oy, ox = amb.offsets[key_y], amb.offsets[key_x]
                        block[:, oy : oy + k1.shape[0]] = k1.T
                        block[:, ox : ox + k2.shape[0]] = fld.reduce(block[:, ox : ox + k2.shape[0]] - k2.T)
                        rows.append(block)
                        nrows += m
                        if nrows > 8 * budget:
                            raise BudgetExceeded("surface relation list", nrows, 8 * budget)
    rel = np.vstack(rows) if rows else fld.zeros((0, amb.size))
    return fld.reduce(rel), amb


def surface_skein(c: PivotalCategory, spec: SurfaceSpec, budget: int = DEFAULT_BUDGET) -> SkeinPresentation:
    """Skein module of a surface with labelled boundary circles."""
    spec = _normalise(c, spec)
    if spec.genus == 0 and not spec.boundary and spec.schedule is None:
        return sphere_skein(c, _closed_list(c, spec.S))
    if spec.genus == 0 and len(spec.boundary) == 1 and not spec.boundary[0] and spec.schedule is None and not spec.force_cut:
        # the closed disc: one empty boundary circle
        return disc_closed_skein(c, _closed_list(c, spec.S))
    pcs = build_pieces(c, spec)
    rel, amb = assemble(c, pcs, spec.boundary, budget)
    q = QuotientSpace.of(Subspace.span(rel, amb.size, c.fld))
    prov = []
    for key in amb.assignments:
        names = tuple(c.name(x) for x in key)
        for idx in product(*(range(d) for d in amb.piece_dims[key])):
            prov.append((names, idx))
    labels = [] if getattr(c, "complete_list", False) else [GENERATOR_RESTRICTED]
    p = SkeinPresentation(q, prov, labels, "surface")
    p.pieces = pcs
    p.ambient = amb
    return p


def _normalise(c, spec: SurfaceSpec) -> SurfaceSpec:
    bd = [boundary_value(c, b) for b in spec.boundary]
    S = spec.S
    if isinstance(S, str):
        S = c.subcat(S)
    T = spec.T
    if isinstance(T, str):
        T = c.subcat(T, "T")
    return SurfaceSpec(spec.genus, bd, S, T, spec.schedule, spec.force_cut)


# -- boundary insertions ----------------------------------------------------------------------------


@dataclass
class InducedMap:
    matrix: np.ndarray
    source: SkeinPresentation
    target: SkeinPresentation
    ambient_matrix: np.ndarray

    @property
    def rank(self) -> int:
        return rank(self.matrix, self.source.quotient.fld) if self.matrix.size else 0

    def is_zero(self) -> bool:
        return self.source.quotient.fld.is_zero(self.matrix)


def _labels_in_ideal(c, spec):
    ideal = _closed_list(c, spec.S)
    return any(l.obj in ideal for b in spec.boundary for l in b)


def skein_on_morphism(
    c: PivotalCategory, spec: SurfaceSpec, slot, f, budget: int = DEFAULT_BUDGET, cut: bool | None = None
) -> InducedMap:
    """Map induced by a bivalent vertex ``f`` near the marked point ``slot = (circle, position)``.

    Outward points are covariant (``f`` starts at the current colour);
    inward points are contravariant (``f`` ends at the current colour).
    ``cut`` forces (or forbids) the extra cut that makes both sides use the
    same pieces; by default it is chosen from admissibility of the labels.
    """
    spec = _normalise(c, spec)
    k, j = slot
    lab = spec.boundary[k][j]
    if lab.out:
        if f.src != lab.obj:
            raise ValueError("variance mismatch: an outward point needs f to start at its colour")
        new = Label(f.dst, True)
        g = f
    else:
        if f.dst != lab.obj:
            raise ValueError("variance mismatch: an inward point needs f to end at its colour")
        new = Label(f.src, False)
        g = c.dual_mor(f)
    spec2 = spec.with_label(k, j, new)
    if cut is None:
        cut = spec.force_cut or _labels_in_ideal(c, spec) != _labels_in_ideal(c, spec2) or (
            spec.genus == 0 and len(spec.boundary) == 1 and not _labels_in_ideal(c, spec)
        )
    spec = SurfaceSpec(spec.genus, spec.boundary, spec.S, spec.T, spec.schedule, cut)
    spec2 = SurfaceSpec(spec2.genus, spec2.boundary, spec2.S, spec2.T, spec2.schedule, cut)
    src = surface_skein(c, spec, budget)
    dst = surface_skein(c, spec2, budget)
    pcs, amb, amb2 = src.pieces, src.ambient, dst.ambient
    fld = c.fld
    big = fld.zeros((amb2.size, amb.size))
    where = [(pi, ti) for pi, p in enumerate(pcs.pieces) for ti, t in enumerate(p) if t == ("lab", k, j)][0]
    for key in amb.assignments:
        a = dict(zip(pcs.variables, key))
        mats = []
        for pi, p in enumerate(pcs.pieces):
            cols = _colours(c, p, spec.boundary, a)
            if pi == where[0]:
                mats.append(_insert_matrix(c, cols, where[1], g))
            else:
                d = c.hom_dim(c.unit, _word(c, cols))
                mats.append(fld.eye(d))
        kk = _kron_all(fld, mats) if mats else fld.eye(1)
        o1, o2 = amb.offsets[key], amb2.offsets[key]
        big[o2 : o2 + kk.shape[0], o1 : o1 + kk.shape[1]] = kk
    reps = src.quotient.rep_basis
    if src.dim and dst.dim:
        m = fld.matmul(dst.quotient.project, fld.matmul(big, reps.T.copy()))
    else:
        m = fld.zeros((dst.dim, src.dim))
    return InducedMap(fld.reduce(m), src, dst, big)


def cokernel_dim(maps, target: SkeinPresentation) -> int:
    """``dim target - rank [m_1 | m_2 | ...]`` for induced maps into ``target``."""
    fld = target.quotient.fld
    mats = [m.matrix for m in maps if m.matrix.size]
    if not mats:
        return target.dim
    return target.dim - rank(np.hstack(mats), fld)


# -- small pieces of the API -------------------------------------------------------------------------


@dataclass
class HomSpace:
    src: int
    dst: int
    basis: list
    kind: str

    @property
    def dim(self) -> int:
        return len(self.basis)


def disc_skein(c: PivotalCategory, labels) -> HomSpace:
    """``Hom(1, (x) labels)`` with outward labels coloured by the object, inward by its dual."""
    labs = boundary_value(c, labels)
    obj = c.tensor_objects([l.colour(c) for l in labs])
    return HomSpace(c.unit, obj, c.basis(c.unit, obj), "disc")


def interval_skein(c: PivotalCategory, v: int, w: int, S) -> HomSpace:
    members = set(S.members if isinstance(S, SubcategorySpec) else S)
    if v not in members and w not in members:
        raise AdmissibilityError(f"neither {c.name(v)} nor {c.name(w)} lies in S")
    return HomSpace(v, w, c.basis(v, w), "interval")


def cylinder_hom(c: PivotalCategory, T, v, w, budget: int = DEFAULT_BUDGET) -> SkeinPresentation:
    """Coend over ``T`` of ``Hom(X (x) V, W (x) X)``; circle values collapse to one point."""
    vv = c.tensor_objects([l.colour(c) for l in boundary_value(c, v)]) if not isinstance(v, int) else v
    ww = c.tensor_objects([l.colour(c) for l in boundary_value(c, w)]) if not isinstance(w, int) else w
    members = list(T.members if isinstance(T, SubcategorySpec) else T)
    res = coend(twisted_hom(c, members, vv, ww), check=False, budget=budget)
    prov = [(c.name(x), k) for x in members for k in range(res.sizes[x])]
    labels = [GENERATOR_RESTRICTED] if res.restricted else []
    return SkeinPresentation(res.quotient, prov, labels, "cylinder", res)


def disjoint_union(p1: SkeinPresentation, p2: SkeinPresentation, reduce_first: bool = True) -> SkeinPresentation:
    return tensor_presentations(p1, p2, reduce_first)

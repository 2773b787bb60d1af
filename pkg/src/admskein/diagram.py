"""Planar string diagrams as Morse words, and their evaluation.

A word is read bottom to top: ``layers[0]`` acts first.  Each layer is a
horizontal tensor of cells, read left to right.  A strand oriented down
carries the dual of its object.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .catdata.base import PivotalCategory


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class StrandType:
    obj: int
    up: bool = True

    def collapse(self, c: PivotalCategory) -> int:
        return self.obj if self.up else c.dual(self.obj)

    def label(self, c) -> str:
        return c.name(self.obj) + ("+" if self.up else "-")


def collapse(c: PivotalCategory, strands) -> int:
    return c.tensor_objects([s.collapse(c) for s in strands])


@dataclass(frozen=True)
class Identity:
    strand: StrandType

    def ends(self):
        return (self.strand,), (self.strand,)

    def value(self, c):
        return c.identity(self.strand.collapse(c))


@dataclass(frozen=True, eq=False)
class Box:
    mor: object
    src: tuple
    dst: tuple

    def ends(self):
        return tuple(self.src), tuple(self.dst)

    def value(self, c):
        a, b = collapse(c, self.src), collapse(c, self.dst)
        if (self.mor.src, self.mor.dst) != (a, b):
            raise DiagramError(
                f"box morphism {c.name(self.mor.src)} -> {c.name(self.mor.dst)} does not match "
                f"strands {c.name(a)} -> {c.name(b)}"
            )
        return self.mor


_CUP = {"ev": (False, True), "ev_tilde": (True, False)}
_CAP = {"coev": (True, False), "coev_tilde": (False, True)}


@dataclass(frozen=True)
class Cup:
    """Two strands closing off: ``ev`` on ``X- X+`` or ``ev_tilde`` on ``X+ X-``."""

    obj: int
    flavor: str = "ev"

    def ends(self):
        if self.flavor not in _CUP:
            raise DiagramError(f"cup flavor must be ev or ev_tilde, got {self.flavor!r}")
        a, b = _CUP[self.flavor]
        return (StrandType(self.obj, a), StrandType(self.obj, b)), ()

    def value(self, c):
        return c.ev(self.obj) if self.flavor == "ev" else c.ev_tilde(self.obj)


@dataclass(frozen=True)
class Cap:
    """Two strands opening: ``coev`` gives ``X+ X-``, ``coev_tilde`` gives ``X- X+``."""

    obj: int
    flavor: str = "coev"

    def ends(self):
        if self.flavor not in _CAP:
            raise DiagramError(f"cap flavor must be coev or coev_tilde, got {self.flavor!r}")
        a, b = _CAP[self.flavor]
        return (), (StrandType(self.obj, a), StrandType(self.obj, b))

    def value(self, c):
        return c.coev(self.obj) if self.flavor == "coev" else c.coev_tilde(self.obj)


def layer_ends(layer):
    ins, outs = [], []
    for cell in layer:
        a, b = cell.ends()
        ins.extend(a)
        outs.extend(b)
    return tuple(ins), tuple(outs)


@dataclass
class DiagramWord:
    source: tuple
    target: tuple
    layers: list = field(default_factory=list)

    def check(self):
        cur = tuple(self.source)
        for n, layer in enumerate(self.layers):
            ins, outs = layer_ends(layer)
            if ins != cur:
                raise DiagramError(f"layer {n} expects {ins}, receives {cur}")
            cur = outs
        if cur != tuple(self.target):
            raise DiagramError(f"word ends at {cur}, target is {tuple(self.target)}")

    def stacked(self, other: "DiagramWord") -> "DiagramWord":
        """``other`` on top of ``self``."""
        return DiagramWord(self.source, other.target, list(self.layers) + list(other.layers))

    def beside(self, other: "DiagramWord") -> "DiagramWord":
        """Place ``other`` to the right, padding the shorter word with identities."""
        n = max(len(self.layers), len(other.layers))
        a, b = _pad(self, n), _pad(other, n)
        return DiagramWord(
            tuple(self.source) + tuple(other.source),
            tuple(self.target) + tuple(other.target),
            [list(x) + list(y) for x, y in zip(a, b)],
        )


def _pad(w: DiagramWord, n: int):
    layers = [list(l) for l in w.layers]
    top = tuple(w.target)
    while len(layers) < n:
        layers.append([Identity(s) for s in top])
    return layers


def evaluate(c: PivotalCategory, w: DiagramWord):
    """Morphism from the collapsed source to the collapsed target."""
    w.check()
    out = c.identity(collapse(c, w.source))
    for layer in w.layers:
        if not layer:
            continue
        val = c.tensor_many([cell.value(c) for cell in layer])
        out = c.compose(val, out)
    return out


# -- partial traces ---------------------------------------------------------------


def cofactor(c: PivotalCategory, x: int, v: int, side: str) -> int:
    """The object ``w`` with ``x = v (x) w`` (side ``'left'``) or ``x = w (x) v``."""
    if hasattr(c, "word"):
        wx, wv = c.word(x), c.word(v)
        k = len(wv)
        if side == "left" and wx[:k] == wv:
            return c._register(wx[k:])
        if side == "right" and (k == 0 or wx[-k:] == wv):
            return c._register(wx[: len(wx) - k])
        raise DiagramError(f"{c.name(x)} does not factor through {c.name(v)} on the {side}")
    pool = range(c.n) if hasattr(c, "n") else c.listed
    hits = [w for w in pool if (c.tensor(v, w) if side == "left" else c.tensor(w, v)) == x]
    if len(hits) != 1:
        raise DiagramError(f"cannot factor {c.name(x)} by {c.name(v)} on the {side}: {len(hits)} candidates")
    return hits[0]


def ptr_l(c: PivotalCategory, f, v: int, w: int | None = None, w2: int | None = None):
    """Close the left factor ``v`` of ``f: v (x) w -> v (x) w2`` into ``w -> w2``."""
    w = cofactor(c, f.src, v, "left") if w is None else w
    w2 = cofactor(c, f.dst, v, "left") if w2 is None else w2
    if c.tensor(v, w) != f.src or c.tensor(v, w2) != f.dst:
        raise DiagramError("ptr_l: morphism does not factor as stated")
    vs = c.dual(v)
    first = c.whisker(c.unit, c.coev_tilde(v), w)
    mid = c.whisker(vs, f, c.unit)
    last = c.whisker(c.unit, c.ev(v), w2)
    return c.compose(last, c.compose(mid, first))


def ptr_r(c: PivotalCategory, f, v: int, w: int | None = None, w2: int | None = None):
    """Close the right factor ``v`` of ``f: w (x) v -> w2 (x) v`` into ``w -> w2``."""
    w = cofactor(c, f.src, v, "right") if w is None else w
    w2 = cofactor(c, f.dst, v, "right") if w2 is None else w2
    if c.tensor(w, v) != f.src or c.tensor(w2, v) != f.dst:
        raise DiagramError("ptr_r: morphism does not factor as stated")
    vs = c.dual(v)
    first = c.whisker(w, c.coev(v), c.unit)
    mid = c.whisker(c.unit, f, vs)
    last = c.whisker(w2, c.ev_tilde(v), c.unit)
    return c.compose(last, c.compose(mid, first))


def dims(c: PivotalCategory, x: int):
    """``(dim_l, dim_r)`` of ``x`` as scalars."""
    return c.dims(x)


def loop_word(x: int, side: str = "right") -> DiagramWord:
    """A closed loop on ``x``: right loops evaluate to ``dim_r``, left to ``dim_l``."""
    if side == "right":
        return DiagramWord((), (), [[Cap(x, "coev")], [Cup(x, "ev_tilde")]])
    return DiagramWord((), (), [[Cap(x, "coev_tilde")], [Cup(x, "ev")]])


def zigzag_word(x: int) -> DiagramWord:
    s = StrandType(x, True)
    return DiagramWord(
        (s,), (s,), [[Identity(s), Cap(x, "coev_tilde")], [Cup(x, "ev_tilde"), Identity(s)]]
    )


# -- text form ------------------------------------------------------------------------


def _strand_tok(c, s: StrandType) -> str:
    name = c.name(s.obj)
    if " " in name:
        raise DiagramError(f"object name {name!r} cannot appear in a word literal")
    return s.label(c)


def _parse_strand(c, tok: str) -> StrandType:
    if not tok or tok[-1] not in "+-":
        raise DiagramError(f"strand {tok!r} must end in + or -")
    try:
        return StrandType(c.index(tok[:-1]), tok[-1] == "+")
    except KeyError as e:
        raise DiagramError(str(e)) from None


def dump_word(c: PivotalCategory, w: DiagramWord) -> str:
    fld = c.fld
    lines = ["word", "source " + " ".join(_strand_tok(c, s) for s in w.source)]
    lines.append("target " + " ".join(_strand_tok(c, s) for s in w.target))
    for layer in w.layers:
        cells = []
        for cell in layer:
            if isinstance(cell, Identity):
                cells.append("id " + _strand_tok(c, cell.strand))
            elif isinstance(cell, Cup):
                cells.append(f"cup {c.name(cell.obj)} {cell.flavor}")
            elif isinstance(cell, Cap):
                cells.append(f"cap {c.name(cell.obj)} {cell.flavor}")
            else:
                src = " ".join(_strand_tok(c, s) for s in cell.src)
                dst = " ".join(_strand_tok(c, s) for s in cell.dst)
                coeffs = " ".join(fld.fmt(x) for x in c.coords(cell.mor))
                cells.append(f"box {src} -> {dst} = {coeffs}".replace("  ", " "))
        lines.append("layer " + " , ".join(cells))
    lines.append("end")
    return "\n".join(l.rstrip() for l in lines) + "\n"


def parse_word(c: PivotalCategory, text: str) -> DiagramWord:
    """Read a word from its text form; ``;`` may stand for a newline in inline literals."""
    import re

    tok = re.compile(r"-?\d+ mod \d+|-?\d+/\d+|\S+")
    rows = [r.split("#", 1)[0].strip() for r in text.replace(";", "\n").splitlines()]
    rows = [r for r in rows if r]
    if not rows or rows[0] != "word":
        raise DiagramError("word literal must start with 'word'")
    if rows[-1] != "end":
        raise DiagramError("word literal must finish with 'end'")
    source, target, layers = (), None, []
    for r in rows[1:-1]:
        key, _, rest = r.partition(" ")
        if key == "source":
            source = tuple(_parse_strand(c, t) for t in rest.split())
        elif key == "target":
            target = tuple(_parse_strand(c, t) for t in rest.split())
        elif key == "layer":
            layer = []
            for cell in (x.strip() for x in rest.split(",")) if rest.strip() else ():
                kind, _, body = cell.partition(" ")
                parts = body.split()
                if kind == "id":
                    layer.append(Identity(_parse_strand(c, parts[0])))
                elif kind in ("cup", "cap"):
                    obj = c.index(parts[0])
                    flavor = parts[1] if len(parts) > 1 else ("ev" if kind == "cup" else "coev")
                    layer.append(Cup(obj, flavor) if kind == "cup" else Cap(obj, flavor))
                elif kind == "box":
                    head, eq, vals = body.partition("=")
                    if not eq or "->" not in head:
                        raise DiagramError(f"box cell {cell!r} needs 'SRC -> DST = COEFFS'")
                    s, _, d = head.partition("->")
                    src = tuple(_parse_strand(c, t) for t in s.split())
                    dst = tuple(_parse_strand(c, t) for t in d.split())
                    a, b = collapse(c, src), collapse(c, dst)
                    coeffs = [c.fld.parse(t) for t in tok.findall(vals)]
                    if len(coeffs) != c.hom_dim(a, b):
                        raise DiagramError(f"box expects {c.hom_dim(a, b)} coefficients, got {len(coeffs)}")
                    layer.append(Box(c.from_coords(a, b, coeffs), src, dst))
                elif kind == "braid":
                    raise DiagramError("braiding cells are not available in planar words")
                else:
                    raise DiagramError(f"unknown cell {kind!r}")
            layers.append(layer)
        else:
            raise DiagramError(f"unknown word directive {key!r}")
    if target is None:
        raise DiagramError("word literal lacks a target line")
    w = DiagramWord(source, target, layers)
    w.check()
    return w

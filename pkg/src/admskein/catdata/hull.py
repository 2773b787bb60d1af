"""Explicit finite direct sums over a base category.

Objects of the hull are tuples of base objects; a morphism is a block matrix
of base morphisms.  The canonical injections and projections give the sum
witnesses needed when comparing coends over generators with coends over a
sum-closed list.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import PivotalCategory


@dataclass(frozen=True, eq=False)
class HullMap:
    src: int
    dst: int
    blocks: tuple  # blocks[r][s]: base morphism from summand s of src to summand r of dst


class SumHull(PivotalCategory):
    # (X + Y)* lists summands in a different order than Y* x X*, so the nested
    # duality identities only hold up to a canonical permutation.
    strict_duality = False

    def __init__(self, base: PivotalCategory, listed_tuples=()):
        self.base = base
        self.fld = base.fld
        self._objs: list[tuple] = []
        self._index: dict[tuple, int] = {}
        self.unit = self.obj((base.unit,))
        singles = [self.obj((i,)) for i in base.listed]
        extra = [self.obj(tuple(t)) for t in listed_tuples]
        self.listed = list(dict.fromkeys(singles + extra))
        self.title = f"sum_hull({getattr(base, 'title', 'base')})"

    @property
    def complete_list(self):
        return getattr(self.base, "complete_list", False)

    def obj(self, summands: tuple) -> int:
        summands = tuple(int(s) for s in summands)
        if not summands:
            raise ValueError("the zero object is not represented")
        if summands not in self._index:
            self._index[summands] = len(self._objs)
            self._objs.append(summands)
        return self._index[summands]

    def summands_of(self, i: int) -> tuple:
        return self._objs[i]

    def name(self, i: int) -> str:
        parts = [self.base.name(s) for s in self._objs[i]]
        return parts[0] if len(parts) == 1 else "(" + " + ".join(parts) + ")"

    def index(self, name: str) -> int:
        name = name.strip()
        if name.startswith("(") and name.endswith(")"):
            return self.obj(tuple(self.base.index(p) for p in name[1:-1].split(" + ")))
        return self.obj((self.base.index(name),))

    def dual(self, i):
        return self.obj(tuple(self.base.dual(s) for s in self._objs[i]))

    def tensor(self, i, j):
        return self.obj(tuple(self.base.tensor(a, b) for a in self._objs[i] for b in self._objs[j]))

    def hom_dim(self, i, j):
        return sum(self.base.hom_dim(a, b) for b in self._objs[j] for a in self._objs[i])

    # -- morphisms ----------------------------------------------------------------
    def _make(self, i, j, fn):
        src, dst = self._objs[i], self._objs[j]
        return HullMap(i, j, tuple(tuple(fn(r, s, b, a) for s, a in enumerate(src)) for r, b in enumerate(dst)))

    def zero(self, i, j):
        return self._make(i, j, lambda r, s, b, a: self.base.zero(a, b))

    def identity(self, i):
        return self._make(i, i, lambda r, s, b, a: self.base.identity(a) if r == s else self.base.zero(a, b))

    def coords(self, f: HullMap) -> np.ndarray:
        parts = [self.base.coords(blk) for row in f.blocks for blk in row]
        if not parts:
            return self.fld.zeros(0)
        return np.concatenate([np.asarray(p, dtype=self.fld.dtype) for p in parts])

    def from_coords(self, i, j, v):
        v = np.asarray(v, dtype=self.fld.dtype)
        src, dst = self._objs[i], self._objs[j]
        rows, off = [], 0
        for b in dst:
            row = []
            for a in src:
                d = self.base.hom_dim(a, b)
                row.append(self.base.from_coords(a, b, v[off : off + d]))
                off += d
            rows.append(tuple(row))
        return HullMap(i, j, tuple(rows))

    def basis(self, i, j):
        n = self.hom_dim(i, j)
        eye = self.fld.eye(n)
        return [self.from_coords(i, j, eye[k]) for k in range(n)]

    def compose(self, g: HullMap, f: HullMap):
        if f.dst != g.src:
            raise ValueError("cannot compose: endpoints do not match")
        mid = self._objs[f.dst]
        b = self.base

        def entry(r, s, c, a):
            terms = [(1, b.compose(g.blocks[r][m], f.blocks[m][s])) for m in range(len(mid))]
            return b.lincomb(terms, a, c)

        return self._make(f.src, g.dst, entry)

    def tensor_mor(self, f: HullMap, g: HullMap):
        b = self.base
        s1, s2 = self._objs[f.src], self._objs[g.src]
        t1, t2 = self._objs[f.dst], self._objs[g.dst]
        src, dst = self.tensor(f.src, g.src), self.tensor(f.dst, g.dst)
        rows = []
        for r1 in range(len(t1)):
            for r2 in range(len(t2)):
                row = []
                for c1 in range(len(s1)):
                    for c2 in range(len(s2)):
                        row.append(b.tensor_mor(f.blocks[r1][c1], g.blocks[r2][c2]))
                rows.append(tuple(row))
        return HullMap(src, dst, tuple(rows))

    def lincomb(self, terms, src, dst):
        terms = list(terms)
        return self._make(
            src, dst, lambda r, s, bb, a: self.base.lincomb([(c, f.blocks[r][s]) for c, f in terms], a, bb)
        )

    def _diag_pairing(self, i, which):
        """Block-diagonal duality map assembled from the base maps of each summand."""
        b = self.base
        objs = self._objs[i]
        n = len(objs)
        unit = self.unit
        maps = [getattr(b, which)(a) for a in objs]
        if which in ("ev", "ev_tilde"):
            left = self.dual(i) if which == "ev" else i
            right = i if which == "ev" else self.dual(i)
            src = self.tensor(left, right)
            blocks = [[None] * (n * n)]
            for k in range(n):
                for l in range(n):
                    a, c = self._objs[left][k], self._objs[right][l]
                    s = b.tensor(a, c)
                    blocks[0][k * n + l] = maps[k] if k == l else b.zero(s, b.unit)
            return HullMap(src, unit, tuple(tuple(r) for r in blocks))
        left = i if which == "coev" else self.dual(i)
        right = self.dual(i) if which == "coev" else i
        dst = self.tensor(left, right)
        rows = []
        for k in range(n):
            for l in range(n):
                a, c = self._objs[left][k], self._objs[right][l]
                t = b.tensor(a, c)
                rows.append((maps[k] if k == l else b.zero(b.unit, t),))
        return HullMap(unit, dst, tuple(rows))

    def ev(self, i):
        return self._diag_pairing(i, "ev")

    def coev(self, i):
        return self._diag_pairing(i, "coev")

    def ev_tilde(self, i):
        return self._diag_pairing(i, "ev_tilde")

    def coev_tilde(self, i):
        return self._diag_pairing(i, "coev_tilde")

    # -- sums ------------------------------------------------------------------------
    def injection(self, i: int, k: int):
        """Canonical ``summand_k -> object i``."""
        objs = self._objs[i]
        single = self.obj((objs[k],))
        return self._make(single, i, lambda r, s, b, a: self.base.identity(a) if r == k else self.base.zero(a, b))

    def projection(self, i: int, k: int):
        objs = self._objs[i]
        single = self.obj((objs[k],))
        return self._make(i, single, lambda r, s, b, a: self.base.identity(a) if s == k else self.base.zero(a, b))

    def decompose(self, i: int):
        out = []
        for k, a in enumerate(self._objs[i]):
            inj, proj = self.injection(i, k), self.projection(i, k)
            for d, iota, pi in self.base.decompose(a):
                single = self.obj((d,))
                lift_i = self._make(single, self.obj((a,)), lambda r, s, b, aa, m=iota: m)
                lift_p = self._make(self.obj((a,)), single, lambda r, s, b, aa, m=pi: m)
                out.append((single, self.compose(inj, lift_i), self.compose(lift_p, proj)))
        return out

"""Super modules over an exterior algebra with odd generators.

Objects are words in module symbols; a symbol is a listed module or its dual.
Tensor products are concatenation, so the category is strict by construction,
and ``(s*)* = s`` on symbols.  Morphisms are even intertwiners stored as
matrices; hom bases are RREF kernels of the intertwiner equations, so the
coordinates of a morphism are its entries at the pivot positions.

Conventions (V with homogeneous basis e_i, dual basis e^i):

* action on V (x) W:  rho(x) (x) 1 + P_V (x) rho_W(x), P the parity operator
* action on V*:        -rho(x)^T P
* ev_V(e^i (x) e_j) = delta_ij,  coev_V = sum e_i (x) e^i
* ev~_V(e_i (x) e^j) = (-1)^|i| delta_ij,  coev~_V = sum (-1)^|i| e^i (x) e_i
* for a dual symbol s*, ev and coev are the tilde maps of s and vice versa.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from ..exactla import Field, kernel_basis, rank
from .base import NotTensorComplete, PivotalCategory, SubcategorySpec


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """An even intertwiner ``src -> dst`` as a ``dim(dst) x dim(src)`` matrix."""

    src: int
    dst: int
    mat: np.ndarray

    def __repr__(self):
        return f"ModuleMap({self.src}->{self.dst}, shape={self.mat.shape})"


@dataclass
class SuperModule:
    name: str
    parity: tuple
    action: list  # one odd square matrix per generator

    @property
    def dim(self) -> int:
        return len(self.parity)


# -- module constructors ------------------------------------------------------


def _subsets(n: int) -> list[tuple[int, ...]]:
    out = []
    for k in range(n + 1):
        out.extend(_combos(range(n), k))
    return out


def _combos(items, k):
    from itertools import combinations

    return list(combinations(items, k))


def free_module(fld: Field, n_gen: int, name: str, shift: bool = False, span: int | None = None) -> SuperModule:
    """The exterior algebra on the first ``span`` generators acting on itself.

    Generators beyond ``span`` act by zero.  ``shift`` flips the parity.
    """
    m = n_gen if span is None else span
    basis = _subsets(m)
    pos = {s: k for k, s in enumerate(basis)}
    action = []
    for g in range(n_gen):
        a = fld.zeros((len(basis), len(basis)))
        if g < m:
            for s in basis:
                if g in s:
                    continue
                sign = -1 if sum(1 for h in s if h < g) % 2 else 1
                t = tuple(sorted(s + (g,)))
                a[pos[t], pos[s]] = fld.scalar(sign)
        action.append(a)
    parity = tuple((len(s) + shift) % 2 for s in basis)
    return SuperModule(name, parity, action)


def trivial_module(fld: Field, n_gen: int, name: str, shift: bool = False) -> SuperModule:
    return SuperModule(name, (int(shift),), [fld.zeros((1, 1)) for _ in range(n_gen)])


def twisted_module(fld: Field, name: str, lam, mu) -> SuperModule:
    """Exterior algebra on (a, b) with the third generator acting as ``-mu a + lam b``."""
    base = free_module(fld, 3, name, span=2)
    a, b, _ = base.action
    c = fld.reduce(fld.scalar(-mu) * a + fld.scalar(lam) * b)
    return SuperModule(name, base.parity, [a, b, c])


def check_module(fld: Field, m: SuperModule) -> None:
    """Odd generators that pairwise anticommute and square to zero."""
    par = np.array(m.parity)
    for k, x in enumerate(m.action):
        if x.shape != (m.dim, m.dim):
            raise ValueError(f"module {m.name}: action {k} has shape {x.shape}")
        rr, cc = np.nonzero(x)
        if np.any(par[rr] == par[cc]):
            raise ValueError(f"module {m.name}: generator {k} does not act oddly")
    for k, x in enumerate(m.action):
        for l, y in enumerate(m.action[k:], start=k):
            s = fld.reduce(fld.matmul(x, y) + fld.matmul(y, x))
            if not fld.is_zero(s):
                raise ValueError(f"module {m.name}: generators {k},{l} do not anticommute")


# -- the category ----------------------------------------------------------------


class SuperModuleCategory(PivotalCategory):
    """Even intertwiners between words in listed super modules."""

    # indecomposables outside the listed modules exist
    complete_list = False

    def __init__(self, fld: Field, generators, modules, title="smod", subcats=None):
        self.fld = fld
        self.generators = list(generators)
        self.modules = list(modules)
        self.title = title
        names = [m.name for m in self.modules]
        if "1" in names or len(set(names)) != len(names):
            raise ValueError("module names must be distinct and different from '1'")
        for m in self.modules:
            if len(m.action) != len(self.generators):
                raise ValueError(f"module {m.name} has {len(m.action)} actions for {len(self.generators)} generators")
            check_module(fld, m)
        self._words: list[tuple] = []
        self._index: dict[tuple, int] = {}
        self._objdata: dict[int, tuple] = {}
        self._homs: dict[tuple, tuple] = {}
        self._decomp: dict[int, list] = {}
        self.unit = self._register(())
        self.listed = [self.unit] + [self._register(((k, False),)) for k in range(len(self.modules))]
        self.subcats = dict(subcats or {})

    # -- objects -----------------------------------------------------------------
    def _register(self, word: tuple) -> int:
        if word not in self._index:
            self._index[word] = len(self._words)
            self._words.append(word)
        return self._index[word]

    def word(self, i: int) -> tuple:
        return self._words[i]

    def object_count(self) -> int:
        return len(self._words)

    def name(self, i: int) -> str:
        w = self._words[i]
        if not w:
            return "1"
        return " x ".join(self.modules[k].name + ("*" if d else "") for k, d in w)

    def index(self, name: str) -> int:
        name = name.strip()
        if name == "1":
            return self.unit
        word = []
        for tok in name.split(" x "):
            tok = tok.strip()
            dual = tok.endswith("*")
            base = tok[:-1] if dual else tok
            names = [m.name for m in self.modules]
            if base not in names:
                raise KeyError(f"unknown object {tok!r}")
            word.append((names.index(base), dual))
        return self._register(tuple(word))

    def dual(self, i: int) -> int:
        return self._register(tuple((k, not d) for k, d in reversed(self._words[i])))

    def tensor(self, i: int, j: int) -> int:
        return self._register(self._words[i] + self._words[j])

    def _symbol_data(self, sym):
        k, d = sym
        m = self.modules[k]
        par = np.array(m.parity, dtype=np.int64)
        if not d:
            return par, list(m.action)
        p = np.diag([(-1) ** int(x) for x in par]).astype(np.int64)
        p = self.fld.array(p)
        return par, [self.fld.reduce(-self.fld.matmul(x.T.copy(), p)) for x in m.action]

    def objdata(self, i: int):
        """``(parity vector, action matrices)`` of object ``i``."""
        if i in self._objdata:
            return self._objdata[i]
        w = self._words[i]
        fld = self.fld
        if not w:
            out = (np.zeros(1, dtype=np.int64), [fld.zeros((1, 1)) for _ in self.generators])
        elif len(w) == 1:
            out = self._symbol_data(w[0])
        else:
            head = self._register(w[:1])
            tail = self._register(w[1:])
            p1, a1 = self.objdata(head)
            p2, a2 = self.objdata(tail)
            par = ((p1[:, None] + p2[None, :]) % 2).ravel()
            sign = fld.array(np.diag([(-1) ** int(x) for x in p1]))
            acts = [
                fld.reduce(np.kron(x, fld.eye(len(p2))) + np.kron(sign, y))
                for x, y in zip(a1, a2)
            ]
            out = (par, acts)
        self._objdata[i] = out
        return out

    def dim(self, i: int) -> int:
        return len(self.objdata(i)[0])

    def parity(self, i: int) -> np.ndarray:
        return self.objdata(i)[0]

    def action(self, i: int) -> list:
        return self.objdata(i)[1]

    # -- hom spaces ------------------------------------------------------------------
    def _hom(self, i: int, j: int):
        key = (i, j)
        if key in self._homs:
            return self._homs[key]
        fld = self.fld
        pi, ai = self.objdata(i)
        pj, aj = self.objdata(j)
        di, dj = len(pi), len(pj)
        pos = np.nonzero((pj[:, None] == pi[None, :]).ravel())[0]
        if len(pos) == 0:
            out = (fld.zeros((0, dj * di)), [])
        else:
            blocks = []
            for x, y in zip(ai, aj):
                # vec_row(M x - y M) = (I (x) x^T - y (x) I) vec_row(M)
                op = np.kron(fld.eye(dj), x.T) - np.kron(y, fld.eye(di))
                blocks.append(fld.reduce(op[:, pos]))
            if blocks:
                ker = kernel_basis(np.vstack(blocks), fld)
                small, piv = ker.basis, ker.pivots
            else:
                small, piv = fld.eye(len(pos)), list(range(len(pos)))
            full = fld.zeros((small.shape[0], dj * di))
            full[:, pos] = small
            out = (full, [int(pos[p]) for p in piv])
        self._homs[key] = out
        return out

    def hom_dim(self, i: int, j: int) -> int:
        return len(self._hom(i, j)[1])

    def basis(self, i: int, j: int) -> list[ModuleMap]:
        full, _ = self._hom(i, j)
        shape = (self.dim(j), self.dim(i))
        return [ModuleMap(i, j, row.reshape(shape)) for row in full]

    def coords(self, f: ModuleMap) -> np.ndarray:
        _, piv = self._hom(f.src, f.dst)
        return f.mat.ravel()[piv]

    def from_coords(self, i, j, v) -> ModuleMap:
        full, _ = self._hom(i, j)
        v = np.asarray(v, dtype=self.fld.dtype)
        if full.shape[0] == 0:
            return self.zero(i, j)
        return ModuleMap(i, j, self.fld.matmul(v.reshape(1, -1), full).reshape(self.dim(j), self.dim(i)))

    def in_hom(self, f: ModuleMap) -> bool:
        """Whether a matrix is an even intertwiner (membership test)."""
        g = self.from_coords(f.src, f.dst, self.coords(f))
        return self.fld.equal(g.mat, f.mat)

    # -- morphism operations ---------------------------------------------------------
    def zero(self, i, j):
        return ModuleMap(i, j, self.fld.zeros((self.dim(j), self.dim(i))))

    def identity(self, i):
        return ModuleMap(i, i, self.fld.eye(self.dim(i)))

    def compose(self, g: ModuleMap, f: ModuleMap) -> ModuleMap:
        if f.dst != g.src:
            raise ValueError(f"cannot compose {self.name(g.src)}->{self.name(g.dst)} after {self.name(f.src)}->{self.name(f.dst)}")
        return ModuleMap(f.src, g.dst, self.fld.matmul(g.mat, f.mat))

    def push_forward(self, g: ModuleMap, dom: int) -> np.ndarray:
        full, _ = self._hom(dom, g.src)
        _, piv = self._hom(dom, g.dst)
        n, d_in, d_mid, d_out = full.shape[0], self.dim(dom), self.dim(g.src), self.dim(g.dst)
        if n == 0 or not piv:
            return self.fld.zeros((len(piv), n))
        # stack the basis maps side by side, apply g once, read coordinates
        stacked = full.reshape(n, d_mid, d_in).transpose(1, 0, 2).reshape(d_mid, n * d_in)
        out = self.fld.matmul(g.mat, stacked).reshape(d_out, n, d_in).transpose(1, 0, 2).reshape(n, d_out * d_in)
        return out[:, piv].T.copy()

    def tensor_mor(self, f: ModuleMap, g: ModuleMap) -> ModuleMap:
        return ModuleMap(self.tensor(f.src, g.src), self.tensor(f.dst, g.dst), self.fld.kron(f.mat, g.mat))

    def lincomb(self, terms, src, dst):
        out = self.fld.zeros((self.dim(dst), self.dim(src)))
        for c, f in terms:
            if (f.src, f.dst) != (src, dst):
                raise ValueError("lincomb of morphisms with different endpoints")
            out = self.fld.reduce(out + self.fld.scalar(c) * f.mat)
        return ModuleMap(src, dst, out)

    def mor_equal(self, f, g) -> bool:
        return (f.src, f.dst) == (g.src, g.dst) and self.fld.equal(f.mat, g.mat)

    def is_zero_mor(self, f) -> bool:
        return self.fld.is_zero(f.mat)

    def inverse(self, f: ModuleMap):
        from ..exactla import inverse as mat_inverse

        if f.mat.shape[0] != f.mat.shape[1]:
            return None
        try:
            return ModuleMap(f.dst, f.src, mat_inverse(f.mat, self.fld))
        except ZeroDivisionError:
            return None

    def is_invertible(self, f) -> bool:
        n = f.mat.shape[0]
        return n == f.mat.shape[1] and rank(f.mat, self.fld) == n

    # -- duality ---------------------------------------------------------------------
    def _pairing(self, i: int, kind: str) -> np.ndarray:
        """Sign-weighted matching vector for ev / coev / ev~ / coev~ of word i.

        Each of the four maps pairs a basis multi-index v of the word with the
        reversed multi-index of the dual word; the weight is a product of
        per-symbol signs, either 1 or (-1)^|v_m| depending on the map and on
        whether the symbol is dualized.
        """
        w = self._words[i]
        fld = self.fld
        if not w:
            return fld.array([1])
        dims = [self.modules[k].dim for k, _ in w]
        pars = [np.array(self.modules[k].parity) for k, _ in w]
        tilde = kind in ("ev_tilde", "coev_tilde")
        n = int(np.prod(dims))
        vecs = np.array(list(product(*[range(d) for d in dims])), dtype=np.int64).reshape(n, len(w))
        sign = np.ones(n, dtype=np.int64)
        for m, (k, d) in enumerate(w):
            if tilde != d:  # signed factor
                sign = sign * (1 - 2 * pars[m][vecs[:, m]])
        idx_w = np.zeros(n, dtype=np.int64)
        for m in range(len(w)):
            idx_w = idx_w * dims[m] + vecs[:, m]
        idx_rev = np.zeros(n, dtype=np.int64)
        for m in reversed(range(len(w))):
            idx_rev = idx_rev * dims[m] + vecs[:, m]
        out = fld.zeros(n * n)
        if kind in ("ev", "coev_tilde"):  # (w*, w)
            flat = idx_rev * n + idx_w
        else:  # (w, w*)
            flat = idx_w * n + idx_rev
        out[flat] = fld.array(sign)
        return out

    def ev(self, i):
        v = self._pairing(i, "ev")
        return ModuleMap(self.tensor(self.dual(i), i), self.unit, v.reshape(1, -1))

    def coev(self, i):
        v = self._pairing(i, "coev")
        return ModuleMap(self.unit, self.tensor(i, self.dual(i)), v.reshape(-1, 1))

    def ev_tilde(self, i):
        v = self._pairing(i, "ev_tilde")
        return ModuleMap(self.tensor(i, self.dual(i)), self.unit, v.reshape(1, -1))

    def coev_tilde(self, i):
        v = self._pairing(i, "coev_tilde")
        return ModuleMap(self.unit, self.tensor(self.dual(i), i), v.reshape(-1, 1))

    # -- decomposition -------------------------------------------------------------
    def decompose(self, i: int):
        """Split object ``i`` into listed indecomposables.

        Returns ``[(j, iota, pi), ...]`` with ``pi o iota = id_j`` and the
        ``iota o pi`` summing to ``id_i``.  Listed objects are assumed
        indecomposable with local endomorphism rings.
        """
        if i in self._decomp:
            return self._decomp[i]
        if i in self.listed:
            idm = self.identity(i)
            self._decomp[i] = [(i, idm, idm)]
            return self._decomp[i]
        fld = self.fld
        e = fld.eye(self.dim(i))
        parts = []
        for j in self.listed:
            fs = [f.mat for f in self.basis(j, i)]
            gs = [g.mat for g in self.basis(i, j)]
            if not fs or not gs:
                continue
            while True:
                found = None
                for f in fs:
                    ef = fld.matmul(e, f)
                    if fld.is_zero(ef):
                        continue
                    for g in gs:
                        gef = fld.matmul(g, ef)
                        if rank(gef, fld) == gef.shape[0]:
                            found = (ef, g, gef)
                            break
                    if found:
                        break
                if not found:
                    break
                ef, g, gef = found
                inv = self.inverse(ModuleMap(j, j, gef)).mat
                iota = ef
                pi = fld.matmul(inv, fld.matmul(g, e))
                parts.append((j, ModuleMap(j, i, iota), ModuleMap(i, j, pi)))
                e = fld.reduce(e - fld.matmul(iota, pi))
            if fld.is_zero(e):
                break
        if not fld.is_zero(e):
            raise NotTensorComplete(
                f"object {self.name(i)} has a summand outside the listed modules",
                offending=self.name(i),
            )
        self._decomp[i] = parts
        return parts

    def subcat(self, name: str, role: str = "S") -> SubcategorySpec:
        return SubcategorySpec(self.subcats[name], role)


def build_exterior_smod(fld: Field, generators, modules, title="exterior", subcats=None) -> SuperModuleCategory:
    """Category of super modules over the exterior algebra on odd ``generators``.

    ``modules`` is a list of :class:`SuperModule`; the unit ``1`` is always
    present.  Tensor completeness is checked lazily by :meth:`decompose`,
    which raises :class:`NotTensorComplete` naming the offending product.
    """
    return SuperModuleCategory(fld, generators, modules, title=title, subcats=subcats)


def build_lambda2(fld: Field) -> SuperModuleCategory:
    """Super modules over the exterior algebra on two generators.

    Listed: the unit, its parity shift, and the free module with its shift.
    """
    mods = [
        trivial_module(fld, 2, "P1", shift=True),
        free_module(fld, 2, "L"),
        free_module(fld, 2, "PL", shift=True),
    ]
    c = build_exterior_smod(fld, ["a", "b"], mods, title="exterior_ab")
    c.subcats = {"all": tuple(c.listed), "proj": (c.listed[2], c.listed[3]), "L": (c.listed[2],),
                 "unit": (c.unit,), "loops": (c.unit, c.listed[2])}
    return c


def build_lambda3_twisted(fld: Field, samples) -> SuperModuleCategory:
    """Three odd generators; listed: the twisted modules X(lam, mu) and the free modules."""
    mods = [twisted_module(fld, f"X({fld.scalar(l)},{fld.scalar(m)})", l, m) for l, m in samples]
    mods += [free_module(fld, 3, "A"), free_module(fld, 3, "PA", shift=True)]
    c = build_exterior_smod(fld, ["a", "b", "c"], mods, title="exterior_abc")
    n = len(samples)
    c.subcats = {"twisted": tuple(c.listed[1 : 1 + n]), "ideal": tuple(c.listed[1:])}
    return c

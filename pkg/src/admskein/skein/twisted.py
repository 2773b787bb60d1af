"""Disc skeins over three odd generators, detected by eigenvalue traces.

Objects are the twisted modules ``X(lam, mu)`` (two-generator exterior
algebra with ``c`` acting as ``-mu a + lam b``) plus the free modules.  The
disc is presented as the coend of ``Hom(X, 1) (x) Hom(1, Y)``.  For each
``X`` the socle ``B(X) = Hom(1, X)`` carries commuting operators induced by
``ac`` and ``bc``; traces over their joint generalised eigenspaces give
functionals on the coend which separate the identity classes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt

import numpy as np

from ..catdata.smod import build_lambda3_twisted
from ..coend import BifunctorPresentation, coend
from ..exactla import Field, Subspace, annihilator, inverse, kernel_basis, rank, solve


def _pull_matrix(c, f, dst):
    """``Hom(f.dst, dst) -> Hom(f.src, dst)``, ``phi -> phi o f``."""
    bas = c.basis(f.dst, dst)
    n = c.hom_dim(f.src, dst)
    if not bas or n == 0:
        return c.fld.zeros((n, len(bas)))
    return np.array([c.coords(c.compose(p, f)) for p in bas], dtype=c.fld.dtype).reshape(len(bas), n).T


def split_bifunctor(c, objects) -> BifunctorPresentation:
    """``F(X, Y) = Hom(X, 1) (x) Hom(1, Y)``, basis ordered ``phi``-major."""
    fld, u = c.fld, c.unit

    def dim(i, j):
        return c.hom_dim(i, u) * c.hom_dim(u, j)

    def co(f, i):
        return fld.kron(fld.eye(c.hom_dim(i, u)), c.push_forward(f, u))

    def contra(f, j):
        return fld.kron(_pull_matrix(c, f, u), fld.eye(c.hom_dim(u, j)))

    return BifunctorPresentation(c, list(objects), dim, co, contra, name="Hom(-,1)(x)Hom(1,-)")


# -- socle operators -------------------------------------------------------------------------


@dataclass
class Socle:
    obj: int
    basis: np.ndarray  # columns span Hom(1, X) inside X
    section: np.ndarray  # X-vectors u_k with pi(u_k) = k-th basis vector
    ops: dict  # "ac", "bc" -> matrices on socle coordinates
    section_independent: bool

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def _coords_in(fld, cols, v):
    x = solve(cols, v, fld)
    if x is None:
        raise ValueError("vector outside the socle")
    return x


def socle(c, x: int) -> Socle:
    """``Hom(1, X)`` with the operators from ``ac`` and ``bc`` pulled back along ``ab``.

    ``pi = even part of ab`` maps ``X`` onto the socle; an operator ``g`` with
    values in the socle becomes ``g o sigma`` for any section ``sigma``.  The
    result does not depend on the section exactly when ``g`` kills ``ker pi``.
    """
    fld = c.fld
    acts = c.action(x)
    par = c.parity(x)
    d = c.dim(x)
    bas = c.basis(c.unit, x)
    cols = np.array([b.mat.ravel() for b in bas], dtype=fld.dtype).T.reshape(d, len(bas))
    even = fld.array(np.diag([1 if p == 0 else 0 for p in par]))
    a, b, cc = acts
    pi = fld.matmul(even, fld.matmul(a, b))
    pi_img = rank(pi, fld)
    if len(bas) and pi_img != len(bas):
        raise ValueError(f"{c.name(x)}: even image of ab has rank {pi_img}, socle has dimension {len(bas)}")
    sec = []
    for k in range(len(bas)):
        u = solve(pi, cols[:, k], fld)
        sec.append(u)
    sec = np.array(sec, dtype=fld.dtype).T.reshape(d, len(bas))
    ker = kernel_basis(pi, fld).basis
    ops, indep = {}, True
    for name, g in (("ac", fld.matmul(a, cc)), ("bc", fld.matmul(b, cc))):
        g = fld.matmul(even, g)
        if ker.shape[0] and not fld.is_zero(fld.matmul(g, ker.T.copy())):
            indep = False
        m = [_coords_in(fld, cols, fld.matmul(g, sec[:, k])) for k in range(len(bas))]
        ops[name] = np.array(m, dtype=fld.dtype).T.reshape(len(bas), len(bas)) if m else fld.zeros((0, 0))
    return Socle(x, cols, sec, ops, indep)


# -- generalised eigenspaces ------------------------------------------------------------------


def _matpow(fld, m, n):
    out = fld.eye(m.shape[0])
    for _ in range(n):
        out = fld.matmul(out, m)
    return out


def _charpoly(fld, m):
    """Coefficients of ``det(t - m)``, highest first (Faddeev-LeVerrier needs char 0 or p > n)."""
    n = m.shape[0]
    coeffs = [fld.one]
    mk = fld.zeros((n, n))
    for k in range(1, n + 1):
        mk = fld.reduce(fld.matmul(m, mk) + coeffs[-1] * fld.eye(n))
        tr = fld.scalar(0)
        am = fld.matmul(m, mk)
        for i in range(n):
            tr = fld.add(tr, am[i, i])
        coeffs.append(fld.mul(fld.neg(tr), fld.inv(fld.scalar(k))))
    return coeffs


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out |= {d, n // d}
    return sorted(out)


def _candidates(fld: Field, m) -> list:
    if fld.p is not None:
        return [fld.scalar(k) for k in range(fld.p)]
    n = m.shape[0]
    if n == 0:
        return []
    cp = _charpoly(fld, m)
    den = 1
    for q in cp:
        den = den * Fraction(q).denominator // np.gcd(den, Fraction(q).denominator)
    ints = [int(Fraction(q) * den) for q in cp]
    while ints and ints[-1] == 0:
        ints.pop()
    roots = {fld.scalar(0)} if len(ints) < len(cp) else set()
    if len(ints) > 1:
        for p in _divisors(ints[-1]):
            for q in _divisors(ints[0]):
                for s in (1, -1):
                    roots.add(fld.scalar(Fraction(s * p, q)))
    return sorted(roots)


def joint_eigenspaces(fld: Field, a, b) -> tuple[dict, int]:
    """Joint generalised eigenspaces of commuting ``a``, ``b``: ``{(lam, mu): basis rows}``, missing dim."""
    n = a.shape[0]
    out = {}
    for lam in _candidates(fld, a):
        ka = kernel_basis(_matpow(fld, fld.reduce(a - lam * fld.eye(n)), n), fld)
        if ka.dim == 0:
            continue
        for mu in _candidates(fld, b):
            kb = kernel_basis(_matpow(fld, fld.reduce(b - mu * fld.eye(n)), n), fld)
            both = kernel_basis(np.vstack([_perp(fld, ka, n), _perp(fld, kb, n)]), fld) if n else None
            if both is not None and both.dim:
                out[(lam, mu)] = both.basis
    found = sum(v.shape[0] for v in out.values())
    return out, n - found


def _perp(fld, sub: Subspace, n):
    """Rows whose common kernel is ``sub``."""
    return annihilator(sub).basis.reshape(-1, n)


# -- the report -------------------------------------------------------------------------------


@dataclass
class TwistedReport:
    field: str
    samples: list
    socle_dims: dict
    ops: dict
    section_independent: bool
    projective_check: dict
    eigen_missing: dict
    traces: dict  # (sample, (alpha, beta)) -> value
    delta_ok: bool
    functionals_well_defined: bool
    coend_dim: int
    coend_dim_with_projectives: int
    ambient_dim: int
    loop_rank: int
    labels: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.delta_ok
            and self.functionals_well_defined
            and self.section_independent
            and self.loop_rank == len(self.samples)
            and not any(self.eigen_missing.values())
            and all(d == 1 for d in self.socle_dims.values())
        )

    def summary(self) -> dict:
        return {
            "field": self.field,
            "samples": [list(s) for s in self.samples],
            "socle_dims": self.socle_dims,
            "ops": self.ops,
            "section_independent": self.section_independent,
            "projectives_one_sided": self.projective_check,
            "eigen_missing": self.eigen_missing,
            "traces": {f"{s}|{ab}": v for (s, ab), v in self.traces.items()},
            "delta_ok": self.delta_ok,
            "functionals_well_defined": self.functionals_well_defined,
            "coend_dim": self.coend_dim,
            "coend_dim_with_projectives": self.coend_dim_with_projectives,
            "loop_rank": self.loop_rank,
            "labels": self.labels,
            "passed": self.passed,
        }


def twisted_loop_pipeline(fld: Field, samples) -> TwistedReport:
    if not samples:
        raise ValueError("at least one sample point is required")
    samples = [(fld.scalar(l), fld.scalar(m)) for l, m in samples]
    if len(set(samples)) != len(samples):
        raise ValueError("sample points must be distinct")
    c = build_lambda3_twisted(fld, samples)
    tw = list(c.subcats["twisted"])
    projs = [x for x in c.subcats["ideal"] if x not in tw]
    proj_check = {c.name(p): c.hom_dim(c.unit, p) == 0 or c.hom_dim(p, c.unit) == 0 for p in projs}

    socles = {x: socle(c, x) for x in tw}
    eig, missing = {}, {}
    for x in tw:
        s = socles[x]
        eig[x], missing[c.name(x)] = joint_eigenspaces(fld, s.ops["ac"], s.ops["bc"])

    F = split_bifunctor(c, tw)
    res = coend(F, check=True)
    res_all = coend(split_bifunctor(c, tw + projs), check=False)

    # tau: F(X, X) -> End(B(X)), phi (x) beta -> beta . phi(sigma(-))
    def tau_matrix(x):
        s = socles[x]
        phis = c.basis(x, c.unit)
        nb = s.dim
        cols = []
        for p in phis:
            row = fld.matmul(p.mat.reshape(1, -1), s.section).reshape(-1)  # phi(sigma(e_k))
            for m in range(nb):
                e = fld.zeros((nb, nb))
                e[m, :] = row
                cols.append(e.ravel())
        return np.array(cols, dtype=fld.dtype).T.reshape(nb * nb, len(phis) * nb)

    taus = {x: tau_matrix(x) for x in tw}
    # loop element: the preimage of the identity of B(X)
    loops = {}
    for x in tw:
        v = solve(taus[x], fld.eye(socles[x].dim).ravel(), fld)
        if v is None:
            raise ValueError(f"{c.name(x)}: identity of the socle is not in the image of tau")
        loops[x] = v

    pairs = sorted({ab for x in tw for ab in eig[x]})
    funcs = {}
    for ab in pairs:
        vec = fld.zeros(res.ambient_dim)
        for x in tw:
            if ab not in eig[x]:
                continue
            nb = socles[x].dim
            # projector onto the (ab) block along the other joint eigenspaces
            blocks = [eig[x][k] for k in sorted(eig[x])]
            basis = np.vstack(blocks).T.copy()
            inv = inverse(basis, fld)
            start = sum(eig[x][k].shape[0] for k in sorted(eig[x]) if k < ab)
            width = eig[x][ab].shape[0]
            sel = fld.zeros((nb, nb))
            for t in range(start, start + width):
                sel[t, t] = fld.one
            proj = fld.matmul(basis, fld.matmul(sel, inv))
            # tr(proj . tau(f)) as a functional on F(X, X)
            w = fld.matmul(proj.T.copy().ravel().reshape(1, -1), taus[x]).reshape(-1)
            off = res.offsets[x]
            vec[off : off + len(w)] = w
        funcs[ab] = vec
    rel = res.relations
    well = all(fld.is_zero(fld.matmul(rel, f)) for f in funcs.values()) if rel.size else True

    traces, delta = {}, True
    for x, s in zip(tw, samples):
        amb = fld.zeros(res.ambient_dim)
        off = res.offsets[x]
        amb[off : off + len(loops[x])] = loops[x]
        for ab in product(sorted({l for l, _ in samples}), sorted({m for _, m in samples})):
            val = fld.matmul(funcs[ab], amb) if ab in funcs else fld.zero
            traces[(c.name(x), f"{fld.fmt(ab[0])},{fld.fmt(ab[1])}")] = fld.fmt(val)
            want = fld.one if ab == s else fld.zero
            delta = delta and bool(val == want)

    classes = [res.class_of(x, loops[x]) for x in tw]
    r = rank(np.array(classes, dtype=fld.dtype), fld) if res.dim else 0
    labels = ["generator-restricted"] if res.restricted else []
    return TwistedReport(
        field=str(fld),
        samples=[(fld.fmt(l), fld.fmt(m)) for l, m in samples],
        socle_dims={c.name(x): socles[x].dim for x in tw},
        ops={c.name(x): {k: [fld.fmt(v) for v in m.ravel()] for k, m in socles[x].ops.items()} for x in tw},
        section_independent=all(s.section_independent for s in socles.values()),
        projective_check=proj_check,
        eigen_missing=missing,
        traces=traces,
        delta_ok=delta,
        functionals_well_defined=well,
        coend_dim=res.dim,
        coend_dim_with_projectives=res_all.dim,
        ambient_dim=res.ambient_dim,
        loop_rank=r,
        labels=labels,
    )


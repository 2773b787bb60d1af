"""Exact linear algebra over the rationals and prime fields.

Matrices are numpy arrays: ``int64`` residues for a prime field and ``object``
arrays of ``gmpy2.mpq`` for the rationals.  Every routine takes
the field explicitly, so a single computation never mixes the two.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from gmpy2 import mpq
from math import gcd, lcm

import numpy as np

_INT64_SAFE = 2**62
_FLOAT_EXACT = 2**53  # integers below this survive float64 sums unchanged


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class Field:
    """Either the rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not (2 < self.p < 2**31 and _is_prime(self.p)):
                raise ValueError(f"field characteristic must be an odd prime below 2^31, got {self.p}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(int(p))

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def dtype(self):
        return np.int64 if self.p is not None else object

    def __str__(self):
        return "Q" if self.p is None else f"F{self.p}"

    # scalars -----------------------------------------------------------
    def scalar(self, x):
        """Coerce an int, Fraction or scalar string into the field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p is None:
            return mpq(int(x)) if isinstance(x, np.integer) else mpq(x)
        if isinstance(x, (Fraction, type(mpq(0)))):
            return (x.numerator % self.p) * pow(x.denominator % self.p, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / mpq(x)
        return pow(int(x), -1, self.p)

    def neg(self, x):
        return self.scalar(-x)

    def mul(self, x, y):
        return self.scalar(x * y) if self.p is not None else mpq(x) * y

    def add(self, x, y):
        return self.scalar(x + y) if self.p is not None else mpq(x) + y

    def fmt(self, x) -> str:
        if self.p is None:
            x = mpq(x)
            return f"{x.numerator}/{x.denominator}"
        return f"{int(x) % self.p} mod {self.p}"

    def parse(self, s: str):
        s = s.strip()
        if self.p is None:
            if "mod" in s:
                raise ValueError(f"prime-field scalar {s!r} in a rational session")
            if "/" in s:
                a, b = s.split("/")
                num, den = int(a), int(b)
                if den <= 0 or gcd(num, den) != 1:
                    raise ValueError(f"rational {s!r} is not normalized")
                return mpq(num, den)
            return mpq(int(s))
        if "mod" in s:
            a, b = s.split("mod")
            r, q = int(a), int(b)
            if q != self.p:
                raise ValueError(f"scalar {s!r} belongs to F{q}, session field is F{self.p}")
            if not 0 <= r < q:
                raise ValueError(f"residue {r} not reduced mod {q}")
            return r
        if "/" in s:
            a, b = s.split("/")
            return self.scalar(mpq(int(a), int(b)))
        return self.scalar(int(s))

    def root_of_unity(self, n: int):
        """Smallest primitive n-th root of unity in F_p."""
        if self.p is None:
            if n in (1, 2):
                return mpq(1 if n == 1 else -1)
            raise ValueError(f"Q has no primitive {n}-th root of unity")
        if (self.p - 1) % n:
            raise ValueError(f"F{self.p} has no primitive {n}-th root of unity (need p = 1 mod {n})")
        for z in range(1, self.p):
            if pow(z, n, self.p) == 1 and all(pow(z, n // q, self.p) != 1 for q in _prime_factors(n)):
                return z
        raise AssertionError("unreachable")

    # arrays ------------------------------------------------------------
    def array(self, rows) -> np.ndarray:
        a = np.array(rows, dtype=object)
        if a.size == 0:
            return np.zeros(a.shape, dtype=self.dtype)
        flat = [self.scalar(x) for x in a.ravel()]
        out = np.empty(a.shape, dtype=self.dtype)
        out.ravel()[:] = flat
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.p is not None:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(mpq(0))
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p is not None:
            return np.mod(a, self.p)
        return a

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p is None:
            if a.shape[-1] == 0:
                return self.zeros(a.shape[:-1] + b.shape[1:])
            return _rational_matmul(a, b)
        inner = a.shape[-1]
        if inner * (self.p - 1) ** 2 < _FLOAT_EXACT:
            # reduced residues are non-negative, so BLAS accumulates exactly
            af = np.mod(a, self.p).astype(np.float64)
            bf = np.mod(b, self.p).astype(np.float64)
            return np.mod(af @ bf, self.p).astype(np.int64)
        if inner * (self.p - 1) ** 2 < _INT64_SAFE:
            return np.mod(a @ b, self.p)
        out = np.dot(a.astype(object), b.astype(object))
        return np.mod(out, self.p).astype(np.int64)

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(np.kron(a, b))

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a != 0)

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and self.is_zero(self.reduce(a - b))

    def fmt_vec(self, v) -> str:
        return " ".join(self.fmt(x) for x in v)


def _scaled_ints(a: np.ndarray):
    """Integer array and common denominator with ``a = ints / den``.

    The integer array is int64 when every entry fits, else Python ints.
    """
    flat = a.ravel().tolist()
    den = lcm(*{int(x.denominator) for x in flat}) if flat else 1
    if den == 1:
        nums = [int(x) for x in flat]
    else:
        nums = [int(x.numerator) * (den // int(x.denominator)) for x in flat]
    try:
        ints = np.array(nums, dtype=np.int64).reshape(a.shape)
    except OverflowError:
        ints = np.empty(a.shape, dtype=object)
        ints.ravel()[:] = nums
    return ints, den


def _rational_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # integer products are far cheaper than rational arithmetic
    ia, da = _scaled_ints(a)
    ib, db = _scaled_ints(b)
    fast = ia.dtype == np.int64 and ib.dtype == np.int64
    if fast and ia.size and ib.size:
        ma, mb = int(np.abs(ia).max()), int(np.abs(ib).max())
        fast = ma * mb * max(a.shape[-1], 1) < _INT64_SAFE
    if fast:
        prod = np.dot(ia, ib)
    else:
        prod = np.dot(ia.astype(object), ib.astype(object))
    den = da * db
    prod = np.asarray(prod, dtype=object if not fast else np.int64)
    out = np.empty(prod.shape, dtype=object)
    if den == 1:
        out.ravel()[:] = [mpq(x) for x in prod.ravel().tolist()]
    else:
        out.ravel()[:] = [mpq(x, den) for x in prod.ravel().tolist()]
    return out if out.shape else out[()]


def _prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def parse_field(spec: str) -> Field:
    """``'Q'``/``'rational'`` or a prime such as ``'7'`` / ``'F7'``."""
    s = spec.strip()
    if s.lower() in ("q", "rational", "rationals"):
        return Field.rationals()
    if s[:1] in "Ff":
        s = s[1:]
    return Field.prime(int(s))


# ---------------------------------------------------------------------------


def rref(m: np.ndarray, fld: Field) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form.

    Pivots are chosen as the first nonzero column and, within it, the
    smallest row index, so the result is fully deterministic.
    """
    a = fld.reduce(np.array(m, dtype=fld.dtype, copy=True))
    if a.ndim != 2:
        raise ValueError("rref expects a 2d array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = fld.inv(a[r, c])
        a[r] = fld.reduce(a[r] * inv)
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = fld.reduce(a[hit] - np.outer(col[hit], a[r]))
        pivots.append(c)
        r += 1
    return a[:r] if r < rows else a, r, pivots


@dataclass
class Subspace:
    """Row space with an RREF basis."""

    ambient_dim: int
    basis: np.ndarray
    pivots: list[int]
    fld: Field = dc_field(repr=False)

    @classmethod
    def span(cls, vectors, ambient_dim: int, fld: Field) -> "Subspace":
        vs = np.asarray(vectors, dtype=fld.dtype)
        if vs.size == 0:
            return cls(ambient_dim, fld.zeros((0, ambient_dim)), [], fld)
        vs = vs.reshape(-1, ambient_dim)
        r, rank, piv = rref(vs, fld)
        return cls(ambient_dim, r[:rank], piv, fld)

    @classmethod
    def full(cls, n: int, fld: Field) -> "Subspace":
        return cls(n, fld.eye(n), list(range(n)), fld)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Remainder of ``v`` after eliminating the pivot coordinates."""
        v = self.fld.reduce(np.array(v, dtype=self.fld.dtype))
        if self.dim == 0:
            return v
        return self.fld.reduce(v - self.fld.matmul(v[..., self.pivots], self.basis))

    def contains(self, v) -> bool:
        return self.fld.is_zero(self.reduce(v))

    def coords(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the RREF basis (assumes membership)."""
        return np.array(v, dtype=self.fld.dtype)[..., self.pivots]

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(np.vstack([self.basis, other.basis]), self.ambient_dim, self.fld)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.fld.equal(self.basis, other.basis)
        )


@dataclass
class QuotientSpace:
    """``ambient / relations`` with representatives at the non-pivot coordinates."""

    ambient_dim: int
    relations: Subspace
    rep_basis: np.ndarray  # (dim, ambient_dim)
    project: np.ndarray  # (dim, ambient_dim)
    fld: Field = dc_field(repr=False)

    @classmethod
    def of(cls, relations: Subspace) -> "QuotientSpace":
        fld, n = relations.fld, relations.ambient_dim
        piv = set(relations.pivots)
        free = [j for j in range(n) if j not in piv]
        rep = fld.zeros((len(free), n))
        proj = fld.zeros((len(free), n))
        for q, j in enumerate(free):
            rep[q, j] = fld.one
            proj[q, j] = fld.one
        for r, pc in enumerate(relations.pivots):
            proj[:, pc] = fld.reduce(-relations.basis[r, free])
        return cls(n, relations, rep, proj, fld)

    @property
    def dim(self) -> int:
        return self.rep_basis.shape[0]

    def __call__(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=self.fld.dtype)
        return self.fld.matmul(self.project, v.T).T if v.ndim > 1 else self.fld.matmul(self.project, v)


def kernel_basis(m: np.ndarray, fld: Field) -> Subspace:
    """Right kernel ``{v : m v = 0}``."""
    m = np.asarray(m, dtype=fld.dtype)
    rows, cols = m.shape
    r, rank, piv = rref(m, fld)
    free = [j for j in range(cols) if j not in set(piv)]
    vecs = fld.zeros((len(free), cols))
    for k, j in enumerate(free):
        vecs[k, j] = fld.one
        for i, pc in enumerate(piv):
            vecs[k, pc] = fld.scalar(-r[i, j])
    return Subspace.span(vecs, cols, fld) if len(free) else Subspace(cols, fld.zeros((0, cols)), [], fld)


def image_space(m: np.ndarray, fld: Field) -> Subspace:
    """Column space of ``m``."""
    m = np.asarray(m, dtype=fld.dtype)
    return Subspace.span(m.T, m.shape[0], fld)


def cokernel(m: np.ndarray, fld: Field) -> QuotientSpace:
    return QuotientSpace.of(image_space(m, fld))


def annihilator(s: Subspace) -> Subspace:
    """Functionals vanishing on ``s``, as a subspace of the dual."""
    if s.dim == 0:
        return Subspace.full(s.ambient_dim, s.fld)
    return kernel_basis(s.basis, s.fld)


def solve(m: np.ndarray, b, fld: Field):
    """A solution of ``m x = b`` with free variables set to zero, or ``None``."""
    m = np.asarray(m, dtype=fld.dtype)
    b = np.asarray(b, dtype=fld.dtype)
    if m.ndim != 2 or b.shape != (m.shape[0],):
        raise ValueError(f"solve: shapes {m.shape} and {b.shape} do not match")
    aug = np.hstack([m, b.reshape(-1, 1)])
    r, rank, piv = rref(aug, fld)
    cols = m.shape[1]
    if piv and piv[-1] == cols:
        return None
    x = fld.zeros(cols)
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols]
    return x


def rank(m: np.ndarray, fld: Field) -> int:
    m = np.asarray(m, dtype=fld.dtype)
    if m.size == 0:
        return 0
    return rref(m, fld)[1]


def inverse(m: np.ndarray, fld: Field) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    r, rk, piv = rref(np.hstack([m, fld.eye(n)]), fld)
    if rk < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return r[:, n:]

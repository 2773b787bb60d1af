"""Independent reference values, computed without importing the package.

Everything here is assembled by hand with plain integer arithmetic mod p:
pointed Z/n categories are encoded directly by their grading, and exterior
algebra modules by explicit matrices.  Run once; the output is frozen into
tests/oracles.json and the test suite compares the package against it.
"""
from __future__ import annotations

import itertools
import json
import sys
from pathlib import Path

P = 7


def rank_mod(rows, p=P):
    m = [list(r) for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] % p:
                f = m[i][col]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return r


def nullspace_mod(rows, ncols, p=P):
    """Basis of the solution space of rows . x = 0."""
    m = [list(x) for x in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] % p:
                f = m[i][col]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fcol]) % p
        out.append(v)
    return out


# -- pointed Z/3: torus as a two-variable coend ------------------------------------------


def torus_pointed(n=3):
    """sum over (g, h) of Hom(g h, h g) modulo dinaturality in g and in h.

    Every hom space between equal degrees is spanned by the identity, so a
    basis morphism f: g -> g' exists only for g = g' and acts as the identity
    on both slots; each relation is psi - psi.
    """
    ambient = [(g, h) for g in range(n) for h in range(n) if (g + h) % n == (h + g) % n]
    index = {gh: k for k, gh in enumerate(ambient)}
    rows = []
    for (g, h) in ambient:
        for g2 in range(n):
            if g2 != g:
                continue  # Hom(g, g2) = 0
            row = [0] * len(ambient)
            row[index[(g2, h)]] += 1
            row[index[(g, h)]] -= 1
            rows.append([x % P for x in row])
        for h2 in range(n):
            if h2 != h:
                continue
            row = [0] * len(ambient)
            row[index[(g, h2)]] += 1
            row[index[(g, h)]] -= 1
            rows.append([x % P for x in row])
    return len(ambient) - (rank_mod(rows) if rows else 0)


def annulus_pointed(n=3):
    return n  # End(X_g) is one-dimensional and commutators vanish


# -- exterior algebra on two generators: HH0 by brute force ------------------------------


def ext_module(shift):
    """Exterior algebra on a, b acting on itself; basis 1, a, b, ab."""
    basis = [(), (0,), (1,), (0, 1)]
    pos = {s: k for k, s in enumerate(basis)}
    acts = []
    for g in (0, 1):
        m = [[0] * 4 for _ in range(4)]
        for s in basis:
            if g in s:
                continue
            sign = -1 if sum(1 for h in s if h < g) % 2 else 1
            t = tuple(sorted(s + (g,)))
            m[pos[t]][pos[s]] = sign % P
        acts.append(m)
    parity = [(len(s) + shift) % 2 for s in basis]
    return parity, acts


def trivial_module(shift):
    return [shift], [[[0]], [[0]]]


def even_homs(src, dst):
    """Basis of even intertwiners as flattened dst x src matrices."""
    ps, As = src
    pd, Ad = dst
    ds, dd = len(ps), len(pd)
    unknowns = [(i, j) for i in range(dd) for j in range(ds) if pd[i] == ps[j]]
    idx = {u: k for k, u in enumerate(unknowns)}
    rows = []
    for A_s, A_d in zip(As, Ad):
        # (M A_s - A_d M)[i][j] = 0
        for i in range(dd):
            for j in range(ds):
                row = [0] * len(unknowns)
                for k in range(ds):
                    if (i, k) in idx and A_s[k][j]:
                        row[idx[(i, k)]] += A_s[k][j]
                for k in range(dd):
                    if (k, j) in idx and A_d[i][k]:
                        row[idx[(k, j)]] -= A_d[i][k]
                if any(x % P for x in row):
                    rows.append([x % P for x in row])
    sols = nullspace_mod(rows, len(unknowns)) if unknowns else []
    out = []
    for v in sols:
        m = [[0] * ds for _ in range(dd)]
        for (i, j), k in idx.items():
            m[i][j] = v[k]
        out.append(m)
    return out


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) % P for j in range(len(b[0]))] for i in range(len(a))]


def hh0(mods):
    """dim of sum End(X) modulo fg - gf, with coordinates in flattened matrix entries."""
    ends = [even_homs(m, m) for m in mods]
    sizes = [len(m[0]) ** 2 for m in mods]
    offs = list(itertools.accumulate([0] + sizes[:-1]))
    total = sum(sizes)
    # ambient: span of End bases inside the flattened matrices
    amb_rows = []
    for k, es in enumerate(ends):
        for e in es:
            v = [0] * total
            flat = [x for r in e for x in r]
            v[offs[k] : offs[k] + sizes[k]] = flat
            amb_rows.append(v)
    rel_rows = []
    for a, ma in enumerate(mods):
        for b, mb in enumerate(mods):
            for f in even_homs(ma, mb):
                for g in even_homs(mb, ma):
                    v = [0] * total
                    gf = [x for r in matmul(g, f) for x in r]
                    fg = [x for r in matmul(f, g) for x in r]
                    for t, x in enumerate(gf):
                        v[offs[a] + t] = (v[offs[a] + t] + x) % P
                    for t, x in enumerate(fg):
                        v[offs[b] + t] = (v[offs[b] + t] - x) % P
                    rel_rows.append(v)
    return rank_mod(amb_rows) - (rank_mod(rel_rows) if rel_rows else 0)


def main(out_path):
    L, PL = ext_module(0), ext_module(1)
    one, P1 = trivial_module(0), trivial_module(1)
    data = {
        "field": f"F{P}",
        "torus_z3_all": torus_pointed(3),
        "annulus_z3_all": annulus_pointed(3),
        "annulus_lambda2_proj": hh0([L, PL]),
        "annulus_lambda2_all": hh0([one, P1, L, PL]),
        "hom_dims_lambda2": {
            f"{a}->{b}": len(even_homs(ma, mb))
            for (a, ma), (b, mb) in itertools.product(
                [("1", one), ("P1", P1), ("L", L), ("PL", PL)], repeat=2
            )
        },
    }
    Path(out_path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    print(json.dumps(data, sort_keys=True))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/oracles.json")

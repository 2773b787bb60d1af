"""Quotient presentations of skein modules with provenance."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..exactla import QuotientSpace, Subspace


@dataclass
class SkeinPresentation:
    """An ambient space of spanning skeins modulo relations.

    ``provenance[k]`` describes ambient coordinate ``k``.  ``labels`` carries
    qualifiers such as ``generator-restricted``.
    """

    quotient: QuotientSpace
    provenance: list = field(default_factory=list)
    labels: list = field(default_factory=list)
    kind: str = "skein"
    base: object = None  # coend result whose ambient this quotient refines

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def ambient_dim(self) -> int:
        return self.quotient.ambient_dim

    @property
    def relation_rank(self) -> int:
        return self.quotient.relations.dim

    def project(self, amb) -> np.ndarray:
        return self.quotient(amb)

    def class_of(self, x: int, vec) -> np.ndarray:
        """Quotient coordinates of a loop ``x`` carrying the endomorphism with coordinates ``vec``."""
        if self.base is None:
            raise ValueError(f"{self.kind} presentation has no loop classes")
        coarse = self.base.class_of(x, vec)
        return self.quotient(self.base.quotient.fld.matmul(coarse, self.base.quotient.rep_basis))

    def summary(self) -> dict:
        return {
            "kind": self.kind,
            "dim": self.dim,
            "ambient": self.ambient_dim,
            "relation_rank": self.relation_rank,
            "labels": list(self.labels),
        }


def refine(p: SkeinPresentation, extra_rows, kind: str, labels=()) -> SkeinPresentation:
    """Quotient ``p`` further by ambient vectors ``extra_rows``."""
    fld = p.quotient.fld
    rows = [p.quotient.relations.basis]
    extra = np.asarray(extra_rows, dtype=fld.dtype)
    if extra.size:
        rows.append(extra.reshape(-1, p.ambient_dim))
    rel = Subspace.span(np.vstack(rows), p.ambient_dim, fld)
    return SkeinPresentation(
        QuotientSpace.of(rel), p.provenance, list(dict.fromkeys(list(p.labels) + list(labels))), kind, p.base
    )


def tensor_presentations(p1: SkeinPresentation, p2: SkeinPresentation, reduce_first: bool = True) -> SkeinPresentation:
    """Presentation of the tensor product of two presented modules.

    With ``reduce_first`` the factor with the smaller quotient enters through
    its representatives, giving ambient ``Q1 (x) A2`` modulo ``Q1 (x) R2``.
    Otherwise the ambient is ``A1 (x) A2`` modulo ``R1 (x) A2 + A1 (x) R2``,
    which is quadratic in both ambients and only sensible for small inputs.
    """
    fld = p1.quotient.fld
    labels = list(dict.fromkeys(list(p1.labels) + list(p2.labels)))
    kind = f"({p1.kind})x({p2.kind})"
    n2 = p2.ambient_dim
    r2 = p2.quotient.relations.basis.reshape(-1, n2)
    if reduce_first:
        swap = p2.dim * p1.ambient_dim < p1.dim * n2
        if swap:
            p1, p2 = p2, p1
            n2 = p2.ambient_dim
            r2 = p2.quotient.relations.basis.reshape(-1, n2)
        q1 = p1.dim
        rows = fld.kron(fld.eye(q1), r2) if r2.shape[0] and q1 else fld.zeros((0, q1 * n2))
        rel = Subspace.span(rows, q1 * n2, fld)
        prov = [(("rep", k), b) for k in range(q1) for b in p2.provenance] if p2.provenance else []
        if swap:
            prov = [(b, a) for a, b in prov]
        return SkeinPresentation(QuotientSpace.of(rel), prov, labels, kind)
    n1 = p1.ambient_dim
    r1 = p1.quotient.relations.basis.reshape(-1, n1)
    rows = []
    if r1.shape[0] and n2:
        rows.append(fld.kron(r1, fld.eye(n2)))
    if r2.shape[0] and n1:
        rows.append(fld.kron(fld.eye(n1), r2))
    rel = Subspace.span(np.vstack(rows) if rows else fld.zeros((0, n1 * n2)), n1 * n2, fld)
    prov = [(a, b) for a in p1.provenance for b in p2.provenance] if p1.provenance and p2.provenance else []
    return SkeinPresentation(QuotientSpace.of(rel), prov, labels, kind)

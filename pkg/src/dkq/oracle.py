"""Brute-force numeric ground truth: dense eigensolvers, SVD and multiset comparison."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from dkq.graphs import BipartiteGraph, SimpleGraph
from dkq.spectra import EigList, Spectrum

DEFAULT_LIMIT = 4000


class OracleSizeError(ValueError):
    """Matrix too large for the dense oracle without an explicit override."""


def _check_size(n: int, limit: int | None) -> None:
    if limit is not None and n > limit:
        raise OracleSizeError(f"dimension {n} exceeds the oracle limit {limit}")


def dense_spectrum(g: SimpleGraph | BipartiteGraph, bucket_tol: float = 1e-6,
                   limit: int | None = DEFAULT_LIMIT) -> Spectrum:
    """All eigenvalues of the symmetric adjacency matrix."""
    A = g.adjacency()
    _check_size(A.shape[0], limit)
    ev = np.linalg.eigvalsh(A.toarray())
    return Spectrum.from_values(ev, bucket_tol=bucket_tol)


def bipartite_spectrum(g: BipartiteGraph, bucket_tol: float = 1e-6,
                       limit: int | None = DEFAULT_LIMIT) -> Spectrum:
    """Spectrum {+-sigma_i} from the singular values of the biadjacency matrix."""
    _check_size(g.n_side, limit)
    sv = np.linalg.svd(g.biadjacency().toarray(), compute_uv=False)
    return Spectrum.from_values(np.concatenate([sv, -sv]), bucket_tol=bucket_tol)


def numeric_eig(m: np.ndarray, limit: int | None = DEFAULT_LIMIT) -> EigList:
    m = np.asarray(m)
    _check_size(m.shape[0], limit)
    return EigList(np.linalg.eigvals(m).astype(complex), "numeric")


def match_eigs(a, b) -> float:
    """Largest deviation under the best one-to-one pairing of two complex multisets."""
    a, b = np.asarray(a, dtype=complex).ravel(), np.asarray(b, dtype=complex).ravel()
    if len(a) != len(b):
        return float("inf")
    if not len(a):
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


@dataclass
class CompareReport:
    matched: int
    mismatches: list[tuple[float, int, float, int]] = field(default_factory=list)
    max_abs_deviation: float = 0.0
    tol: float = 0.0

    @property
    def equal(self) -> bool:
        return not self.mismatches and self.max_abs_deviation <= self.tol

    def as_dict(self) -> dict:
        return {"equal": self.equal, "matched": self.matched,
                "max_abs_deviation": self.max_abs_deviation, "tol": self.tol,
                "mismatches": [list(m) for m in self.mismatches]}


def compare_spectra(a: Spectrum, b: Spectrum, tol: float) -> CompareReport:
    """Align the descending expanded lists of ``a`` (expected) and ``b`` (found)."""
    ea, eb = a.expanded(), b.expanded()
    n = min(len(ea), len(eb))
    dev = np.abs(ea[:n] - eb[:n])
    ia = np.repeat(np.arange(len(a.entries)), a.mults)
    ib = np.repeat(np.arange(len(b.entries)), b.mults)
    bad = {}
    for pos in np.nonzero(dev > tol)[0]:
        key = (int(ia[pos]), int(ib[pos]))
        bad.setdefault(key, (a.entries[key[0]][0], a.entries[key[0]][1],
                             b.entries[key[1]][0], b.entries[key[1]][1]))
    mism = list(bad.values())
    for pos in range(n, len(ea)):
        mism.append((float(ea[pos]), 1, float("nan"), 0))
    for pos in range(n, len(eb)):
        mism.append((float("nan"), 0, float(eb[pos]), 1))
    worst = float(dev.max(initial=0.0))
    if len(ea) != len(eb):
        worst = float("inf")
    return CompareReport(int((dev <= tol).sum()), mism, worst, tol)

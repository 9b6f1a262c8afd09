"""Irreducible representations of G = (F_q^5, *) and their sums over S.

Besides the q^3 linear characters, G has two families of q-dimensional
representations, M_{alpha,beta,gamma} (alpha != 0) and N_{tau,mu} (tau != 0).
Each is a permutation-with-phases matrix: row j has its single nonzero entry in
column 2 x1 alpha + j (resp. 2 x1 tau + j).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from dkq import chars
from dkq.gf import FieldError, FieldSpec
from dkq.graphs import gen_set


@dataclass(frozen=True)
class MParams:
    alpha: int
    beta: int
    gamma: int

    def __post_init__(self):
        if self.alpha == 0:
            raise FieldError("M representation needs alpha != 0")


@dataclass(frozen=True)
class NParams:
    tau: int
    mu: int

    def __post_init__(self):
        if self.tau == 0:
            raise FieldError("N representation needs tau != 0")


def all_m_params(F: FieldSpec) -> list[MParams]:
    return [MParams(a, b, g) for a in range(1, F.q) for b in range(F.q) for g in range(F.q)]


def all_n_params(F: FieldSpec) -> list[NParams]:
    return [NParams(t, m) for t in range(1, F.q) for m in range(F.q)]


def linear_char_value(F: FieldSpec, a: int, b: int, g: int, X):
    """zeta^tr(a x1 + b x2 + g x3)."""
    X = np.asarray(X, dtype=np.int64)
    arg = F.add(F.add(F.mul(a, X[..., 0]), F.mul(b, X[..., 1])), F.mul(g, X[..., 2]))
    return chars.psi(F, arg)


def linear_char_S(F: FieldSpec, a: int, b: int, g: int) -> int:
    """chi_{a,b,g}(S) = q R - q, R = number of roots t of g t^2 + b t + a."""
    t = F.elements()
    vals = F.add(F.add(F.mul(g, F.square(t)), F.mul(b, t)), a)
    return F.q * int((vals == 0).sum()) - F.q


def linear_char_S_direct(F: FieldSpec, a: int, b: int, g: int) -> complex:
    return complex(linear_char_value(F, a, b, g, gen_set(F)).sum())


def _perm_phase(F: FieldSpec, p: MParams | NParams, X) -> tuple[np.ndarray, np.ndarray]:
    """Column index and phase for every row j: rep(X)[j, cols[j]] = phases[j]."""
    X = np.asarray(X, dtype=np.int64)
    j = F.elements()
    x1, x2, x3, x4, x5 = (X[i] for i in range(5))
    if isinstance(p, MParams):
        ba = F.div(p.beta, p.alpha)
        lin = F.add(x2, F.mul(ba, x3))
        const = F.add(F.add(F.mul(p.alpha, x4), F.mul(p.beta, x5)), F.mul(p.gamma, x3))
        shift = F.mul(F.mul(F.const(2), x1), p.alpha)
    else:
        lin = x3
        const = F.add(F.mul(p.tau, x5), F.mul(p.mu, x2))
        shift = F.mul(F.mul(F.const(2), x1), p.tau)
    cols = F.add(shift, j)
    phases = chars.psi(F, F.add(F.mul(lin, j), const))
    return cols, phases


def _dense(F: FieldSpec, cols, phases) -> np.ndarray:
    out = np.zeros((F.q, F.q), dtype=complex)
    out[np.arange(F.q), cols] = phases
    return out


def rep_M(F: FieldSpec, p: MParams, X) -> np.ndarray:
    """M_{alpha,beta,gamma}(X) as a dense q x q matrix indexed by field codes."""
    return _dense(F, *_perm_phase(F, p, X))


def rep_N(F: FieldSpec, p: NParams, X) -> np.ndarray:
    return _dense(F, *_perm_phase(F, p, X))


def rep(F: FieldSpec, p: MParams | NParams, X) -> np.ndarray:
    return _dense(F, *_perm_phase(F, p, X))


def rep_sum_direct(F: FieldSpec, p: MParams | NParams) -> np.ndarray:
    """Sum of the representation over all q(q-1) elements of S."""
    out = np.zeros((F.q, F.q), dtype=complex)
    rows = np.arange(F.q)
    for s in gen_set(F):
        cols, phases = _perm_phase(F, p, s)
        out[rows, cols] += phases
    return out


# characters as functions on arrays of group elements ----------------------------

CharFn = Callable[[np.ndarray], np.ndarray]


def linear_character(F: FieldSpec, a: int, b: int, g: int) -> CharFn:
    return lambda X: np.asarray(linear_char_value(F, a, b, g, X), dtype=complex)


def psi_character(F: FieldSpec, p: MParams) -> CharFn:
    """Trace of M: q zeta^tr(alpha x4 + beta x5 + gamma x3) on x1 = 0, x2 = -(beta/alpha) x3."""
    ba = F.div(p.beta, p.alpha)

    def fn(X):
        X = np.asarray(X, dtype=np.int64)
        on = (X[..., 0] == 0) & (X[..., 1] == F.neg(F.mul(ba, X[..., 2])))
        arg = F.add(F.add(F.mul(p.alpha, X[..., 3]), F.mul(p.beta, X[..., 4])),
                    F.mul(p.gamma, X[..., 2]))
        return np.where(on, F.q * chars.psi(F, arg), 0)

    return fn


def phi_character(F: FieldSpec, p: NParams) -> CharFn:
    """Trace of N: q zeta^tr(tau x5 + mu x2) on x1 = x3 = 0."""

    def fn(X):
        X = np.asarray(X, dtype=np.int64)
        on = (X[..., 0] == 0) & (X[..., 2] == 0)
        arg = F.add(F.mul(p.tau, X[..., 4]), F.mul(p.mu, X[..., 1]))
        return np.where(on, F.q * chars.psi(F, arg), 0)

    return fn


def group_elements(F: FieldSpec) -> np.ndarray:
    from dkq.graphs import all_tuples

    return all_tuples(F.q, 5)


def char_inner_product(F: FieldSpec, c1: CharFn, c2: CharFn, elements=None) -> complex:
    """(1/|G|) sum_X c1(X) conj(c2(X)).

    The sum may be restricted to ``elements`` when both characters vanish
    outside it; the normaliser stays q^5.
    """
    X = group_elements(F) if elements is None else elements
    return complex((c1(X) * np.conj(c2(X))).sum() / F.q**5)


def dim_check(q: int) -> bool:
    """(q^3 - q) q^2 + q^3 == q^5: the irreducible dimensions exhaust |G|."""
    return (q**3 - q) * q**2 + q**3 == q**5

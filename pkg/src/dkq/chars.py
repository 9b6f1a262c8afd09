"""Additive and multiplicative characters of F_q and the character sums built from them.

The canonical additive character is ``psi(a) = zeta^tr(a)`` with
``zeta = exp(2 pi i / p)``. Multiplicative characters are indexed by the
exponent ``k`` in ``[0, q-1)`` relative to the field's fixed primitive
element; the quadratic character is ``k = (q-1)/2``.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from dkq.gf import FieldError, FieldSpec


class CharSum(NamedTuple):
    """A character sum together with the Weil-type bound it is checked against."""

    value: complex
    bound: float
    ok: bool


@lru_cache(maxsize=64)
def _tables(F: FieldSpec):
    p, q = F.p, F.q
    zeta_p = np.exp(2j * np.pi * np.arange(p) / p)
    zeta_q1 = np.exp(2j * np.pi * np.arange(q - 1) / (q - 1))
    eta = np.zeros(q, dtype=np.int64)
    eta[1:] = np.where(F.log_table[1:] % 2 == 0, 1, -1)
    psi = zeta_p[F.trace_table]
    for arr in (zeta_p, zeta_q1, eta, psi):
        arr.flags.writeable = False
    return zeta_p, zeta_q1, eta, psi


def _out(x):
    return complex(x) if np.ndim(x) == 0 else x


def psi(F: FieldSpec, a):
    """Canonical additive character zeta^tr(a)."""
    return _out(_tables(F)[3][np.asarray(a, dtype=np.int64)])


def psi_table(F: FieldSpec) -> np.ndarray:
    return _tables(F)[3]


def _check_k(F: FieldSpec, k: int) -> int:
    if not 0 <= k < F.q - 1:
        raise FieldError(f"character index k={k} outside [0, {F.q - 1})")
    return int(k)


def chi(F: FieldSpec, k: int, a):
    """Multiplicative character chi_k, with chi_k(0) = 0 for k != 0 and chi_0(0) = 1."""
    k = _check_k(F, k)
    a_ = np.asarray(a, dtype=np.int64)
    zq1 = _tables(F)[1]
    logs = F.log_table[a_]
    out = np.where(a_ == 0, 1.0 if k == 0 else 0.0,
                   zq1[(k * np.where(a_ == 0, 0, logs)) % (F.q - 1)])
    return _out(out)


def chi_table(F: FieldSpec, ks=None) -> np.ndarray:
    """Matrix ``T[i, a] = chi_{ks[i]}(a)`` over all a in F_q (default: the nontrivial k)."""
    if ks is None:
        ks = np.arange(1, F.q - 1)
    ks = np.asarray(ks, dtype=np.int64)
    zq1 = _tables(F)[1]
    T = np.zeros((len(ks), F.q), dtype=complex)
    T[:, 1:] = zq1[np.outer(ks, F.log_table[1:]) % (F.q - 1)]
    T[ks == 0, 0] = 1.0
    return T


def char_order(q: int, k: int) -> int:
    return (q - 1) // math.gcd(k, q - 1)


def eta(F: FieldSpec, a):
    """Quadratic character as integers in {-1, 0, 1}."""
    out = _tables(F)[2][np.asarray(a, dtype=np.int64)]
    return int(out) if np.ndim(out) == 0 else out


def eta_table(F: FieldSpec) -> np.ndarray:
    return _tables(F)[2]


def zeta_p(F: FieldSpec, n):
    """zeta^n for integer exponents n (taken mod p)."""
    return _out(_tables(F)[0][np.asarray(n, dtype=np.int64) % F.p])


# exponential sums ---------------------------------------------------------

def linear_exp_sum(F: FieldSpec, b: int, c: int) -> complex:
    """Sum over a of zeta^tr(b a + c): zero unless b = 0."""
    if b != 0:
        return 0j
    return F.q * psi(F, c)


def linear_exp_sum_direct(F: FieldSpec, b: int, c: int) -> complex:
    a = F.elements()
    return complex(psi(F, F.add(F.mul(b, a), c)).sum())


def gauss_square_constant(F: FieldSpec) -> complex:
    """S_{y^2} = sum_a zeta^tr(a^2), in closed form."""
    root = math.sqrt(F.q)
    if F.p % 4 == 1:
        return complex((-1) ** (F.e - 1) * root)
    return complex((-1j) ** (F.e + 2) * root)


def gauss_square_sum(F: FieldSpec, g: int) -> complex:
    """sum_a zeta^tr(g a^2) = eta(g) S_{y^2}, for g != 0."""
    if g == 0:
        raise FieldError("gauss_square_sum needs g != 0")
    return eta(F, g) * gauss_square_constant(F)


def gauss_square_sum_direct(F: FieldSpec, g: int) -> complex:
    a = F.elements()
    return complex(psi(F, F.mul(g, F.square(a))).sum())


def eta_sq_minus_one_sum(F: FieldSpec) -> complex:
    """sum over nonzero a of eta(a^2 - 1), by direct summation."""
    a = F.nonzero()
    return complex(eta(F, F.sub(F.square(a), 1)).sum())


def _eta_t2m1(F: FieldSpec) -> np.ndarray:
    t = F.elements()
    return eta(F, F.sub(F.square(t), 1)).astype(float)


def weil_sum_A(F: FieldSpec, k: int, c: int) -> CharSum:
    """sum_t chi_k(t) eta(t^2 - 1) psi(c t), checked against (3 - [c = 0]) sqrt(q)."""
    k = _check_k(F, k)
    if k == 0:
        raise FieldError("weil_sum_A needs a nontrivial character")
    t = F.elements()
    val = complex((chi(F, k, t) * _eta_t2m1(F) * psi(F, F.mul(c, t))).sum())
    bound = (3 - (c == 0)) * math.sqrt(F.q)
    return CharSum(val, bound, abs(val) <= bound + 1e-9)


def _mobius_exponent(F: FieldSpec, c: int, t: np.ndarray) -> np.ndarray:
    """tr(c (t-1)/(t+1)) for t != -1."""
    return F.trace(F.mul(c, F.div(F.sub(t, 1), F.add(t, 1))))


def weil_sum_B(F: FieldSpec, k: int, c: int) -> CharSum:
    """sum_{t != -1} chi_k(t) eta(t^2 - 1) zeta^(-tr(c (t-1)/(t+1))), checked against 3 sqrt(q)."""
    k = _check_k(F, k)
    if k == 0 or c == 0:
        raise FieldError("weil_sum_B needs a nontrivial character and c != 0")
    t = F.elements()
    t = t[t != F.neg(1)]
    phase = zeta_p(F, -_mobius_exponent(F, c, t))
    val = complex((chi(F, k, t) * _eta_t2m1(F)[t] * phase).sum())
    bound = 3 * math.sqrt(F.q)
    return CharSum(val, bound, abs(val) <= bound + 1e-9)


def weil_sum_B_substituted(F: FieldSpec, k: int, c: int) -> complex:
    """The same sum after s = (t-1)/(t+1): sum_s chi(-(s-1)^(q-2)(s+1)) eta(s) zeta^(-tr(c s))."""
    k = _check_k(F, k)
    s = F.elements()
    arg = F.neg(F.mul(F.pow(F.sub(s, 1), F.q - 2), F.add(s, 1)))
    return complex((chi(F, k, arg) * eta(F, s) * psi(F, F.neg(F.mul(c, s)))).sum())


def weil_sums_A_all(F: FieldSpec) -> np.ndarray:
    """Array ``[k-1, c]`` of weil_sum_A values for every nontrivial k and every c."""
    X = chi_table(F) * _eta_t2m1(F)[None, :]
    t = F.elements()
    P = psi(F, F.mul(t[:, None], t[None, :]))
    return X @ P


def weil_sums_B_all(F: FieldSpec) -> np.ndarray:
    """Array ``[k-1, c-1]`` of weil_sum_B values for every nontrivial k and c != 0."""
    t = F.elements()
    t = t[t != F.neg(1)]
    X = chi_table(F)[:, t] * _eta_t2m1(F)[None, t]
    c = F.nonzero()
    P = zeta_p(F, -_mobius_exponent(F, c[None, :], t[:, None]))
    return X @ P


def character_sums(F: FieldSpec, h: np.ndarray) -> np.ndarray:
    """``sum_t chi_k(t) h[t]`` for every nontrivial k = 1..q-2 (one entry per k)."""
    return chi_table(F) @ np.asarray(h, dtype=complex)

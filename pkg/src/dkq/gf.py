"""Table-driven arithmetic in odd-characteristic finite fields F_q, q = p^e.

Elements are plain integers in ``[0, q)`` whose base-p digits (least
significant first) are the coefficients of the residue polynomial. All
arithmetic methods accept Python ints or integer numpy arrays and return the
same kind, so field formulas can be evaluated over whole index grids at once.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

DEFAULT_LIMIT = 1 << 14


class FieldError(ValueError):
    """Invalid field parameters or an undefined field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` or None if q is not a prime power."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p = fs[0]
    e = 0
    while q > 1:
        q //= p
        e += 1
    return p, e


# polynomials over F_p: coefficient lists, lowest degree first

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = _trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    """Trial division of monic m by every monic polynomial of degree 1..deg(m)//2."""
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree e over F_p.

    Candidates are ordered by their coefficient tuples read from the constant
    term upwards.
    """
    for low in itertools.product(range(p), repeat=e):
        m = list(low) + [1]
        if _is_irreducible(m, p):
            return m
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")  # unreachable


class FieldSpec:
    """The field F_q with exp/log tables for a fixed primitive element.

    Construction picks the lexicographically smallest monic irreducible
    modulus and the smallest-code primitive element, so two FieldSpecs with
    the same ``(p, e)`` are identical. Instances are treated as immutable.
    """

    def __init__(self, p: int, e: int = 1, limit: int = DEFAULT_LIMIT):
        if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
            raise FieldError(f"p={p} is not prime")
        if e < 1:
            raise FieldError(f"extension degree e={e} must be >= 1")
        if p == 2:
            raise FieldError("characteristic 2 is not supported; q must be odd")
        p, e = int(p), int(e)
        q = p**e
        if q > limit:
            raise FieldError(f"q={q} exceeds the field size limit {limit}")
        self.p, self.e, self.q = p, e, q
        self.modulus = smallest_irreducible(p, e)

        self._weights = p ** np.arange(e, dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self._digits = (codes[:, None] // self._weights[None, :]) % p

        self.primitive = self._find_primitive()
        exp = np.empty(q - 1, dtype=np.int64)
        cur = [1]
        g = self._to_poly(self.primitive)
        for i in range(q - 1):
            exp[i] = self._from_poly(cur)
            cur = self._pmul(cur, g)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        if (log[1:] < 0).any():
            raise FieldError("exp table is not a bijection onto F_q^*")  # unreachable
        self.exp_table = exp
        self.log_table = log
        self.exp_table.flags.writeable = False
        self.log_table.flags.writeable = False

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, e={self.e})"

    # construction helpers ------------------------------------------------

    def _to_poly(self, code: int) -> list[int]:
        return _trim([int(d) for d in self._digits[code]])

    def _from_poly(self, a: list[int]) -> int:
        return int(sum(c * self.p**i for i, c in enumerate(a)))

    def _pmul(self, a: list[int], b: list[int]) -> list[int]:
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % self.p
        return _poly_mod(out, self.modulus, self.p)

    def _ppow(self, a: list[int], n: int) -> list[int]:
        result = [1]
        while n:
            if n & 1:
                result = self._pmul(result, a)
            a = self._pmul(a, a)
            n >>= 1
        return result

    def _find_primitive(self) -> int:
        n = self.q - 1
        cofactors = [n // r for r in prime_factors(n)] if n > 1 else []
        for code in range(1, self.q):
            a = self._to_poly(code)
            if all(self._ppow(a, c) != [1] for c in cofactors):
                return code
        raise FieldError("no primitive element found")  # unreachable

    # element helpers -----------------------------------------------------

    @staticmethod
    def _wrap(x, like):
        return int(x) if np.ndim(like) == 0 else x

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)

    def const(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def digits(self, a) -> np.ndarray:
        return self._digits[np.asarray(a, dtype=np.int64)]

    # arithmetic ------------------------------------------------------------

    def add(self, a, b):
        a_, b_ = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            out = (a_ + b_) % self.p
        else:
            d = (self._digits[a_] + self._digits[b_]) % self.p
            out = d @ self._weights
        return self._wrap(out, out)

    @cached_property
    def _neg_table(self) -> np.ndarray:
        return ((-self._digits) % self.p) @ self._weights

    def neg(self, a):
        out = self._neg_table[np.asarray(a, dtype=np.int64)]
        return self._wrap(out, out)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a_, b_ = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        la, lb = self.log_table[a_], self.log_table[b_]
        out = np.where((a_ == 0) | (b_ == 0), 0,
                       self.exp_table[(la + lb) % (self.q - 1)])
        return self._wrap(out, out)

    def inv(self, a):
        a_ = np.asarray(a, dtype=np.int64)
        if (a_ == 0).any():
            raise FieldError("inverse of 0 is undefined")
        out = self.exp_table[(-self.log_table[a_]) % (self.q - 1)]
        return self._wrap(out, out)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        a_ = np.asarray(a, dtype=np.int64)
        if n < 0:
            return self.pow(self.inv(a), -n)
        if n == 0:
            out = np.ones_like(a_)
        else:
            out = np.where(a_ == 0, 0,
                           self.exp_table[(self.log_table[a_] * n) % (self.q - 1)])
        return self._wrap(out, out)

    def square(self, a):
        return self.mul(a, a)

    @cached_property
    def trace_table(self) -> np.ndarray:
        """tr(a) = a + a^p + ... + a^(p^(e-1)) for every a, as integers in [0, p)."""
        els = self.elements()
        acc = np.zeros(self.q, dtype=np.int64)
        for i in range(self.e):
            acc = self.add(acc, self.pow(els, self.p**i))
        if (acc >= self.p).any():
            raise FieldError("trace left the prime subfield")  # unreachable
        acc.flags.writeable = False
        return acc

    def trace(self, a):
        out = self.trace_table[np.asarray(a, dtype=np.int64)]
        return self._wrap(out, out)

    def dlog(self, a):
        a_ = np.asarray(a, dtype=np.int64)
        if (a_ == 0).any():
            raise FieldError("discrete log of 0 is undefined")
        out = self.log_table[a_]
        return self._wrap(out, out)


def field_new(p: int, e: int = 1, limit: int = DEFAULT_LIMIT) -> FieldSpec:
    return FieldSpec(p, e, limit)


def field_of_order(q: int, limit: int = DEFAULT_LIMIT) -> FieldSpec:
    """FieldSpec for an odd prime power q."""
    pe = prime_power(q)
    if pe is None:
        raise FieldError(f"q={q} is not a prime power")
    return FieldSpec(pe[0], pe[1], limit)


def odd_prime_powers(upto: int) -> list[int]:
    return [q for q in range(3, upto + 1)
            if (pe := prime_power(q)) is not None and pe[0] != 2]

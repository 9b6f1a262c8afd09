"""Closed-form spectra of the point graph of D(5, q) and of D(5, q) itself.

The adjacency matrix of Cay(G, S) splits into the q^3 scalars chi(S) of the
linear characters and the q x q blocks M_{alpha,beta,gamma}(S), N_{tau,mu}(S),
each repeated q times. After the reduction M_{alpha,beta,gamma} =
M_{1,beta,alpha gamma} every block with beta != 0 (and every N block) is
S_{y^2} times a matrix conjugate to U_beta or W_{beta,gamma}. Those matrices share
the eigenvectors v_chi = (chi(j))_j for nontrivial chi, with eigenvalues given
by character sums, plus two eigenvectors (z, 1, ..., 1) whose eigenvalues are
roots of a quadratic. The beta = 0 blocks are diagonalised numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from dkq import chars
from dkq.gf import FieldError, FieldSpec
from dkq.reps import MParams, NParams, linear_char_S


class SpectrumError(ArithmeticError):
    """An assembled eigenvalue is not real, or a lift leaves its domain."""


def default_bucket_tol(q: int) -> float:
    return 1e-6 * max(1, q)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset as descending (value, multiplicity) buckets."""

    entries: tuple[tuple[float, int], ...]
    bucket_tol: float

    @classmethod
    def from_values(cls, values, mults=None, bucket_tol: float = 1e-6) -> "Spectrum":
        """Bucket values: sort descending and merge neighbours closer than bucket_tol.

        A bucket's value is the multiplicity-weighted mean of its members.
        """
        v = np.asarray(values, dtype=float).ravel()
        m = np.ones(len(v), dtype=np.int64) if mults is None else np.asarray(mults, dtype=np.int64).ravel()
        order = np.argsort(-v, kind="stable")
        v, m = v[order], m[order]
        out: list[tuple[float, int]] = []
        acc_w = acc_m = 0
        prev = None
        for x, k in zip(v.tolist(), m.tolist()):
            if k <= 0:
                continue
            if prev is not None and prev - x < bucket_tol:
                acc_w += x * k
                acc_m += k
            else:
                if acc_m:
                    out.append((acc_w / acc_m, acc_m))
                acc_w, acc_m = x * k, k
            prev = x
        if acc_m:
            out.append((acc_w / acc_m, acc_m))
        return cls(tuple(out), bucket_tol)

    @property
    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.entries])

    @property
    def mults(self) -> np.ndarray:
        return np.array([m for _, m in self.entries], dtype=np.int64)

    @property
    def total(self) -> int:
        return int(sum(m for _, m in self.entries))

    def expanded(self) -> np.ndarray:
        return np.repeat(self.values, self.mults)

    def distinct(self) -> list[float]:
        return [v for v, _ in self.entries]

    def moment(self, power: int) -> float:
        return float((self.values**power * self.mults).sum())


@dataclass
class EigList:
    """The q eigenvalues of one block, with where they came from."""

    values: np.ndarray
    source: str
    bound: float = math.inf
    diagnostics: dict = field(default_factory=dict)

    @property
    def bound_ok(self) -> bool:
        return bool(np.all(np.abs(self.values) <= self.bound + 1e-8))


# block matrices ----------------------------------------------------------------

def _jk(F: FieldSpec):
    j, k = np.meshgrid(F.elements(), F.elements(), indexing="ij")
    return j, k


def _entry_matrix(F: FieldSpec, Fv: np.ndarray, Gv: np.ndarray) -> np.ndarray:
    """Case split shared by M(S) and N(S) given the F(j,k), G(j,k) grids."""
    q = F.q
    S = chars.gauss_square_constant(F)
    j, k = _jk(F)
    out = np.zeros((q, q), dtype=complex)
    g_nz = Gv != 0
    safe_G = np.where(g_nz, Gv, 1)
    expo = F.neg(F.div(F.square(Fv), F.mul(F.const(4), safe_G)))
    val = chars.eta(F, Gv) * chars.psi(F, expo) * S
    out[g_nz] = val[g_nz]
    out[(~g_nz) & (Fv == 0)] = q
    out[j == k] = 0
    return out


def m_matrix_entries(F: FieldSpec, p: MParams) -> np.ndarray:
    """M_{alpha,beta,gamma}(S) from the Gauss-sum entry formula.

    With x = (k - j)/(2 alpha): F = (k^2 - j^2)/(4 alpha) and
    G = (beta/alpha) F + gamma (k - j)/(2 alpha), valid for beta = 0 too.
    """
    if p.alpha == 0:
        raise FieldError("alpha must be nonzero")
    j, k = _jk(F)
    inv2a = F.inv(F.mul(F.const(2), p.alpha))
    Fv = F.div(F.sub(F.square(k), F.square(j)), F.mul(F.const(4), p.alpha))
    Gv = F.add(F.mul(F.div(p.beta, p.alpha), Fv), F.mul(F.mul(p.gamma, F.sub(k, j)), inv2a))
    return _entry_matrix(F, Fv, Gv)


def n_matrix_entries(F: FieldSpec, p: NParams) -> np.ndarray:
    """N_{tau,mu}(S): F = mu (k - j)/(2 tau), G = (k^2 - j^2)/(4 tau)."""
    if p.tau == 0:
        raise FieldError("tau must be nonzero")
    j, k = _jk(F)
    Fv = F.div(F.mul(p.mu, F.sub(k, j)), F.mul(F.const(2), p.tau))
    Gv = F.div(F.sub(F.square(k), F.square(j)), F.mul(F.const(4), p.tau))
    return _entry_matrix(F, Fv, Gv)


def reduce_m_params(F: FieldSpec, p: MParams) -> MParams:
    """M_{alpha,beta,gamma}(S) = M_{1,beta,alpha gamma}(S)."""
    return MParams(1, p.beta, F.mul(p.alpha, p.gamma))


def u_matrix(F: FieldSpec, beta: int) -> np.ndarray:
    """U_beta: eta(-1) S_{y^2} on j = -k != 0, eta(beta (k^2 - j^2)) elsewhere."""
    if beta == 0:
        raise FieldError("beta must be nonzero")
    j, k = _jk(F)
    S = chars.gauss_square_constant(F)
    out = chars.eta(F, F.mul(beta, F.sub(F.square(k), F.square(j)))).astype(complex)
    anti = (j == F.neg(k)) & (j != 0)
    out[anti] = chars.eta(F, F.neg(1)) * S
    return out


def u_conjugator(F: FieldSpec, beta: int) -> np.ndarray:
    """Diagonal of D with M_{1,beta,0}(S) = S_{y^2} D U_beta D^*: D_jj = zeta^tr(j^2/(16 beta))."""
    j = F.elements()
    return chars.psi(F, F.div(F.square(j), F.mul(F.const(16), beta)))


def _w_form(F: FieldSpec, sign_beta: int, c: int) -> np.ndarray:
    """0 on j^2 = k^2, else eta(beta (k^2 - j^2)) zeta^(-tr(c (k - j)/(k + j)))."""
    j, k = _jk(F)
    diff = F.sub(F.square(k), F.square(j))
    nz = diff != 0
    den = np.where(nz, F.add(k, j), 1)
    expo = F.neg(F.mul(c, F.div(F.sub(k, j), den)))
    out = sign_beta * chars.eta(F, diff) * chars.psi(F, expo)
    out[~nz] = 0
    return out


def w_constant(F: FieldSpec, beta: int, gamma: int) -> int:
    """gamma^2 / (4 beta^3)."""
    return F.div(F.square(gamma), F.mul(F.const(4), F.pow(beta, 3)))


def w_matrix(F: FieldSpec, beta: int, gamma: int) -> np.ndarray:
    if beta == 0 or gamma == 0:
        raise FieldError("beta and gamma must be nonzero")
    return _w_form(F, chars.eta(F, beta), w_constant(F, beta, gamma))


def w_conjugator(F: FieldSpec, beta: int, gamma: int) -> np.ndarray:
    """D_jj = zeta^(-tr(j^2/(16 beta) - gamma j/(4 beta^2)))."""
    j = F.elements()
    a = F.div(F.square(j), F.mul(F.const(16), beta))
    b = F.div(F.mul(gamma, j), F.mul(F.const(4), F.square(beta)))
    return chars.psi(F, F.neg(F.sub(a, b)))


def w_shift(F: FieldSpec, beta: int, gamma: int) -> np.ndarray:
    """Index permutation j -> j - gamma/beta taking M_{1,beta,gamma}(S) to S_{y^2} D^* W D."""
    return F.sub(F.elements(), F.div(gamma, beta))


def n_scaled_matrix(F: FieldSpec, p: NParams) -> np.ndarray:
    """N_{tau,mu}(S) / S_{y^2} written as U_tau (mu = 0) or in W form with constant mu^2/(4 tau)."""
    if p.mu == 0:
        return u_matrix(F, p.tau)
    return _w_form(F, chars.eta(F, p.tau), n_constant(F, p))


def n_constant(F: FieldSpec, p: NParams) -> int:
    return F.div(F.square(p.mu), F.mul(F.const(4), p.tau))


# closed-form eigenvalues ------------------------------------------------------------

def _quadratic_roots(b: complex, c: complex) -> np.ndarray:
    """Roots of lambda^2 + b lambda + c."""
    return np.roots([1, b, c]).astype(complex)


def _eta_t2m1(F: FieldSpec) -> np.ndarray:
    t = F.elements()
    return chars.eta(F, F.sub(F.square(t), 1)).astype(float)


def eig_closed_U(F: FieldSpec, beta: int) -> EigList:
    """Eigenvalues of U_beta.

    For each nontrivial chi of order r:
    eta(beta) sum_t chi(t) eta(t^2 - 1) + (-1)^((q-1)/r) eta(-1) S_{y^2}.
    The two remaining eigenvalues solve
    lambda^2 - (S_{y^2} - 2 eta(beta)) lambda - (q-1) = 0 for q = 1 mod 4 and
    lambda^2 + S_{y^2} lambda + (q-1) = 0 for q = 3 mod 4.
    """
    if beta == 0:
        raise FieldError("beta must be nonzero")
    q = F.q
    S = chars.gauss_square_constant(F)
    eb = chars.eta(F, beta)
    em1 = chars.eta(F, F.neg(1))
    ks = np.arange(1, q - 1)
    signs = np.array([(-1) ** ((q - 1) // chars.char_order(q, int(k))) for k in ks])
    lam_chi = eb * chars.character_sums(F, _eta_t2m1(F)) + signs * em1 * S
    if q % 4 == 1:
        roots = _quadratic_roots(-(S - 2 * eb), -(q - 1))
    else:
        roots = _quadratic_roots(S, q - 1)
    # first coordinate of each special eigenvector (z, 1, ..., 1)
    z = eb * (q - 1) / roots
    return EigList(np.concatenate([lam_chi, roots]), "closed-form", 3 * math.sqrt(q),
                   {"special_roots": roots, "special_z": z})


def _eig_closed_wform(F: FieldSpec, eb: int, c: int) -> EigList:
    """Eigenvalues of the W-form matrix with sign eta(beta) = eb and trace constant c != 0.

    For nontrivial chi: eb sum_{t != -1} chi(t) eta(t^2 - 1) zeta^(-tr(c (t-1)/(t+1))).
    The special vectors give z lambda = eb zeta^(-tr c) (q-1) and
    lambda = eta(-1)(q-1)/lambda + eta(-1) S_{y^2} - eb (zeta^(-tr c) + eta(-1) zeta^(tr c)).
    """
    q = F.q
    S = chars.gauss_square_constant(F)
    em1 = chars.eta(F, F.neg(1))
    t = F.elements()
    h = np.zeros(q, dtype=complex)
    keep = t != F.neg(1)
    tk = t[keep]
    h[keep] = _eta_t2m1(F)[keep] * chars.psi(
        F, F.neg(F.mul(c, F.div(F.sub(tk, 1), F.add(tk, 1)))))
    lam_chi = eb * chars.character_sums(F, h)
    zc = chars.psi(F, c)
    lin = em1 * S - eb * (np.conj(zc) + em1 * zc)
    roots = _quadratic_roots(-lin, -em1 * (q - 1))
    z = eb * np.conj(zc) * (q - 1) / roots
    return EigList(np.concatenate([lam_chi, roots]), "closed-form", 3 * math.sqrt(q),
                   {"special_roots": roots, "special_z": z})


def eig_closed_W(F: FieldSpec, beta: int, gamma: int) -> EigList:
    if beta == 0 or gamma == 0:
        raise FieldError("beta and gamma must be nonzero")
    return _eig_closed_wform(F, chars.eta(F, beta), w_constant(F, beta, gamma))


def eig_closed_N(F: FieldSpec, p: NParams) -> EigList:
    """Eigenvalues of N_{tau,mu}(S) / S_{y^2}."""
    if p.mu == 0:
        return eig_closed_U(F, p.tau)
    return _eig_closed_wform(F, chars.eta(F, p.tau), n_constant(F, p))


def eig_block_M(F: FieldSpec, p: MParams) -> EigList:
    """Eigenvalues of M_{alpha,beta,gamma}(S), checked against |lambda| <= 3q."""
    r = reduce_m_params(F, p)
    S = chars.gauss_square_constant(F)
    if r.beta != 0:
        base = eig_closed_U(F, r.beta) if r.gamma == 0 else eig_closed_W(F, r.beta, r.gamma)
        vals, src = S * base.values, "closed-form"
    else:
        vals, src = np.linalg.eigvalsh(m_matrix_entries(F, r)).astype(complex), "numeric"
    return EigList(vals, src, 3 * F.q)


def eig_block_N(F: FieldSpec, p: NParams) -> EigList:
    S = chars.gauss_square_constant(F)
    return EigList(S * eig_closed_N(F, p).values, "closed-form", 3 * F.q)


# assembly ---------------------------------------------------------------------------

def _real(vals: np.ndarray, q: int, what: str) -> np.ndarray:
    vals = np.asarray(vals, dtype=complex)
    worst = float(np.abs(vals.imag).max(initial=0.0))
    if worst >= 1e-8 * q:
        raise SpectrumError(f"{what}: imaginary residue {worst:.3e} exceeds tolerance")
    return vals.real


def point_spectrum_pieces(F: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    """(values, multiplicities) of Cay(G, S) before bucketing."""
    q = F.q
    vals: list[np.ndarray] = []
    mults: list[np.ndarray] = []

    lin = [linear_char_S(F, a, b, g) for a in range(q) for b in range(q) for g in range(q)]
    vals.append(np.array(lin, dtype=float))
    mults.append(np.ones(len(lin), dtype=np.int64))

    # reduced M blocks (1, beta, gamma'): (q-1) source triples times the q-fold power
    for beta in range(q):
        for gamma in range(q):
            ev = eig_block_M(F, MParams(1, beta, gamma))
            vals.append(_real(ev.values, q, f"M(1,{beta},{gamma})"))
            mults.append(np.full(q, q * (q - 1), dtype=np.int64))

    for tau in range(1, q):
        for mu in range(q):
            ev = eig_block_N(F, NParams(tau, mu))
            vals.append(_real(ev.values, q, f"N({tau},{mu})"))
            mults.append(np.full(q, q, dtype=np.int64))
    return np.concatenate(vals), np.concatenate(mults)


def assemble_point_spectrum(F: FieldSpec, bucket_tol: float | None = None) -> Spectrum:
    """Full spectrum of the point graph Cay(G, S) of D(5, q)."""
    tol = default_bucket_tol(F.q) if bucket_tol is None else bucket_tol
    v, m = point_spectrum_pieces(F)
    s = Spectrum.from_values(v, m, tol)
    if s.total != F.q**5:
        raise SpectrumError(f"multiplicities sum to {s.total}, expected {F.q**5}")  # unreachable
    return s


def lift_to_bipartite(s: Spectrum, q: int) -> Spectrum:
    """Halved-graph eigenvalue lambda -> +-sqrt(lambda + q); lambda = -q -> 0 twice."""
    vals, mults = [], []
    for lam, m in s.entries:
        if lam < -q - s.bucket_tol:
            raise SpectrumError(f"eigenvalue {lam} below -q={-q}")
        if abs(lam + q) < s.bucket_tol:
            vals.append(0.0)
            mults.append(2 * m)
        else:
            r = math.sqrt(lam + q)
            vals += [r, -r]
            mults += [m, m]
    return Spectrum.from_values(vals, mults, s.bucket_tol)


def lambda2(s: Spectrum) -> float:
    """Second entry of the descending multiplicity-expanded list."""
    if s.total < 2:
        raise ValueError("spectrum has fewer than two eigenvalues")
    top, m = s.entries[0]
    return top if m > 1 else s.entries[1][0]


def below_top(s: Spectrum) -> float:
    """Largest value strictly below the top bucket."""
    return s.entries[1][0] if len(s.entries) > 1 else s.entries[0][0]


@dataclass
class BoundsReport:
    q: int
    lambda2: float
    below_top: float
    spectral_gap: float
    cheeger_lower: float
    cheeger_upper: float
    two_sqrt_q: float
    ramanujan_threshold: float
    bound_2sqrtq: bool
    ramanujan: bool


def bounds_from_spectrum(s: Spectrum, degree: int) -> BoundsReport:
    """Spectral gap, Cheeger interval and threshold checks for a degree-regular graph."""
    l2 = lambda2(s)
    tol = s.bucket_tol
    return BoundsReport(
        q=degree,
        lambda2=l2,
        below_top=below_top(s),
        spectral_gap=degree - l2,
        cheeger_lower=(degree - l2) / 2,
        cheeger_upper=math.sqrt(max(degree**2 - l2**2, 0.0)),
        two_sqrt_q=2 * math.sqrt(degree),
        ramanujan_threshold=2 * math.sqrt(degree - 1),
        bound_2sqrtq=l2 <= 2 * math.sqrt(degree) + tol,
        ramanujan=l2 <= 2 * math.sqrt(degree - 1) + tol,
    )


def bounds_report(F: FieldSpec, bucket_tol: float | None = None) -> BoundsReport:
    """Bounds for D(5, q) from the representation pipeline."""
    s = lift_to_bipartite(assemble_point_spectrum(F, bucket_tol), F.q)
    return bounds_from_spectrum(s, F.q)

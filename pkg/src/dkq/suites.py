"""Verification suites run by ``dkq verify``.

Each suite takes a list of field sizes and a seed and returns one Check per
invariant and field size. Failures are collected, never raised, so a sweep
reports every violation at once.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass

import numpy as np

from dkq import chars, graphs, oracle, reps, spectra
from dkq.gf import FieldSpec, field_of_order, prime_factors


@dataclass
class Check:
    suite: str
    name: str
    q: int
    passed: bool
    count: int = 0
    worst: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


def _pairs(F: FieldSpec, rng, exhaustive_upto: int = 27, samples: int = 1000):
    if F.q <= exhaustive_upto:
        a, b = np.meshgrid(F.elements(), F.elements(), indexing="ij")
        return a.ravel(), b.ravel()
    return rng.integers(0, F.q, samples), rng.integers(0, F.q, samples)


def field_suite(qs, seed=0) -> list[Check]:
    out = []
    rng = np.random.default_rng(seed)
    for q in qs:
        F = field_of_order(q)
        a, b = _pairs(F, rng)
        if q <= 27:
            x, y, z = (g.ravel() for g in np.meshgrid(F.elements(), F.elements(), F.elements(), indexing="ij"))
        else:
            x, y, z = (rng.integers(0, q, 1000) for _ in range(3))
        ok_assoc = np.all(F.add(F.add(x, y), z) == F.add(x, F.add(y, z))) and \
            np.all(F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z)))
        ok_dist = np.all(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)))
        ok_comm = np.all(F.add(a, b) == F.add(b, a)) and np.all(F.mul(a, b) == F.mul(b, a))
        nz = F.nonzero()
        ok_inv = np.all(F.mul(nz, F.inv(nz)) == 1) and np.all(F.add(F.elements(), F.neg(F.elements())) == 0)
        out += [Check("field", "associativity", q, bool(ok_assoc), len(x)),
                Check("field", "distributivity", q, bool(ok_dist), len(x)),
                Check("field", "commutativity", q, bool(ok_comm), len(a)),
                Check("field", "inverses", q, bool(ok_inv), q)]
        bij = np.array_equal(F.exp_table[F.log_table[nz]], nz) and len(set(F.exp_table.tolist())) == q - 1
        out.append(Check("field", "exp/log bijection", q, bool(bij), q - 1))
        out.append(Check("field", "primitive order q-1", q,
                         all(F.pow(F.primitive, (q - 1) // r) != 1 for r in prime_factors(q - 1)), 1))
        tr = F.trace_table
        lin = np.all((F.trace(a) + F.trace(b)) % F.p == F.trace(F.add(a, b)))
        frob = np.all(F.trace(F.pow(F.elements(), F.p)) == tr)
        kern = int((tr == 0).sum())
        out += [Check("field", "trace additive", q, bool(lin), len(a)),
                Check("field", "trace Frobenius-invariant", q, bool(frob), q),
                Check("field", "trace surjective", q, set(tr.tolist()) == set(range(F.p)), q),
                Check("field", "trace kernel size q/p", q, kern == q // F.p, q)]
    return out


def chars_suite(qs, seed=0) -> list[Check]:
    out = []
    rng = np.random.default_rng(seed)
    for q in qs:
        F = field_of_order(q)
        T = chars.chi_table(F)
        a, b = _pairs(F, rng)
        keep = (a != 0) & (b != 0)
        a, b = a[keep], b[keep]
        w = float(np.abs(T[:, F.mul(a, b)] - T[:, a] * T[:, b]).max(initial=0))
        out.append(Check("chars", "multiplicativity", q, w < 1e-9, T.shape[0] * len(a), w))
        G = T[:, 1:] @ T[:, 1:].conj().T
        w = float(np.abs(G - (q - 1) * np.eye(len(G))).max(initial=0))
        out.append(Check("chars", "orthogonality", q, w < 1e-8, G.size, w))
        squares = set(F.square(F.nonzero()).tolist())
        eta = chars.eta_table(F)
        ok = all((eta[x] == 1) == (x in squares) for x in range(1, q)) and len(squares) == (q - 1) // 2
        out.append(Check("chars", "eta marks squares", q, ok, q - 1))
        S = chars.gauss_square_constant(F)
        if q <= 81:
            w = max(abs(chars.gauss_square_sum(F, g) - chars.gauss_square_sum_direct(F, g)) for g in range(1, q))
            out.append(Check("chars", "gauss square sum closed form", q, w <= 1e-10 * math.sqrt(q), q - 1, w))
        w = max(abs(abs(S) ** 2 - q), abs(chars.eta(F, F.neg(1)) * S - q / S))
        out.append(Check("chars", "|S|^2 = q and eta(-1) S = q/S", q, w < 1e-9, 1, w))
        expect = -2 if q % 4 == 1 else 0
        w = abs(chars.eta_sq_minus_one_sum(F) - expect)
        out.append(Check("chars", "sum eta(a^2-1)", q, w < 1e-10, 1, w))
        w = 0.0
        for bb, c in itertools.product(range(min(q, 9)), range(min(q, 9))):
            w = max(w, abs(chars.linear_exp_sum(F, bb, c) - chars.linear_exp_sum_direct(F, bb, c)))
        out.append(Check("chars", "linear exponential sum", q, w <= 1e-10 * q, 81, w))
    return out


def weil_suite(qs, seed=0) -> list[Check]:
    out = []
    for q in qs:
        F = field_of_order(q)
        A = chars.weil_sums_A_all(F)
        bound = np.where(np.arange(q) == 0, 2, 3) * math.sqrt(q)
        excess = np.abs(A) - bound[None, :]
        out.append(Check("weil", "sum A bound", q, bool((excess <= 1e-9).all()), A.size,
                         float(excess.max(initial=-np.inf))))
        B = chars.weil_sums_B_all(F)
        excess = np.abs(B) - 3 * math.sqrt(q)
        out.append(Check("weil", "sum B bound", q, bool((excess <= 1e-9).all()), B.size,
                         float(excess.max(initial=-np.inf))))
        ks = range(1, q - 1) if q <= 13 else (1, (q - 1) // 2, q - 2)
        w = 0.0
        for k in ks:
            for c in range(1, min(q, 13)):
                w = max(w, abs(chars.weil_sum_B(F, k, c).value - chars.weil_sum_B_substituted(F, k, c)))
        out.append(Check("weil", "Mobius substitution identity", q, w < 1e-9, 1, w))
    return out


def _random_params(F: FieldSpec, rng, n: int):
    q = F.q
    ms = [reps.MParams(int(rng.integers(1, q)), int(rng.integers(0, q)), int(rng.integers(0, q))) for _ in range(n)]
    ns = [reps.NParams(int(rng.integers(1, q)), int(rng.integers(0, q))) for _ in range(n)]
    return ms + ns


def reps_suite(qs, seed=0, tuples: int = 20, pairs: int = 100) -> list[Check]:
    out = []
    rng = np.random.default_rng(seed)
    for q in qs:
        F = field_of_order(q)
        hom = uni = 0.0
        for p in _random_params(F, rng, tuples):
            for _ in range(pairs):
                X, Y = rng.integers(0, q, 5), rng.integers(0, q, 5)
                RX, RY = reps.rep(F, p, X), reps.rep(F, p, Y)
                hom = max(hom, np.abs(reps.rep(F, p, graphs.group_mul(F, X, Y)) - RX @ RY).max())
                uni = max(uni, np.abs(RX @ reps.rep(F, p, graphs.group_inv(F, X)) - np.eye(q)).max())
        n = 2 * tuples * pairs
        out.append(Check("reps", "homomorphism", q, hom < 1e-9, n, float(hom)))
        out.append(Check("reps", "unitarity", q, uni < 1e-9, n, float(uni)))
        if q <= 5:
            w = _orthonormality_worst(F, exhaustive=(q == 3), rng=rng)
            out.append(Check("reps", "character orthonormality", q, w < 1e-8, 1, w))
        out.append(Check("reps", "dimension count", q, reps.dim_check(q), 1))
    return out


def character_table(F: FieldSpec, rng=None, sample: int | None = None):
    """All irreducible characters (or a random sample of them) as callables."""
    q = F.q
    fns = [reps.linear_character(F, a, b, g) for a in range(q) for b in range(q) for g in range(q)]
    fns += [reps.psi_character(F, p) for p in reps.all_m_params(F)]
    fns += [reps.phi_character(F, p) for p in reps.all_n_params(F)]
    if sample is not None and sample < len(fns):
        idx = sorted(rng.choice(len(fns), sample, replace=False))
        fns = [fns[i] for i in idx]
    return fns


def _orthonormality_worst(F: FieldSpec, exhaustive: bool, rng) -> float:
    X = reps.group_elements(F)
    fns = character_table(F, rng, None if exhaustive else 24)
    C = np.array([f(X) for f in fns])
    gram = C @ C.conj().T / F.q**5
    return float(np.abs(gram - np.eye(len(fns))).max())


def blocks_suite(qs, seed=0) -> list[Check]:
    out = []
    for q in qs:
        F = field_of_order(q)
        S = chars.gauss_square_constant(F)
        if q <= 7:
            w = 0.0
            for p in reps.all_m_params(F):
                w = max(w, np.abs(reps.rep_sum_direct(F, p) - spectra.m_matrix_entries(F, p)).max())
            for p in reps.all_n_params(F):
                w = max(w, np.abs(reps.rep_sum_direct(F, p) - spectra.n_matrix_entries(F, p)).max())
            out.append(Check("blocks", "entry formulas vs direct sums", q, w < 1e-9,
                             q * q * (q - 1) + q * (q - 1), float(w)))
        closed = vec = spec_rel = bound = 0.0
        n = 0
        for b in range(1, q):
            e = spectra.eig_closed_U(F, b)
            U = spectra.u_matrix(F, b)
            closed = max(closed, oracle.match_eigs(e.values, np.linalg.eigvals(U)))
            vec = max(vec, _eigvec_worst(F, U, e))
            z, r = e.diagnostics["special_z"], e.diagnostics["special_roots"]
            spec_rel = max(spec_rel, float(np.abs(z * r - chars.eta(F, b) * (q - 1)).max()))
            bound = max(bound, float(np.abs(e.values).max()))
            n += 1
            for g in range(1, q):
                e = spectra.eig_closed_W(F, b, g)
                W = spectra.w_matrix(F, b, g)
                closed = max(closed, oracle.match_eigs(e.values, np.linalg.eigvals(W)))
                vec = max(vec, _eigvec_worst(F, W, e))
                bound = max(bound, float(np.abs(e.values).max()))
                n += 1
        for p in reps.all_n_params(F):
            e = spectra.eig_closed_N(F, p)
            closed = max(closed, oracle.match_eigs(e.values, np.linalg.eigvals(spectra.n_matrix_entries(F, p) / S)))
            bound = max(bound, float(np.abs(e.values).max()))
            n += 1
        post = max(float(np.abs(spectra.eig_block_M(F, reps.MParams(1, b, g)).values).max())
                   for b in range(q) for g in range(q))
        out += [Check("blocks", "closed form vs numeric eigenvalues", q, closed < 1e-8, n, closed),
                Check("blocks", "eigenvector identities", q, vec < 1e-8, n, vec),
                Check("blocks", "special-vector relation z*lambda", q, spec_rel < 1e-8, q - 1, spec_rel),
                Check("blocks", "|lambda| <= 3 sqrt(q) before scaling", q,
                      bound <= 3 * math.sqrt(q) + 1e-8, n, bound),
                Check("blocks", "|lambda| <= 3q after scaling", q, post <= 3 * q + 1e-6, q * q, post)]
    return out


def _eigvec_worst(F: FieldSpec, Mx: np.ndarray, e: spectra.EigList) -> float:
    T = chars.chi_table(F)
    lam = e.values[: F.q - 2]
    return float(np.abs(T @ Mx.T - lam[:, None] * T).max(initial=0.0))


def assembly_suite(qs, seed=0, allow_large: bool = False) -> list[Check]:
    out = []
    for q in qs:
        F = field_of_order(q)
        s = spectra.assemble_point_spectrum(F)
        tol = 1e-6 if q <= 3 else 1e-5
        if q <= 5 or allow_large:
            lim = None if allow_large else oracle.DEFAULT_LIMIT
            d = oracle.dense_spectrum(graphs.cayley_graph(F), s.bucket_tol, limit=lim)
            rep = oracle.compare_spectra(d, s, tol)
            out.append(Check("assembly", "closed form vs dense eigensolver", q, rep.equal,
                             rep.matched, rep.max_abs_deviation))
        out += trace_checks(s, q, "assembly")
        l2 = spectra.lambda2(s)
        out.append(Check("assembly", "point lambda2 <= 3q", q, l2 <= 3 * q + s.bucket_tol, 1, l2))
        lift = spectra.lift_to_bipartite(s, q)
        l2b = spectra.lambda2(lift)
        out.append(Check("assembly", "D(5,q) lambda2 <= 2 sqrt(q)", q,
                         l2b <= 2 * math.sqrt(q) + lift.bucket_tol, 1, l2b))
        out.append(Check("assembly", "lifted total 2 q^5", q, lift.total == 2 * q**5, 1))
    return out


def trace_checks(s: spectra.Spectrum, q: int, suite: str) -> list[Check]:
    """sum lambda m = 0 and sum lambda^2 m = q^5 q(q-1), relative 1e-6."""
    m1, m2 = s.moment(1), s.moment(2)
    scale = float((np.abs(s.values) * s.mults).sum())
    edges2 = q**5 * q * (q - 1)
    r1 = abs(m1) / scale
    r2 = abs(m2 - edges2) / edges2
    return [Check(suite, "trace sum = 0", q, r1 <= 1e-6, s.total, r1),
            Check(suite, "sum of squares = 2|E|", q, r2 <= 1e-6, s.total, r2)]


def graphs_suite(qs, seed=0) -> list[Check]:
    out = []
    for q in qs:
        F = field_of_order(q)
        D = graphs.d_graph(5, F)
        reg = set(D.point_degrees().tolist()) == {q} and set(D.line_degrees().tolist()) == {q}
        out.append(Check("graphs", "D(5,q) q-regular", q, reg, D.n))
        if q <= 5:
            g = graphs.girth(D)
            out.append(Check("graphs", "girth D(5,q) >= 10", q, g >= 10, D.n, float(g)))
        out.append(Check("graphs", "D(5,q) connected", q, len(graphs.components(D)) == 1, D.n))
        G = graphs.gamma_graph(F)
        iso = np.array_equal(graphs.relabel(D, F).edges, G.edges)
        out.append(Check("graphs", "pi maps D(5,q) edges onto Gamma(q)", q, iso, len(D.edges)))
        S = graphs.gen_set(F)
        Sset = set(map(tuple, S.tolist()))
        inv = set(map(tuple, graphs.group_inv(F, S).tolist()))
        out.append(Check("graphs", "S = S^-1", q, Sset == inv and len(Sset) == q * (q - 1), len(S)))
        C = graphs.cayley_graph(F)
        P = graphs.point_graph_direct(F)
        out.append(Check("graphs", "point graph == Cayley graph", q, np.array_equal(C.edges, P.edges), len(C.edges)))
        out.append(Check("graphs", "point graph == halved Gamma(q)", q,
                         np.array_equal(graphs.halved_graph(G).edges, P.edges), len(P.edges)))
        out.append(Check("graphs", "Cayley graph q(q-1)-regular", q,
                         set(C.degrees().tolist()) == {q * (q - 1)}, C.n))
        out.append(Check("graphs", "point graph connected", q, len(graphs.components(C)) == 1, C.n))
        d = graphs.decode(C.edges, q, 5)
        out.append(Check("graphs", "adjacent points differ in first coordinate", q,
                         bool((d[:, 0, 0] != d[:, 1, 0]).all()), len(C.edges)))
    return out


SUITES = {
    "field": field_suite,
    "chars": chars_suite,
    "weil": weil_suite,
    "reps": reps_suite,
    "blocks": blocks_suite,
    "assembly": assembly_suite,
    "graphs": graphs_suite,
}

import math

import numpy as np
import pytest

from dkq import chars, graphs, oracle, reps, spectra
from dkq.gf import FieldError, field_of_order
from dkq.reps import MParams, NParams
from dkq.spectra import Spectrum, SpectrumError

QS = [3, 5, 7, 9, 11, 13]


def test_bucketing():
    s = Spectrum.from_values([1.0, 1.0 + 1e-9, 3.0, -2.0], bucket_tol=1e-6)
    assert [m for _, m in s.entries] == [1, 2, 1]
    assert s.values[0] == 3.0 and s.total == 4
    assert s.moment(1) == pytest.approx(3 + 2 + 1e-9 - 2)


def test_lambda2_examples():
    assert spectra.lambda2(Spectrum(((6.0, 1), (3.0, 10), (-1.0, 5)), 1e-6)) == 3.0
    assert spectra.lambda2(Spectrum(((6.0, 2), (3.0, 10)), 1e-6)) == 6.0


def test_lift_examples():
    s = spectra.lift_to_bipartite(Spectrum(((6.0, 1), (-3.0, 4)), 1e-6), 3)
    assert s.entries == ((3.0, 1), (0.0, 8), (-3.0, 1))
    with pytest.raises(SpectrumError):
        spectra.lift_to_bipartite(Spectrum(((-4.0, 1),), 1e-6), 3)


def test_cheeger_degenerate():
    b = spectra.bounds_from_spectrum(Spectrum(((3.0, 2), (0.0, 4)), 1e-6), 3)
    assert b.cheeger_lower == 0 and b.cheeger_upper == 0


def test_u_matrix_q3():
    F = field_of_order(3)
    r3 = 1j * math.sqrt(3)
    want = np.array([[0, 1, 1], [-1, 0, -r3], [-1, -r3, 0]])
    assert np.allclose(spectra.u_matrix(F, 1), want)


def test_u_eigs_q3():
    F = field_of_order(3)
    e = spectra.eig_closed_U(F, 1)
    S = chars.gauss_square_constant(F)
    assert abs(e.values[0] - 1j * math.sqrt(3)) < 1e-12
    scaled = np.sort_complex(S * e.values[1:])
    want = np.sort_complex(np.array([(3 - math.sqrt(33)) / 2, (3 + math.sqrt(33)) / 2], dtype=complex))
    assert np.allclose(scaled, want)
    v = np.array([0, 1, -1])
    assert np.allclose(spectra.u_matrix(F, 1) @ v, 1j * math.sqrt(3) * v)


def test_reduce():
    F = field_of_order(7)
    assert spectra.reduce_m_params(F, MParams(2, 1, 3)) == MParams(1, 1, 6)
    assert spectra.reduce_m_params(F, MParams(1, 4, 5)) == MParams(1, 4, 5)
    assert np.allclose(np.sort_complex(spectra.eig_block_M(F, MParams(2, 1, 3)).values),
                       np.sort_complex(spectra.eig_block_M(F, MParams(1, 1, 6)).values))


@pytest.mark.parametrize("q", [3, 5])
def test_reduce_entrywise(q):
    F = field_of_order(q)
    for p in reps.all_m_params(F):
        assert np.allclose(spectra.m_matrix_entries(F, p), spectra.m_matrix_entries(F, spectra.reduce_m_params(F, p)))


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_decompositions(q):
    F = field_of_order(q)
    S = chars.gauss_square_constant(F)
    for b in range(1, q):
        D = np.diag(spectra.u_conjugator(F, b))
        M = spectra.m_matrix_entries(F, MParams(1, b, 0))
        assert np.allclose(M, S * D @ spectra.u_matrix(F, b) @ D.conj().T)
        for g in range(1, q):
            W = spectra.w_matrix(F, b, g)
            D = np.diag(spectra.w_conjugator(F, b, g))
            sh = spectra.w_shift(F, b, g)
            M = spectra.m_matrix_entries(F, MParams(1, b, g))
            assert np.allclose(M[np.ix_(sh, sh)], S * D.conj().T @ W @ D)
            nz = W[W != 0]
            assert np.allclose(np.abs(nz), 1)


def test_n_mu_zero_is_u():
    F = field_of_order(7)
    S = chars.gauss_square_constant(F)
    for t in range(1, 7):
        assert np.allclose(spectra.n_matrix_entries(F, NParams(t, 0)) / S, spectra.u_matrix(F, t))
        assert np.array_equal(spectra.eig_closed_N(F, NParams(t, 0)).values, spectra.eig_closed_U(F, t).values)


@pytest.mark.parametrize("q", QS)
def test_closed_forms_match_numeric(q):
    F = field_of_order(q)
    for b in range(1, q):
        e = spectra.eig_closed_U(F, b)
        assert oracle.match_eigs(e.values, np.linalg.eigvals(spectra.u_matrix(F, b))) < 1e-8
        assert e.bound_ok
        for g in range(1, q, max(1, q // 4)):
            e = spectra.eig_closed_W(F, b, g)
            assert oracle.match_eigs(e.values, np.linalg.eigvals(spectra.w_matrix(F, b, g))) < 1e-8
            assert e.bound_ok
    for p in reps.all_n_params(F)[:: max(1, q // 3)]:
        e = spectra.eig_closed_N(F, p)
        assert oracle.match_eigs(e.values, np.linalg.eigvals(spectra.n_scaled_matrix(F, p))) < 1e-8


def test_m_beta_zero_block():
    q = 7
    F = field_of_order(q)
    M = spectra.m_matrix_entries(F, MParams(1, 0, 0))
    j = np.arange(1, q)
    assert np.allclose(M[j, F.neg(j)], q) and np.count_nonzero(M) == q - 1
    vals = np.sort(spectra.eig_block_M(F, MParams(1, 0, 0)).values.real)
    assert np.allclose(vals, [-q] * 3 + [0] + [q] * 3)


def test_u_requires_nonzero_beta():
    F = field_of_order(5)
    with pytest.raises(FieldError):
        spectra.u_matrix(F, 0)
    with pytest.raises(FieldError):
        spectra.w_matrix(F, 1, 0)


def test_assembled_q3():
    F = field_of_order(3)
    s = spectra.assemble_point_spectrum(F)
    assert s.total == 243 and s.values[0] == pytest.approx(6)
    assert spectra.lambda2(spectra.lift_to_bipartite(s, 3)) <= 2 * math.sqrt(3)
    lifted = spectra.lift_to_bipartite(s, 3)
    svd = oracle.bipartite_spectrum(graphs.d_graph(5, F), lifted.bucket_tol)
    assert oracle.compare_spectra(svd, lifted, 1e-6).equal


def test_assembled_q5_bound():
    s = spectra.assemble_point_spectrum(field_of_order(5))
    assert spectra.lambda2(s) <= 15


def test_bounds_report():
    b = spectra.bounds_report(field_of_order(3))
    assert b.bound_2sqrtq and b.lambda2 <= 2 * math.sqrt(3)
    assert b.cheeger_lower == pytest.approx((3 - b.lambda2) / 2)
    assert b.cheeger_upper == pytest.approx(math.sqrt(9 - b.lambda2**2))
    assert isinstance(spectra.bounds_report(field_of_order(5)).ramanujan, bool)

import math

import numpy as np
import pytest

from dkq import graphs, oracle
from dkq.gf import field_of_order
from dkq.graphs import SimpleGraph
from dkq.spectra import Spectrum


def test_k4():
    K4 = SimpleGraph(4, np.array([[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]))
    s = oracle.dense_spectrum(K4)
    assert [m for _, m in s.entries] == [1, 3]
    assert np.allclose(s.values, [3, -1])


def test_cayley_q3_top():
    s = oracle.dense_spectrum(graphs.cayley_graph(field_of_order(3)))
    assert s.total == 243 and s.values[0] == pytest.approx(6)


@pytest.mark.parametrize("q", [3, 5])
def test_known_bipartite(q):
    F = field_of_order(q)
    r = math.sqrt(q)
    assert np.allclose(oracle.bipartite_spectrum(graphs.d_graph(2, F)).values, [q, r, 0, -r, -q])
    assert np.allclose(oracle.bipartite_spectrum(graphs.d_graph(3, F)).values,
                       [q, math.sqrt(2 * q), r, 0, -r, -math.sqrt(2 * q), -q])


def test_gamma_cospectral_q5():
    F = field_of_order(5)
    a = oracle.bipartite_spectrum(graphs.d_graph(5, F))
    b = oracle.bipartite_spectrum(graphs.gamma_graph(F))
    assert oracle.compare_spectra(a, b, 1e-8).equal


def test_size_limit():
    g = graphs.cayley_graph(field_of_order(5))
    with pytest.raises(oracle.OracleSizeError):
        oracle.dense_spectrum(g, limit=100)


def test_numeric_eig():
    assert np.allclose(sorted(oracle.numeric_eig(np.eye(4)).values.real), [1] * 4)
    assert np.allclose(sorted(oracle.numeric_eig(np.diag([3.0, 1, 2])).values.real), [1, 2, 3])


def test_match_eigs():
    assert oracle.match_eigs([1, 2j], [2j, 1 + 1e-12]) < 1e-11
    assert oracle.match_eigs([1], [1, 2]) == math.inf


def test_compare():
    a = Spectrum(((1.0, 2),), 1e-6)
    assert oracle.compare_spectra(a, a, 1e-9).equal
    b = Spectrum.from_values([1.0, 1.0 + 5e-7], bucket_tol=1e-6)
    assert oracle.compare_spectra(a, b, 1e-6).equal
    r = oracle.compare_spectra(Spectrum(((1.0, 1),), 1e-6), Spectrum(((2.0, 1),), 1e-6), 1e-6)
    assert not r.equal and len(r.mismatches) == 1 and r.max_abs_deviation == 1.0

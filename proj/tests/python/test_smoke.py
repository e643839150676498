import math

import numpy as np
import pytest

import corrgeom


def bell(d):
    psi = np.zeros(d * d, dtype=complex)
    for i in range(d):
        psi[i * d + i] = 1.0 / math.sqrt(d)
    return np.outer(psi, psi.conj())


def test_bell_state_moments_and_detection():
    rho = bell(3)
    pt = corrgeom.moments(rho, 3, 3)
    assert pt.r2t == pytest.approx(2.0, abs=1e-10)
    v = corrgeom.detect_schmidt(rho, 3, 3, 2)
    assert v.detected
    assert v.trace_norm == pytest.approx(8.0, abs=1e-10)
    assert len(corrgeom.correlation_spectrum(rho, 3, 3)) == 8


def test_decompose_shapes():
    b = corrgeom.decompose(bell(2), 2, 2)
    assert b.T.shape == (3, 3)
    assert np.allclose(np.abs(np.diag(b.T)), 1.0)


def test_observables():
    a = corrgeom.spectrum_full(4)
    assert a.kind == "full"
    vals = sorted(e.real for e in a.eigenvalues)
    assert vals[-1] == pytest.approx(1.357, abs=1e-3)
    r = corrgeom.spectrum_rank4(9)
    assert not r.is_real()
    assert sum(e**4 for e in r.eigenvalues).real == pytest.approx(corrgeom.power_trace(4, 9), abs=1e-10)
    assert sum(corrgeom.gluing_counts(4)) == 105


def test_landscape_and_coverage():
    assert corrgeom.f_lb(1.0, 3) == pytest.approx(1.0)
    assert corrgeom.f_lb(1.0 / 8.0, 3) == pytest.approx(corrgeom.g_lb(1.0 / 8.0, 3))
    assert len(corrgeom.kink_positions(3, 3, 1)) == 7
    covered, missing = corrgeom.kink_coverage(3)
    assert missing == [5, 7]
    assert len(covered) == 6


def test_isotropic_and_simulation():
    rho = corrgeom.isotropic_state(2, 0.5)
    assert np.trace(rho).real == pytest.approx(1.0)
    a = corrgeom.run_simulation(2, 0.5, M=10, K=10, reps=5, seed=4)
    b = corrgeom.run_simulation(2, 0.5, M=10, K=10, reps=5, seed=4)
    assert a.r2_mean == b.r2_mean
    assert a.stat_std > 0.0


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        corrgeom.spectrum_full(1)
    with pytest.raises(ValueError):
        corrgeom.isotropic_state(2, 2.0)

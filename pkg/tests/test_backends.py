"""The numba kernels and their numpy twins agree with each other and with mpmath."""
import mpmath as mp
import numpy as np
import pytest

from mslab import _accel, _kernels

needs_numba = pytest.mark.skipif(not _accel.USE_NUMBA, reason="numba backend disabled")


@pytest.fixture
def disc_case(rng):
    r = np.sqrt(rng.uniform(0.0, 0.99, 60))
    zeros = r * np.exp(2j * np.pi * rng.uniform(size=60))
    phases = -np.angle(zeros)
    pts = 0.95 * np.sqrt(rng.uniform(size=40)) * np.exp(2j * np.pi * rng.uniform(size=40))
    return zeros, phases, pts


def test_numpy_logsum_against_mpmath(disc_case):
    zeros, phases, pts = disc_case
    re, im, hits = _kernels._np_logsum(_kernels.DISC, zeros, phases, pts)
    with mp.workdps(30):
        for j in (0, 7, 39):
            z = mp.mpc(pts[j])
            ref = mp.fsum(mp.log(abs((mp.mpc(a) - z) / (1 - mp.conj(mp.mpc(a)) * z)))
                          for a in zeros)
            assert re[j] == pytest.approx(float(ref), rel=1e-13)


def test_canonical_logsum_against_mpmath(rng):
    zeros = rng.uniform(-50, 50, 30) + 1j * rng.uniform(0.1, 5, 30)
    pts = rng.uniform(-60, 60, 10) + 0j
    re, im, _ = _kernels._np_logsum(_kernels.CANONICAL, zeros, np.zeros(30), pts)
    with mp.workdps(30):
        for j in range(10):
            ref = mp.fsum(mp.log(abs(1 - mp.mpc(pts[j]) / mp.mpc(a))) for a in zeros)
            assert re[j] == pytest.approx(float(ref), rel=1e-12, abs=1e-13)


@needs_numba
@pytest.mark.parametrize("kind", [_kernels.DISC, _kernels.HALF_PLANE, _kernels.CANONICAL])
def test_logsum_backends_agree(kind, disc_case, rng):
    zeros, phases, pts = disc_case
    if kind == _kernels.HALF_PLANE:
        zeros = rng.uniform(-5, 5, 60) + 1j * rng.uniform(0.01, 3, 60)
        pts = rng.uniform(-5, 5, 40) + 1j * rng.uniform(0.01, 3, 40)
    a = _kernels._np_logsum(kind, zeros, phases, pts)
    b = _kernels._nb_logsum(kind, zeros, phases, pts)
    np.testing.assert_allclose(a[0], b[0], rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(np.exp(1j * a[1]), np.exp(1j * b[1]), atol=1e-12)
    np.testing.assert_array_equal(a[2], b[2])


@needs_numba
def test_logderiv_backends_agree(disc_case):
    zeros, _, pts = disc_case
    a = _kernels._np_logderiv_sum(_kernels.DISC, zeros, pts)
    b = _kernels._nb_logderiv_sum(_kernels.DISC, zeros, pts)
    np.testing.assert_allclose(a[0] if isinstance(a, tuple) else a,
                               b[0] if isinstance(b, tuple) else b, rtol=1e-12)


@needs_numba
def test_jacobi_backends_agree(rng):
    A = rng.normal(size=(20, 20)) + 1j * rng.normal(size=(20, 20))
    H = A + A.conj().T
    w1, V1, _ = _kernels._np_jacobi_eigh(H.copy(), 1e-15, 100)
    w2, V2, _ = _kernels._nb_jacobi_eigh(H.copy(), 1e-15, 100)
    np.testing.assert_allclose(np.sort(w1), np.sort(w2), atol=1e-11)


def test_backend_name():
    assert _accel.backend_name() in ("numba", "numpy")

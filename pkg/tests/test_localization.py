import math

import mpmath as mp
import numpy as np
import pytest

from conftest import random_disc_points
from oracles import combination_numerator, rational_roots
from mslab.clark import clark_atoms
from mslab.errors import (DomainError, ExtractionError, InputError, NumericalError,
                          PreconditionError, RegularityError)
from mslab.generators import Lacunary
from mslab.geometry import Combination
from mslab.inner import INF, DomainTag, InnerFunctionSpec, blaschke
from mslab.localization import (DiscAtomFamily, LatticeMeasureSpec, count_zeros_in_region,
                                dominating_lacunary_product, exp_moment_test,
                                lacunary_factor_margins, orthopoly_divergence_diagnostic,
                                taylor_vanishing_probe)
from mslab.transfer import Generalized, StolzDisc, StolzHalfPlane, region_contains


# zero counting ---------------------------------------------------------------

def test_count_single_zero():
    assert count_zeros_in_region(lambda z: z - 0.5, StolzDisc(1.0, 2.0), clip=0.99) == 1


def test_count_two_zeros():
    f = lambda z: (z - 0.3) * (z - 0.4) / (1 - 0.2 * z) ** 2
    assert count_zeros_in_region(f, StolzDisc(1.0, 3.0), clip=0.99) == 2


def test_count_kernel_without_zeros():
    spec = blaschke([0.5, -0.4j, 0.3 + 0.3j])
    f = Combination(spec, [0.05], [1.0])
    roots = rational_roots(combination_numerator(spec, [0.05], [1.0]))
    region = StolzDisc(1.0, 1.5)
    assert not np.any(region_contains(region, roots) & (np.abs(roots) <= 0.99))
    assert count_zeros_in_region(f, region, clip=0.99) == 0


def test_count_matches_roots(rng):
    region = StolzDisc(1.0, 4.0)
    clip = 0.99
    checked = 0
    while checked < 8:
        spec = blaschke(random_disc_points(rng, 4, 0.95))
        pts = random_disc_points(rng, 3, 0.9)
        cs = rng.normal(size=3) + 1j * rng.normal(size=3)
        roots = rational_roots(combination_numerator(spec, pts, cs))
        inside = region_contains(region, roots) & (np.abs(roots) <= clip)
        margin = np.minimum(np.abs(region.gamma * (1 - np.abs(roots)) - np.abs(roots - 1)),
                            np.abs(clip - np.abs(roots)))
        if np.any(margin < 1e-3):
            continue
        assert count_zeros_in_region(Combination(spec, pts, cs), region, clip=clip) == inside.sum()
        checked += 1


def test_count_half_plane():
    f = lambda z: (z - 3j) * (z - (1 + 5j)) * (z - 20)
    assert count_zeros_in_region(f, StolzHalfPlane(1.0), R=10.0) == 2
    assert count_zeros_in_region(f, StolzHalfPlane(1.0), R=4.0) == 1


def test_count_zero_on_contour_fails():
    # the zero function sits on every perturbed contour, so all retries fail
    with pytest.raises(NumericalError):
        count_zeros_in_region(lambda z: np.zeros_like(z), StolzDisc(1.0, 2.0), clip=0.9)


def test_count_bad_inputs():
    with pytest.raises(InputError):
        count_zeros_in_region(lambda z: z, StolzHalfPlane(1.0))
    with pytest.raises(InputError):
        count_zeros_in_region(lambda z: z, "disc")


# dominating products ---------------------------------------------------------

def _log_abs(zeros, x):
    return np.sum(np.log(np.abs(1 - x[:, None] / zeros[None, :])), axis=1)


def test_dominating_equal_lists():
    ref = 1j * 2.0 ** np.arange(1, 21)
    res = dominating_lacunary_product(ref, ref, np.linspace(-1e6, 1e6, 2001))
    assert res.certificate == pytest.approx(1.0)


def test_dominating_every_tenth():
    ref = 1j * 2.0 ** np.arange(1, 21)
    target = ref[9::10]
    grid = np.linspace(-1e7, 1e7, 4001)
    res = dominating_lacunary_product(target, ref, grid)
    oracle = np.exp(np.max(_log_abs(res.selected, grid) - _log_abs(ref, grid)))
    assert res.certificate == pytest.approx(oracle, rel=1e-12)
    assert res.certificate == pytest.approx(1.0)
    sel = np.abs(res.selected)
    assert np.all(sel[1:] >= 2 * sel[:-1])
    fine = np.linspace(-1e7, 1e7, 40001)
    assert np.exp(np.max(_log_abs(res.selected, fine) - _log_abs(ref, fine))) <= 1.05 * res.certificate


def test_dominating_certificate_stable_on_finer_grid():
    ref = 1j * 3.0 ** np.arange(1, 16)
    target = 2.0 ** np.arange(1, 30) * np.exp(1j * 1.2)
    grid = np.linspace(-1e5, 1e5, 2001)
    res = dominating_lacunary_product(target, ref, grid)
    fine = np.linspace(-1e5, 1e5, 20001)
    fine_c = np.exp(np.max(_log_abs(res.selected, fine) - _log_abs(ref, fine)))
    assert fine_c <= 1.05 * res.certificate


def test_dominating_empty_target():
    ref = 1j * 2.0 ** np.arange(1, 6)
    grid = np.linspace(-10, 10, 101)
    res = dominating_lacunary_product([], ref, grid)
    assert res.certificate == pytest.approx(1.0 / np.exp(np.min(_log_abs(ref, grid))))


def test_dominating_failure_trace():
    ref = 1j * 2.0 ** np.arange(1, 6)
    target = np.array([0.5 + 0.01j, 1.1 + 0.01j, 2.3 + 0.01j])
    with pytest.raises(ExtractionError) as exc:
        dominating_lacunary_product(target, ref, np.linspace(-50, 50, 1001), c_max=1e-3)
    assert len(exc.value.trace) == 3


def test_factor_margins_hold():
    region = Generalized(1.0, 2.0)
    lam = 1.0 + 1j * 2.0 ** np.arange(1, 20)
    x = np.linspace(-1e6, 1e6, 20001)
    assert np.all(lacunary_factor_margins(lam, region, x) >= 1.0)
    with pytest.raises(DomainError):
        lacunary_factor_margins([10 + 1j], region, x)


# exponential moments ---------------------------------------------------------

def test_exp_moment_sqrt_distance():
    fam = DiscAtomFamily(1.0, 1.0, 0.5, 1.0, 1.0)
    rep = exp_moment_test(fam, 1.0, 1.0)
    assert rep.verdict == "converged"
    k = np.arange(1, 5000, dtype=float)
    assert rep.partial_sum == pytest.approx(math.fsum(np.exp(np.sqrt(k) - k)), rel=1e-6)


def test_exp_moment_geometric():
    fam = DiscAtomFamily(1.0, 1.0, 1.0, math.log(2), 1.0)
    assert exp_moment_test(fam, 1.0, 0.5).verdict == "converged"
    assert exp_moment_test(fam, 1.0, 1.0).verdict == "diverged"


def test_exp_moment_lattice():
    rep = exp_moment_test(LatticeMeasureSpec(1.0, 1.0, 0.0, 3.0), INF, 2.0)
    assert rep.verdict == "converged"
    assert rep.partial_sum == pytest.approx(math.exp(-4) / (1 - math.exp(-4)), rel=1e-6)


def test_exp_moment_monotone_in_eps():
    fam = DiscAtomFamily(1.0, 1.0, 1.0, math.log(2), 1.0)
    verdicts = [exp_moment_test(fam, 1.0, e).verdict for e in (0.2, 0.4, 0.6, 0.68, 0.75, 1.0)]
    first_bad = next(i for i, v in enumerate(verdicts) if v != "converged")
    assert all(v == "converged" for v in verdicts[:first_bad])
    assert all(v != "converged" for v in verdicts[first_bad:])


def test_exp_moment_clark_atom_at_point():
    mu = clark_atoms(blaschke([0, 0]), 1.0)
    with pytest.raises(PreconditionError):
        exp_moment_test(mu, 1.0, 1.0)
    assert exp_moment_test(mu, 1j, 1.0).verdict == "converged"


# orthonormal polynomials -----------------------------------------------------

def test_orthopoly_single_atom():
    res = orthopoly_divergence_diagnostic(([0.0], [1.0]), 1j, 0)
    assert res.trace == [pytest.approx(1.0)]


def test_orthopoly_two_atoms():
    res = orthopoly_divergence_diagnostic(([0.0, 1.0], [0.5, 0.5]), 1j, 1)
    assert res.trace[-1] == pytest.approx(6.0, rel=1e-13)


def test_orthopoly_against_gram_schmidt():
    # oracle: Gram-Schmidt of monomials in 50-digit arithmetic
    x = [0.0, 0.5, 1.3, 2.0, 3.1, 4.4]
    w = [0.3, 0.1, 0.2, 0.15, 0.05, 0.2]
    K = 4
    with mp.workdps(50):
        polys = []
        for k in range(K + 1):
            p = [mp.mpf(0)] * k + [mp.mpf(1)]
            for q in polys:
                ip = mp.fsum(wi * mp.polyval(p[::-1], xi) * mp.polyval(q[::-1], xi) for xi, wi in zip(x, w))
                p = [a - ip * (q[i] if i < len(q) else 0) for i, a in enumerate(p)]
            nrm = mp.sqrt(mp.fsum(wi * mp.polyval(p[::-1], xi) ** 2 for xi, wi in zip(x, w)))
            polys.append([a / nrm for a in p])
        z0 = mp.mpc(0.2, 0.7)
        ref = np.cumsum([float(abs(mp.polyval(p[::-1], z0)) ** 2) for p in polys])
    res = orthopoly_divergence_diagnostic((x, w), 0.2 + 0.7j, K)
    np.testing.assert_allclose(res.trace, ref, rtol=1e-10)


def test_orthopoly_lattice_orthonormal_and_trend():
    c0 = LatticeMeasureSpec(0.4, 0.4, 0.0, 1.0).critical_c
    slopes = []
    for c in (0.5 * c0, 2.0 * c0):
        res = orthopoly_divergence_diagnostic(LatticeMeasureSpec(0.4, 0.4, 0.0, c, 400), 1j, 60)
        assert res.orthonormality_error() < 1e-8
        slopes.append(res.log_slope)
    assert slopes[1] > slopes[0]


def test_orthopoly_errors():
    with pytest.raises(NumericalError):
        orthopoly_divergence_diagnostic(([0.0, 1.0], [1.0, 1.0]), 1j, 2)
    with pytest.raises(InputError):
        orthopoly_divergence_diagnostic(([0.0, 1.0], [1.0, 1.0]), 0.5, 1)


# Taylor probe ----------------------------------------------------------------

def _degree6():
    zeros = [0.3, -0.5j, 0.2 + 0.4j, -0.6, 0.1 - 0.2j, -0.3 + 0.5j]
    spec = blaschke(zeros)
    return spec, clark_atoms(spec, 1j)


def test_taylor_zero_h():
    _, mu = _degree6()
    res = taylor_vanishing_probe(mu, np.zeros(6), 1.0, 3, fd=False)
    assert all(m == 0 for m in res.moments)


def test_taylor_projection():
    _, mu = _degree6()
    rng = np.random.default_rng(5)
    h = rng.normal(size=6) + 1j * rng.normal(size=6)
    v = np.conj(1.0 / (1.0 - np.conj(mu.positions)))
    h = h - np.sum(h * np.conj(v) * mu.weights) / np.sum(np.abs(v) ** 2 * mu.weights) * v
    res = taylor_vanishing_probe(mu, h, 1.0, 0, fd=False)
    assert abs(res.moments[0]) < 1e-10


def test_taylor_moments_match_derivatives():
    _, mu = _degree6()
    h = np.array([1.0, -0.5j, 0.3, 2.0, -1.0, 0.5 + 0.5j])

    def g(z):
        return mp.fsum(mp.mpc(hk) * wk / (1 - mp.conj(mp.mpc(zk)) * z)
                       for hk, wk, zk in zip(h, mu.weights, mu.positions))

    res = taylor_vanishing_probe(mu, h, 1.0, 3)
    with mp.workdps(30):
        for n in range(4):
            ref = complex(mp.diff(g, mp.mpf(1), n))
            assert abs(res.moments[n] - ref) <= 1e-10 * abs(ref)
            assert abs(res.finite_differences[n] - ref) <= 1e-4 * abs(ref)


def test_taylor_requires_ac():
    spec = InnerFunctionSpec(DomainTag.DISC, tail_model=Lacunary(10))
    mu = clark_atoms(blaschke(spec.zeros), 1j)
    mu.spec = spec
    with pytest.raises(RegularityError):
        taylor_vanishing_probe(mu, np.ones(10), 1.0, 0)

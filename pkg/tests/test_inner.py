import math

import mpmath as mp
import numpy as np
import pytest

from conftest import direct_blaschke, random_disc_points, random_disc_spec
from mslab.errors import DomainError, InputError
from mslab.generators import Power
from mslab.inner import (INF, CanonicalProductSpec, DomainTag, InnerFunctionSpec, blaschke,
                         canonical_log_modulus, eval_canonical_derivative, eval_canonical_product,
                         eval_derivative, eval_inner, eval_log_modulus, unimodular_constant)


def test_identity_factor():
    assert eval_inner(blaschke([0]), 0.5) == pytest.approx(0.5)
    assert eval_log_modulus(blaschke([0]), 0.5) == pytest.approx(math.log(0.5))


def test_symmetric_pair_at_origin():
    spec = blaschke([0.5, -0.5])
    assert eval_inner(spec, 0.0) == pytest.approx(0.25, abs=1e-15)
    assert eval_log_modulus(spec, 0.0) == pytest.approx(math.log(0.25))


def test_singular_atom_at_origin():
    spec = InnerFunctionSpec(DomainTag.DISC, [], [1.0], [0.7])
    assert eval_inner(spec, 0.0) == pytest.approx(math.exp(-0.7), rel=1e-14)


def test_matches_direct_product(rng):
    for _ in range(10):
        spec = random_disc_spec(rng, int(rng.integers(1, 13)))
        z = random_disc_points(rng, 50, 0.95)
        np.testing.assert_allclose(eval_inner(spec, z), direct_blaschke(spec.zeros, z),
                                   rtol=1e-12, atol=1e-14)


def test_unimodular_on_circle(rng):
    spec = random_disc_spec(rng, 9)
    t = np.exp(2j * np.pi * np.arange(1024) / 1024)
    vals = eval_inner(spec, t, allow_boundary=True)
    assert np.max(np.abs(np.abs(vals) - 1)) < 1e-10


def test_modulus_below_one_inside(rng):
    spec = InnerFunctionSpec(DomainTag.DISC, random_disc_points(rng, 6), [1j, -1.0], [0.3, 1.1])
    z = random_disc_points(rng, 200, 0.999)
    assert np.all(np.abs(eval_inner(spec, z)) < 1)


def test_log_modulus_consistent(rng):
    spec = random_disc_spec(rng, 12)
    z = random_disc_points(rng, 100)
    np.testing.assert_allclose(np.exp(eval_log_modulus(spec, z)), np.abs(eval_inner(spec, z)),
                               rtol=1e-12)


def test_permutation_invariance(rng):
    zeros = random_disc_points(rng, 10)
    z = random_disc_points(rng, 30)
    a = eval_inner(blaschke(zeros), z)
    b = eval_inner(blaschke(zeros[rng.permutation(10)]), z)
    np.testing.assert_allclose(a, b, rtol=1e-12)


def test_derivative_examples():
    assert eval_derivative(blaschke([0, 0]), 0.3) == pytest.approx(0.6)
    assert eval_derivative(blaschke([0]), 0.2 + 0.1j) == pytest.approx(1.0)
    spec = blaschke([0.5, -0.5])
    h = 1e-6
    z = 0.1j
    fd = (eval_inner(spec, z + h) - eval_inner(spec, z - h)) / (2 * h)
    assert abs(eval_derivative(spec, z) - fd) < 1e-6 * abs(fd)


def test_derivative_finite_differences(rng):
    spec = random_disc_spec(rng, 8, 0.8)
    z = random_disc_points(rng, 100, 0.7)
    h = 1e-6
    fd = (eval_inner(spec, z + h) - eval_inner(spec, z - h)) / (2 * h)
    rel = np.abs(eval_derivative(spec, z) - fd) / np.abs(fd)
    assert np.max(rel) < 1e-5


def test_derivative_at_zero_factored_out():
    spec = blaschke([0.3, -0.2j])
    # at a simple zero a the derivative is b_a'(a) times the other factors
    a = 0.3
    d_ba = (abs(a) / a) * (-1) / (1 - abs(a) ** 2)
    other = direct_blaschke([-0.2j], a)
    assert eval_derivative(spec, a) == pytest.approx(d_ba * other, rel=1e-12)


def test_half_plane_factor_positive_at_i():
    spec = InnerFunctionSpec(DomainTag.HALF_PLANE, [2 + 1j])
    v = eval_inner(spec, 1j)
    assert abs(v.imag) < 1e-15 and v.real > 0


def test_half_plane_tiny_imaginary_parts():
    # y = 1e-30: the naive factor modulus would round to exactly 1
    spec = InnerFunctionSpec(DomainTag.HALF_PLANE, [5 + 1e-30j])
    z = 5 + 1j
    expected = 0.5 * mp.log(1 - 4 * mp.mpf(1e-30) * 1 / (1 + mp.mpf(1e-30)) ** 2)
    assert eval_log_modulus(spec, z) == pytest.approx(float(expected), rel=1e-12)


def test_domain_errors():
    with pytest.raises(DomainError):
        eval_inner(blaschke([0.1]), 1.2)
    with pytest.raises(DomainError):
        blaschke([1.5])
    with pytest.raises(DomainError):
        InnerFunctionSpec(DomainTag.HALF_PLANE, [1 - 1j])


def test_json_round_trip(rng):
    spec = InnerFunctionSpec(DomainTag.DISC, random_disc_points(rng, 4), [1j], [0.4])
    back = InnerFunctionSpec.from_json(spec.to_json())
    z = random_disc_points(rng, 10)
    np.testing.assert_allclose(eval_inner(back, z), eval_inner(spec, z), rtol=1e-14)
    tail = InnerFunctionSpec(DomainTag.HALF_PLANE, tail_model=Power(20))
    back = InnerFunctionSpec.from_json(tail.to_json())
    assert back.degree == tail.degree


# canonical products --------------------------------------------------------

def test_canonical_trivial():
    E = CanonicalProductSpec(1j * 2.0 ** np.arange(1, 31))
    assert eval_canonical_product(E, 0.0) == 1
    assert eval_canonical_product(CanonicalProductSpec([]), 3 + 1j) == 1


def test_canonical_lacunary_modulus():
    E = CanonicalProductSpec(1j * 2.0 ** np.arange(1, 31))
    oracle = math.prod(math.sqrt(1 + 64 / 4.0 ** n) for n in range(1, 31))
    assert abs(eval_canonical_product(E, 8.0)) == pytest.approx(oracle, rel=1e-13)
    x = np.linspace(-1e4, 1e4, 501)
    assert np.all(canonical_log_modulus(E, x) >= -1e-15)


def test_canonical_lacunary_flag():
    with pytest.raises(InputError):
        CanonicalProductSpec([1j, 1.5j], lacunary_q=2.0)


def test_canonical_derivative_at_zero():
    lam = np.array([1.0, 3.0, -2.0])
    E = CanonicalProductSpec(lam)
    # E'(1) = -(1/1) (1 - 1/3)(1 + 1/2)
    assert eval_canonical_derivative(E, 1.0) == pytest.approx(-(2 / 3) * 1.5, rel=1e-14)


def test_canonical_log_near_zero_high_precision():
    a = np.array([1e4 - 1e-8j, 3e3 + 2e-9j, -50.0 + 1e-6j])
    z = a[0] + 1e-9
    with mp.workdps(40):
        ref = mp.fsum(mp.log(abs(1 - mp.mpc(z) / mp.mpc(x))) for x in a)
    assert canonical_log_modulus(CanonicalProductSpec(a), z) == pytest.approx(float(ref), rel=1e-12)


def test_section3_growth_exponent_oracle():
    # oracle: the product evaluated in 30-digit arithmetic over all truncated factors
    model = Power(200, 2.0, 3.0)
    zeros = np.conj(model.zeros())
    E = CanonicalProductSpec(zeros)
    k = np.arange(10, 101, 10, dtype=float)
    x = 0.5 * (k ** 2 + (k + 1) ** 2)
    with mp.workdps(30):
        ref = [float(mp.fsum(mp.log(abs(1 - mp.mpf(xx) / mp.mpc(a))) for a in zeros)) for xx in x]
    np.testing.assert_allclose(canonical_log_modulus(E, x), ref, rtol=1e-12)
    slope = np.polyfit(np.log(x), np.log(ref), 1)[0]
    assert 0.45 <= slope <= 0.55


def test_unimodular_constant_identity():
    # B = gamma E*/E for the half-plane Blaschke product with zeros w_n, E zeros conj(w_n)
    w = np.array([1 + 1j, -2 + 0.5j, 3 + 2j])
    B = InnerFunctionSpec(DomainTag.HALF_PLANE, w)
    E = CanonicalProductSpec(np.conj(w))
    gamma = unimodular_constant(B, E)
    assert abs(abs(gamma) - 1) < 1e-12
    z = 0.3 + 2.5j
    rhs = gamma * np.conj(eval_canonical_product(E, np.conj(z))) / eval_canonical_product(E, z)
    assert eval_inner(B, z) == pytest.approx(rhs, rel=1e-12)


def test_value_at_infinity():
    spec = InnerFunctionSpec(DomainTag.HALF_PLANE, [1 + 1j, 2 + 3j])
    far = eval_inner(spec, 1e9j)
    assert spec.value_at_infinity() == pytest.approx(far, abs=1e-8)
    assert INF is INF

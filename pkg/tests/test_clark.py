import math

import numpy as np
import pytest

from conftest import random_disc_points, random_disc_spec
from mslab.clark import (boundary_phase, clark_atoms, clark_inner_product, clark_transform,
                         total_mass_identity)
from mslab.errors import InputError, PreconditionError
from mslab.inner import DomainTag, InnerFunctionSpec, blaschke, eval_inner
from mslab.kernel_space import kernel_eval


@pytest.mark.parametrize("N", [1, 2, 5, 12])
def test_power_roots_of_unity(N):
    mu = clark_atoms(blaschke([0] * N), 1.0)
    roots = np.exp(2j * np.pi * np.arange(N) / N)
    np.testing.assert_allclose(np.sort_complex(mu.positions), np.sort_complex(roots), atol=1e-12)
    np.testing.assert_allclose(mu.weights, 1.0 / N, rtol=1e-12)


def test_identity_single_atom():
    alpha = np.exp(0.7j)
    mu = clark_atoms(blaschke([0]), alpha)
    assert mu.positions[0] == pytest.approx(alpha, abs=1e-12)
    assert mu.total_mass == pytest.approx(1.0)


def test_mass_identity():
    spec = blaschke([0.5, -0.5])
    mu = clark_atoms(spec, 1.0)
    assert mu.positions.size == 2
    assert mu.total_mass == pytest.approx(5 / 3, rel=1e-12)
    assert total_mass_identity(spec, 1.0) == pytest.approx(5 / 3)


def test_atoms_solve_equation(rng):
    for _ in range(5):
        spec = random_disc_spec(rng, 9)
        alpha = np.exp(2j * np.pi * rng.uniform())
        mu = clark_atoms(spec, alpha)
        vals = eval_inner(spec, mu.positions, allow_boundary=True)
        np.testing.assert_allclose(vals, alpha, atol=1e-10)
        assert mu.total_mass == pytest.approx(total_mass_identity(spec, alpha), rel=1e-10)


def test_phase_monotone(rng):
    spec = random_disc_spec(rng, 10, 0.99)
    t = np.linspace(0, 2 * np.pi, 4001)
    phi, dphi = boundary_phase(spec.zeros, t)
    assert np.all(np.diff(phi) > 0)
    assert np.all(dphi > 0)
    assert phi[-1] - phi[0] == pytest.approx(2 * np.pi * 10, rel=1e-12)


def test_inner_product_examples():
    mu = clark_atoms(blaschke([0, 0]), 1.0)
    ones = np.ones(2)
    assert clark_inner_product(mu, ones, ones) == pytest.approx(1.0)
    assert clark_inner_product(mu, [1 + 2j, 3.0], np.zeros(2)) == 0
    with pytest.raises(InputError):
        clark_inner_product(mu, ones, [1.0])


def test_inner_product_of_kernels():
    spec = blaschke([0.5, -0.5])
    mu = clark_atoms(spec, 1.0)
    f = kernel_eval(spec, 0.2, mu.positions)
    g = kernel_eval(spec, 0.3, mu.positions)
    assert clark_inner_product(mu, g, f) == pytest.approx(kernel_eval(spec, 0.2, 0.3), abs=1e-10)


def test_transform_zero():
    mu = clark_atoms(blaschke([0.3, 0.1j]), 1.0)
    assert clark_transform(mu, np.zeros(2), 0.2) == 0


def test_transform_indicator_is_boundary_kernel():
    # V(1_{zeta}) = w (1 - theta) / (1 - conj(zeta) z) = w k_zeta for alpha = 1
    spec = blaschke([0, 0])
    # anchor away from the atoms: alpha = 1 equals theta(1), the exceptional value at anchor 1
    mu = clark_atoms(spec, 1.0, anchor=1j)
    k = int(np.argmin(np.abs(mu.positions - 1)))
    h = np.zeros(2)
    h[k] = 1.0
    z = np.array([0.1, 0.3 - 0.4j])
    expected = mu.weights[k] * (1 + z)
    np.testing.assert_allclose(clark_transform(mu, h, z), expected, atol=1e-12)
    # reproducing property: <V h, k_lam> = V h(lam)
    lam = 0.25j
    vals = clark_transform(mu, h, mu.positions * (1 - 1e-15))
    inner = np.sum(vals * np.conj(kernel_eval(spec, lam, mu.positions)) * mu.weights)
    assert inner == pytest.approx(clark_transform(mu, h, lam), abs=1e-10)


def test_transform_reproduces_atoms_values(rng):
    spec = random_disc_spec(rng, 6)
    mu = clark_atoms(spec, np.exp(0.4j))
    h = rng.normal(size=6) + 1j * rng.normal(size=6)
    lam = random_disc_points(rng, 1)[0]
    # conj(k_lam(zeta_k)) = conj(alpha) (alpha - theta(lam)) / (1 - conj(zeta_k) lam) on the atoms
    direct = mu.alpha * clark_inner_product(mu, h, kernel_eval(spec, lam, mu.positions))
    assert clark_transform(mu, h, lam) == pytest.approx(direct, abs=1e-11)


def test_preconditions():
    with pytest.raises(PreconditionError):
        clark_atoms(blaschke([]), 1.0)
    with pytest.raises(PreconditionError):
        clark_atoms(InnerFunctionSpec(DomainTag.DISC, [0.2], [1.0], [0.1]), 1.0)
    with pytest.raises(PreconditionError):
        clark_atoms(InnerFunctionSpec(DomainTag.HALF_PLANE, [1j]), 1.0)
    mu = clark_atoms(blaschke([0]), 1.0)
    assert mu.exceptional
    with pytest.raises(PreconditionError):
        clark_transform(mu, [1.0], 0.1)


def test_json_round_trip():
    mu = clark_atoms(blaschke([0.5, -0.5]), 1j)
    back = type(mu).from_json(mu.to_json())
    np.testing.assert_allclose(back.positions, mu.positions)
    assert math.isclose(back.total_mass, mu.total_mass)

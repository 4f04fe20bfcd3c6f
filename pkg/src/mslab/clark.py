"""Clark measures of finite Blaschke products and the associated quadrature.

On the circle a finite Blaschke product has the continuous phase

    phi(t) = sum_j [ -arg a_j + pi + t - 2 Arg(1 - conj(a_j) e^{it}) ]

(``t`` for a zero at the origin), strictly increasing with
``phi'(t) = |theta'(e^{it})|``.  The atoms of ``sigma_alpha`` are the
solutions of ``phi(t) = arg alpha (mod 2 pi)`` and carry weight ``1/phi'``.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericalError, PreconditionError
from .inner import INF, DomainTag, eval_inner

ROOT_TOL = 1e-12
GRID_FACTOR = 32


@dataclass(eq=False)
class ClarkMeasure:
    """Discrete Clark measure.

    ``positions`` are unimodular (disc) or real stored as complex (half-plane).
    Half-plane weights are normalized so that ``sum_k F(t_k) conj G(t_k) w_k``
    is the inner product of the half-plane model space.  ``tail`` optionally
    supplies a parametric continuation beyond the first ``n_explicit`` atoms.
    """

    domain: DomainTag
    alpha: complex
    positions: np.ndarray
    weights: np.ndarray
    exceptional: bool = False
    anchor: object = 1.0 + 0j
    truncated: bool = False
    tail: object = None
    spec: object = None
    n_explicit: int = None

    def __post_init__(self):
        self.domain = DomainTag(self.domain)
        self.positions = np.atleast_1d(np.asarray(self.positions, dtype=complex))
        self.weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if self.positions.shape != self.weights.shape:
            raise InputError("positions and weights differ in length")
        if np.any(self.weights <= 0):
            raise InputError("Clark weights must be positive")
        if self.n_explicit is None:
            self.n_explicit = self.positions.size

    @property
    def atoms(self):
        return list(zip(self.positions, self.weights))

    @property
    def total_mass(self):
        return math.fsum(self.weights)

    def to_json(self):
        return {
            "alpha": [float(self.alpha.real), float(self.alpha.imag)],
            "atoms": [[float(p.real), float(p.imag), float(w)]
                      for p, w in zip(self.positions, self.weights)],
            "domain": self.domain.value,
            "exceptional": bool(self.exceptional),
            "truncated": bool(self.truncated),
        }

    @classmethod
    def from_json(cls, obj):
        atoms = np.asarray(obj["atoms"], dtype=float).reshape(-1, 3)
        return cls(obj.get("domain", "disc"), complex(*obj["alpha"]),
                   atoms[:, 0] + 1j * atoms[:, 1], atoms[:, 2],
                   exceptional=obj.get("exceptional", False),
                   truncated=obj.get("truncated", False))


def _check_finite_disc(spec):
    if spec.domain is not DomainTag.DISC:
        raise PreconditionError("clark_atoms solves disc Blaschke products; transfer for the half-plane")
    if not spec.is_finite_blaschke or spec.tail_model is not None:
        raise PreconditionError("clark_atoms needs a finite Blaschke product")
    if spec.degree < 1:
        raise PreconditionError("degree 0 has no Clark atoms")


def boundary_phase(zeros, t):
    """Unwrapped phase of the Blaschke product on ``e^{it}``, and its derivative."""
    t = np.asarray(t, dtype=float)
    a = np.asarray(zeros, dtype=complex)
    nz = a[a != 0]
    n0 = a.size - nz.size
    e = np.exp(1j * t)[..., None]
    w = 1.0 - np.conj(nz) * e
    phi = a.size * t + np.sum(-np.angle(nz) + np.pi - 2.0 * np.angle(w), axis=-1)
    dphi = n0 + np.sum((1.0 - np.abs(nz) ** 2) / np.abs(e - nz) ** 2, axis=-1)
    return phi, dphi


def clark_atoms(spec, alpha, root_tol=ROOT_TOL, anchor=1.0 + 0j):
    """Atoms and weights of ``sigma_alpha`` for a finite disc Blaschke product."""
    _check_finite_disc(spec)
    alpha = complex(alpha)
    if abs(abs(alpha) - 1.0) > 1e-12:
        raise InputError("alpha must be unimodular")
    zeros = spec.zeros
    N = zeros.size
    grid = np.linspace(0.0, 2 * np.pi, GRID_FACTOR * N + 1)
    phi, _ = boundary_phase(zeros, grid)
    if np.any(np.diff(phi) <= 0):
        raise NumericalError("boundary phase is not increasing on the seed grid")
    c = math.atan2(alpha.imag, alpha.real)
    k0 = math.ceil((phi[0] - c) / (2 * np.pi))
    targets = c + 2 * np.pi * (k0 + np.arange(N))
    hi_idx = np.searchsorted(phi, targets, side="left")
    hi_idx = np.clip(hi_idx, 1, grid.size - 1)
    lo = grid[hi_idx - 1].copy()
    hi = grid[hi_idx].copy()
    for _ in range(200):
        if np.all(hi - lo <= root_tol):
            break
        mid = 0.5 * (lo + hi)
        pm, _ = boundary_phase(zeros, mid)
        below = pm < targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    t = 0.5 * (lo + hi)
    pt, dpt = boundary_phase(zeros, t)
    t = np.clip(t - (pt - targets) / dpt, lo - root_tol, hi + root_tol)
    pt, dpt = boundary_phase(zeros, t)
    resid = np.abs(pt - targets)
    bad = np.flatnonzero(resid > 1e3 * root_tol * max(1.0, N))
    if bad.size:
        i = int(bad[0])
        raise NumericalError("Clark root refinement failed", bracket=(float(lo[i]), float(hi[i])),
                             residual=float(resid[i]))
    t = np.mod(t, 2 * np.pi)
    order = np.argsort(t)
    pos = np.exp(1j * t[order])
    w = 1.0 / dpt[order]
    anchor = complex(anchor)
    exceptional = bool(np.any(np.abs(pos - anchor) < 1e-10))
    return ClarkMeasure(DomainTag.DISC, alpha, pos, w, exceptional=exceptional,
                        anchor=anchor, spec=spec)


def total_mass_identity(spec, alpha):
    """``Re[(alpha + theta(0)) / (alpha - theta(0))]``."""
    th0 = eval_inner(spec, 0j)
    return ((alpha + th0) / (alpha - th0)).real


def clark_inner_product(mu, f_vals, g_vals):
    f = np.asarray(f_vals, dtype=complex).ravel()
    g = np.asarray(g_vals, dtype=complex).ravel()
    if f.size != mu.weights.size or g.size != mu.weights.size:
        raise InputError("value lists must align with the Clark atoms")
    return complex(np.sum(f * np.conj(g) * mu.weights))


def clark_transform(mu, h, z):
    """``(alpha - theta(z)) sum_k h_k w_k / (1 - conj(zeta_k) z)`` at interior ``z``."""
    if mu.exceptional:
        raise PreconditionError("Clark transform is not unitary at the exceptional alpha")
    if mu.domain is not DomainTag.DISC or mu.spec is None:
        raise PreconditionError("clark_transform needs a disc measure built by clark_atoms")
    h = np.asarray(h, dtype=complex).ravel()
    if h.size != mu.weights.size:
        raise InputError("h must align with the Clark atoms")
    shape = np.shape(z)
    zz = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    th = np.atleast_1d(eval_inner(mu.spec, zz))
    s = (h * mu.weights)[None, :] / (1.0 - np.conj(mu.positions)[None, :] * zz[:, None])
    out = (mu.alpha - th) * np.sum(s, axis=1)
    return out.reshape(shape) if shape else complex(out[0])


# ---------------------------------------------------------------------------
# parametric half-plane lattice measures (atoms at x_k = k)
# ---------------------------------------------------------------------------

class LatticeTail:
    """Atoms at ``x_k = k`` (k >= 1) with weights ``ratio^k`` or ``k^-power``."""

    first_index = 1

    def __init__(self, truncation_N, ratio=None, power=None):
        if (ratio is None) == (power is None):
            raise InputError("give exactly one of ratio or power")
        if ratio is not None and not 0 < ratio < 1:
            raise InputError("ratio must lie in (0, 1)")
        if power is not None and power <= 1:
            raise InputError("power must exceed 1 for a Clark measure")
        self.truncation_N = int(truncation_N)
        self.ratio = ratio
        self.power = power

    def weights(self, idx):
        k = np.asarray(idx, dtype=float)
        if self.ratio is not None:
            return self.ratio ** k
        return k ** -self.power

    def supports(self, point):
        return point is INF

    def ac_terms(self, point, order, idx):
        k = np.asarray(idx, dtype=float)
        return self.weights(k) * (1.0 + k * k) ** order

    def ac_tail(self, point, order, N):
        if self.ratio is not None:
            first = float(self.ac_terms(point, order, [N + 1])[0])
            rho = self.ratio * ((1.0 + (N + 2) ** 2) / (1.0 + (N + 1) ** 2)) ** order
            if rho >= 1:
                return None, None
            return first, first / (1.0 - rho)
        p = self.power
        e = 2 * order - p
        if e >= -1:
            return float("inf"), float("inf")
        # k^e <= k^-p (1+k^2)^n <= (1 + N^-2)^n k^e for k > N
        lower = (N + 1) ** (e + 1) / (-e - 1)
        upper = (1.0 + N ** -2.0) ** order * N ** (e + 1) / (-e - 1)
        return lower, upper


def lattice_measure(truncation_N, ratio=None, power=None, alpha=1.0 + 0j):
    """Half-plane Clark-type measure with lattice atoms and a parametric tail."""
    tail = LatticeTail(truncation_N, ratio=ratio, power=power)
    k = np.arange(1, truncation_N + 1)
    return ClarkMeasure(DomainTag.HALF_PLANE, complex(alpha), k.astype(complex), tail.weights(k),
                        anchor=INF, truncated=True, tail=tail, n_explicit=0)

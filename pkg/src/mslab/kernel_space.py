"""Reproducing kernels of model spaces.

Disc:        k_l(z) = (1 - conj(theta(l)) theta(z)) / (1 - conj(l) z)
Half-plane:  k_l(z) = (i / 2 pi) (1 - conj(Theta(l)) Theta(z)) / (z - conj(l))

so that ``2 pi ||k_t||^2 = |Theta'(t)|`` at regular real points.  The factor
``1 - conj(theta(l)) theta(z)`` is formed from logarithms through a complex
``expm1``; near the boundary both values are close to unimodular and the
naive product loses every digit.

At ``INF`` (half-plane) the kernel is the rescaled limit

    K_inf(w) = lim_{y -> inf} -i pi (y + 1) k_{iy}(w) = (1 - conj(alpha_0) Theta(w)) / 2i,

with ``alpha_0 = Theta(inf)`` and ``||K_inf||^2 = pi (sum y_j + sum s_k / 2)``.

Boundary kernels use the stored (possibly truncated) zeros; regularity is
decided by the order-0 Ahern-Clark test.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .boundary import ac_test, check_boundary_point
from .errors import DomainError, InputError, RegularityError
from .inner import INF, DomainTag, eval_log_inner, on_boundary

TWO_PI = 2.0 * math.pi
CAUCHY_TOL = 1e-6


def cexpm1(w):
    """``exp(w) - 1`` accurate for small complex ``w``."""
    w = np.asarray(w, dtype=complex)
    a, b = w.real, w.imag
    s = np.sin(0.5 * b)
    with np.errstate(invalid="ignore"):
        re = np.expm1(a) * np.cos(b) - 2.0 * s * s
        im = np.exp(a) * np.sin(b)
    return re + 1j * im


def _as_points(z):
    shape = np.shape(z)
    return np.atleast_1d(np.asarray(z, dtype=complex)).ravel(), shape


def _log_theta(spec, z):
    # half-plane: log(Theta / Theta(inf)); the unimodular constant cancels in
    # every kernel formula and summing it would cost absolute accuracy
    rel = spec.domain is DomainTag.HALF_PLANE
    return np.atleast_1d(eval_log_inner(spec, z, allow_boundary=True, relative=rel))


def _is_boundary(spec, lam):
    return lam is INF or bool(on_boundary(spec.domain, lam))


def _coincident(spec, lams, zs):
    """Pairs ``(i, j)`` with ``zs[j] == lams[i]`` on the boundary (diagonal of a boundary kernel)."""
    edge = on_boundary(spec.domain, lams)
    return (lams[:, None] == zs[None, :]) & edge[:, None]


def boundary_norm_sq(spec, point):
    """``||k_point||^2`` at a boundary point from the stored zeros and atoms."""
    point = check_boundary_point(spec.domain, point)
    z = spec.zeros
    pos, mass = spec.atom_positions, spec.atom_masses
    if point is INF:
        if spec.infinity_mass:
            raise RegularityError("mass at infinity: infinity is not an Ahern-Clark point")
        return math.pi * (math.fsum(z.imag) + 0.5 * math.fsum(mass))
    if spec.domain is DomainTag.DISC:
        terms = np.concatenate([(1 - np.abs(z) ** 2) / np.abs(point - z) ** 2,
                                2.0 * mass / np.abs(point - pos) ** 2])
        return math.fsum(terms)
    t = point.real
    terms = np.concatenate([2.0 * z.imag / np.abs(t - z) ** 2, mass / (t - pos.real) ** 2,
                            [spec.infinity_mass]])
    return math.fsum(terms) / TWO_PI


def _require_regular(spec, point):
    rep = ac_test(spec, point, 0)
    if not rep.converged:
        raise RegularityError(f"Ahern-Clark order 0 test at {point} is {rep.verdict}")
    return rep


def kernel_norm(spec, lam, check=True):
    """``||k_lam||``; boundary points must pass the order-0 Ahern-Clark test."""
    if lam is not INF and not _is_boundary(spec, lam):
        lam = complex(lam)
        L = _log_theta(spec, lam)[0]
        num = -math.expm1(2.0 * L.real) if np.isfinite(L.real) else 1.0
        if spec.domain is DomainTag.DISC:
            r = abs(lam)
            if r >= 1:
                raise DomainError("point outside the disc")
            return math.sqrt(num / ((1 - r) * (1 + r)))
        if lam.imag <= 0:
            raise DomainError("point outside the half-plane")
        return math.sqrt(num / (4.0 * math.pi * lam.imag))
    if check:
        _require_regular(spec, lam)
    return math.sqrt(boundary_norm_sq(spec, lam))


def kernel_eval(spec, lam, z):
    """``k_lam(z)`` for one base point and scalar or array ``z``."""
    zz, shape = _as_points(z)
    if lam is INF:
        if spec.domain is not DomainTag.HALF_PLANE:
            raise DomainError("infinity is a half-plane point")
        if spec.infinity_mass:
            raise RegularityError("mass at infinity: no kernel at infinity")
        out = -cexpm1(_log_theta(spec, zz)) / 2j
        return out.reshape(shape) if shape else complex(out[0])
    lam = complex(lam)
    Ll = _log_theta(spec, lam)[0]
    Lz = _log_theta(spec, zz)
    num = -cexpm1(Lz + np.conj(Ll))
    if spec.domain is DomainTag.DISC:
        den = 1.0 - np.conj(lam) * zz
        scale = 1.0
    else:
        den = zz - np.conj(lam)
        scale = 1j / TWO_PI
    same = _coincident(spec, np.array([lam]), zz)[0] | (den == 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = scale * num / den
    if np.any(same):
        out[same] = boundary_norm_sq(spec, lam)
    return out.reshape(shape) if shape else complex(out[0])


def kernel_inner(spec, a, b):
    """``<k_a, k_b> = k_a(b)``, with ``INF`` meaning the rescaled kernel ``K_inf``."""
    if b is INF and a is INF:
        return complex(boundary_norm_sq(spec, INF))
    if b is INF:
        return complex(np.conj(kernel_eval(spec, INF, a)))
    return complex(kernel_eval(spec, a, b))


def kernel_matrix(spec, lams, zs):
    """``M[i, j] = k_{lams[i]}(zs[j])`` for finite points (diagonal limits included)."""
    lams = np.atleast_1d(np.asarray(lams, dtype=complex))
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    Ll = _log_theta(spec, lams)
    Lz = _log_theta(spec, zs)
    num = -cexpm1(Lz[None, :] + np.conj(Ll)[:, None])
    if spec.domain is DomainTag.DISC:
        den = 1.0 - np.conj(lams)[:, None] * zs[None, :]
        scale = 1.0
    else:
        den = zs[None, :] - np.conj(lams)[:, None]
        scale = 1j / TWO_PI
    with np.errstate(divide="ignore", invalid="ignore"):
        out = scale * num / den
    for i, j in zip(*np.nonzero(_coincident(spec, lams, zs) | (den == 0))):
        out[i, j] = boundary_norm_sq(spec, lams[i])
    return out


def gram_closed_form(spec, points, normalized=True):
    """``G[n, m] = <k_n, k_m>`` (normalized kernels by default)."""
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    G = kernel_matrix(spec, pts, pts)
    G = 0.5 * (G + G.conj().T)
    if normalized:
        d = np.sqrt(np.real(np.diag(G)))
        G = G / np.outer(d, d)
        np.fill_diagonal(G, 1.0)
    return G


@dataclass(eq=False)
class Kernel:
    spec: object
    base_point: object
    norm: float = None

    def __post_init__(self):
        if self.norm is None:
            self.norm = kernel_norm(self.spec, self.base_point)

    def __call__(self, z):
        return kernel_eval(self.spec, self.base_point, z)

    def normalized(self, z):
        return kernel_eval(self.spec, self.base_point, z) / self.norm


def make_kernel(spec, lam):
    return Kernel(spec, lam)


@dataclass
class BoundaryLimit:
    """Outcome of a radial approach to a boundary point."""

    converged: bool
    kernel: object
    samples: list
    norms: list
    distances: list = field(default_factory=list)
    increments: list = field(default_factory=list)
    ac_report: object = None
    witness: str = ""

    def to_json(self):
        return {
            "converged": self.converged,
            "samples": list(self.samples),
            "norms": list(self.norms),
            "distances": list(self.distances),
            "increments": list(self.increments),
            "ac0": None if self.ac_report is None else self.ac_report.to_json(),
            "witness": self.witness,
            "module": "kernel_space",
            "tolerance": CAUCHY_TOL,
        }


def _approach_points(spec, point, samples):
    s = np.asarray(samples, dtype=float)
    if s.ndim != 1 or s.size < 2:
        raise InputError("need at least two samples")
    if point is INF:
        if np.any(np.diff(s) <= 0) or s[0] <= 0:
            raise InputError("heights must be positive and increasing")
        return 1j * s
    if spec.domain is DomainTag.DISC:
        if np.any(np.diff(s) <= 0) or s[0] <= 0 or s[-1] >= 1:
            raise InputError("radii must increase inside (0, 1)")
        return s * point
    if np.any(np.diff(s) >= 0) or s[-1] <= 0:
        raise InputError("heights must decrease to 0")
    return point.real + 1j * s


def boundary_kernel_limit(spec, point, samples):
    """Approach ``point`` along a normal path and test the kernel limit.

    Disc: ``samples`` are radii increasing to 1.  Half-plane: heights
    increasing to infinity for ``INF``, decreasing to 0 for a real point.  At
    ``INF`` the approximants are the rescaled kernels ``-i pi (y+1) k_{iy}``.

    ``converged`` requires a converged order-0 Ahern-Clark report and
    strictly decreasing distances ``||k_sample - k_point||``.  The Cauchy
    increments (norm differences of consecutive samples, relative) are
    reported alongside.
    """
    point = check_boundary_point(spec.domain, point)
    pts = _approach_points(spec, point, samples)
    if point is INF:
        scale = np.pi * (np.asarray(samples, dtype=float) + 1.0)
        norms = [float(scale[i] * kernel_norm(spec, p)) for i, p in enumerate(pts)]
    else:
        norms = [kernel_norm(spec, p) for p in pts]
    rep = ac_test(spec, point, 0)
    incr = [abs(norms[i + 1] - norms[i]) / norms[i + 1] for i in range(len(norms) - 1)]
    if not rep.converged:
        growing = bool(np.all(np.diff(norms) > 0))
        witness = "norms increasing, AC0 " + rep.verdict if growing else "AC0 " + rep.verdict
        return BoundaryLimit(False, None, list(map(float, samples)), norms, [], incr, rep, witness)
    nb2 = boundary_norm_sq(spec, point)
    dists = []
    for i, p in enumerate(pts):
        if point is INF:
            cross = (-1j * scale[i] * np.conj(kernel_eval(spec, INF, p))).real
        else:
            cross = kernel_eval(spec, point, p).real
        d2 = norms[i] ** 2 + nb2 - 2.0 * cross
        dists.append(math.sqrt(max(d2, 0.0)))
    ok = bool(np.all(np.diff(dists) < 0))
    kern = Kernel(spec, point, math.sqrt(nb2)) if ok else None
    witness = "distances decreasing" if ok else "distances not monotone"
    return BoundaryLimit(ok, kern, list(map(float, samples)), norms, dists, incr, rep, witness)

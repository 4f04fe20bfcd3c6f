"""Disc to half-plane dictionary and approach regions.

The map ``w = i (zeta + z) / (zeta - z)`` sends the anchor ``zeta`` to
``INF`` and the origin to ``i``.  Under it

* a disc zero ``a`` becomes ``w(a)``;
* a disc atom of mass ``s`` at ``eta != zeta`` becomes a half-plane atom of
  mass ``s (1 + t^2)`` at ``t = w(eta)``;
* a disc atom at ``zeta`` becomes the factor ``exp(i s w)`` (mass at infinity);
* Clark atoms move the same way with weights ``pi (1 + t^2) w_k``, which is
  ``2 pi / |Theta'(t_k)|``.

``T f(w) = f(z(w)) / (w + i)`` maps ``K_theta`` into ``K_Theta`` and
multiplies norms by ``sqrt(pi)``.
"""
from dataclasses import dataclass

import numpy as np

from .clark import ClarkMeasure
from .errors import DomainError, InputError
from .inner import INF, DomainTag, InnerFunctionSpec, eval_inner, is_infinity

ANCHOR_TOL = 1e-12


def _anchor(zeta):
    zeta = complex(zeta)
    if abs(abs(zeta) - 1.0) > 1e-9:
        raise DomainError("anchor must lie on the unit circle")
    return zeta / abs(zeta)


def map_point(zeta, z):
    """``i (zeta + z) / (zeta - z)``; ``INF`` at ``z = zeta`` (scalars or arrays)."""
    zeta = _anchor(zeta)
    if np.ndim(z) == 0:
        z = complex(z)
        if abs(z - zeta) == 0:
            return INF
        return 1j * (zeta + z) / (zeta - z)
    z = np.asarray(z, dtype=complex)
    if np.any(z == zeta):
        raise DomainError("anchor among array points; map it separately")
    return 1j * (zeta + z) / (zeta - z)


def inverse_map(zeta, w):
    """``zeta (w - i) / (w + i)``; ``INF`` goes to ``zeta``."""
    zeta = _anchor(zeta)
    if is_infinity(w):
        return zeta
    w = np.asarray(w, dtype=complex) if np.ndim(w) else complex(w)
    return zeta * (w - 1j) / (w + 1j)


def _phase_constant(disc_spec, half_spec, zeta):
    """Unimodular ``c`` with ``theta(z(w)) = c Theta(w)``, sampled where both are nonzero."""
    for w in (2j, 3j + 0.5, 5j - 1.0, 1j, 7j + 2.0):
        num = eval_inner(disc_spec, inverse_map(zeta, w))
        den = eval_inner(half_spec, w)
        if abs(num) > 1e-8 and abs(den) > 1e-8:
            c = num / den
            return c / abs(c)
    raise DomainError("could not fix the unimodular constant")


def transfer_inner(spec, zeta):
    """Half-plane spec ``Theta`` with ``theta(z(w)) = c Theta(w)``, ``|c| = 1``.

    Generator zeros are materialized (the result carries no tail model).
    """
    if spec.domain is not DomainTag.DISC:
        raise DomainError("transfer_inner expects a disc spec")
    zeta = _anchor(zeta)
    zeros = map_point(zeta, spec.zeros) if spec.zeros.size else np.zeros(0, complex)
    pos, mass = spec.atom_positions, spec.atom_masses
    at_anchor = np.abs(pos - zeta) < ANCHOR_TOL
    inf_mass = float(np.sum(mass[at_anchor]))
    t = map_point(zeta, pos[~at_anchor]).real if np.any(~at_anchor) else np.zeros(0)
    hmass = mass[~at_anchor] * (1.0 + t * t)
    return InnerFunctionSpec(DomainTag.HALF_PLANE, zeros, t, hmass, inf_mass)


def phase_constant(spec, zeta):
    return _phase_constant(spec, transfer_inner(spec, zeta), zeta)


def transfer_clark(mu, zeta, half_spec=None):
    """Move a disc Clark measure to the half-plane (weights ``pi (1 + t^2) w``).

    An atom at the anchor cannot be moved; it is dropped and the result is
    marked exceptional.
    """
    if mu.domain is not DomainTag.DISC:
        raise DomainError("transfer_clark expects a disc measure")
    zeta = _anchor(zeta)
    keep = np.abs(mu.positions - zeta) >= ANCHOR_TOL
    t = map_point(zeta, mu.positions[keep]).real
    w = np.pi * (1.0 + t * t) * mu.weights[keep]
    order = np.argsort(t)
    alpha = mu.alpha
    if mu.spec is not None:
        half_spec = half_spec or transfer_inner(mu.spec, zeta)
        alpha = alpha / _phase_constant(mu.spec, half_spec, zeta)
    return ClarkMeasure(DomainTag.HALF_PLANE, alpha, t[order], w[order],
                        exceptional=bool(not np.all(keep)), anchor=INF, spec=half_spec)


def apply_T(f, zeta, w):
    """``(T f)(w) = f(z(w)) / (w + i)`` for a callable ``f`` on the disc."""
    w = np.asarray(w, dtype=complex) if np.ndim(w) else complex(w)
    return f(inverse_map(zeta, w)) / (w + 1j)


def apply_T_values(f_vals, z, zeta):
    """Given ``f`` at disc points ``z``, return the image points and ``T f`` there."""
    w = map_point(zeta, z)
    vals = np.asarray(f_vals, dtype=complex) / (w + 1j)
    return w, vals


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """``stolz_disc``: ``|z - zeta| <= gamma (1 - |z|)`` (gamma > 1);
    ``stolz_half_plane``: ``Im z >= gamma |Re z|``;
    ``generalized``: ``Im z > gamma |Re z|^beta`` and ``|z| > 1``.
    """

    kind: str
    gamma: float
    beta: float = 1.0
    zeta: complex = 1.0 + 0j

    def __post_init__(self):
        if self.kind not in ("stolz_disc", "stolz_half_plane", "generalized"):
            raise InputError(f"unknown region kind {self.kind!r}")
        if self.gamma <= 0:
            raise InputError("gamma must be positive")
        if self.kind == "stolz_disc":
            if self.gamma <= 1:
                raise InputError("disc Stolz angle needs gamma > 1")
            object.__setattr__(self, "zeta", _anchor(self.zeta))

    @property
    def domain(self):
        return DomainTag.DISC if self.kind == "stolz_disc" else DomainTag.HALF_PLANE


def StolzDisc(zeta, gamma):
    return Region("stolz_disc", float(gamma), zeta=complex(zeta))


def StolzHalfPlane(gamma):
    return Region("stolz_half_plane", float(gamma))


def Generalized(gamma, beta):
    return Region("generalized", float(gamma), float(beta))


def region_contains(r, z):
    if is_infinity(z):
        return r.kind != "stolz_disc"
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    if r.kind == "stolz_disc":
        out = (np.abs(z) < 1) & (np.abs(z - r.zeta) <= r.gamma * (1 - np.abs(z)))
    elif r.kind == "stolz_half_plane":
        out = (z.imag > 0) & (z.imag >= r.gamma * np.abs(z.real))
    else:
        out = (z.imag > r.gamma * np.abs(z.real) ** r.beta) & (np.abs(z) > 1)
    return bool(out) if scalar else out

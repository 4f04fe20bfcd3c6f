"""Inner functions on the disc and the upper half-plane.

An :class:`InnerFunctionSpec` bundles a Blaschke zero list, a discrete
singular measure and a domain tag.  Everything is evaluated in the log
domain: factor logs are summed with compensated summation and exponentiated
once at the end.

Conventions
-----------
Disc Blaschke factor ``b_a(z) = (|a|/a) (a - z) / (1 - conj(a) z)`` with
``b_0(z) = z``; a singular atom of mass ``s`` at ``eta`` contributes
``exp(-s (eta + z) / (eta - z))``.

Half-plane factor ``e^{i g} (z - w) / (z - conj(w))`` with ``g`` chosen so the
factor is positive at ``z = i``; an atom of mass ``s`` at real ``t``
contributes ``exp(i s (1/(t - z) - t/(1 + t^2)))`` and a mass ``a`` at
infinity contributes ``exp(i a z)``.
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _kernels
from .errors import DomainError, InputError, TruncationError

BOUNDARY_TOL = 1e-12


class DomainTag(str, Enum):
    DISC = "disc"
    HALF_PLANE = "half_plane"


class _Infinity:
    """The point at infinity of the closed upper half-plane."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_infinity(p):
    return p is INF


def _as_complex_array(values):
    arr = np.asarray(values)
    if arr.ndim == 2 and arr.shape[1] == 2 and not np.iscomplexobj(arr):
        arr = arr[:, 0] + 1j * arr[:, 1]
    return np.atleast_1d(arr.astype(np.complex128)).ravel()


@dataclass(frozen=True, eq=False)
class InnerFunctionSpec:
    """Blaschke zeros plus discrete singular measure on a tagged domain.

    ``atom_positions`` are unimodular complex numbers on the disc and reals on
    the half-plane.  ``infinity_mass`` is only meaningful on the half-plane.
    When ``tail_model`` is given its first ``truncation_N`` zeros are appended
    to the explicit zeros.
    """

    domain: DomainTag
    zeros: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    atom_positions: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    atom_masses: np.ndarray = field(default_factory=lambda: np.zeros(0))
    infinity_mass: float = 0.0
    tail_model: object = None

    def __post_init__(self):
        dom = DomainTag(self.domain)
        object.__setattr__(self, "domain", dom)
        zeros = _as_complex_array(self.zeros) if len(np.atleast_1d(self.zeros)) else np.zeros(0, complex)
        object.__setattr__(self, "n_explicit", int(zeros.size))
        if self.tail_model is not None:
            if self.tail_model.domain != dom:
                raise DomainError("tail model domain differs from spec domain")
            zeros = np.concatenate([zeros, self.tail_model.zeros()])
        pos = np.atleast_1d(np.asarray(self.atom_positions, dtype=np.complex128)).ravel()
        mass = np.atleast_1d(np.asarray(self.atom_masses, dtype=np.float64)).ravel()
        if pos.shape != mass.shape:
            raise InputError("atom positions and masses differ in length")
        if np.any(mass <= 0) or not np.all(np.isfinite(mass)):
            raise InputError("singular masses must be positive and finite")
        if dom is DomainTag.DISC:
            if zeros.size and np.any(np.abs(zeros) >= 1.0):
                raise DomainError("disc zeros must satisfy |z| < 1")
            if pos.size and np.any(np.abs(np.abs(pos) - 1.0) > 1e-9):
                raise DomainError("disc atoms must lie on the unit circle")
            pos = pos / np.where(pos == 0, 1, np.abs(pos))
            if self.infinity_mass:
                raise DomainError("mass at infinity is a half-plane notion")
            phases = np.where(zeros == 0, 0.0, -np.angle(zeros))
        else:
            if zeros.size and np.any(zeros.imag <= 0):
                raise DomainError("half-plane zeros must satisfy Im w > 0")
            if pos.size and np.any(np.abs(pos.imag) > 0):
                raise DomainError("half-plane atoms must be real")
            pos = pos.real.astype(np.complex128)
            if self.infinity_mass < 0:
                raise InputError("mass at infinity must be non-negative")
            # rotate each factor to be positive at z = i
            at_i = (1j - zeros) / (1j - zeros.conj())
            phases = np.where(zeros == 1j, 0.0, -np.angle(at_i))
        for name, val in (("zeros", zeros), ("atom_positions", pos),
                          ("atom_masses", mass), ("_phases", phases)):
            val = np.array(val)
            val.setflags(write=False)
            object.__setattr__(self, name, val)
        object.__setattr__(self, "infinity_mass", float(self.infinity_mass))

    # -- basic properties ---------------------------------------------------
    @property
    def explicit_zeros(self):
        """Zeros given directly, excluding those produced by the tail model."""
        return self.zeros[:self.n_explicit]

    @property
    def degree(self):
        return int(self.zeros.size)

    @property
    def is_finite_blaschke(self):
        return self.atom_masses.size == 0 and self.infinity_mass == 0.0

    def blaschke_sum(self):
        """Partial Blaschke-condition sum for the stored zeros."""
        z = self.zeros
        if self.domain is DomainTag.DISC:
            return float(np.sum(1.0 - np.abs(z)))
        return float(np.sum(z.imag / (1.0 + np.abs(z) ** 2)))

    def check_tail(self):
        if self.tail_model is not None:
            bound = self.tail_model.blaschke_tail()
            if not np.isfinite(bound):
                raise TruncationError(f"{self.tail_model.name}: divergent Blaschke tail")

    def value_at_infinity(self):
        """``lim Theta(iy)`` for half-plane specs (the exceptional Clark parameter)."""
        if self.domain is not DomainTag.HALF_PLANE:
            raise DomainError("value at infinity is a half-plane notion")
        if self.infinity_mass > 0:
            return 0j
        t = self.atom_positions.real
        s = self.atom_masses
        return complex(np.exp(1j * (np.sum(self._phases) - np.sum(s * t / (1.0 + t * t)))))

    def with_zeros(self, zeros):
        return InnerFunctionSpec(self.domain, zeros, self.atom_positions, self.atom_masses,
                                 self.infinity_mass)

    # -- serialization ------------------------------------------------------
    def to_json(self):
        out = {
            "domain": self.domain.value,
            "zeros": [[float(z.real), float(z.imag)] for z in self.zeros],
            "singular_atoms": [],
        }
        if self.tail_model is not None:
            out["zeros"] = out["zeros"][:self.n_explicit]
            out["tail_model"] = self.tail_model.to_json()
        for p, m in zip(self.atom_positions, self.atom_masses):
            pos = float(np.angle(p)) if self.domain is DomainTag.DISC else float(p.real)
            out["singular_atoms"].append([pos, float(m)])
        if self.infinity_mass:
            out["mass_at_infinity"] = self.infinity_mass
        return out

    @classmethod
    def from_json(cls, obj):
        dom = DomainTag(obj["domain"])
        zeros = np.array([complex(a, b) for a, b in obj.get("zeros", [])], dtype=complex)
        atoms = obj.get("singular_atoms", [])
        pos = np.array([a for a, _ in atoms], dtype=float)
        mass = np.array([m for _, m in atoms], dtype=float)
        if dom is DomainTag.DISC:
            pos = np.exp(1j * pos)
        tail = None
        if obj.get("tail_model"):
            from .generators import tail_model_from_json
            tail = tail_model_from_json(obj["tail_model"])
        return cls(dom, zeros, pos, mass, obj.get("mass_at_infinity", 0.0), tail)


def blaschke(zeros, domain=DomainTag.DISC):
    return InnerFunctionSpec(domain, zeros)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _kind(spec):
    return _kernels.DISC if spec.domain is DomainTag.DISC else _kernels.HALF_PLANE


def on_boundary(domain, z):
    z = np.asarray(z, dtype=complex)
    if DomainTag(domain) is DomainTag.DISC:
        return np.abs(np.abs(z) - 1.0) <= BOUNDARY_TOL
    return np.abs(z.imag) <= BOUNDARY_TOL * np.maximum(1.0, np.abs(z))


def check_points(domain, z, allow_boundary=False):
    z = np.asarray(z, dtype=complex)
    if DomainTag(domain) is DomainTag.DISC:
        bad = np.abs(z) >= 1.0
    else:
        bad = z.imag <= 0.0
    if allow_boundary:
        bad = bad & ~on_boundary(domain, z)
    if np.any(bad) or not np.all(np.isfinite(z)):
        raise DomainError("point outside the %s" % (
            "open disc" if DomainTag(domain) is DomainTag.DISC else "upper half-plane"))


def _singular_exponent(spec, z, relative=False):
    """Exponent of the singular factor and its derivative at points ``z``.

    ``relative`` drops the constant ``-t/(1+t^2)`` terms (half-plane), giving
    the exponent of ``S(z) / S(inf)``.
    """
    expo = np.zeros(z.shape, dtype=complex)
    deriv = np.zeros(z.shape, dtype=complex)
    pos = spec.atom_positions
    mass = spec.atom_masses
    if pos.size:
        diff = pos[None, :] - z[:, None]
        if np.any(diff == 0):
            raise DomainError("evaluation at a singular atom")
        if spec.domain is DomainTag.DISC:
            expo = -np.sum(mass * (pos + z[:, None]) / diff, axis=1)
            deriv = -np.sum(mass * 2.0 * pos / diff ** 2, axis=1)
        else:
            t = pos.real
            shift = 0.0 if relative else t / (1.0 + t * t)
            expo = 1j * np.sum(mass * (1.0 / diff - shift), axis=1)
            deriv = 1j * np.sum(mass / diff ** 2, axis=1)
    if spec.infinity_mass:
        expo = expo + 1j * spec.infinity_mass * z
        deriv = deriv + 1j * spec.infinity_mass
    return expo, deriv


def _log_parts(spec, z, allow_boundary, relative=False):
    spec.check_tail()
    zz = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    check_points(spec.domain, zz, allow_boundary)
    phases = np.zeros_like(spec._phases) if relative else spec._phases
    re, im, hits = _kernels.factor_logsum(_kind(spec), spec.zeros, phases, zz)
    expo, dexpo = _singular_exponent(spec, zz, relative)
    return zz, re + expo.real, im + expo.imag, hits, dexpo


def eval_log_modulus(spec, z, allow_boundary=False):
    """``log|theta(z)|``; ``-inf`` at zeros."""
    shape = np.shape(z)
    _, re, _, hits, _ = _log_parts(spec, z, allow_boundary)
    out = np.where(hits > 0, -np.inf, re)
    return out.reshape(shape) if shape else float(out[0])


def eval_log_inner(spec, z, allow_boundary=False, relative=False):
    """A branch of ``log theta(z)`` (real part ``-inf`` at zeros).

    With ``relative=True`` (half-plane only) the branch of
    ``log(Theta(z) / Theta(inf))`` is returned instead; it avoids summing
    unimodular constants that cancel in kernel formulas.
    """
    if relative and spec.domain is not DomainTag.HALF_PLANE:
        raise DomainError("relative logarithms are a half-plane notion")
    shape = np.shape(z)
    _, re, im, hits, _ = _log_parts(spec, z, allow_boundary, relative)
    out = np.where(hits > 0, -np.inf, re) + 1j * im
    return out.reshape(shape) if shape else complex(out[0])


def eval_inner(spec, z, allow_boundary=False):
    """Value of the inner function at interior points ``z`` (scalar or array)."""
    shape = np.shape(z)
    _, re, im, hits, _ = _log_parts(spec, z, allow_boundary)
    out = np.where(hits > 0, 0j, np.exp(re + 1j * im))
    return out.reshape(shape) if shape else complex(out[0])


def _hit_factor_derivative(spec, a):
    if spec.domain is DomainTag.DISC:
        if a == 0:
            return 1.0 + 0j
        return (abs(a) / a) * (-1.0) / (1.0 - abs(a) ** 2)
    idx = np.flatnonzero(spec.zeros == a)[0]
    return np.exp(1j * spec._phases[idx]) / (2j * a.imag)


def eval_derivative(spec, z, allow_boundary=False):
    """``theta'(z)`` through the logarithmic derivative.

    At an exact zero of multiplicity one the vanishing factor is removed and
    its own derivative used instead; higher multiplicity gives 0.
    """
    shape = np.shape(z)
    zz, re, im, hits, dexpo = _log_parts(spec, z, allow_boundary)
    logd = _kernels.factor_logderiv_sum(_kind(spec), spec.zeros, zz) + dexpo
    val = np.exp(re + 1j * im)
    out = np.where(hits == 0, val * logd, 0j)
    for i in np.flatnonzero(hits == 1):
        out[i] = val[i] * _hit_factor_derivative(spec, zz[i])
    return out.reshape(shape) if shape else complex(out[0])


# ---------------------------------------------------------------------------
# canonical products
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CanonicalProductSpec:
    """Genus-zero product ``prod (1 - z/lambda_n)``."""

    zeros: np.ndarray
    lacunary_q: float = None

    def __post_init__(self):
        zeros = np.atleast_1d(np.asarray(self.zeros, dtype=np.complex128)).ravel()
        if np.any(zeros == 0):
            raise InputError("canonical product zeros must be non-zero")
        if self.lacunary_q is not None and zeros.size > 1:
            mods = np.abs(zeros)
            if np.any(mods[1:] / mods[:-1] < self.lacunary_q):
                raise InputError("zeros are not lacunary with the stated ratio")
        zeros.setflags(write=False)
        object.__setattr__(self, "zeros", zeros)


def canonical_log(spec, z):
    """Complex ``log E(z)`` (imaginary part not reduced) and the exact-hit count."""
    zz = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    re, im, hits = _kernels.factor_logsum(_kernels.CANONICAL, spec.zeros, None, zz)
    return re + 1j * im, hits


def eval_canonical_product(spec, z):
    shape = np.shape(z)
    lg, hits = canonical_log(spec, z)
    out = np.where(hits > 0, 0j, np.exp(lg))
    return out.reshape(shape) if shape else complex(out[0])


def canonical_log_modulus(spec, z):
    shape = np.shape(z)
    lg, hits = canonical_log(spec, z)
    out = np.where(hits > 0, -np.inf, lg.real)
    return out.reshape(shape) if shape else float(out[0])


def eval_canonical_derivative(spec, z):
    """``E'(z)``; at a simple zero returns the product of the other factors times -1/lambda."""
    shape = np.shape(z)
    zz = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    lg, hits = canonical_log(spec, zz)
    logd = _kernels.factor_logderiv_sum(_kernels.CANONICAL, spec.zeros, zz)
    val = np.exp(lg)
    out = np.where(hits == 0, val * logd, 0j)
    for i in np.flatnonzero(hits == 1):
        out[i] = -val[i] / zz[i]
    return out.reshape(shape) if shape else complex(out[0])


def unimodular_constant(inner_spec, canon_spec, ref=2j):
    """``gamma`` with ``B = gamma E*/E`` measured at a reference point."""
    e = eval_canonical_product(canon_spec, ref)
    e_star = np.conj(eval_canonical_product(canon_spec, np.conj(ref)))
    return complex(eval_inner(inner_spec, ref) * e / e_star)

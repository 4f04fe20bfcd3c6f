"""Localization probes and quasi-analyticity diagnostics.

* ``count_zeros_in_region``: argument principle on the clipped boundary of a
  Stolz or generalized region.
* ``dominating_lacunary_product``: sparse canonical product ``G`` with
  ``|G| <= C |E|`` on a real grid.
* ``exp_moment_test``: exponential moments of Clark-type measures.
* ``orthopoly_divergence_diagnostic``: ``sum_k |P_k(z0)|^2`` for the
  orthonormal polynomials of a discrete measure.  A diagnostic, not a
  decision: no finite truncation settles density.
* ``taylor_vanishing_probe``: derivatives at a boundary point of the Cauchy
  integral ``g = Vh / (alpha - theta)`` of Clark coefficients.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .boundary import ac_test, check_boundary_point, sum_series
from .clark import ClarkMeasure, clark_transform
from .errors import (DomainError, ExtractionError, InputError, NumericalError, PreconditionError,
                     RegularityError)
from .generators import power_tail, stretched_tail
from .inner import INF, CanonicalProductSpec, DomainTag, canonical_log_modulus, eval_inner
from .transfer import Region

CONTOUR_SAMPLES = 4096
MAX_SPLIT_DEPTH = 40
INTEGER_TOL = 0.01
PERTURB_OFFSET = 1e-6
PERTURB_ATTEMPTS = 3
NEAR_ZERO = 1e-9
DISC_CLIP = 1.0 - 1e-4
ORTHO_TOL = 1e-8
DIAGNOSTIC_NOTE = "diagnostic, not decision: finite truncations cannot settle density"


# ---------------------------------------------------------------------------
# argument principle
# ---------------------------------------------------------------------------

def _bisect_edge(inside, lo, hi, iters=60):
    """Largest ``t`` in ``[lo, hi]`` with ``inside(t)`` true, assuming an interval ``[lo, t*]``."""
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        ok = inside(mid)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    return lo


class _Contour:
    """Closed curve as a list of pieces ``u in [0, 1] -> z``; parameter ``s = piece + u``."""

    def __init__(self, pieces):
        self.pieces = pieces

    @property
    def length(self):
        return len(self.pieces)

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        k = np.clip(np.floor(s).astype(int), 0, len(self.pieces) - 1)
        u = s - k
        out = np.empty(s.shape, dtype=complex)
        for i, piece in enumerate(self.pieces):
            m = k == i
            if np.any(m):
                out[m] = piece(u[m])
        return out


def _disc_contour(r, clip, offset):
    zeta = r.zeta
    center = 0.5 * clip * zeta

    def inside(rho, phi):
        z = center + rho * np.exp(1j * phi)
        az = np.abs(z)
        return (az <= clip) & (np.abs(z - zeta) <= r.gamma * (1.0 - az))

    def radius(phi):
        phi = np.asarray(phi, dtype=float)
        return _bisect_edge(lambda t: inside(t, phi), np.zeros(phi.shape), np.full(phi.shape, 2.0))

    def piece(u):
        phi = 2.0 * np.pi * u
        return center + (radius(phi) + offset) * np.exp(1j * phi)

    return _Contour([piece]), 2.0


def _half_plane_radii(r, R, phi):
    """Polar interval ``[a(phi), b(phi)]`` of the region clipped to ``1 <= |z| <= R``."""
    s, c = np.sin(phi), np.abs(np.cos(phi))
    a = np.ones(phi.shape)
    b = np.full(phi.shape, float(R))
    if r.kind == "stolz_half_plane" or r.beta == 1.0:
        bad = s <= r.gamma * c if r.kind == "generalized" else s < r.gamma * c
        b = np.where(bad, 0.0, b)
        return a, b
    with np.errstate(divide="ignore", over="ignore"):
        bound = (s / (r.gamma * c ** r.beta)) ** (1.0 / (r.beta - 1.0))
    if r.beta > 1:
        b = np.minimum(b, bound)
    else:
        a = np.maximum(a, bound)
    return a, b


def _half_plane_contour(r, R, offset):
    def width(phi):
        a, b = _half_plane_radii(r, R, np.atleast_1d(phi))
        return b - a

    # the admissible angles form an interval around pi/2
    if width(np.pi / 2)[0] <= 0:
        raise DomainError("clipped region is empty")
    lo_edge = np.pi / 2 - _bisect_edge(lambda t: bool(width(np.pi / 2 - t)[0] > 0), 0.0, np.pi / 2)
    hi_edge = np.pi / 2 + _bisect_edge(lambda t: bool(width(np.pi / 2 + t)[0] > 0), 0.0, np.pi / 2)
    p1, p2 = float(lo_edge), float(hi_edge)

    def radii(phi):
        a, b = _half_plane_radii(r, R, phi)
        b = np.maximum(a, b)
        return a - offset, b + offset

    def outer(u):
        phi = p1 + (p2 - p1) * u
        return radii(phi)[1] * np.exp(1j * phi)

    def inner(u):
        phi = p2 - (p2 - p1) * u
        return radii(phi)[0] * np.exp(1j * phi)

    def radial(phi, outward):
        def piece(u):
            a, b = radii(np.full(u.shape, phi))
            t = u if outward else 1.0 - u
            return (a + (b - a) * t) * np.exp(1j * phi)
        return piece

    pieces = [radial(p1, True), outer, radial(p2, False), inner]
    return _Contour(pieces), 2.0 * R


def _winding(f, contour, samples, near):
    """Accumulated ``arg f`` over the contour over ``2 pi``; ``None`` if unresolved.

    Coarse steps with an increment above ``pi/2`` are split until none remain.
    A zero closer than ``near`` to the contour (Newton estimate
    ``|f| |dz| / |df|`` at the samples) also gives ``None``.
    """
    L = contour.length
    s = np.linspace(0.0, float(L), L * samples + 1)
    z = contour(s)
    v = np.asarray(f(z), dtype=complex)
    for _ in range(MAX_SPLIT_DEPTH):
        if not np.all(np.isfinite(v)) or np.any(v == 0):
            return None
        d = np.angle(v[1:] / v[:-1])
        big = np.flatnonzero(np.abs(d) > 0.5 * np.pi)
        if big.size == 0:
            with np.errstate(divide="ignore"):
                dist = np.abs(v[:-1]) * np.abs(np.diff(z)) / np.abs(np.diff(v))
            if np.min(dist) < near:
                return None
            return float(np.sum(d)) / (2.0 * np.pi)
        mids = 0.5 * (s[big] + s[big + 1])
        zm = contour(mids)
        vm = np.asarray(f(zm), dtype=complex)
        s = np.insert(s, big + 1, mids)
        z = np.insert(z, big + 1, zm)
        v = np.insert(v, big + 1, vm)
    return None


@dataclass
class ZeroCount:
    count: int
    winding: float
    attempts: int
    offset: float

    def __int__(self):
        return self.count


def count_zeros_in_region(f, region, R=None, clip=DISC_CLIP, samples=CONTOUR_SAMPLES,
                          details=False):
    """Number of zeros of ``f`` in ``region`` clipped to a bounded set.

    ``f`` is any callable analytic near the clipped region (for instance a
    ``Combination`` of kernels).  Disc Stolz regions are clipped at
    ``|z| <= clip``; half-plane regions at ``1 <= |z| <= R``.  If a zero of
    ``f`` lies within ``1e-9`` (times the diameter, if larger) of the contour, or the winding number
    is not within 0.01 of an integer, the contour is pushed by
    ``+-k 1e-6 diam`` and retried up to three times.
    """
    if not isinstance(region, Region):
        raise InputError("region must be a Region")
    if region.kind == "stolz_disc":
        if not 0 < clip < 1:
            raise InputError("clip radius must lie in (0, 1)")

        def build(off):
            return _disc_contour(region, clip, off)
    else:
        if R is None or R <= 1:
            raise InputError("half-plane regions need a clipping radius R > 1")

        def build(off):
            return _half_plane_contour(region, float(R), off)

    _, diam = build(0.0)
    offsets = [0.0] + [PERTURB_OFFSET * diam * k * (-1) ** k for k in range(1, PERTURB_ATTEMPTS + 1)]
    last = None
    for attempt, off in enumerate(offsets):
        contour, _ = build(off)
        w = _winding(f, contour, samples, NEAR_ZERO * max(1.0, diam))
        if w is None:
            continue
        last = w
        n = round(w)
        if abs(w - n) <= INTEGER_TOL:
            res = ZeroCount(int(n), float(w), attempt + 1, float(off))
            return res if details else res.count
    raise NumericalError("argument principle failed: zero on or near the contour",
                         winding=last, attempts=len(offsets))


# ---------------------------------------------------------------------------
# lacunary dominating products
# ---------------------------------------------------------------------------

@dataclass
class DominatingProduct:
    selected: np.ndarray
    indices: list
    certificate: float
    ratio: float
    trace: list = field(default_factory=list)

    def to_json(self):
        return {
            "selected": [[float(z.real), float(z.imag)] for z in self.selected],
            "indices": list(self.indices),
            "certificate": self.certificate,
            "ratio": self.ratio,
            "trace": list(self.trace),
            "module": "localization_quasi",
            "tolerance": 0.0,
        }


def _log_abs_product(zeros, x):
    if zeros.size == 0:
        return np.zeros(np.shape(x))
    return np.asarray(canonical_log_modulus(CanonicalProductSpec(zeros), x), dtype=float)


def _lacunary_pick(zeros, ratio, start):
    picked = [start]
    last = abs(zeros[start])
    for i in range(start + 1, zeros.size):
        if abs(zeros[i]) >= ratio * last:
            picked.append(i)
            last = abs(zeros[i])
    return picked


def dominating_lacunary_product(target_zeros, reference_zeros, grid, ratio=2.0, c_max=None,
                                max_depth=16):
    """Greedy lacunary sub-product ``G`` of the targets with ``|G| <= C |E|`` on ``grid``.

    ``E`` is the canonical product over ``reference_zeros``.  Targets are
    sorted by modulus and picked greedily with ``|l_{n+1}| >= ratio |l_n|``;
    ``C = max_grid |G| / |E|``.  If ``c_max`` is given, later starting
    points are tried (up to ``max_depth``) until ``C <= c_max``; failing
    that, ``ExtractionError`` carries the certificate trace.
    """
    if ratio <= 1:
        raise InputError("lacunarity ratio must exceed 1")
    tz = np.atleast_1d(np.asarray(target_zeros, dtype=complex)).ravel()
    rz = np.atleast_1d(np.asarray(reference_zeros, dtype=complex)).ravel()
    x = np.atleast_1d(np.asarray(grid, dtype=float)).ravel()
    if x.size == 0:
        raise InputError("empty grid")
    if np.any(tz == 0) or np.any(rz == 0):
        raise InputError("canonical product zeros must be non-zero")
    logE = _log_abs_product(rz, x)
    if not np.all(np.isfinite(logE)):
        raise DomainError("reference product vanishes on the grid")
    if tz.size == 0:
        C = float(np.exp(np.max(-logE)))
        return DominatingProduct(tz, [], C, ratio, [C])
    order = np.argsort(np.abs(tz), kind="stable")
    tz = tz[order]
    trace = []
    best = None
    for start in range(min(max_depth, tz.size)):
        picked = _lacunary_pick(tz, ratio, start)
        logG = _log_abs_product(tz[picked], x)
        C = float(np.exp(np.max(logG - logE)))
        trace.append(C)
        if best is None or C < best[1]:
            best = (picked, C)
        if c_max is None or C <= c_max:
            return DominatingProduct(tz[picked], [int(order[i]) for i in picked], C, ratio, trace)
    err = ExtractionError("no lacunary sub-product meets the certificate bound",
                          [int(order[i]) for i in best[0]], best[1])
    err.trace = trace
    raise err


def lacunary_factor_margins(zeros, region, x):
    """``min_x |1 - x/l| / (gamma |l|^(-|beta|-1))`` per zero ``l`` of a generalized region."""
    if region.kind != "generalized":
        raise InputError("factor margins are defined for generalized regions")
    lam = np.atleast_1d(np.asarray(zeros, dtype=complex)).ravel()
    x = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    from .transfer import region_contains
    if not np.all(region_contains(region, lam)):
        raise DomainError("zeros must lie in the region")
    fac = np.min(np.abs(1.0 - x[None, :] / lam[:, None]), axis=1)
    bound = region.gamma * np.abs(lam) ** (-abs(region.beta) - 1.0)
    return fac / bound


# ---------------------------------------------------------------------------
# measures for moment tests
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeMeasureSpec:
    """Atoms ``l_n = n^(1/rho)``, ``n = 1..M``, with masses ``l^(2s) exp(-2 c l^m)``."""

    rho: float
    m: float
    s: float
    c: float
    M: int = 400

    def __post_init__(self):
        if self.rho <= 0 or self.m <= 0 or self.c <= 0:
            raise InputError("rho, m and c must be positive")
        if self.M < 1:
            raise InputError("truncation M must be positive")

    def atoms(self, idx=None):
        n = np.arange(1, self.M + 1) if idx is None else np.asarray(idx, dtype=float)
        return np.asarray(n, dtype=float) ** (1.0 / self.rho)

    def log_masses(self, idx=None):
        lam = self.atoms(idx)
        return 2.0 * self.s * np.log(lam) - 2.0 * self.c * lam ** self.m

    def masses(self, idx=None):
        return np.exp(self.log_masses(idx))

    @property
    def critical_c(self):
        """``pi cot(pi rho)`` (meaningful for ``0 < rho < 1/2``)."""
        return math.pi / math.tan(math.pi * self.rho)

    def to_json(self):
        return {"rho": self.rho, "m": self.m, "s": self.s, "c": self.c, "M": self.M}


@dataclass(frozen=True)
class DiscAtomFamily:
    """Atoms on the circle at distance ``dist_c k^-dist_p`` from ``zeta`` with mass ``exp(-mass_a k^mass_q)``."""

    zeta: complex
    dist_c: float
    dist_p: float
    mass_a: float
    mass_q: float
    truncation_N: int = 64

    def __post_init__(self):
        if not 0 < self.dist_c <= 2 or self.dist_p <= 0:
            raise InputError("distances must lie in (0, 2] and decrease")
        if self.mass_a <= 0 or self.mass_q <= 0:
            raise InputError("masses must decay")

    def distances(self, idx):
        return self.dist_c * np.asarray(idx, dtype=float) ** -self.dist_p

    def positions(self, idx):
        d = self.distances(idx)
        theta = 2.0 * np.arcsin(0.5 * d)
        return complex(self.zeta) * np.exp(1j * theta)

    def log_masses(self, idx):
        return -self.mass_a * np.asarray(idx, dtype=float) ** self.mass_q


class _DiscExpSource:
    first_index = 1

    def __init__(self, fam, eps):
        self.fam, self.eps = fam, eps
        self.truncation_N = fam.truncation_N

    def _log_term(self, k):
        f = self.fam
        k = np.asarray(k, dtype=float)
        return self.eps * k ** f.dist_p / f.dist_c - f.mass_a * k ** f.mass_q

    def ac_terms(self, point, order, idx):
        return np.exp(self._log_term(idx))

    def ac_tail(self, point, order, N):
        f = self.fam
        p, q, b = f.dist_p, f.mass_q, self.eps / f.dist_c
        if q < p or (q == p and b >= f.mass_a):
            return float("inf"), float("inf")
        if not (p <= 1.0 <= q):
            return None, None
        # the term ratio decreases in k when p <= 1 <= q
        first = float(np.exp(self._log_term(N + 1)))
        r = float(np.exp(self._log_term(N + 2) - self._log_term(N + 1)))
        if r >= 1:
            return None, None
        return first, first / (1.0 - r)


class _LatticeExpSource:
    first_index = 1

    def __init__(self, spec, eps):
        self.spec, self.eps = spec, eps
        self.truncation_N = spec.M

    def ac_terms(self, point, order, idx):
        lam = self.spec.atoms(idx)
        with np.errstate(over="ignore"):
            return np.exp(self.spec.log_masses(idx) + self.eps * lam)

    def ac_tail(self, point, order, N):
        sp, eps = self.spec, self.eps
        p, q = 2.0 * sp.s / sp.rho, sp.m / sp.rho
        if sp.m < 1 or (sp.m == 1 and 2.0 * sp.c < eps):
            return float("inf"), float("inf")
        if sp.m == 1 and 2.0 * sp.c == eps:
            return power_tail(1.0, p, N + 1), power_tail(1.0, p, N)
        lam_next = (N + 1.0) ** (1.0 / sp.rho)
        # eps l <= eps l^m lam_next^(1-m) for l >= lam_next
        kappa = 2.0 * sp.c - eps * lam_next ** (1.0 - sp.m)
        if kappa <= 0:
            return None, None
        upper = stretched_tail(0.0, p, kappa, q, N)
        if upper is None:
            return None, None
        lower = stretched_tail(0.0, p, 2.0 * sp.c, q, N + 1) or 0.0
        return lower, upper


def exp_moment_test(measure, point, eps, rel_tol=1e-6, max_terms=1 << 22):
    """``sum w_k exp(eps / |eta_k - zeta|)`` (disc) or ``sum w_k exp(eps |x_k|)`` at ``INF``."""
    if eps <= 0:
        raise InputError("eps must be positive")
    form = "exp-moment"
    if isinstance(measure, LatticeMeasureSpec):
        if point is not INF:
            raise DomainError("lattice measures are tested at infinity")
        rep = sum_series(np.zeros(0), _LatticeExpSource(measure, eps), INF, 0, rel_tol=rel_tol,
                         max_terms=max_terms, form=form)
    elif isinstance(measure, DiscAtomFamily):
        p = check_boundary_point(DomainTag.DISC, point)
        if abs(p - complex(measure.zeta)) > 1e-12:
            raise DomainError("atom families are tested at their own point")
        rep = sum_series(np.zeros(0), _DiscExpSource(measure, eps), p, 0, rel_tol=rel_tol,
                         max_terms=max_terms, form=form)
    elif isinstance(measure, ClarkMeasure):
        p = check_boundary_point(measure.domain, point)
        if p is INF:
            terms = measure.weights * np.exp(eps * np.abs(measure.positions.real))
        else:
            d = np.abs(measure.positions - p)
            if np.any(d < 1e-14):
                raise PreconditionError("atom at the test point (exceptional alpha)")
            terms = measure.weights * np.exp(eps / d)
        rep = sum_series(terms, None, p, 0, form=form)
    else:
        raise InputError("unsupported measure type")
    return rep


# ---------------------------------------------------------------------------
# orthonormal polynomials
# ---------------------------------------------------------------------------

@dataclass
class OrthopolyTrace:
    trace: list
    values: list
    alphas: np.ndarray
    betas: np.ndarray
    basis: np.ndarray
    log_slope: float
    note: str = DIAGNOSTIC_NOTE

    def orthonormality_error(self):
        Q = self.basis
        return float(np.max(np.abs(Q.conj().T @ Q - np.eye(Q.shape[1]))))

    def to_json(self):
        return {
            "trace": list(self.trace),
            "values": list(self.values),
            "log_slope": self.log_slope,
            "note": self.note,
            "module": "localization_quasi",
            "tolerance": ORTHO_TOL,
        }


def _atoms_of(mu):
    if isinstance(mu, LatticeMeasureSpec):
        return mu.atoms(), mu.log_masses()
    pos, mass = mu
    pos = np.atleast_1d(np.asarray(pos, dtype=float)).ravel()
    mass = np.atleast_1d(np.asarray(mass, dtype=float)).ravel()
    if pos.shape != mass.shape or np.any(mass <= 0):
        raise InputError("atom list needs matching positions and positive masses")
    return pos, np.log(mass)


def orthopoly_divergence_diagnostic(mu, z0, K):
    """Partial sums ``sum_{k<=K} |P_k(z0)|^2`` for the orthonormal polynomials of ``mu``.

    Lanczos on ``diag(x)`` with start vector ``sqrt(w)`` and full
    reorthogonalization (twice) gives the recurrence coefficients; the
    polynomials are then evaluated at ``z0`` by the three-term recurrence.
    """
    z0 = complex(z0)
    if z0.imag == 0:
        raise InputError("probe point must be non-real")
    x, logw = _atoms_of(mu)
    if K + 1 > x.size:
        raise NumericalError("measure has fewer atoms than K + 1", atoms=int(x.size))
    logw = logw - np.max(logw)
    q = np.exp(0.5 * logw)
    total = np.linalg.norm(q)
    q = q / total
    Q = np.zeros((x.size, K + 1))
    Q[:, 0] = q
    alphas = np.zeros(K + 1)
    betas = np.zeros(K + 1)
    scale = np.max(np.abs(x))
    for k in range(K):
        v = x * Q[:, k]
        alphas[k] = Q[:, k] @ v
        for _ in range(2):
            v -= Q[:, :k + 1] @ (Q[:, :k + 1].T @ v)
        b = np.linalg.norm(v)
        if b <= 1e-13 * scale:
            raise NumericalError("recurrence breakdown: support smaller than K + 1", step=k + 1)
        betas[k + 1] = b
        Q[:, k + 1] = v / b
    alphas[K] = Q[:, K] @ (x * Q[:, K])
    # P_0 = 1 / sqrt(mass): rescaling the masses by exp(-max) multiplies all P_k
    # by a common constant; undo it so values refer to the given measure
    logmass = float(np.max(_atoms_of(mu)[1])) + 2.0 * math.log(total)
    p_prev, p = 0j, complex(math.exp(-0.5 * logmass))
    values = [abs(p) ** 2]
    for k in range(K):
        p_next = ((z0 - alphas[k]) * p - betas[k] * p_prev) / betas[k + 1]
        p_prev, p = p, p_next
        values.append(abs(p) ** 2)
    trace = np.cumsum(values).tolist()
    half = max(1, (K + 1) // 2)
    kk = np.arange(half, K + 1)
    if kk.size >= 2:
        slope = float(np.polyfit(kk, np.log(np.asarray(trace)[half:]), 1)[0])
    else:
        slope = float("nan")
    return OrthopolyTrace(trace, values, alphas, betas[1:], Q, slope)


# ---------------------------------------------------------------------------
# Taylor coefficients at a boundary point
# ---------------------------------------------------------------------------

@dataclass
class TaylorProbe:
    moments: list
    finite_differences: list
    step: float

    def to_json(self):
        return {
            "moments": [[float(m.real), float(m.imag)] for m in self.moments],
            "finite_differences": [[float(m.real), float(m.imag)] for m in self.finite_differences],
            "step": self.step,
            "module": "localization_quasi",
            "tolerance": 1e-4,
        }


def taylor_vanishing_probe(mu, h, zeta, n_max, fd=True):
    """``g^(n)(zeta) = n! sum conj(z_k)^n h_k w_k / (1 - conj(z_k) zeta)^(n+1)`` for ``n <= n_max``.

    ``g = Vh / (alpha - theta)`` is the Cauchy integral of ``h`` against the
    Clark measure.  With ``fd`` the same derivatives are estimated from
    values of ``Vh / (alpha - theta)`` on the radius ending at ``zeta``.
    """
    if mu.domain is not DomainTag.DISC:
        raise DomainError("taylor probe works on the disc")
    zeta = check_boundary_point(DomainTag.DISC, zeta)
    if mu.spec is not None:
        rep = ac_test(mu.spec, zeta, n_max)
        if not rep.converged:
            raise RegularityError(f"AC_{n_max} at {zeta} is {rep.verdict}")
    h = np.asarray(h, dtype=complex).ravel()
    if h.size != mu.weights.size:
        raise InputError("h must align with the Clark atoms")
    d = 1.0 - np.conj(mu.positions) * zeta
    if np.any(np.abs(d) < 1e-14):
        raise PreconditionError("zeta is an atom of the Clark measure")
    moments = []
    for n in range(n_max + 1):
        m = math.factorial(n) * np.sum(np.conj(mu.positions) ** n * h * mu.weights / d ** (n + 1))
        moments.append(complex(m))
    fds = []
    step = 0.0
    if fd:
        if mu.spec is None:
            raise PreconditionError("finite differences need the inner function")
        dist = float(np.min(np.abs(mu.positions - zeta)))
        for z in np.atleast_1d(mu.spec.zeros):
            dist = min(dist, abs(z - zeta))
        step = 0.02 * dist
        deg = n_max + 8
        j = np.arange(1, deg + 2)
        r = 1.0 - j * step
        pts = r * zeta
        g = clark_transform(mu, h, pts) / (mu.alpha - eval_inner(mu.spec, pts))
        # fit in the scaled variable u = (r - 1)/step to keep the system well conditioned
        u = (r - 1.0) / step
        V = np.vander(u, deg + 1, increasing=True)
        coef = np.linalg.solve(V, g)
        for n in range(n_max + 1):
            dr = coef[n] * math.factorial(n) / step ** n
            fds.append(complex(np.conj(zeta) ** n * dr))
    return TaylorProbe(moments, fds, step)

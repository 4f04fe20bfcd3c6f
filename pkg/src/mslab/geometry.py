"""Geometry of finite systems of normalized kernels.

Vectors are kept as finite kernel combinations ``sum_j c_j k_{p_j}`` so every
inner product is a closed-form kernel evaluation.  Eigenvalues come from the
deterministic Jacobi kernel in :mod:`mslab._kernels`.

All verdicts on truncations are finite-dimensional evidence.  Trend verdicts
carry their traces; the thresholds below are toolkit conventions.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import jacobi_eigh
from .errors import ExtractionError, InputError
from .inner import INF
from .kernel_space import boundary_norm_sq, kernel_eval, kernel_matrix, kernel_norm

SINGULARITY_TOL = 1e-10
MARGIN = 0.1
# trend conventions for umnr_classify
WEAK_DECAY = 0.5        # final weak-test value below this fraction of the first
STABLE_FLOOR = 1e-3     # lower Riesz bound / distance must stay above this
STABLE_RATIO = 0.5      # and never drop by more than this factor between truncations
UPPER_CAP = 1e3


@dataclass(eq=False)
class Combination:
    """``sum_j coeffs[j] k_{points[j]} + inf_coeff K_inf`` in the model space of ``spec``."""

    spec: object
    points: np.ndarray
    coeffs: np.ndarray
    inf_coeff: complex = 0j

    def __post_init__(self):
        self.points = np.atleast_1d(np.asarray(self.points, dtype=complex))
        self.coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if self.points.shape != self.coeffs.shape:
            raise InputError("points and coefficients differ in length")

    def __call__(self, z):
        zz = np.atleast_1d(z)
        out = np.zeros(zz.shape, dtype=complex)
        if self.points.size:
            out += self.coeffs @ kernel_matrix(self.spec, self.points, zz)
        if self.inf_coeff:
            out += self.inf_coeff * kernel_eval(self.spec, INF, zz)
        return out if np.ndim(z) else complex(out[0])

    @property
    def is_zero(self):
        return not np.any(self.coeffs) and not self.inf_coeff


def normalized_kernel(spec, p):
    if p is INF:
        return Combination(spec, [], [], 1.0 / math.sqrt(boundary_norm_sq(spec, INF)))
    return Combination(spec, [p], [1.0 / kernel_norm(spec, p)])


def combo_gram(spec, combos):
    """``G[a, b] = <u_a, u_b>`` for kernel combinations."""
    pts = np.concatenate([c.points for c in combos])
    use_inf = any(c.inf_coeff for c in combos)
    P = pts.size
    M = np.zeros((P + use_inf, P + use_inf), dtype=complex)
    if P:
        M[:P, :P] = kernel_matrix(spec, pts, pts)  # M[i, j] = <k_i, k_j>
    if use_inf:
        if P:
            kinf = kernel_eval(spec, INF, pts)
            M[P, :P] = kinf
            M[:P, P] = np.conj(kinf)
        M[P, P] = boundary_norm_sq(spec, INF)
    C = np.zeros((len(combos), P + use_inf), dtype=complex)
    pos = 0
    for a, c in enumerate(combos):
        C[a, pos:pos + c.points.size] = c.coeffs
        pos += c.points.size
        if use_inf:
            C[a, P] = c.inf_coeff
    G = C @ M @ C.conj().T
    return 0.5 * (G + G.conj().T)


@dataclass(eq=False)
class KernelSystem:
    """Normalized kernels ``k_{lambda_n} / ||k_{lambda_n}||`` and their Gram matrix."""

    points: np.ndarray
    spec: object
    gram: np.ndarray
    norms: np.ndarray

    @property
    def size(self):
        return self.gram.shape[0]

    def truncate(self, n):
        return KernelSystem(self.points[:n], self.spec, self.gram[:n, :n], self.norms[:n])

    def elements(self):
        return [Combination(self.spec, [p], [1.0 / r]) for p, r in zip(self.points, self.norms)]

    @classmethod
    def from_gram(cls, G):
        G = np.asarray(G, dtype=complex)
        n = G.shape[0]
        return cls(np.arange(n).astype(complex), None, 0.5 * (G + G.conj().T), np.ones(n))


def build_system(spec, points):
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    if np.unique(pts).size != pts.size:
        raise InputError("duplicate points give a singular Gram matrix")
    norms = np.array([kernel_norm(spec, p) for p in pts])
    M = kernel_matrix(spec, pts, pts)
    G = M / np.outer(norms, norms)
    G = 0.5 * (G + G.conj().T)
    np.fill_diagonal(G, 1.0)
    return KernelSystem(pts, spec, G, norms)


def _gram(sys_or_gram):
    return sys_or_gram.gram if isinstance(sys_or_gram, KernelSystem) else np.asarray(sys_or_gram)


def riesz_bounds(sys_or_gram):
    w, _ = jacobi_eigh(_gram(sys_or_gram))
    return float(w[0]), float(w[-1])


@dataclass
class Biorthogonal:
    minimal: bool
    norms: object
    riesz_lower: float
    inverse_residual: float = None


def biorthogonal_norms(sys_or_gram):
    """``||g_n|| = sqrt((G^-1)_nn)``; ``norms is None`` when the Gram is singular."""
    G = _gram(sys_or_gram)
    w, V = jacobi_eigh(G)
    if w[0] <= SINGULARITY_TOL:
        return Biorthogonal(False, None, float(w[0]))
    Ginv = (V / w) @ V.conj().T
    resid = float(np.max(np.abs(G @ Ginv - np.eye(G.shape[0]))))
    return Biorthogonal(True, np.sqrt(np.real(np.diag(Ginv))), float(w[0]), resid)


@dataclass
class Extraction:
    indices: list
    accumulated: float
    min_eigenvalue: float
    weak_trace: list = field(default_factory=list)


def greedy_riesz_extract(sys_or_gram, margin=MARGIN, min_length=2, weak_test=None):
    """Pick indices in stream order keeping ``sum_{k != l} |G_kl|^2 <= 1 - margin``.

    An element is accepted when its cross terms with the current selection
    still fit in the budget.  Then ``lambda_min >= 1 - sqrt(sum)``.
    ``weak_test[n, i] = <x_n, f_i>`` is an optional weak-null certificate;
    its row maxima are returned as a trace.
    """
    G = _gram(sys_or_gram)
    cap = 1.0 - margin
    sel = []
    acc = 0.0
    for k in range(G.shape[0]):
        cost = 2.0 * float(np.sum(np.abs(G[k, sel]) ** 2)) if sel else 0.0
        if acc + cost <= cap:
            sel.append(k)
            acc += cost
    trace = []
    if weak_test is not None:
        trace = [float(v) for v in np.max(np.abs(np.asarray(weak_test)), axis=1)]
    if len(sel) < min_length:
        raise ExtractionError("stream exhausted before a Riesz subsequence was found", sel, acc)
    lo, _ = riesz_bounds(G[np.ix_(sel, sel)])
    return Extraction(sel, acc, lo, trace)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class GeometryReport:
    riesz_lower: float
    riesz_upper: float
    biorth_norms: list
    verdicts: dict
    traces: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "riesz_lower": self.riesz_lower,
            "riesz_upper": self.riesz_upper,
            "biorth_norms": list(self.biorth_norms),
            "verdicts": dict(self.verdicts),
            "traces": {k: list(v) for k, v in self.traces.items()},
            "module": "system_geometry",
            "tolerance": SINGULARITY_TOL,
            "note": "verdicts on truncations are finite-dimensional trends, not theorems",
        }


def _stable(values, floor=STABLE_FLOOR):
    v = np.asarray(values, dtype=float)
    if v.size == 0 or np.any(v <= floor):
        return False
    return bool(np.all(v[1:] >= STABLE_RATIO * v[:-1]))


def geometry_report(system, truncations):
    """Riesz bounds, biorthogonal norms and norm traces across truncations."""
    truncations = list(truncations)
    if truncations != sorted(truncations) or truncations[-1] > system.size:
        raise InputError("truncations must ascend and fit the system")
    lows, ups, bmax, nmax = [], [], [], []
    last = None
    for n in truncations:
        sub = system.truncate(n)
        lo, up = riesz_bounds(sub)
        b = biorthogonal_norms(sub)
        lows.append(lo)
        ups.append(up)
        bmax.append(float(np.max(b.norms)) if b.minimal else float("inf"))
        nmax.append(float(np.max(sub.norms)))
        last = (lo, up, b)
    lo, up, b = last
    minimal = "yes" if b.minimal else "no"
    um = "trend" if all(np.isfinite(bmax)) and bmax[-1] <= 1.2 * bmax[0] else "no"
    riesz = "trend" if nmax[-1] > 2.0 * nmax[0] else "no"
    verdicts = {"minimal": minimal, "uniformly_minimal": um, "contains_riesz_candidate": riesz,
                "umnr_candidate": "trend" if um == "trend" and riesz == "trend" else "no"}
    traces = {"truncations": truncations, "riesz_lower": lows, "riesz_upper": ups,
              "biorth_max": bmax, "kernel_norm_max": nmax}
    return GeometryReport(lo, up, [] if b.norms is None else b.norms.tolist(), verdicts, traces)


def umnr_classify(spec, elements, weak_limit, truncations, test_family):
    """Check the three UMNR conditions on the unit vectors ``x_n`` across truncations.

    ``elements`` and ``test_family`` are lists of :class:`Combination`;
    ``weak_limit`` is the candidate ``x`` (``None`` means 0).  With
    ``z_n = x_n - x``:

    (i)   ``max_i |<z_n, f_i>|`` over the last quarter of each truncation decays;
    (ii)  Riesz bounds of ``{z_n}`` stay in ``[STABLE_FLOOR, UPPER_CAP]`` and stable;
    (iii) ``dist(x, span{z_n})^2`` stays above ``STABLE_FLOOR`` and stable.
    """
    truncations = list(truncations)
    if truncations != sorted(truncations) or truncations[-1] > len(elements):
        raise InputError("truncations must ascend and fit the element list")
    n_max = truncations[-1]
    xs = list(elements[:n_max])
    x = weak_limit if weak_limit is not None else Combination(spec, [], [])
    has_x = not x.is_zero
    G_all = combo_gram(spec, xs + [x] + list(test_family))
    m = len(test_family)
    b = G_all[:n_max, n_max]                  # <x_n, x>
    xx = float(G_all[n_max, n_max].real)
    W = G_all[:n_max, n_max + 1:] - G_all[n_max, n_max + 1:][None, :]
    weak, lows, ups, dists, bmax = [], [], [], [], []
    for n in truncations:
        q = max(1, n // 4)
        weak.append(float(np.max(np.abs(W[n - q:n]))) if m else 0.0)
        Gx = G_all[:n, :n]
        Z = Gx - b[:n, None] - b[:n].conj()[None, :] + xx
        lo, up = riesz_bounds(Z)
        lows.append(lo)
        ups.append(up)
        bo = biorthogonal_norms(Gx)
        bmax.append(float(np.max(bo.norms)) if bo.minimal else float("inf"))
        if not has_x:
            dists.append(0.0)
            continue
        c = b[:n] - xx                        # <z_n, x>
        w, V = jacobi_eigh(Z)
        keep = w > SINGULARITY_TOL * w[-1]
        coef = V[:, keep].conj().T @ c
        proj = float(np.sum(np.abs(coef) ** 2 / w[keep]))
        dists.append(max(xx - proj, 0.0))
    cond_i = bool(weak[-1] <= WEAK_DECAY * weak[0]) if has_x else False
    cond_ii = _stable(lows) and max(ups) <= UPPER_CAP
    cond_iii = _stable(dists)
    verdict = "yes" if cond_i and cond_ii and cond_iii else "no"
    traces = {"truncations": truncations, "weak_test": weak, "shifted_riesz_lower": lows,
              "shifted_riesz_upper": ups, "distance_sq": dists, "biorth_max": bmax}
    G = G_all[:n_max, :n_max]
    bo = biorthogonal_norms(G)
    verdicts = {"minimal": "yes" if bo.minimal else "no",
                "condition_i": cond_i, "condition_ii": cond_ii, "condition_iii": cond_iii,
                "umnr_candidate": verdict}
    lo, up = riesz_bounds(G)
    return GeometryReport(lo, up, [] if bo.norms is None else bo.norms.tolist(), verdicts, traces)

"""Ahern-Clark membership tests with converged / diverged / inconclusive verdicts.

Verdict rule (a toolkit convention, not a theorem):

* ``converged``: a certified enclosure ``[partial, partial + tail_bound]`` of
  the full series exists and ``tail_bound < rel_tol * partial``;
* ``diverged``: an infinite term, an analytic lower tail bound of ``inf``,
  or partial sums above ``1e8`` whose last decade of terms is non-decreasing;
* ``inconclusive``: anything else.

Generator-backed series are extended past their truncation (doubling, up to
``max_terms``) until the enclosure is tight enough.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .inner import INF, DomainTag, on_boundary

REL_TOL = 1e-6
DIVERGENCE_CAP = 1e8
MAX_TERMS = 1 << 23
CRITERION_NOTE = "numerical verdict thresholds are toolkit conventions (rel_tol, cap), not theory"


@dataclass
class ConvergenceReport:
    verdict: str
    partial_sum: float
    tail_bound: float = None
    terms_used: int = 0
    form: str = "zero-sum"
    order: int = 0
    witness: str = ""
    trace: list = field(default_factory=list)

    @property
    def converged(self):
        return self.verdict == "converged"

    def to_json(self, with_trace=False):
        out = {
            "verdict": self.verdict,
            "partial_sum": self.partial_sum,
            "tail_bound": self.tail_bound,
            "terms_used": self.terms_used,
            "form": self.form,
            "order": self.order,
            "witness": self.witness,
            "criterion": CRITERION_NOTE,
            "module": "boundary_diagnostics",
            "tolerance": REL_TOL,
        }
        if with_trace:
            out["trace"] = list(self.trace)
        return out


def _fsum(x):
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return 0.0
    return math.fsum(np.add.reduceat(x, np.arange(0, x.size, 4096)))


def check_boundary_point(domain, point):
    if DomainTag(domain) is DomainTag.HALF_PLANE and point is INF:
        return INF
    if point is INF:
        raise DomainError("infinity is only a boundary point of the half-plane")
    p = complex(point)
    if not bool(on_boundary(domain, p)):
        raise DomainError(f"{p} is not a boundary point of the {DomainTag(domain).value}")
    if DomainTag(domain) is DomainTag.DISC:
        return p / abs(p)
    return complex(p.real, 0.0)


def _zero_terms(domain, zeros, point, order):
    zeros = np.asarray(zeros, dtype=complex)
    if DomainTag(domain) is DomainTag.DISC:
        return (1 - np.abs(zeros) ** 2) / np.abs(point - zeros) ** (2 * order + 2)
    if point is INF:
        return zeros.imag * (1 + np.abs(zeros) ** 2) ** order
    return zeros.imag / np.abs(point - zeros) ** (2 * order + 2)


def _mass_terms(domain, positions, masses, point, order):
    positions = np.asarray(positions, dtype=complex)
    masses = np.asarray(masses, dtype=float)
    if point is INF:
        return masses * (1 + positions.real ** 2) ** order
    dist = np.abs(point - positions)
    with np.errstate(divide="ignore"):
        return np.where(dist == 0, np.inf, masses / dist ** (2 * order + 2))


def sum_series(explicit, source, point, order, *, rel_tol=REL_TOL, max_terms=MAX_TERMS,
               form="zero-sum", trace=False, trace_cap=4096):
    """Sum explicit terms plus a generator series and classify the result.

    ``source`` is ``None`` or an object exposing ``ac_terms(point, order,
    idx)``, ``ac_tail(point, order, N)``, ``first_index`` and
    ``truncation_N`` (a tail model or a parametric measure).
    """
    explicit = np.asarray(explicit, dtype=float)
    tr = list(explicit[:trace_cap]) if trace else []
    if np.any(np.isinf(explicit)):
        return ConvergenceReport("diverged", float("inf"), None, explicit.size, form, order,
                                 "infinite term (mass at the test point)", tr)
    base = _fsum(explicit)
    used = explicit.size
    if source is None:
        return ConvergenceReport("converged", base, 0.0, used, form, order, "finite sum", tr)

    first = source.first_index
    N = source.truncation_N
    chunks = []
    lo = first
    last_terms = np.zeros(0)
    lower = upper = None
    while True:
        idx = np.arange(lo, N + 1)
        terms = np.asarray(source.ac_terms(point, order, idx), dtype=float)
        if trace and len(tr) < trace_cap:
            tr.extend(terms[:trace_cap - len(tr)].tolist())
        chunks.append(_fsum(terms))
        if terms.size:
            last_terms = terms
        lo = N + 1
        lower, upper = source.ac_tail(point, order, N)
        gen_sum = math.fsum(chunks)
        partial = base + gen_sum
        if lower is not None and math.isinf(lower):
            return ConvergenceReport("diverged", partial, None, used + N - first + 1, form, order,
                                     "analytic lower tail bound is infinite", tr)
        if upper is not None and lower is not None:
            width = upper - lower
            total = partial + lower
            if width < rel_tol * total:
                return ConvergenceReport("converged", total, width, used + N - first + 1, form,
                                         order, "certified tail enclosure", tr)
        if N - first + 1 >= max_terms:
            break
        N = min(2 * N, max_terms + first - 1)

    partial = base + math.fsum(chunks)
    used += N - first + 1
    tail = last_terms[-max(1, last_terms.size // 10):]
    if partial > DIVERGENCE_CAP and tail.size > 1 and np.all(np.diff(tail) >= 0):
        return ConvergenceReport("diverged", partial, None, used, form, order,
                                 "partial sums above cap with non-decreasing terms", tr)
    width = None if upper is None or lower is None else upper - lower
    return ConvergenceReport("inconclusive", partial, width, used, form, order,
                             "no certified enclosure within max_terms", tr)


def ac_test(spec, point, order, *, rel_tol=REL_TOL, max_terms=MAX_TERMS, trace=False):
    """Ahern-Clark test of the given order at a boundary point.

    Disc: ``sum (1-|z_j|^2)/|zeta-z_j|^(2n+2) + sum mass/|zeta-eta|^(2n+2)``.
    Half-plane at ``INF``: ``sum y_j (1+|w_j|^2)^n + sum mass (1+x^2)^n``.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    point = check_boundary_point(spec.domain, point)
    tail = spec.tail_model
    uses_tail = tail is not None and tail.supports(point)
    zeros = spec.explicit_zeros if uses_tail else spec.zeros
    parts = [_zero_terms(spec.domain, zeros, point, order),
             _mass_terms(spec.domain, spec.atom_positions, spec.atom_masses, point, order)]
    if spec.infinity_mass and point is INF:
        parts.append(np.array([np.inf]))
    explicit = np.concatenate(parts)
    report = sum_series(explicit, tail if uses_tail else None, point, order,
                        rel_tol=rel_tol, max_terms=max_terms, trace=trace)
    if tail is not None and not uses_tail and report.verdict == "converged":
        report.verdict = "inconclusive"
        report.tail_bound = None
        report.witness = "truncated generator has no tail bound at this point"
    return report


def ac_test_clark(measure, order, point=None, *, rel_tol=REL_TOL, max_terms=MAX_TERMS,
                  trace=False):
    """Ahern-Clark test through a Clark measure.

    Disc: ``sum w_k / |1 - conj(eta_k) zeta|^(2n+2)``; half-plane at ``INF``:
    ``sum w_k (1 + x_k^2)^n``.  An atom at the test point means the measure
    belongs to the exceptional parameter and is rejected.
    """
    from .errors import PreconditionError

    if order < 0:
        raise ValueError("order must be >= 0")
    if point is None:
        point = INF if measure.domain is DomainTag.HALF_PLANE else measure.anchor
    point = check_boundary_point(measure.domain, point)
    if point is not INF and np.any(np.abs(measure.positions - point) < 1e-14):
        raise PreconditionError("Clark measure has an atom at the test point (exceptional alpha)")
    source = measure.tail if measure.tail is not None and measure.tail.supports(point) else None
    m = measure.n_explicit if source is not None else measure.positions.size
    explicit = _mass_terms(measure.domain, measure.positions[:m], measure.weights[:m], point, order)
    return sum_series(explicit, source, point, order, rel_tol=rel_tol, max_terms=max_terms,
                      form="clark-moment", trace=trace)

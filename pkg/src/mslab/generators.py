"""Parametric zero sequences with analytic tail bounds.

A tail model produces the first ``truncation_N`` zeros of an infinite
Blaschke sequence and, for its natural boundary point, closed-form
Ahern-Clark terms together with certified lower/upper bounds for the sum of
all terms beyond a given index.  ``None`` means "no bound available",
``inf`` as a lower bound certifies divergence.

Bundled models
--------------
``lacunary``     disc zeros ``1 - base q^-j`` (or ``i base q^j`` on the half-plane)
``power``        half-plane zeros ``|n|^a sign n + i exp(-|n|^(1/b))``, n in Z
``umnr``         half-plane zeros ``x_n + i x_n^-e`` with ``x_n = scale n^2``
``remark3``      half-plane zeros ``n + i n^-3/2``
``tangential``   disc zeros ``(1 - q^(-j e)) exp(i q^-j)``
"""
import math

import numpy as np
from scipy import special

from .inner import INF, DomainTag
from .errors import InputError

_INF = float("inf")


def log_upper_gamma(a, x):
    """``log Gamma(a, x)`` for ``x > 0`` without underflow."""
    q = special.gammaincc(a, x) if a > 0 else 0.0
    if q > 1e-280:
        return special.gammaln(a) + math.log(q)
    # Gamma(a, x) <= x^(a-1) e^-x / (1 - (a-1)/x) once x > a - 1
    lead = (a - 1.0) * math.log(x) - x
    if a <= 1.0:
        return lead
    if x <= 2.0 * (a - 1.0):
        raise ValueError("asymptotic incomplete-gamma bound needs x > 2(a-1)")
    return lead - math.log1p(-(a - 1.0) / x)


def stretched_tail(logc, p, b, q, start):
    """``int_start^inf exp(logc) x^p exp(-b x^q) dx`` or ``None`` if not decreasing there.

    For an integrand that decreases on ``[N, inf)`` this integral from ``N``
    bounds ``sum_{n>N}`` from above and from ``N + 1`` bounds it from below.
    """
    if start <= 0:
        return None
    if p > 0 and start ** q <= p / (b * q):
        return None
    a = (p + 1.0) / q
    x0 = b * start ** q
    try:
        lg = log_upper_gamma(a, x0)
    except ValueError:
        return None
    val = logc - math.log(q) - a * math.log(b) + lg
    return math.exp(val) if val < 700 else _INF


def power_tail(coef, p, start):
    """``int_start^inf coef x^p dx`` (``inf`` when ``p >= -1``)."""
    if p >= -1:
        return _INF
    return coef * start ** (p + 1) / (-p - 1)


class TailModel:
    name = "base"
    domain = DomainTag.DISC
    natural_point = None
    first_index = 1

    def __init__(self, truncation_N, **params):
        if int(truncation_N) < 1:
            raise InputError("truncation_N must be >= 1")
        self.truncation_N = int(truncation_N)
        self.params = params

    def zeros(self, N=None):
        idx = np.arange(self.first_index, (N or self.truncation_N) + 1)
        return self.zeros_at(idx)

    def zeros_at(self, idx):
        raise NotImplementedError

    def supports(self, point):
        p = self.natural_point
        if p is INF:
            return point is INF
        return point is not INF and abs(complex(point) - p) < 1e-14

    def ac_terms(self, point, order, idx):
        """Ahern-Clark terms grouped by generator index (vectorized)."""
        raise NotImplementedError

    def ac_tail(self, point, order, N):
        """``(lower, upper)`` for ``sum_{j > N}`` of :meth:`ac_terms`."""
        return None, None

    def blaschke_tail(self):
        return _INF

    def to_json(self):
        return {"name": self.name, "params": dict(self.params),
                "truncation_N": self.truncation_N}

    def __repr__(self):
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({args}; N={self.truncation_N})"


class Lacunary(TailModel):
    name = "lacunary"

    def __init__(self, truncation_N, q=2.0, base=1.0, domain="disc"):
        super().__init__(truncation_N, q=float(q), base=float(base), domain=str(domain))
        if q <= 1 or base <= 0:
            raise InputError("lacunary needs q > 1 and base > 0")
        self.domain = DomainTag(domain)
        self.natural_point = 1.0 + 0j if self.domain is DomainTag.DISC else INF
        if self.domain is DomainTag.DISC and base >= q:
            raise InputError("disc lacunary needs base < q so zeros stay inside")

    def _d(self, idx):
        return self.params["base"] * self.params["q"] ** (-np.asarray(idx, dtype=float))

    def zeros_at(self, idx):
        if self.domain is DomainTag.DISC:
            return (1.0 - self._d(idx)).astype(complex)
        return 1j * self.params["base"] * self.params["q"] ** np.asarray(idx, dtype=float)

    def ac_terms(self, point, order, idx):
        if self.domain is DomainTag.DISC:
            d = self._d(idx)
            return (2 * d - d * d) / d ** (2 * order + 2)
        y = self.zeros_at(idx).imag
        return y * (1 + y * y) ** order

    def ac_tail(self, point, order, N):
        if not self.supports(point):
            return None, None
        # terms grow geometrically: divergence at every order
        return _INF, _INF

    def blaschke_tail(self):
        q, b, N = self.params["q"], self.params["base"], self.truncation_N
        if self.domain is DomainTag.DISC:
            return b * q ** (-N) / (q - 1)
        return q ** (-N) / (b * (q - 1))


class Power(TailModel):
    name = "power"
    domain = DomainTag.HALF_PLANE
    natural_point = INF
    first_index = 0

    def __init__(self, truncation_N, alpha=2.0, beta=3.0):
        super().__init__(truncation_N, alpha=float(alpha), beta=float(beta))
        if not 1 < alpha < beta:
            raise InputError("power model needs 1 < alpha < beta")

    def zeros(self, N=None):
        N = N or self.truncation_N
        n = np.arange(-N, N + 1)
        return self.zeros_at(n)

    def zeros_at(self, n):
        n = np.asarray(n, dtype=float)
        a, b = self.params["alpha"], self.params["beta"]
        return np.abs(n) ** a * np.sign(n) + 1j * np.exp(-np.abs(n) ** (1.0 / b))

    def ac_terms(self, point, order, idx):
        m = np.asarray(idx, dtype=float)
        a, b = self.params["alpha"], self.params["beta"]
        y_log = -m ** (1.0 / b)
        mod2 = m ** (2 * a) + np.exp(2 * y_log)
        mult = np.where(m == 0, 1.0, 2.0)
        return mult * np.exp(y_log + order * np.log1p(mod2))

    def ac_tail(self, point, order, N):
        if not self.supports(point) or N < 1:
            return None, None
        a, b = self.params["alpha"], self.params["beta"]
        # (1 + m^2a + y^2) <= m^2a (1 + 2 N^-2a) for m > N >= 1
        upper = stretched_tail(math.log(2.0) + order * math.log1p(2.0 * N ** (-2 * a)),
                               2 * a * order, 1.0, 1.0 / b, N)
        lower = stretched_tail(math.log(2.0), 2 * a * order, 1.0, 1.0 / b, N + 1)
        if upper is None or lower is None:
            return None, None
        return lower, upper

    def blaschke_tail(self):
        a, b = self.params["alpha"], self.params["beta"]
        val = stretched_tail(math.log(2.0), -2 * a, 1.0, 1.0 / b, self.truncation_N)
        return _INF if val is None else val


class Remark3(TailModel):
    name = "remark3"
    domain = DomainTag.HALF_PLANE
    natural_point = INF

    def __init__(self, truncation_N):
        super().__init__(truncation_N)

    def zeros_at(self, idx):
        n = np.asarray(idx, dtype=float)
        return n + 1j * n ** -1.5

    def ac_terms(self, point, order, idx):
        n = np.asarray(idx, dtype=float)
        return n ** -1.5 * (1 + n * n + n ** -3.0) ** order

    def ac_tail(self, point, order, N):
        if not self.supports(point):
            return None, None
        if order == 0:
            return 2.0 / math.sqrt(N + 1), 2.0 / math.sqrt(N)
        # terms >= n^(2 order - 3/2) >= n^(1/2)
        return _INF, _INF

    def blaschke_tail(self):
        return self.truncation_N ** -2.5 / 2.5


class UMNRModel(TailModel):
    """Zeros ``x_n + i y_n`` with ``x_n = scale n^2`` and ``y_n = x_n^-y_exponent``."""

    name = "umnr"
    domain = DomainTag.HALF_PLANE
    natural_point = INF

    def __init__(self, truncation_N, scale=1.0, y_exponent=6.0):
        super().__init__(truncation_N, scale=float(scale), y_exponent=float(y_exponent))
        if scale < 1 or y_exponent <= 2:
            raise InputError("umnr model needs scale >= 1 and y_exponent > 2")

    def x(self, idx):
        return self.params["scale"] * np.asarray(idx, dtype=float) ** 2

    def y(self, idx):
        return self.x(idx) ** (-self.params["y_exponent"])

    def s(self, idx):
        """Offsets ``s_n = x_n sqrt(y_n)`` of the real points ``t_n = x_n + s_n``."""
        return self.x(idx) * np.sqrt(self.y(idx))

    def t(self, idx):
        return self.x(idx) + self.s(idx)

    def zeros_at(self, idx):
        return self.x(idx) + 1j * self.y(idx)

    def ac_terms(self, point, order, idx):
        x, y = self.x(idx), self.y(idx)
        return y * (1 + x * x + y * y) ** order

    def ac_tail(self, point, order, N):
        if not self.supports(point):
            return None, None
        c, e = self.params["scale"], self.params["y_exponent"]
        p = 2.0 * (2 * order - e)
        base = c ** (2 * order - e)
        xN = c * N * N
        upper = power_tail(base * (1 + 2.0 / xN ** 2) ** order, p, N)
        lower = power_tail(base, p, N + 1)
        return lower, upper

    def blaschke_tail(self):
        c, e = self.params["scale"], self.params["y_exponent"]
        return power_tail(c ** (-e - 2), -2 * e - 4, self.truncation_N)


class Tangential(TailModel):
    """Disc zeros approaching 1 tangentially: ``(1 - phi^e) exp(i phi)``, ``phi = q^-j``."""

    name = "tangential"

    def __init__(self, truncation_N, q=1.2, exponent=2.5):
        super().__init__(truncation_N, q=float(q), exponent=float(exponent))
        if q <= 1 or exponent < 1 or 1.0 / q > math.pi / 2:
            raise InputError("tangential model needs q > 1 and exponent >= 1")
        self.domain = DomainTag.DISC
        self.natural_point = 1.0 + 0j

    def phi(self, idx):
        return self.params["q"] ** (-np.asarray(idx, dtype=float))

    def zeros_at(self, idx):
        phi = self.phi(idx)
        return (1.0 - phi ** self.params["exponent"]) * np.exp(1j * phi)

    def ac_terms(self, point, order, idx):
        z = self.zeros_at(idx)
        d = self.phi(idx) ** self.params["exponent"]
        return (2 * d - d * d) / np.abs(1.0 - z) ** (2 * order + 2)

    def ac_tail(self, point, order, N):
        if not self.supports(point):
            return None, None
        q, e = self.params["q"], self.params["exponent"]
        r = e - 2 * order - 2
        if r <= 0:
            return _INF, _INF
        geo = q ** (-(N + 1) * r) / (1.0 - q ** (-r))
        d_next = q ** (-(N + 1) * e)
        # 1-|z|^2 <= 2d, |1-z| >= (1-d)(2/pi) phi; 1-|z|^2 >= d, |1-z| <= 2 phi
        upper = 2.0 * (math.pi / (2.0 * (1.0 - d_next))) ** (2 * order + 2) * geo
        lower = 2.0 ** (-(2 * order + 2)) * geo
        return lower, upper

    def blaschke_tail(self):
        q, e = self.params["q"], self.params["exponent"]
        return q ** (-self.truncation_N * e) / (q ** e - 1.0)


REGISTRY = {cls.name: cls for cls in (Lacunary, Power, Remark3, UMNRModel, Tangential)}


def tail_model_from_json(obj):
    try:
        cls = REGISTRY[obj["name"]]
    except KeyError:
        raise InputError(f"unknown tail model {obj.get('name')!r}") from None
    return cls(obj["truncation_N"], **obj.get("params", {}))
